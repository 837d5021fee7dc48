#ifndef SSMD_MIRROR_MAP_HPP
#define SSMD_MIRROR_MAP_HPP

#include <cmath>
#include <span>
#include <string>

#include "ssmd/common.hpp"

namespace ssmd {

/// Distance-generating function w together with its strong-convexity modulus
/// (with respect to the Euclidean norm).
///
///   Euclidean        w(x) = 1/2 |x|^2,       D(x, z) = 1/2 |x - z|^2
///   NegativeEntropy  w(x) = sum x_i log x_i, D(x, z) = sum z_i log(z_i / x_i) - z_i + x_i
///
/// Only the Euclidean map satisfies D(x, z) <= 1/2 |x - z|^2, which the
/// strongly convex solver requires.
class MirrorMap {
 public:
  enum class Kind { Euclidean, NegativeEntropy };

  static MirrorMap euclidean() { return MirrorMap(Kind::Euclidean, 1.0, true); }
  // Pinsker: KL(x, z) >= 1/2 |x - z|_1^2 >= 1/2 |x - z|_2^2 on the simplex.
  static MirrorMap negative_entropy() { return MirrorMap(Kind::NegativeEntropy, 1.0, false); }

  Kind kind() const { return kind_; }
  double mu_w() const { return mu_w_; }
  bool satisfies_quadratic_upper_bound() const { return quadratic_upper_bound_; }

  std::string name() const { return kind_ == Kind::Euclidean ? "euclidean" : "negative_entropy"; }

 private:
  MirrorMap(Kind k, double mu, bool qub) : kind_(k), mu_w_(mu), quadratic_upper_bound_(qub) {}

  Kind kind_;
  double mu_w_;
  bool quadratic_upper_bound_;
};

namespace detail {
inline void require_positive(std::span<const double> x, const char* what) {
  for (double v : x)
    if (!(v > 0.0)) throw InvalidArgument(std::string(what) + ": negative entropy needs strictly positive components");
}
}  // namespace detail

/// w(x)
inline double potential(const MirrorMap& map, std::span<const double> x) {
  require_finite(x, "potential");
  if (map.kind() == MirrorMap::Kind::Euclidean) return 0.5 * norm2_sq(x);
  detail::require_positive(x, "potential");
  double s = 0.0;
  for (double v : x) s += v * std::log(v);
  return s;
}

/// grad w(x)
inline Vector potential_gradient(const MirrorMap& map, std::span<const double> x) {
  require_finite(x, "potential_gradient");
  if (map.kind() == MirrorMap::Kind::Euclidean) return Vector(x.begin(), x.end());
  detail::require_positive(x, "potential_gradient");
  Vector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = std::log(x[i]) + 1.0;
  return g;
}

/// D_w(x, z) = w(z) - w(x) - <grad w(x), z - x>
inline double bregman(const MirrorMap& map, std::span<const double> x, std::span<const double> z) {
  require_same_dim(x, z, "bregman");
  require_finite(x, "bregman");
  require_finite(z, "bregman");
  if (map.kind() == MirrorMap::Kind::Euclidean) return 0.5 * dist2_sq(x, z);
  detail::require_positive(x, "bregman");
  detail::require_positive(z, "bregman");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += z[i] * std::log(z[i] / x[i]) - z[i] + x[i];
  return s;
}

}  // namespace ssmd

#endif  // SSMD_MIRROR_MAP_HPP
