#ifndef SSMD_PROX_HPP
#define SSMD_PROX_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "ssmd/common.hpp"
#include "ssmd/feasible_set.hpp"
#include "ssmd/mirror_map.hpp"

namespace ssmd {

/// Feasibility tolerance applied to points handed to the prox step.
inline constexpr double kFeasibilityTol = 1e-9;

/// One mirror-descent step:
///
///   argmin_{z in set} alpha <g, z - x> + D_w(x, z)
///
/// Euclidean map: the Euclidean projection of x - alpha g onto the set.
/// Negative entropy on the simplex: x_i exp(-alpha g_i), renormalized.
inline Vector prox_step(const MirrorMap& map, const FeasibleSet& set, std::span<const double> x,
                        std::span<const double> g, double alpha) {
  if (x.size() != set.dim()) throw InvalidArgument("prox_step: x has wrong dimension");
  require_same_dim(x, g, "prox_step");
  require_finite(g, "prox_step");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("prox_step: alpha must be positive");
  if (!contains(set, x, kFeasibilityTol)) throw InvalidArgument("prox_step: x is not feasible");

  if (map.kind() == MirrorMap::Kind::Euclidean) return project(set, axpy(x, -alpha, g));

  if (set.kind() != FeasibleSet::Kind::Simplex)
    throw InvalidArgument("prox_step: negative entropy is only paired with the simplex");
  for (double v : x)
    if (!(v > 0.0)) throw InvalidArgument("prox_step: negative entropy needs an interior simplex point");

  // Work in log space and shift by the max exponent before exponentiating.
  std::vector<double> logits(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) logits[i] = std::log(x[i]) - alpha * g[i];
  const double top = *std::max_element(logits.begin(), logits.end());
  Vector out(x.size());
  CompensatedSum total;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::exp(logits[i] - top);
    total.add(out[i]);
  }
  const double s = total.value();
  for (double& v : out) v /= s;
  return out;
}

/// True iff D_w(x, z) <= 1/2 |x - z|^2 + 1e-12 for every sampled pair.
inline bool check_quadratic_upper_bound(const MirrorMap& map,
                                        std::span<const std::pair<Vector, Vector>> samples) {
  for (const auto& [x, z] : samples)
    if (bregman(map, x, z) > 0.5 * dist2_sq(x, z) + 1e-12) return false;
  return true;
}

}  // namespace ssmd

#endif  // SSMD_PROX_HPP
