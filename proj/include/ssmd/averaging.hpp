#ifndef SSMD_AVERAGING_HPP
#define SSMD_AVERAGING_HPP

#include <cmath>
#include <cstddef>
#include <span>

#include "ssmd/common.hpp"

namespace ssmd {

/// Running average of iterates with weight 1/alpha_t on x_t.
///
/// Kept as the convex-combination recursion
///   S_{k+1} = S_k + 1/alpha_k,  xhat_k = (S_k / S_{k+1}) xhat_{k-1} + (1 - S_k / S_{k+1}) x_k
/// so that the average stays inside any convex set holding the absorbed points.
class WeightedAverage {
 public:
  WeightedAverage() = default;

  void absorb(std::span<const double> x, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("absorb: alpha must be positive");
    require_finite(x, "absorb");
    if (count_ == 0) {
      x_hat_.assign(x.begin(), x.end());
      weight_.add(1.0 / alpha);
      count_ = 1;
      return;
    }
    require_same_dim(x_hat_, x, "absorb");
    const double before = weight_.value();
    weight_.add(1.0 / alpha);
    const double keep = before / weight_.value();
    const double take = 1.0 - keep;
    for (std::size_t i = 0; i < x_hat_.size(); ++i) x_hat_[i] = keep * x_hat_[i] + take * x[i];
    ++count_;
  }

  const Vector& x_hat() const { return x_hat_; }
  /// Sum of 1/alpha_t over absorbed points.
  double total_weight() const { return weight_.value(); }
  std::size_t count() const { return count_; }
  bool empty() const { return count_ == 0; }

 private:
  Vector x_hat_;
  CompensatedSum weight_;
  std::size_t count_ = 0;
};

/// Equal-weight running mean, kept as a compensated sum divided by the count
/// so that integer-valued inputs give the exact arithmetic mean.
class UniformAverage {
 public:
  void absorb(std::span<const double> x) {
    require_finite(x, "absorb");
    if (count_ == 0) sums_.assign(x.size(), CompensatedSum{});
    if (x.size() != sums_.size()) throw InvalidArgument("absorb: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) sums_[i].add(x[i]);
    ++count_;
  }

  Vector mean() const {
    Vector out(sums_.size());
    for (std::size_t i = 0; i < sums_.size(); ++i) out[i] = sums_[i].value() / static_cast<double>(count_);
    return out;
  }

  std::size_t count() const { return count_; }

 private:
  std::vector<CompensatedSum> sums_;
  std::size_t count_ = 0;
};

/// Convex weights beta_t = (1/alpha_t) / sum_s (1/alpha_s).
inline Vector averaging_weights(std::span<const double> alphas) {
  if (alphas.empty()) throw InvalidArgument("averaging_weights: empty input");
  CompensatedSum total;
  for (double a : alphas) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("averaging_weights: stepsizes must be positive");
    total.add(1.0 / a);
  }
  Vector beta(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) beta[i] = (1.0 / alphas[i]) / total.value();
  return beta;
}

}  // namespace ssmd

#endif  // SSMD_AVERAGING_HPP
