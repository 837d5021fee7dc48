#ifndef SSMD_STEPSIZE_HPP
#define SSMD_STEPSIZE_HPP

#include <cmath>
#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ssmd/common.hpp"

namespace ssmd {

/// Stepsize rules.
///
///   TsengExplicit      alpha_0 = 1, alpha_k = 2 / (k + 1) for k >= 1
///   NesterovRecursive  alpha_0 = 1, alpha_{k+1} = (sqrt(alpha_k^4 + 4 alpha_k^2) - alpha_k^2) / 2
///   InverseSqrt(a)     alpha_k = a / sqrt(k + 1)
///
/// The first two satisfy alpha in (0, 1] and (1 - alpha_{k+1}) / alpha_{k+1}^2 <= 1 / alpha_k^2
/// and are meant for the strongly convex method; the third is the compact-set rule.
/// The explicit rule is pinned to alpha_0 = 1 because 2 / (0 + 1) = 2 is outside (0, 1].
class StepsizeSchedule {
 public:
  enum class Kind { TsengExplicit, NesterovRecursive, InverseSqrt };

  static StepsizeSchedule tseng() { return StepsizeSchedule(Kind::TsengExplicit, 0.0); }
  static StepsizeSchedule nesterov() { return StepsizeSchedule(Kind::NesterovRecursive, 0.0); }
  static StepsizeSchedule inverse_sqrt(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("inverse_sqrt: a must be positive");
    return StepsizeSchedule(Kind::InverseSqrt, a);
  }

  StepsizeSchedule(const StepsizeSchedule& other) : kind_(other.kind_), a_(other.a_) {
    std::lock_guard lock(other.memo_mutex_);
    memo_ = other.memo_;
  }
  StepsizeSchedule& operator=(const StepsizeSchedule& other) {
    if (this == &other) return *this;
    std::vector<double> memo;
    {
      std::lock_guard lock(other.memo_mutex_);
      memo = other.memo_;
    }
    std::lock_guard lock(memo_mutex_);
    kind_ = other.kind_;
    a_ = other.a_;
    memo_ = std::move(memo);
    return *this;
  }

  Kind kind() const { return kind_; }
  /// Scale of the inverse-square-root rule (0 for the others).
  double a() const { return a_; }

  /// True for the two rules built for the strongly convex method.
  bool satisfies_tseng_condition() const { return kind_ != Kind::InverseSqrt; }

  std::string name() const {
    switch (kind_) {
      case Kind::TsengExplicit: return "step-1";
      case Kind::NesterovRecursive: return "step-2";
      case Kind::InverseSqrt: return "inverse-sqrt";
    }
    return "unknown";
  }

  double operator()(std::size_t k) const { return alpha(k); }

  double alpha(std::size_t k) const {
    switch (kind_) {
      case Kind::TsengExplicit: return k == 0 ? 1.0 : 2.0 / static_cast<double>(k + 1);
      case Kind::InverseSqrt: return a_ / std::sqrt(static_cast<double>(k + 1));
      case Kind::NesterovRecursive: break;
    }
    std::lock_guard lock(memo_mutex_);
    if (memo_.empty()) memo_.push_back(1.0);
    while (memo_.size() <= k) memo_.push_back(nesterov_next(memo_.back()));
    return memo_[k];
  }

  static double nesterov_next(double alpha) {
    const double a2 = alpha * alpha;
    return (std::sqrt(a2 * a2 + 4.0 * a2) - a2) / 2.0;
  }

 private:
  StepsizeSchedule(Kind k, double a) : kind_(k), a_(a) {}

  Kind kind_;
  double a_;
  mutable std::mutex memo_mutex_;
  mutable std::vector<double> memo_;
};

/// Outcome of a numeric sweep over k = 0..k_max.
struct CheckResult {
  bool passed = true;
  std::optional<std::size_t> first_violation;
  std::string detail;

  explicit operator bool() const { return passed; }

  static CheckResult fail(std::size_t k, std::string why) { return {false, k, std::move(why)}; }
};

// Each check accepts any callable k -> alpha_k so that hand-built sequences can
// be audited with the same code as the shipped schedules.

/// alpha_0 = 1, alpha_k in (0, 1], and (1 - alpha_{k+1}) / alpha_{k+1}^2 <= 1 / alpha_k^2
/// for all k <= k_max. The recursion is checked as (1 - alpha_{k+1}) alpha_k^2 <= alpha_{k+1}^2,
/// which keeps both sides in [0, 1] so the 1e-12 slack is meaningful at large k.
template <class Sequence>
CheckResult verify_step_condition(const Sequence& alpha, std::size_t k_max) {
  constexpr double slack = 1e-12;
  double prev = alpha(0);
  if (std::abs(prev - 1.0) > slack) return CheckResult::fail(0, "alpha_0 != 1");
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double cur = alpha(k);
    if (!(cur > 0.0) || cur > 1.0 + slack) return CheckResult::fail(k, "alpha_k outside (0, 1]");
    if ((1.0 - cur) * prev * prev > cur * cur + slack)
      return CheckResult::fail(k, "(1 - alpha_k) / alpha_k^2 > 1 / alpha_{k-1}^2");
    prev = cur;
  }
  return {};
}

inline CheckResult verify_step_condition(const StepsizeSchedule& schedule, std::size_t k_max) {
  if (!schedule.satisfies_tseng_condition())
    throw InvalidArgument("verify_step_condition: the inverse-sqrt rule is not claimed to satisfy it");
  return verify_step_condition([&](std::size_t k) { return schedule.alpha(k); }, k_max);
}

/// alpha_k^2 * sum_{t <= k} 1 / alpha_t >= 1 - 1e-12 for all k <= k_max.
template <class Sequence>
CheckResult verify_lemma2(const Sequence& alpha, std::size_t k_max) {
  CompensatedSum inv_sum;
  for (std::size_t k = 0; k <= k_max; ++k) {
    const double a = alpha(k);
    inv_sum.add(1.0 / a);
    if (a * a * inv_sum.value() < 1.0 - 1e-12)
      return CheckResult::fail(k, "alpha_k^2 * sum 1/alpha_t < 1");
  }
  return {};
}

/// sum_{t <= k} sqrt(t + 1) / a >= (2 / (3a)) (k + 1)^{3/2} for all k <= k_max,
/// with relative slack 1e-12.
inline CheckResult verify_lemma6(double a, std::size_t k_max) {
  if (!(a > 0.0)) throw InvalidArgument("verify_lemma6: a must be positive");
  const auto schedule = StepsizeSchedule::inverse_sqrt(a);
  CompensatedSum inv_sum;
  for (std::size_t k = 0; k <= k_max; ++k) {
    inv_sum.add(1.0 / schedule.alpha(k));
    const double rhs = 2.0 / (3.0 * a) * std::pow(static_cast<double>(k + 1), 1.5);
    if (inv_sum.value() < rhs * (1.0 - 1e-12)) return CheckResult::fail(k, "sum 1/alpha_t below (2/(3a))(k+1)^{3/2}");
  }
  return {};
}

/// 0 < alpha_k <= 2 / (k + 1) + 1e-15.
template <class Sequence>
bool stepcond_upper_bound(const Sequence& alpha, std::size_t k) {
  const double a = alpha(k);
  return a > 0.0 && a <= 2.0 / static_cast<double>(k + 1) + 1e-15;
}

inline bool stepcond_upper_bound(const StepsizeSchedule& schedule, std::size_t k) {
  if (!schedule.satisfies_tseng_condition())
    throw InvalidArgument("stepcond_upper_bound: only defined for step-1 and step-2");
  return stepcond_upper_bound([&](std::size_t t) { return schedule.alpha(t); }, k);
}

/// Sweep of stepcond_upper_bound over k = 0..k_max.
template <class Sequence>
CheckResult verify_stepcond(const Sequence& alpha, std::size_t k_max) {
  for (std::size_t k = 0; k <= k_max; ++k)
    if (!stepcond_upper_bound(alpha, k)) return CheckResult::fail(k, "alpha_k outside (0, 2/(k+1)]");
  return {};
}

}  // namespace ssmd

#endif  // SSMD_STEPSIZE_HPP
