#ifndef SSMD_FEASIBLE_SET_HPP
#define SSMD_FEASIBLE_SET_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ssmd/common.hpp"
#include "ssmd/mirror_map.hpp"

namespace ssmd {

/// Feasible region of the optimization problem.
///
///   CappedBox(n, u, R): { x in R^n : 0 <= x_i <= u, sum x_i <= R }
///   Simplex(n):         { x in R^n : x_i >= 0, sum x_i = 1 }
class FeasibleSet {
 public:
  enum class Kind { CappedBox, Simplex };

  static FeasibleSet capped_box(std::size_t n, double u, double R) {
    if (n == 0) throw InvalidArgument("capped_box: n must be positive");
    if (!(u > 0.0) || !std::isfinite(u)) throw InvalidArgument("capped_box: u must be positive and finite");
    if (!(R > 0.0) || !std::isfinite(R)) throw InvalidArgument("capped_box: R must be positive and finite");
    return FeasibleSet(Kind::CappedBox, n, u, R);
  }

  static FeasibleSet simplex(std::size_t n) {
    if (n == 0) throw InvalidArgument("simplex: n must be positive");
    return FeasibleSet(Kind::Simplex, n, std::numeric_limits<double>::infinity(), 1.0);
  }

  Kind kind() const { return kind_; }
  std::size_t dim() const { return n_; }
  /// Per-coordinate cap (infinite for the simplex).
  double cap() const { return u_; }
  /// Budget R (1 for the simplex).
  double budget() const { return R_; }
  bool is_bounded() const { return true; }

  std::string describe() const {
    if (kind_ == Kind::Simplex) return "simplex(n=" + std::to_string(n_) + ")";
    return "capped_box(n=" + std::to_string(n_) + ", u=" + std::to_string(u_) + ", R=" + std::to_string(R_) + ")";
  }

 private:
  FeasibleSet(Kind k, std::size_t n, double u, double R) : kind_(k), n_(n), u_(u), R_(R) {}

  Kind kind_;
  std::size_t n_;
  double u_;
  double R_;
};

inline bool contains(const FeasibleSet& set, std::span<const double> x, double tol) {
  if (x.size() != set.dim()) throw InvalidArgument("contains: dimension mismatch");
  CompensatedSum total;
  for (double v : x) {
    if (!std::isfinite(v)) return false;
    if (v < -tol) return false;
    if (set.kind() == FeasibleSet::Kind::CappedBox && v > set.cap() + tol) return false;
    total.add(v);
  }
  if (set.kind() == FeasibleSet::Kind::CappedBox) return total.value() <= set.budget() + tol;
  return std::abs(total.value() - 1.0) <= tol;
}

namespace detail {

/// Finds tau with sum_i clamp(x_i - tau, 0, upper) == target, assuming
/// 0 < target < n * upper (upper may be +inf). The left side is continuous,
/// non-increasing and piecewise linear in tau with kinks at x_i - upper and
/// x_i; a sweep over the sorted kinks locates the crossing segment and the
/// root is read off that segment exactly.
inline double clamp_shift_for_sum(std::span<const double> x, double upper, double target) {
  const std::size_t n = x.size();
  const bool capped = std::isfinite(upper);

  // (position, slope change): entering the free range adds -1 to the slope,
  // hitting zero adds +1.
  std::vector<std::pair<double, int>> kinks;
  kinks.reserve(2 * n);
  for (double v : x) {
    if (capped) kinks.emplace_back(v - upper, -1);
    kinks.emplace_back(v, +1);
  }
  std::sort(kinks.begin(), kinks.end());

  double pos;
  double value;
  long slope;
  if (capped) {
    // Left of every kink all coordinates sit at the cap.
    pos = kinks.front().first;
    value = static_cast<double>(n) * upper;
    slope = 0;
  } else {
    // Left of min x every coordinate is free.
    pos = kinks.front().first;
    value = 0.0;
    for (double v : x) value += v - pos;
    slope = -static_cast<long>(n);
    if (value <= target) return pos - (target - value) / static_cast<double>(n);
  }

  for (std::size_t i = 0; i < kinks.size(); ++i) {
    const double next = kinks[i].first;
    const double next_value = value + static_cast<double>(slope) * (next - pos);
    if (next_value <= target && slope != 0) return pos + (value - target) / static_cast<double>(-slope);
    pos = next;
    value = next_value;
    slope += kinks[i].second;
  }
  // Only reachable through rounding at the last kink, where the sum is zero.
  return pos;
}

}  // namespace detail

/// Euclidean projection onto the set.
inline Vector project(const FeasibleSet& set, std::span<const double> x) {
  if (x.size() != set.dim()) throw InvalidArgument("project: dimension mismatch");
  require_finite(x, "project");
  const double upper = set.cap();
  Vector out(x.size());

  if (set.kind() == FeasibleSet::Kind::CappedBox) {
    CompensatedSum total;
    for (std::size_t i = 0; i < x.size(); ++i) {
      out[i] = std::clamp(x[i], 0.0, upper);
      total.add(out[i]);
    }
    // Overshoot within summation rounding counts as feasible, so projected
    // points are fixed points of the projection.
    const double slack = 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(x.size()) * set.budget();
    if (total.value() <= set.budget() + slack) return out;
    if (static_cast<double>(x.size()) * upper <= set.budget()) return out;
  }

  const double tau = detail::clamp_shift_for_sum(x, upper, set.budget());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::clamp(x[i] - tau, 0.0, upper);
  return out;
}

/// d_w^2 = max over x, y in the set of D_w(x, y).
///
/// CappedBox with the Euclidean map: max |x - y|^2 <= |x|^2 + |y|^2 on the
/// nonnegative orthant, |x|^2 is maximized by the greedy vertex (q coordinates
/// at u, one at r, q = floor(R / u), r = R - q u), and two such vertices with
/// disjoint supports attain the sum. That needs n >= 2 (q + 1), otherwise the
/// call is rejected. Simplex with the Euclidean map gives 1 (two distinct
/// unit vectors). The negative-entropy distance is unbounded on the simplex.
inline double bregman_diameter_sq(const FeasibleSet& set, const MirrorMap& map) {
  if (map.kind() != MirrorMap::Kind::Euclidean)
    throw InvalidArgument("bregman_diameter_sq: only the Euclidean map has a finite diameter here");
  if (set.kind() == FeasibleSet::Kind::Simplex) {
    if (set.dim() < 2) return 0.0;
    return 1.0;
  }
  const double u = set.cap();
  const double R = set.budget();
  const double q = std::floor(R / u);
  const double r = R - q * u;
  if (static_cast<double>(set.dim()) < 2.0 * (q + 1.0))
    throw InvalidArgument("bregman_diameter_sq: closed form needs n >= 2 (floor(R/u) + 1), got n = " +
                          std::to_string(set.dim()));
  return q * u * u + r * r;
}

}  // namespace ssmd

#endif  // SSMD_FEASIBLE_SET_HPP
