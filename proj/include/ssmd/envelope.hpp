#ifndef SSMD_ENVELOPE_HPP
#define SSMD_ENVELOPE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "ssmd/common.hpp"
#include "ssmd/normal.hpp"

namespace ssmd {

/// t -> intercept + slope * t
struct AffinePiece {
  double intercept = 0.0;
  double slope = 0.0;

  double operator()(double t) const { return intercept + slope * t; }
  bool operator==(const AffinePiece&) const = default;
};

/// Upper envelope phi(t) = max_j (c_j + d_j t) of a family of lines, stored as
/// the non-dominated pieces in order of increasing slope. Piece j is active on
/// [breakpoint_{j-1}, breakpoint_j].
class Envelope {
 public:
  Envelope() = default;

  explicit Envelope(std::span<const AffinePiece> pieces) {
    if (pieces.empty()) throw InvalidArgument("envelope: no pieces");
    std::vector<AffinePiece> sorted(pieces.begin(), pieces.end());
    for (const auto& p : sorted)
      if (!std::isfinite(p.intercept) || !std::isfinite(p.slope))
        throw InvalidArgument("envelope: non-finite piece");
    std::sort(sorted.begin(), sorted.end(), [](const AffinePiece& a, const AffinePiece& b) {
      return a.slope < b.slope || (a.slope == b.slope && a.intercept > b.intercept);
    });

    for (const auto& p : sorted) {
      // Equal slopes: the first one seen has the largest intercept.
      if (!pieces_.empty() && pieces_.back().slope == p.slope) continue;
      // Drop the last kept piece while the new line overtakes it no later than
      // the last kept piece overtook its predecessor.
      while (!pieces_.empty()) {
        const double cross = crossing(pieces_.back(), p);
        if (!breakpoints_.empty() && cross <= breakpoints_.back()) {
          pieces_.pop_back();
          breakpoints_.pop_back();
        } else {
          break;
        }
      }
      if (!pieces_.empty()) breakpoints_.push_back(crossing(pieces_.back(), p));
      pieces_.push_back(p);
    }
  }

  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  /// Index of the active piece at t; at a breakpoint the larger slope wins.
  std::size_t active_index(double t) const {
    return static_cast<std::size_t>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t) -
                                    breakpoints_.begin());
  }

  double operator()(double t) const { return pieces_[active_index(t)](t); }
  double value(double t) const { return (*this)(t); }
  /// A subgradient of phi at t.
  double slope(double t) const { return pieces_[active_index(t)].slope; }

  /// E phi(mu + sigma Z), Z ~ N(0, 1), evaluated piece by piece:
  ///   int_[l, r] (c + d t) dN(mu, sigma^2)
  ///     = c P + d (mu P + sigma (pdf(lo) - pdf(hi))),  lo = (l - mu) / sigma, hi = (r - mu) / sigma,
  /// with P = Phi(hi) - Phi(lo).
  double expected_gaussian(double mu, double sigma) const {
    if (sigma < 0.0 || !std::isfinite(sigma)) throw InvalidArgument("expected_gaussian: sigma must be nonnegative");
    if (sigma == 0.0) return (*this)(mu);
    CompensatedSum total;
    for_each_interval(mu, sigma, [&](const AffinePiece& p, double lo, double hi) {
      const double mass = normal::mass(lo, hi);
      const double tail = density(lo) - density(hi);
      total.add(p.intercept * mass + p.slope * (mu * mass + sigma * tail));
    });
    return total.value();
  }

  /// Derivatives of E phi(mu + sigma Z) with respect to mu and sigma.
  struct GaussianSlopes {
    double d_mu;     // E phi'(s)
    double d_sigma;  // E phi'(s) Z
  };

  GaussianSlopes expected_gaussian_slopes(double mu, double sigma) const {
    if (sigma < 0.0) throw InvalidArgument("expected_gaussian_slopes: sigma must be nonnegative");
    if (sigma == 0.0) return {slope(mu), 0.0};
    CompensatedSum d_mu;
    CompensatedSum d_sigma;
    for_each_interval(mu, sigma, [&](const AffinePiece& p, double lo, double hi) {
      d_mu.add(p.slope * normal::mass(lo, hi));
      d_sigma.add(p.slope * (density(lo) - density(hi)));
    });
    return {d_mu.value(), d_sigma.value()};
  }

 private:
  static double crossing(const AffinePiece& lower_slope, const AffinePiece& higher_slope) {
    return (lower_slope.intercept - higher_slope.intercept) / (higher_slope.slope - lower_slope.slope);
  }

  static double density(double z) { return std::isfinite(z) ? normal::pdf(z) : 0.0; }

  template <class Fn>
  void for_each_interval(double mu, double sigma, Fn&& fn) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
      const double lo = j == 0 ? -inf : (breakpoints_[j - 1] - mu) / sigma;
      const double hi = j + 1 == pieces_.size() ? inf : (breakpoints_[j] - mu) / sigma;
      fn(pieces_[j], lo, hi);
    }
  }

  std::vector<AffinePiece> pieces_;
  std::vector<double> breakpoints_;
};

inline Envelope build_envelope(std::span<const AffinePiece> pieces) { return Envelope(pieces); }

inline double phi(const Envelope& env, double t) { return env(t); }
inline double phi_slope(const Envelope& env, double t) { return env.slope(t); }
inline double expected_phi_gaussian(const Envelope& env, double mu, double sigma) {
  return env.expected_gaussian(mu, sigma);
}

}  // namespace ssmd

#endif  // SSMD_ENVELOPE_HPP
