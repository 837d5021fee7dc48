#ifndef SSMD_NORMAL_HPP
#define SSMD_NORMAL_HPP

#include <cmath>
#include <numbers>

namespace ssmd::normal {

// The CDF routines are thin wrappers over std::erfc, which glibc evaluates to
// within about one ulp; both tails are taken from erfc directly so that upper
// tail probabilities keep their relative accuracy.

inline double pdf(double x) {
  constexpr double inv_sqrt_2pi = 0.3989422804014326779399460599343819;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

/// P(Z <= x)
inline double cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// P(Z > x)
inline double upper_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

/// P(lo < Z <= hi), lo <= hi, either end may be infinite.
inline double mass(double lo, double hi) {
  if (lo >= 0.0) return upper_tail(lo) - upper_tail(hi);
  if (hi <= 0.0) return cdf(hi) - cdf(lo);
  return 1.0 - cdf(lo) - upper_tail(hi);
}

/// Inverse of cdf on (0, 1).
///
/// Acklam's rational approximation (relative error < 1.2e-9) followed by one
/// Halley step against cdf(), which brings the result to full double precision.
inline double quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -INFINITY;
    if (p == 1.0) return INFINITY;
    return NAN;
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // Halley refinement; the residual is taken in the tail where it is accurate.
  const double e = (x <= 0.0) ? cdf(x) - p : (1.0 - p) - upper_tail(x);
  const double u = e / pdf(x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace ssmd::normal

#endif  // SSMD_NORMAL_HPP
