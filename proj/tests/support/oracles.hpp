// Reference computations for the test suites. Deliberately naive: none of
// these reuse the library routine they are compared against.
#ifndef SSMD_TEST_ORACLES_HPP
#define SSMD_TEST_ORACLES_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

/// Capped-box projection by bisection on the shift tau (tolerance 1e-14).
inline Vec project_capped_box_bisect(const Vec& x, double u, double R) {
  auto shifted = [&](double tau) {
    Vec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::min(u, std::max(0.0, x[i] - tau));
    return y;
  };
  auto total = [](const Vec& y) {
    double s = 0.0;
    for (double v : y) s += v;
    return s;
  };
  Vec y = shifted(0.0);
  if (total(y) <= R) return y;
  double lo = 0.0;
  double hi = *std::max_element(x.begin(), x.end());
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (total(shifted(mid)) > R ? lo : hi) = mid;
  }
  return shifted(0.5 * (lo + hi));
}

/// Brute-force argmin of |v - x|^2 over grid points of the capped box with
/// spacing h (u and R should be multiples of h).
inline Vec grid_argmin(const Vec& x, double u, double R, double h) {
  const std::size_t n = x.size();
  const auto steps = static_cast<long>(std::llround(u / h));
  std::vector<long> idx(n, 0);
  Vec best(n, 0.0);
  double best_d = std::numeric_limits<double>::infinity();
  Vec v(n);
  for (;;) {
    double sum = 0.0;
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_cast<double>(idx[i]) * h;
      sum += v[i];
      d += (v[i] - x[i]) * (v[i] - x[i]);
    }
    if (sum <= R + 1e-12 && d < best_d) {
      best_d = d;
      best = v;
    }
    std::size_t i = 0;
    while (i < n && ++idx[i] > steps) idx[i++] = 0;
    if (i == n) break;
  }
  return best;
}

/// E g(mu + sigma Z) by Gauss-Kronrod quadrature over the real line, split at
/// the supplied kinks.
inline double gaussian_expectation(const std::function<double(double)>& g, double mu, double sigma,
                                   std::vector<double> kinks = {}) {
  auto density = [&](double t) {
    const double z = (t - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
  };
  auto integrand = [&](double t) { return g(t) * density(t); };
  std::vector<double> cuts = {mu - 40.0 * sigma};
  std::sort(kinks.begin(), kinks.end());
  for (double k : kinks)
    if (k > cuts.back() && k < mu + 40.0 * sigma) cuts.push_back(k);
  cuts.push_back(mu + 40.0 * sigma);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, cuts[i], cuts[i + 1], 15, 1e-14);
  return total;
}

/// Mean and standard error of a sample.
struct Moments {
  double mean = 0.0;
  double stderr_ = 0.0;
};

inline Moments moments(const Vec& xs) {
  long double s = 0.0L;
  for (double v : xs) s += v;
  const long double mean = s / static_cast<long double>(xs.size());
  long double ss = 0.0L;
  for (double v : xs) ss += (v - mean) * (v - mean);
  const double var = static_cast<double>(ss / static_cast<long double>(xs.size() - 1));
  return {static_cast<double>(mean), std::sqrt(var / static_cast<double>(xs.size()))};
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const Vec& x, const Vec& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle

#endif  // SSMD_TEST_ORACLES_HPP
