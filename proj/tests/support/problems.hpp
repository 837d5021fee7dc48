// Synthetic problems with known minimizers and exact oracle constants.
#ifndef SSMD_TEST_PROBLEMS_HPP
#define SSMD_TEST_PROBLEMS_HPP

#include <cmath>
#include <vector>

#include "ssmd/solver.hpp"

namespace problems {

using ssmd::Vector;

/// f(x) = mu/2 |x - x*|^2 with g_tilde = mu (x - x*) + w U, U uniform on [-1, 1]^n.
/// nu^2 = n w^2 / 3 exactly; C is the largest |g| over the set's vertices.
struct Quadratic {
  ssmd::FeasibleSet set;
  Vector x_star;
  double mu;
  double noise;  // half-width w

  ssmd::ProblemHandle handle() const {
    ssmd::ProblemHandle p;
    p.set = set;
    p.map = ssmd::MirrorMap::euclidean();
    p.mu_f = mu;
    p.f_star = 0.0;
    p.x_star = x_star;
    const Vector xs = x_star;
    const double m = mu, w = noise;
    p.f_exact = [xs, m](std::span<const double> x) { return 0.5 * m * ssmd::dist2_sq(x, xs); };
    p.oracle = [xs, m, w](std::span<const double> x, ssmd::Rng& rng) {
      ssmd::OracleSample s;
      s.g = Vector(x.size());
      s.g_tilde = Vector(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        (*s.g)[i] = m * (x[i] - xs[i]);
        s.g_tilde[i] = (*s.g)[i] + (w > 0.0 ? w * rng.uniform(-1.0, 1.0) : 0.0);
      }
      return s;
    };
    return p;
  }

  double nu_sq() const { return static_cast<double>(x_star.size()) * noise * noise / 3.0; }

  /// max |mu (v - x*)|^2 over vertices; valid when u divides R so the vertices are
  /// the 0/u points with at most R/u nonzeros.
  double c_sq() const {
    const std::size_t n = x_star.size();
    const double u = set.cap();
    const auto ones = static_cast<std::size_t>(std::llround(std::min(set.budget(), u * n) / u));
    double best = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) > ones) continue;
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double v = (mask >> i & 1) ? u : 0.0;
        d += mu * mu * (v - x_star[i]) * (v - x_star[i]);
      }
      best = std::max(best, d);
    }
    return best;
  }
};

/// f(x) = sum_i |x_i - c_i| with subgradient sign(x_i - c_i) (0 at the kink)
/// plus uniform noise of half-width w. f* = 0 at x* = c when c is feasible;
/// C^2 = n, nu^2 = n w^2 / 3.
struct AbsoluteDeviation {
  ssmd::FeasibleSet set;
  Vector c;
  double noise;

  ssmd::ProblemHandle handle() const {
    ssmd::ProblemHandle p;
    p.set = set;
    p.map = ssmd::MirrorMap::euclidean();
    p.mu_f = 0.0;
    p.f_star = 0.0;
    p.x_star = c;
    const Vector cc = c;
    const double w = noise;
    p.f_exact = [cc](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - cc[i]);
      return s;
    };
    p.oracle = [cc, w](std::span<const double> x, ssmd::Rng& rng) {
      ssmd::OracleSample s;
      s.g = Vector(x.size());
      s.g_tilde = Vector(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - cc[i];
        (*s.g)[i] = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
        s.g_tilde[i] = (*s.g)[i] + (w > 0.0 ? w * rng.uniform(-1.0, 1.0) : 0.0);
      }
      return s;
    };
    return p;
  }

  double c_sq() const { return static_cast<double>(c.size()); }
  double nu_sq() const { return static_cast<double>(c.size()) * noise * noise / 3.0; }
};

}  // namespace problems

#endif  // SSMD_TEST_PROBLEMS_HPP
