#ifndef SSMD_UTILITY_MODEL_HPP
#define SSMD_UTILITY_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ssmd/common.hpp"
#include "ssmd/envelope.hpp"
#include "ssmd/feasible_set.hpp"
#include "ssmd/random.hpp"
#include "ssmd/solver.hpp"

namespace ssmd {

/// Stochastic utility benchmark
///
///   f(x) = E phi( sum_i (a_i + xi_i) x_i ) + lambda/2 |x - z|^2,   xi ~ N(0, I_n),
///
/// over the capped box { 0 <= x_i <= u, sum x_i <= R }.
struct UtilityInstance {
  std::string label;
  Vector a;
  std::vector<AffinePiece> pieces;  // as supplied, before envelope reduction
  Envelope envelope;
  double lambda = 0.0;
  Vector z;
  FeasibleSet set = FeasibleSet::capped_box(1, 1.0, 1.0);
  Vector x0;
  std::uint64_t a_seed = 0;

  std::size_t n() const { return a.size(); }
  std::size_t m() const { return pieces.size(); }
};

/// Seed of the coefficient draw a_i ~ U[0, 1] used by the default instances.
inline constexpr std::uint64_t kDefaultCoefficientSeed = 20140101;

/// Ten pieces with slopes d_j = j - 5.5 and intercepts c_1 = 0, c_{j+1} = c_j - j/10,
/// j = 1..10. Consecutive pieces cross at t = j/10, so the envelope has nine
/// breakpoints 0.1, ..., 0.9 and its minimum -1.25 at t = 0.5.
inline std::vector<AffinePiece> default_pieces() {
  std::vector<AffinePiece> pieces;
  double c = 0.0;
  for (int j = 1; j <= 10; ++j) {
    pieces.push_back({c, static_cast<double>(j) - 5.5});
    c -= static_cast<double>(j) / 10.0;
  }
  return pieces;
}

/// Coefficients a_i ~ U[0, 1] drawn from a dedicated stream.
inline Vector draw_coefficients(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Vector a(n);
  for (double& v : a) v = rng.uniform();
  return a;
}

inline UtilityInstance make_utility_instance(std::string label, Vector a, std::vector<AffinePiece> pieces, double lambda,
                                             Vector z, FeasibleSet set, Vector x0, std::uint64_t a_seed = 0) {
  if (a.size() != set.dim() || z.size() != set.dim() || x0.size() != set.dim())
    throw InvalidArgument("utility instance: inconsistent dimensions");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("utility instance: lambda must be nonnegative");
  if (set.kind() != FeasibleSet::Kind::CappedBox) throw InvalidArgument("utility instance: set must be a capped box");
  require_finite(a, "utility instance");
  require_finite(z, "utility instance");
  if (!contains(set, x0, kFeasibilityTol)) throw InvalidArgument("utility instance: x0 is not feasible");
  UtilityInstance inst;
  inst.label = std::move(label);
  inst.envelope = Envelope(pieces);
  inst.pieces = std::move(pieces);
  inst.a = std::move(a);
  inst.lambda = lambda;
  inst.z = std::move(z);
  inst.set = set;
  inst.x0 = std::move(x0);
  inst.a_seed = a_seed;
  return inst;
}

enum class TestInstance { Test1, Test2, Test3, Test4 };

/// The four benchmark instances: n = 100, u = 10, R = 10 (Test1, Test3) or
/// 100 (Test2, Test4); x0 = 0 (Test1, Test2), ten leading ones (Test3) or
/// ten leading tens (Test4); z = (0.5, 0, ..., 0).
inline UtilityInstance default_instance(TestInstance which, double lambda,
                                        std::uint64_t a_seed = kDefaultCoefficientSeed) {
  constexpr std::size_t n = 100;
  constexpr double u = 10.0;
  const bool wide = which == TestInstance::Test2 || which == TestInstance::Test4;
  const double R = wide ? 100.0 : 10.0;
  Vector x0(n, 0.0);
  if (which == TestInstance::Test3) std::fill_n(x0.begin(), 10, 1.0);
  if (which == TestInstance::Test4) std::fill_n(x0.begin(), 10, 10.0);
  Vector z(n, 0.0);
  z[0] = 0.5;
  static constexpr const char* names[] = {"test1", "test2", "test3", "test4"};
  return make_utility_instance(names[static_cast<int>(which)], draw_coefficients(n, a_seed), default_pieces(), lambda,
                               std::move(z), FeasibleSet::capped_box(n, u, R), std::move(x0), a_seed);
}

/// f on all of R^n, without the feasibility check.
inline double expected_objective(const UtilityInstance& inst, std::span<const double> x) {
  const double mu = dot(inst.a, x);
  const double sigma = norm2(x);
  return inst.envelope.expected_gaussian(mu, sigma) + 0.5 * inst.lambda * dist2_sq(x, inst.z);
}

inline double f_value(const UtilityInstance& inst, std::span<const double> x) {
  if (x.size() != inst.n()) throw InvalidArgument("f_value: dimension mismatch");
  if (!contains(inst.set, x, 1e-8)) throw InvalidArgument("f_value: x is not feasible");
  return expected_objective(inst, x);
}

/// Exact (sub)gradient of f: with s = a'x + |x| Z,
///   grad E phi(s) = E phi'(s) a + E[phi'(s) Z] x / |x|.
/// At x = 0 the second term is dropped, which is the mean of the sampled oracle there.
inline Vector mean_subgradient(const UtilityInstance& inst, std::span<const double> x) {
  if (x.size() != inst.n()) throw InvalidArgument("mean_subgradient: dimension mismatch");
  const double mu = dot(inst.a, x);
  const double sigma = norm2(x);
  const auto slopes = inst.envelope.expected_gaussian_slopes(mu, sigma);
  const double radial = sigma > 0.0 ? slopes.d_sigma / sigma : 0.0;
  Vector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    g[i] = slopes.d_mu * inst.a[i] + radial * x[i] + inst.lambda * (x[i] - inst.z[i]);
  return g;
}

/// One-sample subgradient: xi ~ N(0, I), t = (a + xi)'x,
/// g_tilde = phi'(t) (a + xi) + lambda (x - z).
inline OracleSample stochastic_subgradient(const UtilityInstance& inst, std::span<const double> x, Rng& rng) {
  if (x.size() != inst.n()) throw InvalidArgument("stochastic_subgradient: dimension mismatch");
  if (!contains(inst.set, x, 1e-8)) throw InvalidArgument("stochastic_subgradient: x is not feasible");
  Vector perturbed(x.size());
  double t = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    perturbed[i] = inst.a[i] + rng.normal();
    t += perturbed[i] * x[i];
  }
  const double d = inst.envelope.slope(t);
  OracleSample sample;
  sample.g_tilde.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sample.g_tilde[i] = d * perturbed[i] + inst.lambda * (x[i] - inst.z[i]);
  sample.g = mean_subgradient(inst, x);
  return sample;
}

/// phi((a + xi)'x) + lambda/2 |x - z|^2 for one draw of xi.
inline double sample_objective(const UtilityInstance& inst, std::span<const double> x, Rng& rng) {
  double t = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) t += (inst.a[i] + rng.normal()) * x[i];
  return inst.envelope(t) + 0.5 * inst.lambda * dist2_sq(x, inst.z);
}

/// Wraps an instance for the iteration engines. mu_f = lambda.
inline ProblemHandle make_problem(const UtilityInstance& inst, bool analytic = true) {
  ProblemHandle p;
  p.oracle = [&inst](std::span<const double> x, Rng& rng) { return stochastic_subgradient(inst, x, rng); };
  if (analytic) p.f_exact = [&inst](std::span<const double> x) { return expected_objective(inst, x); };
  p.f_sample = [&inst](std::span<const double> x, Rng& rng) { return sample_objective(inst, x, rng); };
  p.set = inst.set;
  p.map = MirrorMap::euclidean();
  p.mu_f = inst.lambda;
  return p;
}

struct ReferenceSolution {
  Vector x;
  double f = 0.0;
  std::size_t iterations = 0;
};

/// Central finite-difference gradient of expected_objective.
inline Vector finite_difference_gradient(const UtilityInstance& inst, std::span<const double> x, double h) {
  Vector probe(x.begin(), x.end());
  Vector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double keep = probe[i];
    probe[i] = keep + h;
    const double up = expected_objective(inst, probe);
    probe[i] = keep - h;
    const double down = expected_objective(inst, probe);
    probe[i] = keep;
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

/// High-accuracy minimizer of f by deterministic projected descent on
/// finite-difference gradients (h = 1e-6). Steps start from a Barzilai-Borwein
/// estimate and are halved until an Armijo decrease holds. Stops once both the
/// last move and the projected-gradient residual |x - P(x - grad)| are <= tol.
inline ReferenceSolution reference_solution(const UtilityInstance& inst, double tol,
                                            std::size_t max_iterations = 200000) {
  if (!(tol > 0.0)) throw InvalidArgument("reference_solution: tol must be positive");
  constexpr double h = 1e-6;
  constexpr double armijo = 1e-4;

  Vector x = project(inst.set, inst.x0);
  double fx = expected_objective(inst, x);
  Vector g = finite_difference_gradient(inst, x, h);
  double step = 1.0 / std::max(1.0, norm2(g));
  double last_move = INFINITY;

  for (std::size_t it = 0; it < max_iterations; ++it) {
    const double residual = std::sqrt(dist2_sq(x, project(inst.set, axpy(x, -1.0, g))));
    if (residual <= tol && last_move <= tol) return {x, fx, it};

    Vector next;
    double f_next = fx;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      next = project(inst.set, axpy(x, -step, g));
      f_next = expected_objective(inst, next);
      double descent = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) descent += g[i] * (next[i] - x[i]);
      // The relative slack absorbs rounding in f once the decrease is at machine level.
      if (f_next <= fx + armijo * descent + 4e-16 * std::abs(fx)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (residual <= tol) return {x, fx, it};
      throw RuntimeFailure("reference_solution: line search stalled with residual " + std::to_string(residual));
    }

    Vector g_next = finite_difference_gradient(inst, next, h);
    double ss = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double s = next[i] - x[i];
      const double y = g_next[i] - g[i];
      ss += s * s;
      sy += s * y;
    }
    last_move = std::sqrt(ss);
    step = sy > 0.0 ? std::clamp(ss / sy, 1e-12, 1e12) : std::min(step * 4.0, 1e12);
    x = std::move(next);
    fx = f_next;
    g = std::move(g_next);
  }
  throw RuntimeFailure("reference_solution: no convergence within " + std::to_string(max_iterations) + " iterations");
}

struct ConstantEstimates {
  double c_est = 0.0;   // max observed |g(x)|
  double nu_est = 0.0;  // root-mean-square |g_tilde(x) - g(x)|
};

/// Empirical subgradient bound and noise level over feasible points drawn
/// uniformly on [0, u]^n and projected onto the set.
inline ConstantEstimates estimate_constants(const UtilityInstance& inst, std::size_t sample_count, Rng& rng) {
  if (sample_count < 1000) throw InvalidArgument("estimate_constants: need at least 1000 samples");
  ConstantEstimates est;
  CompensatedSum noise_sq;
  Vector x(inst.n());
  for (std::size_t s = 0; s < sample_count; ++s) {
    for (double& v : x) v = rng.uniform(0.0, inst.set.cap());
    const Vector p = project(inst.set, x);
    const OracleSample sample = stochastic_subgradient(inst, p, rng);
    est.c_est = std::max(est.c_est, norm2(*sample.g));
    noise_sq.add(dist2_sq(sample.g_tilde, *sample.g));
  }
  est.nu_est = std::sqrt(noise_sq.value() / static_cast<double>(sample_count));
  return est;
}

}  // namespace ssmd

#endif  // SSMD_UTILITY_MODEL_HPP
