#ifndef SSMD_SOLVER_HPP
#define SSMD_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ssmd/averaging.hpp"
#include "ssmd/common.hpp"
#include "ssmd/feasible_set.hpp"
#include "ssmd/mirror_map.hpp"
#include "ssmd/prox.hpp"
#include "ssmd/random.hpp"
#include "ssmd/stepsize.hpp"

namespace ssmd {

struct OracleSample {
  Vector g_tilde;            // stochastic subgradient
  std::optional<Vector> g;   // exact subgradient, when the problem can supply it
};

/// Everything the iteration engines need to know about a problem instance.
struct ProblemHandle {
  std::function<OracleSample(std::span<const double>, Rng&)> oracle;
  /// Deterministic objective value; may be empty.
  std::function<double(std::span<const double>)> f_exact;
  /// One-sample unbiased estimate of f, used when f_exact is empty.
  std::function<double(std::span<const double>, Rng&)> f_sample;
  FeasibleSet set = FeasibleSet::simplex(1);
  MirrorMap map = MirrorMap::euclidean();
  double mu_f = 0.0;
  std::optional<double> f_star;
  std::optional<Vector> x_star;
};

/// How the trace evaluates f.
struct EvalOptions {
  /// Evaluate at every k when K <= this, otherwise on a geometric grid.
  std::size_t dense_limit = 1000;
  /// Points per decade of the geometric grid.
  std::size_t points_per_decade = 50;
  /// Sample count for the sample-average estimate when f_exact is absent.
  std::size_t sample_count = 10000;
  /// Seed of the sample-average estimate; the same seed is reused at every
  /// evaluation so that compared values share their noise.
  std::uint64_t sample_seed = 0x5eed5eedULL;
};

struct RunOptions {
  EvalOptions eval;
  /// Called after every step as (k, x_k, g_tilde_k, step, x_{k+1}).
  std::function<void(std::size_t, std::span<const double>, std::span<const double>, double, std::span<const double>)>
      observer;
};

/// One row of a run trace. Columns that were not evaluated at this k, or that
/// need an unknown minimizer, hold NaN.
struct TraceRecord {
  std::size_t k = 0;
  double f_iter = std::numeric_limits<double>::quiet_NaN();
  double f_avg = std::numeric_limits<double>::quiet_NaN();
  double f_min = std::numeric_limits<double>::quiet_NaN();
  double dist_iter_sq = std::numeric_limits<double>::quiet_NaN();
  double dist_avg_sq = std::numeric_limits<double>::quiet_NaN();
};

struct RunTrace {
  std::vector<TraceRecord> records;  // k = 0..K
  Vector x_final;
  Vector x_avg_final;
  std::uint64_t seed = 0;
  std::string f_evaluation;  // "analytic" or "sampled:<count>"
};

/// Indices at which the trace evaluates f: all of 0..K when K <= dense_limit,
/// otherwise 0, K and a log-spaced grid in between.
inline std::vector<bool> evaluation_mask(std::size_t K, const EvalOptions& eval) {
  std::vector<bool> mask(K + 1, K <= eval.dense_limit);
  if (K <= eval.dense_limit) return mask;
  mask[0] = mask[K] = true;
  const double steps = std::log10(static_cast<double>(K)) * static_cast<double>(eval.points_per_decade);
  const auto count = static_cast<std::size_t>(std::ceil(steps));
  for (std::size_t i = 0; i <= count; ++i) {
    const double k = std::pow(10.0, static_cast<double>(i) / static_cast<double>(eval.points_per_decade));
    mask[std::min(K, static_cast<std::size_t>(std::llround(k)))] = true;
  }
  return mask;
}

namespace detail {

inline std::function<double(std::span<const double>)> make_evaluator(const ProblemHandle& problem,
                                                                      const EvalOptions& eval,
                                                                      std::string& label) {
  if (problem.f_exact) {
    label = "analytic";
    return problem.f_exact;
  }
  if (!problem.f_sample) throw InvalidArgument("problem supplies neither f_exact nor f_sample");
  label = "sampled:" + std::to_string(eval.sample_count);
  return [f = problem.f_sample, eval](std::span<const double> x) {
    Rng rng(eval.sample_seed);
    CompensatedSum s;
    for (std::size_t i = 0; i < eval.sample_count; ++i) s.add(f(x, rng));
    return s.value() / static_cast<double>(eval.sample_count);
  };
}

enum class Averaging { Weighted, Uniform };

/// Shared loop: x_{k+1} = prox(x_k, g_tilde_k, step(k)), averaging absorbs x_k
/// with weight 1/alpha_k before the step.
inline RunTrace run_loop(const ProblemHandle& problem, const std::function<double(std::size_t)>& alpha,
                         double step_scale, std::size_t K, std::span<const double> x0, Rng& rng,
                         Averaging averaging, const RunOptions& options) {
  if (K == 0) throw InvalidArgument("iteration count K must be positive");
  if (!problem.oracle) throw InvalidArgument("problem has no oracle");
  if (x0.size() != problem.set.dim()) throw InvalidArgument("x0 has wrong dimension");
  if (!contains(problem.set, x0, kFeasibilityTol)) throw InvalidArgument("x0 is not feasible");

  RunTrace trace;
  trace.seed = rng.seed();
  const auto f = make_evaluator(problem, options.eval, trace.f_evaluation);
  const auto mask = evaluation_mask(K, options.eval);
  trace.records.resize(K + 1);

  Vector x(x0.begin(), x0.end());
  WeightedAverage weighted;
  UniformAverage uniform;
  double best = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0;; ++k) {
    const double a = alpha(k);
    Vector avg;
    if (averaging == Averaging::Weighted) {
      weighted.absorb(x, a);
      avg = weighted.x_hat();
    } else {
      uniform.absorb(x);
      avg = uniform.mean();
    }

    TraceRecord& rec = trace.records[k];
    rec.k = k;
    if (mask[k]) {
      rec.f_iter = f(x);
      rec.f_avg = f(avg);
      best = std::min(best, rec.f_iter);
      rec.f_min = best;
    }
    if (problem.x_star) {
      rec.dist_iter_sq = dist2_sq(x, *problem.x_star);
      rec.dist_avg_sq = dist2_sq(avg, *problem.x_star);
    }

    if (k == K) {
      trace.x_avg_final = std::move(avg);
      break;
    }

    OracleSample sample = problem.oracle(x, rng);
    if (sample.g_tilde.size() != x.size()) throw RuntimeFailure("oracle returned a subgradient of wrong dimension");
    for (double v : sample.g_tilde)
      if (!std::isfinite(v)) throw RuntimeFailure("oracle returned a non-finite subgradient");
    const double step = a * step_scale;
    Vector next = prox_step(problem.map, problem.set, x, sample.g_tilde, step);
    if (options.observer) options.observer(k, x, sample.g_tilde, step, next);
    x = std::move(next);
  }
  trace.x_final = std::move(x);
  return trace;
}

}  // namespace detail

/// Strongly convex method: x_{k+1} = argmin_z (alpha_k / mu_f) <g_tilde_k, z - x_k> + D_w(x_k, z)
/// with step-1 or step-2, averaged with weights 1/alpha_k.
inline RunTrace run_strongly_convex(const ProblemHandle& problem, const StepsizeSchedule& schedule, std::size_t K,
                                    std::span<const double> x0, Rng& rng, const RunOptions& options = {}) {
  if (!(problem.mu_f > 0.0)) throw InvalidArgument("run_strongly_convex: mu_f must be positive");
  if (!schedule.satisfies_tseng_condition())
    throw InvalidArgument("run_strongly_convex: schedule must be step-1 or step-2");
  if (!problem.map.satisfies_quadratic_upper_bound())
    throw InvalidArgument("run_strongly_convex: mirror map must satisfy D_w(x,z) <= |x-z|^2/2");
  return detail::run_loop(
      problem, [&](std::size_t k) { return schedule.alpha(k); }, 1.0 / problem.mu_f, K, x0, rng,
      detail::Averaging::Weighted, options);
}

/// Compact-set method with alpha_k = a / sqrt(k + 1), averaged with weights 1/alpha_k.
inline RunTrace run_compact(const ProblemHandle& problem, double a, std::size_t K, std::span<const double> x0, Rng& rng,
                            const RunOptions& options = {}) {
  if (!problem.set.is_bounded()) throw InvalidArgument("run_compact: the feasible set must be bounded");
  const auto schedule = StepsizeSchedule::inverse_sqrt(a);
  return detail::run_loop(
      problem, [&](std::size_t k) { return schedule.alpha(k); }, 1.0, K, x0, rng, detail::Averaging::Weighted,
      options);
}

/// Same iterates as run_compact, averaged with equal weights.
inline RunTrace run_baseline_uniform(const ProblemHandle& problem, double a, std::size_t K,
                                     std::span<const double> x0, Rng& rng, const RunOptions& options = {}) {
  if (!problem.set.is_bounded()) throw InvalidArgument("run_baseline_uniform: the feasible set must be bounded");
  const auto schedule = StepsizeSchedule::inverse_sqrt(a);
  return detail::run_loop(
      problem, [&](std::size_t k) { return schedule.alpha(k); }, 1.0, K, x0, rng, detail::Averaging::Uniform,
      options);
}

// ---------------------------------------------------------------------------
// Theoretical bounds.

/// Second-moment constant of the stochastic subgradient from |g| <= C and
/// E|g_tilde - g|^2 <= nu^2: C^2 + nu^2 for the Euclidean norm, 2 (C^2 + nu^2)
/// for a general norm.
enum class NormConvention { Euclidean, General };

inline double c_tilde_sq(double c_sq, double nu_sq, NormConvention convention = NormConvention::Euclidean) {
  if (c_sq < 0.0 || nu_sq < 0.0) throw InvalidArgument("c_tilde_sq: arguments must be nonnegative");
  return convention == NormConvention::Euclidean ? c_sq + nu_sq : 2.0 * (c_sq + nu_sq);
}

struct StronglyConvexBound {
  double gap;        // E f(xhat_k) - f*
  double avg_dist;   // E |xhat_k - x*|^2
  double iter_dist;  // E |x_{k+1} - x*|^2
};

inline StronglyConvexBound theorem1_bound(std::size_t k, double c_tilde_sq, double mu_f, double mu_w) {
  if (!(c_tilde_sq > 0.0 && mu_f > 0.0 && mu_w > 0.0))
    throw InvalidArgument("theorem1_bound: parameters must be positive");
  const double kk = static_cast<double>(k + 1);
  return {2.0 / kk * c_tilde_sq / (mu_f * mu_w), 4.0 / kk * c_tilde_sq / (mu_f * mu_f * mu_w),
          4.0 / kk * c_tilde_sq / (mu_f * mu_f * mu_w * mu_w)};
}

/// E f(xhat_k) - f* <= 3 / (2 sqrt(k+1)) (d_w^2 / a + a (C^2 + nu^2) / mu_w)
inline double theorem3_bound(std::size_t k, double a, double d_w_sq, double c_sq, double nu_sq, double mu_w) {
  if (!(a > 0.0 && d_w_sq >= 0.0 && c_sq >= 0.0 && nu_sq >= 0.0 && mu_w > 0.0))
    throw InvalidArgument("theorem3_bound: invalid parameters");
  return 1.5 / std::sqrt(static_cast<double>(k + 1)) * (d_w_sq / a + a * (c_sq + nu_sq) / mu_w);
}

/// Noiseless variant: f(xhat_k) - f* <= 3 / (2 sqrt(k+1)) (d_w^2 / a + a C^2 / (2 mu_w))
inline double corollary2_bound(std::size_t k, double a, double d_w_sq, double c_sq, double mu_w) {
  if (!(a > 0.0 && d_w_sq >= 0.0 && c_sq >= 0.0 && mu_w > 0.0))
    throw InvalidArgument("corollary2_bound: invalid parameters");
  return 1.5 / std::sqrt(static_cast<double>(k + 1)) * (d_w_sq / a + a * c_sq / (2.0 * mu_w));
}

enum class OptimalAConvention { Theorem3, Corollary2 };

/// Minimizer of the bracket in theorem3_bound (or corollary2_bound) over a > 0.
inline double optimal_a(double d_w, double c_sq, double nu_sq, double mu_w, OptimalAConvention convention) {
  if (!(d_w > 0.0 && c_sq >= 0.0 && nu_sq >= 0.0 && mu_w > 0.0 && c_sq + nu_sq > 0.0))
    throw InvalidArgument("optimal_a: invalid parameters");
  if (convention == OptimalAConvention::Corollary2) {
    if (nu_sq > 0.0) throw InvalidArgument("optimal_a: the noiseless convention needs nu_sq = 0");
    return d_w * std::sqrt(2.0 * mu_w) / std::sqrt(c_sq);
  }
  return d_w / std::sqrt((c_sq + nu_sq) / mu_w);
}

}  // namespace ssmd

#endif  // SSMD_SOLVER_HPP
