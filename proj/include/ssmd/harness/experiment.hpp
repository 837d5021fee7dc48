#ifndef SSMD_HARNESS_EXPERIMENT_HPP
#define SSMD_HARNESS_EXPERIMENT_HPP

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ssmd/harness/config.hpp"
#include "ssmd/solver.hpp"
#include "ssmd/utility_model.hpp"

namespace ssmd::harness {

/// Monte-Carlo aggregate of one experiment (one value of a).
struct McSummary {
  std::vector<std::size_t> k;
  std::vector<double> mean_f_avg;
  std::vector<double> stderr_f_avg;
  std::vector<double> mean_f_iter;
  std::vector<double> mean_f_min;
  std::vector<double> bound;  // bound on E f(xhat_k) - f*

  // Metadata.
  std::string config_text;  // canonical configuration
  std::string config_hash;  // SHA-1 of the canonical configuration, git blob style
  std::string schedule;     // "step-1", "step-2" or "inverse-sqrt"
  double a = std::numeric_limits<double>::quiet_NaN();
  std::size_t runs = 0;
  std::optional<double> f_ref;
  double c_est = 0.0;
  double nu_est = 0.0;
  double c_tilde_sq = 0.0;
  double d_w_sq = std::numeric_limits<double>::quiet_NaN();
  double mu_f = 0.0;
  double mu_w = 1.0;
  std::string f_evaluation;
  std::string instance_text;  // key = value serialization of the instance
};

struct ExecutionOptions {
  /// Worker threads; results do not depend on this value.
  std::size_t workers = 1;
};

/// git-style object hash: SHA-1 over "blob <len>\0<content>".
inline std::string content_hash(const std::string& content) {
  std::string blob = "blob " + std::to_string(content.size());
  blob.push_back('\0');
  blob += content;
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), digest, &len, EVP_sha1(), nullptr) != 1)
    throw RuntimeFailure("content_hash: SHA-1 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

inline std::string serialize_instance(const UtilityInstance& inst) {
  std::string out;
  out += "instance.label = " + inst.label + "\n";
  out += "instance.n = " + std::to_string(inst.n()) + "\n";
  out += "instance.u = " + format_real(inst.set.cap()) + "\n";
  out += "instance.R = " + format_real(inst.set.budget()) + "\n";
  out += "instance.lambda = " + format_real(inst.lambda) + "\n";
  out += "instance.a_seed = " + std::to_string(inst.a_seed) + "\n";
  out += "instance.pieces = " + format_pieces(inst.pieces) + "\n";
  out += "instance.breakpoints = " + format_list(inst.envelope.breakpoints()) + "\n";
  out += "instance.z = " + format_list(inst.z) + "\n";
  out += "instance.x0 = " + format_list(inst.x0) + "\n";
  return out;
}

/// Seed of the constant-estimation stream, derived from the base seed so it
/// never coincides with a run stream for realistic run counts.
inline std::uint64_t constants_seed(std::uint64_t base_seed) { return base_seed ^ 0x9e3779b97f4a7c15ULL; }

/// Everything shared by the runs of one configuration.
struct PreparedExperiment {
  ExperimentConfig config;
  UtilityInstance instance;
  ConstantEstimates constants;
  double d_w_sq = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> f_ref;
};

inline PreparedExperiment prepare_experiment(const ExperimentConfig& cfg) {
  PreparedExperiment prep{cfg, build_instance(cfg), {}, std::numeric_limits<double>::quiet_NaN(), std::nullopt};
  Rng crng(constants_seed(cfg.base_seed));
  prep.constants = estimate_constants(prep.instance, cfg.constant_samples, crng);
  try {
    prep.d_w_sq = bregman_diameter_sq(prep.instance.set, MirrorMap::euclidean());
  } catch (const InvalidArgument&) {
    if (cfg.regime == Regime::Compact) throw;
  }
  if (cfg.compute_reference) prep.f_ref = reference_solution(prep.instance, cfg.reference_tol).f;
  return prep;
}

/// a* from the estimated constants (noisy compact-set convention, mu_w = 1).
inline double resolve_optimal_a(const PreparedExperiment& prep) {
  const double c_sq = prep.constants.c_est * prep.constants.c_est;
  const double nu_sq = prep.constants.nu_est * prep.constants.nu_est;
  return optimal_a(std::sqrt(prep.d_w_sq), c_sq, nu_sq, 1.0, OptimalAConvention::Theorem3);
}

/// Runs `runs` independent solver runs (run r uses seed base_seed + r, wrapping)
/// and reduces them in run order. `a` is used by the compact regime only.
inline McSummary run_experiment(const PreparedExperiment& prep, std::optional<double> a,
                                const ExecutionOptions& exec = {}) {
  const ExperimentConfig& cfg = prep.config;
  const UtilityInstance& inst = prep.instance;
  const bool compact = cfg.regime == Regime::Compact;
  const double a_value = compact ? a.value_or(resolve_optimal_a(prep)) : std::numeric_limits<double>::quiet_NaN();

  const ProblemHandle problem = make_problem(inst, cfg.analytic);
  RunOptions options;
  options.eval.sample_count = cfg.eval_samples;
  const auto schedule = compact ? StepsizeSchedule::inverse_sqrt(a_value) : StepsizeSchedule(
      cfg.schedule == StepsizeSchedule::Kind::NesterovRecursive ? StepsizeSchedule::nesterov()
                                                               : StepsizeSchedule::tseng());

  std::vector<RunTrace> traces(cfg.runs);
  std::vector<std::exception_ptr> failures(cfg.runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t r = next.fetch_add(1); r < cfg.runs; r = next.fetch_add(1)) {
      try {
        Rng rng(cfg.base_seed + static_cast<std::uint64_t>(r));
        traces[r] = compact ? run_compact(problem, a_value, cfg.iterations, inst.x0, rng, options)
                            : run_strongly_convex(problem, schedule, cfg.iterations, inst.x0, rng, options);
      } catch (...) {
        failures[r] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(exec.workers, 1, cfg.runs);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t r = 0; r < cfg.runs; ++r) {
    if (!failures[r]) continue;
    try {
      std::rethrow_exception(failures[r]);
    } catch (const std::exception& e) {
      throw RuntimeFailure("run " + std::to_string(r) + " failed: " + e.what());
    }
  }

  McSummary s;
  const std::size_t rows = cfg.iterations + 1;
  s.k.resize(rows);
  s.mean_f_avg.resize(rows);
  s.stderr_f_avg.resize(rows);
  s.mean_f_iter.resize(rows);
  s.mean_f_min.resize(rows);
  s.bound.resize(rows);

  s.c_est = prep.constants.c_est;
  s.nu_est = prep.constants.nu_est;
  const double c_sq = s.c_est * s.c_est;
  const double nu_sq = s.nu_est * s.nu_est;
  s.c_tilde_sq = c_tilde_sq(c_sq, nu_sq, cfg.norm);
  s.d_w_sq = prep.d_w_sq;
  s.mu_f = inst.lambda;
  s.mu_w = 1.0;
  s.a = a_value;
  s.runs = cfg.runs;
  s.f_ref = prep.f_ref;
  s.schedule = schedule.name();
  s.f_evaluation = traces.front().f_evaluation;
  s.config_text = canonical_text(cfg);
  s.config_hash = content_hash(s.config_text);
  s.instance_text = serialize_instance(inst);

  const double n_runs = static_cast<double>(cfg.runs);
  for (std::size_t k = 0; k < rows; ++k) {
    CompensatedSum avg, avg_sq, iter, best;
    for (const auto& t : traces) {
      const auto& rec = t.records[k];
      avg.add(rec.f_avg);
      iter.add(rec.f_iter);
      best.add(rec.f_min);
    }
    const double mean = avg.value() / n_runs;
    for (const auto& t : traces) {
      const double d = t.records[k].f_avg - mean;
      avg_sq.add(d * d);
    }
    s.k[k] = k;
    s.mean_f_avg[k] = mean;
    s.stderr_f_avg[k] = cfg.runs > 1 ? std::sqrt(avg_sq.value() / (n_runs - 1.0) / n_runs) : 0.0;
    s.mean_f_iter[k] = iter.value() / n_runs;
    s.mean_f_min[k] = best.value() / n_runs;
    s.bound[k] = compact ? theorem3_bound(k, a_value, s.d_w_sq, c_sq, nu_sq, s.mu_w)
                         : theorem1_bound(k, s.c_tilde_sq, s.mu_f, s.mu_w).gap;
  }
  return s;
}

inline McSummary run_experiment(const ExperimentConfig& cfg, const ExecutionOptions& exec = {}) {
  const auto prep = prepare_experiment(cfg);
  return run_experiment(prep, cfg.a_values.empty() ? std::nullopt : std::optional<double>(cfg.a_values.front()), exec);
}

/// One summary per configured value of a (a single one for the strongly convex
/// regime or when a is "optimal").
inline std::vector<McSummary> run_sweep(const ExperimentConfig& cfg, const ExecutionOptions& exec = {}) {
  const auto prep = prepare_experiment(cfg);
  std::vector<McSummary> out;
  if (cfg.regime == Regime::StronglyConvex || cfg.a_values.empty()) {
    out.push_back(run_experiment(prep, std::nullopt, exec));
    return out;
  }
  for (double a : cfg.a_values) out.push_back(run_experiment(prep, a, exec));
  return out;
}

/// Theoretical bound curve for k = 0..K, one per value of a.
struct BoundCurve {
  double a = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> bound;
};

inline std::vector<BoundCurve> bound_curves(const PreparedExperiment& prep) {
  const auto& cfg = prep.config;
  const double c_sq = prep.constants.c_est * prep.constants.c_est;
  const double nu_sq = prep.constants.nu_est * prep.constants.nu_est;
  std::vector<BoundCurve> curves;
  if (cfg.regime == Regime::StronglyConvex) {
    BoundCurve c;
    for (std::size_t k = 0; k <= cfg.iterations; ++k)
      c.bound.push_back(theorem1_bound(k, c_tilde_sq(c_sq, nu_sq, cfg.norm), prep.instance.lambda, 1.0).gap);
    curves.push_back(std::move(c));
    return curves;
  }
  std::vector<double> as = cfg.a_values;
  if (as.empty()) as.push_back(resolve_optimal_a(prep));
  for (double a : as) {
    BoundCurve c;
    c.a = a;
    for (std::size_t k = 0; k <= cfg.iterations; ++k)
      c.bound.push_back(theorem3_bound(k, a, prep.d_w_sq, c_sq, nu_sq, 1.0));
    curves.push_back(std::move(c));
  }
  return curves;
}

}  // namespace ssmd::harness

#endif  // SSMD_HARNESS_EXPERIMENT_HPP
