// Command-line front end for the experiment harness.
//
//   ssmd_cli experiment --config PATH --out DIR [--workers N]
//   ssmd_cli verify --kmax N
//   ssmd_cli reference --config PATH --tol T
//   ssmd_cli bounds --config PATH
//
// Exit status: 0 success, 1 invalid input or failed verification, 2 runtime failure.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>

#include "ssmd/harness/config.hpp"
#include "ssmd/harness/csv.hpp"
#include "ssmd/harness/experiment.hpp"
#include "ssmd/harness/verify.hpp"

namespace fs = std::filesystem;
using namespace ssmd;
using namespace ssmd::harness;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;

ExperimentConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const RuntimeFailure& e) {
    throw InvalidArgument(e.what());
  }
  return parse_config(text);
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir, std::size_t workers) {
  const auto cfg = load_config(config_path);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw RuntimeFailure("cannot create '" + out_dir + "': " + ec.message());
  const auto summaries = run_sweep(cfg, ExecutionOptions{workers});
  for (const auto& s : summaries) {
    const std::string name = summaries.size() == 1 ? "summary.csv" : "summary_a" + format_real(s.a) + ".csv";
    const fs::path path = fs::path(out_dir) / name;
    emit_csv(s, path);
    std::cout << path.string() << "\n";
  }
  return kOk;
}

int cmd_verify(std::size_t k_max) {
  const auto report = verify_suite(k_max);
  std::cout << report.text();
  return report.passed() ? kOk : kInvalid;
}

int cmd_reference(const std::string& config_path, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("--tol must be positive");
  const auto cfg = load_config(config_path);
  const auto inst = build_instance(cfg);
  const auto ref = reference_solution(inst, tol);
  std::cout << "f_ref = " << format_real(ref.f) << "\n";
  std::cout << "iterations = " << ref.iterations << "\n";
  std::cout << "x_ref = " << format_list(ref.x) << "\n";
  return kOk;
}

int cmd_bounds(const std::string& config_path) {
  auto cfg = load_config(config_path);
  cfg.compute_reference = false;
  const auto prep = prepare_experiment(cfg);
  const auto curves = bound_curves(prep);
  std::cout << "k";
  for (const auto& c : curves)
    std::cout << (std::isnan(c.a) ? std::string(",bound") : ",bound_a" + format_real(c.a));
  std::cout << "\n";
  for (std::size_t k = 0; k <= cfg.iterations; ++k) {
    std::cout << k;
    for (const auto& c : curves) std::cout << "," << format_real(c.bound[k]);
    std::cout << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic subgradient mirror descent experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::size_t workers = 1;
  std::size_t k_max = 100000;
  double tol = 1e-8;

  auto* experiment = app.add_subcommand("experiment", "Run a Monte-Carlo experiment and write CSV output");
  experiment->add_option("--config", config_path, "Configuration file")->required();
  experiment->add_option("--out", out_dir, "Output directory")->required();
  experiment->add_option("--workers", workers, "Worker threads (output does not depend on it)")
      ->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Check the stepsize conditions numerically");
  verify->add_option("--kmax", k_max, "Largest k checked")->required()->check(CLI::PositiveNumber);

  auto* reference = app.add_subcommand("reference", "Compute a high-accuracy optimal value");
  reference->add_option("--config", config_path, "Configuration file")->required();
  reference->add_option("--tol", tol, "Stopping tolerance")->required();

  auto* bounds = app.add_subcommand("bounds", "Print the theoretical bound curve");
  bounds->add_option("--config", config_path, "Configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*experiment) return cmd_experiment(config_path, out_dir, workers);
    if (*verify) return cmd_verify(k_max);
    if (*reference) return cmd_reference(config_path, tol);
    if (*bounds) return cmd_bounds(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration:\n" << e.what() << "\n";
    return kInvalid;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kRuntime;
}
