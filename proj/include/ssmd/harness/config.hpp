#ifndef SSMD_HARNESS_CONFIG_HPP
#define SSMD_HARNESS_CONFIG_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ssmd/common.hpp"
#include "ssmd/envelope.hpp"
#include "ssmd/solver.hpp"
#include "ssmd/stepsize.hpp"
#include "ssmd/utility_model.hpp"

namespace ssmd::harness {

/// Validation failure of a configuration; carries every problem found.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "invalid configuration:";
    for (const auto& p : items) out += "\n  " + p;
    return out;
  }
  std::vector<std::string> problems_;
};

enum class Regime { StronglyConvex, Compact };

struct ExperimentConfig {
  Regime regime = Regime::StronglyConvex;

  // Instance: one of test1..test4, or "custom" with explicit n, u, R.
  std::string instance = "test1";
  std::size_t n = 100;
  double u = 10.0;
  double R = 10.0;
  std::optional<Vector> x0;                       // custom only; zeros when absent
  std::optional<Vector> z;                        // (0.5, 0, ..., 0) when absent
  std::optional<std::vector<AffinePiece>> pieces;  // default_pieces() when absent
  std::uint64_t a_seed = kDefaultCoefficientSeed;

  double lambda = 100.0;
  StepsizeSchedule::Kind schedule = StepsizeSchedule::Kind::TsengExplicit;
  std::vector<double> a_values;  // compact regime; empty means "optimal"
  std::size_t iterations = 100;
  std::size_t runs = 100;
  std::uint64_t base_seed = 0;
  std::string output;

  bool analytic = true;
  std::size_t eval_samples = 10000;
  std::size_t constant_samples = 10000;
  NormConvention norm = NormConvention::Euclidean;
  bool compute_reference = false;
  double reference_tol = 1e-8;
};

// ---------------------------------------------------------------------------
// Value formatting and parsing.

/// Shortest decimal string that reads back to the same double.
inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_list(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_real(values[i]);
  }
  return out;
}

inline std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

inline std::optional<double> parse_real(std::string_view s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

inline std::optional<std::uint64_t> parse_unsigned(std::string_view s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  std::uint64_t v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline std::optional<Vector> parse_real_list(std::string_view s) {
  Vector out;
  for (const auto& part : split(s, ',')) {
    const auto v = parse_real(part);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

/// "c:d, c:d, ..."
inline std::optional<std::vector<AffinePiece>> parse_pieces(std::string_view s) {
  std::vector<AffinePiece> out;
  for (const auto& part : split(s, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) return std::nullopt;
    const auto c = parse_real(std::string_view(part).substr(0, colon));
    const auto d = parse_real(std::string_view(part).substr(colon + 1));
    if (!c || !d) return std::nullopt;
    out.push_back({*c, *d});
  }
  return out;
}

inline std::string format_pieces(std::span<const AffinePiece> pieces) {
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i) out += ", ";
    out += format_real(pieces[i].intercept) + ":" + format_real(pieces[i].slope);
  }
  return out;
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// ---------------------------------------------------------------------------

/// Parses `key = value` lines (`#` starts a comment). Unknown or repeated keys,
/// malformed lines and bad values are reported with their line numbers; the
/// cross-field invariants are checked afterwards and every violation is listed.
///
/// Keys: regime, instance, n, u, R, x0, z, pieces, a_seed, lambda, schedule, a,
/// iterations, runs, seed, output, analytic, eval_samples, constant_samples,
/// norm, reference, reference_tol.
inline ExperimentConfig parse_config(std::string_view text) {
  std::vector<std::string> errors;
  std::map<std::string, std::pair<std::string, std::size_t>> entries;

  static const std::vector<std::string> known = {
      "regime", "instance", "n",      "u",      "R",        "x0",           "z",
      "pieces", "a_seed",   "lambda", "schedule", "a",      "iterations",   "runs",
      "seed",   "output",   "analytic", "eval_samples", "constant_samples", "norm", "reference",
      "reference_tol"};

  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? std::string_view(raw) : std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      errors.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      continue;
    }
    if (entries.count(key)) {
      errors.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
      continue;
    }
    if (value.empty()) {
      errors.push_back("line " + std::to_string(line_no) + ": empty value for '" + key + "'");
      continue;
    }
    entries[key] = {value, line_no};
  }

  ExperimentConfig cfg;
  auto where = [&](const std::string& key) { return "line " + std::to_string(entries[key].second) + ": "; };
  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second.first;
  };
  auto real_key = [&](const std::string& key, auto&& assign) {
    if (const auto* v = get(key)) {
      if (const auto r = parse_real(*v); r && std::isfinite(*r))
        assign(*r);
      else
        errors.push_back(where(key) + "'" + key + "' must be a finite real number");
    }
  };
  auto uint_key = [&](const std::string& key, auto&& assign) {
    if (const auto* v = get(key)) {
      if (const auto r = parse_unsigned(*v))
        assign(*r);
      else
        errors.push_back(where(key) + "'" + key + "' must be a nonnegative integer");
    }
  };
  auto bool_key = [&](const std::string& key, bool& target) {
    if (const auto* v = get(key)) {
      const auto s = lower(*v);
      if (s == "true" || s == "yes" || s == "1")
        target = true;
      else if (s == "false" || s == "no" || s == "0")
        target = false;
      else
        errors.push_back(where(key) + "'" + key + "' must be true or false");
    }
  };

  bool regime_ok = false;
  if (const auto* v = get("regime")) {
    const auto s = lower(*v);
    if (s == "strongly_convex") {
      cfg.regime = Regime::StronglyConvex;
      regime_ok = true;
    } else if (s == "compact") {
      cfg.regime = Regime::Compact;
      regime_ok = true;
    } else {
      errors.push_back(where("regime") + "regime must be strongly_convex or compact");
    }
  } else {
    errors.push_back("missing required key 'regime'");
  }
  const bool compact = regime_ok && cfg.regime == Regime::Compact;

  // Defaults that depend on the regime.
  cfg.iterations = compact ? 1000 : 100;
  cfg.lambda = compact ? 0.0 : 100.0;

  if (const auto* v = get("instance")) {
    const auto s = lower(*v);
    if (s == "test1" || s == "test2" || s == "test3" || s == "test4" || s == "custom")
      cfg.instance = s;
    else
      errors.push_back(where("instance") + "instance must be test1..test4 or custom");
  }
  const bool custom = cfg.instance == "custom";

  for (const char* key : {"n", "u", "R", "x0"}) {
    if (get(key) && !custom) errors.push_back(where(key) + "'" + key + "' is only allowed with instance = custom");
  }
  if (custom) {
    for (const char* key : {"n", "u", "R"})
      if (!get(key)) errors.push_back(std::string("instance = custom requires '") + key + "'");
  }
  uint_key("n", [&](std::uint64_t v) { cfg.n = static_cast<std::size_t>(v); });
  real_key("u", [&](double v) { cfg.u = v; });
  real_key("R", [&](double v) { cfg.R = v; });
  if (const auto* v = get("x0")) {
    if (lower(*v) == "zeros") {
    } else if (auto list = parse_real_list(*v)) {
      cfg.x0 = std::move(*list);
    } else {
      errors.push_back(where("x0") + "x0 must be 'zeros' or a comma-separated list of reals");
    }
  }
  if (const auto* v = get("z")) {
    if (auto list = parse_real_list(*v))
      cfg.z = std::move(*list);
    else
      errors.push_back(where("z") + "z must be a comma-separated list of reals");
  }
  if (const auto* v = get("pieces")) {
    if (auto p = parse_pieces(*v); p && !p->empty())
      cfg.pieces = std::move(*p);
    else
      errors.push_back(where("pieces") + "pieces must be a list 'intercept:slope, ...'");
  }
  uint_key("a_seed", [&](std::uint64_t v) { cfg.a_seed = v; });
  real_key("lambda", [&](double v) { cfg.lambda = v; });

  if (const auto* v = get("schedule")) {
    const auto s = lower(*v);
    if (compact)
      errors.push_back(where("schedule") + "'schedule' only applies to regime = strongly_convex");
    else if (s == "step-1" || s == "step1" || s == "tseng")
      cfg.schedule = StepsizeSchedule::Kind::TsengExplicit;
    else if (s == "step-2" || s == "step2" || s == "nesterov")
      cfg.schedule = StepsizeSchedule::Kind::NesterovRecursive;
    else
      errors.push_back(where("schedule") + "schedule must be step-1 or step-2");
  }
  if (const auto* v = get("a")) {
    if (regime_ok && !compact) {
      errors.push_back(where("a") + "'a' only applies to regime = compact");
    } else if (lower(*v) != "optimal") {
      if (auto list = parse_real_list(*v)) {
        cfg.a_values = std::move(*list);
        for (double a : cfg.a_values)
          if (!(a > 0.0) || !std::isfinite(a)) errors.push_back(where("a") + "every a must be > 0");
      } else {
        errors.push_back(where("a") + "a must be 'optimal' or a comma-separated list of positive reals");
      }
    }
  }

  uint_key("iterations", [&](std::uint64_t v) { cfg.iterations = static_cast<std::size_t>(v); });
  uint_key("runs", [&](std::uint64_t v) { cfg.runs = static_cast<std::size_t>(v); });
  uint_key("seed", [&](std::uint64_t v) { cfg.base_seed = v; });
  if (const auto* v = get("output")) cfg.output = *v;
  bool_key("analytic", cfg.analytic);
  uint_key("eval_samples", [&](std::uint64_t v) { cfg.eval_samples = static_cast<std::size_t>(v); });
  uint_key("constant_samples", [&](std::uint64_t v) { cfg.constant_samples = static_cast<std::size_t>(v); });
  if (const auto* v = get("norm")) {
    const auto s = lower(*v);
    if (s == "euclidean")
      cfg.norm = NormConvention::Euclidean;
    else if (s == "general")
      cfg.norm = NormConvention::General;
    else
      errors.push_back(where("norm") + "norm must be euclidean or general");
  }
  bool_key("reference", cfg.compute_reference);
  real_key("reference_tol", [&](double v) { cfg.reference_tol = v; });

  // Cross-field invariants.
  if (cfg.runs < 1) errors.push_back("runs must be >= 1");
  if (cfg.iterations < 1) errors.push_back("iterations (K) must be >= 1");
  if (regime_ok && !compact && !(cfg.lambda > 0.0))
    errors.push_back("regime = strongly_convex requires lambda > 0");
  if (cfg.lambda < 0.0) errors.push_back("lambda must be >= 0");
  if (cfg.eval_samples < 1) errors.push_back("eval_samples must be >= 1");
  if (cfg.constant_samples < 1000) errors.push_back("constant_samples must be >= 1000");
  if (!(cfg.reference_tol > 0.0)) errors.push_back("reference_tol must be > 0");
  if (custom) {
    if (cfg.n < 1) errors.push_back("n must be >= 1");
    if (!(cfg.u > 0.0)) errors.push_back("u must be > 0");
    if (!(cfg.R > 0.0)) errors.push_back("R must be > 0");
  }
  const std::size_t dim = custom ? cfg.n : 100;
  if (cfg.x0 && cfg.x0->size() != dim) errors.push_back("x0 must have n components");
  if (cfg.z && cfg.z->size() != dim) errors.push_back("z must have n components");

  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

/// Builds the benchmark instance described by the configuration.
inline UtilityInstance build_instance(const ExperimentConfig& cfg) {
  if (cfg.instance != "custom") {
    static const std::map<std::string, TestInstance> labels = {{"test1", TestInstance::Test1},
                                                               {"test2", TestInstance::Test2},
                                                               {"test3", TestInstance::Test3},
                                                               {"test4", TestInstance::Test4}};
    UtilityInstance inst = default_instance(labels.at(cfg.instance), cfg.lambda, cfg.a_seed);
    if (cfg.z || cfg.pieces)
      inst = make_utility_instance(inst.label, inst.a, cfg.pieces.value_or(inst.pieces), cfg.lambda,
                                   cfg.z.value_or(inst.z), inst.set, inst.x0, cfg.a_seed);
    return inst;
  }
  Vector z(cfg.n, 0.0);
  z[0] = 0.5;
  return make_utility_instance("custom", draw_coefficients(cfg.n, cfg.a_seed), cfg.pieces.value_or(default_pieces()),
                               cfg.lambda, cfg.z.value_or(z), FeasibleSet::capped_box(cfg.n, cfg.u, cfg.R),
                               cfg.x0.value_or(Vector(cfg.n, 0.0)), cfg.a_seed);
}

/// Canonical `key = value` rendering with every default resolved; parsing it
/// gives back an equivalent configuration.
inline std::string canonical_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  const bool compact = cfg.regime == Regime::Compact;
  out << "regime = " << (compact ? "compact" : "strongly_convex") << "\n";
  out << "instance = " << cfg.instance << "\n";
  if (cfg.instance == "custom") {
    out << "n = " << cfg.n << "\n";
    out << "u = " << format_real(cfg.u) << "\n";
    out << "R = " << format_real(cfg.R) << "\n";
    if (cfg.x0) out << "x0 = " << format_list(*cfg.x0) << "\n";
  }
  if (cfg.z) out << "z = " << format_list(*cfg.z) << "\n";
  if (cfg.pieces) out << "pieces = " << format_pieces(*cfg.pieces) << "\n";
  out << "a_seed = " << cfg.a_seed << "\n";
  out << "lambda = " << format_real(cfg.lambda) << "\n";
  if (compact)
    out << "a = " << (cfg.a_values.empty() ? std::string("optimal") : format_list(cfg.a_values)) << "\n";
  else
    out << "schedule = " << (cfg.schedule == StepsizeSchedule::Kind::NesterovRecursive ? "step-2" : "step-1") << "\n";
  out << "iterations = " << cfg.iterations << "\n";
  out << "runs = " << cfg.runs << "\n";
  out << "seed = " << cfg.base_seed << "\n";
  out << "analytic = " << (cfg.analytic ? "true" : "false") << "\n";
  out << "eval_samples = " << cfg.eval_samples << "\n";
  out << "constant_samples = " << cfg.constant_samples << "\n";
  out << "norm = " << (cfg.norm == NormConvention::Euclidean ? "euclidean" : "general") << "\n";
  out << "reference = " << (cfg.compute_reference ? "true" : "false") << "\n";
  out << "reference_tol = " << format_real(cfg.reference_tol) << "\n";
  return out.str();
}

}  // namespace ssmd::harness

#endif  // SSMD_HARNESS_CONFIG_HPP
