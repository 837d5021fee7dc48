#ifndef SSMD_HARNESS_VERIFY_HPP
#define SSMD_HARNESS_VERIFY_HPP

#include <functional>
#include <string>
#include <vector>

#include "ssmd/harness/config.hpp"
#include "ssmd/stepsize.hpp"

namespace ssmd::harness {

struct VerifyLine {
  std::string check;
  CheckResult result;
};

struct VerifyReport {
  std::vector<VerifyLine> lines;

  bool passed() const {
    for (const auto& l : lines)
      if (!l.result.passed) return false;
    return true;
  }

  std::string text() const {
    std::string out;
    for (const auto& l : lines) {
      out += (l.result.passed ? "PASS " : "FAIL ") + l.check;
      if (l.result.first_violation)
        out += " (first violation at k = " + std::to_string(*l.result.first_violation) + ": " + l.result.detail + ")";
      out += "\n";
    }
    return out;
  }
};

/// Step condition, the alpha_k^2 sum bound and the 2/(k+1) cap for an arbitrary sequence.
inline std::vector<VerifyLine> verify_sequence(const std::string& name, const std::function<double(std::size_t)>& alpha,
                                               std::size_t k_max) {
  return {{name + " step condition", verify_step_condition(alpha, k_max)},
          {name + " alpha_k^2 sum 1/alpha_t >= 1", verify_lemma2(alpha, k_max)},
          {name + " alpha_k <= 2/(k+1)", verify_stepcond(alpha, k_max)}};
}

inline VerifyReport verify_suite(std::size_t k_max) {
  if (k_max < 1) throw InvalidArgument("verify_suite: k_max must be at least 1");
  VerifyReport report;
  for (const auto& schedule : {StepsizeSchedule::tseng(), StepsizeSchedule::nesterov()}) {
    const auto lines = verify_sequence(schedule.name(), [&](std::size_t k) { return schedule.alpha(k); }, k_max);
    report.lines.insert(report.lines.end(), lines.begin(), lines.end());
  }
  for (double a : {0.1, 1.0, 10.0})
    report.lines.push_back({"inverse-sqrt a = " + format_real(a) + " sum 1/alpha_t >= (2/(3a))(k+1)^1.5",
                            verify_lemma6(a, k_max)});
  return report;
}

}  // namespace ssmd::harness

#endif  // SSMD_HARNESS_VERIFY_HPP
