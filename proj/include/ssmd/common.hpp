#ifndef SSMD_COMMON_HPP
#define SSMD_COMMON_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssmd {

using Vector = std::vector<double>;

/// Raised when an operation's precondition does not hold (bad dimensions,
/// infeasible points, unsupported combinations).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative routine fails at run time (non-convergence,
/// oracle failure).
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline void require_same_dim(std::span<const double> x, std::span<const double> y, const char* what) {
  if (x.size() != y.size())
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()) + ")");
}

inline void require_finite(std::span<const double> x, const char* what) {
  for (double v : x)
    if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + ": non-finite component");
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  require_same_dim(x, y, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm2_sq(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

inline double norm2(std::span<const double> x) { return std::sqrt(norm2_sq(x)); }

inline double dist2_sq(std::span<const double> x, std::span<const double> y) {
  require_same_dim(x, y, "dist2_sq");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

/// x + scale * y
inline Vector axpy(std::span<const double> x, double scale, std::span<const double> y) {
  require_same_dim(x, y, "axpy");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + scale * y[i];
  return out;
}

}  // namespace ssmd

#endif  // SSMD_COMMON_HPP
