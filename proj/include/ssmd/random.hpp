#ifndef SSMD_RANDOM_HPP
#define SSMD_RANDOM_HPP

#include <cstdint>
#include <random>

#include "ssmd/normal.hpp"

namespace ssmd {

/// Seeded random stream with a fixed, platform-independent output contract.
///
/// Bits come from std::mt19937_64, whose output sequence is pinned by the C++
/// standard. Uniform variates use the top 53 bits of each draw; normal variates
/// are the inverse normal CDF of a uniform on the open interval (0, 1), so each
/// normal consumes exactly one 64-bit draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform on the open interval (0, 1).
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  double normal() { return normal::quantile(uniform_open()); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace ssmd

#endif  // SSMD_RANDOM_HPP
