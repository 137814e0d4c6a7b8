#pragma once

#include <cstdint>
#include <random>

namespace skewflow {

// Deterministic uniform doubles from mt19937_64. std::uniform_real_distribution
// is implementation-defined, which would break byte-identical reports across
// toolchains, so the mapping from bits to [0,1) is done by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform in [-1,1].
  double symmetric() { return 2.0 * uniform01() - 1.0; }

  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace skewflow
