#pragma once

#include <cstdint>
#include <random>

namespace potlab {

// Seeded RNG whose double stream is identical on every platform: the
// engine is the standard-pinned mt19937_64 and doubles are built from
// raw bits instead of implementation-defined distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t bits() { return engine_(); }

  /// uniform in [0, 1)
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// uniform integer in [0, n), n > 0
  uint64_t index(uint64_t n) { return bits() % n; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace potlab
