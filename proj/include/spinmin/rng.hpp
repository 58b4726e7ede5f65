#pragma once

#include <cstdint>
#include <random>

namespace spinmin {

using Seed = std::uint64_t;

/// SplitMix64 finalizer over (seed, index, stream); gives independent
/// substream seeds, e.g. one per matrix of an ensemble.
Seed derive_seed(Seed master, std::uint64_t index, std::uint64_t stream = 0);

/// mt19937_64 with value conversions spelled out here rather than taken
/// from <random> distributions, whose output is implementation-defined.
/// Same seed gives the same sequence on every platform.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// +1 or -1 with probability 1/2 each.
  int coin() { return (engine_() >> 63) ? -1 : 1; }
  /// Uniform integer on [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace spinmin
