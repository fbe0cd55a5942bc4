#pragma once

#include <cstdint>
#include <random>

namespace planar {

/// Seeded generator whose output sequence is fixed across platforms and
/// standard libraries: std::mt19937_64 for the raw stream, with the
/// uniform, index and normal transforms implemented here rather than taken
/// from the implementation-defined <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform double in [lo, hi]; returns lo when lo == hi.
  double uniform(double lo, double hi);

  /// Uniform integer in [0, bound) by rejection (no modulo bias).
  std::uint64_t index(std::uint64_t bound);

  /// Standard normal deviate (Box-Muller, one value per call).
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; derives independent sub-seeds from (seed, stream).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace planar
