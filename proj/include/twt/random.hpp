#pragma once

#include <cstdint>
#include <random>

namespace twt {

/// Purpose tags for deriving independent sub-streams from one master seed.
enum class StreamTag : std::uint64_t {
  kArrivals = 1,
  kRates = 2,
  kBenchmark = 3,
  kOracle = 4,
};

/// Mixes (master seed, owner id, tag) into a 64-bit engine seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t owner, StreamTag tag);

/// A seeded mt19937_64 with sampling helpers that do not depend on the
/// standard library's distribution implementations, so fixtures recorded
/// on one toolchain replay on another.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0) : engine_(seed) {}
  RandomStream(std::uint64_t master, std::uint64_t owner, StreamTag tag)
      : engine_(derive_seed(master, owner, tag)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace twt
