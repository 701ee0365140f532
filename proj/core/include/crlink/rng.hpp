#pragma once

#include <cmath>
#include <cstdint>

namespace crlink {

/// Generator identity recorded in run metadata.
inline constexpr const char* kRngId = "splitmix64";

/// splitmix64 (Vigna's reference constants). Counter-based, so the n-th
/// output is a pure function of (seed, n); all randomness in this project
/// flows through it to keep runs reproducible regardless of scheduling.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Exponential variate; rate must be > 0.
  double next_exponential(double rate) { return -std::log1p(-next_double()) / rate; }

  /// Uniform integer in [0, bound), bound >= 1. Unbiased (rejection).
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (~bound + 1) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

 private:
  std::uint64_t state_;
};

/// Seed of the stream-th independent substream of a master seed. Trial t
/// always sees derive_seed(master, t) no matter how trials are scheduled.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return SplitMix64(master + stream * 0x9E3779B97F4A7C15ull).next();
}

}  // namespace crlink
