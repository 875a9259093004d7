#pragma once

#include <cstdint>
#include <initializer_list>

namespace gbs {

/// Counter-based pseudo-random stream (splitmix64 finalizer over key+counter).
///
/// Streams are cheap value types. `child(id)` derives an independent stream,
/// so per-trial randomness can be keyed as (seed, trial) and consumed in any
/// order without coupling trials to each other. Output is identical across
/// platforms; no std:: distribution is involved anywhere.
class Rng {
 public:
  Rng() = default;
  explicit Rng(std::uint64_t seed) : key_(mix(seed + kGolden)) {}

  /// Independent stream derived from this one's key and `id`.
  Rng child(std::uint64_t id) const {
    Rng r;
    r.key_ = mix(key_ ^ mix(id + kGolden));
    return r;
  }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

  /// Uniform double in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), unbiased. n must be positive.
  std::uint64_t next_below(std::uint64_t n) {
    // Lemire's multiply-shift with rejection of the biased low range.
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Number of raw draws consumed so far.
  std::uint64_t draws() const { return counter_; }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace gbs
