#pragma once

#include <cstdint>

namespace fbd {

/// Counter-based generator: the n-th output is a pure function of
/// (key, n). Streams for different keys are independent, so parallel
/// workers need no coordination and results do not depend on scheduling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept : key_(key), counter_(counter) {}

  static std::uint64_t mix(std::uint64_t key, std::uint64_t counter) noexcept {
    std::uint64_t z = key ^ (counter * 0xD1B54A32D192ED03ULL);
    z = finalize(z + 0x9E3779B97F4A7C15ULL);
    return finalize(z ^ (key >> 29) ^ (key << 35));
  }

  /// Combines a seed with up to two stream identifiers into a key.
  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) noexcept {
    return finalize(finalize(finalize(seed) ^ (a + 0x632BE59BD9B4E019ULL)) ^ (b + 0x8CB92BA72F3D8DD7ULL));
  }

  std::uint64_t next_u64() noexcept { return mix(key_, counter_++); }

  /// Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform() noexcept { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  static std::uint64_t finalize(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace fbd
