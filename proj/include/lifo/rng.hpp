#pragma once

#include <cstdint>

namespace lifo {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed for stream `index` under `master`. Used for per-trial and per-role
/// streams so that results never depend on scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

/// splitmix64 viewed as a counter-based generator: draw number c (1-based)
/// is mix64(key + c * golden), so any block of draws can be produced out of
/// order or in SIMD lanes.
class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) : key_(key), counter_(counter) {}

  constexpr std::uint64_t next() { return mix64(key_ + (++counter_) * kGolden); }

  /// Uniform on [0, 1) with 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t counter() const { return counter_; }
  constexpr void skip(std::uint64_t n) { counter_ += n; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace lifo
