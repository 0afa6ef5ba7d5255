#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "lifo/model.hpp"

namespace lifo::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view name(Isa isa);

/// Exact integer sums over paired samples.
struct CrossMoments {
  std::int64_t sum_x = 0;
  std::int64_t sum_y = 0;
  std::int64_t sum_xy = 0;
  friend bool operator==(const CrossMoments&, const CrossMoments&) = default;
};

/// One implementation of every data-parallel kernel. All variants must be
/// bit-identical to the scalar table.
struct Table {
  Isa isa;
  /// out[i] = classify(th, mix64(key + (counter + i + 1) * golden)).
  void (*fill_symbol_codes)(const SymbolThresholds& th, std::uint64_t key, std::uint64_t counter,
                            std::span<std::uint8_t> out);
  /// Requires x.size() == y.size() and sums that fit in int64.
  CrossMoments (*cross_moments)(std::span<const std::int32_t> x, std::span<const std::int32_t> y);
};

bool available(Isa isa);
/// Throws Error when `isa` is not available on this CPU.
const Table& table(Isa isa);

/// Best available table, unless the LIFO_SIMD environment variable is set to
/// "scalar" or "avx2". Resolved once.
const Table& active();

namespace detail {
extern const Table kScalar;
#if defined(LIFO_HAVE_AVX2_TU)
extern const Table kAvx2;
#endif
}  // namespace detail

}  // namespace lifo::kernels
