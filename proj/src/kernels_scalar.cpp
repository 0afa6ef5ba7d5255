#include "lifo/kernels.hpp"

namespace lifo::kernels {
namespace {

void fill_symbol_codes(const SymbolThresholds& th, std::uint64_t key, std::uint64_t counter,
                       std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = classify(th, mix64(key + (counter + i + 1) * kGolden));
}

CrossMoments cross_moments(std::span<const std::int32_t> x, std::span<const std::int32_t> y) {
  CrossMoments m;
  for (std::size_t i = 0; i < x.size(); ++i) {
    m.sum_x += x[i];
    m.sum_y += y[i];
    m.sum_xy += static_cast<std::int64_t>(x[i]) * y[i];
  }
  return m;
}

}  // namespace

namespace detail {
const Table kScalar{Isa::Scalar, &fill_symbol_codes, &cross_moments};
}

}  // namespace lifo::kernels
