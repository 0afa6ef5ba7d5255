#include "lifo/kernels.hpp"

#if defined(LIFO_HAVE_AVX2_TU)

#include <immintrin.h>

namespace lifo::kernels {
namespace {

// Low 64 bits of a * b for four lanes; b is a broadcast constant split into
// its 32-bit halves.
inline __m256i mullo64(__m256i a, __m256i b_lo, __m256i b_hi) {
  const __m256i a_hi = _mm256_srli_epi64(a, 32);
  const __m256i lo = _mm256_mul_epu32(a, b_lo);
  const __m256i cross = _mm256_add_epi64(_mm256_mul_epu32(a_hi, b_lo), _mm256_mul_epu32(a, b_hi));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

struct MixConstants {
  __m256i m1_lo = _mm256_set1_epi64x(0xBF58476D1CE4E5B9ULL & 0xFFFFFFFFULL);
  __m256i m1_hi = _mm256_set1_epi64x(0xBF58476D1CE4E5B9ULL >> 32);
  __m256i m2_lo = _mm256_set1_epi64x(0x94D049BB133111EBULL & 0xFFFFFFFFULL);
  __m256i m2_hi = _mm256_set1_epi64x(0x94D049BB133111EBULL >> 32);
};

inline __m256i mix64x4(__m256i z, const MixConstants& c) {
  z = mullo64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 30)), c.m1_lo, c.m1_hi);
  z = mullo64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 27)), c.m2_lo, c.m2_hi);
  return _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
}

// Codes for four draws, one per 64-bit lane.
inline __m256i classify_x4(__m256i draw, __m256i burger_limit, __m256i flex_limit, __m256i k, __m256i flex_code) {
  const __m256i kind = _mm256_srli_epi64(draw, 32);
  const __m256i type = _mm256_srli_epi64(_mm256_mul_epu32(draw, k), 32);
  // kind < 2^32, so signed 64-bit compares are exact.
  const __m256i is_burger = _mm256_cmpgt_epi64(burger_limit, kind);
  const __m256i is_flex = _mm256_cmpgt_epi64(flex_limit, kind);
  const __m256i order = _mm256_blendv_epi8(_mm256_add_epi64(type, k), flex_code, is_flex);
  return _mm256_blendv_epi8(order, type, is_burger);
}

void fill_symbol_codes(const SymbolThresholds& th, std::uint64_t key, std::uint64_t counter,
                       std::span<std::uint8_t> out) {
  const MixConstants mc;
  const __m256i burger_limit = _mm256_set1_epi64x(static_cast<long long>(th.burger_limit));
  const __m256i flex_limit = _mm256_set1_epi64x(static_cast<long long>(th.flex_limit));
  const __m256i kv = _mm256_set1_epi64x(th.k);
  const __m256i flex_code = _mm256_set1_epi64x(2 * th.k);
  const __m256i golden_lo = _mm256_set1_epi64x(static_cast<long long>(kGolden & 0xFFFFFFFFULL));
  const __m256i golden_hi = _mm256_set1_epi64x(static_cast<long long>(kGolden >> 32));
  const __m256i key_v = _mm256_set1_epi64x(static_cast<long long>(key));
  // Vector q lane j handles output 4j + q, so after OR-ing the four code
  // vectors each 64-bit lane holds four consecutive output bytes.
  const __m256i lane_offset = _mm256_setr_epi64x(1, 5, 9, 13);
  const __m256i gather_low = _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7);

  std::size_t i = 0;
  for (; i + 16 <= out.size(); i += 16) {
    const __m256i base = _mm256_add_epi64(_mm256_set1_epi64x(static_cast<long long>(counter + i)), lane_offset);
    __m256i packed = _mm256_setzero_si256();
    for (int q = 0; q < 4; ++q) {
      const __m256i ctr = _mm256_add_epi64(base, _mm256_set1_epi64x(q));
      const __m256i draw = mix64x4(_mm256_add_epi64(key_v, mullo64(ctr, golden_lo, golden_hi)), mc);
      const __m256i code = classify_x4(draw, burger_limit, flex_limit, kv, flex_code);
      packed = _mm256_or_si256(packed, _mm256_slli_epi64(code, 8 * q));
    }
    packed = _mm256_permutevar8x32_epi32(packed, gather_low);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out.data() + i), _mm256_castsi256_si128(packed));
  }
  for (; i < out.size(); ++i) out[i] = classify(th, mix64(key + (counter + i + 1) * kGolden));
}

std::int64_t hsum(__m256i v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

CrossMoments cross_moments(std::span<const std::int32_t> x, std::span<const std::int32_t> y) {
  __m256i sx = _mm256_setzero_si256(), sy = _mm256_setzero_si256(), sxy = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    const __m256i xv = _mm256_cvtepi32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(x.data() + i)));
    const __m256i yv = _mm256_cvtepi32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(y.data() + i)));
    sx = _mm256_add_epi64(sx, xv);
    sy = _mm256_add_epi64(sy, yv);
    sxy = _mm256_add_epi64(sxy, _mm256_mul_epi32(xv, yv));
  }
  CrossMoments m{hsum(sx), hsum(sy), hsum(sxy)};
  for (; i < x.size(); ++i) {
    m.sum_x += x[i];
    m.sum_y += y[i];
    m.sum_xy += static_cast<std::int64_t>(x[i]) * y[i];
  }
  return m;
}

}  // namespace

namespace detail {
const Table kAvx2{Isa::Avx2, &fill_symbol_codes, &cross_moments};
}

}  // namespace lifo::kernels

#endif
