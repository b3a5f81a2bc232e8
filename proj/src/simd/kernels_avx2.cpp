// Compiled with -mavx2 when the toolchain supports it; only reached after a
// runtime CPU check.

#include "quiver/simd/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace quiver::simd {
namespace {

bool axpy_checked_avx2(std::int32_t* row, const std::int32_t* v,
                       std::int64_t scale, std::size_t len, std::int64_t cap) {
  const __m256i vscale = _mm256_set1_epi64x(scale);
  const __m256i vcap = _mm256_set1_epi64x(cap);
  const __m256i vneg_cap = _mm256_set1_epi64x(-cap);
  __m256i bad = _mm256_setzero_si256();

  std::size_t j = 0;
  for (; j + 4 <= len; j += 4) {
    const __m128i r32 =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(row + j));
    const __m128i v32 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(v + j));
    // Sign-extend to 64-bit lanes; mul_epi32 reads the low signed 32 bits of
    // each lane, which is exact because |scale| and |v| fit in int32.
    const __m256i r64 = _mm256_cvtepi32_epi64(r32);
    const __m256i v64 = _mm256_cvtepi32_epi64(v32);
    const __m256i sum = _mm256_add_epi64(r64, _mm256_mul_epi32(v64, vscale));
    bad = _mm256_or_si256(bad, _mm256_cmpgt_epi64(sum, vcap));
    bad = _mm256_or_si256(bad, _mm256_cmpgt_epi64(vneg_cap, sum));
    // Gather the low dwords of the four lanes back into one 128-bit vector.
    const __m256i packed = _mm256_permutevar8x32_epi32(
        sum, _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(row + j),
                     _mm256_castsi256_si128(packed));
  }
  bool ok = _mm256_testz_si256(bad, bad) != 0;
  for (; j < len; ++j) {
    const std::int64_t x = std::int64_t{row[j]} + scale * std::int64_t{v[j]};
    ok &= (x <= cap) & (x >= -cap);
    row[j] = static_cast<std::int32_t>(x);
  }
  return ok;
}

void xor_words_avx2(std::uint64_t* dst, const std::uint64_t* src,
                    std::size_t words) {
  std::size_t w = 0;
  for (; w + 4 <= words; w += 4) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + w));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + w));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + w),
                        _mm256_xor_si256(a, b));
  }
  for (; w < words; ++w) dst[w] ^= src[w];
}

}  // namespace

const KernelTable* avx2_kernels() noexcept {
  static const KernelTable table{"avx2", &axpy_checked_avx2, &xor_words_avx2};
  return &table;
}

}  // namespace quiver::simd

#else

namespace quiver::simd {
const KernelTable* avx2_kernels() noexcept { return nullptr; }
}  // namespace quiver::simd

#endif
