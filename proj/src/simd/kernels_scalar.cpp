#include "quiver/simd/kernels.hpp"

namespace quiver::simd {
namespace {

bool axpy_checked_scalar(std::int32_t* row, const std::int32_t* v,
                         std::int64_t scale, std::size_t len,
                         std::int64_t cap) {
  bool ok = true;
  for (std::size_t j = 0; j < len; ++j) {
    const std::int64_t x = std::int64_t{row[j]} + scale * std::int64_t{v[j]};
    ok &= (x <= cap) & (x >= -cap);
    row[j] = static_cast<std::int32_t>(x);
  }
  return ok;
}

void xor_words_scalar(std::uint64_t* dst, const std::uint64_t* src,
                      std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) dst[w] ^= src[w];
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{"scalar", &axpy_checked_scalar,
                                 &xor_words_scalar};
  return table;
}

}  // namespace quiver::simd
