#pragma once

// Data-parallel inner loops shared by the mutation engine and the GF(2) solver.
//
// Every kernel has a portable scalar reference implementation and, where the
// build and the running CPU allow it, an AVX2 variant. The active variant is
// chosen once at startup; both are exported so tests can check them against
// each other.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace quiver::simd {

// row[j] += scale * v[j] for every j, computed in 64-bit arithmetic.
// Returns false (leaving row partially updated) if some |result| exceeds cap.
// Requires |scale| <= INT32_MAX and cap <= INT32_MAX.
using AxpyCheckedFn = bool (*)(std::int32_t* row, const std::int32_t* v,
                               std::int64_t scale, std::size_t len,
                               std::int64_t cap);

// dst[w] ^= src[w]
using XorWordsFn = void (*)(std::uint64_t* dst, const std::uint64_t* src,
                            std::size_t words);

struct KernelTable {
  std::string_view name;
  AxpyCheckedFn axpy_checked;
  XorWordsFn xor_words;
};

const KernelTable& scalar_kernels() noexcept;

// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_kernels() noexcept;

bool cpu_has_avx2() noexcept;

// The table used by the library. Defaults to AVX2 when both compiled in and
// supported by the CPU, unless QUIVER_SIMD=scalar is set in the environment.
const KernelTable& active() noexcept;

// Overrides the active table (tests and benchmarks).
void set_active(const KernelTable& table) noexcept;

inline bool axpy_checked(std::span<std::int32_t> row,
                         std::span<const std::int32_t> v, std::int64_t scale,
                         std::int64_t cap) {
  return active().axpy_checked(row.data(), v.data(), scale, row.size(), cap);
}

inline void xor_words(std::span<std::uint64_t> dst,
                      std::span<const std::uint64_t> src) {
  active().xor_words(dst.data(), src.data(), dst.size());
}

}  // namespace quiver::simd
