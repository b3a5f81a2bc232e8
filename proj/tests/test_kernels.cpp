#include <doctest.h>

#include <limits>
#include <random>

#include "quiver/simd/kernels.hpp"

using namespace quiver::simd;

namespace {

std::vector<const KernelTable*> variants() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const KernelTable* t = avx2_kernels(); t != nullptr && cpu_has_avx2()) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("checked axpy variants agree with the scalar reference") {
  std::mt19937_64 rng(7);
  const std::int64_t cap = std::numeric_limits<std::int32_t>::max();
  for (int trial = 0; trial < 4000; ++trial) {
    const std::size_t len = rng() % 37;
    const bool big = trial % 3 == 0;
    std::uniform_int_distribution<std::int32_t> entry(big ? -2'000'000'000 : -50,
                                                      big ? 2'000'000'000 : 50);
    std::vector<std::int32_t> row(len);
    std::vector<std::int32_t> v(len);
    for (auto& x : row) x = entry(rng);
    for (auto& x : v) x = entry(rng);
    const std::int64_t scale = static_cast<std::int64_t>(rng() % 7) - 3;
    const std::int64_t c = trial % 5 == 0 ? 60 : cap;

    std::vector<std::int32_t> ref = row;
    const bool ok_ref = scalar_kernels().axpy_checked(ref.data(), v.data(), scale, len, c);
    bool expect_ok = true;
    for (std::size_t j = 0; j < len; ++j) {
      const std::int64_t x = std::int64_t{row[j]} + scale * v[j];
      expect_ok &= x <= c && x >= -c;
    }
    CHECK(ok_ref == expect_ok);
    for (const KernelTable* k : variants()) {
      std::vector<std::int32_t> got = row;
      const bool ok = k->axpy_checked(got.data(), v.data(), scale, len, c);
      CHECK(ok == ok_ref);
      if (ok) CHECK(got == ref);
    }
  }
}

TEST_CASE("xor variants agree with the scalar reference") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t words = rng() % 19;
    std::vector<std::uint64_t> a(words);
    std::vector<std::uint64_t> b(words);
    for (auto& x : a) x = rng();
    for (auto& x : b) x = rng();
    std::vector<std::uint64_t> ref = a;
    scalar_kernels().xor_words(ref.data(), b.data(), words);
    for (std::size_t w = 0; w < words; ++w) CHECK(ref[w] == (a[w] ^ b[w]));
    for (const KernelTable* k : variants()) {
      std::vector<std::uint64_t> got = a;
      k->xor_words(got.data(), b.data(), words);
      CHECK(got == ref);
    }
  }
}

TEST_CASE("active table can be switched") {
  const KernelTable& before = active();
  set_active(scalar_kernels());
  CHECK(active().name == "scalar");
  set_active(before);
  CHECK(active().name == before.name);
}
