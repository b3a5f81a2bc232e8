#include <atomic>
#include <cstdlib>
#include <string_view>

#include "quiver/simd/kernels.hpp"

namespace quiver::simd {
namespace {

const KernelTable* choose() noexcept {
  if (const char* env = std::getenv("QUIVER_SIMD");
      env != nullptr && std::string_view(env) == "scalar") {
    return &scalar_kernels();
  }
  if (const KernelTable* t = avx2_kernels(); t != nullptr && cpu_has_avx2()) {
    return t;
  }
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& slot() noexcept {
  static std::atomic<const KernelTable*> current{choose()};
  return current;
}

}  // namespace

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& active() noexcept {
  return *slot().load(std::memory_order_acquire);
}

void set_active(const KernelTable& table) noexcept {
  slot().store(&table, std::memory_order_release);
}

}  // namespace quiver::simd
