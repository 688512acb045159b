#include "gspec/simd/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace gspec::simd {

#ifdef GSPEC_HAVE_AVX2
const KernelTable& avx2_table_unchecked();
#endif

const KernelTable* avx2_table() {
#ifdef GSPEC_HAVE_AVX2
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  if (supported) return &avx2_table_unchecked();
#endif
  return nullptr;
}

const KernelTable& active() {
  static const KernelTable& table = []() -> const KernelTable& {
    const char* forced = std::getenv("GSPEC_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return table;
}

}  // namespace gspec::simd
