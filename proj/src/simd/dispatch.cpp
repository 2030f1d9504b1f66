#include <cstdlib>
#include <cstring>

#include "ep2d/simd.hpp"

namespace ep2d::simd {

#if defined(EP2D_HAVE_AVX2)
const KernelTable* avx2_kernels_impl();
#endif

const KernelTable* avx2_kernels() {
#if defined(EP2D_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return avx2_kernels_impl();
#endif
  return nullptr;
}

const KernelTable& kernels() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("EP2D_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_kernels();
    const KernelTable* fast = avx2_kernels();
    return fast ? fast : &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace ep2d::simd
