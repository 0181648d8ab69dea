#include <cstdlib>
#include <string>

#include "fairenc/simd/kernels.hpp"

namespace fairenc::simd {

#if defined(FAIRENC_HAVE_AVX2)
const KernelTable& avx2_kernel_table();
#endif
#if defined(FAIRENC_HAVE_NEON)
const KernelTable& neon_kernel_table();
#endif

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

const KernelTable* avx2_kernels() {
#if defined(FAIRENC_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() {
#if defined(FAIRENC_HAVE_NEON)
  // NEON is architecturally mandatory on aarch64.
  return &neon_kernel_table();
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  const char* forced = std::getenv("FAIRENC_ISA");
  const std::string want = forced ? forced : "";
  if (want == "scalar") return scalar_kernels();
  if (want == "avx2") return avx2_kernels() ? *avx2_kernels() : scalar_kernels();
  if (want == "neon") return neon_kernels() ? *neon_kernels() : scalar_kernels();
  if (const auto* t = avx2_kernels()) return *t;
  if (const auto* t = neon_kernels()) return *t;
  return scalar_kernels();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace fairenc::simd
