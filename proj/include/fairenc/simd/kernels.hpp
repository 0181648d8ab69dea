#pragma once

// Data-parallel inner loops shared by model training and the metric suite.
//
// Every kernel has a scalar reference implementation plus optional AVX2
// (x86-64) and NEON (aarch64) variants. The variant is chosen once at first
// use from the running CPU; FAIRENC_ISA=scalar|avx2|neon in the environment
// forces a choice (falling back to scalar if unsupported). Floating-point
// reductions in vector variants sum in a different order than the scalar
// loop, so results agree to rounding, not bit-for-bit. Integer kernels
// agree exactly.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace fairenc::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view to_string(Isa isa);

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
};

struct KernelTable {
  Isa isa;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // sum_i |u[i] - v[i]| * w[i]
  double (*weighted_abs_diff)(const double* u, const double* v, const double* w, std::size_t n);
  // score >= threshold predicts positive; labels are 0/1 bytes.
  ConfusionCounts (*confusion)(const double* scores, const std::uint8_t* labels, std::size_t n,
                               double threshold);
};

const KernelTable& scalar_kernels();
// nullptr when the variant is not compiled in or the CPU lacks support.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// The table selected for this process.
const KernelTable& active();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double weighted_abs_diff(std::span<const double> u, std::span<const double> v,
                                std::span<const double> w) {
  return active().weighted_abs_diff(u.data(), v.data(), w.data(), u.size());
}
inline ConfusionCounts confusion(std::span<const double> scores, std::span<const std::uint8_t> labels,
                                 double threshold) {
  return active().confusion(scores.data(), labels.data(), scores.size(), threshold);
}

}  // namespace fairenc::simd
