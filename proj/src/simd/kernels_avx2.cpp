// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>
#include <cmath>

#include "fairenc/simd/kernels.hpp"

namespace fairenc::simd {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // Multiply then add (no FMA) so the result matches the scalar loop bit-for-bit.
    __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double weighted_abs_diff_avx2(const double* u, const double* v, const double* w, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(u + i), _mm256_loadu_pd(v + i));
    d = _mm256_andnot_pd(sign, d);
    acc = _mm256_fmadd_pd(d, _mm256_loadu_pd(w + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(u[i] - v[i]) * w[i];
  return s;
}

ConfusionCounts confusion_avx2(const double* scores, const std::uint8_t* labels, std::size_t n,
                               double threshold) {
  const __m256d t = _mm256_set1_pd(threshold);
  std::int64_t pred_pos = 0, true_pos = 0, pos = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_loadu_pd(scores + i);
    const unsigned pred = static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(s, t, _CMP_GE_OQ)));
    const unsigned lab = (labels[i] != 0) | ((labels[i + 1] != 0) << 1) |
                         ((labels[i + 2] != 0) << 2) | ((labels[i + 3] != 0) << 3);
    pred_pos += std::popcount(pred);
    pos += std::popcount(lab);
    true_pos += std::popcount(pred & lab);
  }
  ConfusionCounts c;
  c.tp = true_pos;
  c.fp = pred_pos - true_pos;
  c.fn = pos - true_pos;
  c.tn = static_cast<std::int64_t>(i) - pred_pos - c.fn;
  for (; i < n; ++i) {
    const bool p = scores[i] >= threshold;
    const bool l = labels[i] != 0;
    if (p && l) ++c.tp;
    else if (p) ++c.fp;
    else if (l) ++c.fn;
    else ++c.tn;
  }
  return c;
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{Isa::kAvx2, dot_avx2, axpy_avx2, weighted_abs_diff_avx2,
                                 confusion_avx2};
  return table;
}

}  // namespace fairenc::simd
