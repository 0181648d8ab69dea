#include <arm_neon.h>

#include <cmath>

#include "fairenc/simd/kernels.hpp"

namespace fairenc::simd {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double weighted_abs_diff_neon(const double* u, const double* v, const double* w, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vabdq_f64(vld1q_f64(u + i), vld1q_f64(v + i));
    acc = vfmaq_f64(acc, d, vld1q_f64(w + i));
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += std::fabs(u[i] - v[i]) * w[i];
  return s;
}

ConfusionCounts confusion_neon(const double* scores, const std::uint8_t* labels, std::size_t n,
                               double threshold) {
  ConfusionCounts c;
  const float64x2_t t = vdupq_n_f64(threshold);
  uint64x2_t pred_acc = vdupq_n_u64(0), tp_acc = vdupq_n_u64(0), pos_acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t pred = vshrq_n_u64(vcgeq_f64(vld1q_f64(scores + i), t), 63);
    const uint64_t lab_arr[2] = {labels[i] != 0 ? 1u : 0u, labels[i + 1] != 0 ? 1u : 0u};
    const uint64x2_t lab = vld1q_u64(lab_arr);
    pred_acc = vaddq_u64(pred_acc, pred);
    pos_acc = vaddq_u64(pos_acc, lab);
    tp_acc = vaddq_u64(tp_acc, vandq_u64(pred, lab));
  }
  const auto pred_pos = static_cast<std::int64_t>(vaddvq_u64(pred_acc));
  const auto pos = static_cast<std::int64_t>(vaddvq_u64(pos_acc));
  c.tp = static_cast<std::int64_t>(vaddvq_u64(tp_acc));
  c.fp = pred_pos - c.tp;
  c.fn = pos - c.tp;
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

const KernelTable& neon_kernel_table() {
  static const KernelTable table{Isa::kNeon, dot_neon, axpy_neon, weighted_abs_diff_neon,
                                 confusion_neon};
  return table;
}

}  // namespace fairenc::simd
