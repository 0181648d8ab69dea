#include "fairenc/simd/kernels.hpp"

#include <cmath>

namespace fairenc::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double weighted_abs_diff_scalar(const double* u, const double* v, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(u[i] - v[i]) * w[i];
  return s;
}

ConfusionCounts confusion_scalar(const double* scores, const std::uint8_t* labels, std::size_t n,
                                 double threshold) {
  ConfusionCounts c;
  for (std::size_t i = 0; i < n; ++i) {
    const bool pred = scores[i] >= threshold;
    const bool pos = labels[i] != 0;
    if (pred && pos) ++c.tp;
    else if (pred) ++c.fp;
    else if (pos) ++c.fn;
    else ++c.tn;
  }
  return c;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::kScalar, dot_scalar, axpy_scalar, weighted_abs_diff_scalar,
                                 confusion_scalar};
  return table;
}

}  // namespace fairenc::simd
