#include <cmath>

#include "fairenc/error.hpp"
#include "fairenc/models.hpp"
#include "fairenc/simd/kernels.hpp"

namespace fairenc {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace logistic {
namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

void linear_scores(const EncodedMatrix& x, std::span<const double> w, double b,
                   std::vector<double>& z) {
  z.assign(x.rows(), b);
  for (std::size_t j = 0; j < x.cols(); ++j) {
    if (w[j] != 0.0) simd::axpy(w[j], x.column(j), z);
  }
}

// Returns the objective; fills the gradient when grad_w is non-empty.
double evaluate(const EncodedMatrix& x, std::span<const std::uint8_t> y, std::span<const double> w,
                double b, double l2, std::span<double> grad_w, double* grad_b,
                std::vector<double>& z) {
  const auto n = x.rows();
  const double inv_n = 1.0 / static_cast<double>(n);
  linear_scores(x, w, b, z);

  double loss = 0.0;
  double residual_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double zi = z[i];
    loss += softplus(zi) - (y[i] ? zi : 0.0);
    // z is reused to hold the residual sigmoid(z) - y.
    z[i] = sigmoid(zi) - static_cast<double>(y[i]);
    residual_sum += z[i];
  }
  double penalty = 0.0;
  for (double wj : w) penalty += wj * wj;
  loss = loss * inv_n + 0.5 * l2 * penalty;

  if (!grad_w.empty()) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      grad_w[j] = simd::dot(x.column(j), z) * inv_n + l2 * w[j];
    }
    *grad_b = residual_sum * inv_n;
  }
  return loss;
}

void check_shapes(const EncodedMatrix& x, std::span<const std::uint8_t> y, std::size_t w_size) {
  if (x.rows() != y.size()) throw Error(ErrorKind::kWidthMismatch, "rows and labels differ");
  if (x.cols() != w_size) throw Error(ErrorKind::kWidthMismatch, "weights and columns differ");
  if (x.rows() == 0) throw Error(ErrorKind::kInvalidArgument, "empty training matrix");
}

}  // namespace

double objective(const EncodedMatrix& x, std::span<const std::uint8_t> y,
                 std::span<const double> w, double b, double l2) {
  check_shapes(x, y, w.size());
  std::vector<double> z;
  return evaluate(x, y, w, b, l2, {}, nullptr, z);
}

void gradient(const EncodedMatrix& x, std::span<const std::uint8_t> y, std::span<const double> w,
              double b, double l2, std::span<double> grad_w, double& grad_b) {
  check_shapes(x, y, w.size());
  if (grad_w.size() != w.size()) throw Error(ErrorKind::kWidthMismatch, "gradient size");
  std::vector<double> z;
  evaluate(x, y, w, b, l2, grad_w, &grad_b, z);
}

LogisticParams fit(const EncodedMatrix& x, std::span<const std::uint8_t> y,
                   const LogisticConfig& config) {
  check_shapes(x, y, x.cols());
  const auto n = static_cast<double>(x.rows());
  const auto d = x.cols();

  // Gradient descent runs on z-scored columns; constant columns keep a
  // zero weight.
  LogisticParams params;
  params.center.resize(d);
  params.scale.resize(d);
  EncodedMatrix standardized(x.rows());
  std::vector<double> col(x.rows());
  for (std::size_t j = 0; j < d; ++j) {
    const auto src = x.column(j);
    double mean = 0.0;
    for (double v : src) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : src) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / n);
    params.center[j] = mean;
    params.scale[j] = sd > 0 ? sd : 1.0;
    for (std::size_t i = 0; i < src.size(); ++i) col[i] = (src[i] - mean) / params.scale[j];
    standardized.append_column(x.column_names()[j], x.provenance()[j], col);
  }

  params.weights.assign(d, 0.0);
  params.bias = 0.0;
  std::vector<double> grad(d);
  double grad_b = 0.0;
  std::vector<double> scratch;
  params.loss_history.reserve(static_cast<std::size_t>(config.epochs) + 1);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    params.loss_history.push_back(evaluate(standardized, y, params.weights, params.bias, config.l2,
                                           grad, &grad_b, scratch));
    for (std::size_t j = 0; j < d; ++j) params.weights[j] -= config.learning_rate * grad[j];
    params.bias -= config.learning_rate * grad_b;
  }
  params.loss_history.push_back(
      evaluate(standardized, y, params.weights, params.bias, config.l2, {}, nullptr, scratch));
  return params;
}

std::vector<double> predict(const LogisticParams& params, const EncodedMatrix& x) {
  // Fold the standardization into raw-scale coefficients.
  double bias = params.bias;
  std::vector<double> w(params.weights.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = params.weights[j] / params.scale[j];
    bias -= w[j] * params.center[j];
  }
  std::vector<double> z;
  linear_scores(x, w, bias, z);
  for (double& v : z) v = sigmoid(v);
  return z;
}

}  // namespace logistic
}  // namespace fairenc
