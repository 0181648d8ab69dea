#include <cmath>

#include "fairenc/error.hpp"
#include "fairenc/models.hpp"

namespace fairenc::gbdt {

// Stagewise log-loss boosting: each round fits a squared-error tree to the
// residuals y - p and sets every leaf to a single Newton step
// sum(y - p) / sum(p (1 - p)), shrunk by the learning rate.
GbdtParams fit(const EncodedMatrix& x, std::span<const std::uint8_t> y, const GbdtConfig& config) {
  const auto n = x.rows();
  if (n != y.size()) throw Error(ErrorKind::kWidthMismatch, "rows and labels differ");
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "empty training matrix");

  std::int64_t pos = 0;
  for (auto v : y) pos += v;
  const double base_rate = static_cast<double>(pos) / static_cast<double>(n);
  if (pos == 0 || pos == static_cast<std::int64_t>(n)) {
    throw Error(ErrorKind::kInvalidArgument, "gbdt needs both classes");
  }

  GbdtParams params;
  params.base_score = std::log(base_rate / (1.0 - base_rate));
  std::vector<double> raw(n, params.base_score);
  std::vector<double> residual(n);
  std::vector<double> hessian(n);

  tree::Presorted sorted(x);
  for (int t = 0; t < config.n_trees; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(raw[i]);
      residual[i] = static_cast<double>(y[i]) - p;
      hessian[i] = p * (1.0 - p);
    }
    auto grown = tree::grow(sorted, residual, tree::Criterion::kSquaredError, config.max_depth,
                            config.min_leaf);
    auto& nodes = grown.tree.nodes;
    std::vector<double> num(nodes.size(), 0.0), den(nodes.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(grown.leaf_of_row[i]);
      num[k] += residual[i];
      den[k] += hessian[i];
    }
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (!nodes[k].is_leaf()) continue;
      nodes[k].value = den[k] > 1e-12 ? config.learning_rate * num[k] / den[k] : 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
      raw[i] += nodes[static_cast<std::size_t>(grown.leaf_of_row[i])].value;
    }
    params.trees.push_back(std::move(grown.tree));
  }
  return params;
}

std::vector<double> predict(const GbdtParams& params, const EncodedMatrix& x) {
  std::vector<double> out(x.rows(), params.base_score);
  for (const auto& tree : params.trees) {
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] += tree.predict(x, i);
  }
  for (double& v : out) v = sigmoid(v);
  return out;
}

}  // namespace fairenc::gbdt
