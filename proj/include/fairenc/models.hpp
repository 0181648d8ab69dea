#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "fairenc/encoders.hpp"

namespace fairenc {

enum class ModelKind { kLogistic, kTree, kGbdt };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view s);

struct LogisticConfig {
  double learning_rate = 0.1;
  int epochs = 500;
  double l2 = 1e-4;
};

struct TreeConfig {
  int max_depth = 6;
  int min_leaf = 20;
};

struct GbdtConfig {
  int n_trees = 100;
  int max_depth = 3;
  double learning_rate = 0.1;
  int min_leaf = 20;
};

struct TrainConfig {
  LogisticConfig logistic;
  TreeConfig tree;
  GbdtConfig gbdt;
};

struct TreeNode {
  int feature = -1;  // -1 for a leaf
  double threshold = 0.0;  // rows with x <= threshold go left
  int left = -1;
  int right = -1;
  double value = 0.0;
  std::int64_t n = 0;
  std::int64_t n_pos = 0;

  bool is_leaf() const noexcept { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  const TreeNode& leaf_for(const EncodedMatrix& x, std::size_t row) const;
  double predict(const EncodedMatrix& x, std::size_t row) const { return leaf_for(x, row).value; }
  std::size_t num_leaves() const;
};

struct LogisticParams {
  // Model is sigmoid(bias + sum_j weights[j] * (x_j - center[j]) / scale[j]).
  std::vector<double> center;
  std::vector<double> scale;
  std::vector<double> weights;
  double bias = 0.0;
  // Objective value at the start of each epoch, then once after the last.
  std::vector<double> loss_history;
};

struct GbdtParams {
  double base_score = 0.0;  // log-odds of the training base rate
  std::vector<Tree> trees;  // leaf values already include the learning rate
};

struct TrainedModel {
  ModelKind kind = ModelKind::kLogistic;
  std::size_t width = 0;
  TrainConfig config;
  std::uint64_t seed = 0;
  // Set when training labels were single-class; every row scores this.
  std::optional<double> constant_score;
  std::variant<LogisticParams, Tree, GbdtParams> params;
};

// Throws kWidthMismatch when x.rows() != y.size(), kInvalidArgument on
// empty input or non-positive config values.
TrainedModel train(ModelKind kind, const EncodedMatrix& x, std::span<const std::uint8_t> y,
                   const TrainConfig& config = {}, std::uint64_t seed = 0);

// Throws kWidthMismatch when x.cols() differs from the training width.
std::vector<double> score(const TrainedModel& model, const EncodedMatrix& x);

double sigmoid(double z);

namespace logistic {

// Mean log-loss plus (l2/2)*|w|^2 on the matrix as given (no standardizing).
double objective(const EncodedMatrix& x, std::span<const std::uint8_t> y,
                 std::span<const double> w, double b, double l2);

// Analytic gradient of objective(); grad_w has x.cols() entries.
void gradient(const EncodedMatrix& x, std::span<const std::uint8_t> y, std::span<const double> w,
              double b, double l2, std::span<double> grad_w, double& grad_b);

LogisticParams fit(const EncodedMatrix& x, std::span<const std::uint8_t> y,
                   const LogisticConfig& config);
std::vector<double> predict(const LogisticParams& params, const EncodedMatrix& x);

}  // namespace logistic

namespace tree {

enum class Criterion { kGini, kSquaredError };

// Feature orderings reused across trees grown on the same matrix.
class Presorted {
 public:
  explicit Presorted(const EncodedMatrix& x);
  const EncodedMatrix& matrix() const noexcept { return *x_; }
  std::span<const std::uint32_t> order(std::size_t feature) const;

 private:
  const EncodedMatrix* x_;
  std::vector<std::uint32_t> order_;
};

struct GrowResult {
  Tree tree;  // leaf values unset
  std::vector<int> leaf_of_row;
};

// Greedy level-wise growth. Candidate thresholds are midpoints between
// consecutive distinct values; equal scores keep the lowest feature, then
// the lowest threshold.
GrowResult grow(const Presorted& sorted, std::span<const double> target, Criterion criterion,
                int max_depth, int min_leaf);

// CART classifier: Gini splits, leaves store the positive fraction.
Tree fit_cart(const EncodedMatrix& x, std::span<const std::uint8_t> y, const TreeConfig& config);

}  // namespace tree

namespace gbdt {

GbdtParams fit(const EncodedMatrix& x, std::span<const std::uint8_t> y, const GbdtConfig& config);
std::vector<double> predict(const GbdtParams& params, const EncodedMatrix& x);

}  // namespace gbdt

}  // namespace fairenc
