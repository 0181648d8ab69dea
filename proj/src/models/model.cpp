#include "fairenc/error.hpp"
#include "fairenc/models.hpp"

namespace fairenc {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLogistic: return "logistic";
    case ModelKind::kTree: return "tree";
    case ModelKind::kGbdt: return "gbdt";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view s) {
  if (s == "logistic") return ModelKind::kLogistic;
  if (s == "tree") return ModelKind::kTree;
  if (s == "gbdt") return ModelKind::kGbdt;
  throw Error(ErrorKind::kInvalidArgument, "unknown model '" + std::string(s) + "'");
}

namespace {

void validate(const TrainConfig& c) {
  const bool ok = c.logistic.learning_rate > 0 && c.logistic.epochs > 0 && c.logistic.l2 >= 0 &&
                  c.tree.max_depth > 0 && c.tree.min_leaf > 0 && c.gbdt.n_trees >= 0 &&
                  c.gbdt.max_depth > 0 && c.gbdt.learning_rate > 0 && c.gbdt.min_leaf > 0;
  if (!ok) throw Error(ErrorKind::kInvalidArgument, "training config values must be positive");
}

}  // namespace

TrainedModel train(ModelKind kind, const EncodedMatrix& x, std::span<const std::uint8_t> y,
                   const TrainConfig& config, std::uint64_t seed) {
  validate(config);
  if (x.rows() != y.size()) {
    throw Error(ErrorKind::kWidthMismatch, "matrix has " + std::to_string(x.rows()) +
                                               " rows, labels " + std::to_string(y.size()));
  }
  if (y.empty()) throw Error(ErrorKind::kInvalidArgument, "empty training set");

  TrainedModel model;
  model.kind = kind;
  model.width = x.cols();
  model.config = config;
  model.seed = seed;

  std::size_t pos = 0;
  for (auto v : y) pos += v;
  if (pos == 0 || pos == y.size()) {
    model.constant_score = pos == 0 ? 0.0 : 1.0;
    return model;
  }

  switch (kind) {
    case ModelKind::kLogistic: model.params = logistic::fit(x, y, config.logistic); break;
    case ModelKind::kTree: model.params = tree::fit_cart(x, y, config.tree); break;
    case ModelKind::kGbdt: model.params = gbdt::fit(x, y, config.gbdt); break;
  }
  return model;
}

std::vector<double> score(const TrainedModel& model, const EncodedMatrix& x) {
  if (x.cols() != model.width) {
    throw Error(ErrorKind::kWidthMismatch, "model expects " + std::to_string(model.width) +
                                               " columns, got " + std::to_string(x.cols()));
  }
  if (model.constant_score) return std::vector<double>(x.rows(), *model.constant_score);
  if (const auto* p = std::get_if<LogisticParams>(&model.params)) return logistic::predict(*p, x);
  if (const auto* p = std::get_if<GbdtParams>(&model.params)) return gbdt::predict(*p, x);
  const auto& tree = std::get<Tree>(model.params);
  std::vector<double> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out[i] = tree.predict(x, i);
  return out;
}

}  // namespace fairenc
