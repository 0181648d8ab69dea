#include "fairenc/encoders.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "fairenc/error.hpp"
#include "fairenc/numfmt.hpp"

namespace fairenc {

void EncodedMatrix::append_column(std::string name, std::string source,
                                  std::span<const double> values) {
  if (values.size() != rows_) {
    throw Error(ErrorKind::kWidthMismatch, "column '" + name + "' has " +
                                               std::to_string(values.size()) + " rows, expected " +
                                               std::to_string(rows_));
  }
  data_.insert(data_.end(), values.begin(), values.end());
  names_.push_back(std::move(name));
  provenance_.push_back(std::move(source));
}

void EncodedMatrix::append(const EncodedMatrix& other) {
  for (std::size_t j = 0; j < other.cols(); ++j) {
    append_column(other.names_[j], other.provenance_[j], other.column(j));
  }
}

double smoothing_weight(double n_i, double m) {
  if (n_i < 0 || m < 0) throw Error(ErrorKind::kInvalidArgument, "counts and m must be >= 0");
  if (n_i == 0) return 0.0;
  if (m == 0) return 1.0;
  return n_i / (n_i + m);
}

double smoothed_estimate(std::int64_t n_i, std::int64_t n_pos, double prior, double m) {
  if (n_i == 0) return prior;
  const double mean = static_cast<double>(n_pos) / static_cast<double>(n_i);
  if (m == 0) return mean;
  const double lambda = smoothing_weight(static_cast<double>(n_i), m);
  return lambda * mean + (1.0 - lambda) * prior;
}

std::string_view to_string(NoiseMode mode) {
  return mode == NoiseMode::kPerRow ? "per-row" : "per-category";
}

NoiseMode parse_noise_mode(std::string_view s) {
  if (s == "per-row") return NoiseMode::kPerRow;
  if (s == "per-category") return NoiseMode::kPerCategory;
  throw Error(ErrorKind::kInvalidArgument, "unknown noise mode '" + std::string(s) + "'");
}

double FittedTargetEncoder::encode(std::string_view category) const {
  auto it = mapping.find(category);
  return it == mapping.end() ? prior : it->second;
}

std::size_t FittedOneHotEncoder::index_of(std::string_view category) const {
  auto it = std::lower_bound(categories.begin(), categories.end(), category);
  if (it == categories.end() || *it != category) return width();
  return static_cast<std::size_t>(it - categories.begin());
}

FittedTargetEncoder fit_target_encoder(const Dataset& train, std::string_view column,
                                       const TargetEncoderParams& params) {
  if (!(params.m >= 0) || !(params.noise_sigma >= 0)) {
    throw Error(ErrorKind::kInvalidArgument, "m and noise_sigma must be >= 0");
  }
  const auto stats = group_stats(train, column);

  FittedTargetEncoder enc;
  enc.column = std::string(column);
  enc.prior = stats.prior;
  enc.m = params.m;
  enc.noise_sigma = params.noise_sigma;
  enc.noise_mode = params.noise_mode;
  enc.seed = params.seed;

  const bool per_category_noise =
      params.noise_sigma > 0 && params.noise_mode == NoiseMode::kPerCategory;
  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> noise(0.0, params.noise_sigma > 0 ? params.noise_sigma : 1.0);
  for (const auto& c : stats.categories) {
    double v = smoothed_estimate(c.n, c.n_pos, stats.prior, params.m);
    if (per_category_noise) v += noise(rng);
    enc.mapping.emplace(c.label, v);
  }
  return enc;
}

FittedOneHotEncoder fit_one_hot(const Dataset& train, std::string_view column) {
  const auto& values = train.column(column).values;
  FittedOneHotEncoder enc;
  enc.column = std::string(column);
  enc.categories.assign(values.begin(), values.end());
  std::sort(enc.categories.begin(), enc.categories.end());
  enc.categories.erase(std::unique(enc.categories.begin(), enc.categories.end()),
                       enc.categories.end());
  return enc;
}

EncodedMatrix transform(const FittedTargetEncoder& enc, const Dataset& d) {
  const auto& values = d.column(enc.column).values;
  std::vector<double> col(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) col[i] = enc.encode(values[i]);
  EncodedMatrix out(d.size());
  out.append_column(enc.column + ":te", enc.column, col);
  return out;
}

EncodedMatrix transform(const FittedOneHotEncoder& enc, const Dataset& d) {
  const auto& values = d.column(enc.column).values;
  const auto n = values.size();
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = enc.index_of(values[i]);

  EncodedMatrix out(n);
  std::vector<double> col(n);
  for (std::size_t k = 0; k < enc.width(); ++k) {
    for (std::size_t i = 0; i < n; ++i) col[i] = idx[i] == k ? 1.0 : 0.0;
    out.append_column(enc.column + "=" + enc.categories[k], enc.column, col);
  }
  return out;
}

EncodedMatrix transform_training(const FittedTargetEncoder& enc, const Dataset& train) {
  if (enc.noise_mode != NoiseMode::kPerRow || enc.noise_sigma == 0) return transform(enc, train);
  const auto& values = train.column(enc.column).values;
  std::mt19937_64 rng(enc.seed);
  std::normal_distribution<double> noise(0.0, enc.noise_sigma);
  std::vector<double> col(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) col[i] = enc.encode(values[i]) + noise(rng);
  EncodedMatrix out(train.size());
  out.append_column(enc.column + ":te", enc.column, col);
  return out;
}

EncodedMatrix FeatureSet::transform(const Dataset& d) const {
  EncodedMatrix out(d.size());
  for (const auto& e : encoders) {
    std::visit([&](const auto& enc) { out.append(fairenc::transform(enc, d)); }, e);
  }
  return out;
}

EncodedMatrix FeatureSet::transform_training(const Dataset& train) const {
  EncodedMatrix out(train.size());
  for (const auto& e : encoders) {
    if (const auto* te = std::get_if<FittedTargetEncoder>(&e)) {
      out.append(fairenc::transform_training(*te, train));
    } else {
      out.append(fairenc::transform(std::get<FittedOneHotEncoder>(e), train));
    }
  }
  return out;
}

std::string serialize(const FittedTargetEncoder& enc) {
  std::string out = "# fairenc target encoder v1\n";
  out += "column\t" + enc.column + "\n";
  out += "prior\t" + format_double(enc.prior) + "\n";
  out += "m\t" + format_double(enc.m) + "\n";
  out += "noise_sigma\t" + format_double(enc.noise_sigma) + "\n";
  out += "noise_mode\t" + std::string(to_string(enc.noise_mode)) + "\n";
  out += "seed\t" + std::to_string(enc.seed) + "\n";
  for (const auto& [label, value] : enc.mapping) {
    out += "category\t" + label + "\t" + format_double(value) + "\n";
  }
  return out;
}

FittedTargetEncoder deserialize_target_encoder(std::string_view text) {
  FittedTargetEncoder enc;
  std::istringstream in{std::string(text)};
  std::string line;
  bool saw_column = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorKind::kInvalidArgument, "bad encoder line: '" + line + "'");
    }
    const auto key = line.substr(0, tab);
    const auto rest = std::string_view(line).substr(tab + 1);
    if (key == "column") {
      enc.column = std::string(rest);
      saw_column = true;
    } else if (key == "prior") {
      enc.prior = parse_double(rest);
    } else if (key == "m") {
      enc.m = parse_double(rest);
    } else if (key == "noise_sigma") {
      enc.noise_sigma = parse_double(rest);
    } else if (key == "noise_mode") {
      enc.noise_mode = parse_noise_mode(rest);
    } else if (key == "seed") {
      enc.seed = std::stoull(std::string(rest));
    } else if (key == "category") {
      const auto tab2 = rest.rfind('\t');
      if (tab2 == std::string_view::npos) {
        throw Error(ErrorKind::kInvalidArgument, "bad category line: '" + line + "'");
      }
      enc.mapping.emplace(std::string(rest.substr(0, tab2)), parse_double(rest.substr(tab2 + 1)));
    } else {
      throw Error(ErrorKind::kInvalidArgument, "unknown encoder key '" + key + "'");
    }
  }
  if (!saw_column) throw Error(ErrorKind::kInvalidArgument, "encoder text has no column");
  return enc;
}

}  // namespace fairenc
