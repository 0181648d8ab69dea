#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fairenc/dataset.hpp"

namespace fairenc {

// Column-major numeric design matrix.
class EncodedMatrix {
 public:
  EncodedMatrix() = default;
  explicit EncodedMatrix(std::size_t rows) : rows_(rows) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return names_.size(); }

  std::span<const double> column(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }
  double at(std::size_t row, std::size_t col) const { return data_[col * rows_ + row]; }

  const std::vector<std::string>& column_names() const noexcept { return names_; }
  // Source dataset column each encoded column came from.
  const std::vector<std::string>& provenance() const noexcept { return provenance_; }

  void append_column(std::string name, std::string source, std::span<const double> values);
  // Appends all columns of other (same row count).
  void append(const EncodedMatrix& other);

  bool operator==(const EncodedMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::vector<double> data_;
  std::vector<std::string> names_;
  std::vector<std::string> provenance_;
};

// m-probability weight n_i / (n_i + m); 0 when n_i == 0, 1 when m == 0.
double smoothing_weight(double n_i, double m);

// lambda * n_pos/n + (1 - lambda) * prior, computed so that m == 0 yields
// n_pos/n exactly.
double smoothed_estimate(std::int64_t n_i, std::int64_t n_pos, double prior, double m);

enum class NoiseMode {
  // One Gaussian draw per category at fit time, baked into the mapping.
  kPerCategory,
  // One draw per training row when the training matrix is built; the
  // mapping itself (and therefore every transform) stays noise-free.
  kPerRow,
};

std::string_view to_string(NoiseMode mode);
NoiseMode parse_noise_mode(std::string_view s);

struct FittedTargetEncoder {
  std::string column;
  std::map<std::string, double, std::less<>> mapping;
  double prior = 0.0;
  double m = 0.0;
  double noise_sigma = 0.0;
  NoiseMode noise_mode = NoiseMode::kPerCategory;
  std::uint64_t seed = 0;

  // Unseen categories map to the prior.
  double encode(std::string_view category) const;

  bool operator==(const FittedTargetEncoder&) const = default;
};

struct FittedOneHotEncoder {
  std::string column;
  std::vector<std::string> categories;  // sorted; index = output column

  std::size_t width() const noexcept { return categories.size(); }
  // Index of category, or width() when unseen.
  std::size_t index_of(std::string_view category) const;

  bool operator==(const FittedOneHotEncoder&) const = default;
};

struct TargetEncoderParams {
  double m = 0.0;
  double noise_sigma = 0.0;
  NoiseMode noise_mode = NoiseMode::kPerCategory;
  std::uint64_t seed = 0;
};

FittedTargetEncoder fit_target_encoder(const Dataset& train, std::string_view column,
                                       const TargetEncoderParams& params);
FittedOneHotEncoder fit_one_hot(const Dataset& train, std::string_view column);

// Deterministic. Target encoding yields one column; one-hot yields width()
// columns with unseen categories mapped to an all-zero row.
EncodedMatrix transform(const FittedTargetEncoder& enc, const Dataset& d);
EncodedMatrix transform(const FittedOneHotEncoder& enc, const Dataset& d);

// The matrix the model is trained on. Identical to transform() except in
// NoiseMode::kPerRow, where each row receives an independent seeded
// N(0, noise_sigma^2) draw.
EncodedMatrix transform_training(const FittedTargetEncoder& enc, const Dataset& train);

using FittedEncoder = std::variant<FittedTargetEncoder, FittedOneHotEncoder>;

// Several encoders applied side by side to build a model's design matrix.
struct FeatureSet {
  std::vector<FittedEncoder> encoders;

  EncodedMatrix transform(const Dataset& d) const;
  EncodedMatrix transform_training(const Dataset& train) const;
};

// Plain-text audit format, one "key<TAB>value" per line, categories as
// "category<TAB>label<TAB>value". Values round-trip exactly.
std::string serialize(const FittedTargetEncoder& enc);
FittedTargetEncoder deserialize_target_encoder(std::string_view text);

}  // namespace fairenc
