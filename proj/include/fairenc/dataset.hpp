#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fairenc {

// Separator used when two categorical columns are crossed.
inline constexpr char kConcatSeparator = '|';

struct Column {
  std::string name;
  std::vector<std::string> values;
};

// Column-major table of categorical columns plus a binary target.
// Immutable once built; all transformations return new datasets.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<Column> columns, std::vector<std::uint8_t> target,
          std::string target_name = "target");

  std::size_t size() const noexcept { return target_.size(); }
  std::size_t num_columns() const noexcept { return columns_.size(); }

  const std::vector<Column>& columns() const noexcept { return columns_; }
  const std::vector<std::uint8_t>& target() const noexcept { return target_; }
  const std::string& target_name() const noexcept { return target_name_; }

  bool has_column(std::string_view name) const noexcept;
  // Throws Error(kMissingColumn).
  const Column& column(std::string_view name) const;
  std::vector<std::string> column_names() const;

  // Rows in the given order; indices must be valid.
  Dataset select_rows(const std::vector<std::size_t>& rows) const;
  Dataset with_column(Column column) const;
  Dataset without_columns(const std::vector<std::string>& names) const;

 private:
  std::vector<Column> columns_;
  std::vector<std::uint8_t> target_;
  std::string target_name_ = "target";
};

struct CategoryStats {
  std::string label;
  std::int64_t n = 0;
  std::int64_t n_pos = 0;
  double p_hat = 0.0;
};

// Sufficient statistics of one categorical column against the target.
// Categories are sorted by label.
struct GroupStats {
  std::vector<CategoryStats> categories;
  std::int64_t n = 0;
  std::int64_t n_pos = 0;
  double prior = 0.0;

  const CategoryStats* find(std::string_view label) const noexcept;
};

struct SplitPair {
  Dataset train;
  Dataset test;
  std::uint64_t seed = 0;
};

struct CsvOptions {
  std::string target_column = "target";
  std::string positive_label = "1";
};

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options);
Dataset parse_csv(std::string_view text, const CsvOptions& options);

// Writes the target as positive_label / negative_label.
void write_csv(const Dataset& d, const std::filesystem::path& path,
               std::string_view positive_label = "1", std::string_view negative_label = "0");
std::string to_csv(const Dataset& d, std::string_view positive_label = "1",
                   std::string_view negative_label = "0");

// Per-category proportional split. Each category contributes
// round(fraction * n_i) rows to train, with singleton categories always
// going to train. Which rows go where is decided by a seeded shuffle inside
// the category; relative row order is preserved in both halves.
SplitPair stratified_split(const Dataset& d, std::string_view column, double fraction,
                           std::uint64_t seed);

GroupStats group_stats(const Dataset& d, std::string_view column);

// Adds column new_name whose values are "a|b". Throws kNameCollision if
// new_name is already present.
Dataset concat_columns(const Dataset& d, std::string_view a, std::string_view b,
                       std::string_view new_name);

}  // namespace fairenc
