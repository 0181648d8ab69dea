#include "fairenc/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "fairenc/error.hpp"

namespace fairenc {

Dataset::Dataset(std::vector<Column> columns, std::vector<std::uint8_t> target,
                 std::string target_name)
    : columns_(std::move(columns)), target_(std::move(target)), target_name_(std::move(target_name)) {
  std::set<std::string_view> seen;
  for (const auto& c : columns_) {
    if (c.values.size() != target_.size()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "column '" + c.name + "' has " + std::to_string(c.values.size()) +
                      " values, target has " + std::to_string(target_.size()));
    }
    if (!seen.insert(c.name).second || c.name == target_name_) {
      throw Error(ErrorKind::kNameCollision, "duplicate column '" + c.name + "'");
    }
  }
  for (auto y : target_) {
    if (y > 1) throw Error(ErrorKind::kNonBinaryTarget, "target values must be 0 or 1");
  }
}

bool Dataset::has_column(std::string_view name) const noexcept {
  return std::any_of(columns_.begin(), columns_.end(),
                     [&](const Column& c) { return c.name == name; });
}

const Column& Dataset::column(std::string_view name) const {
  for (const auto& c : columns_) {
    if (c.name == name) return c;
  }
  throw Error(ErrorKind::kMissingColumn, "no column named '" + std::string(name) + "'");
}

std::vector<std::string> Dataset::column_names() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.name);
  return out;
}

Dataset Dataset::select_rows(const std::vector<std::size_t>& rows) const {
  std::vector<Column> cols;
  cols.reserve(columns_.size());
  for (const auto& c : columns_) {
    Column out{c.name, {}};
    out.values.reserve(rows.size());
    for (auto r : rows) out.values.push_back(c.values.at(r));
    cols.push_back(std::move(out));
  }
  std::vector<std::uint8_t> y;
  y.reserve(rows.size());
  for (auto r : rows) y.push_back(target_.at(r));
  return Dataset(std::move(cols), std::move(y), target_name_);
}

Dataset Dataset::with_column(Column column) const {
  if (has_column(column.name) || column.name == target_name_) {
    throw Error(ErrorKind::kNameCollision, "column '" + column.name + "' already exists");
  }
  auto cols = columns_;
  cols.push_back(std::move(column));
  return Dataset(std::move(cols), target_, target_name_);
}

Dataset Dataset::without_columns(const std::vector<std::string>& names) const {
  std::vector<Column> cols;
  for (const auto& c : columns_) {
    if (std::find(names.begin(), names.end(), c.name) == names.end()) cols.push_back(c);
  }
  return Dataset(std::move(cols), target_, target_name_);
}

const CategoryStats* GroupStats::find(std::string_view label) const noexcept {
  auto it = std::lower_bound(categories.begin(), categories.end(), label,
                             [](const CategoryStats& c, std::string_view l) { return c.label < l; });
  if (it == categories.end() || it->label != label) return nullptr;
  return &*it;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

void check_field(std::string_view field, std::size_t line_no) {
  if (field.find('"') != std::string_view::npos) {
    throw Error(ErrorKind::kMalformedCsv,
                "line " + std::to_string(line_no) + ": quoted fields are not supported");
  }
  if (field.find(kConcatSeparator) != std::string_view::npos) {
    throw Error(ErrorKind::kMalformedCsv, "line " + std::to_string(line_no) +
                                              ": category labels may not contain '|'");
  }
}

}  // namespace

Dataset parse_csv(std::string_view text, const CsvOptions& options) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw Error(ErrorKind::kEmptyFile, "no header row");

  auto header = split_fields(lines.front());
  for (auto h : header) check_field(h, 1);
  auto target_it = std::find(header.begin(), header.end(), options.target_column);
  if (target_it == header.end()) {
    throw Error(ErrorKind::kMissingColumn,
                "target column '" + options.target_column + "' not in header");
  }
  const auto target_idx = static_cast<std::size_t>(target_it - header.begin());

  std::vector<Column> cols;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j != target_idx) cols.push_back(Column{std::string(header[j]), {}});
  }
  std::vector<std::string> raw_target;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_fields(lines[i]);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::kMalformedCsv, "line " + std::to_string(i + 1) + ": expected " +
                                                std::to_string(header.size()) + " fields, got " +
                                                std::to_string(fields.size()));
    }
    std::size_t c = 0;
    for (std::size_t j = 0; j < fields.size(); ++j) {
      check_field(fields[j], i + 1);
      if (j == target_idx) {
        raw_target.emplace_back(fields[j]);
      } else {
        cols[c++].values.emplace_back(fields[j]);
      }
    }
  }
  if (raw_target.empty()) throw Error(ErrorKind::kEmptyFile, "no data rows");

  std::set<std::string> distinct(raw_target.begin(), raw_target.end());
  if (distinct.size() > 2) {
    throw Error(ErrorKind::kNonBinaryTarget, "target column '" + options.target_column + "' has " +
                                                 std::to_string(distinct.size()) +
                                                 " distinct values");
  }
  if (distinct.size() == 2 && !distinct.contains(options.positive_label)) {
    throw Error(ErrorKind::kNonBinaryTarget,
                "positive label '" + options.positive_label + "' is not one of the target values");
  }

  std::vector<std::uint8_t> y;
  y.reserve(raw_target.size());
  for (const auto& v : raw_target) y.push_back(v == options.positive_label ? 1 : 0);
  return Dataset(std::move(cols), std::move(y), options.target_column);
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str(), options);
}

std::string to_csv(const Dataset& d, std::string_view positive_label,
                   std::string_view negative_label) {
  std::string out;
  for (const auto& c : d.columns()) {
    out += c.name;
    out += ',';
  }
  out += d.target_name();
  out += '\n';
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (const auto& c : d.columns()) {
      out += c.values[i];
      out += ',';
    }
    out += d.target()[i] ? positive_label : negative_label;
    out += '\n';
  }
  return out;
}

void write_csv(const Dataset& d, const std::filesystem::path& path,
               std::string_view positive_label, std::string_view negative_label) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  out << to_csv(d, positive_label, negative_label);
  if (!out) throw Error(ErrorKind::kIo, "write failed for '" + path.string() + "'");
}

SplitPair stratified_split(const Dataset& d, std::string_view column, double fraction,
                           std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "split fraction must lie in (0,1)");
  }
  const auto& values = d.column(column).values;

  std::map<std::string_view, std::vector<std::size_t>> by_category;
  for (std::size_t i = 0; i < values.size(); ++i) by_category[values[i]].push_back(i);

  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> in_train(values.size(), 0);
  for (auto& [label, rows] : by_category) {
    const auto n_i = rows.size();
    auto n_train = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n_i)));
    if (n_i == 1) n_train = 1;
    std::shuffle(rows.begin(), rows.end(), rng);
    for (std::size_t k = 0; k < n_train; ++k) in_train[rows[k]] = 1;
  }

  std::vector<std::size_t> train_rows, test_rows;
  for (std::size_t i = 0; i < values.size(); ++i) {
    (in_train[i] ? train_rows : test_rows).push_back(i);
  }
  return SplitPair{d.select_rows(train_rows), d.select_rows(test_rows), seed};
}

GroupStats group_stats(const Dataset& d, std::string_view column) {
  const auto& values = d.column(column).values;
  const auto& y = d.target();

  std::map<std::string_view, std::pair<std::int64_t, std::int64_t>> counts;
  GroupStats gs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto& c = counts[values[i]];
    ++c.first;
    c.second += y[i];
    gs.n_pos += y[i];
  }
  gs.n = static_cast<std::int64_t>(values.size());
  gs.prior = gs.n > 0 ? static_cast<double>(gs.n_pos) / static_cast<double>(gs.n) : 0.0;
  gs.categories.reserve(counts.size());
  for (const auto& [label, c] : counts) {
    gs.categories.push_back(CategoryStats{std::string(label), c.first, c.second,
                                          static_cast<double>(c.second) / static_cast<double>(c.first)});
  }
  return gs;
}

Dataset concat_columns(const Dataset& d, std::string_view a, std::string_view b,
                       std::string_view new_name) {
  if (d.has_column(new_name) || d.target_name() == new_name) {
    throw Error(ErrorKind::kNameCollision, "column '" + std::string(new_name) + "' already exists");
  }
  const auto& va = d.column(a).values;
  const auto& vb = d.column(b).values;
  Column out{std::string(new_name), {}};
  out.values.reserve(va.size());
  for (std::size_t i = 0; i < va.size(); ++i) {
    out.values.push_back(va[i] + kConcatSeparator + vb[i]);
  }
  return d.with_column(std::move(out));
}

}  // namespace fairenc
