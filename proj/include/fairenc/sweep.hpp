#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fairenc/dataset.hpp"
#include "fairenc/encoders.hpp"
#include "fairenc/models.hpp"
#include "fairenc/synthgen.hpp"

namespace fairenc {

enum class EncoderKind {
  kOneHot,        // "onehot", reg_param is always 0
  kTargetSmooth,  // "target-m", reg_param is m
  kTargetNoise,   // "target-sigma", reg_param is the noise standard deviation
};

std::string_view to_string(EncoderKind kind);
EncoderKind parse_encoder_kind(std::string_view s);

inline const std::vector<double> kDefaultMGrid = {0, 1, 10, 100, 1000, 10000};
inline const std::vector<double> kDefaultSigmaGrid = {0, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0};

struct CsvSource {
  std::filesystem::path path;
  CsvOptions options;
};

struct SweepConfig {
  std::variant<CsvSource, synth::ScenarioKind> source = synth::ScenarioKind::kIrreducible;
  // Column under test. When concat is set, the two columns are crossed into
  // this column and dropped as standalone features.
  std::string protected_column = synth::kEthnicColumn;
  std::optional<std::pair<std::string, std::string>> concat;
  std::string reference_group = synth::kCaucasian;
  // Defaults to the most frequent non-reference category.
  std::optional<std::string> protected_group;

  std::vector<EncoderKind> encoders = {EncoderKind::kOneHot, EncoderKind::kTargetSmooth,
                                       EncoderKind::kTargetNoise};
  std::vector<double> m_grid = kDefaultMGrid;
  std::vector<double> sigma_grid = kDefaultSigmaGrid;
  NoiseMode noise_mode = NoiseMode::kPerRow;
  std::vector<ModelKind> models = {ModelKind::kLogistic, ModelKind::kTree, ModelKind::kGbdt};
  std::vector<std::uint64_t> seeds = default_seeds();
  double split_fraction = 0.5;
  double threshold = 0.5;
  TrainConfig train;
  unsigned threads = 0;  // 0 = hardware concurrency

  static std::vector<std::uint64_t> default_seeds();
  // Throws kInvalidArgument.
  void validate() const;
};

// Preset column/group choices for a built-in scenario.
SweepConfig scenario_config(synth::ScenarioKind kind);

struct TradeoffRecord {
  std::string encoder;
  double reg_param = 0.0;
  std::string model;
  std::uint64_t seed = 0;
  double auc_global = 0.5;
  double auc_protected = 0.5;
  double auc_reference = 0.5;
  double eof = 0.0;  // TPR_reference - TPR_protected; NaN when undefined
  double sdp = 0.0;
  double aao = 0.0;
  double l_eof = 0.0;
  double l_sdp = 0.0;
  double l_aao = 0.0;
  std::vector<std::string> warnings;
};

// Bitwise comparison; NaN fields compare equal to NaN.
bool same_record(const TradeoffRecord& a, const TradeoffRecord& b);

Dataset load_source(const SweepConfig& config, std::uint64_t seed);

// Sorted by (encoder, reg_param, model, seed). Deterministic for a fixed
// config regardless of thread count.
std::vector<TradeoffRecord> run_sweep(const SweepConfig& config);

// Sweep over an already materialized dataset (same for every seed).
std::vector<TradeoffRecord> run_sweep(const SweepConfig& config, const Dataset& data);

enum class ReportFormat { kCsv, kMarkdown };
ReportFormat parse_report_format(std::string_view s);

inline constexpr const char* kRecordHeader =
    "encoder,reg_param,model,seed,auc_global,auc_protected,auc_reference,eof,sdp,aao,L_eof,L_sdp,"
    "L_aao,warnings";

std::string records_csv(const std::vector<TradeoffRecord>& records);
std::string records_markdown(const std::vector<TradeoffRecord>& records);
std::vector<TradeoffRecord> parse_records_csv(std::string_view text);

// Throws kInvalidArgument on empty records, kIo when the path is not
// writable.
void emit_report(const std::vector<TradeoffRecord>& records, const std::filesystem::path& path,
                 ReportFormat format);

}  // namespace fairenc
