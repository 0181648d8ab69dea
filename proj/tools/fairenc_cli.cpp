// fairenc: encoding-regularization sweeps and fairness trade-off tables.
//
//   fairenc sweep    --scenario irreducible --encoder target-sigma --models logistic --out t.csv
//   fairenc generate --scenario reducible --seed 3 --out data.csv
//   fairenc encode   --data data.csv --column ethnic --m 100 --out enc.txt
//
// Exit codes: 0 success, 2 configuration error, 3 data error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fairenc/error.hpp"
#include "fairenc/numfmt.hpp"
#include "fairenc/sweep.hpp"
#include "fairenc/synthgen.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kDataError = 3;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) out.push_back(fairenc::parse_double(item));
  return out;
}

// "0-19" or "1,4,7".
std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(s)) {
    const auto dash = item.find('-');
    try {
      if (dash != std::string::npos && dash > 0) {
        const auto lo = std::stoull(item.substr(0, dash));
        const auto hi = std::stoull(item.substr(dash + 1));
        if (hi < lo) throw fairenc::Error(fairenc::ErrorKind::kInvalidArgument, "bad seed range");
        for (auto v = lo; v <= hi; ++v) out.push_back(v);
      } else {
        out.push_back(std::stoull(item));
      }
    } catch (const std::logic_error&) {
      throw fairenc::Error(fairenc::ErrorKind::kInvalidArgument, "bad seed list '" + s + "'");
    }
  }
  return out;
}

int exit_code_for(fairenc::ErrorKind kind) {
  using fairenc::ErrorKind;
  switch (kind) {
    case ErrorKind::kMissingColumn:
    case ErrorKind::kNonBinaryTarget:
    case ErrorKind::kEmptyFile:
    case ErrorKind::kMalformedCsv:
    case ErrorKind::kIo:
      return kDataError;
    default:
      return kConfigError;
  }
}

struct SweepArgs {
  std::string data, scenario, protected_column, reference, protected_group, concat;
  std::string target_col = "target", positive_label = "1";
  std::string encoders, m_grid, sigma_grid, noise_mode, models, seeds;
  double split = 0.5, threshold = 0.5;
  std::string out = "-", format = "csv";
  unsigned threads = 0;
};

fairenc::SweepConfig build_config(const SweepArgs& a) {
  using namespace fairenc;
  if (a.data.empty() == a.scenario.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "exactly one of --data or --scenario is required");
  }
  SweepConfig c;
  if (!a.scenario.empty()) {
    c = scenario_config(synth::parse_scenario_kind(a.scenario));
  } else {
    c.source = CsvSource{a.data, CsvOptions{a.target_col, a.positive_label}};
    c.protected_group.reset();
    if (a.protected_column.empty() || a.reference.empty()) {
      throw Error(ErrorKind::kInvalidArgument, "--data requires --protected and --reference");
    }
  }
  if (!a.protected_column.empty()) c.protected_column = a.protected_column;
  if (!a.reference.empty()) c.reference_group = a.reference;
  if (!a.protected_group.empty()) c.protected_group = a.protected_group;
  if (a.concat == "none") {
    c.concat.reset();
  } else if (!a.concat.empty()) {
    const auto parts = split_list(a.concat);
    if (parts.size() != 2) throw Error(ErrorKind::kInvalidArgument, "--concat takes A,B");
    c.concat = std::make_pair(parts[0], parts[1]);
  }
  if (!a.encoders.empty()) {
    c.encoders.clear();
    for (const auto& e : split_list(a.encoders)) c.encoders.push_back(parse_encoder_kind(e));
  }
  if (!a.m_grid.empty()) c.m_grid = parse_grid(a.m_grid);
  if (!a.sigma_grid.empty()) c.sigma_grid = parse_grid(a.sigma_grid);
  if (!a.noise_mode.empty()) c.noise_mode = parse_noise_mode(a.noise_mode);
  if (!a.models.empty()) {
    c.models.clear();
    for (const auto& m : split_list(a.models)) c.models.push_back(parse_model_kind(m));
  }
  if (!a.seeds.empty()) c.seeds = parse_seeds(a.seeds);
  c.split_fraction = a.split;
  c.threshold = a.threshold;
  c.threads = a.threads;
  c.validate();
  return c;
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fairenc::Error(fairenc::ErrorKind::kIo, "cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Target-encoding fairness sweeps"};
  app.require_subcommand(1);

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Run an encoder/regularization/model grid");
  sweep->add_option("--data", sa.data, "CSV input");
  sweep->add_option("--scenario", sa.scenario, "irreducible | reducible | intersectional");
  sweep->add_option("--protected", sa.protected_column, "Protected column");
  sweep->add_option("--reference", sa.reference, "Reference group label");
  sweep->add_option("--protected-group", sa.protected_group,
                    "Protected group label (default: most frequent non-reference)");
  sweep->add_option("--concat", sa.concat, "A,B: cross two columns into --protected (none disables)");
  sweep->add_option("--target-col", sa.target_col, "Target column name")->capture_default_str();
  sweep->add_option("--positive-label", sa.positive_label, "Target value mapped to 1")
      ->capture_default_str();
  sweep->add_option("--encoder", sa.encoders, "onehot,target-m,target-sigma");
  sweep->add_option("--m-grid", sa.m_grid, "Smoothing values, e.g. 0,1,10,100");
  sweep->add_option("--sigma-grid", sa.sigma_grid, "Noise widths, e.g. 0,0.1,0.3");
  sweep->add_option("--noise-mode", sa.noise_mode, "per-row | per-category");
  sweep->add_option("--models", sa.models, "logistic,tree,gbdt");
  sweep->add_option("--seeds", sa.seeds, "e.g. 0-19 or 1,2,3");
  sweep->add_option("--split", sa.split, "Train fraction")->capture_default_str();
  sweep->add_option("--threshold", sa.threshold, "Decision threshold")->capture_default_str();
  sweep->add_option("--out", sa.out, "Output path, - for stdout")->capture_default_str();
  sweep->add_option("--format", sa.format, "csv | markdown")->capture_default_str();
  sweep->add_option("--threads", sa.threads, "Worker threads, 0 = all cores");

  std::string gen_scenario, gen_out = "-";
  std::uint64_t gen_seed = 0;
  auto* generate = app.add_subcommand("generate", "Emit a synthetic scenario as CSV");
  generate->add_option("--scenario", gen_scenario, "irreducible | reducible | intersectional")
      ->required();
  generate->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  generate->add_option("--out", gen_out, "Output path, - for stdout")->capture_default_str();

  std::string enc_data, enc_scenario, enc_column, enc_target = "target", enc_positive = "1",
                                                  enc_out = "-", enc_mode = "per-category";
  double enc_m = 0.0, enc_sigma = 0.0;
  std::uint64_t enc_seed = 0;
  auto* encode = app.add_subcommand("encode", "Fit a target encoder and print its mapping");
  encode->add_option("--data", enc_data, "CSV input");
  encode->add_option("--scenario", enc_scenario, "Synthetic input instead of --data");
  encode->add_option("--column", enc_column, "Column to encode")->required();
  encode->add_option("--target-col", enc_target, "Target column name")->capture_default_str();
  encode->add_option("--positive-label", enc_positive, "Target value mapped to 1")
      ->capture_default_str();
  encode->add_option("--m", enc_m, "Smoothing parameter")->capture_default_str();
  encode->add_option("--sigma", enc_sigma, "Gaussian noise width")->capture_default_str();
  encode->add_option("--noise-mode", enc_mode, "per-category | per-row")->capture_default_str();
  encode->add_option("--seed", enc_seed, "Noise seed")->capture_default_str();
  encode->add_option("--out", enc_out, "Output path, - for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    using namespace fairenc;
    if (*sweep) {
      const auto config = build_config(sa);
      const auto format = parse_report_format(sa.format);
      const auto records = run_sweep(config);
      if (sa.out == "-") {
        std::cout << (format == ReportFormat::kCsv ? records_csv(records)
                                                   : records_markdown(records));
      } else {
        emit_report(records, sa.out, format);
      }
    } else if (*generate) {
      const auto d = synth::generate(synth::parse_scenario_kind(gen_scenario), gen_seed);
      write_output(gen_out, to_csv(d));
    } else if (*encode) {
      if (enc_data.empty() == enc_scenario.empty()) {
        throw Error(ErrorKind::kInvalidArgument, "exactly one of --data or --scenario is required");
      }
      const auto d = enc_data.empty()
                         ? synth::generate(synth::parse_scenario_kind(enc_scenario), enc_seed)
                         : load_csv(enc_data, CsvOptions{enc_target, enc_positive});
      TargetEncoderParams params{enc_m, enc_sigma, parse_noise_mode(enc_mode), enc_seed};
      write_output(enc_out, serialize(fit_target_encoder(d, enc_column, params)));
    }
  } catch (const fairenc::Error& e) {
    std::cerr << "fairenc: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "fairenc: " << e.what() << "\n";
    return kConfigError;
  }
  return EXIT_SUCCESS;
}
