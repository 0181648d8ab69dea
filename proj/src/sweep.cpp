#include "fairenc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>
#include <numeric>
#include <thread>

#include "fairenc/error.hpp"
#include "fairenc/metrics.hpp"

namespace fairenc {

std::string_view to_string(EncoderKind kind) {
  switch (kind) {
    case EncoderKind::kOneHot: return "onehot";
    case EncoderKind::kTargetSmooth: return "target-m";
    case EncoderKind::kTargetNoise: return "target-sigma";
  }
  return "unknown";
}

EncoderKind parse_encoder_kind(std::string_view s) {
  if (s == "onehot") return EncoderKind::kOneHot;
  if (s == "target-m") return EncoderKind::kTargetSmooth;
  if (s == "target-sigma") return EncoderKind::kTargetNoise;
  throw Error(ErrorKind::kInvalidArgument, "unknown encoder '" + std::string(s) + "'");
}

std::vector<std::uint64_t> SweepConfig::default_seeds() {
  std::vector<std::uint64_t> s(20);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

void SweepConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::kInvalidArgument, msg); };
  if (seeds.empty()) fail("at least one seed is required");
  if (encoders.empty()) fail("at least one encoder is required");
  if (models.empty()) fail("at least one model is required");
  if (!(split_fraction > 0 && split_fraction < 1)) fail("split fraction must lie in (0,1)");
  if (!std::isfinite(threshold)) fail("threshold must be finite");
  if (protected_column.empty()) fail("protected column is required");
  if (reference_group.empty()) fail("reference group is required");
  const bool smooth = std::find(encoders.begin(), encoders.end(), EncoderKind::kTargetSmooth) !=
                      encoders.end();
  const bool noise = std::find(encoders.begin(), encoders.end(), EncoderKind::kTargetNoise) !=
                     encoders.end();
  if (smooth && m_grid.empty()) fail("m grid is empty");
  if (noise && sigma_grid.empty()) fail("sigma grid is empty");
  for (double m : m_grid) {
    if (!(m >= 0 && std::isfinite(m))) fail("m grid values must be finite and >= 0");
  }
  for (double s : sigma_grid) {
    if (!(s >= 0 && std::isfinite(s))) fail("sigma grid values must be finite and >= 0");
  }
}

SweepConfig scenario_config(synth::ScenarioKind kind) {
  SweepConfig c;
  c.source = kind;
  switch (kind) {
    case synth::ScenarioKind::kIrreducible:
      c.protected_column = synth::kEthnicColumn;
      c.reference_group = synth::kCaucasian;
      c.protected_group = synth::kAfricanAmerican;
      break;
    case synth::ScenarioKind::kReducible:
      c.protected_column = synth::kEthnicColumn;
      c.reference_group = synth::kAfricanAmerican;
      c.protected_group = synth::kSampledGroup;
      break;
    case synth::ScenarioKind::kIntersectional:
      c.protected_column = synth::kIntersectionalColumn;
      c.concat = std::make_pair(std::string(synth::kEthnicColumn), std::string(synth::kMaritalColumn));
      c.reference_group = std::string(synth::kCaucasian) + kConcatSeparator + "Married";
      c.protected_group = std::string(synth::kAfricanAmerican) + kConcatSeparator + "Single";
      break;
  }
  return c;
}

bool same_record(const TradeoffRecord& a, const TradeoffRecord& b) {
  auto same = [](double x, double y) { return std::memcmp(&x, &y, sizeof(double)) == 0 ||
                                              (std::isnan(x) && std::isnan(y)); };
  return a.encoder == b.encoder && same(a.reg_param, b.reg_param) && a.model == b.model &&
         a.seed == b.seed && same(a.auc_global, b.auc_global) &&
         same(a.auc_protected, b.auc_protected) && same(a.auc_reference, b.auc_reference) &&
         same(a.eof, b.eof) && same(a.sdp, b.sdp) && same(a.aao, b.aao) &&
         same(a.l_eof, b.l_eof) && same(a.l_sdp, b.l_sdp) && same(a.l_aao, b.l_aao) &&
         a.warnings == b.warnings;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Dataset prepare(const SweepConfig& config, Dataset d) {
  if (config.concat) {
    d = concat_columns(d, config.concat->first, config.concat->second, config.protected_column);
    d = d.without_columns({config.concat->first, config.concat->second});
  } else {
    d.column(config.protected_column);
  }
  return d;
}

std::string pick_protected_group(const SweepConfig& config, const Dataset& d) {
  if (config.protected_group) return *config.protected_group;
  const auto stats = group_stats(d, config.protected_column);
  const CategoryStats* best = nullptr;
  for (const auto& c : stats.categories) {
    if (c.label == config.reference_group) continue;
    if (!best || c.n > best->n) best = &c;
  }
  if (!best) throw Error(ErrorKind::kInvalidArgument, "no protected group besides the reference");
  return best->label;
}

struct SeedContext {
  std::uint64_t seed;
  SplitPair split;
  std::string protected_group;
  std::vector<FittedEncoder> other_encoders;  // one-hot for every other column
};

SeedContext make_context(const SweepConfig& config, const Dataset& data, std::uint64_t seed) {
  SeedContext ctx{seed, stratified_split(data, config.protected_column, config.split_fraction, seed),
                  pick_protected_group(config, data), {}};
  for (const auto& c : ctx.split.train.columns()) {
    if (c.name == config.protected_column) continue;
    ctx.other_encoders.emplace_back(fit_one_hot(ctx.split.train, c.name));
  }
  return ctx;
}

struct GridPoint {
  EncoderKind kind;
  double reg;
};

std::vector<GridPoint> grid(const SweepConfig& config) {
  std::vector<GridPoint> out;
  for (auto kind : config.encoders) {
    switch (kind) {
      case EncoderKind::kOneHot: out.push_back({kind, 0.0}); break;
      case EncoderKind::kTargetSmooth:
        for (double m : config.m_grid) out.push_back({kind, m});
        break;
      case EncoderKind::kTargetNoise:
        for (double s : config.sigma_grid) out.push_back({kind, s});
        break;
    }
  }
  return out;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

std::vector<TradeoffRecord> evaluate_point(const SweepConfig& config, const SeedContext& ctx,
                                           const GridPoint& point) {
  const auto& train = ctx.split.train;
  const auto& test = ctx.split.test;

  FeatureSet features;
  if (point.kind == EncoderKind::kOneHot) {
    features.encoders.emplace_back(fit_one_hot(train, config.protected_column));
  } else {
    TargetEncoderParams params;
    params.m = point.kind == EncoderKind::kTargetSmooth ? point.reg : 0.0;
    params.noise_sigma = point.kind == EncoderKind::kTargetNoise ? point.reg : 0.0;
    params.noise_mode = config.noise_mode;
    // Same stream for every sigma so the noise is scaled, not redrawn.
    params.seed = splitmix64(ctx.seed);
    features.encoders.emplace_back(fit_target_encoder(train, config.protected_column, params));
  }
  for (const auto& e : ctx.other_encoders) features.encoders.push_back(e);

  const auto x_train = features.transform_training(train);
  const auto x_test = features.transform(test);
  const auto& groups_col = test.column(config.protected_column).values;

  std::vector<TradeoffRecord> out;
  for (auto kind : config.models) {
    const auto model = fairenc::train(kind, x_train, train.target(), config.train, ctx.seed);
    const auto scores = score(model, x_test);

    TradeoffRecord r;
    r.encoder = std::string(to_string(point.kind));
    r.reg_param = point.reg;
    r.model = std::string(to_string(kind));
    r.seed = ctx.seed;
    if (model.constant_score) r.warnings.push_back("constant_model");

    try {
      r.auc_global = auc(scores, test.target());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUndefinedMetric) throw;
      r.auc_global = 0.5;
      r.warnings.push_back("auc_global_undefined");
    }

    const auto outcomes = split_by_group(groups_col, scores, test.target(), config.threshold);
    const auto report = fairness_report(outcomes, config.reference_group);
    const auto* prot = report.find(ctx.protected_group);
    const auto* ref = report.find(config.reference_group);
    if (!prot) {
      throw Error(ErrorKind::kInvalidArgument,
                  "protected group '" + ctx.protected_group + "' absent from test split");
    }
    if (!ref) {
      throw Error(ErrorKind::kInvalidArgument,
                  "reference group '" + config.reference_group + "' absent from test split");
    }
    auto auc_or_half = [&](const GroupMetrics& g, const char* tag) {
      if (g.auc) return *g.auc;
      r.warnings.push_back(std::string(tag) + "_undefined");
      return 0.5;
    };
    r.auc_protected = auc_or_half(*prot, "auc_protected");
    r.auc_reference = auc_or_half(*ref, "auc_reference");
    auto value_or_nan = [&](const std::optional<double>& v, const char* tag) {
      if (v) return *v;
      r.warnings.push_back(std::string(tag) + "_undefined");
      return nan();
    };
    r.eof = value_or_nan(prot->eof, "eof");
    r.sdp = value_or_nan(prot->sdp, "sdp");
    r.aao = value_or_nan(prot->aao, "aao");
    r.l_eof = report.l_eof.value_or(nan());
    r.l_sdp = report.l_sdp.value_or(nan());
    r.l_aao = report.l_aao.value_or(nan());
    for (const auto& w : report.warnings) r.warnings.push_back(w);
    out.push_back(std::move(r));
  }
  return out;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

void sort_records(std::vector<TradeoffRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.encoder, a.reg_param, a.model, a.seed) <
           std::tie(b.encoder, b.reg_param, b.model, b.seed);
  });
}

std::vector<TradeoffRecord> sweep_contexts(const SweepConfig& config,
                                           const std::vector<SeedContext>& contexts) {
  const auto points = grid(config);
  const auto tasks = contexts.size() * points.size();
  std::vector<std::vector<TradeoffRecord>> results(tasks);
  parallel_for(tasks, config.threads, [&](std::size_t t) {
    results[t] = evaluate_point(config, contexts[t / points.size()], points[t % points.size()]);
  });
  std::vector<TradeoffRecord> records;
  for (auto& r : results) {
    for (auto& rec : r) records.push_back(std::move(rec));
  }
  sort_records(records);
  return records;
}

}  // namespace

Dataset load_source(const SweepConfig& config, std::uint64_t seed) {
  if (const auto* csv = std::get_if<CsvSource>(&config.source)) {
    return load_csv(csv->path, csv->options);
  }
  return synth::generate(std::get<synth::ScenarioKind>(config.source), seed);
}

std::vector<TradeoffRecord> run_sweep(const SweepConfig& config, const Dataset& data) {
  config.validate();
  const auto prepared = prepare(config, data);
  std::vector<SeedContext> contexts;
  for (auto seed : config.seeds) contexts.push_back(make_context(config, prepared, seed));
  return sweep_contexts(config, contexts);
}

std::vector<TradeoffRecord> run_sweep(const SweepConfig& config) {
  config.validate();
  if (std::holds_alternative<CsvSource>(config.source)) {
    return run_sweep(config, load_source(config, 0));
  }
  // Synthetic data is regenerated per seed.
  std::vector<SeedContext> contexts;
  for (auto seed : config.seeds) {
    contexts.push_back(make_context(config, prepare(config, load_source(config, seed)), seed));
  }
  return sweep_contexts(config, contexts);
}

}  // namespace fairenc
