#include "fairenc/synthgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "fairenc/error.hpp"
#include "fairenc/models.hpp"

namespace fairenc::synth {

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kIrreducible: return "irreducible";
    case ScenarioKind::kReducible: return "reducible";
    case ScenarioKind::kIntersectional: return "intersectional";
  }
  return "unknown";
}

ScenarioKind parse_scenario_kind(std::string_view s) {
  if (s == "irreducible") return ScenarioKind::kIrreducible;
  if (s == "reducible") return ScenarioKind::kReducible;
  if (s == "intersectional") return ScenarioKind::kIntersectional;
  throw Error(ErrorKind::kInvalidArgument, "unknown scenario '" + std::string(s) + "'");
}

namespace {

// All equally likely sums of noise-column shifts.
std::vector<double> shift_distribution(const NoiseColumnSpec& noise) {
  std::vector<double> sums{0.0};
  for (int c = 0; c < noise.count; ++c) {
    std::vector<double> next;
    next.reserve(sums.size() * static_cast<std::size_t>(noise.cardinality));
    for (double s : sums) {
      for (int k = 0; k < noise.cardinality; ++k) {
        const double shift =
            noise.cardinality > 1
                ? noise.max_shift * (2.0 * k / (noise.cardinality - 1) - 1.0)
                : 0.0;
        next.push_back(s + shift);
      }
    }
    sums = std::move(next);
  }
  return sums;
}

// Log-odds offset b with mean_s sigmoid(b + s) == rate.
double solve_offset(double rate, const std::vector<double>& shifts) {
  auto mean_rate = [&](double b) {
    double acc = 0.0;
    for (double s : shifts) acc += sigmoid(b + s);
    return acc / static_cast<double>(shifts.size());
  };
  double lo = -40.0, hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mean_rate(mid) < rate ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double shift_of(const NoiseColumnSpec& noise, int k) {
  return noise.cardinality > 1 ? noise.max_shift * (2.0 * k / (noise.cardinality - 1) - 1.0) : 0.0;
}

}  // namespace

Dataset generate(const ScenarioSpec& spec, std::uint64_t seed) {
  if (spec.protected_columns.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "scenario needs a protected column");
  }
  std::int64_t total = 0;
  for (const auto& g : spec.groups) {
    if (g.attributes.size() != spec.protected_columns.size()) {
      throw Error(ErrorKind::kInvalidArgument, "group attributes do not match protected columns");
    }
    if (!(g.rate >= 0.0 && g.rate <= 1.0) || g.n < 0) {
      throw Error(ErrorKind::kInvalidArgument, "group rate must lie in [0,1], n >= 0");
    }
    total += g.n;
  }
  if (total < 2) throw Error(ErrorKind::kInvalidArgument, "scenario needs at least two rows");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> noise_cat(0, std::max(0, spec.noise.cardinality - 1));
  const auto shifts = shift_distribution(spec.noise);

  const auto n = static_cast<std::size_t>(total);
  std::vector<Column> protected_cols;
  for (const auto& name : spec.protected_columns) protected_cols.push_back(Column{name, {}});
  std::vector<Column> noise_cols;
  for (int c = 0; c < spec.noise.count; ++c) {
    noise_cols.push_back(Column{"noise" + std::to_string(c + 1), {}});
  }
  std::vector<std::uint8_t> target;
  target.reserve(n);

  for (const auto& g : spec.groups) {
    const bool degenerate = g.rate == 0.0 || g.rate == 1.0;
    const double offset = degenerate ? 0.0 : solve_offset(g.rate, shifts);
    for (std::int64_t r = 0; r < g.n; ++r) {
      for (std::size_t c = 0; c < protected_cols.size(); ++c) {
        protected_cols[c].values.push_back(g.attributes[c]);
      }
      double logit = offset;
      for (auto& col : noise_cols) {
        const int k = noise_cat(rng);
        col.values.push_back("c" + std::to_string(k));
        logit += shift_of(spec.noise, k);
      }
      const double p = degenerate ? g.rate : sigmoid(logit);
      target.push_back(unit(rng) < p ? 1 : 0);
    }
  }

  if (spec.subsample) {
    const auto& sub = *spec.subsample;
    auto& col = protected_cols.front().values;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < n; ++i) {
      if (col[i] == sub.source) candidates.push_back(i);
    }
    if (sub.n < 0 || static_cast<std::size_t>(sub.n) > candidates.size()) {
      throw Error(ErrorKind::kInvalidArgument, "subsample larger than its source group");
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (std::int64_t k = 0; k < sub.n; ++k) col[candidates[static_cast<std::size_t>(k)]] = sub.label;
  }

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  std::vector<Column> columns;
  for (auto& c : protected_cols) columns.push_back(std::move(c));
  for (auto& c : noise_cols) columns.push_back(std::move(c));
  return Dataset(std::move(columns), std::move(target)).select_rows(perm);
}

ScenarioSpec irreducible_spec() {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::kIrreducible;
  spec.protected_columns = {kEthnicColumn};
  spec.groups = {{{kAfricanAmerican}, 13000, 0.43}, {{kCaucasian}, 10000, 0.25}};
  return spec;
}

ScenarioSpec reducible_spec() {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::kReducible;
  spec.protected_columns = {kEthnicColumn};
  spec.groups = {{{kAfricanAmerican}, 27000, 0.43},
                 {{kCaucasian}, 3000, 0.25},
                 {{kOtherGroup}, 3000, 0.61}};
  spec.subsample = SubsampleSpec{kAfricanAmerican, kSampledGroup, 50};
  return spec;
}

namespace {

struct EthnicRow {
  const char* label;
  double weight;
  double rate;
  // Conditional marital distribution; zero marks an unpopulated cell.
  std::array<double, 7> marital;
};

constexpr std::array<const char*, 7> kMarital = {
    "Single", "Married", "Divorced", "Separated", "Widowed", "Significant-Other", "Unknown"};
// Rate offsets added to the ethnic marginal before the
// residual is solved.
constexpr std::array<double, 7> kMaritalOffset = {0.05, -0.10, 0.0, 0.02, -0.05, 0.03, 0.0};

constexpr std::array<EthnicRow, 9> kEthnic = {{
    {kAfricanAmerican, 0.450, 0.43, {0.60, 0.12, 0.08, 0.05, 0.02, 0.10, 0.03}},
    {kCaucasian, 0.330, 0.25, {0.40, 0.30, 0.15, 0.05, 0.03, 0.05, 0.02}},
    {"Hispanic", 0.100, 0.30, {0.45, 0.30, 0.08, 0.05, 0.02, 0.08, 0.02}},
    {"Other", 0.050, 0.28, {0.45, 0.30, 0.10, 0.05, 0.02, 0.06, 0.02}},
    {"Asian", 0.020, 0.20, {0.45, 0.40, 0.08, 0.04, 0.03, 0.00, 0.00}},
    {"Native-American", 0.015, 0.40, {0.50, 0.25, 0.15, 0.00, 0.00, 0.10, 0.00}},
    {"Arabic", 0.010, 0.25, {0.50, 0.40, 0.10, 0.00, 0.00, 0.00, 0.00}},
    {"Oriental", 0.010, 0.20, {0.50, 0.40, 0.00, 0.10, 0.00, 0.00, 0.00}},
    {"Unknown", 0.015, 0.30, {0.60, 0.30, 0.00, 0.00, 0.00, 0.00, 0.10}},
}};

constexpr std::int64_t kIntersectionalRows = 20000;

}  // namespace

ScenarioSpec intersectional_spec() {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::kIntersectional;
  spec.protected_columns = {kEthnicColumn, kMaritalColumn};

  const std::map<std::pair<std::string, std::string>, double> fixed = {
      {{kAfricanAmerican, "Single"}, 0.46},
      {{kCaucasian, "Married"}, 0.10},
  };

  for (const auto& e : kEthnic) {
    const auto group_n = static_cast<double>(kIntersectionalRows) * e.weight;
    std::vector<GroupSpec> cells;
    std::vector<bool> is_fixed;
    for (std::size_t m = 0; m < kMarital.size(); ++m) {
      if (e.marital[m] == 0.0) continue;
      const auto n = static_cast<std::int64_t>(std::llround(group_n * e.marital[m]));
      auto it = fixed.find({e.label, kMarital[m]});
      const double rate = it != fixed.end()
                              ? it->second
                              : std::clamp(e.rate + kMaritalOffset[m], 0.02, 0.98);
      cells.push_back(GroupSpec{{e.label, kMarital[m]}, n, rate});
      is_fixed.push_back(it != fixed.end());
    }
    // The largest free cell absorbs the residual so the ethnic marginal
    // comes out at e.rate.
    std::size_t absorb = cells.size();
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (!is_fixed[k] && (absorb == cells.size() || cells[k].n > cells[absorb].n)) absorb = k;
    }
    double total_n = 0.0, rest = 0.0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      total_n += static_cast<double>(cells[k].n);
      if (k != absorb) rest += static_cast<double>(cells[k].n) * cells[k].rate;
    }
    cells[absorb].rate = std::clamp(
        (e.rate * total_n - rest) / static_cast<double>(cells[absorb].n), 0.0, 1.0);
    for (auto& c : cells) spec.groups.push_back(std::move(c));
  }
  return spec;
}

Dataset gen_irreducible(std::uint64_t seed) { return generate(irreducible_spec(), seed); }
Dataset gen_reducible(std::uint64_t seed) { return generate(reducible_spec(), seed); }
Dataset gen_intersectional(std::uint64_t seed) { return generate(intersectional_spec(), seed); }

Dataset generate(ScenarioKind kind, std::uint64_t seed) {
  switch (kind) {
    case ScenarioKind::kIrreducible: return gen_irreducible(seed);
    case ScenarioKind::kReducible: return gen_reducible(seed);
    case ScenarioKind::kIntersectional: return gen_intersectional(seed);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown scenario");
}

}  // namespace fairenc::synth
