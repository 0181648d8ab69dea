#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairenc/dataset.hpp"

namespace fairenc::synth {

enum class ScenarioKind { kIrreducible, kReducible, kIntersectional };

std::string_view to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(std::string_view s);

// Group labels used by the built-in scenarios.
inline constexpr const char* kAfricanAmerican = "African-American";
inline constexpr const char* kCaucasian = "Caucasian";
inline constexpr const char* kSampledGroup = "African-American-sampled";
inline constexpr const char* kOtherGroup = "Other";
inline constexpr const char* kEthnicColumn = "ethnic";
inline constexpr const char* kMaritalColumn = "marital";
inline constexpr const char* kIntersectionalColumn = "ethnic_marital";

struct GroupSpec {
  std::vector<std::string> attributes;  // one value per protected column
  std::int64_t n = 0;
  double rate = 0.0;  // expected positive rate of the group
};

// Weakly informative categorical columns. Category k of cardinality c
// shifts the log-odds by max_shift * (2k/(c-1) - 1).
struct NoiseColumnSpec {
  int count = 3;
  int cardinality = 5;
  double max_shift = 0.2;
};

// Rows moved out of an existing group under a new label, keeping their
// targets.
struct SubsampleSpec {
  std::string source;
  std::string label;
  std::int64_t n = 0;
};

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::kIrreducible;
  std::vector<std::string> protected_columns;
  std::vector<GroupSpec> groups;
  NoiseColumnSpec noise;
  std::optional<SubsampleSpec> subsample;  // applied to protected_columns[0]
};

// Pure function of (spec, seed). Each row's target is Bernoulli with
// log-odds offset_g + noise shifts, where offset_g is solved so that the
// expected group rate is exactly the requested one. Rows are shuffled.
Dataset generate(const ScenarioSpec& spec, std::uint64_t seed);

ScenarioSpec irreducible_spec();
ScenarioSpec reducible_spec();
ScenarioSpec intersectional_spec();

// Two large groups: African-American 13,000 at 0.43 and Caucasian 10,000 at
// 0.25.
Dataset gen_irreducible(std::uint64_t seed);
// African-American 27,000 at 0.43 of which 50 random rows are relabeled
// African-American-sampled, plus Caucasian 3,000 at 0.25.
Dataset gen_reducible(std::uint64_t seed);
// ethnic (9) x marital (7) with 46 populated cells, 20,000 rows.
// African-American|Single has rate 0.46, Caucasian|Married 0.10, and the
// ethnic marginals are 0.43 / 0.25.
Dataset gen_intersectional(std::uint64_t seed);

Dataset generate(ScenarioKind kind, std::uint64_t seed);

}  // namespace fairenc::synth
