#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fairenc {

struct Confusion {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t positives() const noexcept { return tp + fn; }
  std::int64_t negatives() const noexcept { return fp + tn; }
  bool operator==(const Confusion&) const = default;
};

// score >= threshold predicts positive. Throws kInvalidArgument on empty or
// mismatched input.
Confusion confusion(std::span<const double> scores, std::span<const std::uint8_t> labels,
                    double threshold = 0.5);

// Throw kUndefinedMetric when the denominator is zero.
double true_positive_rate(const Confusion& c);
double false_positive_rate(const Confusion& c);

struct GroupOutcome {
  std::string label;
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;
  double threshold = 0.5;

  Confusion counts() const { return confusion(scores, labels, threshold); }
  double tpr() const { return true_positive_rate(counts()); }
  double fpr() const { return false_positive_rate(counts()); }
};

// Partition rows by group label; result is sorted by label.
std::vector<GroupOutcome> split_by_group(std::span<const std::string> groups,
                                         std::span<const double> scores,
                                         std::span<const std::uint8_t> labels,
                                         double threshold = 0.5);

// TPR_ref - TPR_grp.
double equal_opportunity(const GroupOutcome& ref, const GroupOutcome& grp);
// |TPR_ref - FPR_ref| + |TPR_grp - FPR_grp|.
double average_absolute_odds(const GroupOutcome& ref, const GroupOutcome& grp);
// Wasserstein-1 distance between the two empirical score distributions.
double statistical_parity_wasserstein(std::span<const double> ref, std::span<const double> grp);

// Mann-Whitney AUC with ties counted one half. Throws kUndefinedMetric
// unless both classes are present.
double auc(std::span<const double> scores, std::span<const std::uint8_t> labels);

enum class FairnessMetric { kEof, kSdp, kAao };
std::string_view to_string(FairnessMetric metric);

struct AggregateFairness {
  double value = 0.0;  // sum over non-reference groups of |metric|
  std::vector<std::pair<std::string, double>> pairwise;  // signed, per included group
  std::vector<std::string> excluded;  // groups where the metric was undefined
};

// Throws kInvalidArgument when the reference is missing, fewer than two
// groups are given, or the metric is undefined on the reference itself.
AggregateFairness aggregate_fairness(std::span<const GroupOutcome> groups,
                                     std::string_view reference, FairnessMetric metric);

struct GroupMetrics {
  std::string label;
  std::int64_t n = 0;
  std::optional<double> auc;
  std::optional<double> tpr;
  std::optional<double> fpr;
  // Versus the reference; absent for the reference or where undefined.
  std::optional<double> eof;
  std::optional<double> sdp;
  std::optional<double> aao;
};

struct FairnessReport {
  std::string reference;
  std::vector<GroupMetrics> groups;
  std::optional<double> l_eof;
  std::optional<double> l_sdp;
  std::optional<double> l_aao;
  std::vector<std::string> warnings;

  const GroupMetrics* find(std::string_view label) const;
};

FairnessReport fairness_report(std::span<const GroupOutcome> groups, std::string_view reference);

// One "group,metric,value" row per defined value, then aggregate rows with
// group "*".
std::string report_csv(const FairnessReport& report);

}  // namespace fairenc
