#include "fairenc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fairenc/error.hpp"
#include "fairenc/numfmt.hpp"
#include "fairenc/simd/kernels.hpp"

namespace fairenc {

Confusion confusion(std::span<const double> scores, std::span<const std::uint8_t> labels,
                    double threshold) {
  if (scores.empty()) throw Error(ErrorKind::kInvalidArgument, "confusion of empty input");
  if (scores.size() != labels.size()) {
    throw Error(ErrorKind::kInvalidArgument, "scores and labels differ in length");
  }
  if (!std::isfinite(threshold)) throw Error(ErrorKind::kInvalidArgument, "threshold not finite");
  const auto c = simd::confusion(scores, labels, threshold);
  return Confusion{c.tp, c.fp, c.tn, c.fn};
}

double true_positive_rate(const Confusion& c) {
  if (c.positives() == 0) throw Error(ErrorKind::kUndefinedMetric, "undefined TPR: no positives");
  return static_cast<double>(c.tp) / static_cast<double>(c.positives());
}

double false_positive_rate(const Confusion& c) {
  if (c.negatives() == 0) throw Error(ErrorKind::kUndefinedMetric, "undefined FPR: no negatives");
  return static_cast<double>(c.fp) / static_cast<double>(c.negatives());
}

std::vector<GroupOutcome> split_by_group(std::span<const std::string> groups,
                                         std::span<const double> scores,
                                         std::span<const std::uint8_t> labels, double threshold) {
  if (groups.size() != scores.size() || scores.size() != labels.size()) {
    throw Error(ErrorKind::kInvalidArgument, "groups, scores and labels differ in length");
  }
  std::map<std::string_view, GroupOutcome> by_label;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    auto& g = by_label[groups[i]];
    g.scores.push_back(scores[i]);
    g.labels.push_back(labels[i]);
  }
  std::vector<GroupOutcome> out;
  out.reserve(by_label.size());
  for (auto& [label, g] : by_label) {
    g.label = std::string(label);
    g.threshold = threshold;
    out.push_back(std::move(g));
  }
  return out;
}

double equal_opportunity(const GroupOutcome& ref, const GroupOutcome& grp) {
  return ref.tpr() - grp.tpr();
}

double average_absolute_odds(const GroupOutcome& ref, const GroupOutcome& grp) {
  const auto a = ref.counts();
  const auto b = grp.counts();
  return std::fabs(true_positive_rate(a) - false_positive_rate(a)) +
         std::fabs(true_positive_rate(b) - false_positive_rate(b));
}

double statistical_parity_wasserstein(std::span<const double> ref, std::span<const double> grp) {
  if (ref.empty() || grp.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "wasserstein of an empty sample");
  }
  std::vector<double> a(ref.begin(), ref.end()), b(grp.begin(), grp.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  // Integrate |F_a - F_b| over the merged support.
  std::vector<double> cdf_a, cdf_b, width;
  cdf_a.reserve(a.size() + b.size());
  cdf_b.reserve(a.size() + b.size());
  width.reserve(a.size() + b.size());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    double t;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) t = a[i];
    else t = b[j];
    while (i < a.size() && a[i] == t) ++i;
    while (j < b.size() && b[j] == t) ++j;
    if (i == a.size() && j == b.size()) break;
    const double next = (j == b.size() || (i < a.size() && a[i] <= b[j])) ? a[i] : b[j];
    cdf_a.push_back(static_cast<double>(i) / na);
    cdf_b.push_back(static_cast<double>(j) / nb);
    width.push_back(next - t);
  }
  if (width.empty()) return 0.0;
  return simd::weighted_abs_diff(cdf_a, cdf_b, width);
}

double auc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorKind::kInvalidArgument, "scores and labels differ in length");
  }
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return scores[x] < scores[y]; });

  // Twice the Mann-Whitney U, kept integral so ties stay exact.
  std::int64_t u2 = 0, neg_below = 0, pos = 0, neg = 0;
  for (std::size_t k = 0; k < order.size();) {
    std::size_t end = k;
    std::int64_t tie_pos = 0, tie_neg = 0;
    while (end < order.size() && scores[order[end]] == scores[order[k]]) {
      (labels[order[end]] ? tie_pos : tie_neg) += 1;
      ++end;
    }
    u2 += 2 * tie_pos * neg_below + tie_pos * tie_neg;
    neg_below += tie_neg;
    pos += tie_pos;
    neg += tie_neg;
    k = end;
  }
  if (pos == 0 || neg == 0) {
    throw Error(ErrorKind::kUndefinedMetric, "AUC needs both positive and negative labels");
  }
  return static_cast<double>(u2) / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

std::string_view to_string(FairnessMetric metric) {
  switch (metric) {
    case FairnessMetric::kEof: return "eof";
    case FairnessMetric::kSdp: return "sdp";
    case FairnessMetric::kAao: return "aao";
  }
  return "unknown";
}

namespace {

double pairwise(const GroupOutcome& ref, const GroupOutcome& grp, FairnessMetric metric) {
  switch (metric) {
    case FairnessMetric::kEof: return equal_opportunity(ref, grp);
    case FairnessMetric::kSdp: return statistical_parity_wasserstein(ref.scores, grp.scores);
    case FairnessMetric::kAao: return average_absolute_odds(ref, grp);
  }
  return 0.0;
}

const GroupOutcome& find_reference(std::span<const GroupOutcome> groups,
                                   std::string_view reference) {
  if (groups.size() < 2) throw Error(ErrorKind::kInvalidArgument, "need at least two groups");
  auto it = std::find_if(groups.begin(), groups.end(),
                         [&](const GroupOutcome& g) { return g.label == reference; });
  if (it == groups.end()) {
    throw Error(ErrorKind::kInvalidArgument,
                "reference group '" + std::string(reference) + "' not present");
  }
  return *it;
}

}  // namespace

AggregateFairness aggregate_fairness(std::span<const GroupOutcome> groups,
                                     std::string_view reference, FairnessMetric metric) {
  const auto& ref = find_reference(groups, reference);
  AggregateFairness out;
  for (const auto& g : groups) {
    if (g.label == reference) continue;
    try {
      const double v = pairwise(ref, g, metric);
      out.pairwise.emplace_back(g.label, v);
      out.value += std::fabs(v);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUndefinedMetric) throw;
      // Undefined on the reference poisons every pair.
      if (metric != FairnessMetric::kSdp) {
        const auto c = ref.counts();
        if (c.positives() == 0 || (metric == FairnessMetric::kAao && c.negatives() == 0)) {
          throw Error(ErrorKind::kInvalidArgument,
                      "metric " + std::string(to_string(metric)) + " undefined on reference");
        }
      }
      out.excluded.push_back(g.label);
    }
  }
  return out;
}

const GroupMetrics* FairnessReport::find(std::string_view label) const {
  for (const auto& g : groups) {
    if (g.label == label) return &g;
  }
  return nullptr;
}

FairnessReport fairness_report(std::span<const GroupOutcome> groups, std::string_view reference) {
  const auto& ref = find_reference(groups, reference);
  FairnessReport report;
  report.reference = std::string(reference);

  auto attempt = [](auto&& fn) -> std::optional<double> {
    try {
      return fn();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUndefinedMetric) throw;
      return std::nullopt;
    }
  };

  for (const auto& g : groups) {
    GroupMetrics m;
    m.label = g.label;
    m.n = static_cast<std::int64_t>(g.scores.size());
    m.auc = attempt([&] { return auc(g.scores, g.labels); });
    m.tpr = attempt([&] { return g.tpr(); });
    m.fpr = attempt([&] { return g.fpr(); });
    if (g.label != reference) {
      m.eof = attempt([&] { return equal_opportunity(ref, g); });
      m.sdp = statistical_parity_wasserstein(ref.scores, g.scores);
      m.aao = attempt([&] { return average_absolute_odds(ref, g); });
    }
    report.groups.push_back(std::move(m));
  }

  auto aggregate = [&](FairnessMetric metric) -> std::optional<double> {
    try {
      auto agg = aggregate_fairness(groups, reference, metric);
      for (const auto& label : agg.excluded) {
        report.warnings.push_back(std::string(to_string(metric)) + "_undefined:" + label);
      }
      return agg.value;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kInvalidArgument) throw;
      report.warnings.push_back(std::string(to_string(metric)) + "_undefined_on_reference");
      return std::nullopt;
    }
  };
  report.l_eof = aggregate(FairnessMetric::kEof);
  report.l_sdp = aggregate(FairnessMetric::kSdp);
  report.l_aao = aggregate(FairnessMetric::kAao);
  return report;
}

std::string report_csv(const FairnessReport& report) {
  std::string out = "group,metric,value\n";
  auto row = [&](const std::string& group, std::string_view metric, const std::optional<double>& v) {
    if (!v) return;
    out += group;
    out += ',';
    out += metric;
    out += ',';
    out += format_double(*v);
    out += '\n';
  };
  for (const auto& g : report.groups) {
    row(g.label, "auc", g.auc);
    row(g.label, "tpr", g.tpr);
    row(g.label, "fpr", g.fpr);
    row(g.label, "eof", g.eof);
    row(g.label, "sdp", g.sdp);
    row(g.label, "aao", g.aao);
  }
  row("*", "L_eof", report.l_eof);
  row("*", "L_sdp", report.l_sdp);
  row("*", "L_aao", report.l_aao);
  return out;
}

}  // namespace fairenc
