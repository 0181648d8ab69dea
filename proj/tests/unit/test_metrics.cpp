#include <doctest.h>

#include <cmath>
#include <random>

#include "fairenc/error.hpp"
#include "fairenc/metrics.hpp"
#include "oracles.hpp"

using namespace fairenc;

namespace {

GroupOutcome group(std::string label, std::vector<double> s, std::vector<std::uint8_t> y) {
  GroupOutcome g;
  g.label = std::move(label);
  g.scores = std::move(s);
  g.labels = std::move(y);
  return g;
}

// TP/FN/FP/TN counts realized as scores 1 (predicted +) or 0.
GroupOutcome from_counts(std::string label, int tp, int fn, int fp, int tn) {
  GroupOutcome g;
  g.label = std::move(label);
  auto add = [&](int k, double s, std::uint8_t y) {
    for (int i = 0; i < k; ++i) g.scores.push_back(s), g.labels.push_back(y);
  };
  add(tp, 1.0, 1);
  add(fn, 0.0, 1);
  add(fp, 1.0, 0);
  add(tn, 0.0, 0);
  return g;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a fairenc::Error");
  return ErrorKind::kIo;
}

std::vector<double> random_sample(std::mt19937_64& rng, int n, int support) {
  std::uniform_int_distribution<int> k(0, support - 1);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& v : out) v = k(rng) / static_cast<double>(support - 1);
  return out;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("confusion examples and the tie rule") {
    const std::vector<double> s = {0.9, 0.1};
    const std::vector<std::uint8_t> y = {1, 0};
    CHECK(confusion(s, y, 0.5) == Confusion{1, 0, 1, 0});
    const std::vector<double> half(4, 0.5);
    const std::vector<std::uint8_t> y4 = {1, 0, 1, 0};
    CHECK(confusion(half, y4, 0.5) == Confusion{2, 2, 0, 0});
  }

  TEST_CASE("confusion matches a per-row recount") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
      std::vector<double> s(1000);
      std::vector<std::uint8_t> y(1000);
      for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = std::round(u(rng) * 20) / 20;  // plenty of exact ties at 0.5
        y[i] = u(rng) < 0.4;
      }
      const auto c = confusion(s, y, 0.5);
      const auto o = oracle::recount(s, y, 0.5);
      CHECK(c == Confusion{o.tp, o.fp, o.tn, o.fn});
    }
  }

  TEST_CASE("confusion errors") {
    const std::vector<double> s = {0.1};
    const std::vector<std::uint8_t> y2 = {1, 0};
    CHECK(kind_of([] { confusion({}, {}, 0.5); }) == ErrorKind::kInvalidArgument);
    CHECK(kind_of([&] { confusion(s, y2, 0.5); }) == ErrorKind::kInvalidArgument);
    CHECK(kind_of([&] { confusion(s, std::vector<std::uint8_t>{1}, NAN); }) ==
          ErrorKind::kInvalidArgument);
    CHECK(kind_of([] { true_positive_rate(Confusion{0, 1, 1, 0}); }) == ErrorKind::kUndefinedMetric);
    CHECK(kind_of([] { false_positive_rate(Confusion{1, 0, 0, 1}); }) ==
          ErrorKind::kUndefinedMetric);
  }

  TEST_CASE("equal opportunity examples") {
    const auto a = from_counts("a", 3, 1, 2, 2);
    CHECK(equal_opportunity(a, a) == 0.0);
    CHECK(equal_opportunity(from_counts("r", 4, 0, 0, 1), from_counts("g", 0, 4, 0, 1)) == 1.0);
    CHECK(equal_opportunity(from_counts("r", 3, 1, 0, 0), from_counts("g", 1, 3, 0, 0)) == 0.5);
    CHECK(kind_of([] { equal_opportunity(from_counts("r", 1, 1, 0, 0), from_counts("g", 0, 0, 1, 1)); }) ==
          ErrorKind::kUndefinedMetric);
  }

  TEST_CASE("average absolute odds examples") {
    CHECK(average_absolute_odds(from_counts("r", 5, 0, 0, 5), from_counts("g", 3, 0, 0, 2)) == 2.0);
    // ref TPR 0.8 FPR 0.3, grp TPR 0.5 FPR 0.5
    const double v = average_absolute_odds(from_counts("r", 8, 2, 3, 7), from_counts("g", 1, 1, 2, 2));
    CHECK(v == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(kind_of([] { average_absolute_odds(from_counts("r", 1, 0, 0, 1), from_counts("g", 1, 0, 0, 0)); }) ==
          ErrorKind::kUndefinedMetric);
  }

  TEST_CASE("average absolute odds is near zero for random scores") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto random_group = [&](std::string label) {
      GroupOutcome g;
      g.label = std::move(label);
      for (int i = 0; i < 10000; ++i) g.scores.push_back(u(rng)), g.labels.push_back(u(rng) < 0.4);
      return g;
    };
    CHECK(average_absolute_odds(random_group("r"), random_group("g")) < 0.05);
  }

  TEST_CASE("wasserstein examples") {
    const std::vector<double> a = {0.2, 0.7, 0.7};
    CHECK(statistical_parity_wasserstein(a, a) == 0.0);
    CHECK(statistical_parity_wasserstein(std::vector<double>(3, 0.0), std::vector<double>(5, 1.0)) ==
          1.0);
    const std::vector<double> p = {0, 0.5}, q = {0.25, 0.75};
    CHECK(statistical_parity_wasserstein(p, q) == 0.25);
    CHECK(oracle::wasserstein_transport(p, q) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(statistical_parity_wasserstein({}, a), Error);
  }

  TEST_CASE("wasserstein matches the transport oracle") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> size(1, 12);
    for (int t = 0; t < 50; ++t) {
      const auto a = random_sample(rng, size(rng), 7);
      const auto b = random_sample(rng, size(rng), 7);
      CHECK(statistical_parity_wasserstein(a, b) ==
            doctest::Approx(oracle::wasserstein_transport(a, b)).epsilon(1e-12));
    }
  }

  TEST_CASE("wasserstein is a metric") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> size(1, 30);
    for (int t = 0; t < 200; ++t) {
      const auto a = random_sample(rng, size(rng), 50);
      const auto b = random_sample(rng, size(rng), 50);
      const auto c = random_sample(rng, size(rng), 50);
      const double ab = statistical_parity_wasserstein(a, b);
      const double ba = statistical_parity_wasserstein(b, a);
      CHECK(ab >= 0.0);
      CHECK(std::abs(ab - ba) <= 1e-12);
      CHECK(statistical_parity_wasserstein(a, a) == 0.0);
      CHECK(ab <= statistical_parity_wasserstein(a, c) + statistical_parity_wasserstein(c, b) + 1e-12);
    }
  }

  TEST_CASE("auc examples") {
    const std::vector<std::uint8_t> y = {0, 0, 1, 1};
    CHECK(auc(std::vector<double>{0.1, 0.2, 0.3, 0.4}, y) == 1.0);
    CHECK(auc(std::vector<double>{0.4, 0.3, 0.2, 0.1}, y) == 0.0);
    CHECK(auc(std::vector<double>{0.5, 0.5, 0.5, 0.5}, y) == 0.5);
    CHECK(kind_of([] { auc(std::vector<double>{0.1, 0.2}, std::vector<std::uint8_t>{1, 1}); }) ==
          ErrorKind::kUndefinedMetric);
  }

  TEST_CASE("auc of uninformative scores is about one half") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> s(10000);
    std::vector<std::uint8_t> y(10000);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = u(rng), y[i] = u(rng) < 0.3;
    CHECK(std::abs(auc(s, y) - 0.5) < 0.02);
  }

  TEST_CASE("auc equals brute-force pair counting and is monotone-invariant") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> size(2, 300);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 30; ++t) {
      const int n = size(rng);
      std::vector<double> s(static_cast<std::size_t>(n));
      std::vector<std::uint8_t> y(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) s[i] = std::round(u(rng) * 10) / 10, y[i] = u(rng) < 0.5;
      y[0] = 1;
      y[1] = 0;
      CHECK(auc(s, y) == oracle::auc_pairs(s, y));
      std::vector<double> t2(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) t2[i] = std::exp(3 * s[i]) - 7;
      CHECK(auc(t2, y) == auc(s, y));
    }
  }

  TEST_CASE("confusion-based metrics are invariant under a shared monotone transform") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto make = [&](std::string label, auto&& f) {
      GroupOutcome g;
      g.label = std::move(label);
      std::mt19937_64 local(99 + g.label.size());
      for (int i = 0; i < 200; ++i) {
        const double s = std::round(u(local) * 8) / 8;
        g.scores.push_back(f(s));
        g.labels.push_back(u(local) < 0.5);
      }
      g.threshold = f(0.5);
      return g;
    };
    auto id = [](double s) { return s; };
    auto mono = [](double s) { return s * s * s + 2 * s; };
    const auto r0 = make("r", id), g0 = make("gg", id);
    const auto r1 = make("r", mono), g1 = make("gg", mono);
    CHECK(r0.counts() == r1.counts());
    CHECK(equal_opportunity(r0, g0) == equal_opportunity(r1, g1));
    CHECK(average_absolute_odds(r0, g0) == average_absolute_odds(r1, g1));
  }

  TEST_CASE("identical groups are at parity") {
    const auto a = group("a", {0.1, 0.6, 0.8, 0.3}, {0, 1, 1, 0});
    auto b = a;
    b.label = "b";
    const std::vector<GroupOutcome> gs = {a, b};
    CHECK(aggregate_fairness(gs, "a", FairnessMetric::kEof).value == 0.0);
    CHECK(aggregate_fairness(gs, "a", FairnessMetric::kSdp).value == 0.0);
    // Within-group form: not a difference between groups, so parity gives 2|TPR - FPR|.
    CHECK(aggregate_fairness(gs, "a", FairnessMetric::kAao).value ==
          2 * std::abs(a.tpr() - a.fpr()));
    CHECK(equal_opportunity(a, b) == 0.0);
    CHECK(statistical_parity_wasserstein(a.scores, b.scores) == 0.0);
  }

  TEST_CASE("aggregate L sums absolute pairwise values") {
    // Reference TPR 0.6; groups at 0.4 (+0.2) and 0.7 (-0.1).
    const std::vector<GroupOutcome> gs = {from_counts("ref", 6, 4, 1, 1),
                                          from_counts("g1", 4, 6, 1, 1),
                                          from_counts("g2", 7, 3, 1, 1)};
    const auto agg = aggregate_fairness(gs, "ref", FairnessMetric::kEof);
    CHECK(agg.value == doctest::Approx(0.3).epsilon(1e-14));
    REQUIRE(agg.pairwise.size() == 2);
    CHECK(agg.pairwise[0].second == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(agg.pairwise[1].second == doctest::Approx(-0.1).epsilon(1e-14));
    CHECK(agg.excluded.empty());
  }

  TEST_CASE("aggregate over nine groups matches manual recomputation") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::string> labels;
    std::vector<double> scores;
    std::vector<std::uint8_t> y;
    for (int i = 0; i < 2000; ++i) {
      const int g = static_cast<int>(u(rng) * 9);
      labels.push_back("g" + std::to_string(g));
      const double s = std::round(u(rng) * 40) / 40;  // keeps the transport oracle small
      scores.push_back(s);
      y.push_back(u(rng) < 0.2 + 0.05 * g + 0.3 * s);
    }
    const auto gs = split_by_group(labels, scores, y);
    REQUIRE(gs.size() == 9);
    for (auto m : {FairnessMetric::kEof, FairnessMetric::kSdp, FairnessMetric::kAao}) {
      double manual = 0.0;
      const auto& ref = gs[4];
      for (const auto& g : gs) {
        if (g.label == ref.label) continue;
        // Recompute rates from the oracle's per-row counts.
        const auto rc = oracle::recount(ref.scores, ref.labels, 0.5);
        const auto gc = oracle::recount(g.scores, g.labels, 0.5);
        const double rt = double(rc.tp) / double(rc.tp + rc.fn), rf = double(rc.fp) / double(rc.fp + rc.tn);
        const double gt = double(gc.tp) / double(gc.tp + gc.fn), gf = double(gc.fp) / double(gc.fp + gc.tn);
        if (m == FairnessMetric::kEof) manual += std::abs(rt - gt);
        if (m == FairnessMetric::kAao) manual += std::abs(rt - rf) + std::abs(gt - gf);
        if (m == FairnessMetric::kSdp) manual += oracle::wasserstein_transport(ref.scores, g.scores);
      }
      CHECK(aggregate_fairness(gs, ref.label, m).value == doctest::Approx(manual).epsilon(1e-9));
    }
  }

  TEST_CASE("groups with undefined metrics are excluded with a warning") {
    const std::vector<GroupOutcome> gs = {from_counts("ref", 3, 1, 1, 3),
                                          from_counts("neg_only", 0, 0, 1, 3),
                                          from_counts("ok", 2, 2, 2, 2)};
    const auto agg = aggregate_fairness(gs, "ref", FairnessMetric::kEof);
    CHECK(agg.excluded == std::vector<std::string>{"neg_only"});
    CHECK(agg.value == doctest::Approx(0.25));

    const auto report = fairness_report(gs, "ref");
    REQUIRE(report.l_eof);
    CHECK(*report.l_eof == doctest::Approx(0.25));
    CHECK(!report.find("neg_only")->eof);
    CHECK(report.find("neg_only")->sdp.has_value());
    CHECK(std::find(report.warnings.begin(), report.warnings.end(), "eof_undefined:neg_only") !=
          report.warnings.end());
    CHECK(!report.find("ref")->eof);
  }

  TEST_CASE("aggregate preconditions") {
    const std::vector<GroupOutcome> one = {from_counts("a", 1, 1, 1, 1)};
    CHECK(kind_of([&] { aggregate_fairness(one, "a", FairnessMetric::kEof); }) ==
          ErrorKind::kInvalidArgument);
    const std::vector<GroupOutcome> two = {from_counts("a", 1, 1, 1, 1), from_counts("b", 1, 1, 1, 1)};
    CHECK(kind_of([&] { aggregate_fairness(two, "zzz", FairnessMetric::kEof); }) ==
          ErrorKind::kInvalidArgument);
    const std::vector<GroupOutcome> bad_ref = {from_counts("a", 0, 0, 1, 1), from_counts("b", 1, 1, 1, 1)};
    const auto report = fairness_report(bad_ref, "a");
    CHECK(!report.l_eof);
    CHECK(report.l_sdp.has_value());
  }

  TEST_CASE("report csv layout") {
    const std::vector<GroupOutcome> gs = {from_counts("ref", 3, 1, 1, 3), from_counts("p", 1, 1, 1, 1)};
    const auto csv = report_csv(fairness_report(gs, "ref"));
    CHECK(csv.rfind("group,metric,value\n", 0) == 0);
    CHECK(csv.find("p,eof,0.25\n") != std::string::npos);
    CHECK(csv.find("*,L_eof,0.25\n") != std::string::npos);
    CHECK(csv.find("ref,eof") == std::string::npos);
  }

  TEST_CASE("split_by_group sorts groups and keeps row order") {
    const std::vector<std::string> g = {"b", "a", "b"};
    const std::vector<double> s = {0.1, 0.2, 0.3};
    const std::vector<std::uint8_t> y = {1, 0, 0};
    const auto out = split_by_group(g, s, y, 0.25);
    REQUIRE(out.size() == 2);
    CHECK(out[0].label == "a");
    CHECK(out[1].scores == std::vector<double>{0.1, 0.3});
    CHECK(out[1].threshold == 0.25);
  }
}
