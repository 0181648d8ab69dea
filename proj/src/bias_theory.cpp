#include "fairenc/bias_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fairenc/encoders.hpp"
#include "fairenc/error.hpp"

namespace fairenc::theory {

void PopulationSpec::validate() const {
  if (weights.size() != rates.size() || weights.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "weights and rates must be non-empty and aligned");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0) throw Error(ErrorKind::kInvalidArgument, "negative group weight");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::kInvalidArgument, "group weights must sum to 1");
  }
  for (double p : rates) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::kInvalidArgument, "rate outside [0,1]");
  }
}

double PopulationSpec::prior() const {
  double p = 0.0;
  for (std::size_t i = 0; i < rates.size(); ++i) p += weights[i] * rates[i];
  return p;
}

Decision bayes_decision(double p, double threshold) {
  return p > threshold ? Decision::kPositive : Decision::kNegative;
}

double classification_error(const PopulationSpec& pop, const ClassifierSpec& clf) {
  pop.validate();
  const auto k = pop.rates.size();
  if (clf.kind == ClassifierKind::kEncoded && clf.estimates.size() != k) {
    throw Error(ErrorKind::kInvalidArgument, "encoded classifier needs one estimate per group");
  }
  double err = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double p = pop.rates[i];
    double e = 0.0;
    switch (clf.kind) {
      case ClassifierKind::kBayes: e = std::min(p, 1.0 - p); break;
      case ClassifierKind::kEncoded:
        e = bayes_decision(clf.estimates[i], pop.threshold) == Decision::kPositive ? 1.0 - p : p;
        break;
      case ClassifierKind::kRandomized: e = 2.0 * p * (1.0 - p); break;
    }
    err += pop.weights[i] * e;
  }
  return err;
}

int perfect_encoding_eof(double p1, double p2, double threshold) {
  const int tpr1 = bayes_decision(p1, threshold) == Decision::kPositive ? 1 : 0;
  const int tpr2 = bayes_decision(p2, threshold) == Decision::kPositive ? 1 : 0;
  return tpr1 - tpr2;
}

std::vector<GroupDecision> encoded_classifier_decisions(const PopulationSpec& pop,
                                                        std::span<const double> group_sizes,
                                                        double m,
                                                        std::optional<std::size_t> reference) {
  pop.validate();
  if (group_sizes.size() != pop.rates.size()) {
    throw Error(ErrorKind::kInvalidArgument, "one group size per group required");
  }
  if (reference && *reference >= pop.rates.size()) {
    throw Error(ErrorKind::kInvalidArgument, "reference index out of range");
  }
  const double prior = pop.prior();
  std::vector<GroupDecision> out(pop.rates.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double n_i = group_sizes[i];
    if (!(n_i >= 0)) throw Error(ErrorKind::kInvalidArgument, "group sizes must be >= 0");
    const double lambda = std::isinf(n_i) ? 1.0 : smoothing_weight(n_i, m);
    auto& g = out[i];
    g.expected_estimate = lambda == 1.0 ? pop.rates[i] : lambda * pop.rates[i] + (1.0 - lambda) * prior;
    g.bayes = bayes_decision(pop.rates[i], pop.threshold);
    g.encoded = bayes_decision(g.expected_estimate, pop.threshold);
    g.flipped = g.bayes != g.encoded;
  }
  if (reference) {
    const auto& ref = out[*reference];
    for (auto& g : out) {
      g.same_side_as_reference = g.encoded == ref.encoded;
      g.encoded_eof =
          perfect_encoding_eof(g.expected_estimate, ref.expected_estimate, pop.threshold);
    }
  }
  return out;
}

std::optional<double> decision_flip_point(double p_i, double prior, double n_i, double threshold) {
  if (n_i <= 0 || p_i == prior) return std::nullopt;
  // lambda* at which the convex combination hits the threshold.
  const double lambda = (threshold - prior) / (p_i - prior);
  if (!(lambda > 0.0 && lambda <= 1.0)) return std::nullopt;
  return n_i * (1.0 - lambda) / lambda;
}

double randomized_eof(double p1, double p2) { return p1 - p2; }

double randomized_eof_monte_carlo(double p1, double p2, std::int64_t n_per_group,
                                  std::uint64_t seed) {
  if (n_per_group <= 0) throw Error(ErrorKind::kInvalidArgument, "n_per_group must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto tpr = [&](double p) {
    std::int64_t pos = 0, hit = 0;
    for (std::int64_t k = 0; k < n_per_group; ++k) {
      const bool y = u(rng) < p;
      const bool yhat = u(rng) < p;
      pos += y;
      hit += y && yhat;
    }
    if (pos == 0) throw Error(ErrorKind::kUndefinedMetric, "no simulated positives");
    return static_cast<double>(hit) / static_cast<double>(pos);
  };
  const double t1 = tpr(p1);
  const double t2 = tpr(p2);
  return t1 - t2;
}

double estimator_variance(double p, double n_i) {
  if (!(n_i >= 1)) throw Error(ErrorKind::kInvalidArgument, "n_i must be >= 1");
  return p * (1.0 - p) / n_i;
}

}  // namespace fairenc::theory
