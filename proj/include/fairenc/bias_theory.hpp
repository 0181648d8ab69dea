#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

// Closed-form analysis of a single categorical attribute X with groups
// x_1..x_k, group weights P(X = x_i) and true positive rates
// p_i = P(Y = + | X = x_i). Every classifier here sees X only.

namespace fairenc::theory {

enum class Decision { kNegative, kPositive };

struct PopulationSpec {
  std::vector<double> weights;  // P(X = x_i), summing to 1
  std::vector<double> rates;    // p_i
  double threshold = 0.5;

  // Throws kInvalidArgument unless weights sum to 1 within 1e-12 and every
  // rate lies in [0,1].
  void validate() const;
  // p = sum_i weight_i * p_i.
  double prior() const;
};

enum class ClassifierKind {
  kBayes,       // thresholds the true p_i
  kEncoded,     // thresholds an estimate of p_i per group
  kRandomized,  // predicts + with probability p_i
};

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::kBayes;
  std::vector<double> estimates;  // per group; used by kEncoded
};

// + iff p > threshold.
Decision bayes_decision(double p, double threshold = 0.5);

// Population error rate of the classifier:
//   Bayes       sum_i w_i min(p_i, 1 - p_i)
//   encoded     sum_i w_i (p_i if decision is -, else 1 - p_i)
//   randomized  sum_i w_i 2 p_i (1 - p_i)
double classification_error(const PopulationSpec& pop, const ClassifierSpec& clf);

// P(Yhat=+ | Y=+, x_1) - P(Yhat=+ | Y=+, x_2) for the Bayes classifier:
// 0 on the same side of the threshold, -1 when p1 <= t < p2, +1 when
// p2 <= t < p1.
int perfect_encoding_eof(double p1, double p2, double threshold = 0.5);

struct GroupDecision {
  double expected_estimate = 0.0;  // lambda(n_i) p_i + (1 - lambda(n_i)) p
  Decision bayes = Decision::kNegative;
  Decision encoded = Decision::kNegative;
  bool flipped = false;  // encoded != bayes
  // Whether the encoded decision agrees with the encoded decision of the
  // reference group; set only when a reference is supplied. For a flipped
  // group this decides whether equal opportunity against the reference is
  // 0 or +-1.
  std::optional<bool> same_side_as_reference;
  // perfect_encoding_eof applied to the expected estimates (group vs
  // reference); set only when a reference is supplied.
  std::optional<int> encoded_eof;
};

// Expected smoothed target encoding of each group with n_i observations and
// smoothing m, thresholded. group_sizes[i] is +infinity for the
// infinite-data limit.
std::vector<GroupDecision> encoded_classifier_decisions(
    const PopulationSpec& pop, std::span<const double> group_sizes, double m,
    std::optional<std::size_t> reference = std::nullopt);

// Smallest m at which the expected estimate of a group with n_i
// observations reaches the threshold, i.e. the m solving
// lambda p_i + (1 - lambda) p = t with lambda = n_i / (n_i + m). Empty when
// no m >= 0 crosses the threshold.
std::optional<double> decision_flip_point(double p_i, double prior, double n_i,
                                          double threshold = 0.5);

// Equal opportunity of the randomized classifier: exactly p1 - p2.
double randomized_eof(double p1, double p2);

// Simulates n rows per group with Y ~ Bernoulli(p_i) and an independent
// prediction Yhat ~ Bernoulli(p_i) and returns TPR_1 - TPR_2.
double randomized_eof_monte_carlo(double p1, double p2, std::int64_t n_per_group,
                                  std::uint64_t seed);

// Var[n_iY / n_i] = p (1 - p) / n_i.
double estimator_variance(double p, double n_i);

}  // namespace fairenc::theory
