#pragma once

// Test-side reference implementations. Each is written independently of the
// library code it checks: brute force, textbook formulas or a generic solver.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <vector>

namespace oracle {

// All positive/negative pairs. Returns 2U / (2 P N).
inline double auc_pairs(const std::vector<double>& s, const std::vector<std::uint8_t>& y) {
  std::int64_t u2 = 0, pos = 0, neg = 0;
  for (std::size_t i = 0; i < s.size(); ++i) (y[i] ? pos : neg) += 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!y[i]) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j]) continue;
      if (s[i] > s[j]) u2 += 2;
      else if (s[i] == s[j]) u2 += 1;
    }
  }
  return static_cast<double>(u2) / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

// Min-cost transportation between two empirical distributions, solved as an
// integral min-cost flow (successive shortest paths, Bellman-Ford). Masses
// are scaled to integers: each of the na samples of `a` supplies nb units,
// each of the nb samples of `b` demands na units.
inline double wasserstein_transport(const std::vector<double>& a, const std::vector<double>& b) {
  std::map<double, std::int64_t> sa, sb;
  for (double v : a) sa[v] += static_cast<std::int64_t>(b.size());
  for (double v : b) sb[v] += static_cast<std::int64_t>(a.size());
  std::vector<double> xa, xb;
  std::vector<std::int64_t> supply, demand;
  for (auto [v, c] : sa) xa.push_back(v), supply.push_back(c);
  for (auto [v, c] : sb) xb.push_back(v), demand.push_back(c);

  // Nodes: 0 source, 1..A supplies, A+1..A+B demands, A+B+1 sink.
  const int A = static_cast<int>(xa.size()), B = static_cast<int>(xb.size());
  const int src = 0, sink = A + B + 1, nodes = A + B + 2;
  struct Edge {
    int to;
    std::int64_t cap;
    double cost;
    int rev;
  };
  std::vector<std::vector<Edge>> g(static_cast<std::size_t>(nodes));
  auto add = [&](int u, int v, std::int64_t cap, double cost) {
    g[u].push_back({v, cap, cost, static_cast<int>(g[v].size())});
    g[v].push_back({u, 0, -cost, static_cast<int>(g[u].size()) - 1});
  };
  for (int i = 0; i < A; ++i) add(src, 1 + i, supply[i], 0.0);
  for (int j = 0; j < B; ++j) add(1 + A + j, sink, demand[j], 0.0);
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  for (int i = 0; i < A; ++i) {
    for (int j = 0; j < B; ++j) add(1 + i, 1 + A + j, inf, std::abs(xa[i] - xb[j]));
  }

  double total_cost = 0.0;
  for (;;) {
    std::vector<double> dist(static_cast<std::size_t>(nodes), std::numeric_limits<double>::infinity());
    std::vector<int> prev_node(static_cast<std::size_t>(nodes), -1), prev_edge(static_cast<std::size_t>(nodes), -1);
    dist[src] = 0.0;
    for (int round = 0; round < nodes; ++round) {
      bool changed = false;
      for (int u = 0; u < nodes; ++u) {
        if (std::isinf(dist[u])) continue;
        for (int k = 0; k < static_cast<int>(g[u].size()); ++k) {
          const auto& e = g[u][k];
          if (e.cap > 0 && dist[u] + e.cost < dist[e.to] - 1e-15) {
            dist[e.to] = dist[u] + e.cost;
            prev_node[e.to] = u;
            prev_edge[e.to] = k;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (std::isinf(dist[sink])) break;
    std::int64_t push = inf;
    for (int v = sink; v != src; v = prev_node[v]) push = std::min(push, g[prev_node[v]][prev_edge[v]].cap);
    for (int v = sink; v != src; v = prev_node[v]) {
      auto& e = g[prev_node[v]][prev_edge[v]];
      e.cap -= push;
      g[v][e.rev].cap += push;
      total_cost += static_cast<double>(push) * e.cost;
    }
  }
  return total_cost / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

// lambda * mean + (1 - lambda) * prior, evaluated in long double.
inline long double smoothed(long double n_i, long double n_pos, long double prior, long double m) {
  if (n_i == 0) return prior;
  const long double lambda = n_i / (n_i + m);
  return lambda * (n_pos / n_i) + (1 - lambda) * prior;
}

// Mean log-loss + (l2/2)|w|^2 for a row-major design, long double.
inline long double logloss(const std::vector<std::vector<double>>& rows,
                           const std::vector<std::uint8_t>& y, const std::vector<long double>& w,
                           long double b, long double l2) {
  long double acc = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    long double z = b;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * rows[i][j];
    const long double p = 1 / (1 + std::exp(-z));
    acc -= y[i] ? std::log(p) : std::log(1 - p);
  }
  long double reg = 0;
  for (auto v : w) reg += v * v;
  return acc / static_cast<long double>(rows.size()) + 0.5L * l2 * reg;
}

// Per-row recount of a thresholded confusion matrix.
struct Counts {
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
};
inline Counts recount(const std::vector<double>& s, const std::vector<std::uint8_t>& y, double t) {
  Counts c;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool pred = s[i] >= t;
    if (pred && y[i]) ++c.tp;
    if (pred && !y[i]) ++c.fp;
    if (!pred && !y[i]) ++c.tn;
    if (!pred && y[i]) ++c.fn;
  }
  return c;
}

// Sample variance of n_pos/n over `draws` binomial(n, p) draws.
inline double binomial_mean_variance(double p, int n, int draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::binomial_distribution<int> bin(n, p);
  double sum = 0, sum2 = 0;
  for (int k = 0; k < draws; ++k) {
    const double v = static_cast<double>(bin(rng)) / n;
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / draws;
  return (sum2 - draws * mean * mean) / (draws - 1);
}

// TPR_1 - TPR_2 of a classifier predicting + with probability p_i, drawn as
// positives ~ Bin(n, p_i) then hits ~ Bin(positives, p_i).
inline double randomized_eof_sim(double p1, double p2, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto tpr = [&](double p) {
    const int pos = std::binomial_distribution<int>(n, p)(rng);
    const int hit = std::binomial_distribution<int>(pos, p)(rng);
    return static_cast<double>(hit) / pos;
  };
  const double t1 = tpr(p1);
  return t1 - tpr(p2);
}

}  // namespace oracle
