#include <algorithm>
#include <numeric>

#include "fairenc/error.hpp"
#include "fairenc/models.hpp"

namespace fairenc {

const TreeNode& Tree::leaf_for(const EncodedMatrix& x, std::size_t row) const {
  const TreeNode* node = &nodes.front();
  while (!node->is_leaf()) {
    node = &nodes[x.at(row, static_cast<std::size_t>(node->feature)) <= node->threshold
                      ? node->left
                      : node->right];
  }
  return *node;
}

std::size_t Tree::num_leaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

namespace tree {

Presorted::Presorted(const EncodedMatrix& x) : x_(&x) {
  const auto n = x.rows();
  order_.resize(n * x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    auto* begin = order_.data() + j * n;
    std::iota(begin, begin + n, 0u);
    const auto col = x.column(j);
    std::stable_sort(begin, begin + n,
                     [&](std::uint32_t a, std::uint32_t b) { return col[a] < col[b]; });
  }
}

std::span<const std::uint32_t> Presorted::order(std::size_t feature) const {
  const auto n = x_->rows();
  return {order_.data() + feature * n, n};
}

namespace {

struct Moments {
  std::int64_t n = 0;
  double sum = 0.0;
  double sumsq = 0.0;

  void add(double t) {
    ++n;
    sum += t;
    sumsq += t * t;
  }
  Moments minus(const Moments& o) const { return {n - o.n, sum - o.sum, sumsq - o.sumsq}; }
};

// Impurity weighted by node size, so children can be summed.
double weighted_impurity(const Moments& m, Criterion criterion) {
  if (m.n == 0) return 0.0;
  const double n = static_cast<double>(m.n);
  if (criterion == Criterion::kGini) {
    const double p = m.sum / n;
    return n * (1.0 - p * p - (1.0 - p) * (1.0 - p));
  }
  return std::max(0.0, m.sumsq - m.sum * m.sum / n);
}

double midpoint(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  return mid < hi ? mid : lo;
}

struct Candidate {
  double impurity = 0.0;
  int feature = -1;
  double threshold = 0.0;
};

struct ScanState {
  Moments left;
  double last = 0.0;
  bool has_last = false;
};

}  // namespace

GrowResult grow(const Presorted& sorted, std::span<const double> target, Criterion criterion,
                int max_depth, int min_leaf) {
  const auto& x = sorted.matrix();
  const auto n = x.rows();
  if (target.size() != n) throw Error(ErrorKind::kWidthMismatch, "target and rows differ");
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "empty training matrix");
  if (max_depth < 0 || min_leaf < 1) {
    throw Error(ErrorKind::kInvalidArgument, "max_depth >= 0 and min_leaf >= 1 required");
  }

  GrowResult out;
  out.leaf_of_row.assign(n, 0);
  std::vector<Moments> stats(1);
  for (double t : target) stats[0].add(t);
  out.tree.nodes.emplace_back();

  auto splittable = [&](int node) {
    const auto& m = stats[static_cast<std::size_t>(node)];
    return m.n >= 2 * static_cast<std::int64_t>(min_leaf) && weighted_impurity(m, criterion) > 0.0;
  };

  std::vector<int> frontier;
  if (max_depth > 0 && splittable(0)) frontier.push_back(0);

  for (int depth = 0; depth < max_depth && !frontier.empty(); ++depth) {
    std::vector<char> active(out.tree.nodes.size(), 0);
    std::vector<Candidate> best(out.tree.nodes.size());
    for (int k : frontier) {
      active[static_cast<std::size_t>(k)] = 1;
      const double parent = weighted_impurity(stats[static_cast<std::size_t>(k)], criterion);
      best[static_cast<std::size_t>(k)].impurity = parent - 1e-12 * std::max(1.0, parent);
    }

    std::vector<ScanState> scan(out.tree.nodes.size());
    for (std::size_t j = 0; j < x.cols(); ++j) {
      for (int k : frontier) scan[static_cast<std::size_t>(k)] = ScanState{};
      const auto col = x.column(j);
      for (std::uint32_t i : sorted.order(j)) {
        const auto k = static_cast<std::size_t>(out.leaf_of_row[i]);
        if (!active[k]) continue;
        auto& st = scan[k];
        const double v = col[i];
        if (st.has_last && v > st.last && st.left.n >= min_leaf) {
          const Moments right = stats[k].minus(st.left);
          if (right.n >= min_leaf) {
            const double imp =
                weighted_impurity(st.left, criterion) + weighted_impurity(right, criterion);
            if (imp < best[k].impurity) {
              best[k] = Candidate{imp, static_cast<int>(j), midpoint(st.last, v)};
            }
          }
        }
        st.left.add(target[i]);
        st.last = v;
        st.has_last = true;
      }
    }

    std::vector<int> next;
    for (int k : frontier) {
      const auto& cand = best[static_cast<std::size_t>(k)];
      if (cand.feature < 0) continue;
      const int left = static_cast<int>(out.tree.nodes.size());
      out.tree.nodes.emplace_back();
      out.tree.nodes.emplace_back();
      stats.resize(out.tree.nodes.size());
      auto& node = out.tree.nodes[static_cast<std::size_t>(k)];
      node.feature = cand.feature;
      node.threshold = cand.threshold;
      node.left = left;
      node.right = left + 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& node = out.tree.nodes[static_cast<std::size_t>(out.leaf_of_row[i])];
      if (node.is_leaf()) continue;
      const int child =
          x.at(i, static_cast<std::size_t>(node.feature)) <= node.threshold ? node.left : node.right;
      out.leaf_of_row[i] = child;
      stats[static_cast<std::size_t>(child)].add(target[i]);
    }
    for (int k : frontier) {
      const auto& node = out.tree.nodes[static_cast<std::size_t>(k)];
      if (node.is_leaf()) continue;
      if (splittable(node.left)) next.push_back(node.left);
      if (splittable(node.right)) next.push_back(node.right);
    }
    frontier = std::move(next);
  }

  for (std::size_t k = 0; k < out.tree.nodes.size(); ++k) out.tree.nodes[k].n = stats[k].n;
  return out;
}

Tree fit_cart(const EncodedMatrix& x, std::span<const std::uint8_t> y, const TreeConfig& config) {
  if (x.rows() != y.size()) throw Error(ErrorKind::kWidthMismatch, "rows and labels differ");
  std::vector<double> target(y.begin(), y.end());
  Presorted sorted(x);
  auto grown = grow(sorted, target, Criterion::kGini, config.max_depth, config.min_leaf);

  // Recount positives for every node along each row's path.
  auto& nodes = grown.tree.nodes;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!y[i]) continue;
    int k = 0;
    while (true) {
      auto& node = nodes[static_cast<std::size_t>(k)];
      ++node.n_pos;
      if (node.is_leaf()) break;
      k = x.at(i, static_cast<std::size_t>(node.feature)) <= node.threshold ? node.left : node.right;
    }
  }
  for (auto& node : nodes) {
    node.value = node.n > 0 ? static_cast<double>(node.n_pos) / static_cast<double>(node.n) : 0.0;
  }
  return std::move(grown.tree);
}

}  // namespace tree
}  // namespace fairenc
