#pragma once

// CART-style binary decision tree (Gini or information gain) and extraction
// of deviant-leaf rules.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "devmine/rules.hpp"

namespace devmine {

enum class SplitCriterion { Gini, InfoGain };

struct TreeParams {
  std::size_t max_depth = 0;  // 0 = unlimited
  std::size_t min_leaf = 1;
  SplitCriterion criterion = SplitCriterion::Gini;
};

struct TreeNode {
  bool leaf = true;
  std::size_t feature = 0;
  double threshold = 0.0;  // left: value <= threshold
  int left = -1;
  int right = -1;
  std::size_t count0 = 0;
  std::size_t count1 = 0;
  std::size_t depth = 0;

  int predicted() const { return count1 > count0 ? 1 : 0; }
  double positive_fraction() const {
    const std::size_t n = count0 + count1;
    return n ? static_cast<double>(count1) / static_cast<double>(n) : 0.0;
  }
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  const TreeNode& leaf_for(const std::vector<double>& row) const {
    std::size_t i = 0;
    while (!nodes[i].leaf) {
      i = static_cast<std::size_t>(row[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left : nodes[i].right);
    }
    return nodes[i];
  }
  int predict(const std::vector<double>& row) const { return leaf_for(row).predicted(); }
  double score(const std::vector<double>& row) const { return leaf_for(row).positive_fraction(); }

  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& n : nodes) d = std::max(d, n.depth);
    return d;
  }
  std::size_t leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.leaf; }));
  }
};

namespace detail {

inline double impurity(double c0, double c1, SplitCriterion crit) {
  const double n = c0 + c1;
  if (n <= 0) return 0.0;
  const double p0 = c0 / n, p1 = c1 / n;
  if (crit == SplitCriterion::Gini) return 1.0 - p0 * p0 - p1 * p1;
  double h = 0.0;
  if (p0 > 0) h -= p0 * std::log2(p0);
  if (p1 > 0) h -= p1 * std::log2(p1);
  return h;
}

struct Split {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

inline Split best_split(const FeatureMatrix& m, const std::vector<std::size_t>& idx, const TreeParams& h) {
  constexpr double eps = 1e-12;
  Split best;
  double c0 = 0, c1 = 0;
  for (auto i : idx) (m.labels[i] ? c1 : c0) += 1;
  const double n = c0 + c1;
  const double parent = impurity(c0, c1, h.criterion);
  std::vector<std::size_t> order(idx);
  for (std::size_t j = 0; j < m.col_count(); ++j) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return m.rows[a][j] < m.rows[b][j]; });
    double l0 = 0, l1 = 0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      (m.labels[order[k]] ? l1 : l0) += 1;
      const double v = m.rows[order[k]][j], next = m.rows[order[k + 1]][j];
      if (v == next) continue;
      const double nl = l0 + l1, nr = n - nl;
      if (nl < static_cast<double>(h.min_leaf) || nr < static_cast<double>(h.min_leaf)) continue;
      const double child = (nl * impurity(l0, l1, h.criterion) + nr * impurity(c0 - l0, c1 - l1, h.criterion)) / n;
      const double gain = parent - child;
      const double t = v + (next - v) / 2.0;
      // strictly better gain wins; equal gain keeps the earlier (lower feature, lower threshold)
      if (!best.found || gain > best.gain + eps) best = {true, j, t, gain};
    }
  }
  return best;
}

}  // namespace detail

/// Greedy top-down induction. A node becomes a leaf when it is pure, at
/// max_depth, or when no split leaves min_leaf rows on both sides.
/// Zero-gain splits are taken when they are the best available.
inline DecisionTree train_tree(const FeatureMatrix& m, const TreeParams& h = {}) {
  if (m.row_count() == 0) throw Error("train_tree: empty matrix");
  if (h.min_leaf < 1) throw ConfigError("train_tree: min_leaf must be >= 1");
  DecisionTree tree;
  struct Pending {
    std::size_t node;
    std::vector<std::size_t> idx;
  };
  std::vector<std::size_t> all(m.row_count());
  std::iota(all.begin(), all.end(), 0);
  tree.nodes.push_back({});
  std::vector<Pending> stack;
  stack.push_back({0, std::move(all)});
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    TreeNode& node = tree.nodes[cur.node];
    for (auto i : cur.idx) (m.labels[i] ? node.count1 : node.count0) += 1;
    const bool pure = node.count0 == 0 || node.count1 == 0;
    const bool depth_cap = h.max_depth > 0 && node.depth >= h.max_depth;
    if (pure || depth_cap || cur.idx.size() < 2 * h.min_leaf) continue;
    const auto split = detail::best_split(m, cur.idx, h);
    if (!split.found) continue;
    std::vector<std::size_t> li, ri;
    for (auto i : cur.idx) (m.rows[i][split.feature] <= split.threshold ? li : ri).push_back(i);
    const std::size_t depth = node.depth;
    const int left = static_cast<int>(tree.nodes.size());
    const int right = left + 1;
    tree.nodes[cur.node].leaf = false;
    tree.nodes[cur.node].feature = split.feature;
    tree.nodes[cur.node].threshold = split.threshold;
    tree.nodes[cur.node].left = left;
    tree.nodes[cur.node].right = right;
    TreeNode child;
    child.depth = depth + 1;
    tree.nodes.push_back(child);
    tree.nodes.push_back(child);
    stack.push_back({static_cast<std::size_t>(right), std::move(ri)});
    stack.push_back({static_cast<std::size_t>(left), std::move(li)});
  }
  return tree;
}

namespace detail {

// Per-feature merge of the conditions on one root-to-leaf path.
inline std::vector<AtomicCondition> simplify_path(const std::vector<AtomicCondition>& path) {
  struct Bounds {
    bool has_le = false, has_gt = false;
    double le = 0, gt = 0;
    std::vector<AtomicCondition> eq;
  };
  std::vector<std::size_t> order;
  std::map<std::size_t, Bounds> by_feature;
  for (const auto& c : path) {
    auto [it, fresh] = by_feature.try_emplace(c.feature);
    if (fresh) order.push_back(c.feature);
    Bounds& b = it->second;
    if (c.op == RuleOp::Le) {
      b.le = b.has_le ? std::min(b.le, c.threshold) : c.threshold;
      b.has_le = true;
    } else if (c.op == RuleOp::Gt) {
      b.gt = b.has_gt ? std::max(b.gt, c.threshold) : c.threshold;
      b.has_gt = true;
    } else if (std::find(b.eq.begin(), b.eq.end(), c) == b.eq.end()) {
      b.eq.push_back(c);
    }
  }
  std::vector<AtomicCondition> out;
  for (auto f : order) {
    const Bounds& b = by_feature[f];
    if (b.has_le) out.push_back({f, RuleOp::Le, b.le});
    if (b.has_gt) out.push_back({f, RuleOp::Gt, b.gt});
    out.insert(out.end(), b.eq.begin(), b.eq.end());
  }
  return out;
}

}  // namespace detail

/// One rule per deviant leaf: the conjunction of its path conditions, merged
/// per feature. Rule p/n are the leaf's training counts; the default rule
/// carries the counts of the non-deviant leaves.
inline RuleSet extract_rules(const DecisionTree& t, const std::vector<Column>& columns) {
  RuleSet rs;
  struct Frame {
    std::size_t node;
    std::vector<AtomicCondition> path;
  };
  std::vector<Frame> stack{{0, {}}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const TreeNode& n = t.nodes[f.node];
    if (n.leaf) {
      if (n.predicted() == 1) {
        Rule r;
        r.conditions = detail::simplify_path(f.path);
        r.p = n.count1;
        r.n = n.count0;
        rs.rules.push_back(std::move(r));
      } else {
        rs.default_pos += n.count1;
        rs.default_neg += n.count0;
      }
      continue;
    }
    const ColumnKind kind = n.feature < columns.size() ? columns[n.feature].kind : ColumnKind::Continuous;
    Frame right{static_cast<std::size_t>(n.right), f.path};
    right.path.push_back(make_condition(n.feature, false, n.threshold, kind));
    f.path.push_back(make_condition(n.feature, true, n.threshold, kind));
    stack.push_back(std::move(right));
    stack.push_back({static_cast<std::size_t>(n.left), std::move(f.path)});
  }
  return rs;
}

}  // namespace devmine
