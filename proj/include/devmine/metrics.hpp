#pragma once

// Stratified folds and classification metrics.

#include <algorithm>
#include <numeric>
#include <vector>

#include "devmine/rules.hpp"

namespace devmine {

/// k disjoint, sorted index lists. Each class is shuffled with the seed and
/// dealt round-robin; negatives continue where the positives stopped so fold
/// sizes stay within one of each other.
inline std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<int>& labels, std::size_t k,
                                                              std::uint64_t seed) {
  if (k < 2) throw ConfigError("folds must be >= 2");
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == 1 ? pos : neg).push_back(i);
  if (pos.size() < k || neg.size() < k) {
    throw DegenerateLabelingError("stratified_folds: each class needs at least " + std::to_string(k) + " traces (" +
                                  std::to_string(pos.size()) + " deviant, " + std::to_string(neg.size()) + " normal)");
  }
  Rng rng(seed);
  rng.shuffle(pos);
  rng.shuffle(neg);
  std::vector<std::vector<std::size_t>> folds(k);
  for (std::size_t i = 0; i < pos.size(); ++i) folds[i % k].push_back(pos[i]);
  const std::size_t offset = pos.size() % k;
  for (std::size_t i = 0; i < neg.size(); ++i) folds[(i + offset) % k].push_back(neg[i]);
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

/// Indices of all folds except `held_out`, sorted.
inline std::vector<std::size_t> training_indices(const std::vector<std::vector<std::size_t>>& folds,
                                                 std::size_t held_out) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    if (f != held_out) out.insert(out.end(), folds[f].begin(), folds[f].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// P(score+ > score-) + 0.5 P(score+ = score-), by ranking with tie groups.
inline double auc(const std::vector<int>& labels, const std::vector<double>& scores) {
  if (labels.size() != scores.size()) throw Error("auc: length mismatch");
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double npos = 0, nneg = 0, wins = 0;
  double neg_below = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    double gpos = 0, gneg = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] == 1 ? gpos : gneg) += 1;
      ++j;
    }
    wins += gpos * neg_below + 0.5 * gpos * gneg;
    neg_below += gneg;
    npos += gpos;
    nneg += gneg;
    i = j;
  }
  if (npos == 0 || nneg == 0) throw DegenerateLabelingError("auc needs both classes");
  return wins / (npos * nneg);
}

struct Metrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double auc = 0;
};

/// Precision is 0 without positive predictions, recall 0 without positives,
/// F1 0 when precision + recall is 0.
inline Metrics compute_metrics(const std::vector<int>& labels, const std::vector<int>& predictions,
                               const std::vector<double>& scores) {
  if (labels.size() != predictions.size() || labels.size() != scores.size()) {
    throw Error("compute_metrics: length mismatch");
  }
  double tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predictions[i] == 1 && labels[i] == 1) ++tp;
    if (predictions[i] == 1 && labels[i] == 0) ++fp;
    if (predictions[i] == 0 && labels[i] == 1) ++fn;
  }
  Metrics m;
  m.precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  m.auc = auc(labels, scores);
  return m;
}

struct RuleStats {
  std::size_t count = 0;
  double avg_length = 0;
};

/// Number of non-default rules and their mean condition count.
inline RuleStats rule_stats(const RuleSet& rs) {
  RuleStats s;
  s.count = rs.rules.size();
  if (s.count == 0) return s;
  double total = 0;
  for (const auto& r : rs.rules) total += static_cast<double>(r.length());
  s.avg_length = total / static_cast<double>(s.count);
  return s;
}

}  // namespace devmine
