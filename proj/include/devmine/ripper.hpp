#pragma once

// RIPPER for two classes (class 1 is the target): FOIL-gain rule growing,
// reduced-error pruning, MDL-bounded rule building and k optimization rounds.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "devmine/rules.hpp"

namespace devmine {

struct RipperParams {
  std::size_t k = 2;              // optimization rounds
  double prune_fraction = 1.0 / 3.0;
  double dl_budget_bits = 64.0;
  std::uint64_t seed = 1;
};

/// p * (log2(p/t) - log2(P/T)); zero when p = 0.
inline double foil_gain(double p, double t, double P, double T) {
  if (t <= 0 || T <= 0) throw Error("foil_gain: t and T must be positive");
  if (p < 0 || p > t || P > T) throw Error("foil_gain: expects p <= t and P <= T");
  if (p == 0) return 0.0;
  if (P <= 0) throw Error("foil_gain: P must be positive when p > 0");
  return p * (std::log2(p / t) - std::log2(P / T));
}

/// Pruning metric (p - n) / (p + n); -1 when the rule covers nothing.
inline double prune_value(std::size_t p, std::size_t n) {
  if (p + n == 0) return -1.0;
  return (static_cast<double>(p) - static_cast<double>(n)) / static_cast<double>(p + n);
}

namespace detail {

inline void coverage(const FeatureMatrix& m, const std::vector<std::size_t>& idx, const Rule& r, std::size_t& p,
                     std::size_t& n) {
  p = n = 0;
  for (auto i : idx) {
    if (r.matches(m.rows[i])) (m.labels[i] ? p : n) += 1;
  }
}

}  // namespace detail

struct GrowResult {
  Rule rule;
  bool degenerate = false;  // no literal ever had positive gain
};

/// Appends the literal of highest FOIL gain until the rule covers no negative
/// of `grow` or no literal gains. Candidate literals are `<= t` / `> t` at
/// midpoints between consecutive distinct values of the covered rows
/// (`= 0` / `= 1` on indicator columns). Ties: lowest feature, lowest
/// threshold, `<=` before `>`.
inline GrowResult grow_rule(const FeatureMatrix& m, const std::vector<std::size_t>& grow, Rule start = {}) {
  constexpr double eps = 1e-12;
  GrowResult out;
  out.rule = std::move(start);
  out.rule.predicted = 1;
  std::vector<std::size_t> covered;
  for (auto i : grow) {
    if (out.rule.matches(m.rows[i])) covered.push_back(i);
  }
  bool added_any = false;
  for (;;) {
    double P = 0, N = 0;
    for (auto i : covered) (m.labels[i] ? P : N) += 1;
    if (N == 0 || P == 0) break;
    const double T = P + N;
    bool found = false;
    double best_gain = 0;
    AtomicCondition best{};
    std::vector<std::size_t> order(covered);
    for (std::size_t j = 0; j < m.col_count(); ++j) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return m.rows[a][j] < m.rows[b][j]; });
      double lp = 0, lt = 0;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        lp += m.labels[order[k]];
        lt += 1;
        const double v = m.rows[order[k]][j], next = m.rows[order[k + 1]][j];
        if (v == next) continue;
        const double t = v + (next - v) / 2.0;
        const double g_le = foil_gain(lp, lt, P, T);
        const double g_gt = foil_gain(P - lp, T - lt, P, T);
        if (g_le > eps && (!found || g_le > best_gain + eps)) {
          found = true;
          best_gain = g_le;
          best = make_condition(j, true, t, m.columns[j].kind);
        }
        if (g_gt > eps && (!found || g_gt > best_gain + eps)) {
          found = true;
          best_gain = g_gt;
          best = make_condition(j, false, t, m.columns[j].kind);
        }
      }
    }
    if (!found) break;
    out.rule.conditions.push_back(best);
    added_any = true;
    std::vector<std::size_t> next;
    for (auto i : covered) {
      if (best.holds(m.rows[i])) next.push_back(i);
    }
    covered.swap(next);
  }
  out.degenerate = !added_any && out.rule.conditions.empty();
  detail::coverage(m, grow, out.rule, out.rule.p, out.rule.n);
  return out;
}

struct PruneResult {
  Rule rule;
  std::vector<double> values;  // V on the prune set after each accepted step, starting with the full rule
};

/// Reduced-error pruning: replaces the rule by its prefix of highest V on
/// `prune` while that strictly improves V. Equal V keeps the longer prefix.
inline PruneResult prune_rule(const FeatureMatrix& m, const std::vector<std::size_t>& prune, const Rule& rule) {
  PruneResult out;
  out.rule = rule;
  std::size_t p, n;
  detail::coverage(m, prune, out.rule, p, n);
  double current = prune_value(p, n);
  out.values.push_back(current);
  for (;;) {
    double best_v = current;
    std::size_t best_len = out.rule.conditions.size();
    Rule probe = out.rule;
    for (std::size_t len = out.rule.conditions.size(); len-- > 0;) {
      probe.conditions.resize(len);
      detail::coverage(m, prune, probe, p, n);
      const double v = prune_value(p, n);
      if (v > best_v) {
        best_v = v;
        best_len = len;
      }
    }
    if (best_len == out.rule.conditions.size()) break;
    out.rule.conditions.resize(best_len);
    current = best_v;
    out.values.push_back(current);
  }
  return out;
}

// ---- description length ----------------------------------------------------

namespace detail {

inline double log2_binomial(double n, double k) {
  if (k <= 0 || k >= n) return 0.0;
  return (std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1)) / std::log(2.0);
}

/// Bits to pick k of t items when each is included with probability p.
inline double subset_dl(double t, double k, double p) {
  double bits = 0;
  if (k > 0) bits -= k * std::log2(p);
  if (t - k > 0) bits -= (t - k) * std::log2(1 - p);
  return bits;
}

}  // namespace detail

/// Number of distinct candidate literals the data offers: two per midpoint
/// threshold on continuous columns, two per indicator column with both values.
inline double candidate_literal_count(const FeatureMatrix& m) {
  double total = 0;
  for (std::size_t j = 0; j < m.col_count(); ++j) {
    auto col = m.column(j);
    std::sort(col.begin(), col.end());
    const auto distinct = static_cast<double>(std::unique(col.begin(), col.end()) - col.begin());
    if (distinct > 1) total += m.columns[j].kind == ColumnKind::Indicator ? 2.0 : 2.0 * (distinct - 1);
  }
  return total;
}

/// Bits for one rule of k literals among L candidates, with the customary
/// 50% discount: 0.5 * (||k|| + subsetDL(L, k, k/L)).
inline double rule_bits(std::size_t k, double literal_count) {
  const double kd = static_cast<double>(k);
  double kbits = 0;
  if (k > 0) {
    kbits = std::log2(kd);
    if (k > 1) kbits += 2 * std::log2(kbits);
  }
  const double L = std::max(literal_count, kd);
  const double p = L > 0 ? kd / L : 0.0;
  return 0.5 * (kbits + detail::subset_dl(L, kd, p));
}

/// log2 C(covered, fp) + log2 C(uncovered, fn).
inline double exception_bits(std::size_t covered, std::size_t uncovered, std::size_t fp, std::size_t fn) {
  return detail::log2_binomial(static_cast<double>(covered), static_cast<double>(fp)) +
         detail::log2_binomial(static_cast<double>(uncovered), static_cast<double>(fn));
}

/// Rule bits plus exception bits of the rule set on the given rows.
inline double description_length(const std::vector<Rule>& rules, const FeatureMatrix& m,
                                 const std::vector<std::size_t>& idx, double literal_count) {
  double bits = 0;
  for (const auto& r : rules) bits += rule_bits(r.length(), literal_count);
  std::size_t covered = 0, fp = 0, fn = 0;
  for (auto i : idx) {
    bool hit = false;
    for (const auto& r : rules) {
      if (r.matches(m.rows[i])) {
        hit = true;
        break;
      }
    }
    if (hit) {
      ++covered;
      fp += m.labels[i] == 0;
    } else {
      fn += m.labels[i] == 1;
    }
  }
  return bits + exception_bits(covered, idx.size() - covered, fp, fn);
}

inline double description_length(const RuleSet& rs, const FeatureMatrix& m) {
  std::vector<std::size_t> all(m.row_count());
  std::iota(all.begin(), all.end(), 0);
  return description_length(rs.rules, m, all, candidate_literal_count(m));
}

// ---- training --------------------------------------------------------------

namespace detail {

/// Seeded per-class shuffle, then the first (1 - prune_fraction) of each class
/// goes to the grow set.
inline void split_grow_prune(const FeatureMatrix& m, const std::vector<std::size_t>& idx, double prune_fraction,
                             Rng& rng, std::vector<std::size_t>& grow, std::vector<std::size_t>& prune) {
  grow.clear();
  prune.clear();
  for (int cls : {1, 0}) {
    std::vector<std::size_t> part;
    for (auto i : idx) {
      if (m.labels[i] == cls) part.push_back(i);
    }
    rng.shuffle(part);
    const auto n_grow = static_cast<std::size_t>(std::llround(static_cast<double>(part.size()) * (1.0 - prune_fraction)));
    for (std::size_t k = 0; k < part.size(); ++k) (k < n_grow ? grow : prune).push_back(part[k]);
  }
  std::sort(grow.begin(), grow.end());
  std::sort(prune.begin(), prune.end());
}

inline std::size_t ruleset_errors(const std::vector<Rule>& rules, const FeatureMatrix& m,
                                  const std::vector<std::size_t>& idx) {
  std::size_t err = 0;
  for (auto i : idx) {
    bool hit = false;
    for (const auto& r : rules) {
      if (r.matches(m.rows[i])) {
        hit = true;
        break;
      }
    }
    err += (hit ? 1 : 0) != m.labels[i];
  }
  return err;
}

/// Prefix of `rules[slot]` minimizing the whole rule set's error on `prune`;
/// ties keep the longer prefix.
inline Rule prune_for_ruleset(const FeatureMatrix& m, const std::vector<std::size_t>& prune, std::vector<Rule> rules,
                              std::size_t slot) {
  const Rule full = rules[slot];
  Rule best = full;
  std::size_t best_err = ruleset_errors(rules, m, prune);
  for (std::size_t len = full.conditions.size(); len-- > 0;) {
    rules[slot].conditions.assign(full.conditions.begin(), full.conditions.begin() + static_cast<long>(len));
    const std::size_t err = ruleset_errors(rules, m, prune);
    if (err < best_err) {
      best_err = err;
      best = rules[slot];
    }
  }
  return best;
}

inline std::vector<std::size_t> uncovered_by(const std::vector<Rule>& rules, const FeatureMatrix& m,
                                             const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> out;
  for (auto i : idx) {
    bool hit = false;
    for (const auto& r : rules) {
      if (r.matches(m.rows[i])) {
        hit = true;
        break;
      }
    }
    if (!hit) out.push_back(i);
  }
  return out;
}

inline bool has_positive(const FeatureMatrix& m, const std::vector<std::size_t>& idx) {
  return std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return m.labels[i] == 1; });
}

/// IREP* building loop on `remaining`, appending to `rules`.
inline void build_rules(const FeatureMatrix& m, const std::vector<std::size_t>& all, std::vector<std::size_t> remaining,
                        std::vector<Rule>& rules, const RipperParams& h, double literals, Rng& rng) {
  double min_dl = description_length(rules, m, all, literals);
  std::vector<std::size_t> grow, prune;
  while (has_positive(m, remaining)) {
    split_grow_prune(m, remaining, h.prune_fraction, rng, grow, prune);
    if (!has_positive(m, grow)) grow = remaining;
    GrowResult g = grow_rule(m, grow);
    Rule r = prune.empty() ? g.rule : prune_rule(m, prune, g.rule).rule;
    std::size_t p, n;
    coverage(m, remaining, r, p, n);
    if (p == 0) break;
    std::size_t pp, pn;
    coverage(m, prune, r, pp, pn);
    if (pp + pn == 0) {
      pp = p;
      pn = n;
    }
    if (static_cast<double>(pp) / static_cast<double>(pp + pn) < 0.5) break;
    rules.push_back(r);
    const double dl = description_length(rules, m, all, literals);
    if (dl > min_dl + h.dl_budget_bits) {
      rules.pop_back();
      break;
    }
    min_dl = std::min(min_dl, dl);
    remaining = uncovered_by({r}, m, remaining);
  }
}

}  // namespace detail

/// Trains a rule set for class 1; rows matched by no rule get class 0.
inline RuleSet ripper_train(const FeatureMatrix& m, const RipperParams& h = {}) {
  m.validate();
  RuleSet rs;
  std::vector<std::size_t> all(m.row_count());
  std::iota(all.begin(), all.end(), 0);
  if (!detail::has_positive(m, all)) {
    rs.restat(m);
    return rs;
  }
  Rng rng(h.seed);
  const double literals = candidate_literal_count(m);
  std::vector<Rule> rules;
  detail::build_rules(m, all, all, rules, h, literals, rng);

  std::vector<std::size_t> grow, prune;
  for (std::size_t round = 0; round < h.k; ++round) {
    for (std::size_t slot = 0; slot < rules.size(); ++slot) {
      const std::vector<Rule> before(rules.begin(), rules.begin() + static_cast<long>(slot));
      const auto data = detail::uncovered_by(before, m, all);
      if (!detail::has_positive(m, data)) continue;
      detail::split_grow_prune(m, data, h.prune_fraction, rng, grow, prune);
      if (!detail::has_positive(m, grow)) continue;

      std::vector<Rule> variant = rules;
      variant[slot] = grow_rule(m, grow).rule;
      const Rule replacement = prune.empty() ? variant[slot] : detail::prune_for_ruleset(m, prune, variant, slot);
      variant[slot] = grow_rule(m, grow, rules[slot]).rule;
      const Rule revision = prune.empty() ? variant[slot] : detail::prune_for_ruleset(m, prune, variant, slot);

      double best_dl = description_length(rules, m, all, literals);
      for (const Rule* cand : {&replacement, &revision}) {
        variant = rules;
        variant[slot] = *cand;
        const double dl = description_length(variant, m, all, literals);
        if (dl < best_dl - 1e-9) {
          best_dl = dl;
          rules[slot] = *cand;
        }
      }
    }
    detail::build_rules(m, all, detail::uncovered_by(rules, m, all), rules, h, literals, rng);
  }

  // Drop rules whose removal lowers the description length, last first.
  for (std::size_t slot = rules.size(); slot-- > 0;) {
    std::vector<Rule> without = rules;
    without.erase(without.begin() + static_cast<long>(slot));
    if (description_length(without, m, all, literals) < description_length(rules, m, all, literals) - 1e-9) {
      rules = std::move(without);
    }
  }
  rs.rules = std::move(rules);
  for (auto& r : rs.rules) r.predicted = 1;
  rs.restat(m);
  return rs;
}

}  // namespace devmine
