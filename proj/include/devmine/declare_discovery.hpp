#pragma once

// Declare constraint discovery from frequent activity sets, and data-aware
// enrichment of a constraint from the payloads of its fulfilled activations.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "devmine/apriori.hpp"
#include "devmine/decision_tree.hpp"
#include "devmine/declare.hpp"
#include "devmine/log_model.hpp"

namespace devmine {

struct DiscoveryParams {
  double theta = 0.3;
  std::vector<TemplateKind> templates{kAllTemplates.begin(), kAllTemplates.end()};
  std::vector<int> existence_bounds{1, 2, 3};
  std::size_t max_set_size = 2;
};

namespace detail {

inline std::vector<Constraint> instantiate(const std::vector<std::vector<ActivitySet>>& levels,
                                           const DiscoveryParams& p) {
  std::vector<Constraint> out;
  for (auto kind : p.templates) {
    if (is_unary(kind)) {
      if (levels.empty()) continue;
      for (const auto& s : levels[0]) {
        if (kind == TemplateKind::Existence || kind == TemplateKind::Absence) {
          for (int n : p.existence_bounds) out.emplace_back(Template{kind, n}, s);
        } else {
          out.emplace_back(Template{kind, 1}, s);
        }
      }
    } else if (levels.size() >= 2) {
      for (const auto& s : levels[1]) {
        out.emplace_back(Template{kind, 1}, std::vector<std::string>{s[0], s[1]});
        out.emplace_back(Template{kind, 1}, std::vector<std::string>{s[1], s[0]});
      }
    }
  }
  return out;
}

inline double satisfied_fraction(const EventLog& log, const Constraint& c) {
  std::size_t hit = 0;
  for (const auto& t : log.traces()) hit += check(t, c).is_satisfied();
  return static_cast<double>(hit) / static_cast<double>(log.size());
}

}  // namespace detail

/// Candidates come from the frequent activity sets of each class sub-log
/// (singletons for unary templates, pairs in both orders for binary ones); a
/// candidate is kept when it is satisfied non-vacuously in a fraction >= theta
/// of its originating sub-log. Output is sorted by template, then activities.
inline std::vector<Constraint> discover_constraints(const LabeledLog& l, const DiscoveryParams& p = {}) {
  if (!(p.theta > 0.0 && p.theta <= 1.0)) throw ConfigError("theta must lie in (0, 1]");
  const ClassSplit split = split_by_label(l);
  std::set<Constraint> kept;
  for (const EventLog* sub : {&split.deviant, &split.normal}) {
    const auto levels = frequent_activity_sets(*sub, p.theta, std::max<std::size_t>(p.max_set_size, 2));
    for (auto& c : detail::instantiate(levels, p)) {
      if (kept.count(c)) continue;
      if (detail::satisfied_fraction(*sub, c) >= p.theta) kept.insert(std::move(c));
    }
  }
  return {kept.begin(), kept.end()};
}

// ---- data-aware enrichment --------------------------------------------------

struct EnrichParams {
  TreeParams tree{3, 5, SplitCriterion::Gini};
  std::size_t max_categories = 64;
};

struct EnrichResult {
  Constraint constraint;
  bool enriched = false;
  std::string reason;  // why enrichment was skipped
};

inline bool excluded_attribute(const std::string& key) {
  return key == "concept:name" || key == "time:timestamp" || key == "lifecycle:transition" || key == "label";
}

namespace detail {

struct PayloadColumn {
  std::string key;
  bool indicator = false;
  std::string value;  // indicator columns: the category
};

/// Payload rows to a feature matrix: numeric keys become one column (missing
/// values take the column minimum minus one); text keys become one indicator
/// per category, keeping the `max_categories` most frequent.
inline FeatureMatrix payload_matrix(const std::vector<AttributeMap>& payloads, const std::vector<int>& labels,
                                    std::size_t max_categories, std::vector<PayloadColumn>& cols) {
  std::map<std::string, bool> numeric;  // key -> all values numeric-like
  std::map<std::string, std::map<std::string, std::size_t>> freq;
  for (const auto& p : payloads) {
    for (const auto& [k, v] : p) {
      if (excluded_attribute(k)) continue;
      auto [it, fresh] = numeric.try_emplace(k, true);
      if (v.is_textual()) it->second = false;
      ++freq[k][v.to_string()];
    }
  }
  cols.clear();
  for (const auto& [key, is_num] : numeric) {
    if (is_num) {
      cols.push_back({key, false, {}});
      continue;
    }
    std::vector<std::pair<std::string, std::size_t>> cats(freq[key].begin(), freq[key].end());
    std::stable_sort(cats.begin(), cats.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (cats.size() > max_categories) cats.resize(max_categories);
    std::sort(cats.begin(), cats.end());
    for (const auto& [v, n] : cats) cols.push_back({key, true, v});
  }
  FeatureMatrix m;
  for (const auto& c : cols) {
    m.columns.push_back({c.indicator ? c.key + "=" + c.value : c.key,
                         c.indicator ? ColumnKind::Indicator : ColumnKind::Continuous, "payload"});
  }
  m.labels = labels;
  m.rows.assign(payloads.size(), std::vector<double>(cols.size(), 0.0));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto& c = cols[j];
    double lo = 0;
    bool any = false;
    for (std::size_t i = 0; i < payloads.size(); ++i) {
      auto it = payloads[i].find(c.key);
      if (it == payloads[i].end()) continue;
      if (c.indicator) {
        m.rows[i][j] = it->second.to_string() == c.value ? 1.0 : 0.0;
      } else {
        const double v = it->second.as_number();
        m.rows[i][j] = v;
        lo = any ? std::min(lo, v) : v;
        any = true;
      }
    }
    if (!c.indicator) {
      for (std::size_t i = 0; i < payloads.size(); ++i) {
        if (!payloads[i].count(c.key)) m.rows[i][j] = lo - 1.0;
      }
    }
  }
  return m;
}

inline Comparison to_comparison(const AtomicCondition& a, const std::vector<PayloadColumn>& cols) {
  const auto& c = cols[a.feature];
  if (c.indicator) {
    // Eq 1 -> key = value, Eq 0 -> key != value
    return {c.key, a.threshold == 1.0 ? CmpOp::Eq : CmpOp::Ne, AttributeValue::text(c.value)};
  }
  return {c.key, a.op == RuleOp::Le ? CmpOp::Le : CmpOp::Gt, AttributeValue::real(a.threshold)};
}

}  // namespace detail

/// Collects the fulfilled activations of `c` over `l`, labels each payload
/// with its trace's class, fits a small tree on the payloads, and attaches the
/// disjunction of its root-to-deviant-leaf paths as the data condition.
inline EnrichResult enrich_with_data(const Constraint& c, const LabeledLog& l, const EnrichParams& p = {}) {
  EnrichResult out{c, false, {}};
  if (!c.tmpl.has_activation()) {
    out.reason = "template has no activation";
    return out;
  }
  Constraint base = c;
  base.condition.reset();
  std::vector<AttributeMap> payloads;
  std::vector<int> labels;
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (auto& rec : activations(l.log().trace(i), base).records) {
      if (!rec.fulfilled) continue;
      payloads.push_back(std::move(rec.payload));
      labels.push_back(l.labels()[i]);
    }
  }
  const auto pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  if (pos == 0 || pos == labels.size()) {
    out.reason = "fulfilled activations are single-class";
    return out;
  }
  std::vector<detail::PayloadColumn> cols;
  const FeatureMatrix m = detail::payload_matrix(payloads, labels, p.max_categories, cols);
  if (cols.empty()) {
    out.reason = "activation payloads carry no attributes";
    return out;
  }
  const DecisionTree tree = train_tree(m, p.tree);
  if (tree.nodes.size() == 1) {
    out.reason = "no separating split";
    return out;
  }
  const RuleSet rules = extract_rules(tree, m.columns);
  if (rules.rules.empty()) {
    out.reason = "no deviant leaf";
    return out;
  }
  DataCondition cond;
  for (const auto& r : rules.rules) {
    std::vector<Comparison> conj;
    for (const auto& a : r.conditions) conj.push_back(detail::to_comparison(a, cols));
    if (conj.empty()) continue;
    if (std::find(cond.disjuncts.begin(), cond.disjuncts.end(), conj) == cond.disjuncts.end()) {
      cond.disjuncts.push_back(std::move(conj));
    }
  }
  if (cond.disjuncts.empty()) {
    out.reason = "no deviant leaf";
    return out;
  }
  out.constraint = Constraint(base.tmpl, base.activities, std::move(cond));
  out.enriched = true;
  return out;
}

}  // namespace devmine
