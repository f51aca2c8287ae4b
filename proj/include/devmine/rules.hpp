#pragma once

// Conjunctive rules over feature-matrix columns, ordered rule sets with a
// default class, and their text/JSON forms.

#include <string>
#include <vector>

#include <json.hpp>

#include "devmine/feature_matrix.hpp"

namespace devmine {

enum class RuleOp { Le, Gt, Eq, Ne };

inline const char* to_string(RuleOp op) {
  switch (op) {
    case RuleOp::Le: return "<=";
    case RuleOp::Gt: return ">";
    case RuleOp::Eq: return "=";
    case RuleOp::Ne: return "!=";
  }
  return "?";
}

inline RuleOp rule_op_from_string(const std::string& s) {
  if (s == "<=") return RuleOp::Le;
  if (s == ">") return RuleOp::Gt;
  if (s == "=") return RuleOp::Eq;
  if (s == "!=") return RuleOp::Ne;
  throw ParseError("unknown rule operator '" + s + "'");
}

struct AtomicCondition {
  std::size_t feature = 0;
  RuleOp op = RuleOp::Le;
  double threshold = 0.0;

  bool holds(const std::vector<double>& row) const {
    const double v = row[feature];
    switch (op) {
      case RuleOp::Le: return v <= threshold;
      case RuleOp::Gt: return v > threshold;
      case RuleOp::Eq: return v == threshold;
      case RuleOp::Ne: return v != threshold;
    }
    return false;
  }

  friend bool operator==(const AtomicCondition&, const AtomicCondition&) = default;
};

/// Threshold split `value <= t` / `value > t` expressed in the column's
/// operator family: indicator columns become `= 0` / `= 1`.
inline AtomicCondition make_condition(std::size_t feature, bool le, double t, ColumnKind kind) {
  if (kind == ColumnKind::Indicator && t > 0.0 && t < 1.0) return {feature, RuleOp::Eq, le ? 0.0 : 1.0};
  return {feature, le ? RuleOp::Le : RuleOp::Gt, t};
}

struct Rule {
  std::vector<AtomicCondition> conditions;
  int predicted = 1;
  std::size_t p = 0;  // positives covered
  std::size_t n = 0;  // negatives covered

  bool matches(const std::vector<double>& row) const {
    for (const auto& c : conditions) {
      if (!c.holds(row)) return false;
    }
    return true;
  }
  std::size_t length() const { return conditions.size(); }
};

struct RuleSet {
  std::vector<Rule> rules;
  int default_class = 0;
  std::size_t default_pos = 0;  // uncovered training positives
  std::size_t default_neg = 0;  // uncovered training negatives

  /// Index of the first matching rule, or -1 for the default rule.
  int first_match(const std::vector<double>& row) const {
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (rules[i].matches(row)) return static_cast<int>(i);
    }
    return -1;
  }

  int predict(const std::vector<double>& row) const {
    const int k = first_match(row);
    return k < 0 ? default_class : rules[static_cast<std::size_t>(k)].predicted;
  }

  /// Laplace estimate of P(deviant): (p+1)/(p+n+2) of the first matching rule,
  /// and (uncovered positives + 1)/(uncovered + 2) for the default rule.
  double score(const std::vector<double>& row) const {
    const int k = first_match(row);
    if (k < 0) {
      return (static_cast<double>(default_pos) + 1.0) / (static_cast<double>(default_pos + default_neg) + 2.0);
    }
    const Rule& r = rules[static_cast<std::size_t>(k)];
    return (static_cast<double>(r.p) + 1.0) / (static_cast<double>(r.p + r.n) + 2.0);
  }

  /// Recomputes p/n of every rule in first-match order and the default stats.
  void restat(const FeatureMatrix& m) {
    for (auto& r : rules) r.p = r.n = 0;
    default_pos = default_neg = 0;
    for (std::size_t i = 0; i < m.row_count(); ++i) {
      const int k = first_match(m.rows[i]);
      const bool pos = m.labels[i] == 1;
      if (k < 0) {
        (pos ? default_pos : default_neg) += 1;
      } else {
        auto& r = rules[static_cast<std::size_t>(k)];
        (pos ? r.p : r.n) += 1;
      }
    }
  }
};

inline std::string format_condition(const AtomicCondition& c, const std::vector<Column>& columns) {
  const std::string name = c.feature < columns.size() ? columns[c.feature].name : "f" + std::to_string(c.feature);
  return "(" + name + " " + to_string(c.op) + " " + format_number(c.threshold) + ")";
}

/// One line per rule, `(cond) and (cond) => Label=1 (p/n)`, then the default
/// `=> Label=0 (correct/errors)` line.
inline std::string format_ruleset(const RuleSet& rs, const std::vector<Column>& columns) {
  std::string out;
  for (const auto& r : rs.rules) {
    for (std::size_t i = 0; i < r.conditions.size(); ++i) {
      if (i) out += " and ";
      out += format_condition(r.conditions[i], columns);
    }
    if (!r.conditions.empty()) out += ' ';
    out += "=> Label=" + std::to_string(r.predicted) + " (" + std::to_string(r.p) + "/" + std::to_string(r.n) + ")\n";
  }
  out += "=> Label=" + std::to_string(rs.default_class) + " (" + std::to_string(rs.default_neg) + "/" +
         std::to_string(rs.default_pos) + ")\n";
  return out;
}

inline nlohmann::json to_json(const RuleSet& rs, const std::vector<Column>& columns) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& c : columns) {
    features.push_back({{"name", c.name}, {"family", c.family}, {"indicator", c.kind == ColumnKind::Indicator}});
  }
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& r : rs.rules) {
    nlohmann::json conds = nlohmann::json::array();
    for (const auto& c : r.conditions) {
      conds.push_back({{"feature", c.feature}, {"op", to_string(c.op)}, {"threshold", c.threshold}});
    }
    rules.push_back({{"conditions", conds}, {"label", r.predicted}, {"p", r.p}, {"n", r.n}});
  }
  return {{"features", features},
          {"rules", rules},
          {"default", {{"label", rs.default_class}, {"pos", rs.default_pos}, {"neg", rs.default_neg}}}};
}

struct LoadedRuleSet {
  RuleSet rules;
  std::vector<Column> columns;
};

inline LoadedRuleSet ruleset_from_json(const nlohmann::json& j) {
  LoadedRuleSet out;
  try {
    for (const auto& f : j.at("features")) {
      out.columns.push_back({f.at("name").get<std::string>(),
                             f.value("indicator", false) ? ColumnKind::Indicator : ColumnKind::Continuous,
                             f.value("family", std::string())});
    }
    for (const auto& r : j.at("rules")) {
      Rule rule;
      for (const auto& c : r.at("conditions")) {
        const auto feature = c.at("feature").get<std::size_t>();
        if (feature >= out.columns.size()) throw ParseError("rule references unknown feature index");
        rule.conditions.push_back({feature, rule_op_from_string(c.at("op").get<std::string>()), c.at("threshold").get<double>()});
      }
      rule.predicted = r.value("label", 1);
      rule.p = r.value("p", std::size_t{0});
      rule.n = r.value("n", std::size_t{0});
      out.rules.rules.push_back(std::move(rule));
    }
    const auto& d = j.at("default");
    out.rules.default_class = d.value("label", 0);
    out.rules.default_pos = d.value("pos", std::size_t{0});
    out.rules.default_neg = d.value("neg", std::size_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("ruleset JSON: ") + e.what());
  }
  return out;
}

}  // namespace devmine
