#pragma once

// Cross-validated experiments: per-fold feature discovery and selection,
// inner-CV grid search, model training, and CSV/JSON/summary reports.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "devmine/decision_tree.hpp"
#include "devmine/declare_discovery.hpp"
#include "devmine/features.hpp"
#include "devmine/metrics.hpp"
#include "devmine/ripper.hpp"
#include "devmine/sequential.hpp"

namespace devmine {

/// Feature families requested by an encoding token such as `MR`, `Hybrid`
/// or `Hybrid+Data+DeclD`. Hybrid stands for TR+TRA+MR+MRA+Declare; DeclD
/// also brings in Declare.
struct EncodingSpec {
  std::string token;
  bool ia = false, tr = false, tra = false, mr = false, mra = false;
  bool declare = false, decld = false, data = false;

  bool control_flow() const { return ia || tr || tra || mr || mra || declare || decld; }
};

inline EncodingSpec parse_encoding(const std::string& token) {
  EncodingSpec e;
  e.token = token;
  std::size_t start = 0;
  while (start <= token.size()) {
    const std::size_t plus = token.find('+', start);
    const std::string part = trim(token.substr(start, plus == std::string::npos ? std::string::npos : plus - start));
    if (part == "IA") e.ia = true;
    else if (part == "TR") e.tr = true;
    else if (part == "TRA") e.tra = true;
    else if (part == "MR") e.mr = true;
    else if (part == "MRA") e.mra = true;
    else if (part == "Declare") e.declare = true;
    else if (part == "DeclD") e.decld = e.declare = true;
    else if (part == "Data") e.data = true;
    else if (part == "Hybrid" || part == "H") e.tr = e.tra = e.mr = e.mra = e.declare = true;
    else throw ConfigError("unknown encoding '" + part + "' in '" + token + "'");
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return e;
}

enum class ClassifierKind { Tree, Ripper };

inline const char* to_string(ClassifierKind k) { return k == ClassifierKind::Tree ? "tree" : "ripper"; }

inline std::vector<TreeParams> default_tree_grid() {
  std::vector<TreeParams> out;
  for (std::size_t depth : {3, 5, 7, 0}) {
    for (std::size_t leaf : {1, 5, 10}) out.push_back({depth, leaf, SplitCriterion::Gini});
  }
  return out;
}

inline std::vector<RipperParams> default_ripper_grid(std::uint64_t seed) {
  std::vector<RipperParams> out;
  for (std::size_t k : {1, 2}) {
    RipperParams p;
    p.k = k;
    p.seed = seed;
    out.push_back(p);
  }
  return out;
}

struct ExperimentConfig {
  double theta = 0.3;
  std::size_t coverage = 5;
  std::size_t folds = 3;
  std::size_t inner_folds = 3;
  std::uint64_t seed = 1;
  SupportMode support = SupportMode::Relative;
  DiscoveryParams discovery;  // its theta is overridden by `theta`
  EnrichParams enrich;
  std::size_t max_categories = 64;
  std::vector<TreeParams> tree_grid = default_tree_grid();
  std::vector<RipperParams> ripper_grid = default_ripper_grid(1);
};

inline std::string describe(const TreeParams& p) {
  return "maxDepth=" + (p.max_depth ? std::to_string(p.max_depth) : std::string("unlimited")) +
         ";minLeaf=" + std::to_string(p.min_leaf) + ";criterion=" +
         (p.criterion == SplitCriterion::Gini ? "gini" : "infogain");
}

inline std::string describe(const RipperParams& p) {
  return "k=" + std::to_string(p.k) + ";seed=" + std::to_string(p.seed);
}

// ---- feature selection -----------------------------------------------------

struct SelectedFeatures {
  std::vector<Feature> features;  // family order
  std::vector<std::string> warnings;
  std::size_t candidates = 0;
};

namespace detail {

inline std::vector<Feature> rank_and_cover(const LabeledLog& train, const std::vector<Feature>& cands,
                                           const ExperimentConfig& cfg) {
  if (cands.empty()) return {};
  const auto cols = feature_columns(train.log(), cands, cfg.support);
  std::vector<double> scores;
  scores.reserve(cols.size());
  for (const auto& c : cols) scores.push_back(fisher_score(c, train.labels()));
  std::vector<Feature> out;
  for (auto j : coverage_select(scores, cols, cfg.coverage)) out.push_back(cands[j]);
  return out;
}

}  // namespace detail

/// Discovery and selection on one training log. Control-flow families are
/// ranked together; data features are ranked and selected on their own.
inline SelectedFeatures select_features(const LabeledLog& train, const EncodingSpec& enc, const ExperimentConfig& cfg) {
  SelectedFeatures out;
  std::vector<Feature> flow;
  auto add_patterns = [&](PatternKind kind) {
    for (const auto& p : discover_patterns(train, kind, cfg.theta, cfg.support).patterns) flow.push_back(Feature::pattern(p));
  };
  if (enc.ia) add_patterns(PatternKind::IA);
  if (enc.tr) add_patterns(PatternKind::TR);
  if (enc.tra) add_patterns(PatternKind::TRA);
  if (enc.mr) add_patterns(PatternKind::MR);
  if (enc.mra) add_patterns(PatternKind::MRA);
  if (enc.declare || enc.decld) {
    DiscoveryParams dp = cfg.discovery;
    dp.theta = cfg.theta;
    const auto constraints = discover_constraints(train, dp);
    for (const auto& c : constraints) flow.push_back(Feature::declare(c));
    if (enc.decld) {
      std::size_t enriched = 0;
      for (const auto& c : constraints) {
        if (!c.tmpl.has_activation()) continue;
        auto r = enrich_with_data(c, train, cfg.enrich);
        if (r.enriched) {
          flow.push_back(Feature::declare(r.constraint));
          ++enriched;
        }
      }
      if (enriched == 0) out.warnings.push_back("no constraint could be enriched with a data condition");
    }
  }
  if (enc.control_flow() && flow.empty()) {
    out.warnings.push_back("no " + enc.token + " pattern reached the support threshold; using individual activities");
    for (const auto& a : train.log().alphabet()) {
      flow.push_back(Feature::pattern(SequentialPattern(PatternKind::IA, {a})));
    }
  }
  std::vector<Feature> data;
  if (enc.data) {
    for (const auto& d : extract_data_features(train.log(), cfg.max_categories)) data.push_back(Feature::data(d));
  }
  out.candidates = flow.size() + data.size();
  auto chosen = detail::rank_and_cover(train, flow, cfg);
  auto chosen_data = detail::rank_and_cover(train, data, cfg);
  chosen.insert(chosen.end(), chosen_data.begin(), chosen_data.end());
  out.features = family_order(std::move(chosen));
  return out;
}

// ---- models ----------------------------------------------------------------

struct TrainedModel {
  ClassifierKind kind = ClassifierKind::Tree;
  DecisionTree tree;
  RuleSet rules;  // extracted rules for trees
  std::string params;

  int predict(const std::vector<double>& row) const {
    return kind == ClassifierKind::Tree ? tree.predict(row) : rules.predict(row);
  }
  double score(const std::vector<double>& row) const {
    return kind == ClassifierKind::Tree ? tree.score(row) : rules.score(row);
  }
};

inline TrainedModel train_model(const FeatureMatrix& m, ClassifierKind kind, const TreeParams& tp,
                                const RipperParams& rp) {
  TrainedModel out;
  out.kind = kind;
  if (kind == ClassifierKind::Tree) {
    out.tree = train_tree(m, tp);
    out.rules = extract_rules(out.tree, m.columns);
    out.params = describe(tp);
  } else {
    out.rules = ripper_train(m, rp);
    out.params = describe(rp);
  }
  return out;
}

inline Metrics evaluate(const TrainedModel& model, const FeatureMatrix& test) {
  std::vector<int> pred;
  std::vector<double> score;
  for (const auto& row : test.rows) {
    pred.push_back(model.predict(row));
    score.push_back(model.score(row));
  }
  return compute_metrics(test.labels, pred, score);
}

struct GridResult {
  std::size_t best = 0;
  std::vector<double> mean_f1;
  std::vector<double> mean_size;  // rule count (ripper) or depth (tree)
};

/// Inner stratified CV over the grid; highest mean F1 wins, then the smaller
/// model (fewer rules, then shallower tree), then grid order.
inline GridResult grid_search(const FeatureMatrix& m, ClassifierKind kind, const ExperimentConfig& cfg) {
  const std::size_t cells = kind == ClassifierKind::Tree ? cfg.tree_grid.size() : cfg.ripper_grid.size();
  if (cells == 0) throw ConfigError("empty hyperparameter grid");
  GridResult g;
  g.mean_f1.assign(cells, 0.0);
  g.mean_size.assign(cells, 0.0);
  if (cells == 1) return g;
  std::vector<std::vector<std::size_t>> folds;
  try {
    folds = stratified_folds(m.labels, cfg.inner_folds, cfg.seed + 1);
  } catch (const DegenerateLabelingError&) {
    return g;  // too few rows per class for inner CV: first cell
  }
  std::vector<double> rule_count(cells, 0.0), depth(cells, 0.0);
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const FeatureMatrix tr = m.subset(training_indices(folds, f));
    const FeatureMatrix te = m.subset(folds[f]);
    for (std::size_t c = 0; c < cells; ++c) {
      const TreeParams tp = kind == ClassifierKind::Tree ? cfg.tree_grid[c] : TreeParams{};
      const RipperParams rp = kind == ClassifierKind::Ripper ? cfg.ripper_grid[c] : RipperParams{};
      const TrainedModel model = train_model(tr, kind, tp, rp);
      g.mean_f1[c] += evaluate(model, te).f1 / static_cast<double>(folds.size());
      rule_count[c] += static_cast<double>(model.rules.rules.size()) / static_cast<double>(folds.size());
      depth[c] += static_cast<double>(kind == ClassifierKind::Tree ? model.tree.depth() : 0) /
                  static_cast<double>(folds.size());
    }
  }
  constexpr double eps = 1e-12;
  for (std::size_t c = 1; c < cells; ++c) {
    const std::size_t b = g.best;
    const bool better_f1 = g.mean_f1[c] > g.mean_f1[b] + eps;
    const bool tie_f1 = std::abs(g.mean_f1[c] - g.mean_f1[b]) <= eps;
    const bool smaller = rule_count[c] < rule_count[b] - eps ||
                         (std::abs(rule_count[c] - rule_count[b]) <= eps && depth[c] < depth[b] - eps);
    if (better_f1 || (tie_f1 && smaller)) g.best = c;
  }
  for (std::size_t c = 0; c < cells; ++c) g.mean_size[c] = kind == ClassifierKind::Tree ? depth[c] : rule_count[c];
  return g;
}

// ---- experiment ------------------------------------------------------------

struct FoldResult {
  std::size_t fold = 0;
  bool skipped = false;
  std::string reason;
  Metrics metrics;
  RuleStats rule_stats;
  std::size_t feature_count = 0;
  std::string params;
  std::vector<Column> columns;
  RuleSet rules;
  std::vector<std::string> warnings;
  double seconds = 0;
};

struct ExperimentReport {
  std::string encoding;
  ClassifierKind classifier = ClassifierKind::Tree;
  ExperimentConfig config;
  std::vector<FoldResult> folds;
  Metrics mean;
  double mean_rule_count = 0;
  double mean_rule_length = 0;
  std::size_t evaluated_folds = 0;

  void aggregate() {
    mean = {};
    mean_rule_count = mean_rule_length = 0;
    evaluated_folds = 0;
    for (const auto& f : folds) {
      if (f.skipped) continue;
      ++evaluated_folds;
      mean.precision += f.metrics.precision;
      mean.recall += f.metrics.recall;
      mean.f1 += f.metrics.f1;
      mean.auc += f.metrics.auc;
      mean_rule_count += static_cast<double>(f.rule_stats.count);
      mean_rule_length += f.rule_stats.avg_length;
    }
    if (evaluated_folds == 0) return;
    const double n = static_cast<double>(evaluated_folds);
    mean.precision /= n;
    mean.recall /= n;
    mean.f1 /= n;
    mean.auc /= n;
    mean_rule_count /= n;
    mean_rule_length /= n;
  }
};

/// Runs every classifier on one encoding; discovery and selection are done
/// once per outer fold on its training traces only and shared by the
/// classifiers.
inline std::vector<ExperimentReport> run_experiments(const LabeledLog& l, const EncodingSpec& enc,
                                                     const std::vector<ClassifierKind>& classifiers,
                                                     const ExperimentConfig& cfg) {
  l.require_both_classes("run_experiment");
  const auto folds = stratified_folds(l.labels(), cfg.folds, cfg.seed);
  std::vector<ExperimentReport> reports;
  for (auto k : classifiers) {
    ExperimentReport r;
    r.encoding = enc.token;
    r.classifier = k;
    r.config = cfg;
    reports.push_back(std::move(r));
  }
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto t0 = std::chrono::steady_clock::now();
    const LabeledLog train = l.subset(training_indices(folds, f));
    const LabeledLog test = l.subset(folds[f]);
    if (!train.both_classes() || !test.both_classes()) {
      for (auto& r : reports) {
        FoldResult fr;
        fr.fold = f;
        fr.skipped = true;
        fr.reason = "single-class fold";
        r.folds.push_back(std::move(fr));
      }
      continue;
    }
    const SelectedFeatures sel = select_features(train, enc, cfg);
    const FeatureMatrix mtrain = encode(train, sel.features, cfg.support);
    const FeatureMatrix mtest = encode(test, sel.features, cfg.support);
    const double shared = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (std::size_t c = 0; c < classifiers.size(); ++c) {
      const auto t1 = std::chrono::steady_clock::now();
      const ClassifierKind kind = classifiers[c];
      const GridResult g = grid_search(mtrain, kind, cfg);
      const TreeParams tp = kind == ClassifierKind::Tree ? cfg.tree_grid[g.best] : TreeParams{};
      const RipperParams rp = kind == ClassifierKind::Ripper ? cfg.ripper_grid[g.best] : RipperParams{};
      const TrainedModel model = train_model(mtrain, kind, tp, rp);
      FoldResult fr;
      fr.fold = f;
      fr.metrics = evaluate(model, mtest);
      fr.rules = model.rules;
      fr.rule_stats = rule_stats(model.rules);
      fr.feature_count = sel.features.size();
      fr.params = model.params;
      fr.columns = mtrain.columns;
      fr.warnings = sel.warnings;
      fr.seconds = shared + std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
      reports[c].folds.push_back(std::move(fr));
    }
  }
  for (auto& r : reports) r.aggregate();
  return reports;
}

inline ExperimentReport run_experiment(const LabeledLog& l, const EncodingSpec& enc, ClassifierKind classifier,
                                       const ExperimentConfig& cfg) {
  return run_experiments(l, enc, {classifier}, cfg).front();
}

// ---- report output -----------------------------------------------------------

inline std::string report_csv_header() {
  return "encoding,classifier,fold,skipped,precision,recall,f1,auc,rule_count,avg_rule_length,features,params,theta,"
         "coverage,seed\n";
}

/// One row per fold. Timings are left out so equal runs give equal bytes.
inline std::string report_csv_rows(const ExperimentReport& r) {
  std::string out;
  for (const auto& f : r.folds) {
    out += csv_field(r.encoding) + "," + to_string(r.classifier) + "," + std::to_string(f.fold) + "," +
           (f.skipped ? "1" : "0") + "," + format_fixed(f.metrics.precision) + "," + format_fixed(f.metrics.recall) +
           "," + format_fixed(f.metrics.f1) + "," + format_fixed(f.metrics.auc) + "," +
           std::to_string(f.rule_stats.count) + "," + format_fixed(f.rule_stats.avg_length) + "," +
           std::to_string(f.feature_count) + "," + csv_field(f.params) + "," + format_number(r.config.theta) + "," +
           std::to_string(r.config.coverage) + "," + std::to_string(r.config.seed) + "\n";
  }
  return out;
}

inline nlohmann::json metrics_json(const Metrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"auc", m.auc}};
}

inline nlohmann::json to_json(const ExperimentReport& r, bool with_timings = true) {
  nlohmann::json folds = nlohmann::json::array();
  for (const auto& f : r.folds) {
    nlohmann::json j = {{"fold", f.fold},
                        {"skipped", f.skipped},
                        {"metrics", metrics_json(f.metrics)},
                        {"ruleCount", f.rule_stats.count},
                        {"avgRuleLength", f.rule_stats.avg_length},
                        {"featureCount", f.feature_count},
                        {"params", f.params},
                        {"warnings", f.warnings}};
    if (f.skipped) j["reason"] = f.reason;
    if (with_timings) j["seconds"] = f.seconds;
    folds.push_back(std::move(j));
  }
  return {{"encoding", r.encoding},
          {"classifier", to_string(r.classifier)},
          {"config",
           {{"theta", r.config.theta},
            {"coverage", r.config.coverage},
            {"folds", r.config.folds},
            {"innerFolds", r.config.inner_folds},
            {"seed", r.config.seed},
            {"support", r.config.support == SupportMode::Relative ? "relative" : "raw"}}},
          {"folds", folds},
          {"evaluatedFolds", r.evaluated_folds},
          {"mean", metrics_json(r.mean)},
          {"meanRuleCount", r.mean_rule_count},
          {"meanAvgRuleLength", r.mean_rule_length}};
}

/// Fixed-width table with the Prec / Rec / AUC layout, plus F1 and rule size.
inline std::string summary_table(const std::vector<ExperimentReport>& reports) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %-8s %6s %6s %6s %6s %7s %7s\n", "encoding", "clf", "Prec", "Rec", "AUC", "F1",
                "rules", "avgLen");
  out += line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-22s %-8s %6.2f %6.2f %6.2f %6.2f %7.2f %7.2f\n", r.encoding.c_str(),
                  to_string(r.classifier), r.mean.precision, r.mean.recall, r.mean.auc, r.mean.f1, r.mean_rule_count,
                  r.mean_rule_length);
    out += line;
  }
  return out;
}

}  // namespace devmine
