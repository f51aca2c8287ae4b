#include <gtest/gtest.h>

#include <set>

#include "devmine/experiment.hpp"
#include "devmine/synthgen.hpp"
#include "oracles.hpp"

using namespace devmine;

namespace {

std::vector<int> labels_of(std::size_t pos, std::size_t neg) {
  std::vector<int> y(pos, 1);
  y.insert(y.end(), neg, 0);
  return y;
}

FeatureMatrix matrix(std::size_t cols, std::vector<std::vector<double>> rows, std::vector<int> labels) {
  FeatureMatrix m;
  for (std::size_t j = 0; j < cols; ++j) m.columns.push_back({"f" + std::to_string(j), ColumnKind::Continuous, "Data"});
  m.rows = std::move(rows);
  m.labels = std::move(labels);
  return m;
}

SynthSpec small_mr_spec(std::uint64_t seed) {
  SynthSpec s;
  s.trace_count = 90;
  s.seed = seed;
  s.timestamps = false;
  s.resources = 0;
  PlantedSignal p;
  p.kind = PlantKind::MR;
  p.body = {"m", "r", "x"};
  s.planted.push_back(p);
  return s;
}

}  // namespace

// ---- folds ------------------------------------------------------------------

TEST(Folds, ExactDivision) {
  const auto y = labels_of(6, 6);
  const auto folds = stratified_folds(y, 3, 4);
  ASSERT_EQ(folds.size(), 3u);
  for (const auto& f : folds) {
    std::size_t pos = 0;
    for (auto i : f) pos += y[i];
    EXPECT_EQ(pos, 2u);
    EXPECT_EQ(f.size() - pos, 2u);
  }
}

TEST(Folds, PartitionWithinOne) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto y = labels_of(7, 5);
    const auto folds = stratified_folds(y, 3, seed);
    std::set<std::size_t> seen;
    std::vector<std::size_t> pos, neg, size;
    for (const auto& f : folds) {
      std::size_t p = 0;
      for (auto i : f) {
        EXPECT_TRUE(seen.insert(i).second);
        p += y[i];
      }
      pos.push_back(p);
      neg.push_back(f.size() - p);
      size.push_back(f.size());
    }
    EXPECT_EQ(seen.size(), y.size());
    for (const auto* v : {&pos, &neg, &size}) {
      EXPECT_LE(*std::max_element(v->begin(), v->end()) - *std::min_element(v->begin(), v->end()), 1u);
    }
  }
}

TEST(Folds, DeterministicAndSeedSensitive) {
  const auto y = labels_of(30, 40);
  EXPECT_EQ(stratified_folds(y, 3, 9), stratified_folds(y, 3, 9));
  EXPECT_NE(stratified_folds(y, 3, 9), stratified_folds(y, 3, 10));
}

TEST(Folds, SmallClassRejected) {
  EXPECT_THROW(stratified_folds(labels_of(2, 10), 3, 1), DegenerateLabelingError);
  EXPECT_THROW(stratified_folds(labels_of(5, 5), 1, 1), ConfigError);
}

// ---- metrics ----------------------------------------------------------------

TEST(Auc, Examples) {
  EXPECT_DOUBLE_EQ(auc({1, 0, 1, 0}, {0.9, 0.8, 0.4, 0.1}), 0.75);
  EXPECT_DOUBLE_EQ(auc({1, 1, 0, 0}, {0.9, 0.8, 0.4, 0.1}), 1.0);
  EXPECT_DOUBLE_EQ(auc({1, 0, 1, 0}, {0.5, 0.5, 0.5, 0.5}), 0.5);
  EXPECT_THROW(auc({1, 1}, {0.1, 0.2}), DegenerateLabelingError);
}

TEST(Auc, MatchesPairwiseDefinition) {
  Rng rng(500);
  for (int round = 0; round < 500; ++round) {
    const std::size_t n = 2 + rng.below(40);
    std::vector<int> y(n);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<int>(rng.below(2));
      s[i] = static_cast<double>(rng.below(8)) / 8.0;  // coarse grid, many ties
    }
    y[0] = 1;
    y[1] = 0;
    EXPECT_EQ(auc(y, s), oracle::pairwise_auc(y, s)) << "round " << round;
  }
}

TEST(Metrics, Formulas) {
  const auto perfect = compute_metrics({1, 0, 1}, {1, 0, 1}, {1, 0, 1});
  EXPECT_EQ(perfect.precision, 1.0);
  EXPECT_EQ(perfect.recall, 1.0);
  EXPECT_EQ(perfect.f1, 1.0);

  const auto none = compute_metrics({1, 0, 1}, {0, 0, 0}, {0.2, 0.1, 0.3});
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.f1, 0.0);

  // TP=2, FP=1, FN=2
  const auto m = compute_metrics({1, 1, 0, 1, 1, 0}, {1, 1, 1, 0, 0, 0}, {0.9, 0.8, 0.7, 0.3, 0.2, 0.1});
  EXPECT_DOUBLE_EQ(m.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.recall, 0.5);
  EXPECT_NEAR(m.f1, 0.571, 1e-3);
  EXPECT_DOUBLE_EQ(m.f1, 2 * (2.0 / 3.0) * 0.5 / (2.0 / 3.0 + 0.5));
}

TEST(RuleStatsTest, CountAndLength) {
  RuleSet rs;
  EXPECT_EQ(rule_stats(rs).count, 0u);
  EXPECT_EQ(rule_stats(rs).avg_length, 0.0);
  Rule a, b;
  a.conditions = {{0, RuleOp::Le, 1}, {1, RuleOp::Gt, 2}, {2, RuleOp::Eq, 1}};
  b.conditions = {{0, RuleOp::Gt, 1}};
  rs.rules = {a, b};
  EXPECT_EQ(rule_stats(rs).count, 2u);
  EXPECT_EQ(rule_stats(rs).avg_length, 2.0);
}

TEST(RuleStatsTest, ExtractedTreeMatchesHandCount) {
  // root f0 <= 0.5; left: f1 <= 0.5 -> deviant leaf, else normal; right: deviant leaf
  DecisionTree t;
  t.nodes.resize(5);
  t.nodes[0] = {false, 0, 0.5, 1, 2, 0, 0, 0};
  t.nodes[1] = {false, 1, 0.5, 3, 4, 0, 0, 1};
  t.nodes[2] = {true, 0, 0, -1, -1, 0, 5, 1};
  t.nodes[3] = {true, 0, 0, -1, -1, 1, 4, 2};
  t.nodes[4] = {true, 0, 0, -1, -1, 6, 0, 2};
  const auto s = rule_stats(extract_rules(t, {}));
  EXPECT_EQ(s.count, 2u);           // two deviant leaves
  EXPECT_EQ(s.avg_length, 1.5);     // paths of length 2 and 1
}

// ---- grid search --------------------------------------------------------------

TEST(GridSearch, SingleCell) {
  const auto m = matrix(1, {{0}, {1}, {0}, {1}, {0}, {1}}, {0, 1, 0, 1, 0, 1});
  ExperimentConfig cfg;
  cfg.tree_grid = {{4, 2, SplitCriterion::InfoGain}};
  EXPECT_EQ(grid_search(m, ClassifierKind::Tree, cfg).best, 0u);
  cfg.tree_grid.clear();
  EXPECT_THROW(grid_search(m, ClassifierKind::Tree, cfg), ConfigError);
}

TEST(GridSearch, PicksGeneratingDepth) {
  std::vector<std::vector<double>> rows;
  std::vector<int> y;
  for (int rep = 0; rep < 6; ++rep)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        rows.push_back({static_cast<double>(a), static_cast<double>(b)});
        y.push_back(a ^ b);
      }
  ExperimentConfig cfg;
  cfg.tree_grid = {{1, 1, SplitCriterion::Gini}, {2, 1, SplitCriterion::Gini}};
  const auto g = grid_search(matrix(2, rows, y), ClassifierKind::Tree, cfg);
  EXPECT_EQ(g.best, 1u);
  EXPECT_EQ(g.mean_f1[1], 1.0);
}

TEST(GridSearch, EqualF1PrefersSmallerModel) {
  // f0 decides the label except for a minority of positives with f0 = 0; a
  // depth-2 tree splits that side on f1 without changing any prediction.
  std::vector<std::vector<double>> rows;
  std::vector<int> y;
  for (int rep = 0; rep < 9; ++rep) {
    for (int k = 0; k < 4; ++k) {
      rows.push_back({1, static_cast<double>(k % 2)});
      y.push_back(1);
    }
    for (int k = 0; k < 4; ++k) {
      rows.push_back({0, 0});
      y.push_back(0);
    }
    rows.push_back({0, 1});
    y.push_back(0);
    rows.push_back({0, 1});
    y.push_back(0);
    rows.push_back({0, 1});
    y.push_back(1);
  }
  ExperimentConfig cfg;
  cfg.tree_grid = {{2, 1, SplitCriterion::Gini}, {1, 1, SplitCriterion::Gini}};
  const auto g = grid_search(matrix(2, rows, y), ClassifierKind::Tree, cfg);
  EXPECT_EQ(g.mean_f1[0], g.mean_f1[1]);
  EXPECT_GT(g.mean_size[0], g.mean_size[1]);
  EXPECT_EQ(g.best, 1u);
}

// ---- experiments ----------------------------------------------------------------

TEST(Experiment, PlantedMrIsPerfect) {
  const LabeledLog l = generate(small_mr_spec(3));
  const auto r = run_experiment(l, parse_encoding("MR"), ClassifierKind::Tree, ExperimentConfig{});
  EXPECT_EQ(r.evaluated_folds, 3u);
  EXPECT_EQ(r.mean.precision, 1.0);
  EXPECT_EQ(r.mean.recall, 1.0);
  EXPECT_EQ(r.mean.auc, 1.0);
}

TEST(Experiment, TestFoldContentsDoNotLeakIntoSelection) {
  const LabeledLog l = generate(small_mr_spec(5));
  ExperimentConfig cfg;
  cfg.tree_grid = {{3, 1, SplitCriterion::Gini}};
  const auto folds = stratified_folds(l.labels(), cfg.folds, cfg.seed);
  std::vector<Trace> altered = l.log().traces();
  Rng rng(77);
  for (auto i : folds[0]) {
    for (auto& e : altered[i].events) e.activity = std::string(1, "mrxqz"[rng.below(5)]);
  }
  const LabeledLog l2(EventLog(altered), l.labels());
  for (const char* enc : {"MR", "Hybrid", "IA+Data"}) {
    const auto a = run_experiment(l, parse_encoding(enc), ClassifierKind::Tree, cfg);
    const auto b = run_experiment(l2, parse_encoding(enc), ClassifierKind::Tree, cfg);
    std::vector<std::string> na, nb;
    for (const auto& c : a.folds[0].columns) na.push_back(c.name);
    for (const auto& c : b.folds[0].columns) nb.push_back(c.name);
    EXPECT_FALSE(na.empty());
    EXPECT_EQ(na, nb) << enc;
    EXPECT_EQ(format_ruleset(a.folds[0].rules, a.folds[0].columns), format_ruleset(b.folds[0].rules, b.folds[0].columns))
        << enc;
  }
}

TEST(Experiment, MeansRecomputeExactly) {
  const LabeledLog l = generate(small_mr_spec(8));
  for (auto kind : {ClassifierKind::Tree, ClassifierKind::Ripper}) {
    const auto r = run_experiment(l, parse_encoding("IA"), kind, ExperimentConfig{});
    double p = 0, rec = 0, f1 = 0, a = 0, len = 0;
    for (const auto& f : r.folds) {
      p += f.metrics.precision;
      rec += f.metrics.recall;
      f1 += f.metrics.f1;
      a += f.metrics.auc;
      len += f.rule_stats.avg_length;
    }
    const double n = static_cast<double>(r.folds.size());
    EXPECT_EQ(r.mean.precision, p / n);
    EXPECT_EQ(r.mean.recall, rec / n);
    EXPECT_EQ(r.mean.f1, f1 / n);
    EXPECT_EQ(r.mean.auc, a / n);
    EXPECT_EQ(r.mean_rule_length, len / n);
  }
}

TEST(Experiment, CsvIsDeterministic) {
  const LabeledLog l = generate(small_mr_spec(4));
  const auto a = run_experiment(l, parse_encoding("TR"), ClassifierKind::Ripper, ExperimentConfig{});
  const auto b = run_experiment(l, parse_encoding("TR"), ClassifierKind::Ripper, ExperimentConfig{});
  EXPECT_EQ(report_csv_rows(a), report_csv_rows(b));
  EXPECT_EQ(to_json(a, false), to_json(b, false));
}

TEST(Encodings, TokenParsing) {
  const auto h = parse_encoding("Hybrid+Data");
  EXPECT_TRUE(h.tr && h.tra && h.mr && h.mra && h.declare && h.data);
  EXPECT_FALSE(h.ia || h.decld);
  const auto d = parse_encoding("DeclD");
  EXPECT_TRUE(d.decld && d.declare);
  EXPECT_THROW(parse_encoding("MR+Nope"), ConfigError);
}
