#include <gtest/gtest.h>

#include <set>

#include "devmine/apriori.hpp"
#include "devmine/declare.hpp"
#include "devmine/declare_discovery.hpp"
#include "oracles.hpp"

using namespace devmine;
using oracle::trace_of;

namespace {

Trace with_payload(const std::vector<std::pair<std::string, AttributeMap>>& events) {
  Trace t;
  t.id = "p";
  for (const auto& [a, p] : events) t.events.push_back({a, std::nullopt, std::nullopt, p});
  return t;
}

AttributeMap color(const char* c) { return {{"color", AttributeValue::text(c)}}; }
AttributeMap g(std::int64_t v) { return {{"g", AttributeValue::integer(v)}}; }

std::vector<Constraint> all_templates_ab() {
  std::vector<Constraint> out;
  for (auto k : kAllTemplates) {
    if (is_unary(k)) {
      const bool bounded = k == TemplateKind::Existence || k == TemplateKind::Absence;
      for (int n = 1; n <= (bounded ? 3 : 1); ++n) out.emplace_back(Template{k, n}, std::vector<std::string>{"a"});
    } else {
      out.emplace_back(Template{k, 1}, std::vector<std::string>{"a", "b"});
    }
  }
  return out;
}

}  // namespace

TEST(DeclareCheck, EncodingExamples) {
  const Trace t = trace_of("abcabcdab");
  EXPECT_EQ(check(t, parse_constraint("Response(a,b)")), CheckOutcome::satisfied(3));
  EXPECT_EQ(check(t, parse_constraint("Response(a,c)")), CheckOutcome::violated());
  EXPECT_EQ(check(t, parse_constraint("Response(e,b)")), CheckOutcome::vacuous());
  EXPECT_EQ(check(trace_of("bbcd"), parse_constraint("Init(a)")), CheckOutcome::violated());
  EXPECT_EQ(check(trace_of("abcd"), parse_constraint("Init(a)")), CheckOutcome::satisfied(1));
}

TEST(DeclareCheck, DataAwareExamples) {
  const Trace t = with_payload({{"a", color("white")},
                                {"c", {}},
                                {"b", color("black")},
                                {"c", {}},
                                {"d", {}},
                                {"a", color("white")},
                                {"c", {}}});
  EXPECT_EQ(check(t, parse_constraint("Response(a,c | color = \"white\")")).encoded(), 2);
  EXPECT_EQ(check(t, parse_constraint("Response(a,d | color = \"white\")")).encoded(), -1);
  EXPECT_EQ(check(t, parse_constraint("Response(b,c | color = \"white\")")).encoded(), 0);
}

TEST(DeclareCheck, MatchesTextualOracleOnAllShortTraces) {
  const auto words = oracle::all_words("abc", 7);
  ASSERT_EQ(words.size(), 3279u);
  for (const auto& c : all_templates_ab()) {
    for (const auto& w : words) {
      std::vector<std::string> s;
      for (char ch : w) s.emplace_back(1, ch);
      ASSERT_EQ(check(trace_of(w), c), oracle::declare(s, c)) << format_constraint(c) << " on " << w;
    }
  }
}

TEST(DeclareCheck, AlwaysTrueConditionMatchesBase) {
  Rng rng(4);
  for (const auto& base : all_templates_ab()) {
    Constraint dc = base;
    dc.condition = parse_condition("g <= 100 or g > 100");
    for (int i = 0; i < 50; ++i) {
      Trace t;
      const auto len = rng.between(0, 6);
      for (std::int64_t k = 0; k < len; ++k) {
        t.events.push_back({std::string(1, "abc"[rng.below(3)]), std::nullopt, std::nullopt, g(rng.between(0, 9))});
      }
      ASSERT_EQ(check(t, dc), check(t, base)) << format_constraint(dc);
    }
  }
}

TEST(DeclareCheck, EncodingIsBijective) {
  for (int n = 1; n < 5; ++n) EXPECT_EQ(CheckOutcome::satisfied(n).encoded(), n);
  EXPECT_EQ(CheckOutcome::violated().encoded(), -1);
  EXPECT_EQ(CheckOutcome::vacuous().encoded(), 0);
}

TEST(Activations, ResponseRecords) {
  const auto c = parse_constraint("Response(a,b)");
  const auto acts = activations(trace_of("aba"), c);
  ASSERT_TRUE(acts.defined);
  ASSERT_EQ(acts.records.size(), 2u);
  EXPECT_EQ(acts.records[0].event_index, 0u);
  EXPECT_TRUE(acts.records[0].fulfilled);
  EXPECT_EQ(acts.records[1].event_index, 2u);
  EXPECT_FALSE(acts.records[1].fulfilled);
  EXPECT_TRUE(activations(trace_of("b"), c).records.empty());
}

TEST(Activations, DataAwareActivation) {
  const auto c = parse_constraint("Response(a,b | g = 1)");
  const Trace t = with_payload({{"a", g(1)}, {"a", g(2)}, {"b", {}}, {"c", {}}});
  const auto acts = activations(t, c);
  ASSERT_EQ(acts.records.size(), 1u);
  EXPECT_EQ(acts.records[0].event_index, 0u);
  EXPECT_TRUE(acts.records[0].fulfilled);
}

TEST(Activations, ExistenceFamilyHasNone) {
  const auto acts = activations(trace_of("aa"), parse_constraint("Existence2(a)"));
  EXPECT_FALSE(acts.defined);
  EXPECT_TRUE(acts.records.empty());
}

TEST(Activations, ConsistentWithCheck) {
  for (const auto& c : all_templates_ab()) {
    if (!c.tmpl.has_activation()) continue;
    for (const auto& w : oracle::all_words("abc", 4)) {
      const auto acts = activations(trace_of(w), c);
      const auto out = check(trace_of(w), c);
      bool any_violated = false;
      for (const auto& r : acts.records) any_violated |= !r.fulfilled;
      EXPECT_EQ(any_violated, out.kind() == CheckOutcome::Kind::Violated);
      if (out.is_satisfied()) {
        EXPECT_EQ(static_cast<int>(acts.records.size()), out.activations());
      }
    }
  }
}

TEST(Conditions, Evaluation) {
  ConditionDiagnostics diag;
  EXPECT_TRUE(eval_condition(g(1), parse_condition("g = 1"), &diag));
  EXPECT_FALSE(eval_condition({}, parse_condition("g = 1"), &diag));
  EXPECT_FALSE(eval_condition(g(2), parse_condition("g <= 1 or g > 3"), &diag));
  EXPECT_TRUE(eval_condition(g(4), parse_condition("g <= 1 or g > 3"), &diag));
  EXPECT_TRUE(eval_condition(color("white"), parse_condition("color != \"black\""), &diag));
  EXPECT_EQ(diag.type_mismatches, 0u);
  EXPECT_FALSE(eval_condition(color("white"), parse_condition("color > 3"), &diag));
  EXPECT_EQ(diag.type_mismatches, 1u);
}

TEST(Conditions, TruthTable) {
  const auto cond = parse_condition("x = 1 and y = 1 or z = 1");
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) {
        const AttributeMap p{{"x", AttributeValue::integer(x)}, {"y", AttributeValue::integer(y)},
                             {"z", AttributeValue::integer(z)}};
        EXPECT_EQ(eval_condition(p, cond), (x && y) || z);
      }
}

TEST(ConstraintText, RoundTrip) {
  for (const char* text : {"Response(a,b)", "Existence3(a)", "Absence2(x)", "Init(Add penalty)",
                           "Response(RSR,DR | resource = \"D\")",
                           "NotChainSuccession(a,b | g <= 1.5 and h > 2 or k != \"x y\")"}) {
    const Constraint c = parse_constraint(text);
    EXPECT_EQ(format_constraint(c), text);
    EXPECT_EQ(parse_constraint(format_constraint(c)), c);
  }
}

TEST(ConstraintText, QuotedActivity) {
  EXPECT_EQ(parse_constraint("Init(\"Add penalty\")"), parse_constraint("Init(Add penalty)"));
}

TEST(ConstraintText, Errors) {
  EXPECT_THROW(parse_constraint("Response(a)"), Error);
  EXPECT_THROW(parse_constraint("Nonsense(a,b)"), ParseError);
  EXPECT_THROW(parse_constraint("Response(a,b"), ParseError);
  EXPECT_THROW(parse_constraint("Response(a,b | g ~ 1)"), ParseError);
}

TEST(ConstraintOrder, TemplateThenActivities) {
  std::set<Constraint> s{parse_constraint("Succession(a,b)"), parse_constraint("Response(b,a)"),
                         parse_constraint("Response(a,b)")};
  std::vector<std::string> got;
  for (const auto& c : s) got.push_back(format_constraint(c));
  EXPECT_EQ(got, (std::vector<std::string>{"Response(a,b)", "Response(b,a)", "Succession(a,b)"}));
}

// ---- Apriori ----------------------------------------------------------------

TEST(Apriori, TrivialCases) {
  const EventLog all({trace_of("ab"), trace_of("ba")});
  const auto levels = frequent_activity_sets(all, 0.5);
  ASSERT_EQ(levels.size(), 2u);
  EXPECT_EQ(levels[0], (std::vector<ActivitySet>{{"a"}, {"b"}}));
  EXPECT_EQ(levels[1], (std::vector<ActivitySet>{{"a", "b"}}));

  std::vector<Trace> ts{trace_of("ab")};
  for (int i = 0; i < 9; ++i) ts.push_back(trace_of("bc"));
  const auto l2 = frequent_activity_sets(EventLog(ts), 0.3);
  for (const auto& level : l2)
    for (const auto& s : level) EXPECT_EQ(std::count(s.begin(), s.end(), "a"), 0);
}

TEST(Apriori, MatchesExhaustiveSubsetEnumeration) {
  Rng rng(77);
  const std::string alphabet = "abcde";
  for (int round = 0; round < 40; ++round) {
    std::vector<Trace> ts;
    for (int i = 0; i < 12; ++i) {
      std::string w;
      for (int k = 0; k < 4; ++k) w += alphabet[rng.below(alphabet.size())];
      ts.push_back(trace_of(w));
    }
    const EventLog log(ts);
    const double theta = 0.2 + 0.1 * static_cast<double>(round % 5);
    const auto levels = frequent_activity_sets(log, theta, 5);
    std::set<ActivitySet> got;
    for (const auto& level : levels) got.insert(level.begin(), level.end());
    std::set<ActivitySet> want;
    for (unsigned mask = 1; mask < 32; ++mask) {
      ActivitySet s;
      for (unsigned b = 0; b < 5; ++b)
        if (mask & (1u << b)) s.push_back(std::string(1, alphabet[b]));
      std::size_t hit = 0;
      for (const auto& t : ts) {
        bool all_in = true;
        for (const auto& a : s) {
          bool found = false;
          for (const auto& e : t.events) found |= e.activity == a;
          all_in &= found;
        }
        hit += all_in;
      }
      if (static_cast<double>(hit) / static_cast<double>(ts.size()) >= theta) want.insert(s);
    }
    EXPECT_EQ(got, want) << "round " << round;
  }
}

// ---- discovery ------------------------------------------------------------------

TEST(DeclareDiscovery, PairFrequentOnlyInDeviantClass) {
  std::vector<Trace> ts;
  std::vector<int> y;
  for (int i = 0; i < 6; ++i) {
    ts.push_back(trace_of("xaby"));
    y.push_back(1);
  }
  for (int i = 0; i < 6; ++i) {
    ts.push_back(trace_of("xy"));
    y.push_back(0);
  }
  DiscoveryParams p;
  p.theta = 0.5;
  p.templates = {TemplateKind::Response, TemplateKind::Precedence};
  const auto cs = discover_constraints(LabeledLog(EventLog(ts), y), p);
  std::set<std::string> got;
  for (const auto& c : cs) got.insert(format_constraint(c));
  EXPECT_TRUE(got.count("Response(a,b)"));
  EXPECT_TRUE(got.count("Precedence(a,b)"));
  EXPECT_TRUE(got.count("Response(x,y)"));  // frequent in both classes, kept
  EXPECT_FALSE(got.count("Response(b,a)"));  // violated in every deviant trace
  EXPECT_TRUE(std::is_sorted(cs.begin(), cs.end()));
}

TEST(DeclareDiscovery, RecoversPlantedConstraint) {
  Rng rng(2);
  std::vector<Trace> ts;
  std::vector<int> y;
  for (int i = 0; i < 60; ++i) {
    std::string w;
    for (int k = 0; k < 6; ++k) w += "cde"[rng.below(3)];
    const bool dev = i % 2 == 0;
    if (dev) w = "p" + w + "q";
    ts.push_back(trace_of(w));
    y.push_back(dev);
  }
  const auto cs = discover_constraints(LabeledLog(EventLog(ts), y));
  EXPECT_NE(std::find(cs.begin(), cs.end(), parse_constraint("Response(p,q)")), cs.end());
}

// ---- enrichment -------------------------------------------------------------------

TEST(DeclareEnrichment, FindsSeparatingCategory) {
  std::vector<Trace> ts;
  std::vector<int> y;
  const char* resources[] = {"A", "B", "C"};
  for (int i = 0; i < 40; ++i) {
    const bool dev = i < 20;
    AttributeMap p{{"resource", AttributeValue::text(dev ? "D" : resources[i % 3])}};
    ts.push_back(with_payload({{"RSR", p}, {"x", {}}, {"DR", {}}}));
    y.push_back(dev);
  }
  const auto r = enrich_with_data(parse_constraint("Response(RSR,DR)"), LabeledLog(EventLog(ts), y));
  ASSERT_TRUE(r.enriched) << r.reason;
  EXPECT_EQ(format_constraint(r.constraint), "Response(RSR,DR | resource = \"D\")");
}

TEST(DeclareEnrichment, IdenticalPayloadsLeaveConstraintUnchanged) {
  std::vector<Trace> ts;
  std::vector<int> y;
  for (int i = 0; i < 20; ++i) {
    ts.push_back(with_payload({{"a", g(1)}, {"b", {}}}));
    y.push_back(i % 2);
  }
  const auto c = parse_constraint("Response(a,b)");
  const auto r = enrich_with_data(c, LabeledLog(EventLog(ts), y));
  EXPECT_FALSE(r.enriched);
  EXPECT_EQ(r.constraint, c);
}

TEST(DeclareEnrichment, NumericClustersGiveOneThreshold) {
  std::vector<Trace> ts;
  std::vector<int> y;
  for (int i = 0; i < 40; ++i) {
    const bool dev = i % 2 == 0;
    const std::int64_t v = dev ? 100 + i : 10 + i;  // deviant values in [100, 139], normal in [11, 49]
    ts.push_back(with_payload({{"a", {{"amount", AttributeValue::integer(v)}}}, {"b", {}}}));
    y.push_back(dev);
  }
  const auto r = enrich_with_data(parse_constraint("Response(a,b)"), LabeledLog(EventLog(ts), y));
  ASSERT_TRUE(r.enriched) << r.reason;
  ASSERT_EQ(r.constraint.condition->disjuncts.size(), 1u);
  ASSERT_EQ(r.constraint.condition->disjuncts[0].size(), 1u);
  const Comparison& cmp = r.constraint.condition->disjuncts[0][0];
  EXPECT_EQ(cmp.op, CmpOp::Gt);
  // exhaustive scan: the Gini-optimal cut is the midpoint between the clusters
  EXPECT_DOUBLE_EQ(cmp.constant.as_number(), (49.0 + 100.0) / 2.0);
}
