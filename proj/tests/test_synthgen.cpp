#include <gtest/gtest.h>

#include "devmine/labeling.hpp"
#include "devmine/synthgen.hpp"
#include "devmine/xes.hpp"

using namespace devmine;

namespace {

SynthSpec spec_with(PlantedSignal p, std::uint64_t seed = 1) {
  SynthSpec s;
  s.seed = seed;
  s.planted.push_back(std::move(p));
  return s;
}

PlantedSignal mr(std::vector<std::string> body, double bias = 1.0) {
  PlantedSignal p;
  p.kind = PlantKind::MR;
  p.body = std::move(body);
  p.bias = bias;
  return p;
}

bool contains_block(const Trace& t, const std::vector<std::string>& block) {
  return label_trace(t, SubsequenceLabeling{block}) == 1;
}

}  // namespace

TEST(Synth, SameSeedGivesIdenticalXes) {
  const auto s = spec_with(mr({"m", "r", "x"}), 42);
  EXPECT_EQ(write_xes(generate(s).log()), write_xes(generate(s).log()));
  auto other = s;
  other.seed = 43;
  EXPECT_NE(write_xes(generate(s).log()), write_xes(generate(other).log()));
}

TEST(Synth, FullBiasSeparatesClasses) {
  const LabeledLog l = generate(spec_with(mr({"m", "r", "x"})));
  ASSERT_EQ(l.size(), 500u);
  EXPECT_EQ(l.count(1), 250u);
  for (std::size_t i = 0; i < l.size(); ++i) {
    EXPECT_EQ(contains_block(l.log().trace(i), {"m", "r", "x"}), l.labels()[i] == 1) << i;
    EXPECT_EQ(l.log().trace(i).attributes.at("label"), AttributeValue::integer(l.labels()[i]));
  }
}

TEST(Synth, HalfBiasSupportsNearHalf) {
  const LabeledLog l = generate(spec_with(mr({"m", "r", "x"}, 0.5), 17));
  double hit[2] = {0, 0}, n[2] = {0, 0};
  for (std::size_t i = 0; i < l.size(); ++i) {
    const int y = l.labels()[i];
    n[y] += 1;
    hit[y] += contains_block(l.log().trace(i), {"m", "r", "x"});
  }
  EXPECT_NEAR(hit[1] / n[1], 0.5, 0.1);
  EXPECT_NEAR(hit[0] / n[0], 0.5, 0.1);
}

TEST(Synth, TandemRepeatPlantedContiguously) {
  PlantedSignal p;
  p.kind = PlantKind::TR;
  p.body = {"t", "u"};
  p.repeats = 3;
  const LabeledLog l = generate(spec_with(p, 5));
  for (std::size_t i = 0; i < l.size(); ++i) {
    EXPECT_EQ(contains_block(l.log().trace(i), {"t", "u", "t", "u", "t", "u"}), l.labels()[i] == 1);
  }
}

TEST(Synth, DeclareSignalDecidesNonVacuousSatisfaction) {
  PlantedSignal p;
  p.kind = PlantKind::Declare;
  p.constraint = parse_constraint("Response(p,q)");
  SynthSpec s = spec_with(p, 21);
  s.trace_count = 200;
  const LabeledLog l = generate(s);
  for (std::size_t i = 0; i < l.size(); ++i) {
    EXPECT_EQ(check(l.log().trace(i), *p.constraint).is_satisfied(), l.labels()[i] == 1);
  }
}

TEST(Synth, PayloadSignal) {
  PlantedSignal p;
  p.kind = PlantKind::Payload;
  p.key = "article";
  p.deviant_value = AttributeValue::integer(157);
  p.normal_values = {AttributeValue::integer(7), AttributeValue::integer(142)};
  const LabeledLog l = generate(spec_with(p, 31));
  for (std::size_t i = 0; i < l.size(); ++i) {
    const bool dev = l.log().trace(i).attributes.at("article") == AttributeValue::integer(157);
    EXPECT_EQ(dev, l.labels()[i] == 1);
  }
}

TEST(Synth, NoiseFlipsSomeLabels) {
  auto s = spec_with(mr({"m", "r", "x"}), 9);
  s.noise = 0.1;
  const LabeledLog l = generate(s);
  std::size_t flipped = 0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    flipped += contains_block(l.log().trace(i), {"m", "r", "x"}) != (l.labels()[i] == 1);
  }
  EXPECT_GT(flipped, 20u);
  EXPECT_LT(flipped, 80u);
}

TEST(Synth, XesRoundTripIsLossless) {
  auto s = spec_with(mr({"m", "r", "x"}), 2);
  s.trace_count = 60;
  const LabeledLog l = generate(s);
  const ParsedLog back = parse_xes(write_xes(l.log()));
  ASSERT_EQ(back.log.size(), l.size());
  for (std::size_t i = 0; i < l.size(); ++i) EXPECT_EQ(back.log.trace(i), l.log().trace(i));
  EXPECT_TRUE(back.diagnostics.rejected.empty());
}

TEST(Synth, InvalidSpecsRejected) {
  SynthSpec s;
  s.min_length = 0;
  EXPECT_THROW(generate(s), ConfigError);
  s = SynthSpec{};
  s.max_length = 3;
  s.min_length = 4;
  EXPECT_THROW(generate(s), ConfigError);
  s = SynthSpec{};
  s.deviant_fraction = 1.0;
  EXPECT_THROW(generate(s), ConfigError);
  s = spec_with(mr({}));
  EXPECT_THROW(generate(s), ConfigError);
  PlantedSignal tr;
  tr.kind = PlantKind::TR;
  tr.body = {"a"};
  tr.repeats = 1;
  EXPECT_THROW(generate(spec_with(tr)), ConfigError);
}
