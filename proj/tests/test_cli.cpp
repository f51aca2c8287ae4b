#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "devmine/devmine.hpp"

using namespace devmine;
namespace fs = std::filesystem;

namespace {

const char* kSmallSynth = R"(
[synth]
traces = 90
seed = 3
timestamps = false
resources = 0

[planted.mr]
kind = "MR"
body = ["m", "r", "x"]

[labeling]
kind = "subsequence"
activities = ["m", "r", "x"]

[mining]
encodings = ["MR", "Declare"]
classifier = "both"
seed = 5

[grid]
max_depth = [3]
min_leaf = [1]
ripper_k = [1]
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& body) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  os << body;
}

struct CmdResult {
  int code = -1;
  std::string out, err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("devmine_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CmdResult run(const std::string& args) const {
    const fs::path out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = std::string("'") + DEVMINE_BIN + "' " + args + " >'" + out.string() + "' 2>'" +
                            err.string() + "'";
    const int status = std::system(cmd.c_str());
    CmdResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  fs::path dir_;
};

}  // namespace

// ---- config parsing ---------------------------------------------------------------

TEST(Config, DefaultsTextParsesToDefaults) {
  const PipelineConfig c = load_pipeline_config(defaults_text());
  const PipelineConfig d;
  EXPECT_EQ(c.encodings, d.encodings);
  EXPECT_EQ(c.classifiers, d.classifiers);
  EXPECT_EQ(c.experiment.theta, 0.3);
  EXPECT_EQ(c.experiment.coverage, 5u);
  EXPECT_EQ(c.experiment.folds, 3u);
  EXPECT_EQ(c.experiment.tree_grid.size(), 12u);
  EXPECT_EQ(c.experiment.ripper_grid.size(), 2u);
  EXPECT_EQ(c.output_dir, "devmine-out");
  ASSERT_TRUE(c.labeling.has_value());
  EXPECT_TRUE(std::holds_alternative<AttributeLabeling>(*c.labeling));
}

TEST(Config, SyntaxErrorNamesLine) {
  try {
    load_pipeline_config("[mining]\ntheta = 0.3\nfolds = = 3\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Config, UnknownKeysAndSectionsRejected) {
  EXPECT_THROW(load_pipeline_config("[mining]\nthetta = 0.3\n"), ConfigError);
  EXPECT_THROW(load_pipeline_config("[minning]\n"), ConfigError);
  EXPECT_THROW(load_pipeline_config("[mining]\nclassifier = \"svm\"\n"), ConfigError);
  EXPECT_THROW(load_pipeline_config("[labeling]\nkind = \"magic\"\n"), ConfigError);
  EXPECT_THROW(load_pipeline_config("[mining]\ntemplates = [\"Respons\"]\n"), ConfigError);
}

TEST(Config, ValidationRanges) {
  auto invalid = [](const std::string& text) {
    PipelineConfig c = load_pipeline_config("[input]\npath = \"x.xes\"\n" + text);
    EXPECT_THROW(c.validate(), ConfigError) << text;
  };
  invalid("[mining]\ntheta = 0\n");
  invalid("[mining]\ntheta = 1.5\n");
  invalid("[mining]\nfolds = 1\n");
  invalid("[mining]\nencodings = [\"MR+Bogus\"]\n");
  EXPECT_THROW(load_pipeline_config("").validate(), ConfigError);  // no input at all
}

TEST(Config, LabelingKinds) {
  auto lab = [](const std::string& body) { return *load_pipeline_config("[labeling]\n" + body).labeling; };
  EXPECT_TRUE(std::holds_alternative<DeclLabeling>(lab("kind = \"decl\"\nconstraints = [\"Response(a,b)\"]\n")));
  EXPECT_TRUE(std::holds_alternative<SubsequenceLabeling>(lab("kind = \"subsequence\"\nactivities = [\"a\"]\n")));
  const auto il = lab("kind = \"interleaved\"\nactivities = [\"a\", \"b\"]\ntimes = 2\n");
  ASSERT_TRUE(std::holds_alternative<InterleavedLabeling>(il));
  EXPECT_EQ(std::get<InterleavedLabeling>(il).times, 2);
  const auto at = lab("kind = \"attribute\"\nscope = \"event\"\nkey = \"amount\"\nvalue = 36\n");
  ASSERT_TRUE(std::holds_alternative<AttributeLabeling>(at));
  EXPECT_EQ(std::get<AttributeLabeling>(at).value, AttributeValue::integer(36));
}

TEST(Config, SynthSectionWithPlantedSignals) {
  const PipelineConfig c = load_pipeline_config(kSmallSynth);
  ASSERT_TRUE(c.synth.has_value());
  EXPECT_EQ(c.synth->trace_count, 90u);
  ASSERT_EQ(c.synth->planted.size(), 1u);
  EXPECT_EQ(c.synth->planted[0].body, (std::vector<std::string>{"m", "r", "x"}));
  EXPECT_EQ(c.experiment.tree_grid.size(), 1u);
  EXPECT_EQ(c.experiment.ripper_grid[0].seed, 5u);
}

TEST(Config, ShippedConfigsLoad) {
  for (const char* name : {"synth_mr.toml", "synth_decl.toml", "synth_payload.toml"}) {
    const PipelineConfig c = load_pipeline_config(slurp(fs::path(DEVMINE_CONFIGS) / name));
    EXPECT_NO_THROW(c.validate()) << name;
    EXPECT_TRUE(c.synth.has_value()) << name;
  }
}

// ---- pipeline -----------------------------------------------------------------

TEST(Pipeline, RulesOnlyReferenceSelectedFeatures) {
  const PipelineConfig c = load_pipeline_config(kSmallSynth);
  const PipelineResult r = run_pipeline(c, load_input(c));
  const auto manifest = nlohmann::json::parse(r.files.at("manifest.json"));
  std::set<std::string> listed;
  for (const auto& f : manifest.at("files")) listed.insert(f.get<std::string>());
  for (const auto& [path, body] : r.files) {
    if (path != "manifest.json") {
      EXPECT_TRUE(listed.count(path)) << path;
    }
    if (path.rfind("rules/", 0) != 0 || path.size() < 5 || path.substr(path.size() - 5) != ".json") continue;
    const std::string enc = path.substr(6, path.find('/', 6) - 6);
    const std::string fold = path.substr(path.rfind("_fold") + 1, path.size() - 5 - path.rfind("_fold") - 1);
    const auto feats = nlohmann::json::parse(r.files.at("features/" + enc + "/" + fold + ".json"));
    std::vector<std::string> names;
    for (const auto& f : feats) names.push_back(f.at("name"));
    const auto rules = nlohmann::json::parse(body);
    std::vector<std::string> rule_feats;
    for (const auto& f : rules.at("features")) rule_feats.push_back(f.at("name"));
    EXPECT_EQ(rule_feats, names) << path;
    for (const auto& rule : rules.at("rules"))
      for (const auto& cond : rule.at("conditions")) EXPECT_LT(cond.at("feature").get<std::size_t>(), names.size());
  }
  EXPECT_EQ(manifest.at("input").at("traces"), 90);
}

TEST(Pipeline, CsvIsByteIdenticalAcrossRuns) {
  const PipelineConfig c = load_pipeline_config(kSmallSynth);
  const auto a = run_pipeline(c, load_input(c));
  const auto b = run_pipeline(c, load_input(c));
  EXPECT_EQ(a.files.at("report.csv"), b.files.at("report.csv"));
  EXPECT_EQ(a.files, b.files);
}

// ---- command line -------------------------------------------------------------------

TEST_F(CliTest, MineWritesOutputs) {
  spit(dir_ / "c.toml", kSmallSynth);
  const CmdResult r = run("mine -c '" + (dir_ / "c.toml").string() + "' -o '" + (dir_ / "out").string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("wrote"), std::string::npos);
  for (const char* f : {"report.csv", "report.json", "summary.txt", "manifest.json", "features/MR/fold0.json",
                        "rules/MR/tree_fold0.txt", "rules/Declare/ripper_fold2.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / f)) << f;
  }
  const CmdResult again = run("mine -q -c '" + (dir_ / "c.toml").string() + "' -o '" + (dir_ / "out2").string() + "'");
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(again.out, "");
  EXPECT_EQ(slurp(dir_ / "out" / "report.csv"), slurp(dir_ / "out2" / "report.csv"));
}

TEST_F(CliTest, MissingInputIsIoErrorAndWritesNothing) {
  const CmdResult r = run("mine -i '" + (dir_ / "nope.xes").string() + "' -o '" + (dir_ / "out").string() + "'");
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(fs::exists(dir_ / "out"));
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j.at("error").at("kind"), "io");
  EXPECT_EQ(j.at("error").at("exitCode"), 3);
}

TEST_F(CliTest, BadConfigExitsTwo) {
  spit(dir_ / "bad.toml", "[mining]\ntheta = 2\n[input]\npath = \"x.xes\"\n");
  EXPECT_EQ(run("mine -c '" + (dir_ / "bad.toml").string() + "'").code, 2);
  EXPECT_EQ(run("mine --no-such-flag").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST_F(CliTest, MalformedLogExitsFour) {
  spit(dir_ / "broken.xes", "<log>\n<trace>\n<event>\n</trace>\n");
  const CmdResult r = run("mine -i '" + (dir_ / "broken.xes").string() + "' -o '" + (dir_ / "out").string() + "'");
  EXPECT_EQ(r.code, 4);
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j.at("error").at("kind"), "parse");
  EXPECT_TRUE(j.at("error").contains("line"));
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(CliTest, DegenerateLabelingExitsFive) {
  std::string cfg = kSmallSynth;
  cfg.replace(cfg.find("activities = [\"m\", \"r\", \"x\"]"), 28, "activities = [\"zz\"]");
  spit(dir_ / "c.toml", cfg);
  const CmdResult r = run("mine -c '" + (dir_ / "c.toml").string() + "' -o '" + (dir_ / "out").string() + "'");
  EXPECT_EQ(r.code, 5) << r.err;
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(CliTest, SynthThenCheck) {
  spit(dir_ / "spec.toml", "[synth]\ntraces = 20\nseed = 4\n[planted.a]\nkind = \"Declare\"\nconstraint = \"Response(p,q)\"\n");
  const CmdResult s = run("synth -s '" + (dir_ / "spec.toml").string() + "' -o '" + (dir_ / "log.xes").string() + "'");
  ASSERT_EQ(s.code, 0) << s.err;
  const ParsedLog parsed = read_xes_file((dir_ / "log.xes").string());
  ASSERT_EQ(parsed.log.size(), 20u);

  const CmdResult c = run("check -l '" + (dir_ / "log.xes").string() + "' 'Response(p,q)'");
  ASSERT_EQ(c.code, 0) << c.err;
  std::istringstream in(c.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "trace\tvalue");
  std::size_t rows = 0;
  const auto c2 = parse_constraint("Response(p,q)");
  while (std::getline(in, line)) {
    const auto& t = parsed.log.trace(rows);
    EXPECT_EQ(line, t.id + "\t" + std::to_string(check(t, c2).encoded()));
    ++rows;
  }
  EXPECT_EQ(rows, 20u);
  EXPECT_EQ(run("check -l '" + (dir_ / "log.xes").string() + "' 'Response(p'").code, 4);
}

TEST_F(CliTest, RulesPrettyPrint) {
  RuleSet rs;
  Rule r;
  r.conditions = {{0, RuleOp::Gt, 0.5}};
  r.p = 4;
  rs.rules.push_back(r);
  rs.default_neg = 6;
  const std::vector<Column> cols{{"MR(m,r,x)", ColumnKind::Continuous, "Seq"}};
  spit(dir_ / "r.json", to_json(rs, cols).dump());
  const CmdResult out = run("rules '" + (dir_ / "r.json").string() + "'");
  ASSERT_EQ(out.code, 0) << out.err;
  EXPECT_EQ(out.out, "(MR(m,r,x) > 0.5) => Label=1 (4/0)\n=> Label=0 (6/0)\n");
  spit(dir_ / "bad.json", "{not json");
  EXPECT_EQ(run("rules '" + (dir_ / "bad.json").string() + "'").code, 4);
}

TEST_F(CliTest, VersionAndDefaults) {
  const CmdResult v = run("--version");
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(kVersion), std::string::npos);
  const CmdResult d = run("defaults");
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out, defaults_text());
}

TEST_F(CliTest, InputFlagCompletesConfigWithoutInput) {
  spit(dir_ / "spec.toml", "[synth]\ntraces = 60\nseed = 8\n[planted.mr]\nkind = \"MR\"\nbody = [\"m\", \"r\", \"x\"]\n");
  ASSERT_EQ(run("synth -s '" + (dir_ / "spec.toml").string() + "' -o '" + (dir_ / "log.xes").string() + "'").code, 0);
  spit(dir_ / "c.toml", "[mining]\nencodings = [\"MR\"]\nclassifier = \"tree\"\n[grid]\nmax_depth = [2]\nmin_leaf = [1]\n");
  EXPECT_EQ(run("mine -q -c '" + (dir_ / "c.toml").string() + "' -o '" + (dir_ / "out").string() + "'").code, 2);
  const CmdResult r = run("mine -q -c '" + (dir_ / "c.toml").string() + "' -i '" + (dir_ / "log.xes").string() +
                          "' -o '" + (dir_ / "out").string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "out" / "report.csv"));
}
