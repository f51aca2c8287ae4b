// devmine command line: mine, synth, check, rules, defaults.
//
// Exit codes: 0 success, 1 unexpected failure, 2 invalid configuration or
// usage, 3 I/O error, 4 parse error, 5 degenerate labeling. Failures print one
// JSON object to stderr.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "devmine/devmine.hpp"

namespace {

using namespace devmine;

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kIo = 3, kParse = 4, kDegenerate = 5 };

int report_error(const char* kind, int code, const std::string& message, std::size_t line = 0) {
  nlohmann::json j = {{"error", {{"kind", kind}, {"exitCode", code}, {"message", message}}}};
  if (line) j["error"]["line"] = line;
  std::cerr << j.dump() << "\n";
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct MineFlags {
  std::string config;
  std::optional<std::string> input, out, encodings, classifier, lifecycle, support;
  std::optional<double> theta;
  std::optional<std::size_t> coverage, folds;
  std::optional<std::uint64_t> seed;
  bool timings = false;
  bool quiet = false;
};

int run_mine(const MineFlags& f) {
  PipelineConfig c = f.config.empty() ? PipelineConfig{} : load_pipeline_config(read_file(f.config));
  if (f.input) {
    c.input_path = *f.input;
    c.synth.reset();
  }
  if (f.out) c.output_dir = *f.out;
  if (f.encodings) c.encodings = split_list(*f.encodings);
  if (f.classifier) c.classifiers = parse_classifiers(*f.classifier);
  if (f.lifecycle) c.lifecycle = *f.lifecycle;
  if (f.support) {
    if (*f.support == "relative") c.experiment.support = SupportMode::Relative;
    else if (*f.support == "raw") c.experiment.support = SupportMode::Raw;
    else throw ConfigError("--support must be relative or raw");
  }
  if (f.theta) c.experiment.theta = *f.theta;
  if (f.coverage) c.experiment.coverage = *f.coverage;
  if (f.folds) c.experiment.folds = *f.folds;
  if (f.seed) {
    c.experiment.seed = *f.seed;
    for (auto& p : c.experiment.ripper_grid) p.seed = *f.seed;
  }
  c.validate();
  const LoadedInput in = load_input(c);
  const PipelineResult r = run_pipeline(c, in, f.timings);
  write_outputs(r, c.output_dir);
  if (!f.quiet) {
    std::cout << summary_table(r.reports);
    std::cout << "wrote " << r.files.size() << " files to " << c.output_dir << "\n";
  }
  return kOk;
}

int run_synth(const std::string& spec_path, const std::string& out, std::optional<std::uint64_t> seed) {
  SynthSpec s = load_synth_spec(read_file(spec_path));
  if (seed) s.seed = *seed;
  const LabeledLog l = generate(s);
  const std::string xes = write_xes(l.log());
  std::ofstream os(out, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write " + out);
  os << xes;
  if (!os) throw IoError("write failed for " + out);
  std::cout << "generated " << l.size() << " traces (" << l.count(1) << " deviant) into " << out << "\n";
  return kOk;
}

int run_check(const std::string& log_path, const std::string& constraint_text, const std::string& lifecycle) {
  const Constraint c = parse_constraint(constraint_text);
  ParsedLog parsed = read_xes_file(log_path);
  EventLog log = lifecycle.empty() ? std::move(parsed.log) : filter_lifecycle(parsed.log, lifecycle);
  ConditionDiagnostics diag;
  std::cout << "trace\tvalue\n";
  for (const auto& t : log.traces()) std::cout << t.id << "\t" << check(t, c, &diag).encoded() << "\n";
  if (diag.type_mismatches > 0) {
    std::cerr << "note: " << diag.type_mismatches << " comparisons had mismatched types and evaluated to false\n";
  }
  return kOk;
}

int run_rules(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("ruleset JSON: ") + e.what());
  }
  const LoadedRuleSet r = ruleset_from_json(j);
  std::cout << format_ruleset(r.rules, r.columns);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deviance mining over event logs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(devmine::kVersion));

  MineFlags mf;
  auto* mine = app.add_subcommand("mine", "Run discovery, encoding and classification over a log");
  mine->add_option("-c,--config", mf.config, "Config file");
  mine->add_option("-i,--input", mf.input, "XES log (overrides [input] path and [synth])");
  mine->add_option("-o,--out", mf.out, "Output directory");
  mine->add_option("-e,--encodings", mf.encodings, "Comma-separated encodings, e.g. MR,TR,Hybrid+Data");
  mine->add_option("--classifier", mf.classifier, "tree, ripper or both");
  mine->add_option("--theta", mf.theta, "Discovery support threshold in (0, 1]");
  mine->add_option("--coverage", mf.coverage, "Coverage threshold for feature selection");
  mine->add_option("--folds", mf.folds, "Outer cross-validation folds");
  mine->add_option("--seed", mf.seed, "Seed for folds and Ripper");
  mine->add_option("--lifecycle", mf.lifecycle, "Keep only events with this lifecycle:transition");
  mine->add_option("--support", mf.support, "Pattern support: relative or raw");
  mine->add_flag("--timings", mf.timings, "Add per-fold seconds to report.json");
  mine->add_flag("-q,--quiet", mf.quiet, "Do not print the summary table");

  std::string spec_path, synth_out;
  std::optional<std::uint64_t> synth_seed;
  auto* synth = app.add_subcommand("synth", "Generate a labeled synthetic XES log");
  synth->add_option("-s,--spec", spec_path, "Generator spec file")->required();
  synth->add_option("-o,--out", synth_out, "Output XES path")->required();
  synth->add_option("--seed", synth_seed, "Override the spec seed");

  std::string check_log, check_constraint, check_lifecycle;
  auto* chk = app.add_subcommand("check", "Evaluate one Declare constraint on every trace (-1, 0 or n)");
  chk->add_option("-l,--log", check_log, "XES log")->required();
  chk->add_option("constraint", check_constraint, "Constraint, e.g. 'Response(a,b | amount > 10)'")->required();
  chk->add_option("--lifecycle", check_lifecycle, "Keep only events with this lifecycle:transition");

  std::string rules_path;
  auto* rules = app.add_subcommand("rules", "Pretty-print a saved rule set (.json)");
  rules->add_option("file", rules_path, "Rule set JSON")->required();

  auto* defaults = app.add_subcommand("defaults", "Print every config setting with its default");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", kConfig, e.what());
  }

  try {
    if (*mine) return run_mine(mf);
    if (*synth) return run_synth(spec_path, synth_out, synth_seed);
    if (*chk) return run_check(check_log, check_constraint, check_lifecycle);
    if (*rules) return run_rules(rules_path);
    if (*defaults) {
      std::cout << defaults_text();
      return kOk;
    }
  } catch (const ConfigError& e) {
    return report_error("config", kConfig, e.what());
  } catch (const IoError& e) {
    return report_error("io", kIo, e.what());
  } catch (const ParseError& e) {
    return report_error("parse", kParse, e.what(), e.line());
  } catch (const DegenerateLabelingError& e) {
    return report_error("degenerate_labeling", kDegenerate, e.what());
  } catch (const std::exception& e) {
    return report_error("internal", kOther, e.what());
  }
  return kOther;
}
