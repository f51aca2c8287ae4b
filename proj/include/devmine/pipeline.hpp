#pragma once

// End-to-end run: load or generate the log, label it, run every encoding and
// classifier, then write the report files. Nothing is written until every
// experiment has finished.

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "devmine/config.hpp"
#include "devmine/experiment.hpp"
#include "devmine/labeling.hpp"
#include "devmine/synthgen.hpp"
#include "devmine/xes.hpp"

namespace devmine {

inline constexpr const char* kVersion = "0.1.0";

struct LoadedInput {
  LabeledLog log;
  XesDiagnostics diagnostics;
  std::string source;
};

/// Reads (or generates) the log, applies the lifecycle filter and labels it.
inline LoadedInput load_input(const PipelineConfig& c) {
  EventLog log;
  LoadedInput out;
  if (c.synth) {
    log = generate(*c.synth).log();
    out.source = "synth";
  } else {
    ParsedLog parsed = read_xes_file(c.input_path);
    log = std::move(parsed.log);
    out.diagnostics = std::move(parsed.diagnostics);
    out.source = c.input_path;
  }
  if (!c.lifecycle.empty()) {
    log = filter_lifecycle(log, c.lifecycle);
    if (log.empty()) throw ConfigError("lifecycle filter \"" + c.lifecycle + "\" leaves no events");
  }
  out.log = label_log(log, effective_labeling(c));
  return out;
}

struct PipelineResult {
  std::vector<ExperimentReport> reports;
  std::map<std::string, std::string> files;  // relative path -> contents
};

namespace detail {

inline std::string file_token(const std::string& s) {
  std::string out;
  for (char ch : s) {
    const bool keep = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '-' ||
                      ch == '_';
    out += keep ? ch : '_';
  }
  return out;
}

inline nlohmann::json config_json(const PipelineConfig& c) {
  nlohmann::json classifiers = nlohmann::json::array();
  for (auto k : c.classifiers) classifiers.push_back(to_string(k));
  nlohmann::json tree_grid = nlohmann::json::array(), ripper_grid = nlohmann::json::array();
  for (const auto& p : c.experiment.tree_grid) tree_grid.push_back(describe(p));
  for (const auto& p : c.experiment.ripper_grid) ripper_grid.push_back(describe(p));
  nlohmann::json templates = nlohmann::json::array();
  for (auto t : c.experiment.discovery.templates) templates.push_back(template_name(t));
  return {{"input", c.synth ? "synth" : c.input_path},
          {"lifecycle", c.lifecycle},
          {"encodings", c.encodings},
          {"classifiers", classifiers},
          {"theta", c.experiment.theta},
          {"coverage", c.experiment.coverage},
          {"folds", c.experiment.folds},
          {"innerFolds", c.experiment.inner_folds},
          {"seed", c.experiment.seed},
          {"support", c.experiment.support == SupportMode::Relative ? "relative" : "raw"},
          {"maxCategories", c.experiment.max_categories},
          {"templates", templates},
          {"treeGrid", tree_grid},
          {"ripperGrid", ripper_grid}};
}

}  // namespace detail

/// Runs everything in memory. `with_timings` adds wall-clock seconds to
/// report.json (the CSV never carries them).
inline PipelineResult run_pipeline(const PipelineConfig& c, const LoadedInput& in, bool with_timings = false) {
  c.validate();
  PipelineResult out;
  ExperimentConfig cfg = c.experiment;
  cfg.discovery.theta = cfg.theta;
  cfg.enrich.max_categories = cfg.max_categories;
  std::string csv = report_csv_header();
  nlohmann::json reports_json = nlohmann::json::array();
  for (const auto& token : c.encodings) {
    const EncodingSpec enc = parse_encoding(token);
    auto reports = run_experiments(in.log, enc, c.classifiers, cfg);
    const std::string enc_dir = detail::file_token(token);
    bool features_written = false;
    for (const auto& r : reports) {
      csv += report_csv_rows(r);
      reports_json.push_back(to_json(r, with_timings));
      for (const auto& f : r.folds) {
        if (f.skipped) continue;
        const std::string stem = enc_dir + "/fold" + std::to_string(f.fold);
        if (!features_written) {
          nlohmann::json feats = nlohmann::json::array();
          for (const auto& col : f.columns) {
            feats.push_back({{"name", col.name},
                             {"family", col.family},
                             {"kind", col.kind == ColumnKind::Indicator ? "indicator" : "continuous"}});
          }
          out.files["features/" + stem + ".json"] = feats.dump(2) + "\n";
        }
        const std::string rule_stem = "rules/" + enc_dir + "/" + to_string(r.classifier) + "_fold" +
                                      std::to_string(f.fold);
        out.files[rule_stem + ".txt"] = format_ruleset(f.rules, f.columns);
        out.files[rule_stem + ".json"] = to_json(f.rules, f.columns).dump(2) + "\n";
      }
      features_written = true;
    }
    for (auto& r : reports) out.reports.push_back(std::move(r));
  }
  out.files["report.csv"] = csv;
  out.files["report.json"] = reports_json.dump(2) + "\n";
  out.files["summary.txt"] = summary_table(out.reports);

  nlohmann::json files = nlohmann::json::array();
  for (const auto& [path, body] : out.files) files.push_back(path);
  const nlohmann::json manifest = {
      {"tool", "devmine"},
      {"version", kVersion},
      {"config", detail::config_json(c)},
      {"input",
       {{"source", in.source},
        {"traces", in.log.size()},
        {"deviant", in.log.count(1)},
        {"normal", in.log.count(0)},
        {"rejectedTraces", in.diagnostics.rejected.size()},
        {"unsupportedElements", in.diagnostics.unsupported_elements},
        {"invalidValues", in.diagnostics.invalid_values}}},
      {"files", files}};
  out.files["manifest.json"] = manifest.dump(2) + "\n";
  return out;
}

/// Writes every file under `dir`, creating directories as needed.
inline void write_outputs(const PipelineResult& r, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  for (const auto& [rel, body] : r.files) {
    const fs::path p = fs::path(dir) / rel;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create " + p.parent_path().string() + ": " + ec.message());
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot write " + p.string());
    os << body;
    if (!os) throw IoError("write failed for " + p.string());
  }
}

}  // namespace devmine
