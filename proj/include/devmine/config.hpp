#pragma once

// Run configuration: a small TOML subset ([section] / [a.b] headers,
// key = value with strings, integers, floats, booleans and flat arrays,
// # comments) mapped onto pipeline, labeling and generator settings.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "devmine/experiment.hpp"
#include "devmine/labeling.hpp"
#include "devmine/synthgen.hpp"

namespace devmine {

namespace toml {

struct Value;
using Array = std::vector<Value>;

struct Value {
  std::variant<std::string, std::int64_t, double, bool, Array> v;
  std::size_t line = 0;

  bool is_string() const { return std::holds_alternative<std::string>(v); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
  bool is_float() const { return std::holds_alternative<double>(v); }
  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_array() const { return std::holds_alternative<Array>(v); }
};

struct Section {
  std::string name;
  std::vector<std::pair<std::string, Value>> entries;
  std::size_t line = 0;

  const Value* find(std::string_view key) const {
    for (const auto& [k, v] : entries) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

/// Sections in document order; the first one is the unnamed root.
struct Document {
  std::vector<Section> sections;

  const Section* section(std::string_view name) const {
    for (const auto& s : sections) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Document parse() {
    Document doc;
    doc.sections.push_back({"", {}, 1});
    for (;;) {
      skip_blank_lines();
      if (p_ >= s_.size()) break;
      if (s_[p_] == '[') {
        ++p_;
        skip_ws();
        const std::size_t start = p_;
        while (p_ < s_.size() && s_[p_] != ']' && s_[p_] != '\n') ++p_;
        if (p_ >= s_.size() || s_[p_] != ']') fail("unterminated section header");
        std::string name = trim(s_.substr(start, p_ - start));
        ++p_;
        if (name.empty()) fail("empty section name");
        if (doc.section(name)) fail("duplicate section [" + name + "]");
        doc.sections.push_back({name, {}, line_});
        end_of_line();
        continue;
      }
      std::string key = parse_key();
      skip_ws();
      if (p_ >= s_.size() || s_[p_] != '=') fail("expected '=' after key '" + key + "'");
      ++p_;
      skip_ws();
      Value v = parse_value();
      auto& sec = doc.sections.back();
      if (sec.find(key)) fail("duplicate key '" + key + "'");
      sec.entries.emplace_back(std::move(key), std::move(v));
      end_of_line();
    }
    return doc;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("config line " + std::to_string(line_) + ": " + msg);
  }

  void skip_ws() {
    while (p_ < s_.size() && (s_[p_] == ' ' || s_[p_] == '\t' || s_[p_] == '\r')) ++p_;
  }
  void skip_comment() {
    if (p_ < s_.size() && s_[p_] == '#') {
      while (p_ < s_.size() && s_[p_] != '\n') ++p_;
    }
  }
  void skip_blank_lines() {
    for (;;) {
      skip_ws();
      skip_comment();
      if (p_ < s_.size() && s_[p_] == '\n') {
        ++p_;
        ++line_;
        continue;
      }
      return;
    }
  }
  void end_of_line() {
    skip_ws();
    skip_comment();
    if (p_ < s_.size() && s_[p_] != '\n') fail("unexpected text after value");
  }
  // whitespace, comments and newlines inside arrays
  void skip_array_space() {
    for (;;) {
      skip_ws();
      skip_comment();
      if (p_ < s_.size() && s_[p_] == '\n') {
        ++p_;
        ++line_;
        continue;
      }
      return;
    }
  }

  std::string parse_key() {
    const std::size_t start = p_;
    while (p_ < s_.size()) {
      const char c = s_[p_];
      if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-') {
        ++p_;
      } else {
        break;
      }
    }
    if (p_ == start) fail("expected a key");
    return std::string(s_.substr(start, p_ - start));
  }

  Value parse_value() {
    Value v;
    v.line = line_;
    if (p_ >= s_.size()) fail("missing value");
    const char c = s_[p_];
    if (c == '"' || c == '\'') {
      v.v = parse_string();
    } else if (c == '[') {
      ++p_;
      Array items;
      skip_array_space();
      while (p_ < s_.size() && s_[p_] != ']') {
        items.push_back(parse_value());
        skip_array_space();
        if (p_ < s_.size() && s_[p_] == ',') {
          ++p_;
          skip_array_space();
        } else if (p_ < s_.size() && s_[p_] != ']') {
          fail("expected ',' or ']' in array");
        }
      }
      if (p_ >= s_.size()) fail("unterminated array");
      ++p_;
      v.v = std::move(items);
    } else {
      const std::size_t start = p_;
      while (p_ < s_.size() && s_[p_] != ',' && s_[p_] != ']' && s_[p_] != '\n' && s_[p_] != '#' && s_[p_] != ' ' &&
             s_[p_] != '\t' && s_[p_] != '\r') {
        ++p_;
      }
      std::string tok(s_.substr(start, p_ - start));
      std::string digits;
      for (char ch : tok) {
        if (ch != '_') digits += ch;
      }
      if (tok == "true" || tok == "false") {
        v.v = tok == "true";
      } else if (!digits.empty() && digits.find_first_of(".eE") == std::string::npos &&
                 digits.find_first_not_of("+-0123456789") == std::string::npos) {
        try {
          std::size_t used = 0;
          v.v = static_cast<std::int64_t>(std::stoll(digits, &used));
          if (used != digits.size()) fail("bad integer '" + tok + "'");
        } catch (const std::logic_error&) {
          fail("bad integer '" + tok + "'");
        }
      } else {
        char* end = nullptr;
        const double d = std::strtod(digits.c_str(), &end);
        if (digits.empty() || end != digits.c_str() + digits.size()) fail("bad value '" + tok + "'");
        v.v = d;
      }
    }
    return v;
  }

  std::string parse_string() {
    const char q = s_[p_++];
    std::string out;
    while (p_ < s_.size() && s_[p_] != q) {
      if (s_[p_] == '\n') fail("newline in string");
      if (q == '"' && s_[p_] == '\\' && p_ + 1 < s_.size()) {
        const char e = s_[++p_];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("unknown escape \\") + e);
        }
        ++p_;
        continue;
      }
      out += s_[p_++];
    }
    if (p_ >= s_.size()) fail("unterminated string");
    ++p_;
    return out;
  }

  std::string_view s_;
  std::size_t p_ = 0;
  std::size_t line_ = 1;
};

}  // namespace detail

inline Document parse(std::string_view text) { return detail::Parser(text).parse(); }

}  // namespace toml

// ---- typed access ----------------------------------------------------------

namespace detail {

class SectionReader {
 public:
  SectionReader(const toml::Section* s, std::string name) : s_(s), name_(std::move(name)) {}

  bool present() const { return s_ != nullptr; }
  bool has(std::string_view key) const { return s_ && s_->find(key); }

  /// Rejects keys outside `allowed`.
  void only(std::initializer_list<std::string_view> allowed) const {
    if (!s_) return;
    for (const auto& [k, v] : s_->entries) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        throw ConfigError("unknown key '" + k + "' in [" + name_ + "] (line " + std::to_string(v.line) + ")");
      }
    }
  }

  std::string str(std::string_view key, std::string def) const {
    const auto* v = get(key);
    if (!v) return def;
    if (!v->is_string()) bad(key, "a string");
    return std::get<std::string>(v->v);
  }
  double num(std::string_view key, double def) const {
    const auto* v = get(key);
    if (!v) return def;
    if (v->is_int()) return static_cast<double>(std::get<std::int64_t>(v->v));
    if (!v->is_float()) bad(key, "a number");
    return std::get<double>(v->v);
  }
  std::int64_t integer(std::string_view key, std::int64_t def) const {
    const auto* v = get(key);
    if (!v) return def;
    if (!v->is_int()) bad(key, "an integer");
    return std::get<std::int64_t>(v->v);
  }
  std::size_t count(std::string_view key, std::size_t def) const {
    const auto x = integer(key, static_cast<std::int64_t>(def));
    if (x < 0) bad(key, "a non-negative integer");
    return static_cast<std::size_t>(x);
  }
  bool boolean(std::string_view key, bool def) const {
    const auto* v = get(key);
    if (!v) return def;
    if (!v->is_bool()) bad(key, "true or false");
    return std::get<bool>(v->v);
  }
  std::vector<std::string> strings(std::string_view key, std::vector<std::string> def) const {
    const auto* v = get(key);
    if (!v) return def;
    std::vector<std::string> out;
    if (v->is_string()) return {std::get<std::string>(v->v)};
    if (!v->is_array()) bad(key, "an array of strings");
    for (const auto& item : std::get<toml::Array>(v->v)) {
      if (!item.is_string()) bad(key, "an array of strings");
      out.push_back(std::get<std::string>(item.v));
    }
    return out;
  }
  const toml::Value* get(std::string_view key) const { return s_ ? s_->find(key) : nullptr; }

  [[noreturn]] void bad(std::string_view key, const char* what) const {
    throw ConfigError("[" + name_ + "] " + std::string(key) + " must be " + what);
  }

 private:
  const toml::Section* s_;
  std::string name_;
};

inline AttributeValue to_attribute(const toml::Value& v, const std::string& where) {
  if (v.is_string()) return AttributeValue::text(std::get<std::string>(v.v));
  if (v.is_int()) return AttributeValue::integer(std::get<std::int64_t>(v.v));
  if (v.is_float()) return AttributeValue::real(std::get<double>(v.v));
  if (v.is_bool()) return AttributeValue::boolean(std::get<bool>(v.v));
  throw ConfigError(where + " must be a scalar");
}

inline SectionReader reader(const toml::Document& doc, const std::string& name) {
  return {doc.section(name), name};
}

}  // namespace detail

// ---- labeling ----------------------------------------------------------------

inline LabelingSpec labeling_from_section(const detail::SectionReader& r) {
  const std::string kind = r.str("kind", "");
  if (kind == "decl") {
    r.only({"kind", "constraints"});
    DeclLabeling d;
    for (const auto& text : r.strings("constraints", {})) {
      try {
        d.constraints.push_back(parse_constraint(text));
      } catch (const ParseError& e) {
        throw ConfigError(std::string("[labeling] constraints: ") + e.what());
      }
    }
    LabelingSpec s = d;
    validate(s);
    return s;
  }
  if (kind == "subsequence") {
    r.only({"kind", "activities"});
    LabelingSpec s = SubsequenceLabeling{r.strings("activities", {})};
    validate(s);
    return s;
  }
  if (kind == "interleaved") {
    r.only({"kind", "activities", "times"});
    LabelingSpec s = InterleavedLabeling{r.strings("activities", {}), static_cast<int>(r.integer("times", 1))};
    validate(s);
    return s;
  }
  if (kind == "attribute") {
    r.only({"kind", "scope", "key", "value"});
    AttributeLabeling a;
    const std::string scope = r.str("scope", "trace");
    if (scope == "trace") a.scope = AttributeScope::Trace;
    else if (scope == "event") a.scope = AttributeScope::Event;
    else throw ConfigError("[labeling] scope must be \"trace\" or \"event\"");
    a.key = r.str("key", "");
    const auto* v = r.get("value");
    if (!v) throw ConfigError("[labeling] attribute labeling needs a value");
    a.value = detail::to_attribute(*v, "[labeling] value");
    LabelingSpec s = a;
    validate(s);
    return s;
  }
  throw ConfigError("[labeling] kind must be one of decl, subsequence, interleaved, attribute (got \"" + kind + "\")");
}

// ---- generator ---------------------------------------------------------------

inline SynthSpec synth_from_document(const toml::Document& doc) {
  const auto r = detail::reader(doc, "synth");
  r.only({"traces", "min_length", "max_length", "alphabet_size", "deviant_fraction", "noise", "seed", "timestamps",
          "resources"});
  SynthSpec s;
  s.trace_count = r.count("traces", s.trace_count);
  s.min_length = r.count("min_length", s.min_length);
  s.max_length = r.count("max_length", s.max_length);
  s.alphabet_size = r.count("alphabet_size", s.alphabet_size);
  s.deviant_fraction = r.num("deviant_fraction", s.deviant_fraction);
  s.noise = r.num("noise", s.noise);
  s.seed = static_cast<std::uint64_t>(r.integer("seed", static_cast<std::int64_t>(s.seed)));
  s.timestamps = r.boolean("timestamps", s.timestamps);
  s.resources = r.count("resources", s.resources);
  for (const auto& sec : doc.sections) {
    if (sec.name.rfind("planted", 0) != 0) continue;
    if (sec.name != "planted" && sec.name.rfind("planted.", 0) != 0) continue;
    const detail::SectionReader p(&sec, sec.name);
    p.only({"kind", "body", "repeats", "constraint", "key", "deviant_value", "normal_values", "bias"});
    PlantedSignal sig;
    const std::string kind = p.str("kind", "");
    if (kind == "MR") sig.kind = PlantKind::MR;
    else if (kind == "TR") sig.kind = PlantKind::TR;
    else if (kind == "Declare") sig.kind = PlantKind::Declare;
    else if (kind == "Payload") sig.kind = PlantKind::Payload;
    else throw ConfigError("[" + sec.name + "] kind must be MR, TR, Declare or Payload");
    sig.body = p.strings("body", {});
    sig.repeats = static_cast<int>(p.integer("repeats", 3));
    sig.bias = p.num("bias", 1.0);
    if (p.has("constraint")) {
      try {
        sig.constraint = parse_constraint(p.str("constraint", ""));
      } catch (const ParseError& e) {
        throw ConfigError("[" + sec.name + "] constraint: " + e.what());
      }
    }
    sig.key = p.str("key", "");
    if (const auto* v = p.get("deviant_value")) sig.deviant_value = detail::to_attribute(*v, sec.name + ".deviant_value");
    if (const auto* v = p.get("normal_values")) {
      if (!v->is_array()) throw ConfigError("[" + sec.name + "] normal_values must be an array");
      for (const auto& item : std::get<toml::Array>(v->v)) {
        sig.normal_values.push_back(detail::to_attribute(item, sec.name + ".normal_values"));
      }
    }
    s.planted.push_back(std::move(sig));
  }
  s.validate();
  return s;
}

// ---- pipeline ----------------------------------------------------------------

struct PipelineConfig {
  std::string input_path;
  std::optional<SynthSpec> synth;  // generate the log in-process instead of reading input_path
  std::string lifecycle;           // keep only events with this lifecycle:transition (empty: all)
  std::optional<LabelingSpec> labeling;  // absent: the trace attribute label = 1 marks deviants
  std::vector<std::string> encodings{"IA", "TR", "TRA", "MR", "MRA", "Declare", "Hybrid"};
  std::vector<ClassifierKind> classifiers{ClassifierKind::Tree, ClassifierKind::Ripper};
  ExperimentConfig experiment;
  std::string output_dir = "devmine-out";

  void validate() const {
    if (input_path.empty() && !synth) throw ConfigError("no input: set [input] path or add a [synth] section");
    if (encodings.empty()) throw ConfigError("[mining] encodings must not be empty");
    for (const auto& e : encodings) parse_encoding(e);
    if (classifiers.empty()) throw ConfigError("[mining] classifier must not be empty");
    if (!(experiment.theta > 0 && experiment.theta <= 1)) throw ConfigError("[mining] theta must lie in (0, 1]");
    if (experiment.coverage < 1) throw ConfigError("[mining] coverage must be >= 1");
    if (experiment.folds < 2) throw ConfigError("[mining] folds must be >= 2");
    if (experiment.inner_folds < 2) throw ConfigError("[mining] inner_folds must be >= 2");
    if (output_dir.empty()) throw ConfigError("[output] dir must not be empty");
  }
};

inline LabelingSpec effective_labeling(const PipelineConfig& c) {
  if (c.labeling) return *c.labeling;
  return AttributeLabeling{AttributeScope::Trace, "label", AttributeValue::integer(1)};
}

inline std::vector<ClassifierKind> parse_classifiers(const std::string& s) {
  if (s == "tree") return {ClassifierKind::Tree};
  if (s == "ripper") return {ClassifierKind::Ripper};
  if (s == "both") return {ClassifierKind::Tree, ClassifierKind::Ripper};
  throw ConfigError("classifier must be tree, ripper or both (got \"" + s + "\")");
}

inline std::vector<TemplateKind> parse_templates(const std::vector<std::string>& names) {
  std::vector<TemplateKind> out;
  for (const auto& n : names) {
    auto k = template_from_name(n);
    if (!k) throw ConfigError("unknown Declare template '" + n + "'");
    out.push_back(*k);
  }
  return out;
}

inline PipelineConfig pipeline_from_document(const toml::Document& doc) {
  for (const auto& s : doc.sections) {
    const bool known = s.name.empty() || s.name == "input" || s.name == "labeling" || s.name == "mining" ||
                       s.name == "grid" || s.name == "output" || s.name == "synth" || s.name == "planted" ||
                       s.name.rfind("planted.", 0) == 0;
    if (!known) throw ConfigError("unknown section [" + s.name + "] (line " + std::to_string(s.line) + ")");
    if (s.name.empty() && !s.entries.empty()) throw ConfigError("keys must live inside a [section]");
  }
  PipelineConfig c;
  const auto in = detail::reader(doc, "input");
  in.only({"path", "lifecycle"});
  c.input_path = in.str("path", "");
  c.lifecycle = in.str("lifecycle", "");
  if (doc.section("synth")) c.synth = synth_from_document(doc);

  const auto lab = detail::reader(doc, "labeling");
  if (lab.present()) c.labeling = labeling_from_section(lab);

  const auto m = detail::reader(doc, "mining");
  m.only({"encodings", "classifier", "theta", "coverage", "folds", "inner_folds", "seed", "support", "templates",
          "max_categories"});
  c.encodings = m.strings("encodings", c.encodings);
  c.classifiers = parse_classifiers(m.str("classifier", "both"));
  auto& e = c.experiment;
  e.theta = m.num("theta", e.theta);
  e.coverage = m.count("coverage", e.coverage);
  e.folds = m.count("folds", e.folds);
  e.inner_folds = m.count("inner_folds", e.inner_folds);
  e.seed = static_cast<std::uint64_t>(m.integer("seed", static_cast<std::int64_t>(e.seed)));
  const std::string support = m.str("support", "relative");
  if (support == "relative") e.support = SupportMode::Relative;
  else if (support == "raw") e.support = SupportMode::Raw;
  else throw ConfigError("[mining] support must be relative or raw");
  if (m.has("templates")) e.discovery.templates = parse_templates(m.strings("templates", {}));
  e.max_categories = m.count("max_categories", e.max_categories);

  const auto g = detail::reader(doc, "grid");
  g.only({"max_depth", "min_leaf", "criterion", "ripper_k"});
  e.tree_grid.clear();
  std::vector<std::size_t> depths{3, 5, 7, 0}, leaves{1, 5, 10}, ks{1, 2};
  auto counts = [&](const char* key, std::vector<std::size_t>& target) {
    const auto* v = g.get(key);
    if (!v) return;
    if (!v->is_array()) g.bad(key, "an array of integers");
    target.clear();
    for (const auto& item : std::get<toml::Array>(v->v)) {
      if (!item.is_int() || std::get<std::int64_t>(item.v) < 0) g.bad(key, "an array of non-negative integers");
      target.push_back(static_cast<std::size_t>(std::get<std::int64_t>(item.v)));
    }
    if (target.empty()) g.bad(key, "a non-empty array");
  };
  counts("max_depth", depths);
  counts("min_leaf", leaves);
  counts("ripper_k", ks);
  const std::string crit = g.str("criterion", "gini");
  if (crit != "gini" && crit != "infogain") throw ConfigError("[grid] criterion must be gini or infogain");
  for (auto d : depths) {
    for (auto l : leaves) {
      if (l == 0) throw ConfigError("[grid] min_leaf values must be >= 1");
      e.tree_grid.push_back({d, l, crit == "gini" ? SplitCriterion::Gini : SplitCriterion::InfoGain});
    }
  }
  e.ripper_grid.clear();
  for (auto k : ks) {
    RipperParams p;
    p.k = k;
    p.seed = e.seed;
    e.ripper_grid.push_back(p);
  }

  const auto out = detail::reader(doc, "output");
  out.only({"dir"});
  c.output_dir = out.str("dir", c.output_dir);
  return c;
}

/// Parses a config file. Call validate() once command-line overrides are applied.
inline PipelineConfig load_pipeline_config(std::string_view text) { return pipeline_from_document(toml::parse(text)); }

inline SynthSpec load_synth_spec(std::string_view text) {
  const auto doc = toml::parse(text);
  for (const auto& s : doc.sections) {
    if (!s.name.empty() && s.name != "synth" && s.name != "planted" && s.name.rfind("planted.", 0) != 0) {
      throw ConfigError("unknown section [" + s.name + "] in generator spec");
    }
  }
  return synth_from_document(doc);
}

/// Every setting with its default, in the config file syntax.
inline std::string defaults_text() {
  const PipelineConfig c;
  const SynthSpec s;
  std::string enc;
  for (std::size_t i = 0; i < c.encodings.size(); ++i) enc += (i ? ", \"" : "\"") + c.encodings[i] + "\"";
  return std::string() +
         "[input]\n"
         "path = \"\"              # XES log; leave empty when [synth] is given\n"
         "lifecycle = \"\"         # keep only events with this lifecycle:transition\n"
         "\n"
         "[labeling]\n"
         "# kind = \"decl\"         constraints = [\"Response(a,b)\"]\n"
         "# kind = \"subsequence\"  activities = [\"a\", \"b\"]\n"
         "# kind = \"interleaved\"  activities = [\"a\", \"b\"]  times = 2\n"
         "# kind = \"attribute\"    scope = \"trace\"  key = \"label\"  value = 1\n"
         "kind = \"attribute\"\n"
         "scope = \"trace\"\n"
         "key = \"label\"\n"
         "value = 1\n"
         "\n"
         "[mining]\n"
         "encodings = [" + enc + "]\n"
         "classifier = \"both\"     # tree, ripper or both\n"
         "theta = " + format_number(c.experiment.theta) + "\n"
         "coverage = " + std::to_string(c.experiment.coverage) + "\n"
         "folds = " + std::to_string(c.experiment.folds) + "\n"
         "inner_folds = " + std::to_string(c.experiment.inner_folds) + "\n"
         "seed = " + std::to_string(c.experiment.seed) + "\n"
         "support = \"relative\"    # relative or raw\n"
         "max_categories = " + std::to_string(c.experiment.max_categories) + "\n"
         "# templates = [\"Response\", \"Precedence\"]   (default: all 18)\n"
         "\n"
         "[grid]\n"
         "max_depth = [3, 5, 7, 0]   # 0 = unlimited\n"
         "min_leaf = [1, 5, 10]\n"
         "criterion = \"gini\"\n"
         "ripper_k = [1, 2]\n"
         "\n"
         "[output]\n"
         "dir = \"" + c.output_dir + "\"\n"
         "\n"
         "# [synth]\n"
         "# traces = " + std::to_string(s.trace_count) + "\n"
         "# min_length = " + std::to_string(s.min_length) + "\n"
         "# max_length = " + std::to_string(s.max_length) + "\n"
         "# alphabet_size = " + std::to_string(s.alphabet_size) + "\n"
         "# deviant_fraction = " + format_number(s.deviant_fraction) + "\n"
         "# noise = " + format_number(s.noise) + "\n"
         "# seed = " + std::to_string(s.seed) + "\n"
         "# timestamps = true\n"
         "# resources = " + std::to_string(s.resources) + "\n"
         "#\n"
         "# [planted.1]\n"
         "# kind = \"MR\"             # MR, TR, Declare or Payload\n"
         "# body = [\"m\", \"r\", \"x\"]\n"
         "# repeats = 3             # TR only\n"
         "# constraint = \"Response(p,q)\"   # Declare only\n"
         "# key = \"article\"         # Payload only\n"
         "# deviant_value = 157\n"
         "# normal_values = [7, 142, 158, 200]\n"
         "# bias = 1.0\n";
}

}  // namespace devmine
