#pragma once

// Declare constraints over finite traces: the template catalogue, optional
// data conditions on activation payloads, per-trace checking with
// activation/fulfillment bookkeeping, and a canonical text form.
//
// Activation table (which events carry an obligation):
//   RespondedExistence, Response, AlternateResponse, ChainResponse -> A
//   Precedence, AlternatePrecedence, ChainPrecedence               -> B
//   CoExistence, NotCoExistence                                    -> A or B
//   Succession, AlternateSuccession, ChainSuccession               -> A (forward) and B (backward)
//   NotSuccession, NotChainSuccession                              -> A
//   Existence, Absence, Init, End                                  -> none; never vacuous

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "devmine/log_model.hpp"

namespace devmine {

enum class TemplateKind {
  Existence,
  Absence,
  Init,
  End,
  RespondedExistence,
  Response,
  AlternateResponse,
  ChainResponse,
  Precedence,
  AlternatePrecedence,
  ChainPrecedence,
  CoExistence,
  Succession,
  AlternateSuccession,
  ChainSuccession,
  NotCoExistence,
  NotSuccession,
  NotChainSuccession,
};

inline constexpr std::array<TemplateKind, 18> kAllTemplates = {
    TemplateKind::Existence,          TemplateKind::Absence,          TemplateKind::Init,
    TemplateKind::End,                TemplateKind::RespondedExistence, TemplateKind::Response,
    TemplateKind::AlternateResponse,  TemplateKind::ChainResponse,    TemplateKind::Precedence,
    TemplateKind::AlternatePrecedence, TemplateKind::ChainPrecedence, TemplateKind::CoExistence,
    TemplateKind::Succession,         TemplateKind::AlternateSuccession, TemplateKind::ChainSuccession,
    TemplateKind::NotCoExistence,     TemplateKind::NotSuccession,    TemplateKind::NotChainSuccession,
};

inline const char* template_name(TemplateKind k) {
  switch (k) {
    case TemplateKind::Existence: return "Existence";
    case TemplateKind::Absence: return "Absence";
    case TemplateKind::Init: return "Init";
    case TemplateKind::End: return "End";
    case TemplateKind::RespondedExistence: return "RespondedExistence";
    case TemplateKind::Response: return "Response";
    case TemplateKind::AlternateResponse: return "AlternateResponse";
    case TemplateKind::ChainResponse: return "ChainResponse";
    case TemplateKind::Precedence: return "Precedence";
    case TemplateKind::AlternatePrecedence: return "AlternatePrecedence";
    case TemplateKind::ChainPrecedence: return "ChainPrecedence";
    case TemplateKind::CoExistence: return "CoExistence";
    case TemplateKind::Succession: return "Succession";
    case TemplateKind::AlternateSuccession: return "AlternateSuccession";
    case TemplateKind::ChainSuccession: return "ChainSuccession";
    case TemplateKind::NotCoExistence: return "NotCoExistence";
    case TemplateKind::NotSuccession: return "NotSuccession";
    case TemplateKind::NotChainSuccession: return "NotChainSuccession";
  }
  return "?";
}

inline bool is_unary(TemplateKind k) {
  return k == TemplateKind::Existence || k == TemplateKind::Absence || k == TemplateKind::Init ||
         k == TemplateKind::End;
}

inline std::optional<TemplateKind> template_from_name(std::string_view name) {
  for (auto k : kAllTemplates) {
    if (name == template_name(k)) return k;
  }
  return std::nullopt;
}

/// A template. `count` is n for Existence(n) ("at least n") and m+1 for
/// Absence(m+1) ("at most m"); unused otherwise.
struct Template {
  TemplateKind kind = TemplateKind::Response;
  int count = 1;

  std::size_t arity() const { return is_unary(kind) ? 1 : 2; }
  bool has_activation() const { return !is_unary(kind); }

  friend auto operator<=>(const Template& a, const Template& b) {
    if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) return c;
    if (a.kind == TemplateKind::Existence || a.kind == TemplateKind::Absence) return a.count <=> b.count;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Template& a, const Template& b) { return (a <=> b) == 0; }
};

// ---- data conditions -------------------------------------------------------

enum class CmpOp { Eq, Ne, Le, Gt };

inline const char* to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

struct Comparison {
  std::string key;
  CmpOp op = CmpOp::Eq;
  AttributeValue constant;
  friend bool operator==(const Comparison&, const Comparison&) = default;
};

/// Disjunction of conjunctions of comparisons.
struct DataCondition {
  std::vector<std::vector<Comparison>> disjuncts;
  friend bool operator==(const DataCondition&, const DataCondition&) = default;
};

struct ConditionDiagnostics {
  std::size_t type_mismatches = 0;
};

namespace detail {

inline bool numeric_like(const AttributeValue& v) { return !v.is_textual(); }

template <typename Lookup>
bool eval_comparison(const Comparison& c, Lookup&& lookup, ConditionDiagnostics* diag) {
  const AttributeValue* v = lookup(c.key);
  if (!v) return false;
  int cmp;
  if (numeric_like(*v) && numeric_like(c.constant)) {
    const double a = v->as_number(), b = c.constant.as_number();
    cmp = a < b ? -1 : (a > b ? 1 : 0);
  } else if (v->is_textual() && c.constant.is_textual()) {
    const int r = v->as_text().compare(c.constant.as_text());
    cmp = r < 0 ? -1 : (r > 0 ? 1 : 0);
  } else {
    if (diag) ++diag->type_mismatches;
    return false;
  }
  switch (c.op) {
    case CmpOp::Eq: return cmp == 0;
    case CmpOp::Ne: return cmp != 0;
    case CmpOp::Le: return cmp <= 0;
    case CmpOp::Gt: return cmp > 0;
  }
  return false;
}

template <typename Lookup>
bool eval_condition_with(const DataCondition& cond, Lookup&& lookup, ConditionDiagnostics* diag) {
  for (const auto& conj : cond.disjuncts) {
    bool all = true;
    for (const auto& c : conj) {
      if (!eval_comparison(c, lookup, diag)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace detail

/// Evaluates a condition on a payload. A missing attribute or a type mismatch
/// makes the comparison false; mismatches are counted in `diag`.
inline bool eval_condition(const AttributeMap& payload, const DataCondition& cond,
                           ConditionDiagnostics* diag = nullptr) {
  return detail::eval_condition_with(
      cond,
      [&](const std::string& key) -> const AttributeValue* {
        auto it = payload.find(key);
        return it == payload.end() ? nullptr : &it->second;
      },
      diag);
}

/// Same as above on the merged (trace + event) payload of one event.
inline bool eval_condition(const Trace& trace, const Event& event, const DataCondition& cond,
                           ConditionDiagnostics* diag = nullptr) {
  return detail::eval_condition_with(
      cond,
      [&](const std::string& key) -> const AttributeValue* {
        if (auto it = event.payload.find(key); it != event.payload.end()) return &it->second;
        if (auto it = trace.attributes.find(key); it != trace.attributes.end()) return &it->second;
        return nullptr;
      },
      diag);
}

// ---- constraints -----------------------------------------------------------

struct Constraint {
  Template tmpl;
  std::vector<std::string> activities;
  std::optional<DataCondition> condition;

  Constraint() = default;
  Constraint(Template t, std::vector<std::string> acts, std::optional<DataCondition> cond = std::nullopt)
      : tmpl(t), activities(std::move(acts)), condition(std::move(cond)) {
    if (activities.size() != tmpl.arity()) {
      throw Error(std::string(template_name(tmpl.kind)) + " expects " + std::to_string(tmpl.arity()) +
                  " activities");
    }
    if ((tmpl.kind == TemplateKind::Existence && tmpl.count < 1) ||
        (tmpl.kind == TemplateKind::Absence && tmpl.count < 1)) {
      throw Error("existence/absence bound must be >= 1");
    }
  }

  const std::string& a() const { return activities.at(0); }
  const std::string& b() const { return activities.at(1); }
  bool data_aware() const { return condition.has_value(); }

  /// Lexicographic by template then activities (conditions compared last by text).
  friend bool operator<(const Constraint& x, const Constraint& y);
  friend bool operator==(const Constraint& x, const Constraint& y) {
    return x.tmpl == y.tmpl && x.activities == y.activities && x.condition == y.condition;
  }
};

class CheckOutcome {
 public:
  enum class Kind { Violated, Vacuous, Satisfied };

  static CheckOutcome violated() { return {Kind::Violated, 0}; }
  static CheckOutcome vacuous() { return {Kind::Vacuous, 0}; }
  static CheckOutcome satisfied(int activations) {
    if (activations < 1) throw Error("satisfied outcome needs at least one activation");
    return {Kind::Satisfied, activations};
  }

  Kind kind() const noexcept { return kind_; }
  int activations() const noexcept { return activations_; }
  bool is_satisfied() const noexcept { return kind_ == Kind::Satisfied; }

  /// Trace-encoding value: -1 violated, 0 vacuous, n satisfied with n activations.
  int encoded() const noexcept { return kind_ == Kind::Violated ? -1 : (kind_ == Kind::Vacuous ? 0 : activations_); }

  friend bool operator==(const CheckOutcome&, const CheckOutcome&) = default;

 private:
  CheckOutcome(Kind k, int n) : kind_(k), activations_(n) {}
  Kind kind_;
  int activations_;
};

struct ActivationRecord {
  std::size_t event_index = 0;
  AttributeMap payload;
  bool fulfilled = false;
};

struct ActivationList {
  bool defined = true;  // false for the existence family (no activation notion)
  std::vector<ActivationRecord> records;
};

namespace detail {

struct ActivationScan {
  std::vector<std::size_t> index;
  std::vector<char> fulfilled;
};

// Core evaluation. Returns activation indices with fulfillment flags for
// binary templates.
inline ActivationScan scan_activations(const Trace& trace, const Constraint& c, ConditionDiagnostics* diag) {
  const auto& ev = trace.events;
  const std::size_t n = ev.size();
  const std::string& A = c.a();
  const std::string& B = c.b();
  std::vector<char> isA(n), isB(n), okCond(n, 1);
  std::size_t countA = 0, countB = 0;
  for (std::size_t i = 0; i < n; ++i) {
    isA[i] = ev[i].activity == A;
    isB[i] = ev[i].activity == B;
    countA += isA[i];
    countB += isB[i];
    if (c.condition && (isA[i] || isB[i])) okCond[i] = eval_condition(trace, ev[i], *c.condition, diag);
  }
  // next_x[i]: first index > i holding x (n when none); prev_x[i]: last index < i (npos when none)
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> nextA(n, n), nextB(n, n), prevA(n, none), prevB(n, none);
  for (std::size_t i = n; i-- > 1;) {
    nextA[i - 1] = isA[i] ? i : nextA[i];
    nextB[i - 1] = isB[i] ? i : nextB[i];
  }
  for (std::size_t i = 1; i < n; ++i) {
    prevA[i] = isA[i - 1] ? i - 1 : prevA[i - 1];
    prevB[i] = isB[i - 1] ? i - 1 : prevB[i - 1];
  }

  auto response = [&](std::size_t i) { return nextB[i] < n; };
  auto alt_response = [&](std::size_t i) { return nextB[i] < n && nextB[i] < nextA[i]; };
  auto chain_response = [&](std::size_t i) { return i + 1 < n && isB[i + 1]; };
  auto precedence = [&](std::size_t j) { return prevA[j] != none; };
  auto alt_precedence = [&](std::size_t j) { return prevA[j] != none && (prevB[j] == none || prevB[j] < prevA[j]); };
  auto chain_precedence = [&](std::size_t j) { return j > 0 && isA[j - 1]; };

  ActivationScan out;
  auto add = [&](std::size_t i, bool ok) {
    out.index.push_back(i);
    out.fulfilled.push_back(ok);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const bool a = isA[i] && okCond[i];
    const bool b = isB[i] && okCond[i];
    if (!a && !b) continue;
    switch (c.tmpl.kind) {
      case TemplateKind::RespondedExistence:
        if (a) add(i, countB > (isB[i] ? 1u : 0u));
        break;
      case TemplateKind::Response:
        if (a) add(i, response(i));
        break;
      case TemplateKind::AlternateResponse:
        if (a) add(i, alt_response(i));
        break;
      case TemplateKind::ChainResponse:
        if (a) add(i, chain_response(i));
        break;
      case TemplateKind::Precedence:
        if (b) add(i, precedence(i));
        break;
      case TemplateKind::AlternatePrecedence:
        if (b) add(i, alt_precedence(i));
        break;
      case TemplateKind::ChainPrecedence:
        if (b) add(i, chain_precedence(i));
        break;
      case TemplateKind::CoExistence:
        if (a) add(i, countB > (isB[i] ? 1u : 0u));
        else add(i, countA > 0);
        break;
      case TemplateKind::NotCoExistence:
        if (a) add(i, countB == (isB[i] ? 1u : 0u));
        else add(i, countA == 0);
        break;
      case TemplateKind::Succession:
        if (a) add(i, response(i));
        else add(i, precedence(i));
        break;
      case TemplateKind::AlternateSuccession:
        if (a) add(i, alt_response(i));
        else add(i, alt_precedence(i));
        break;
      case TemplateKind::ChainSuccession:
        if (a) add(i, chain_response(i));
        else add(i, chain_precedence(i));
        break;
      case TemplateKind::NotSuccession:
        if (a) add(i, !response(i));
        break;
      case TemplateKind::NotChainSuccession:
        if (a) add(i, !chain_response(i));
        break;
      default:
        break;
    }
  }
  return out;
}

inline CheckOutcome check_unary(const Trace& trace, const Constraint& c, ConditionDiagnostics* diag) {
  const auto& ev = trace.events;
  auto matches = [&](const Event& e) {
    return e.activity == c.a() && (!c.condition || eval_condition(trace, e, *c.condition, diag));
  };
  bool ok = false;
  switch (c.tmpl.kind) {
    case TemplateKind::Existence:
    case TemplateKind::Absence: {
      int count = 0;
      for (const auto& e : ev) count += matches(e);
      ok = c.tmpl.kind == TemplateKind::Existence ? count >= c.tmpl.count : count < c.tmpl.count;
      break;
    }
    case TemplateKind::Init: ok = !ev.empty() && matches(ev.front()); break;
    case TemplateKind::End: ok = !ev.empty() && matches(ev.back()); break;
    default: break;
  }
  return ok ? CheckOutcome::satisfied(1) : CheckOutcome::violated();
}

}  // namespace detail

/// Checks one constraint on one trace.
inline CheckOutcome check(const Trace& trace, const Constraint& c, ConditionDiagnostics* diag = nullptr) {
  if (is_unary(c.tmpl.kind)) return detail::check_unary(trace, c, diag);
  const auto scan = detail::scan_activations(trace, c, diag);
  if (scan.index.empty()) return CheckOutcome::vacuous();
  int fulfilled = 0;
  for (char f : scan.fulfilled) {
    if (!f) return CheckOutcome::violated();
    ++fulfilled;
  }
  return CheckOutcome::satisfied(fulfilled);
}

/// Activation events of a constraint in document order with their outcome.
/// Existence-family templates have no activations (`defined == false`).
inline ActivationList activations(const Trace& trace, const Constraint& c, ConditionDiagnostics* diag = nullptr) {
  ActivationList out;
  if (is_unary(c.tmpl.kind)) {
    out.defined = false;
    return out;
  }
  const auto scan = detail::scan_activations(trace, c, diag);
  for (std::size_t k = 0; k < scan.index.size(); ++k) {
    const std::size_t i = scan.index[k];
    out.records.push_back({i, merged_payload(trace, trace.events[i]), scan.fulfilled[k] != 0});
  }
  return out;
}

// ---- canonical text form ---------------------------------------------------

namespace detail {

inline bool needs_quotes(std::string_view s, bool is_key) {
  if (s.empty() || s.front() == ' ' || s.back() == ' ') return true;
  if (s.find_first_of(",()|\"\\") != std::string_view::npos) return true;
  if (is_key) {
    if (s.find_first_of(" =!<>") != std::string_view::npos) return true;
    if (s == "and" || s == "or" || s == "true" || s == "false") return true;
    if ((s[0] >= '0' && s[0] <= '9') || s[0] == '-' || s[0] == '+' || s[0] == '.') return true;
  }
  return false;
}

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

inline std::string format_constant(const AttributeValue& v) {
  switch (v.type()) {
    case AttrType::Integer:
    case AttrType::Timestamp: return std::to_string(v.as_integer());
    case AttrType::Real: {
      std::string s = format_number(v.as_number());
      if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
      return s;
    }
    case AttrType::Boolean: return v.as_bool() ? "true" : "false";
    default: return quote(v.as_text());
  }
}

}  // namespace detail

inline std::string format_condition(const DataCondition& cond) {
  std::string out;
  for (std::size_t d = 0; d < cond.disjuncts.size(); ++d) {
    if (d) out += " or ";
    const auto& conj = cond.disjuncts[d];
    for (std::size_t k = 0; k < conj.size(); ++k) {
      if (k) out += " and ";
      const auto& c = conj[k];
      out += detail::needs_quotes(c.key, true) ? detail::quote(c.key) : c.key;
      out += ' ';
      out += to_string(c.op);
      out += ' ';
      out += detail::format_constant(c.constant);
    }
  }
  return out;
}

/// `Response(a,b)`, `Existence2(a)`, `Response(a,b | resource = "D")`.
inline std::string format_constraint(const Constraint& c) {
  std::string out = template_name(c.tmpl.kind);
  if (c.tmpl.kind == TemplateKind::Existence || c.tmpl.kind == TemplateKind::Absence) {
    out += std::to_string(c.tmpl.count);
  }
  out += '(';
  for (std::size_t i = 0; i < c.activities.size(); ++i) {
    if (i) out += ',';
    out += detail::needs_quotes(c.activities[i], false) ? detail::quote(c.activities[i]) : c.activities[i];
  }
  if (c.condition) {
    out += " | ";
    out += format_condition(*c.condition);
  }
  out += ')';
  return out;
}

inline bool operator<(const Constraint& x, const Constraint& y) {
  if (x.tmpl != y.tmpl) return x.tmpl < y.tmpl;
  if (x.activities != y.activities) return x.activities < y.activities;
  if (x.condition.has_value() != y.condition.has_value()) return !x.condition.has_value();
  if (!x.condition) return false;
  return format_condition(*x.condition) < format_condition(*y.condition);
}

namespace detail {

class ConstraintParser {
 public:
  explicit ConstraintParser(std::string_view s) : s_(s) {}

  Constraint parse() {
    skip_ws();
    const std::size_t start = p_;
    while (p_ < s_.size() && ((s_[p_] >= 'A' && s_[p_] <= 'Z') || (s_[p_] >= 'a' && s_[p_] <= 'z'))) ++p_;
    const std::string_view name = s_.substr(start, p_ - start);
    auto kind = template_from_name(name);
    if (!kind) fail("unknown template '" + std::string(name) + "'");
    Template t{*kind, 1};
    if (p_ < s_.size() && s_[p_] >= '0' && s_[p_] <= '9') {
      int n = 0;
      while (p_ < s_.size() && s_[p_] >= '0' && s_[p_] <= '9') n = n * 10 + (s_[p_++] - '0');
      if (*kind != TemplateKind::Existence && *kind != TemplateKind::Absence) fail("only Existence/Absence take a bound");
      t.count = n;
    }
    skip_ws();
    expect('(');
    std::vector<std::string> acts;
    acts.push_back(activity());
    skip_ws();
    while (peek(',')) {
      ++p_;
      acts.push_back(activity());
      skip_ws();
    }
    std::optional<DataCondition> cond;
    if (peek('|')) {
      ++p_;
      cond = condition();
    }
    skip_ws();
    expect(')');
    skip_ws();
    if (p_ != s_.size()) fail("trailing characters");
    if (acts.size() != t.arity()) fail(std::string(template_name(t.kind)) + " arity mismatch");
    return Constraint(t, std::move(acts), std::move(cond));
  }

  DataCondition condition() {
    DataCondition cond;
    cond.disjuncts.push_back(conjunction());
    while (keyword("or")) cond.disjuncts.push_back(conjunction());
    return cond;
  }

  bool at_end() {
    skip_ws();
    return p_ == s_.size();
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("constraint text: " + msg + " at offset " + std::to_string(p_) + " in '" + std::string(s_) + "'");
  }
  void skip_ws() {
    while (p_ < s_.size() && (s_[p_] == ' ' || s_[p_] == '\t')) ++p_;
  }
  bool peek(char c) {
    skip_ws();
    return p_ < s_.size() && s_[p_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++p_;
  }
  bool keyword(std::string_view kw) {
    skip_ws();
    if (s_.substr(p_, kw.size()) == kw && (p_ + kw.size() == s_.size() || s_[p_ + kw.size()] == ' ')) {
      p_ += kw.size();
      return true;
    }
    return false;
  }

  std::string quoted() {
    ++p_;  // opening quote
    std::string out;
    while (p_ < s_.size() && s_[p_] != '"') {
      if (s_[p_] == '\\' && p_ + 1 < s_.size()) ++p_;
      out += s_[p_++];
    }
    if (p_ >= s_.size()) fail("unterminated string");
    ++p_;
    return out;
  }

  std::string activity() {
    skip_ws();
    if (peek('"')) return quoted();
    const std::size_t start = p_;
    while (p_ < s_.size() && s_[p_] != ',' && s_[p_] != ')' && s_[p_] != '|') ++p_;
    std::string out = trim(s_.substr(start, p_ - start));
    if (out.empty()) fail("empty activity");
    return out;
  }

  std::vector<Comparison> conjunction() {
    std::vector<Comparison> conj;
    conj.push_back(comparison());
    while (keyword("and")) conj.push_back(comparison());
    return conj;
  }

  Comparison comparison() {
    Comparison c;
    skip_ws();
    if (peek('"')) {
      c.key = quoted();
    } else {
      const std::size_t start = p_;
      while (p_ < s_.size() && s_[p_] != ' ' && s_[p_] != '=' && s_[p_] != '!' && s_[p_] != '<' && s_[p_] != '>') ++p_;
      c.key = std::string(s_.substr(start, p_ - start));
      if (c.key.empty()) fail("empty attribute key");
    }
    skip_ws();
    if (s_.substr(p_, 2) == "!=") {
      c.op = CmpOp::Ne;
      p_ += 2;
    } else if (s_.substr(p_, 2) == "<=") {
      c.op = CmpOp::Le;
      p_ += 2;
    } else if (peek('=')) {
      c.op = CmpOp::Eq;
      ++p_;
    } else if (peek('>')) {
      c.op = CmpOp::Gt;
      ++p_;
    } else {
      fail("expected comparison operator");
    }
    skip_ws();
    if (peek('"')) {
      c.constant = AttributeValue::text(quoted());
      return c;
    }
    const std::size_t start = p_;
    while (p_ < s_.size() && s_[p_] != ' ' && s_[p_] != ')') ++p_;
    const std::string tok(s_.substr(start, p_ - start));
    if (tok == "true" || tok == "false") {
      c.constant = AttributeValue::boolean(tok == "true");
    } else if (tok.find_first_of(".eEni") == std::string::npos) {
      try {
        std::size_t used = 0;
        c.constant = AttributeValue::integer(std::stoll(tok, &used));
        if (used != tok.size()) fail("bad integer constant '" + tok + "'");
      } catch (const std::logic_error&) {
        fail("bad integer constant '" + tok + "'");
      }
    } else {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (tok.empty() || end != tok.c_str() + tok.size()) fail("bad numeric constant '" + tok + "'");
      c.constant = AttributeValue::real(v);
    }
    return c;
  }

  std::string_view s_;
  std::size_t p_ = 0;
};

}  // namespace detail

inline Constraint parse_constraint(std::string_view text) { return detail::ConstraintParser(text).parse(); }

inline DataCondition parse_condition(std::string_view text) {
  detail::ConstraintParser p(text);
  DataCondition c = p.condition();
  if (!p.at_end()) throw ParseError("condition text: trailing characters in '" + std::string(text) + "'");
  return c;
}

}  // namespace devmine
