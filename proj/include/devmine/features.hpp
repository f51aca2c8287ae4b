#pragma once

// Features of every family, data-feature extraction, Fisher-score ranking,
// coverage-based selection and trace encoding.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "devmine/declare.hpp"
#include "devmine/declare_discovery.hpp"
#include "devmine/feature_matrix.hpp"
#include "devmine/sequential.hpp"

namespace devmine {

enum class FeatureFamily { IA, Seq, Decl, DeclD, Data };

inline const char* to_string(FeatureFamily f) {
  switch (f) {
    case FeatureFamily::IA: return "IA";
    case FeatureFamily::Seq: return "Seq";
    case FeatureFamily::Decl: return "Decl";
    case FeatureFamily::DeclD: return "DeclD";
    case FeatureFamily::Data: return "Data";
  }
  return "?";
}

enum class DataOp {
  TraceValue,      // numeric trace attribute
  TraceIndicator,  // text trace attribute equals value
  TracePresence,   // trace attribute present
  First,           // numeric value of the first event carrying the key
  Last,
  FirstIndicator,  // first value equals `value`
  LastIndicator,
  Count,           // events with key = value
  Max,
  Min,
  Avg,
  EventPresence,   // some event carries the key
  TraceLength,
  TraceDuration,
};

inline constexpr const char* kOtherCategory = "OTHER";

struct DataDescriptor {
  DataOp op = DataOp::TraceLength;
  std::string key;
  std::string value;
  std::vector<std::string> known;  // for an OTHER indicator: the named categories

  std::string name() const {
    switch (op) {
      case DataOp::TraceValue: return "trace:" + key;
      case DataOp::TraceIndicator: return "trace:" + key + "=" + value;
      case DataOp::TracePresence: return "has(trace:" + key + ")";
      case DataOp::First: return "first(" + key + ")";
      case DataOp::Last: return "last(" + key + ")";
      case DataOp::FirstIndicator: return "first(" + key + ")=" + value;
      case DataOp::LastIndicator: return "last(" + key + ")=" + value;
      case DataOp::Count: return "count(" + key + "," + value + ")";
      case DataOp::Max: return "max(" + key + ")";
      case DataOp::Min: return "min(" + key + ")";
      case DataOp::Avg: return "avg(" + key + ")";
      case DataOp::EventPresence: return "has(" + key + ")";
      case DataOp::TraceLength: return "traceLength";
      case DataOp::TraceDuration: return "traceDurationMs";
    }
    return "?";
  }

  bool indicator() const {
    return op == DataOp::TraceIndicator || op == DataOp::TracePresence || op == DataOp::FirstIndicator ||
           op == DataOp::LastIndicator || op == DataOp::EventPresence;
  }

  friend bool operator==(const DataDescriptor&, const DataDescriptor&) = default;
};

struct Feature {
  FeatureFamily family = FeatureFamily::IA;
  std::variant<SequentialPattern, Constraint, DataDescriptor> def;

  static Feature pattern(const SequentialPattern& p) {
    return {p.kind == PatternKind::IA ? FeatureFamily::IA : FeatureFamily::Seq, p};
  }
  static Feature declare(const Constraint& c) {
    return {c.data_aware() ? FeatureFamily::DeclD : FeatureFamily::Decl, c};
  }
  static Feature data(const DataDescriptor& d) { return {FeatureFamily::Data, d}; }

  std::string name() const {
    if (auto p = std::get_if<SequentialPattern>(&def)) return p->name();
    if (auto c = std::get_if<Constraint>(&def)) return format_constraint(*c);
    return std::get<DataDescriptor>(def).name();
  }

  ColumnKind column_kind() const {
    if (auto d = std::get_if<DataDescriptor>(&def)) return d->indicator() ? ColumnKind::Indicator : ColumnKind::Continuous;
    return ColumnKind::Continuous;
  }

  Column column() const { return {name(), column_kind(), to_string(family)}; }
};

// ---- data features ---------------------------------------------------------

namespace detail {

inline std::vector<std::string> top_categories(const std::map<std::string, std::size_t>& freq, std::size_t cap) {
  std::vector<std::pair<std::string, std::size_t>> cats(freq.begin(), freq.end());
  std::stable_sort(cats.begin(), cats.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < cats.size() && i < cap; ++i) out.push_back(cats[i].first);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Data-feature schema of a log (normally the training fold). Trace attributes
/// become direct columns, event attributes yield first/last, count (text) and
/// max/min/avg (numeric); text values expand to indicators, keeping the
/// `max_categories` most frequent values plus an OTHER indicator. A numeric
/// attribute missing from some trace gets a companion presence column.
inline std::vector<DataDescriptor> extract_data_features(const EventLog& log, std::size_t max_categories = 64) {
  std::map<std::string, bool> trace_numeric, event_numeric;
  std::map<std::string, std::map<std::string, std::size_t>> trace_freq, event_freq;
  std::map<std::string, std::size_t> trace_has, event_has;
  for (const auto& t : log.traces()) {
    for (const auto& [k, v] : t.attributes) {
      if (excluded_attribute(k)) continue;
      auto [it, fresh] = trace_numeric.try_emplace(k, true);
      if (v.is_textual()) it->second = false;
      ++trace_freq[k][v.to_string()];
      ++trace_has[k];
    }
    std::set<std::string> seen;
    for (const auto& e : t.events) {
      for (const auto& [k, v] : e.payload) {
        if (excluded_attribute(k)) continue;
        auto [it, fresh] = event_numeric.try_emplace(k, true);
        if (v.is_textual()) it->second = false;
        ++event_freq[k][v.to_string()];
        seen.insert(k);
      }
    }
    for (const auto& k : seen) ++event_has[k];
  }
  std::vector<DataDescriptor> out;
  auto indicators = [&](DataOp op, const std::string& key, const std::map<std::string, std::size_t>& freq) {
    const auto cats = detail::top_categories(freq, max_categories);
    for (const auto& v : cats) out.push_back({op, key, v, {}});
    if (freq.size() > cats.size()) out.push_back({op, key, kOtherCategory, cats});
  };
  for (const auto& [key, num] : trace_numeric) {
    if (num) {
      out.push_back({DataOp::TraceValue, key, {}, {}});
      if (trace_has[key] < log.size()) out.push_back({DataOp::TracePresence, key, {}, {}});
    } else {
      indicators(DataOp::TraceIndicator, key, trace_freq[key]);
    }
  }
  for (const auto& [key, num] : event_numeric) {
    if (num) {
      for (DataOp op : {DataOp::First, DataOp::Last, DataOp::Max, DataOp::Min, DataOp::Avg}) out.push_back({op, key, {}, {}});
      if (event_has[key] < log.size()) out.push_back({DataOp::EventPresence, key, {}, {}});
    } else {
      indicators(DataOp::FirstIndicator, key, event_freq[key]);
      indicators(DataOp::LastIndicator, key, event_freq[key]);
      const auto cats = detail::top_categories(event_freq[key], max_categories);
      for (const auto& v : cats) out.push_back({DataOp::Count, key, v, {}});
      if (event_freq[key].size() > cats.size()) out.push_back({DataOp::Count, key, kOtherCategory, cats});
    }
  }
  out.push_back({DataOp::TraceLength, {}, {}, {}});
  out.push_back({DataOp::TraceDuration, {}, {}, {}});
  return out;
}

namespace detail {

inline bool category_matches(const DataDescriptor& d, const AttributeValue& v) {
  const std::string s = v.to_string();
  if (d.value == kOtherCategory && !d.known.empty()) return !std::binary_search(d.known.begin(), d.known.end(), s);
  return s == d.value;
}

}  // namespace detail

/// Value of one data feature on one trace. Missing numeric values are 0.
inline double data_value(const Trace& t, const DataDescriptor& d) {
  switch (d.op) {
    case DataOp::TraceValue: {
      auto it = t.attributes.find(d.key);
      return it != t.attributes.end() && !it->second.is_textual() ? it->second.as_number() : 0.0;
    }
    case DataOp::TraceIndicator: {
      auto it = t.attributes.find(d.key);
      return it != t.attributes.end() && detail::category_matches(d, it->second) ? 1.0 : 0.0;
    }
    case DataOp::TracePresence: return t.attributes.count(d.key) ? 1.0 : 0.0;
    case DataOp::TraceLength: return static_cast<double>(t.events.size());
    case DataOp::TraceDuration: {
      std::optional<std::int64_t> first, last;
      for (const auto& e : t.events) {
        if (!e.timestamp) continue;
        if (!first) first = e.timestamp;
        last = e.timestamp;
      }
      return first ? static_cast<double>(*last - *first) : 0.0;
    }
    default: break;
  }
  const AttributeValue* first = nullptr;
  const AttributeValue* last = nullptr;
  double sum = 0, lo = 0, hi = 0;
  std::size_t n = 0, count = 0;
  for (const auto& e : t.events) {
    auto it = e.payload.find(d.key);
    if (it == e.payload.end()) continue;
    const AttributeValue& v = it->second;
    if (!first) first = &v;
    last = &v;
    if (d.op == DataOp::Count && detail::category_matches(d, v)) ++count;
    if (!v.is_textual()) {
      const double x = v.as_number();
      lo = n ? std::min(lo, x) : x;
      hi = n ? std::max(hi, x) : x;
      sum += x;
      ++n;
    }
  }
  switch (d.op) {
    case DataOp::First: return first && !first->is_textual() ? first->as_number() : 0.0;
    case DataOp::Last: return last && !last->is_textual() ? last->as_number() : 0.0;
    case DataOp::FirstIndicator: return first && detail::category_matches(d, *first) ? 1.0 : 0.0;
    case DataOp::LastIndicator: return last && detail::category_matches(d, *last) ? 1.0 : 0.0;
    case DataOp::Count: return static_cast<double>(count);
    case DataOp::Max: return n ? hi : 0.0;
    case DataOp::Min: return n ? lo : 0.0;
    case DataOp::Avg: return n ? sum / static_cast<double>(n) : 0.0;
    case DataOp::EventPresence: return first ? 1.0 : 0.0;
    default: return 0.0;
  }
}

// ---- scoring and selection -------------------------------------------------

/// Per-class counts, means and population variances of one column, plus the
/// global mean and variance.
struct FeatureStats {
  std::size_t n[2] = {0, 0};
  double mean[2] = {0, 0};
  double var[2] = {0, 0};
  double global_mean = 0;
  double global_var = 0;
};

inline FeatureStats feature_stats(const std::vector<double>& x, const std::vector<int>& y) {
  if (x.size() != y.size()) throw Error("feature_stats: length mismatch");
  FeatureStats s;
  double sum[2] = {0, 0}, all = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int c = y[i] ? 1 : 0;
    ++s.n[c];
    sum[c] += x[i];
    all += x[i];
  }
  for (int c : {0, 1}) s.mean[c] = s.n[c] ? sum[c] / static_cast<double>(s.n[c]) : 0.0;
  s.global_mean = x.empty() ? 0.0 : all / static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int c = y[i] ? 1 : 0;
    s.var[c] += (x[i] - s.mean[c]) * (x[i] - s.mean[c]);
    s.global_var += (x[i] - s.global_mean) * (x[i] - s.global_mean);
  }
  for (int c : {0, 1}) s.var[c] = s.n[c] ? s.var[c] / static_cast<double>(s.n[c]) : 0.0;
  s.global_var = x.empty() ? 0.0 : s.global_var / static_cast<double>(x.size());
  return s;
}

/// Sum_i n_i (mu_i - mu)^2 / Sum_i n_i sigma_i^2 over the two classes; +inf
/// for a positive numerator over a zero denominator, 0 for 0/0.
inline double fisher_score(const std::vector<double>& x, const std::vector<int>& y) {
  const FeatureStats s = feature_stats(x, y);
  if (s.n[0] == 0 || s.n[1] == 0) throw DegenerateLabelingError("fisher_score needs both classes");
  double num = 0, den = 0;
  for (int c : {0, 1}) {
    const double nc = static_cast<double>(s.n[c]);
    num += nc * (s.mean[c] - s.global_mean) * (s.mean[c] - s.global_mean);
    den += nc * s.var[c];
  }
  // rounding noise below this scale is treated as zero
  const double scale = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, s.global_mean * s.global_mean) *
                      static_cast<double>(x.size());
  if (den <= scale) return num <= scale ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

/// Greedy coverage walk over columns in descending score order (ties keep
/// input order). A column is accepted when it is nonzero on at least one row
/// whose cover count is still below `c`. Returns accepted column indices in
/// acceptance order.
inline std::vector<std::size_t> coverage_select(const std::vector<double>& scores,
                                                const std::vector<std::vector<double>>& columns, std::size_t c) {
  if (c < 1) throw ConfigError("coverage threshold must be >= 1");
  if (scores.size() != columns.size()) throw Error("coverage_select: score/column count mismatch");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  const std::size_t rows = columns.empty() ? 0 : columns[0].size();
  std::vector<std::size_t> cover(rows, 0);
  std::size_t saturated = 0;
  std::vector<std::size_t> out;
  for (auto j : order) {
    if (rows && saturated == rows) break;
    bool useful = false;
    for (std::size_t i = 0; i < rows && !useful; ++i) useful = columns[j][i] != 0.0 && cover[i] < c;
    if (!useful) continue;
    out.push_back(j);
    for (std::size_t i = 0; i < rows; ++i) {
      if (columns[j][i] != 0.0 && cover[i]++ == c - 1) ++saturated;
    }
  }
  return out;
}

// ---- encoding --------------------------------------------------------------

inline double feature_value(const Trace& t, const Feature& f, SupportMode mode = SupportMode::Relative) {
  if (auto p = std::get_if<SequentialPattern>(&f.def)) return relative_support(t, *p, mode);
  if (auto c = std::get_if<Constraint>(&f.def)) return static_cast<double>(check(t, *c).encoded());
  return data_value(t, std::get<DataDescriptor>(f.def));
}

/// Column-major values of features over a log.
inline std::vector<std::vector<double>> feature_columns(const EventLog& log, const std::vector<Feature>& features,
                                                        SupportMode mode = SupportMode::Relative) {
  std::vector<std::vector<double>> cols(features.size(), std::vector<double>(log.size()));
  for (std::size_t i = 0; i < log.size(); ++i) {
    for (std::size_t j = 0; j < features.size(); ++j) cols[j][i] = feature_value(log.trace(i), features[j], mode);
  }
  return cols;
}

/// Stable reorder into the fixed family order IA, Seq, Decl, DeclD, Data.
inline std::vector<Feature> family_order(std::vector<Feature> features) {
  std::stable_sort(features.begin(), features.end(), [](const Feature& a, const Feature& b) {
    return static_cast<int>(a.family) < static_cast<int>(b.family);
  });
  return features;
}

/// One row per trace; Seq/IA columns hold relative support, Decl/DeclD columns
/// -1 / 0 / n, Data columns the extracted values. Columns follow `features`.
inline FeatureMatrix encode(const LabeledLog& l, const std::vector<Feature>& features,
                            SupportMode mode = SupportMode::Relative) {
  FeatureMatrix m;
  for (const auto& f : features) m.columns.push_back(f.column());
  m.labels = l.labels();
  m.rows.reserve(l.size());
  for (const auto& t : l.log().traces()) {
    std::vector<double> row;
    row.reserve(features.size());
    for (const auto& f : features) row.push_back(feature_value(t, f, mode));
    m.rows.push_back(std::move(row));
  }
  return m;
}

}  // namespace devmine
