#pragma once

// Event-log data model: typed attribute values, events, traces, logs and
// labeled logs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "devmine/common.hpp"

namespace devmine {

enum class AttrType { Text, Integer, Real, Boolean, Timestamp, Identifier };

inline const char* to_string(AttrType t) {
  switch (t) {
    case AttrType::Text: return "string";
    case AttrType::Integer: return "int";
    case AttrType::Real: return "float";
    case AttrType::Boolean: return "boolean";
    case AttrType::Timestamp: return "date";
    case AttrType::Identifier: return "id";
  }
  return "string";
}

/// One typed attribute value. The tag always matches the payload kind.
class AttributeValue {
 public:
  AttributeValue() : type_(AttrType::Text), value_(std::string()) {}

  static AttributeValue text(std::string s) { return {AttrType::Text, std::move(s)}; }
  static AttributeValue identifier(std::string s) { return {AttrType::Identifier, std::move(s)}; }
  static AttributeValue integer(std::int64_t v) { return {AttrType::Integer, v}; }
  static AttributeValue real(double v) { return {AttrType::Real, v}; }
  static AttributeValue boolean(bool v) { return {AttrType::Boolean, v}; }
  static AttributeValue timestamp(std::int64_t ms) {
    if (ms < 0) throw Error("timestamp before epoch: " + std::to_string(ms));
    return {AttrType::Timestamp, ms};
  }

  AttrType type() const noexcept { return type_; }

  bool is_textual() const noexcept { return type_ == AttrType::Text || type_ == AttrType::Identifier; }
  /// Int and float attributes; the ones aggregated with max/min/avg.
  bool is_numeric() const noexcept { return type_ == AttrType::Integer || type_ == AttrType::Real; }

  /// Numeric view: integers, reals, booleans (0/1) and timestamps (ms).
  double as_number() const {
    switch (type_) {
      case AttrType::Integer:
      case AttrType::Timestamp: return static_cast<double>(std::get<std::int64_t>(value_));
      case AttrType::Real: return std::get<double>(value_);
      case AttrType::Boolean: return std::get<bool>(value_) ? 1.0 : 0.0;
      default: throw Error("attribute is not numeric");
    }
  }
  std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
  bool as_bool() const { return std::get<bool>(value_); }
  const std::string& as_text() const { return std::get<std::string>(value_); }

  /// Lexical form as it would appear in an XES value="" attribute.
  std::string to_string() const {
    switch (type_) {
      case AttrType::Text:
      case AttrType::Identifier: return as_text();
      case AttrType::Integer:
      case AttrType::Timestamp: return std::to_string(std::get<std::int64_t>(value_));
      case AttrType::Real: return format_number(std::get<double>(value_));
      case AttrType::Boolean: return std::get<bool>(value_) ? "true" : "false";
    }
    return {};
  }

  /// Loose equality used by labelings: numbers compare numerically across
  /// int/float/bool, everything else by lexical form.
  bool loosely_equals(const AttributeValue& other) const {
    const bool a_num = type_ != AttrType::Text && type_ != AttrType::Identifier;
    const bool b_num = other.type_ != AttrType::Text && other.type_ != AttrType::Identifier;
    if (a_num && b_num) return as_number() == other.as_number();
    return to_string() == other.to_string();
  }

  friend bool operator==(const AttributeValue& a, const AttributeValue& b) {
    return a.type_ == b.type_ && a.value_ == b.value_;
  }

 private:
  template <typename V>
  AttributeValue(AttrType t, V v) : type_(t), value_(std::move(v)) {}

  AttrType type_;
  std::variant<std::string, std::int64_t, double, bool> value_;
};

using AttributeMap = std::map<std::string, AttributeValue>;

struct Event {
  std::string activity;
  std::optional<std::int64_t> timestamp;
  std::optional<std::string> lifecycle;
  AttributeMap payload;

  friend bool operator==(const Event&, const Event&) = default;
};

struct Trace {
  std::string id;
  AttributeMap attributes;
  std::vector<Event> events;

  std::size_t size() const noexcept { return events.size(); }
  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Event payload as seen by data conditions: trace attributes overlaid by the
/// event's own attributes.
inline AttributeMap merged_payload(const Trace& trace, const Event& event) {
  AttributeMap out = trace.attributes;
  for (const auto& [k, v] : event.payload) out.insert_or_assign(k, v);
  return out;
}

/// Immutable collection of traces. The alphabet is the sorted union of event
/// activities; each trace is also kept as a sequence of alphabet indices.
class EventLog {
 public:
  EventLog() = default;

  explicit EventLog(std::vector<Trace> traces) : traces_(std::move(traces)) {
    if (traces_.empty()) throw Error("an event log needs at least one trace");
    std::vector<std::string> names;
    for (auto& t : traces_) {
      if (t.id.empty()) throw Error("trace without id");
      for (auto& e : t.events) {
        if (e.activity.empty()) throw Error("event without activity in trace " + t.id);
        names.push_back(e.activity);
      }
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    alphabet_ = std::move(names);
    for (std::size_t i = 0; i < alphabet_.size(); ++i) index_.emplace(alphabet_[i], static_cast<int>(i));
    sequences_.reserve(traces_.size());
    for (auto& t : traces_) {
      std::vector<int> seq;
      seq.reserve(t.events.size());
      for (auto& e : t.events) seq.push_back(index_.at(e.activity));
      sequences_.push_back(std::move(seq));
    }
  }

  const std::vector<Trace>& traces() const noexcept { return traces_; }
  const Trace& trace(std::size_t i) const { return traces_.at(i); }
  std::size_t size() const noexcept { return traces_.size(); }
  bool empty() const noexcept { return traces_.empty(); }

  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::vector<std::vector<int>>& sequences() const noexcept { return sequences_; }
  const std::vector<int>& sequence(std::size_t i) const { return sequences_.at(i); }

  /// Alphabet index of an activity, or -1 when it never occurs.
  int activity_id(const std::string& activity) const {
    auto it = index_.find(activity);
    return it == index_.end() ? -1 : it->second;
  }
  const std::string& activity_name(int id) const { return alphabet_.at(static_cast<std::size_t>(id)); }

  /// New log with the traces at the given indices, in that order.
  EventLog subset(const std::vector<std::size_t>& indices) const {
    std::vector<Trace> out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(traces_.at(i));
    return EventLog(std::move(out));
  }

 private:
  std::vector<Trace> traces_;
  std::vector<std::string> alphabet_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> sequences_;
};

/// Keeps only events whose lifecycle:transition equals `transition`
/// (events without a lifecycle are kept). Traces left empty are dropped.
inline EventLog filter_lifecycle(const EventLog& log, const std::string& transition) {
  std::vector<Trace> out;
  for (const auto& t : log.traces()) {
    Trace copy{t.id, t.attributes, {}};
    for (const auto& e : t.events) {
      if (!e.lifecycle || *e.lifecycle == transition) copy.events.push_back(e);
    }
    if (!copy.events.empty()) out.push_back(std::move(copy));
  }
  return EventLog(std::move(out));
}

/// An event log with one 0/1 class per trace (1 = deviant).
class LabeledLog {
 public:
  LabeledLog() = default;
  LabeledLog(EventLog log, std::vector<int> labels) : log_(std::move(log)), labels_(std::move(labels)) {
    if (labels_.size() != log_.size()) throw Error("label count does not match trace count");
    for (int y : labels_) {
      if (y != 0 && y != 1) throw Error("labels must be 0 or 1");
    }
  }

  const EventLog& log() const noexcept { return log_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }

  std::size_t count(int label) const {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
  }
  bool both_classes() const { return count(0) > 0 && count(1) > 0; }

  void require_both_classes(const char* what) const {
    if (!both_classes()) {
      throw DegenerateLabelingError(std::string(what) + ": labeling is single-class (" +
                                    std::to_string(count(1)) + " deviant, " + std::to_string(count(0)) +
                                    " normal)");
    }
  }

  std::vector<std::size_t> indices_of(int label) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == label) out.push_back(i);
    }
    return out;
  }

  LabeledLog subset(const std::vector<std::size_t>& indices) const {
    std::vector<int> y;
    y.reserve(indices.size());
    for (auto i : indices) y.push_back(labels_.at(i));
    return {log_.subset(indices), std::move(y)};
  }

 private:
  EventLog log_;
  std::vector<int> labels_;
};

struct ClassSplit {
  EventLog deviant;
  EventLog normal;
};

/// Partitions a labeled log into its deviant and normal sub-logs, keeping the
/// within-class order.
inline ClassSplit split_by_label(const LabeledLog& l) {
  l.require_both_classes("split_by_label");
  return {l.log().subset(l.indices_of(1)), l.log().subset(l.indices_of(0))};
}

}  // namespace devmine
