#pragma once

// XES ingestion and serialization.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "devmine/log_model.hpp"
#include "devmine/xml.hpp"

namespace devmine {

struct RejectedTrace {
  std::size_t index;  // position among <trace> elements in the document
  std::string id;
  std::string reason;
};

struct XesDiagnostics {
  std::vector<RejectedTrace> rejected;
  std::size_t unsupported_elements = 0;  // unknown tags, keyless attributes
  std::size_t invalid_values = 0;        // typed values that failed to parse (kept as text)
};

struct ParsedLog {
  EventLog log;
  XesDiagnostics diagnostics;
};

// ---- timestamps ------------------------------------------------------------

namespace detail {

// Days since 1970-01-01 for a proleptic Gregorian date (H. Hinnant's algorithm).
constexpr std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y += m <= 2;
}

inline bool read_digits(std::string_view s, std::size_t& pos, std::size_t n, int& out) {
  if (pos + n > s.size()) return false;
  out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    out = out * 10 + (c - '0');
  }
  pos += n;
  return true;
}

}  // namespace detail

/// Parses an ISO-8601 date-time (YYYY-MM-DDTHH:MM:SS[.fff][Z|+HH:MM|+HHMM])
/// into milliseconds since the epoch, UTC. Returns false on malformed input.
inline bool parse_iso8601(std::string_view s, std::int64_t& ms_out) {
  std::size_t p = 0;
  int year, month, day, hour = 0, minute = 0, second = 0;
  if (!detail::read_digits(s, p, 4, year) || p >= s.size() || s[p++] != '-') return false;
  if (!detail::read_digits(s, p, 2, month) || p >= s.size() || s[p++] != '-') return false;
  if (!detail::read_digits(s, p, 2, day)) return false;
  if (month < 1 || month > 12 || day < 1 || day > 31) return false;
  std::int64_t millis = 0;
  int offset_min = 0;
  if (p < s.size() && (s[p] == 'T' || s[p] == ' ')) {
    ++p;
    if (!detail::read_digits(s, p, 2, hour) || p >= s.size() || s[p++] != ':') return false;
    if (!detail::read_digits(s, p, 2, minute)) return false;
    if (p < s.size() && s[p] == ':') {
      ++p;
      if (!detail::read_digits(s, p, 2, second)) return false;
    }
    if (p < s.size() && s[p] == '.') {
      ++p;
      int digits = 0;
      std::int64_t frac = 0;
      while (p < s.size() && s[p] >= '0' && s[p] <= '9') {
        if (digits < 3) {
          frac = frac * 10 + (s[p] - '0');
          ++digits;
        }
        ++p;
      }
      if (digits == 0) return false;
      while (digits++ < 3) frac *= 10;
      millis = frac;
    }
    if (p < s.size()) {
      if (s[p] == 'Z') {
        ++p;
      } else if (s[p] == '+' || s[p] == '-') {
        const int sign = s[p] == '+' ? 1 : -1;
        ++p;
        int oh, om = 0;
        if (!detail::read_digits(s, p, 2, oh)) return false;
        if (p < s.size() && s[p] == ':') ++p;
        if (p < s.size() && !detail::read_digits(s, p, 2, om)) return false;
        offset_min = sign * (oh * 60 + om);
      } else {
        return false;
      }
    }
  }
  if (p != s.size() || hour > 23 || minute > 59 || second > 60) return false;
  const std::int64_t days = detail::days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
  const std::int64_t secs = days * 86400 + hour * 3600 + minute * 60 + second - offset_min * 60;
  ms_out = secs * 1000 + millis;
  return ms_out >= 0;
}

inline std::string format_iso8601(std::int64_t ms) {
  std::int64_t secs = ms / 1000;
  const int millis = static_cast<int>(ms % 1000);
  const std::int64_t days = secs / 86400;
  std::int64_t rem = secs % 86400;
  std::int64_t y;
  unsigned m, d;
  detail::civil_from_days(days, y, m, d);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02d:%02d:%02d.%03d+00:00", static_cast<long long>(y), m, d,
                static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60), millis);
  return buf;
}

// ---- parsing ---------------------------------------------------------------

namespace detail {

inline bool is_attribute_tag(std::string_view tag) {
  return tag == "string" || tag == "date" || tag == "int" || tag == "float" || tag == "boolean" || tag == "id";
}

inline AttributeValue typed_value(std::string_view tag, const std::string& raw, XesDiagnostics& diag) {
  if (tag == "string") return AttributeValue::text(raw);
  if (tag == "id") return AttributeValue::identifier(raw);
  if (tag == "int") {
    std::int64_t v{};
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (ec == std::errc() && ptr == raw.data() + raw.size()) return AttributeValue::integer(v);
  } else if (tag == "float") {
    char* end = nullptr;
    const double v = std::strtod(raw.c_str(), &end);
    if (!raw.empty() && end == raw.c_str() + raw.size() && std::isfinite(v)) return AttributeValue::real(v);
  } else if (tag == "boolean") {
    if (raw == "true" || raw == "TRUE" || raw == "True" || raw == "1") return AttributeValue::boolean(true);
    if (raw == "false" || raw == "FALSE" || raw == "False" || raw == "0") return AttributeValue::boolean(false);
  } else if (tag == "date") {
    std::int64_t ms{};
    if (parse_iso8601(raw, ms)) return AttributeValue::timestamp(ms);
  }
  ++diag.invalid_values;
  return AttributeValue::text(raw);
}

// Collects attribute children of `node` into `out`, flattening nested
// attributes, containers and lists with dotted keys.
inline void collect_attributes(const xml::Node& node, const std::string& prefix, AttributeMap& out,
                               XesDiagnostics& diag, bool allow_events) {
  std::size_t list_index = 0;
  for (const auto& child : node.children) {
    if (allow_events && (child.name == "event")) continue;
    const std::string* key = child.attribute("key");
    if (child.name == "values") {  // list payload wrapper
      collect_attributes(child, prefix, out, diag, false);
      continue;
    }
    if (child.name == "container" || child.name == "list") {
      const std::string k = key ? prefix + *key : prefix + std::to_string(list_index);
      ++list_index;
      collect_attributes(child, k + ".", out, diag, false);
      continue;
    }
    if (!is_attribute_tag(child.name)) {
      ++diag.unsupported_elements;
      continue;
    }
    const std::string* value = child.attribute("value");
    if (!key || !value) {
      ++diag.unsupported_elements;
      continue;
    }
    out.insert_or_assign(prefix + *key, typed_value(child.name, *value, diag));
    if (!child.children.empty()) collect_attributes(child, prefix + *key + ".", out, diag, false);
  }
}

}  // namespace detail

/// Parses an XES document. Traces are kept in document order; a trace with an
/// event lacking concept:name is rejected and recorded in the diagnostics.
inline ParsedLog parse_xes(std::string_view document) {
  const xml::Node root = xml::parse(document);
  if (root.name != "log") throw ParseError("XES: root element is <" + root.name + ">, expected <log>", root.line);
  XesDiagnostics diag;
  std::vector<Trace> traces;
  std::size_t trace_index = 0;
  for (const auto& tnode : root.children) {
    if (tnode.name != "trace") continue;
    Trace trace;
    detail::collect_attributes(tnode, "", trace.attributes, diag, true);
    if (auto it = trace.attributes.find("concept:name"); it != trace.attributes.end()) {
      trace.id = it->second.to_string();
      trace.attributes.erase(it);
    }
    if (trace.id.empty()) trace.id = "trace_" + std::to_string(trace_index);
    std::string reject_reason;
    for (const auto& enode : tnode.children) {
      if (enode.name != "event") continue;
      Event ev;
      detail::collect_attributes(enode, "", ev.payload, diag, false);
      auto name = ev.payload.find("concept:name");
      if (name == ev.payload.end() || name->second.to_string().empty()) {
        reject_reason = "event " + std::to_string(trace.events.size()) + " (line " + std::to_string(enode.line) +
                        ") has no concept:name";
        break;
      }
      ev.activity = name->second.to_string();
      ev.payload.erase(name);
      if (auto ts = ev.payload.find("time:timestamp"); ts != ev.payload.end()) {
        if (ts->second.type() == AttrType::Timestamp) ev.timestamp = ts->second.as_integer();
        ev.payload.erase(ts);
      }
      if (auto lc = ev.payload.find("lifecycle:transition"); lc != ev.payload.end()) {
        ev.lifecycle = lc->second.to_string();
        ev.payload.erase(lc);
      }
      trace.events.push_back(std::move(ev));
    }
    if (!reject_reason.empty()) {
      diag.rejected.push_back({trace_index, trace.id, reject_reason});
    } else {
      traces.push_back(std::move(trace));
    }
    ++trace_index;
  }
  if (traces.empty()) throw ParseError("XES: document contains no usable trace", root.line);
  return {EventLog(std::move(traces)), std::move(diag)};
}

inline ParsedLog read_xes_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_xes(ss.str());
}

// ---- writing ---------------------------------------------------------------

namespace detail {

inline void write_attribute(std::ostringstream& os, const std::string& indent, const std::string& key,
                            const AttributeValue& v) {
  const std::string value = v.type() == AttrType::Timestamp ? format_iso8601(v.as_integer()) : v.to_string();
  os << indent << '<' << to_string(v.type()) << " key=\"" << xml::escape(key) << "\" value=\"" << xml::escape(value)
     << "\"/>\n";
}

}  // namespace detail

/// Serializes a log as XES. Output is a pure function of the log.
inline std::string write_xes(const EventLog& log) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<log xes.version=\"1.0\" xes.features=\"nested-attributes\">\n";
  os << "  <extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n";
  os << "  <extension name=\"Time\" prefix=\"time\" uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
  os << "  <extension name=\"Lifecycle\" prefix=\"lifecycle\" uri=\"http://www.xes-standard.org/lifecycle.xesext\"/>\n";
  for (const auto& t : log.traces()) {
    os << "  <trace>\n";
    detail::write_attribute(os, "    ", "concept:name", AttributeValue::text(t.id));
    for (const auto& [k, v] : t.attributes) detail::write_attribute(os, "    ", k, v);
    for (const auto& e : t.events) {
      os << "    <event>\n";
      detail::write_attribute(os, "      ", "concept:name", AttributeValue::text(e.activity));
      if (e.timestamp) detail::write_attribute(os, "      ", "time:timestamp", AttributeValue::timestamp(*e.timestamp));
      if (e.lifecycle) detail::write_attribute(os, "      ", "lifecycle:transition", AttributeValue::text(*e.lifecycle));
      for (const auto& [k, v] : e.payload) detail::write_attribute(os, "      ", k, v);
      os << "    </event>\n";
    }
    os << "  </trace>\n";
  }
  os << "</log>\n";
  return os.str();
}

}  // namespace devmine
