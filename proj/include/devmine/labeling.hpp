#pragma once

// Labeling functions that turn an event log into a deviant/normal split.

#include <map>
#include <type_traits>
#include <string>
#include <variant>
#include <vector>

#include "devmine/declare.hpp"
#include "devmine/log_model.hpp"

namespace devmine {

/// Deviant iff every constraint is satisfied non-vacuously.
struct DeclLabeling {
  std::vector<Constraint> constraints;
};

/// Deviant iff the activity list occurs contiguously at least once.
struct SubsequenceLabeling {
  std::vector<std::string> activities;
};

/// Deviant iff every activity occurs at least `times` times (any order,
/// occurrences may interleave).
struct InterleavedLabeling {
  std::vector<std::string> alphabet;
  int times = 1;
};

enum class AttributeScope { Trace, Event };

/// Deviant iff the trace attribute (or, for event scope, any event attribute)
/// equals the value.
struct AttributeLabeling {
  AttributeScope scope = AttributeScope::Trace;
  std::string key;
  AttributeValue value;
};

using LabelingSpec = std::variant<DeclLabeling, SubsequenceLabeling, InterleavedLabeling, AttributeLabeling>;

inline void validate(const LabelingSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DeclLabeling>) {
          if (s.constraints.empty()) throw ConfigError("decl labeling needs at least one constraint");
        } else if constexpr (std::is_same_v<T, SubsequenceLabeling>) {
          if (s.activities.empty()) throw ConfigError("subsequence labeling needs at least one activity");
        } else if constexpr (std::is_same_v<T, InterleavedLabeling>) {
          if (s.alphabet.empty()) throw ConfigError("interleaved labeling needs at least one activity");
          if (s.times < 1) throw ConfigError("interleaved labeling needs times >= 1");
        } else {
          if (s.key.empty()) throw ConfigError("attribute labeling needs a key");
        }
      },
      spec);
}

inline int label_trace(const Trace& trace, const LabelingSpec& spec) {
  return std::visit(
      [&](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DeclLabeling>) {
          for (const auto& c : s.constraints) {
            if (!check(trace, c).is_satisfied()) return 0;
          }
          return 1;
        } else if constexpr (std::is_same_v<T, SubsequenceLabeling>) {
          const auto& ev = trace.events;
          const std::size_t m = s.activities.size();
          for (std::size_t i = 0; i + m <= ev.size(); ++i) {
            std::size_t k = 0;
            while (k < m && ev[i + k].activity == s.activities[k]) ++k;
            if (k == m) return 1;
          }
          return 0;
        } else if constexpr (std::is_same_v<T, InterleavedLabeling>) {
          std::map<std::string, int> counts;
          for (const auto& e : trace.events) ++counts[e.activity];
          for (const auto& a : s.alphabet) {
            auto it = counts.find(a);
            if (it == counts.end() || it->second < s.times) return 0;
          }
          return 1;
        } else {
          if (s.scope == AttributeScope::Trace) {
            auto it = trace.attributes.find(s.key);
            return it != trace.attributes.end() && it->second.loosely_equals(s.value) ? 1 : 0;
          }
          for (const auto& e : trace.events) {
            auto it = e.payload.find(s.key);
            if (it != e.payload.end() && it->second.loosely_equals(s.value)) return 1;
          }
          return 0;
        }
      },
      spec);
}

/// Labels every trace; a single-class result is a DegenerateLabelingError.
inline LabeledLog label_log(const EventLog& log, const LabelingSpec& spec) {
  validate(spec);
  std::vector<int> labels;
  labels.reserve(log.size());
  for (const auto& t : log.traces()) labels.push_back(label_trace(t, spec));
  LabeledLog out(log, std::move(labels));
  out.require_both_classes("label_log");
  return out;
}

}  // namespace devmine
