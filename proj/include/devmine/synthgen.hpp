#pragma once

// Seeded synthetic labeled logs with planted signals: sequential bodies
// (inserted once, or repeated back to back), Declare constraints (enforced by
// rejection sampling) and trace-attribute payloads.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "devmine/declare.hpp"
#include "devmine/log_model.hpp"

namespace devmine {

enum class PlantKind { MR, TR, Declare, Payload };

struct PlantedSignal {
  PlantKind kind = PlantKind::MR;
  std::vector<std::string> body;  // MR / TR
  int repeats = 3;                // TR
  std::optional<Constraint> constraint;
  std::string key;  // Payload
  AttributeValue deviant_value;
  std::vector<AttributeValue> normal_values;
  double bias = 1.0;  // P(signal | deviant); P(signal | normal) = 1 - bias
};

struct SynthSpec {
  std::size_t trace_count = 500;
  std::size_t min_length = 8;
  std::size_t max_length = 16;
  std::size_t alphabet_size = 8;
  double deviant_fraction = 0.5;
  double noise = 0.0;
  std::uint64_t seed = 1;
  bool timestamps = true;
  std::size_t resources = 4;  // 0 disables org:resource
  std::vector<PlantedSignal> planted;

  void validate() const {
    if (trace_count < 2) throw ConfigError("synth: trace_count must be >= 2");
    if (min_length == 0 || max_length < min_length) throw ConfigError("synth: need 1 <= min_length <= max_length");
    if (alphabet_size == 0) throw ConfigError("synth: alphabet_size must be >= 1");
    if (!(deviant_fraction > 0 && deviant_fraction < 1)) throw ConfigError("synth: deviant_fraction must lie in (0, 1)");
    if (!(noise >= 0 && noise < 1)) throw ConfigError("synth: noise must lie in [0, 1)");
    const auto deviants = static_cast<std::size_t>(std::llround(deviant_fraction * static_cast<double>(trace_count)));
    if (deviants == 0 || deviants == trace_count) throw ConfigError("synth: both classes must be non-empty");
    for (const auto& p : planted) {
      if (!(p.bias >= 0 && p.bias <= 1)) throw ConfigError("synth: bias must lie in [0, 1]");
      if ((p.kind == PlantKind::MR || p.kind == PlantKind::TR) && p.body.empty()) {
        throw ConfigError("synth: sequential signal needs a body");
      }
      if (p.kind == PlantKind::TR && p.repeats < 2) throw ConfigError("synth: tandem repeats need repeats >= 2");
      if (p.kind == PlantKind::Declare && !p.constraint) throw ConfigError("synth: declare signal needs a constraint");
      if (p.kind == PlantKind::Payload && (p.key.empty() || p.normal_values.empty())) {
        throw ConfigError("synth: payload signal needs a key and normal values");
      }
    }
  }
};

/// Filler activity names f01, f02, ... skipping any planted activity.
inline std::vector<std::string> filler_alphabet(const SynthSpec& spec) {
  std::set<std::string> planted;
  for (const auto& p : spec.planted) {
    planted.insert(p.body.begin(), p.body.end());
    if (p.constraint) planted.insert(p.constraint->activities.begin(), p.constraint->activities.end());
  }
  std::vector<std::string> out;
  for (std::size_t i = 1; out.size() < spec.alphabet_size; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "f%02zu", i);
    if (!planted.count(buf)) out.emplace_back(buf);
  }
  return out;
}

namespace detail {

// A trace under construction is a list of segments; planted blocks are single
// segments, so later insertions never split them.
using Segments = std::vector<std::vector<std::string>>;

inline void insert_block(Segments& segs, std::vector<std::string> block, Rng& rng) {
  const auto pos = static_cast<std::size_t>(rng.below(segs.size() + 1));
  segs.insert(segs.begin() + static_cast<long>(pos), std::move(block));
}

inline std::vector<std::string> flatten(const Segments& segs) {
  std::vector<std::string> out;
  for (const auto& s : segs) out.insert(out.end(), s.begin(), s.end());
  return out;
}

inline Trace make_trace(const std::vector<std::string>& acts, std::string id) {
  Trace t;
  t.id = std::move(id);
  for (const auto& a : acts) t.events.push_back({a, std::nullopt, std::nullopt, {}});
  return t;
}

}  // namespace detail

/// Generates the labeled log. The deviant count is round(deviant_fraction *
/// trace_count), spread over the traces by a seeded shuffle; noise flips each
/// final label with that probability. Labels are also stored as the trace
/// attribute `label` (1 deviant, 0 normal).
inline LabeledLog generate(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const auto filler = filler_alphabet(spec);
  const auto deviants = static_cast<std::size_t>(std::llround(spec.deviant_fraction * static_cast<double>(spec.trace_count)));
  std::vector<int> labels(spec.trace_count, 0);
  std::fill(labels.begin(), labels.begin() + static_cast<long>(deviants), 1);
  rng.shuffle(labels);

  std::vector<Trace> traces;
  traces.reserve(spec.trace_count);
  const std::int64_t base_ms = 1577836800000;  // 2020-01-01T00:00:00Z
  for (std::size_t i = 0; i < spec.trace_count; ++i) {
    const bool deviant = labels[i] == 1;
    const auto len = static_cast<std::size_t>(
        rng.between(static_cast<std::int64_t>(spec.min_length), static_cast<std::int64_t>(spec.max_length)));
    detail::Segments acts;
    for (std::size_t k = 0; k < len; ++k) acts.push_back({filler[rng.below(filler.size())]});

    AttributeMap trace_attrs;
    std::vector<std::pair<const PlantedSignal*, bool>> declare_signals;
    for (const auto& p : spec.planted) {
      const bool present = rng.chance(deviant ? p.bias : 1.0 - p.bias);
      switch (p.kind) {
        case PlantKind::MR: if (present) detail::insert_block(acts, p.body, rng); break;
        case PlantKind::TR:
          if (present) {
            std::vector<std::string> block;
            for (int r = 0; r < p.repeats; ++r) block.insert(block.end(), p.body.begin(), p.body.end());
            detail::insert_block(acts, block, rng);
          }
          break;
        case PlantKind::Declare: declare_signals.emplace_back(&p, present); break;
        case PlantKind::Payload:
          trace_attrs[p.key] = present ? p.deviant_value : p.normal_values[rng.below(p.normal_values.size())];
          break;
      }
    }
    for (const auto& [sig, present] : declare_signals) {
      const Constraint& c = *sig->constraint;
      bool done = false;
      for (int attempt = 0; attempt < 2000 && !done; ++attempt) {
        detail::Segments cand = acts;
        for (const auto& a : c.activities) {
          const auto copies = rng.below(3);
          for (std::uint64_t n = 0; n < copies; ++n) detail::insert_block(cand, {a}, rng);
        }
        if (check(detail::make_trace(detail::flatten(cand), "probe"), c).is_satisfied() == present) {
          acts = std::move(cand);
          done = true;
        }
      }
      if (!done) throw ConfigError("synth: cannot realise " + format_constraint(c) + (present ? "" : " (negated)"));
    }

    char id[32];
    std::snprintf(id, sizeof id, "trace_%05zu", i + 1);
    Trace t = detail::make_trace(detail::flatten(acts), id);
    t.attributes = std::move(trace_attrs);
    std::int64_t ts = base_ms + static_cast<std::int64_t>(i) * 86400000;
    for (auto& e : t.events) {
      if (spec.timestamps) {
        ts += 60000 * rng.between(1, 60);
        e.timestamp = ts;
      }
      if (spec.resources > 0) e.payload["org:resource"] = AttributeValue::text("R" + std::to_string(1 + rng.below(spec.resources)));
    }
    traces.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (spec.noise > 0 && rng.chance(spec.noise)) labels[i] = 1 - labels[i];
    traces[i].attributes["label"] = AttributeValue::integer(labels[i]);
  }
  return LabeledLog(EventLog(std::move(traces)), std::move(labels));
}

}  // namespace devmine
