#pragma once

// Sequential patterns: individual activities (IA), tandem repeats (TR),
// maximal repeats (MR) and their order-insensitive alphabet variants
// (TRA, MRA), plus per-trace relative support and class-frequency discovery.

#include <algorithm>
#include <climits>
#include <tuple>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "devmine/declare.hpp"
#include "devmine/log_model.hpp"

namespace devmine {

enum class PatternKind { IA, TR, TRA, MR, MRA };

inline const char* to_string(PatternKind k) {
  switch (k) {
    case PatternKind::IA: return "IA";
    case PatternKind::TR: return "TR";
    case PatternKind::TRA: return "TRA";
    case PatternKind::MR: return "MR";
    case PatternKind::MRA: return "MRA";
  }
  return "?";
}

inline bool is_alphabet_kind(PatternKind k) { return k == PatternKind::TRA || k == PatternKind::MRA; }

struct SequentialPattern {
  PatternKind kind = PatternKind::IA;
  std::vector<std::string> body;

  SequentialPattern() = default;
  SequentialPattern(PatternKind k, std::vector<std::string> b) : kind(k), body(std::move(b)) {
    if (body.empty()) throw Error("pattern body must not be empty");
    if (is_alphabet_kind(kind)) {
      std::sort(body.begin(), body.end());
      body.erase(std::unique(body.begin(), body.end()), body.end());
    }
    if (kind == PatternKind::IA && body.size() != 1) throw Error("IA pattern body has exactly one activity");
  }

  /// `MR(m,r,x)`, `TRA{a,b,c}`.
  std::string name() const {
    const bool set = is_alphabet_kind(kind);
    std::string out = to_string(kind);
    out += set ? '{' : '(';
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) out += ',';
      out += detail::needs_quotes(body[i], false) ? detail::quote(body[i]) : body[i];
    }
    out += set ? '}' : ')';
    return out;
  }

  friend auto operator<=>(const SequentialPattern& a, const SequentialPattern& b) {
    if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) return c;
    return a.body <=> b.body;
  }
  friend bool operator==(const SequentialPattern&, const SequentialPattern&) = default;
};

// ---- tandem repeats --------------------------------------------------------

namespace detail {

template <typename T>
bool is_primitive(const std::vector<T>& s, std::size_t b, std::size_t p) {
  for (std::size_t d = 1; d < p; ++d) {
    if (p % d) continue;
    bool periodic = true;
    for (std::size_t k = d; k < p && periodic; ++k) periodic = s[b + k] == s[b + k - d];
    if (periodic) return false;
  }
  return true;
}

/// Primitive bodies repeated back to back at least twice, with their maximal
/// consecutive repetition count.
template <typename T>
std::map<std::vector<T>, int> tandem_bodies(const std::vector<T>& s) {
  std::map<std::vector<T>, int> out;
  const std::size_t n = s.size();
  for (std::size_t p = 1; 2 * p <= n; ++p) {
    for (std::size_t i = 0; i + 2 * p <= n; ++i) {
      int k = 1;
      while (i + (k + 1) * p <= n && std::equal(s.begin() + i, s.begin() + i + p, s.begin() + i + k * p)) ++k;
      if (k < 2 || !is_primitive(s, i, p)) continue;
      std::vector<T> body(s.begin() + i, s.begin() + i + p);
      int& best = out[body];
      best = std::max(best, k);
    }
  }
  return out;
}

/// Order-insensitive tandem repeats: runs of >= 2 consecutive blocks of equal
/// length, each block a permutation of the same set of distinct activities.
template <typename T>
std::map<std::vector<T>, int> tandem_alphabets(const std::vector<T>& s) {
  std::map<std::vector<T>, int> out;
  const std::size_t n = s.size();
  auto block_set = [&](std::size_t b, std::size_t p, std::vector<T>& set) {
    set.assign(s.begin() + b, s.begin() + b + p);
    std::sort(set.begin(), set.end());
    return std::adjacent_find(set.begin(), set.end()) == set.end();
  };
  std::vector<T> first, next;
  for (std::size_t p = 1; 2 * p <= n; ++p) {
    for (std::size_t i = 0; i + 2 * p <= n; ++i) {
      if (!block_set(i, p, first)) continue;
      int k = 1;
      while (i + (k + 1) * p <= n && block_set(i + k * p, p, next) && next == first) ++k;
      if (k < 2) continue;
      int& best = out[first];
      best = std::max(best, k);
    }
  }
  return out;
}

inline std::vector<std::string> activities_of(const Trace& t) {
  std::vector<std::string> out;
  out.reserve(t.events.size());
  for (const auto& e : t.events) out.push_back(e.activity);
  return out;
}

}  // namespace detail

inline std::map<SequentialPattern, int> tandem_repeats(const Trace& trace) {
  std::map<SequentialPattern, int> out;
  for (auto& [body, k] : detail::tandem_bodies(detail::activities_of(trace))) {
    out.emplace(SequentialPattern(PatternKind::TR, body), k);
  }
  return out;
}

inline std::map<SequentialPattern, int> tandem_repeat_alphabets(const Trace& trace) {
  std::map<SequentialPattern, int> out;
  for (auto& [set, k] : detail::tandem_alphabets(detail::activities_of(trace))) {
    out.emplace(SequentialPattern(PatternKind::TRA, set), k);
  }
  return out;
}

// ---- maximal repeats -------------------------------------------------------

namespace detail {

/// Suffix array by prefix doubling.
inline std::vector<std::size_t> suffix_array(const std::vector<long>& t) {
  const std::size_t n = t.size();
  std::vector<std::size_t> sa(n);
  std::vector<long> rank(t.begin(), t.end()), nrank(n);
  for (std::size_t i = 0; i < n; ++i) sa[i] = i;
  for (std::size_t k = 1;; k <<= 1) {
    auto key = [&](std::size_t i) { return std::pair<long, long>(rank[i], i + k < n ? rank[i + k] : LONG_MIN); };
    std::sort(sa.begin(), sa.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    nrank[sa[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) nrank[sa[i]] = nrank[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]) ? 1 : 0);
    rank.swap(nrank);
    if (n == 0 || rank[sa[n - 1]] == static_cast<long>(n - 1) || k >= n) break;
  }
  return sa;
}

/// lcp[i] = longest common prefix of suffixes sa[i-1] and sa[i] (Kasai).
inline std::vector<std::size_t> lcp_array(const std::vector<long>& t, const std::vector<std::size_t>& sa) {
  const std::size_t n = t.size();
  std::vector<std::size_t> rank(n), lcp(n, 0);
  for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = i;
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && t[i + h] == t[j + h]) ++h;
    lcp[rank[i]] = h;
    if (h) --h;
  }
  return lcp;
}

/// Maximal repeats over integer sequences. A repeat occurs at least twice
/// (occurrences may overlap) and neither all its left contexts nor all its
/// right contexts agree; a trace boundary is a context unique to its occurrence.
inline std::set<std::vector<int>> maximal_repeat_bodies(const std::vector<std::vector<int>>& seqs) {
  std::vector<long> t;
  long sep = -1;
  for (const auto& s : seqs) {
    t.insert(t.end(), s.begin(), s.end());
    t.push_back(sep--);  // negative separators, unique per trace
  }
  std::set<std::vector<int>> out;
  const std::size_t n = t.size();
  if (n < 2) return out;
  const auto sa = suffix_array(t);
  const auto lcp = lcp_array(t, sa);
  // bwt[i]: symbol before suffix sa[i]; a boundary when it is a separator or absent.
  std::vector<long> bwt(n);
  std::vector<char> boundary(n);
  for (std::size_t i = 0; i < n; ++i) {
    boundary[i] = sa[i] == 0 || t[sa[i] - 1] < 0;
    bwt[i] = sa[i] == 0 ? -1 : t[sa[i] - 1];
  }
  // diverse_prefix[i]: count of k < i with boundary[k] or bwt[k] != bwt[k+1]
  std::vector<std::size_t> diverse_prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const bool d = boundary[i] || (i + 1 < n && bwt[i] != bwt[i + 1]);
    diverse_prefix[i + 1] = diverse_prefix[i] + (d ? 1 : 0);
  }
  auto left_diverse = [&](std::size_t lb, std::size_t rb) {
    // a boundary anywhere in [lb, rb], or a change between neighbours in [lb, rb)
    for (std::size_t k : {lb, rb}) {
      if (boundary[k]) return true;
    }
    return diverse_prefix[rb] - diverse_prefix[lb] > 0;
  };
  struct Frame {
    std::size_t lcp, lb;
  };
  std::vector<Frame> stack{{0, 0}};
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t cur = i < n ? lcp[i] : 0;
    std::size_t lb = i - 1;
    while (cur < stack.back().lcp) {
      const Frame top = stack.back();
      stack.pop_back();
      const std::size_t rb = i - 1;
      if (left_diverse(top.lb, rb)) {
        const std::size_t start = sa[top.lb];
        out.insert(std::vector<int>(t.begin() + start, t.begin() + start + top.lcp));
      }
      lb = top.lb;
    }
    if (cur > stack.back().lcp) stack.push_back({cur, lb});
  }
  return out;
}

/// Order-insensitive maximal repeats. Candidates are windows of distinct
/// activities keyed by their set; a set repeats when it has >= 2
/// non-overlapping window occurrences in the log, and is maximal unless all
/// its windows lie inside windows of one larger repeated set.
inline std::set<std::vector<int>> maximal_alphabet_bodies(const std::vector<std::vector<int>>& seqs) {
  // Every window of a set S has length |S|, so a window is identified by
  // (trace, begin); begins are collected in increasing order per trace.
  using Begins = std::map<std::size_t, std::vector<std::size_t>>;
  std::map<std::vector<int>, Begins> windows;
  for (std::size_t tr = 0; tr < seqs.size(); ++tr) {
    const auto& s = seqs[tr];
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::set<int> seen;
      for (std::size_t j = i; j < s.size() && seen.insert(s[j]).second; ++j) {
        windows[std::vector<int>(seen.begin(), seen.end())][tr].push_back(i);
      }
    }
  }
  std::vector<const std::pair<const std::vector<int>, Begins>*> repeated;
  for (const auto& entry : windows) {
    const std::size_t len = entry.first.size();
    std::size_t count = 0;
    for (const auto& [tr, begins] : entry.second) {
      std::size_t free_from = 0;
      for (auto b : begins) {
        if (b >= free_from) {
          ++count;
          free_from = b + len;
        }
      }
    }
    if (count >= 2) repeated.push_back(&entry);
  }
  auto inside = [](const Begins& outer, std::size_t outer_len, std::size_t tr, std::size_t b, std::size_t len) {
    auto it = outer.find(tr);
    if (it == outer.end()) return false;
    // need an outer begin y with b + len - outer_len <= y <= b
    const std::size_t lo = b + len >= outer_len ? b + len - outer_len : 0;
    auto pos = std::lower_bound(it->second.begin(), it->second.end(), lo);
    return pos != it->second.end() && *pos <= b;
  };
  std::set<std::vector<int>> out;
  for (const auto* cand : repeated) {
    const std::size_t len = cand->first.size();
    bool absorbed = false;
    for (const auto* other : repeated) {
      if (other->first.size() <= len) continue;
      if (!std::includes(other->first.begin(), other->first.end(), cand->first.begin(), cand->first.end())) continue;
      bool all_inside = true;
      for (const auto& [tr, begins] : cand->second) {
        for (auto b : begins) {
          if (!inside(other->second, other->first.size(), tr, b, len)) {
            all_inside = false;
            break;
          }
        }
        if (!all_inside) break;
      }
      if (all_inside) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) out.insert(cand->first);
  }
  return out;
}

inline std::set<SequentialPattern> to_patterns(const std::set<std::vector<int>>& bodies, PatternKind kind,
                                               const EventLog& log) {
  std::set<SequentialPattern> out;
  for (const auto& b : bodies) {
    std::vector<std::string> names;
    names.reserve(b.size());
    for (int id : b) names.push_back(log.activity_name(id));
    out.emplace(kind, std::move(names));
  }
  return out;
}

}  // namespace detail

inline std::set<SequentialPattern> maximal_repeats(const EventLog& log) {
  return detail::to_patterns(detail::maximal_repeat_bodies(log.sequences()), PatternKind::MR, log);
}

/// Alphabet variants of TR (-> TRA) or MR (-> MRA) patterns, recounted
/// order-insensitively on `log`. The source set fixes the projection
/// direction; every TR whose body has distinct activities reappears as a TRA.
inline std::set<SequentialPattern> to_alphabet(const std::set<SequentialPattern>& source, PatternKind target,
                                               const EventLog& log) {
  if (target != PatternKind::TRA && target != PatternKind::MRA) throw Error("to_alphabet target must be TRA or MRA");
  const PatternKind expected = target == PatternKind::TRA ? PatternKind::TR : PatternKind::MR;
  for (const auto& p : source) {
    if (p.kind != expected) {
      throw Error(std::string("to_alphabet: ") + to_string(p.kind) + " cannot project to " + to_string(target));
    }
  }
  std::set<SequentialPattern> out;
  if (target == PatternKind::TRA) {
    for (const auto& t : log.traces()) {
      for (auto& [pat, k] : tandem_repeat_alphabets(t)) out.insert(pat);
    }
  } else {
    out = detail::to_patterns(detail::maximal_alphabet_bodies(log.sequences()), PatternKind::MRA, log);
  }
  return out;
}

// ---- support ---------------------------------------------------------------

enum class SupportMode { Relative, Raw };

/// Non-overlapping, leftmost-greedy occurrence count of a pattern in an
/// activity sequence. Alphabet kinds count windows that are permutations of
/// the body set.
inline std::size_t occurrence_count(const std::vector<std::string>& acts, const SequentialPattern& p) {
  const std::size_t n = acts.size(), m = p.body.size();
  std::size_t count = 0;
  if (m == 0 || m > n) return 0;
  if (!is_alphabet_kind(p.kind)) {
    for (std::size_t i = 0; i + m <= n;) {
      if (std::equal(p.body.begin(), p.body.end(), acts.begin() + i)) {
        ++count;
        i += m;
      } else {
        ++i;
      }
    }
    return count;
  }
  std::vector<std::string> window;
  for (std::size_t i = 0; i + m <= n;) {
    window.assign(acts.begin() + i, acts.begin() + i + m);
    std::sort(window.begin(), window.end());
    if (window == p.body) {
      ++count;
      i += m;
    } else {
      ++i;
    }
  }
  return count;
}

/// Occurrences divided by trace length (Relative) or the bare count (Raw).
inline double relative_support(const Trace& trace, const SequentialPattern& p, SupportMode mode = SupportMode::Relative) {
  if (trace.events.empty()) return 0.0;
  const double c = static_cast<double>(occurrence_count(detail::activities_of(trace), p));
  return mode == SupportMode::Raw ? c : c / static_cast<double>(trace.events.size());
}

/// Rows are traces, columns are patterns.
struct SupportMatrix {
  std::vector<SequentialPattern> patterns;
  std::vector<std::vector<double>> values;

  std::size_t rows() const { return values.size(); }
  std::size_t cols() const { return patterns.size(); }
};

inline SupportMatrix support_matrix(const EventLog& log, const std::vector<SequentialPattern>& patterns,
                                    SupportMode mode = SupportMode::Relative) {
  SupportMatrix m;
  m.patterns = patterns;
  m.values.reserve(log.size());
  for (const auto& t : log.traces()) {
    const auto acts = detail::activities_of(t);
    std::vector<double> row;
    row.reserve(patterns.size());
    for (const auto& p : patterns) {
      const double c = static_cast<double>(occurrence_count(acts, p));
      row.push_back(mode == SupportMode::Raw || acts.empty() ? c : c / static_cast<double>(acts.size()));
    }
    m.values.push_back(std::move(row));
  }
  return m;
}

struct ClassSupport {
  double deviant = 0.0;
  double normal = 0.0;
};

struct DiscoveredPatterns {
  std::vector<SequentialPattern> patterns;
  std::vector<ClassSupport> class_support;  // parallel to patterns
  SupportMatrix matrix;                     // over the full labeled log
};

namespace detail {

inline std::set<SequentialPattern> candidates(const EventLog& log, PatternKind kind) {
  std::set<SequentialPattern> out;
  switch (kind) {
    case PatternKind::IA:
      for (const auto& a : log.alphabet()) out.emplace(PatternKind::IA, std::vector<std::string>{a});
      break;
    case PatternKind::TR:
      for (const auto& t : log.traces()) {
        for (auto& [p, k] : tandem_repeats(t)) out.insert(p);
      }
      break;
    case PatternKind::TRA: {
      std::set<SequentialPattern> tr;
      for (const auto& t : log.traces()) {
        for (auto& [p, k] : tandem_repeats(t)) tr.insert(p);
      }
      out = to_alphabet(tr, PatternKind::TRA, log);
      break;
    }
    case PatternKind::MR: out = maximal_repeats(log); break;
    case PatternKind::MRA: out = to_alphabet(maximal_repeats(log), PatternKind::MRA, log); break;
  }
  return out;
}

inline double containing_fraction(const EventLog& log, const SequentialPattern& p) {
  std::size_t hit = 0;
  for (const auto& t : log.traces()) hit += occurrence_count(activities_of(t), p) > 0;
  return static_cast<double>(hit) / static_cast<double>(log.size());
}

}  // namespace detail

/// Mines candidates of one kind separately in the deviant and normal sub-logs
/// and keeps those contained in a fraction >= theta of the traces of at least
/// one class. The support matrix covers every trace of `l`.
inline DiscoveredPatterns discover_patterns(const LabeledLog& l, PatternKind kind, double theta,
                                            SupportMode mode = SupportMode::Relative) {
  if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("theta must lie in (0, 1]");
  const ClassSplit split = split_by_label(l);
  std::set<SequentialPattern> cands = detail::candidates(split.deviant, kind);
  auto more = detail::candidates(split.normal, kind);
  cands.insert(more.begin(), more.end());
  DiscoveredPatterns out;
  for (const auto& p : cands) {
    const ClassSupport cs{detail::containing_fraction(split.deviant, p), detail::containing_fraction(split.normal, p)};
    if (cs.deviant >= theta || cs.normal >= theta) {
      out.patterns.push_back(p);
      out.class_support.push_back(cs);
    }
  }
  out.matrix = support_matrix(l.log(), out.patterns, mode);
  return out;
}

inline nlohmann::json to_json(const SequentialPattern& p, const ClassSupport& cs) {
  return {{"kind", to_string(p.kind)},
          {"body", p.body},
          {"classSupport", {{"deviant", cs.deviant}, {"normal", cs.normal}}}};
}

}  // namespace devmine
