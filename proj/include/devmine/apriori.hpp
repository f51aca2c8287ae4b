#pragma once

// Level-wise frequent activity sets (Apriori). A set is frequent when the
// fraction of traces containing all of its activities reaches theta.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "devmine/log_model.hpp"

namespace devmine {

using ActivitySet = std::vector<std::string>;  // sorted, distinct

/// levels[k-1] holds the frequent sets of size k in lexicographic order.
inline std::vector<std::vector<ActivitySet>> frequent_activity_sets(const EventLog& log, double theta,
                                                                    std::size_t max_size = 2) {
  if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("theta must lie in (0, 1]");
  std::vector<std::vector<int>> traces;
  traces.reserve(log.size());
  for (const auto& seq : log.sequences()) {
    std::vector<int> s(seq);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    traces.push_back(std::move(s));
  }
  const double need = theta * static_cast<double>(log.size());
  auto frequent = [&](const std::vector<int>& cand) {
    std::size_t hit = 0;
    for (const auto& t : traces) hit += std::includes(t.begin(), t.end(), cand.begin(), cand.end());
    return static_cast<double>(hit) >= need;
  };

  std::vector<std::vector<std::vector<int>>> levels;
  std::vector<std::vector<int>> current;
  for (int a = 0; a < static_cast<int>(log.alphabet().size()); ++a) {
    if (frequent({a})) current.push_back({a});
  }
  while (!current.empty() && levels.size() < max_size) {
    levels.push_back(current);
    if (levels.size() == max_size) break;
    const std::set<std::vector<int>> known(current.begin(), current.end());
    std::vector<std::vector<int>> next;
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        const auto& x = current[i];
        const auto& y = current[j];
        if (!std::equal(x.begin(), x.end() - 1, y.begin())) break;  // sorted: prefixes diverge from here on
        std::vector<int> cand = x;
        cand.push_back(y.back());
        bool all_subsets = true;
        for (std::size_t drop = 0; drop + 2 < cand.size() && all_subsets; ++drop) {
          std::vector<int> sub;
          for (std::size_t k = 0; k < cand.size(); ++k) {
            if (k != drop) sub.push_back(cand[k]);
          }
          all_subsets = known.count(sub) > 0;
        }
        if (all_subsets && frequent(cand)) next.push_back(std::move(cand));
      }
    }
    current = std::move(next);
  }

  std::vector<std::vector<ActivitySet>> out;
  for (const auto& level : levels) {
    std::vector<ActivitySet> named;
    for (const auto& s : level) {
      ActivitySet set;
      for (int id : s) set.push_back(log.activity_name(id));
      named.push_back(std::move(set));
    }
    out.push_back(std::move(named));
  }
  return out;
}

}  // namespace devmine
