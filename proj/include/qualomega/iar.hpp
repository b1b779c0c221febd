#pragma once

#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qualomega/acceptance.hpp"
#include "qualomega/lasso.hpp"

namespace qualomega {

/// Deterministic parity automaton over the state alphabet Q of a monitored
/// automaton. Recognizes a Rabin condition as a language of Q-sequences.
struct DeterministicParityMonitor {
  std::vector<std::string> state_names;
  int initial = 0;
  int input_count = 0;                 // alphabet size = |Q| of the monitored automaton
  std::vector<std::vector<int>> next;  // next[p][q]
  std::vector<int> priority;           // per monitor state; min-even parity

  int state_count() const { return static_cast<int>(state_names.size()); }

  int step(int p, int q) const { return next.at(p).at(q); }
};

/// Index appearance record. Monitor states are (permutation of pair indices,
/// emitted priority): reading q moves every index whose beta-set contains q
/// to the end of the record, so indices whose beta-set is eventually avoided
/// stabilize at the front. The step priority is the minimum event over the
/// pre-update record — 2*pos-1 for a beta hit at 1-based position pos, 2*pos
/// for an alpha hit, 2k+1 when nothing fires — and a run of the monitored
/// condition is accepting iff the minimum priority seen infinitely often is
/// even. Only states reachable from the initial record are constructed.
inline DeterministicParityMonitor rabin_condition_to_parity_monitor(
    const std::vector<RabinPair>& pairs, int q_count) {
  const int k = static_cast<int>(pairs.size());
  const int idle = 2 * k + 1;

  using Record = std::pair<std::vector<int>, int>;  // (permutation, emitted priority)
  std::map<Record, int> id;
  std::vector<Record> order;
  auto intern = [&](Record r) {
    auto [it, fresh] = id.emplace(std::move(r), static_cast<int>(order.size()));
    if (fresh) order.push_back(it->first);
    return it->second;
  };

  std::vector<int> identity(k);
  std::iota(identity.begin(), identity.end(), 0);
  intern({identity, idle});

  DeterministicParityMonitor m;
  m.input_count = q_count;
  for (std::size_t s = 0; s < order.size(); ++s) {
    const auto [perm, pr] = order[s];
    m.next.push_back(std::vector<int>(q_count, -1));
    for (int q = 0; q < q_count; ++q) {
      int emitted = idle;
      std::vector<int> kept, moved;
      for (int j = 0; j < k; ++j) {
        const int i = perm[j];
        if (pairs[i].beta.count(q)) {
          emitted = std::min(emitted, 2 * (j + 1) - 1);
          moved.push_back(i);
        } else {
          kept.push_back(i);
        }
        if (pairs[i].alpha.count(q)) emitted = std::min(emitted, 2 * (j + 1));
      }
      kept.insert(kept.end(), moved.begin(), moved.end());
      m.next[s][q] = intern({std::move(kept), emitted});
    }
  }

  m.initial = 0;
  for (std::size_t s = 0; s < order.size(); ++s) {
    std::string name = "r";
    for (int i : order[s].first) name += std::to_string(i);
    m.state_names.push_back(name + "/" + std::to_string(order[s].second));
    m.priority.push_back(order[s].second);
  }
  return m;
}

/// Runs the monitor on an ultimately periodic Q-sequence and evaluates the
/// parity condition on the cycle of monitor states.
inline bool monitor_accepts_lasso(const DeterministicParityMonitor& m,
                                  const LassoWord& rho) {
  int p = m.initial;
  for (int q : rho.prefix) p = m.step(p, q);
  // iterate the cycle until (monitor state, cycle position) repeats
  std::map<std::pair<int, int>, int> seen;
  std::vector<int> visited;
  int pos = 0;
  while (true) {
    auto [it, fresh] = seen.emplace(std::make_pair(p, pos), static_cast<int>(visited.size()));
    if (!fresh) {
      int min_prio = -1;
      for (std::size_t i = it->second; i < visited.size(); ++i)
        min_prio = min_prio < 0 ? m.priority[visited[i]] : std::min(min_prio, m.priority[visited[i]]);
      return min_prio % 2 == 0;
    }
    visited.push_back(p);
    p = m.step(p, rho.cycle[pos]);
    pos = (pos + 1) % static_cast<int>(rho.cycle.size());
  }
}

}  // namespace qualomega
