#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qualomega/markov.hpp"
#include "qualomega/regular_tree.hpp"
#include "qualomega/tree_automaton.hpp"

namespace qualomega {

struct AcceptanceChain {
  FiniteChain chain;
  ChainObjective objective;
};

/// Finite quotient of the Def-3 chain M_{A,t} by the tree's node classes.
/// States are visit nodes (q, class) labeled q and mid nodes (q,q0,q1,class)
/// labeled silent; a visit node branches by the transition distribution and
/// a mid node moves to each child with probability 1/2. Only states
/// reachable from (q_init, root) are built.
inline AcceptanceChain acceptance_chain(const ProbTreeAutomaton& a, const RegularTree& t) {
  if (!(a.alphabet == t.labels_over))
    throw Error("AlphabetMismatch", "automaton and tree use different alphabets");
  {
    const auto rep = validate(a);
    if (!rep.ok()) throw Error("InvalidAutomaton", rep.summary());
    const auto trep = validate(t);
    if (!trep.ok()) throw Error("InvalidTree", trep.summary());
  }

  const int nq = a.state_count();
  AcceptanceChain out;
  FiniteChain& c = out.chain;
  c.payload_names = a.states;
  c.payload_names.push_back(detail::fresh_name("(mid)", c.payload_names));
  const int silent_payload = nq;

  // node key: visit (q, -1, -1, class) / mid (q, q0, q1, class)
  using Key = std::tuple<int, int, int, int>;
  std::map<Key, int> id;
  std::vector<Key> order;
  auto intern = [&](Key k) {
    auto [it, fresh] = id.emplace(k, static_cast<int>(order.size()));
    if (fresh) order.push_back(k);
    return it->second;
  };

  intern({a.initial, -1, -1, t.root});
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [q, q0, q1, cls] = order[i];
    if (q0 < 0) {
      for (const auto& [pair, p] : a.row(q, t.label[cls]))
        intern({q, pair.first, pair.second, cls});
    } else {
      intern({q0, -1, -1, t.child0[cls]});
      intern({q1, -1, -1, t.child1[cls]});
    }
  }

  c.delta.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [q, q0, q1, cls] = order[i];
    if (q0 < 0) {
      c.state_names.push_back(a.states[q] + "@" + t.class_names[cls]);
      c.label.push_back(q);
      for (const auto& [pair, p] : a.row(q, t.label[cls]))
        add_to_row(c.delta[i], id.at({q, pair.first, pair.second, cls}), p);
    } else {
      c.state_names.push_back("(" + a.states[q] + "," + a.states[q0] + "," + a.states[q1] + ")@" +
                              t.class_names[cls]);
      c.label.push_back(silent_payload);
      add_to_row(c.delta[i], id.at({q0, -1, -1, t.child0[cls]}), rat(1, 2));
      add_to_row(c.delta[i], id.at({q1, -1, -1, t.child1[cls]}), rat(1, 2));
    }
  }
  c.initial = 0;

  out.objective.condition = a.acceptance;
  out.objective.silent.assign(nq + 1, 0);
  out.objective.silent[silent_payload] = 1;
  return out;
}

/// Prop-4 membership check: t is in qaslang(A) iff the acceptance chain
/// almost surely fulfils its objective.
inline bool qaslang_member(const ProbTreeAutomaton& a, const RegularTree& t) {
  const auto ac = acceptance_chain(a, t);
  return almost_sure(ac.chain, ac.objective);
}

struct RunCheck {
  Rational branch_measure;
  bool qualitatively_accepting = false;
};

/// Measure of accepting branches of a Q-labeled regular tree under the
/// coin-flipping measure: the tree read as a chain with probability 1/2 per
/// child, acceptance evaluated on the Q-labels.
inline RunCheck branch_measure(const RegularTree& run, const AcceptanceCondition& acc) {
  {
    const auto rep = validate(run);
    if (!rep.ok()) throw Error("InvalidTree", rep.summary());
  }
  FiniteChain c;
  c.payload_names = run.labels_over.letters();
  c.state_names = run.class_names;
  c.initial = run.root;
  c.label = run.label;
  c.delta.resize(run.class_count());
  for (int i = 0; i < run.class_count(); ++i) {
    add_to_row(c.delta[i], run.child0[i], rat(1, 2));
    add_to_row(c.delta[i], run.child1[i], rat(1, 2));
  }
  RunCheck out;
  out.branch_measure = objective_value(c, ChainObjective{acc, {}});
  out.qualitatively_accepting = out.branch_measure == 1;
  return out;
}

/// A regular run: a Q-labeled regular tree synchronized with the input tree
/// (base_class maps each run class to the input class it sits on).
struct RegularRun {
  RegularTree run;               // labels over the automaton's state names
  std::vector<int> base_class;   // per run class
};

namespace detail {

template <typename TransitionCheck>
ValidationReport validate_run_shape(const RegularRun& r, const std::vector<std::string>& states,
                                    int initial, const RegularTree& base,
                                    TransitionCheck&& in_delta) {
  ValidationReport rep = validate(r.run);
  if (!rep.ok()) return rep;
  if (!(r.run.labels_over == Alphabet(states))) {
    rep.issues.push_back({"StateMismatch", "run labels are not the automaton's states"});
    return rep;
  }
  if (static_cast<int>(r.base_class.size()) != r.run.class_count()) {
    rep.issues.push_back({"DanglingState", "base_class must be total over run classes"});
    return rep;
  }
  if (r.run.label[r.run.root] != initial)
    rep.issues.push_back({"BadRun", "root is not labeled with the initial state"});
  if (r.base_class[r.run.root] != base.root)
    rep.issues.push_back({"BadRun", "root does not sit on the input tree's root"});
  for (int c = 0; c < r.run.class_count(); ++c) {
    const int bc = r.base_class[c];
    if (bc < 0 || bc >= base.class_count()) {
      rep.issues.push_back({"DanglingState", "base class out of range"});
      continue;
    }
    if (r.base_class[r.run.child0[c]] != base.child0[bc] ||
        r.base_class[r.run.child1[c]] != base.child1[bc])
      rep.issues.push_back({"BadRun", "children of " + r.run.class_names[c] +
                                          " are not synchronized with the input tree"});
    if (!in_delta(r.run.label[c], base.label[bc], r.run.label[r.run.child0[c]],
                  r.run.label[r.run.child1[c]]))
      rep.issues.push_back({"BadRun", "transition at " + r.run.class_names[c] +
                                          " is not allowed by the automaton"});
  }
  return rep;
}

}  // namespace detail

inline ValidationReport validate_run(const RegularRun& r, const TreeAutomaton& a,
                                     const RegularTree& base) {
  return detail::validate_run_shape(r, a.states, a.initial, base,
                                    [&](int q, int l, int q0, int q1) {
                                      return a.has_transition(q, l, q0, q1);
                                    });
}

/// Probabilistic variant: zero-probability transitions are illegal in runs.
inline ValidationReport validate_run(const RegularRun& r, const ProbTreeAutomaton& a,
                                     const RegularTree& base) {
  return detail::validate_run_shape(r, a.states, a.initial, base,
                                    [&](int q, int l, int q0, int q1) {
                                      return a.prob(q, l, q0, q1) > 0;
                                    });
}

inline RunCheck qualitative_run_check(const RegularRun& r, const AcceptanceCondition& acc) {
  return branch_measure(r.run, acc);
}

struct RunEnumeration {
  std::vector<RegularRun> runs;
  bool complete = true;  // false when max_runs stopped the enumeration
};

/// All runs presentable with at most `bound` product classes, i.e. runs that
/// pick one transition per reachable (input class, state) pair. Enumeration
/// is deterministic: pairs in discovery order, transitions in declaration
/// order. The stream may be empty.
inline RunEnumeration enumerate_regular_runs(const TreeAutomaton& a, const RegularTree& t,
                                             int bound, std::size_t max_runs = SIZE_MAX) {
  if (bound < 1) throw Error("BadArgument", "bound must be >= 1");
  if (!(a.alphabet == t.labels_over))
    throw Error("AlphabetMismatch", "automaton and tree use different alphabets");

  // transition options per (state, letter)
  std::vector<std::vector<std::vector<int>>> options(
      a.state_count(), std::vector<std::vector<int>>(a.alphabet.size()));
  for (int i = 0; i < static_cast<int>(a.delta.size()); ++i)
    options[a.delta[i].from][a.delta[i].letter].push_back(i);

  RunEnumeration out;
  std::map<std::pair<int, int>, int> pair_id;  // (tree class, state) -> index
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> choice;  // per pair: index into a.delta

  auto discover = [&](int cls, int q) -> int {
    auto [it, fresh] = pair_id.emplace(std::make_pair(cls, q), static_cast<int>(pairs.size()));
    if (fresh) pairs.push_back({cls, q});
    return it->second;
  };

  auto emit = [&]() {
    RegularRun r;
    r.run.labels_over = Alphabet(a.states);
    r.run.root = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto [cls, q] = pairs[i];
      const auto& tr = a.delta[choice[i]];
      r.run.class_names.push_back(a.states[q] + "@" + t.class_names[cls]);
      r.run.label.push_back(q);
      r.run.child0.push_back(pair_id.at({t.child0[cls], tr.left}));
      r.run.child1.push_back(pair_id.at({t.child1[cls], tr.right}));
      r.base_class.push_back(cls);
    }
    out.runs.push_back(std::move(r));
  };

  discover(t.root, a.initial);

  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (out.runs.size() >= max_runs) {
      out.complete = false;
      return false;
    }
    if (i == pairs.size()) {
      emit();
      return out.runs.size() < max_runs;
    }
    const auto [cls, q] = pairs[i];
    choice.resize(i + 1);
    for (int tr_idx : options[q][t.label[cls]]) {
      const auto& tr = a.delta[tr_idx];
      const std::size_t mark = pairs.size();
      choice[i] = tr_idx;
      discover(t.child0[cls], tr.left);
      discover(t.child1[cls], tr.right);
      bool ok = static_cast<int>(pairs.size()) <= bound;
      if (ok) ok = self(self, i + 1);
      while (pairs.size() > mark) {
        pair_id.erase(pairs.back());
        pairs.pop_back();
      }
      if (!ok && !out.complete) return false;
    }
    return true;
  };
  rec(rec, 0);
  return out;
}

}  // namespace qualomega
