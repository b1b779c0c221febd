#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qualomega/lasso.hpp"
#include "qualomega/markov.hpp"
#include "qualomega/regular_tree.hpp"
#include "qualomega/word_automaton.hpp"

namespace qualomega {

/// Finite quotient of the run distribution mu_w on an ultimately periodic
/// word: chain states are reachable (automaton state, lasso position) pairs,
/// labels carry the automaton state. Cone measures are preserved.
inline FiniteChain product_chain(const ProbWordAutomaton& a, const LassoWord& w) {
  FiniteChain c;
  c.payload_names = a.states;
  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> order;
  auto intern = [&](int q, int pos) {
    auto [it, fresh] = id.emplace(std::make_pair(q, pos), static_cast<int>(order.size()));
    if (fresh) order.push_back({q, pos});
    return it->second;
  };
  intern(a.initial, 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [q, pos] = order[i];
    const int next = w.next_position(pos);
    for (const auto& edge : a.row(q, w.letter_at(pos))) intern(edge.first, next);
  }
  c.state_names.reserve(order.size());
  c.delta.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [q, pos] = order[i];
    c.state_names.push_back(a.states[q] + "@" + std::to_string(pos));
    c.label.push_back(q);
    const int next = w.next_position(pos);
    for (const auto& [p, pr] : a.row(q, w.letter_at(pos)))
      c.delta[i].push_back({id.at({p, next}), pr});
  }
  c.initial = 0;
  return c;
}

/// Objective lifting a word automaton's acceptance to product-chain labels
/// (payload ids are exactly the automaton's state ids; nothing is silent).
inline ChainObjective lifted_objective(const ProbWordAutomaton& a) {
  return ChainObjective{a.acceptance, {}};
}

struct WordValue {
  Rational value;
  FiniteChain witness;  // the product chain the value was computed on
};

/// A(w) = mu_w(AccRuns): exact measure of accepting runs on the lasso word.
inline WordValue value(const ProbWordAutomaton& a, const LassoWord& w) {
  WordValue out{Rational(0), product_chain(a, w)};
  out.value = objective_value(out.witness, lifted_objective(a));
  return out;
}

/// Almost-sure membership: A(w) = 1.
inline bool member_as(const ProbWordAutomaton& a, const LassoWord& w) {
  return value(a, w).value == 1;
}

/// Probable membership: A(w) > 0.
inline bool member_prob(const ProbWordAutomaton& a, const LassoWord& w) {
  return value(a, w).value > 0;
}

/// The tree of runs t_w of a binary-branching automaton: node classes are
/// reachable (state, position) pairs; at class (q,i) with delta(q, w_i) =
/// {q0,q1}, q0 < q1 in declaration order, child 0 carries q0 and child 1
/// carries q1.
inline RegularTree tree_of_runs(const ProbWordAutomaton& a, const LassoWord& w) {
  if (classify(a) != AutomatonClass::BinaryBranching)
    throw Error("NotBinaryBranching", "tree of runs needs a binary-branching automaton");
  RegularTree t;
  t.labels_over = Alphabet(a.states);
  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> order;
  auto intern = [&](int q, int pos) {
    auto [it, fresh] = id.emplace(std::make_pair(q, pos), static_cast<int>(order.size()));
    if (fresh) order.push_back({q, pos});
    return it->second;
  };
  intern(a.initial, 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [q, pos] = order[i];
    const auto [q0, q1] = binary_successors(a, q, w.letter_at(pos));
    const int next = w.next_position(pos);
    intern(q0, next);
    intern(q1, next);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [q, pos] = order[i];
    const auto [q0, q1] = binary_successors(a, q, w.letter_at(pos));
    const int next = w.next_position(pos);
    t.class_names.push_back(a.states[q] + "@" + std::to_string(pos));
    t.label.push_back(q);
    t.child0.push_back(id.at({q0, next}));
    t.child1.push_back(id.at({q1, next}));
  }
  t.root = 0;
  return t;
}

}  // namespace qualomega
