#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qualomega/acceptance.hpp"
#include "qualomega/alphabet.hpp"
#include "qualomega/word_automaton.hpp"

namespace qualomega {

struct TreeTransition {
  int from = 0;
  int letter = 0;
  int left = 0;
  int right = 0;

  friend bool operator==(const TreeTransition&, const TreeTransition&) = default;
};

/// Non-probabilistic tree automaton with a transition relation
/// Delta <= Q x Sigma x Q x Q.
struct TreeAutomaton {
  std::vector<std::string> states;
  Alphabet alphabet;
  int initial = 0;
  AcceptanceCondition acceptance;
  std::vector<TreeTransition> delta;

  int state_count() const { return static_cast<int>(states.size()); }

  bool has_transition(int q, int a, int l, int r) const {
    for (const auto& t : delta)
      if (t.from == q && t.letter == a && t.left == l && t.right == r) return true;
    return false;
  }
};

/// Probabilistic tree automaton: per (state, letter) an exact distribution
/// over successor pairs (q0, q1).
struct ProbTreeAutomaton {
  using PairRow = std::vector<std::pair<std::pair<int, int>, Rational>>;

  std::vector<std::string> states;
  Alphabet alphabet;
  int initial = 0;
  AcceptanceCondition acceptance;
  std::vector<std::vector<PairRow>> delta;  // delta[q][a]

  int state_count() const { return static_cast<int>(states.size()); }

  const PairRow& row(int q, int a) const { return delta.at(q).at(a); }

  Rational prob(int q, int a, int l, int r) const {
    for (const auto& [pair, p] : row(q, a))
      if (pair.first == l && pair.second == r) return p;
    return Rational(0);
  }
};

inline void add_to_pair_row(ProbTreeAutomaton::PairRow& row, int l, int r, const Rational& p) {
  if (p == 0) return;
  for (auto& [pair, q] : row)
    if (pair.first == l && pair.second == r) {
      q += p;
      return;
    }
  row.push_back({{l, r}, p});
}

inline ValidationReport validate(const TreeAutomaton& a) {
  ValidationReport rep;
  const int n = a.state_count();
  if (a.alphabet.empty()) rep.issues.push_back({"EmptyAlphabet", "alphabet has no letters"});
  if (n == 0) rep.issues.push_back({"DanglingState", "automaton has no states"});
  if (a.initial < 0 || a.initial >= n)
    rep.issues.push_back({"DanglingState", "initial state index out of range"});
  for (const auto& t : a.delta)
    if (t.from < 0 || t.from >= n || t.left < 0 || t.left >= n || t.right < 0 || t.right >= n ||
        t.letter < 0 || t.letter >= a.alphabet.size())
      rep.issues.push_back({"DanglingState", "transition references undeclared state or letter"});
  if (n > 0 && !a.acceptance.well_formed_over(n))
    rep.issues.push_back({"DanglingState", "acceptance condition references undeclared states"});
  return rep;
}

inline ValidationReport validate(const ProbTreeAutomaton& a) {
  ValidationReport rep;
  const int n = a.state_count();
  if (a.alphabet.empty()) rep.issues.push_back({"EmptyAlphabet", "alphabet has no letters"});
  if (n == 0) rep.issues.push_back({"DanglingState", "automaton has no states"});
  if (a.initial < 0 || a.initial >= n)
    rep.issues.push_back({"DanglingState", "initial state index out of range"});
  if (static_cast<int>(a.delta.size()) != n) {
    rep.issues.push_back({"DanglingState", "delta not defined for every state"});
    return rep;
  }
  for (int q = 0; q < n; ++q) {
    if (static_cast<int>(a.delta[q].size()) != a.alphabet.size()) {
      rep.issues.push_back({"DanglingState", "delta row count mismatch at " + a.states[q]});
      continue;
    }
    for (int l = 0; l < a.alphabet.size(); ++l) {
      Rational sum = 0;
      for (const auto& [pair, p] : a.delta[q][l]) {
        if (pair.first < 0 || pair.first >= n || pair.second < 0 || pair.second >= n)
          rep.issues.push_back({"DanglingState", "successor pair out of range"});
        if (p < 0 || p > 1) rep.issues.push_back({"NonStochasticRow", "probability outside [0,1]"});
        sum += p;
      }
      if (sum != 1)
        rep.issues.push_back({"NonStochasticRow", "(" + a.states[q] + "," + a.alphabet.letter(l) +
                                                      ") sums to " + format_rational(sum)});
    }
  }
  if (n > 0 && !a.acceptance.well_formed_over(n))
    rep.issues.push_back({"DanglingState", "acceptance condition references undeclared states"});
  return rep;
}

/// A_A: the word automaton run as a tree automaton that copies itself into
/// both children — delta'(p,a,q,q) = delta(p,a,q), zero elsewhere.
inline ProbTreeAutomaton word_to_tree_copy(const ProbWordAutomaton& a) {
  const auto rep = validate(a);
  if (!rep.ok()) throw Error("InvalidAutomaton", rep.summary());
  ProbTreeAutomaton t;
  t.states = a.states;
  t.alphabet = a.alphabet;
  t.initial = a.initial;
  t.acceptance = a.acceptance;
  t.delta.assign(a.state_count(), std::vector<ProbTreeAutomaton::PairRow>(a.alphabet.size()));
  for (int q = 0; q < a.state_count(); ++q)
    for (int l = 0; l < a.alphabet.size(); ++l)
      for (const auto& [p, pr] : a.row(q, l)) add_to_pair_row(t.delta[q][l], p, p, pr);
  return t;
}

/// A_switch: for a binary-branching automaton with delta(q,a) = {q1,q2},
/// the successor pair is (q1,q2) or (q2,q1), each with probability 1/2.
inline ProbTreeAutomaton word_to_tree_switch(const ProbWordAutomaton& a) {
  const auto rep = validate(a);
  if (!rep.ok()) throw Error("InvalidAutomaton", rep.summary());
  if (classify(a) != AutomatonClass::BinaryBranching)
    throw Error("NotBinaryBranching", "A_switch needs a binary-branching automaton");
  ProbTreeAutomaton t;
  t.states = a.states;
  t.alphabet = a.alphabet;
  t.initial = a.initial;
  t.acceptance = a.acceptance;
  t.delta.assign(a.state_count(), std::vector<ProbTreeAutomaton::PairRow>(a.alphabet.size()));
  for (int q = 0; q < a.state_count(); ++q)
    for (int l = 0; l < a.alphabet.size(); ++l) {
      const auto [q1, q2] = binary_successors(a, q, l);
      add_to_pair_row(t.delta[q][l], q1, q2, rat(1, 2));
      add_to_pair_row(t.delta[q][l], q2, q1, rat(1, 2));
    }
  return t;
}

/// The Theorem-11 reduction target: a plain parity tree automaton with
/// Delta = {(q,a,q1,q2), (q,a,q2,q1) | delta(q,a) = {q1,q2}}, read under the
/// qualitative universal semantics.
inline TreeAutomaton word_to_universal_tree(const ProbWordAutomaton& a) {
  const auto rep = validate(a);
  if (!rep.ok()) throw Error("InvalidAutomaton", rep.summary());
  if (classify(a) != AutomatonClass::BinaryBranching)
    throw Error("NotBinaryBranching", "the construction needs a binary-branching automaton");
  if (a.acceptance.kind() != AcceptanceKind::Parity)
    throw Error("NotParity", "the construction needs a parity condition");
  TreeAutomaton t;
  t.states = a.states;
  t.alphabet = a.alphabet;
  t.initial = a.initial;
  t.acceptance = a.acceptance;
  for (int q = 0; q < a.state_count(); ++q)
    for (int l = 0; l < a.alphabet.size(); ++l) {
      const auto [q1, q2] = binary_successors(a, q, l);
      t.delta.push_back({q, l, q1, q2});
      t.delta.push_back({q, l, q2, q1});
    }
  return t;
}

}  // namespace qualomega
