#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qualomega/acceptance.hpp"
#include "qualomega/alphabet.hpp"
#include "qualomega/rational.hpp"

namespace qualomega {

/// Sparse distribution row: (target, probability) with strictly positive
/// probabilities, sorted by target. Missing targets have probability 0.
using DistRow = std::vector<std::pair<int, Rational>>;

inline void add_to_row(DistRow& row, int target, const Rational& p) {
  if (p == 0) return;
  auto it = std::lower_bound(row.begin(), row.end(), target,
                             [](const auto& e, int t) { return e.first < t; });
  if (it != row.end() && it->first == target)
    it->second += p;
  else
    row.insert(it, {target, p});
}

inline Rational row_sum(const DistRow& row) {
  Rational s = 0;
  for (const auto& [t, p] : row) s += p;
  return s;
}

/// Probabilistic word automaton: per (state, letter) an exact rational
/// distribution over successor states, plus an omega-regular acceptance
/// condition. Immutable after construction by convention; all operations
/// below are pure.
struct ProbWordAutomaton {
  std::vector<std::string> states;  // declaration order, used for tie-breaking
  Alphabet alphabet;
  int initial = 0;
  AcceptanceCondition acceptance;
  // delta[q][a] = distribution row over successor states
  std::vector<std::vector<DistRow>> delta;

  int state_count() const { return static_cast<int>(states.size()); }

  const DistRow& row(int q, int a) const { return delta.at(q).at(a); }

  Rational prob(int q, int a, int p) const {
    for (const auto& [t, pr] : row(q, a))
      if (t == p) return pr;
    return Rational(0);
  }

  int state_index(const std::string& name) const {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) throw Error("UnknownState", "state '" + name + "' not declared");
    return static_cast<int>(it - states.begin());
  }
};

/// Convenience builder so tests and generators can write rows naturally.
class WordAutomatonBuilder {
 public:
  WordAutomatonBuilder(std::vector<std::string> states, std::vector<std::string> letters)
      : a_{} {
    a_.states = std::move(states);
    a_.alphabet = Alphabet(std::move(letters));
    a_.delta.assign(a_.states.size(), std::vector<DistRow>(a_.alphabet.size()));
  }

  WordAutomatonBuilder& initial(const std::string& q) {
    a_.initial = a_.state_index(q);
    return *this;
  }

  WordAutomatonBuilder& edge(const std::string& from, const std::string& letter,
                             const std::string& to, const Rational& p) {
    add_to_row(a_.delta[a_.state_index(from)][a_.alphabet.require(letter)], a_.state_index(to), p);
    return *this;
  }

  WordAutomatonBuilder& acceptance(AcceptanceCondition acc) {
    a_.acceptance = std::move(acc);
    return *this;
  }

  ProbWordAutomaton build() const { return a_; }

 private:
  ProbWordAutomaton a_;
};

struct ValidationIssue {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }

  std::string summary() const {
    std::string s;
    for (const auto& i : issues) s += i.code + ": " + i.detail + "\n";
    return s;
  }
};

/// Checks every type invariant; the report lists every violated (q,a) row.
inline ValidationReport validate(const ProbWordAutomaton& a) {
  ValidationReport rep;
  const int n = a.state_count();
  if (a.alphabet.empty()) rep.issues.push_back({"EmptyAlphabet", "alphabet has no letters"});
  if (n == 0) rep.issues.push_back({"DanglingState", "automaton has no states"});
  if (a.initial < 0 || a.initial >= n)
    rep.issues.push_back({"DanglingState", "initial state index out of range"});
  {
    std::set<std::string> seen;
    for (const auto& s : a.states)
      if (!seen.insert(s).second)
        rep.issues.push_back({"DanglingState", "duplicate state name '" + s + "'"});
  }
  if (static_cast<int>(a.delta.size()) != n)
    rep.issues.push_back({"DanglingState", "delta not defined for every state"});
  for (int q = 0; q < n && q < static_cast<int>(a.delta.size()); ++q) {
    if (static_cast<int>(a.delta[q].size()) != a.alphabet.size()) {
      rep.issues.push_back({"DanglingState", "delta row count mismatch at state " + a.states[q]});
      continue;
    }
    for (int l = 0; l < a.alphabet.size(); ++l) {
      const DistRow& row = a.delta[q][l];
      for (const auto& [t, p] : row) {
        if (t < 0 || t >= n)
          rep.issues.push_back({"DanglingState", "transition from " + a.states[q] + " on " +
                                                     a.alphabet.letter(l) + " to undeclared state"});
        if (p < 0 || p > 1)
          rep.issues.push_back({"NonStochasticRow", "probability outside [0,1] at (" + a.states[q] +
                                                        "," + a.alphabet.letter(l) + ")"});
      }
      if (row_sum(row) != 1)
        rep.issues.push_back({"NonStochasticRow", "(" + a.states[q] + "," + a.alphabet.letter(l) +
                                                      ") sums to " + format_rational(row_sum(row))});
    }
  }
  if (n > 0 && !a.acceptance.well_formed_over(n))
    rep.issues.push_back({"DanglingState", "acceptance condition references undeclared states"});
  return rep;
}

/// Def-4 structural classes, ordered from tightest to loosest.
enum class AutomatonClass { BinaryBranching, Simple, SemiSimple, General };

inline std::string to_string(AutomatonClass c) {
  switch (c) {
    case AutomatonClass::BinaryBranching: return "binary-branching";
    case AutomatonClass::Simple: return "simple";
    case AutomatonClass::SemiSimple: return "semi-simple";
    case AutomatonClass::General: return "general";
  }
  return "?";
}

/// Tightest class whose codomain predicate the transition function satisfies:
/// binary branching {0,1/2}, simple {0,1/2,1}, semi-simple dyadic, else general.
inline AutomatonClass classify(const ProbWordAutomaton& a) {
  const Rational half(1, 2);
  bool binary = true, simple = true, semi = true;
  for (const auto& rows : a.delta)
    for (const auto& row : rows)
      for (const auto& [t, p] : row) {
        if (p != half) binary = false;
        if (p != half && p != 1) simple = false;
        if (!is_dyadic(p)) semi = false;
      }
  if (binary) return AutomatonClass::BinaryBranching;
  if (simple) return AutomatonClass::Simple;
  if (semi) return AutomatonClass::SemiSimple;
  return AutomatonClass::General;
}

/// For a binary-branching row delta(q,a) = {q1,q2}: the unique pair, ordered
/// by declaration index (q1 < q2).
inline std::pair<int, int> binary_successors(const ProbWordAutomaton& a, int q, int l) {
  const DistRow& row = a.row(q, l);
  const Rational half(1, 2);
  if (row.size() == 2 && row[0].second == half && row[1].second == half)
    return {row[0].first, row[1].first};
  throw Error("NotBinaryBranching",
              "row (" + a.states.at(q) + "," + a.alphabet.letter(l) + ") is not a half-half pair");
}

}  // namespace qualomega
