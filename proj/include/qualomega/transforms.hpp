#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qualomega/iar.hpp"
#include "qualomega/lasso.hpp"
#include "qualomega/word_automaton.hpp"

namespace qualomega {

struct TransformReport {
  std::string kind;
  AutomatonClass input_class = AutomatonClass::General;
  AutomatonClass output_class = AutomatonClass::General;
  int fresh_states = 0;   // (q,a)_b tree states / primed copies / product states
  int padding_depth = 0;  // semisimple-to-simple only; 1 means output == input
  std::vector<std::pair<std::string, std::string>> state_map;
};

namespace detail {

inline void require_valid(const ProbWordAutomaton& a) {
  const auto rep = validate(a);
  if (!rep.ok()) throw Error("InvalidAutomaton", rep.summary());
}

inline std::string fresh_name(std::string base, const std::vector<std::string>& taken) {
  while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "'";
  return base;
}

inline std::string fresh_letter(const Alphabet& sigma) {
  std::string name = "#";
  while (sigma.contains(name)) name += "#";
  return name;
}

}  // namespace detail

/// Interleaves d-1 copies of the padding letter after each letter of w: the
/// shape (Sigma . #^{d-1})^omega on which a semisimple-to-simple output
/// reproduces the input's value.
inline LassoWord pad_lasso(const LassoWord& w, int depth, int pad_letter) {
  LassoWord out;
  auto emit = [&](std::vector<int>& seg, int letter) {
    seg.push_back(letter);
    for (int i = 1; i < depth; ++i) seg.push_back(pad_letter);
  };
  for (int l : w.prefix) emit(out.prefix, l);
  for (int l : w.cycle) emit(out.cycle, l);
  return out;
}

/// Semi-simple to simple (Rabin only): each (q,a) row becomes a full binary
/// tree of #-transitions of depth d, where d is the largest dyadic exponent
/// over all transitions. A target with probability c/2^d receives c of the
/// 2^d leaf slots, assigned left to right over lexicographically ordered
/// leaves with targets in declaration order; a leaf whose two slots carry
/// the same target collapses to one probability-1 edge. Rows the paper
/// leaves unspecified (original states on '#', fresh states on Sigma) go to
/// a rejecting sink so every row stays stochastic. Inputs already of depth
/// <= 1 are returned unchanged.
inline std::pair<ProbWordAutomaton, TransformReport> semisimple_to_simple(
    const ProbWordAutomaton& a) {
  detail::require_valid(a);
  const AutomatonClass cls = classify(a);
  if (cls == AutomatonClass::General)
    throw Error("NotSemiSimple", "transition probabilities must be dyadic");
  if (a.acceptance.kind() != AcceptanceKind::Rabin)
    throw Error("UnsupportedAcceptance",
                "semisimple-to-simple is defined for Rabin acceptance; got " +
                    to_string(a.acceptance.kind()));

  TransformReport rep;
  rep.kind = "semisimple-to-simple";
  rep.input_class = cls;

  int depth = 0;
  for (const auto& rows : a.delta)
    for (const auto& row : rows)
      for (const auto& [t, p] : row) depth = std::max(depth, static_cast<int>(dyadic_exponent(p)));

  if (depth <= 1) {
    rep.padding_depth = 1;
    rep.output_class = classify(a);
    for (const auto& s : a.states) rep.state_map.push_back({s, s});
    return {a, rep};
  }
  rep.padding_depth = depth;

  const int n = a.state_count();
  const std::string pad = detail::fresh_letter(a.alphabet);
  const Alphabet sigma2 = a.alphabet.extended_with(pad);
  const int pad_idx = sigma2.size() - 1;

  ProbWordAutomaton b;
  b.alphabet = sigma2;
  b.states = a.states;
  b.initial = a.initial;
  b.acceptance = a.acceptance;  // fresh states belong to no Rabin set

  // fresh tree states, indexed by (q, a, b) with b a binary word of length
  // 1..depth-1; within one (q,a) block the order is by length then value
  std::map<std::tuple<int, int, std::string>, int> tree_id;
  for (int q = 0; q < n; ++q)
    for (int l = 0; l < a.alphabet.size(); ++l)
      for (int len = 1; len <= depth - 1; ++len)
        for (int v = 0; v < (1 << len); ++v) {
          std::string bits;
          for (int i = len - 1; i >= 0; --i) bits += ((v >> i) & 1) ? '1' : '0';
          tree_id[{q, l, bits}] = static_cast<int>(b.states.size());
          b.states.push_back("(" + a.states[q] + "," + a.alphabet.letter(l) + ")_" + bits);
        }
  rep.fresh_states = static_cast<int>(b.states.size()) - n;

  const int sink = static_cast<int>(b.states.size());
  b.states.push_back(detail::fresh_name("sink", b.states));

  b.delta.assign(b.states.size(), std::vector<DistRow>(sigma2.size()));
  auto half_edges = [&](int from, int letter, int t0, int t1) {
    if (t0 == t1) {
      add_to_row(b.delta[from][letter], t0, rat(1));
    } else {
      add_to_row(b.delta[from][letter], t0, rat(1, 2));
      add_to_row(b.delta[from][letter], t1, rat(1, 2));
    }
  };

  for (int q = 0; q < n; ++q)
    for (int l = 0; l < a.alphabet.size(); ++l) {
      // leaf slot assignment for this row
      const int slots = 1 << depth;
      std::vector<int> slot_target(slots, -1);
      int cursor = 0;
      for (int t = 0; t < n; ++t) {
        const Rational p = a.prob(q, l, t);
        if (p == 0) continue;
        const BigInt count = boost::multiprecision::numerator(p) *
                             (BigInt(1) << (depth - dyadic_exponent(p)));
        for (BigInt i = 0; i < count; ++i) slot_target[cursor++] = t;
      }

      // root reads the original letter
      half_edges(q, l, tree_id.at({q, l, "0"}), tree_id.at({q, l, "1"}));
      // internal levels read '#'
      for (int len = 1; len <= depth - 2; ++len)
        for (int v = 0; v < (1 << len); ++v) {
          std::string bits;
          for (int i = len - 1; i >= 0; --i) bits += ((v >> i) & 1) ? '1' : '0';
          half_edges(tree_id.at({q, l, bits}), pad_idx, tree_id.at({q, l, bits + "0"}),
                     tree_id.at({q, l, bits + "1"}));
        }
      // leaf level: two slots per leaf, collapse equal targets
      for (int v = 0; v < (1 << (depth - 1)); ++v) {
        std::string bits;
        for (int i = depth - 2; i >= 0; --i) bits += ((v >> i) & 1) ? '1' : '0';
        half_edges(tree_id.at({q, l, bits}), pad_idx, slot_target[2 * v], slot_target[2 * v + 1]);
      }
    }

  // completion: unspecified rows reject via the sink
  for (int q = 0; q < static_cast<int>(b.states.size()); ++q)
    for (int l = 0; l < sigma2.size(); ++l)
      if (b.delta[q][l].empty()) add_to_row(b.delta[q][l], sink, rat(1));

  for (const auto& s : a.states) rep.state_map.push_back({s, s});
  rep.output_class = classify(b);
  return {b, rep};
}

/// Simple to binary branching: every probability-1 target q gains a primed
/// copy q', each probability-1 transition splits into half-half transitions
/// to q and q', and primed states mirror the rows of their originals. Rabin
/// sets and parity priorities extend to the primed copies.
inline std::pair<ProbWordAutomaton, TransformReport> simple_to_binary(
    const ProbWordAutomaton& a) {
  detail::require_valid(a);
  const AutomatonClass cls = classify(a);
  if (cls != AutomatonClass::Simple && cls != AutomatonClass::BinaryBranching)
    throw Error("NotSimple", "input must be simple or binary branching, got " + to_string(cls));
  if (a.acceptance.kind() != AcceptanceKind::Rabin && a.acceptance.kind() != AcceptanceKind::Parity)
    throw Error("UnsupportedAcceptance",
                "simple-to-binary is defined for Rabin and parity acceptance");

  TransformReport rep;
  rep.kind = "simple-to-binary";
  rep.input_class = cls;

  const int n = a.state_count();
  std::vector<char> in_q1(n, 0);
  for (int q = 0; q < n; ++q)
    for (int l = 0; l < a.alphabet.size(); ++l)
      for (const auto& [t, p] : a.row(q, l))
        if (p == 1) in_q1[t] = 1;

  ProbWordAutomaton b;
  b.alphabet = a.alphabet;
  b.states = a.states;
  b.initial = a.initial;
  std::vector<int> prime(n, -1);
  for (int q = 0; q < n; ++q) {
    if (!in_q1[q]) continue;
    prime[q] = static_cast<int>(b.states.size());
    b.states.push_back(detail::fresh_name(a.states[q] + "'", b.states));
  }
  rep.fresh_states = static_cast<int>(b.states.size()) - n;

  b.delta.assign(b.states.size(), std::vector<DistRow>(a.alphabet.size()));
  for (int q = 0; q < n; ++q)
    for (int l = 0; l < a.alphabet.size(); ++l) {
      DistRow row;
      for (const auto& [t, p] : a.row(q, l)) {
        if (p == 1) {
          add_to_row(row, t, rat(1, 2));
          add_to_row(row, prime[t], rat(1, 2));
        } else {
          add_to_row(row, t, p);
        }
      }
      b.delta[q][l] = row;
      if (prime[q] >= 0) b.delta[prime[q]][l] = row;  // primed copies mirror their originals
    }

  switch (a.acceptance.kind()) {
    case AcceptanceKind::Rabin: {
      std::vector<RabinPair> pairs = a.acceptance.pairs();
      for (auto& pr : pairs) {
        for (int q : std::set<int>(pr.alpha))
          if (prime[q] >= 0) pr.alpha.insert(prime[q]);
        for (int q : std::set<int>(pr.beta))
          if (prime[q] >= 0) pr.beta.insert(prime[q]);
      }
      b.acceptance = AcceptanceCondition::rabin(std::move(pairs));
      break;
    }
    case AcceptanceKind::Parity: {
      std::map<int, int> prio = a.acceptance.priority();
      for (int q = 0; q < n; ++q)
        if (prime[q] >= 0) prio[prime[q]] = prio.at(q);
      b.acceptance = AcceptanceCondition::parity(std::move(prio));
      break;
    }
    default: break;
  }

  for (int q = 0; q < n; ++q) {
    rep.state_map.push_back({a.states[q], b.states[q]});
    if (prime[q] >= 0) rep.state_map.push_back({a.states[q], b.states[prime[q]]});
  }
  rep.output_class = classify(b);
  return {b, rep};
}

/// Binary-branching Rabin to binary-branching parity: product with the IAR
/// monitor of the Rabin condition. The monitor consumes the run state by
/// state starting with the initial state, so the product starts at
/// (q_init, step(i_P, q_init)); priorities come from the monitor component.
/// Binary branching is preserved since the two successors differ in the
/// automaton component. Only reachable product states are constructed.
inline std::pair<ProbWordAutomaton, TransformReport> rabin_to_parity_binary(
    const ProbWordAutomaton& a) {
  detail::require_valid(a);
  const AutomatonClass cls = classify(a);
  if (cls != AutomatonClass::BinaryBranching)
    throw Error("NotBinaryBranching", "input must be binary branching, got " + to_string(cls));
  if (a.acceptance.kind() != AcceptanceKind::Rabin)
    throw Error("NotRabin", "input acceptance must be Rabin");

  const auto monitor = rabin_condition_to_parity_monitor(a.acceptance.pairs(), a.state_count());

  TransformReport rep;
  rep.kind = "rabin-to-parity";
  rep.input_class = cls;

  ProbWordAutomaton b;
  b.alphabet = a.alphabet;

  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> order;
  auto intern = [&](int q, int p) {
    auto [it, fresh] = id.emplace(std::make_pair(q, p), static_cast<int>(order.size()));
    if (fresh) order.push_back({q, p});
    return it->second;
  };
  intern(a.initial, monitor.step(monitor.initial, a.initial));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [q, p] = order[i];
    for (int l = 0; l < a.alphabet.size(); ++l) {
      const auto [q1, q2] = binary_successors(a, q, l);
      intern(q1, monitor.step(p, q1));
      intern(q2, monitor.step(p, q2));
    }
  }

  std::map<int, int> prio;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [q, p] = order[i];
    b.states.push_back("(" + a.states[q] + "," + monitor.state_names[p] + ")");
    prio[static_cast<int>(i)] = monitor.priority[p];
    rep.state_map.push_back({a.states[q], b.states.back()});
  }
  b.initial = 0;
  b.acceptance = AcceptanceCondition::parity(std::move(prio));
  b.delta.assign(b.states.size(), std::vector<DistRow>(a.alphabet.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [q, p] = order[i];
    for (int l = 0; l < a.alphabet.size(); ++l) {
      const auto [q1, q2] = binary_successors(a, q, l);
      add_to_row(b.delta[i][l], id.at({q1, monitor.step(p, q1)}), rat(1, 2));
      add_to_row(b.delta[i][l], id.at({q2, monitor.step(p, q2)}), rat(1, 2));
    }
  }

  rep.fresh_states = static_cast<int>(b.states.size());
  rep.output_class = classify(b);
  return {b, rep};
}

}  // namespace qualomega
