#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qualomega/lasso.hpp"
#include "qualomega/markov.hpp"
#include "qualomega/regular_tree.hpp"
#include "qualomega/rng.hpp"
#include "qualomega/word_automaton.hpp"

namespace qualomega {

/// Reproducible random-instance generation for the property suites: the same
/// spec (seed + counts + bounds) always produces the same corpus.
struct CorpusSpec {
  std::uint64_t seed = 1;
  int semisimple = 0;
  int simple = 0;
  int binary = 0;
  int trees = 0;
  int lassos_per_automaton = 0;
  int max_states = 4;        // |Q| <= 5 overall bound
  int max_letters = 2;       // |Sigma| <= 3 overall bound
  int max_lasso_length = 5;  // |u| + |v| <= 6 overall bound
  int max_tree_classes = 4;
  std::vector<AcceptanceKind> kinds{AcceptanceKind::Rabin, AcceptanceKind::Parity};
};

namespace corpus_detail {

inline std::vector<std::string> state_names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("q" + std::to_string(i));
  return out;
}

inline std::vector<std::string> letter_names(int n) {
  static const char* letters[] = {"a", "b", "c", "d", "e"};
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(letters[i]);
  return out;
}

}  // namespace corpus_detail

inline AcceptanceCondition random_acceptance(SplitMix64& rng, int n, AcceptanceKind kind) {
  auto random_subset = [&](bool allow_empty) {
    std::set<int> s;
    for (int q = 0; q < n; ++q)
      if (rng.coin()) s.insert(q);
    if (!allow_empty && s.empty()) s.insert(static_cast<int>(rng.below(n)));
    return s;
  };
  switch (kind) {
    case AcceptanceKind::Buchi: return AcceptanceCondition::buchi(random_subset(false));
    case AcceptanceKind::CoBuchi: return AcceptanceCondition::cobuchi(random_subset(true));
    case AcceptanceKind::Rabin: {
      const int k = 1 + static_cast<int>(rng.below(2));
      std::vector<RabinPair> pairs;
      for (int i = 0; i < k; ++i) pairs.push_back({random_subset(false), random_subset(true)});
      return AcceptanceCondition::rabin(std::move(pairs));
    }
    case AcceptanceKind::Parity: {
      std::map<int, int> prio;
      for (int q = 0; q < n; ++q) prio[q] = static_cast<int>(rng.below(4));
      return AcceptanceCondition::parity(std::move(prio));
    }
  }
  return AcceptanceCondition::buchi({0});
}

/// Semi-simple rows: pick a dyadic resolution 2^e per row and deal the 2^e
/// mass units to random targets.
inline ProbWordAutomaton random_semisimple(SplitMix64& rng, const CorpusSpec& spec,
                                           AcceptanceKind kind) {
  const int n = 2 + static_cast<int>(rng.below(std::max(1, spec.max_states - 1)));
  const int letters = 1 + static_cast<int>(rng.below(spec.max_letters));
  ProbWordAutomaton a;
  a.states = corpus_detail::state_names(n);
  a.alphabet = Alphabet(corpus_detail::letter_names(letters));
  a.initial = 0;
  a.acceptance = random_acceptance(rng, n, kind);
  a.delta.assign(n, std::vector<DistRow>(letters));
  for (int q = 0; q < n; ++q)
    for (int l = 0; l < letters; ++l) {
      const int e = static_cast<int>(rng.below(4));  // resolution up to 1/8
      const int units = 1 << e;
      for (int u = 0; u < units; ++u)
        add_to_row(a.delta[q][l], static_cast<int>(rng.below(n)), Rational(1, units));
    }
  return a;
}

/// Simple rows: a probability-1 edge or a half-half split over two distinct
/// targets.
inline ProbWordAutomaton random_simple(SplitMix64& rng, const CorpusSpec& spec,
                                       AcceptanceKind kind) {
  const int n = 2 + static_cast<int>(rng.below(std::max(1, spec.max_states - 1)));
  const int letters = 1 + static_cast<int>(rng.below(spec.max_letters));
  ProbWordAutomaton a;
  a.states = corpus_detail::state_names(n);
  a.alphabet = Alphabet(corpus_detail::letter_names(letters));
  a.initial = 0;
  a.acceptance = random_acceptance(rng, n, kind);
  a.delta.assign(n, std::vector<DistRow>(letters));
  for (int q = 0; q < n; ++q)
    for (int l = 0; l < letters; ++l) {
      if (rng.coin()) {
        add_to_row(a.delta[q][l], static_cast<int>(rng.below(n)), rat(1));
      } else {
        const int t0 = static_cast<int>(rng.below(n));
        int t1 = static_cast<int>(rng.below(n));
        while (t1 == t0) t1 = static_cast<int>(rng.below(n));
        add_to_row(a.delta[q][l], t0, rat(1, 2));
        add_to_row(a.delta[q][l], t1, rat(1, 2));
      }
    }
  return a;
}

inline ProbWordAutomaton random_binary(SplitMix64& rng, const CorpusSpec& spec,
                                       AcceptanceKind kind) {
  const int n = 2 + static_cast<int>(rng.below(std::max(1, spec.max_states - 1)));
  const int letters = 1 + static_cast<int>(rng.below(spec.max_letters));
  ProbWordAutomaton a;
  a.states = corpus_detail::state_names(n);
  a.alphabet = Alphabet(corpus_detail::letter_names(letters));
  a.initial = 0;
  a.acceptance = random_acceptance(rng, n, kind);
  a.delta.assign(n, std::vector<DistRow>(letters));
  for (int q = 0; q < n; ++q)
    for (int l = 0; l < letters; ++l) {
      const int t0 = static_cast<int>(rng.below(n));
      int t1 = static_cast<int>(rng.below(n));
      while (t1 == t0) t1 = static_cast<int>(rng.below(n));
      add_to_row(a.delta[q][l], t0, rat(1, 2));
      add_to_row(a.delta[q][l], t1, rat(1, 2));
    }
  return a;
}

inline LassoWord random_lasso(SplitMix64& rng, const Alphabet& sigma, int max_total) {
  LassoWord w;
  const int total = 1 + static_cast<int>(rng.below(max_total));
  const int ulen = static_cast<int>(rng.below(total));
  for (int i = 0; i < ulen; ++i) w.prefix.push_back(static_cast<int>(rng.below(sigma.size())));
  for (int i = ulen; i < total; ++i) w.cycle.push_back(static_cast<int>(rng.below(sigma.size())));
  return w;
}

inline RegularTree random_regular_tree(SplitMix64& rng, const Alphabet& sigma, int max_classes) {
  const int n = 1 + static_cast<int>(rng.below(max_classes));
  RegularTree t;
  t.labels_over = sigma;
  t.root = 0;
  for (int i = 0; i < n; ++i) {
    t.class_names.push_back("c" + std::to_string(i));
    t.label.push_back(static_cast<int>(rng.below(sigma.size())));
    t.child0.push_back(static_cast<int>(rng.below(n)));
    t.child1.push_back(static_cast<int>(rng.below(n)));
  }
  // make every class reachable: chain class i into the tree at class i-1
  for (int i = 1; i < n; ++i)
    if (!rng.coin())
      t.child0[i - 1] = i;
    else
      t.child1[i - 1] = i;
  return t;
}

/// Random chain with exact rational rows (not necessarily dyadic) for the
/// engine-vs-oracle suites.
inline FiniteChain random_chain(SplitMix64& rng, int max_states, int payloads) {
  const int n = 1 + static_cast<int>(rng.below(max_states));
  FiniteChain c;
  for (int i = 0; i < n; ++i) c.state_names.push_back("s" + std::to_string(i));
  for (int i = 0; i < payloads; ++i) c.payload_names.push_back("p" + std::to_string(i));
  c.initial = 0;
  c.delta.resize(n);
  for (int s = 0; s < n; ++s) {
    c.label.push_back(static_cast<int>(rng.below(payloads)));
    // random denominator and a random composition of it over <= 3 targets
    const int den = 1 + static_cast<int>(rng.below(12));
    int remaining = den;
    while (remaining > 0) {
      const int take = 1 + static_cast<int>(rng.below(remaining));
      add_to_row(c.delta[s], static_cast<int>(rng.below(n)), Rational(take, den));
      remaining -= take;
    }
  }
  return c;
}

}  // namespace qualomega
