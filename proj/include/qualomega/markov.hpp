#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qualomega/acceptance.hpp"
#include "qualomega/rational.hpp"
#include "qualomega/rng.hpp"
#include "qualomega/word_automaton.hpp"

namespace qualomega {

/// Finite Markov chain with exact rational transition probabilities. Each
/// state carries a label payload (an index into payload_names); objectives
/// are evaluated on the label sequence.
struct FiniteChain {
  std::vector<std::string> state_names;
  int initial = 0;
  std::vector<DistRow> delta;          // delta[s] = distribution over successors
  std::vector<int> label;              // label[s] = payload id
  std::vector<std::string> payload_names;

  int state_count() const { return static_cast<int>(state_names.size()); }

  int payload_index(const std::string& name) const {
    auto it = std::find(payload_names.begin(), payload_names.end(), name);
    if (it == payload_names.end()) throw Error("UnknownLabel", "payload '" + name + "' not declared");
    return static_cast<int>(it - payload_names.begin());
  }
};

/// Omega-regular objective over a chain's label payloads. Payloads flagged
/// silent are dropped from inf-sets before the condition is evaluated
/// (Def-3-style mid states).
struct ChainObjective {
  AcceptanceCondition condition;  // over payload ids
  std::vector<char> silent;       // size = payload count; empty means none silent

  bool is_silent(int payload) const {
    return payload >= 0 && payload < static_cast<int>(silent.size()) && silent[payload];
  }
};

inline ValidationReport validate(const FiniteChain& c) {
  ValidationReport rep;
  const int n = c.state_count();
  if (n == 0) rep.issues.push_back({"DanglingState", "chain has no states"});
  if (c.initial < 0 || c.initial >= n)
    rep.issues.push_back({"DanglingState", "initial state index out of range"});
  if (static_cast<int>(c.delta.size()) != n || static_cast<int>(c.label.size()) != n) {
    rep.issues.push_back({"DanglingState", "delta/label not defined for every state"});
    return rep;
  }
  for (int s = 0; s < n; ++s) {
    for (const auto& [t, p] : c.delta[s]) {
      if (t < 0 || t >= n) rep.issues.push_back({"DanglingState", "edge to undeclared state"});
      if (p < 0) rep.issues.push_back({"NonStochasticRow", "negative probability"});
    }
    if (row_sum(c.delta[s]) != 1)
      rep.issues.push_back({"NonStochasticRow", "row " + c.state_names[s] + " sums to " +
                                                    format_rational(row_sum(c.delta[s]))});
    if (c.label[s] < 0 || c.label[s] >= static_cast<int>(c.payload_names.size()))
      rep.issues.push_back({"DanglingState", "label of " + c.state_names[s] + " out of range"});
  }
  return rep;
}

/// Bottom strongly connected components plus exact absorption probabilities
/// from the initial state.
struct BsccDecomposition {
  std::vector<std::vector<int>> bsccs;  // disjoint, each closed and strongly connected
  std::vector<int> transient;           // states in no BSCC
  std::vector<Rational> reach_prob;     // per BSCC, absorption probability from initial
  std::vector<int> bscc_of;             // per state: BSCC index or -1
};

namespace detail {

/// Iterative Tarjan over positive-probability edges.
inline std::vector<std::vector<int>> strongly_connected_components(const FiniteChain& c) {
  const int n = c.state_count();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> sccs;
  int counter = 0;

  struct Frame {
    int v;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < c.delta[f.v].size()) {
        const int w = c.delta[f.v][f.edge].first;
        ++f.edge;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        const int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
          } while (w != v);
          std::sort(comp.begin(), comp.end());
          sccs.push_back(std::move(comp));
        }
      }
    }
  }
  return sccs;
}

}  // namespace detail

/// Complete BSCC/transient partition; absorption probabilities computed by
/// exact state elimination on the transient subsystem (single source, one
/// pseudo-target per BSCC).
inline BsccDecomposition bscc_decompose(const FiniteChain& c) {
  const int n = c.state_count();
  BsccDecomposition dec;
  dec.bscc_of.assign(n, -1);

  auto sccs = detail::strongly_connected_components(c);
  std::vector<int> scc_of(n, -1);
  for (int i = 0; i < static_cast<int>(sccs.size()); ++i)
    for (int s : sccs[i]) scc_of[s] = i;

  for (auto& comp : sccs) {
    bool closed = true;
    for (int s : comp)
      for (const auto& [t, p] : c.delta[s])
        if (scc_of[t] != scc_of[s]) closed = false;
    if (closed) {
      const int b = static_cast<int>(dec.bsccs.size());
      for (int s : comp) dec.bscc_of[s] = b;
      dec.bsccs.push_back(comp);
    }
  }
  for (int s = 0; s < n; ++s)
    if (dec.bscc_of[s] < 0) dec.transient.push_back(s);

  const int k = static_cast<int>(dec.bsccs.size());
  dec.reach_prob.assign(k, Rational(0));

  if (dec.bscc_of[c.initial] >= 0) {
    dec.reach_prob[dec.bscc_of[c.initial]] = 1;
    return dec;
  }

  // Node ids: transient states as-is, pseudo-target n+b per BSCC b.
  std::vector<std::map<int, Rational>> out(n + k);
  std::vector<std::set<int>> preds(n);
  for (int s : dec.transient) {
    for (const auto& [t, p] : c.delta[s]) {
      const int node = dec.bscc_of[t] >= 0 ? n + dec.bscc_of[t] : t;
      out[s][node] += p;
      if (node < n) preds[node].insert(s);
    }
  }

  // Eliminate every transient state except the source. Self-loop mass is
  // renormalized away, then the state's outgoing row is substituted into
  // each predecessor.
  for (int e : dec.transient) {
    if (e == c.initial) continue;
    auto& row = out[e];
    if (auto self = row.find(e); self != row.end()) {
      const Rational keep = Rational(1) - self->second;
      row.erase(self);
      for (auto& [t, p] : row) p /= keep;
    }
    const std::set<int> ps = preds[e];
    for (int p : ps) {
      if (p == e) continue;
      auto& prow = out[p];
      auto it = prow.find(e);
      if (it == prow.end()) continue;
      const Rational w = it->second;
      prow.erase(it);
      for (const auto& [t, v] : row) {
        prow[t] += w * v;
        if (t < n) preds[t].insert(p);
      }
    }
    row.clear();
    preds[e].clear();
  }

  auto& irow = out[c.initial];
  if (auto self = irow.find(c.initial); self != irow.end()) {
    const Rational keep = Rational(1) - self->second;
    irow.erase(self);
    for (auto& [t, p] : irow) p /= keep;
  }
  for (const auto& [t, p] : irow)
    if (t >= n) dec.reach_prob[t - n] = p;
  return dec;
}

/// Non-silent label inf-set of a BSCC: within a BSCC almost every run visits
/// exactly its states infinitely often.
inline std::set<int> bscc_infset(const FiniteChain& c, const ChainObjective& o,
                                 const std::vector<int>& bscc) {
  std::set<int> inf;
  for (int s : bscc)
    if (!o.is_silent(c.label[s])) inf.insert(c.label[s]);
  return inf;
}

/// Measure of runs satisfying the objective: sum of absorption probabilities
/// over BSCCs whose label inf-set the condition accepts. Exact rational.
inline Rational objective_value(const FiniteChain& c, const ChainObjective& o,
                                const BsccDecomposition& dec) {
  Rational v = 0;
  for (int b = 0; b < static_cast<int>(dec.bsccs.size()); ++b) {
    if (dec.reach_prob[b] == 0) continue;
    const auto inf = bscc_infset(c, o, dec.bsccs[b]);
    if (inf.empty())
      throw Error("AllSilentBscc", "reachable BSCC containing " +
                                       c.state_names.at(dec.bsccs[b].front()) +
                                       " has only silent labels");
    if (o.condition.accepts_infset(inf)) v += dec.reach_prob[b];
  }
  return v;
}

inline Rational objective_value(const FiniteChain& c, const ChainObjective& o) {
  return objective_value(c, o, bscc_decompose(c));
}

inline bool almost_sure(const FiniteChain& c, const ChainObjective& o) {
  return objective_value(c, o) == 1;
}

inline bool positive(const FiniteChain& c, const ChainObjective& o) {
  return objective_value(c, o) > 0;
}

// ---------------------------------------------------------------------------
// Sampling

namespace detail {

/// Cumulative 64-bit fixed-point thresholds per row. Zero-probability edges
/// collapse to equal thresholds and are never drawn; the final edge absorbs
/// rounding so the row covers the full range.
struct SamplerRow {
  std::vector<std::pair<std::uint64_t, int>> cum;  // (threshold, target), threshold 0 == 2^64
};

inline std::vector<SamplerRow> build_sampler(const FiniteChain& c) {
  std::vector<SamplerRow> rows(c.state_count());
  const BigInt full = BigInt(1) << 64;
  for (int s = 0; s < c.state_count(); ++s) {
    Rational acc = 0;
    auto& row = rows[s];
    for (std::size_t i = 0; i < c.delta[s].size(); ++i) {
      acc += c.delta[s][i].second;
      BigInt scaled = boost::multiprecision::numerator(acc) * full /
                      boost::multiprecision::denominator(acc);
      if (i + 1 == c.delta[s].size()) scaled = full;  // acc == 1 exactly; avoid rounding gaps
      const std::uint64_t th = static_cast<std::uint64_t>(scaled & 0xffffffffffffffffULL);
      row.cum.push_back({th, c.delta[s][i].first});
    }
  }
  return rows;
}

inline int draw(const SamplerRow& row, std::uint64_t r) {
  for (std::size_t i = 0; i + 1 < row.cum.size(); ++i)
    if (r < row.cum[i].first) return row.cum[i].second;
  return row.cum.back().second;
}

}  // namespace detail

struct SampleRun {
  std::vector<int> visited;       // state ids in visit order
  std::set<int> infset_estimate;  // non-silent payloads seen in the last half
};

/// Deterministic random walk: `steps` transitions from the initial state.
/// The inf-set estimate collects the non-silent labels of the second half.
inline SampleRun sample_run(const FiniteChain& c, const ChainObjective& o, int steps,
                            std::uint64_t seed) {
  if (steps < 1) throw Error("BadArgument", "steps must be >= 1");
  const auto sampler = detail::build_sampler(c);
  SplitMix64 rng(seed);
  SampleRun run;
  int s = c.initial;
  run.visited.push_back(s);
  for (int i = 0; i < steps; ++i) {
    s = detail::draw(sampler[s], rng.next());
    run.visited.push_back(s);
  }
  for (std::size_t i = run.visited.size() / 2; i < run.visited.size(); ++i) {
    const int payload = c.label[run.visited[i]];
    if (!o.is_silent(payload)) run.infset_estimate.insert(payload);
  }
  return run;
}

/// One exact sample of the acceptance event: walk until absorbed into a
/// BSCC (almost surely finite) and report that BSCC's verdict. In exact
/// arithmetic an absorption-probability-0 BSCC is unreachable, so the
/// verdict distribution equals the objective value.
inline bool sample_accept(const FiniteChain& c, const BsccDecomposition& dec,
                          const std::vector<detail::SamplerRow>& sampler,
                          const std::vector<char>& bscc_accepts, SplitMix64& rng) {
  int s = c.initial;
  while (dec.bscc_of[s] < 0) s = detail::draw(sampler[s], rng.next());
  return bscc_accepts[dec.bscc_of[s]] != 0;
}

// ---------------------------------------------------------------------------
// Quotients

/// Exact probabilistic bisimulation classes (label-respecting partition
/// refinement). Two states are merged iff they carry the same payload and
/// induce the same distribution over classes.
inline std::vector<int> bisimulation_classes(const FiniteChain& c) {
  const int n = c.state_count();
  std::vector<int> cls(n);
  for (int s = 0; s < n; ++s) cls[s] = c.label[s];
  // normalize block ids
  for (bool changed = true; changed;) {
    using Sig = std::pair<int, std::vector<std::pair<int, Rational>>>;
    std::map<Sig, int> blocks;
    std::vector<int> next(n);
    for (int s = 0; s < n; ++s) {
      std::map<int, Rational> dist;
      for (const auto& [t, p] : c.delta[s]) dist[cls[t]] += p;
      Sig sig{cls[s], {dist.begin(), dist.end()}};
      auto [it, fresh] = blocks.emplace(std::move(sig), static_cast<int>(blocks.size()));
      next[s] = it->second;
    }
    changed = next != cls;
    cls = std::move(next);
  }
  return cls;
}

/// True iff the initial states of the two chains are exactly bisimilar.
/// Payload universes must match (payload ids are compared by name).
inline bool initials_bisimilar(const FiniteChain& a, const FiniteChain& b) {
  if (a.payload_names != b.payload_names) return false;
  FiniteChain u;
  u.payload_names = a.payload_names;
  u.state_names = a.state_names;
  for (const auto& s : b.state_names) u.state_names.push_back(s + "'");
  u.initial = a.initial;
  u.delta = a.delta;
  u.label = a.label;
  const int off = a.state_count();
  for (int s = 0; s < b.state_count(); ++s) {
    DistRow row;
    for (const auto& [t, p] : b.delta[s]) row.push_back({t + off, p});
    u.delta.push_back(std::move(row));
    u.label.push_back(b.label[s]);
  }
  const auto cls = bisimulation_classes(u);
  return cls[a.initial] == cls[off + b.initial];
}

/// Contracts every silent-labeled state: each incoming edge is re-attached
/// to the state's successors with multiplied probability (Fig.-2-style
/// collapse). Requires silent states to have only non-silent successors and
/// a non-silent initial state.
inline FiniteChain contract_silent(const FiniteChain& c, const ChainObjective& o) {
  const int n = c.state_count();
  if (o.is_silent(c.label[c.initial])) throw Error("BadArgument", "initial state is silent");
  std::vector<int> new_id(n, -1);
  FiniteChain out;
  out.payload_names = c.payload_names;
  for (int s = 0; s < n; ++s) {
    if (o.is_silent(c.label[s])) continue;
    new_id[s] = out.state_count();
    out.state_names.push_back(c.state_names[s]);
    out.label.push_back(c.label[s]);
  }
  out.initial = new_id[c.initial];
  out.delta.resize(out.state_count());
  for (int s = 0; s < n; ++s) {
    if (new_id[s] < 0) continue;
    DistRow& row = out.delta[new_id[s]];
    for (const auto& [t, p] : c.delta[s]) {
      if (new_id[t] >= 0) {
        add_to_row(row, new_id[t], p);
      } else {
        for (const auto& [t2, p2] : c.delta[t]) {
          if (new_id[t2] < 0)
            throw Error("BadArgument", "silent state has a silent successor; cannot contract");
          add_to_row(row, new_id[t2], p * p2);
        }
      }
    }
  }
  return out;
}

}  // namespace qualomega
