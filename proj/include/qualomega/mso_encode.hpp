#pragma once

#include <string>
#include <vector>

#include "qualomega/mso.hpp"
#include "qualomega/tree_automaton.hpp"

namespace qualomega {

/// Injective fixed-width binary coding of an index universe (letters into
/// the X-variables, states into the Y-variables).
struct BitCoding {
  int width = 1;

  static int minimal_width(int count) {
    int w = 1;
    while ((1 << w) < count) ++w;
    return w;
  }

  static BitCoding minimal_for(int count, const std::string& what) {
    if (count < 1) throw Error("BadArgument", "empty " + what + " universe");
    return BitCoding{minimal_width(count)};
  }

  static BitCoding with_width(int width, int count, const std::string& what) {
    if (width < 1 || (1LL << width) < count)
      throw Error("CodingWidthTooSmall",
                  std::to_string(count) + " " + what + " do not fit in " +
                      std::to_string(width) + " bits");
    return BitCoding{width};
  }

  std::vector<bool> encode(int index) const {
    std::vector<bool> bits(width);
    for (int i = 0; i < width; ++i) bits[i] = (index >> i) & 1;
    return bits;
  }

  int decode(const std::vector<bool>& bits) const {
    int v = 0;
    for (int i = 0; i < width && i < static_cast<int>(bits.size()); ++i)
      if (bits[i]) v |= 1 << i;
    return v;
  }
};

namespace mso_detail {

inline std::vector<std::string> numbered(const std::string& stem, int count) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

/// x carries `index` under the coding over `vars`.
inline FormulaPtr codes_as(const std::string& x, const std::vector<std::string>& vars,
                           const BitCoding& coding, int index) {
  std::vector<FormulaPtr> bits;
  const auto enc = coding.encode(index);
  for (std::size_t i = 0; i < vars.size(); ++i)
    bits.push_back(enc[i] ? mem(x, vars[i]) : not_(mem(x, vars[i])));
  return conj(std::move(bits));
}

inline FormulaPtr child(const std::string& x, const std::string& c) {
  return or_(succ0(x, c), succ1(x, c));
}

inline FormulaPtr is_root(const std::string& r) {
  return and_(not_(exists("pp", succ0("pp", r))), not_(exists("pp", succ1("pp", r))));
}

/// A scoped contradiction (used when a disjunction over an empty family is
/// needed); x must be a bindable fresh first-order name.
inline FormulaPtr never() {
  return exists("ff", and_(is_root("ff"), not_(is_root("ff"))));
}

}  // namespace mso_detail

/// The three path conditions on a set variable P: the root belongs to P, P
/// is closed under immediate predecessors, and every member has exactly one
/// child in P. Quantifier-free in P (a matrix; only first-order and
/// subformula-local quantifiers appear).
inline FormulaPtr path_axioms(const std::string& P) {
  using namespace mso_detail;
  auto root_cond = forall("rr", implies(is_root("rr"), mem("rr", P)));
  auto prefix_closed =
      forall("vv", forall("ww", implies(and_(mem("vv", P), child("ww", "vv")), mem("ww", P))));
  auto progression = forall(
      "vv",
      implies(mem("vv", P),
              and_(exists("cc", and_(child("vv", "cc"), mem("cc", P))),
                   not_(exists("c0", exists("c1", conj({succ0("vv", "c0"), succ1("vv", "c1"),
                                                        mem("c0", P), mem("c1", P)})))))));
  return conj({root_cond, prefix_closed, progression});
}

/// "Y-vec is a run of A on X-vec": the root carries the initial state and
/// every node's (state, letter, child states) tuple appears in Delta,
/// written as a finite disjunction over Delta.
inline FormulaPtr encode_run(const TreeAutomaton& a, const std::vector<std::string>& xvars,
                             const std::vector<std::string>& yvars) {
  using namespace mso_detail;
  const auto lc = BitCoding::with_width(static_cast<int>(xvars.size()), a.alphabet.size(), "letters");
  const auto sc = BitCoding::with_width(static_cast<int>(yvars.size()), a.state_count(), "states");

  auto root_cond = forall("rr", implies(is_root("rr"), codes_as("rr", yvars, sc, a.initial)));

  FormulaPtr table;
  if (a.delta.empty()) {
    table = never();
  } else {
    std::vector<FormulaPtr> cases;
    for (const auto& tr : a.delta)
      cases.push_back(conj({codes_as("xx", yvars, sc, tr.from), codes_as("xx", xvars, lc, tr.letter),
                            codes_as("y0", yvars, sc, tr.left), codes_as("y1", yvars, sc, tr.right)}));
    table = disj(std::move(cases));
  }
  auto transition =
      forall("xx", forall("y0", forall("y1", implies(and_(succ0("xx", "y0"), succ1("xx", "y1")),
                                                     table))));
  return and_(root_cond, transition);
}

/// "Z is an accepting path of Y-vec": Z satisfies the path axioms and the
/// minimal priority occurring infinitely often along Z is even. "Priority p
/// occurs infinitely often" is written as: below every member of Z there is
/// a strictly deeper member carrying p, with the descendant relation
/// expressed through successor-closed sets.
inline FormulaPtr encode_accepting_path(const TreeAutomaton& a,
                                        const std::vector<std::string>& yvars,
                                        const std::string& Z) {
  using namespace mso_detail;
  if (a.acceptance.kind() != AcceptanceKind::Parity)
    throw Error("NotParity", "the accepting-path encoding needs a parity condition");
  const auto sc = BitCoding::with_width(static_cast<int>(yvars.size()), a.state_count(), "states");

  // y in the downward closure of c: every successor-closed set containing c contains y
  auto beloweq = [&](const std::string& c, const std::string& y) {
    auto closed = forall("uu", forall("vv", implies(and_(mem("uu", "W"), child("uu", "vv")),
                                                    mem("vv", "W"))));
    return forall_set("W", implies(and_(mem(c, "W"), closed), mem(y, "W")));
  };

  auto prio_is = [&](const std::string& y, int p) -> FormulaPtr {
    std::vector<FormulaPtr> cases;
    for (int q = 0; q < a.state_count(); ++q)
      if (a.acceptance.priority_of(q) == p) cases.push_back(codes_as(y, yvars, sc, q));
    if (cases.empty()) return never();
    return disj(std::move(cases));
  };

  auto infinitely_often = [&](int p) {
    return forall(
        "zz", implies(mem("zz", Z),
                      exists("cc", exists("yy", conj({child("zz", "cc"), beloweq("cc", "yy"),
                                                      mem("yy", Z), prio_is("yy", p)})))));
  };

  std::set<int> prios;
  for (int q = 0; q < a.state_count(); ++q) prios.insert(a.acceptance.priority_of(q));

  std::vector<FormulaPtr> winners;
  for (int p : prios) {
    if (p % 2 != 0) continue;
    std::vector<FormulaPtr> parts{infinitely_often(p)};
    for (int odd : prios)
      if (odd < p && odd % 2 == 1) parts.push_back(not_(infinitely_often(odd)));
    winners.push_back(conj(std::move(parts)));
  }
  auto parity_part = winners.empty() ? never() : disj(std::move(winners));
  return and_(path_axioms(Z), parity_part);
}

struct PhiA {
  FormulaPtr formula;
  std::vector<std::string> xvars;  // free letter-coding variables
  BitCoding letter_coding;
  BitCoding state_coding;
};

/// phi_A(X-vec): every run of A on X-vec is qualitatively accepting —
/// forall Y-vec ("run" -> forallP1 Z ("accepting path")).
inline PhiA phi_A(const TreeAutomaton& a) {
  {
    const auto rep = validate(a);
    if (!rep.ok()) throw Error("InvalidAutomaton", rep.summary());
  }
  if (a.acceptance.kind() != AcceptanceKind::Parity)
    throw Error("NotParity", "phi_A is defined for parity tree automata");
  PhiA out;
  out.letter_coding = BitCoding::minimal_for(a.alphabet.size(), "letter");
  out.state_coding = BitCoding::minimal_for(a.state_count(), "state");
  out.xvars = mso_detail::numbered("X", out.letter_coding.width);
  const auto yvars = mso_detail::numbered("Y", out.state_coding.width);

  auto body = implies(encode_run(a, out.xvars, yvars),
                      forall_path1("Z", encode_accepting_path(a, yvars, "Z")));
  for (auto it = yvars.rbegin(); it != yvars.rend(); ++it) body = forall_set(*it, body);
  out.formula = body;
  return out;
}

/// The closed sentence "forall X-vec. not phi_A(X-vec)": true in the
/// infinite binary tree iff qulang(A) is empty.
inline FormulaPtr emptiness_sentence(const TreeAutomaton& a) {
  auto phi = phi_A(a);
  FormulaPtr f = not_(phi.formula);
  for (auto it = phi.xvars.rbegin(); it != phi.xvars.rend(); ++it) f = forall_set(*it, f);
  return f;
}

}  // namespace qualomega
