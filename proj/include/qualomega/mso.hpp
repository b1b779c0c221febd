#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qualomega/errors.hpp"
#include "qualomega/tree_automaton.hpp"

namespace qualomega {

// MSO^{=1}_path over the infinite binary tree. Variable kind is carried by
// the name: set variables start with an uppercase letter, first-order
// variables with a lowercase one.

enum class FormulaKind { Succ0, Succ1, Mem, Not, And, ForallFO, ForallSO, ForallMeasurePath };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  std::string a;    // atoms: first argument; quantifiers: bound variable
  std::string b;    // atoms: second argument
  FormulaPtr lhs;   // Not / quantifiers / And left
  FormulaPtr rhs;   // And right
};

inline bool is_set_var(const std::string& name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name[0]));
}

// --- constructors ----------------------------------------------------------

inline FormulaPtr succ0(std::string x, std::string y) {
  if (is_set_var(x) || is_set_var(y)) throw Error("BadVariable", "succ0 takes first-order variables");
  return std::make_shared<Formula>(Formula{FormulaKind::Succ0, std::move(x), std::move(y), nullptr, nullptr});
}

inline FormulaPtr succ1(std::string x, std::string y) {
  if (is_set_var(x) || is_set_var(y)) throw Error("BadVariable", "succ1 takes first-order variables");
  return std::make_shared<Formula>(Formula{FormulaKind::Succ1, std::move(x), std::move(y), nullptr, nullptr});
}

inline FormulaPtr mem(std::string x, std::string X) {
  if (is_set_var(x) || !is_set_var(X))
    throw Error("BadVariable", "membership is first-order in set");
  return std::make_shared<Formula>(Formula{FormulaKind::Mem, std::move(x), std::move(X), nullptr, nullptr});
}

inline FormulaPtr not_(FormulaPtr f) {
  return std::make_shared<Formula>(Formula{FormulaKind::Not, "", "", std::move(f), nullptr});
}

inline FormulaPtr and_(FormulaPtr f, FormulaPtr g) {
  return std::make_shared<Formula>(Formula{FormulaKind::And, "", "", std::move(f), std::move(g)});
}

inline FormulaPtr forall(std::string x, FormulaPtr f) {
  if (is_set_var(x)) throw Error("BadVariable", "forall binds a first-order variable");
  return std::make_shared<Formula>(Formula{FormulaKind::ForallFO, std::move(x), "", std::move(f), nullptr});
}

inline FormulaPtr forall_set(std::string X, FormulaPtr f) {
  if (!is_set_var(X)) throw Error("BadVariable", "forallS binds a set variable");
  return std::make_shared<Formula>(Formula{FormulaKind::ForallSO, std::move(X), "", std::move(f), nullptr});
}

inline FormulaPtr forall_path1(std::string X, FormulaPtr f) {
  if (!is_set_var(X)) throw Error("BadVariable", "the path-measure quantifier binds a set variable");
  return std::make_shared<Formula>(Formula{FormulaKind::ForallMeasurePath, std::move(X), "", std::move(f), nullptr});
}

// --- derived connectives, expanded through not/and/forall -------------------

inline FormulaPtr or_(FormulaPtr f, FormulaPtr g) {
  return not_(and_(not_(std::move(f)), not_(std::move(g))));
}

inline FormulaPtr implies(FormulaPtr f, FormulaPtr g) {
  return not_(and_(std::move(f), not_(std::move(g))));
}

inline FormulaPtr exists(std::string x, FormulaPtr f) {
  return not_(forall(std::move(x), not_(std::move(f))));
}

inline FormulaPtr exists_set(std::string X, FormulaPtr f) {
  return not_(forall_set(std::move(X), not_(std::move(f))));
}

inline FormulaPtr conj(std::vector<FormulaPtr> fs) {
  if (fs.empty()) throw Error("BadArgument", "empty conjunction");
  FormulaPtr out = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) out = and_(*it, out);
  return out;
}

inline FormulaPtr disj(std::vector<FormulaPtr> fs) {
  if (fs.empty()) throw Error("BadArgument", "empty disjunction");
  FormulaPtr out = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) out = or_(*it, out);
  return out;
}

// --- structural queries ------------------------------------------------------

inline bool structurally_equal(const FormulaPtr& f, const FormulaPtr& g) {
  if (f == g) return true;
  if (!f || !g) return false;
  if (f->kind != g->kind || f->a != g->a || f->b != g->b) return false;
  return structurally_equal(f->lhs, g->lhs) && structurally_equal(f->rhs, g->rhs);
}

inline int atom_count(const FormulaPtr& f) {
  if (!f) return 0;
  switch (f->kind) {
    case FormulaKind::Succ0:
    case FormulaKind::Succ1:
    case FormulaKind::Mem: return 1;
    default: return atom_count(f->lhs) + atom_count(f->rhs);
  }
}

inline int count_kind(const FormulaPtr& f, FormulaKind k) {
  if (!f) return 0;
  const int self = f->kind == k ? 1 : 0;
  return self + count_kind(f->lhs, k) + count_kind(f->rhs, k);
}

namespace detail {

inline void free_vars_walk(const FormulaPtr& f, std::set<std::string>& bound,
                           std::set<std::string>& free) {
  if (!f) return;
  switch (f->kind) {
    case FormulaKind::Succ0:
    case FormulaKind::Succ1:
    case FormulaKind::Mem:
      if (!bound.count(f->a)) free.insert(f->a);
      if (!bound.count(f->b)) free.insert(f->b);
      return;
    case FormulaKind::Not:
    case FormulaKind::And:
      free_vars_walk(f->lhs, bound, free);
      free_vars_walk(f->rhs, bound, free);
      return;
    case FormulaKind::ForallFO:
    case FormulaKind::ForallSO:
    case FormulaKind::ForallMeasurePath: {
      const bool fresh = bound.insert(f->a).second;
      free_vars_walk(f->lhs, bound, free);
      if (fresh) bound.erase(f->a);
      return;
    }
  }
}

}  // namespace detail

inline std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> bound, free;
  detail::free_vars_walk(f, bound, free);
  return free;
}

inline bool is_sentence(const FormulaPtr& f) { return free_variables(f).empty(); }

/// Scope validator: every variable occurrence bound or listed free, variable
/// kinds consistent with atom positions, path-measure quantifier binds only
/// set variables. (The constructors enforce kinds; this re-checks parsed or
/// hand-built trees.)
inline ValidationReport validate_scopes(const FormulaPtr& f,
                                        const std::set<std::string>& declared_free = {}) {
  ValidationReport rep;
  auto bad = [&rep](const std::string& msg) { rep.issues.push_back({"BadScope", msg}); };
  auto walk = [&](auto&& self, const FormulaPtr& g, std::set<std::string> bound) -> void {
    if (!g) {
      bad("null subformula");
      return;
    }
    auto check_var = [&](const std::string& v, bool set_kind) {
      if (v.empty()) bad("empty variable name");
      if (is_set_var(v) != set_kind)
        bad("variable '" + v + "' used with the wrong kind");
      if (!bound.count(v) && !declared_free.count(v)) bad("unbound variable '" + v + "'");
    };
    switch (g->kind) {
      case FormulaKind::Succ0:
      case FormulaKind::Succ1:
        check_var(g->a, false);
        check_var(g->b, false);
        return;
      case FormulaKind::Mem:
        check_var(g->a, false);
        check_var(g->b, true);
        return;
      case FormulaKind::Not:
        self(self, g->lhs, bound);
        return;
      case FormulaKind::And:
        self(self, g->lhs, bound);
        self(self, g->rhs, bound);
        return;
      case FormulaKind::ForallFO:
        if (is_set_var(g->a)) bad("forall binds set variable '" + g->a + "'");
        bound.insert(g->a);
        self(self, g->lhs, bound);
        return;
      case FormulaKind::ForallSO:
      case FormulaKind::ForallMeasurePath:
        if (!is_set_var(g->a))
          bad("set quantifier binds first-order variable '" + g->a + "'");
        bound.insert(g->a);
        self(self, g->lhs, bound);
        return;
    }
  };
  walk(walk, f, {});
  return rep;
}

// --- printer and parser ------------------------------------------------------

inline void print_formula(const FormulaPtr& f, std::string& out) {
  switch (f->kind) {
    case FormulaKind::Succ0: out += "(succ0 " + f->a + " " + f->b + ")"; return;
    case FormulaKind::Succ1: out += "(succ1 " + f->a + " " + f->b + ")"; return;
    case FormulaKind::Mem: out += "(in " + f->a + " " + f->b + ")"; return;
    case FormulaKind::Not:
      out += "(not ";
      print_formula(f->lhs, out);
      out += ")";
      return;
    case FormulaKind::And:
      out += "(and ";
      print_formula(f->lhs, out);
      out += " ";
      print_formula(f->rhs, out);
      out += ")";
      return;
    case FormulaKind::ForallFO:
    case FormulaKind::ForallSO:
    case FormulaKind::ForallMeasurePath: {
      const char* kw = f->kind == FormulaKind::ForallFO     ? "forall"
                       : f->kind == FormulaKind::ForallSO   ? "forallS"
                                                            : "forallP1";
      out += "(";
      out += kw;
      out += " " + f->a + " ";
      print_formula(f->lhs, out);
      out += ")";
      return;
    }
  }
}

inline std::string print_formula(const FormulaPtr& f) {
  std::string out;
  print_formula(f, out);
  return out;
}

namespace detail {

struct SexprParser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  char peek() {
    skip_ws();
    if (pos >= text.size()) throw Error("Parse", "unexpected end of formula");
    return text[pos];
  }

  void expect(char c) {
    if (peek() != c) throw Error("Parse", std::string("expected '") + c + "' at offset " + std::to_string(pos));
    ++pos;
  }

  std::string symbol() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (start == pos) throw Error("Parse", "expected a symbol at offset " + std::to_string(pos));
    return text.substr(start, pos - start);
  }

  FormulaPtr formula() {
    expect('(');
    const std::string head = symbol();
    FormulaPtr out;
    if (head == "succ0" || head == "succ1") {
      auto x = symbol();
      auto y = symbol();
      out = head == "succ0" ? succ0(std::move(x), std::move(y)) : succ1(std::move(x), std::move(y));
    } else if (head == "in") {
      auto x = symbol();
      auto X = symbol();
      out = mem(std::move(x), std::move(X));
    } else if (head == "not") {
      out = not_(formula());
    } else if (head == "and") {
      auto l = formula();
      auto r = formula();
      out = and_(std::move(l), std::move(r));
    } else if (head == "forall") {
      auto v = symbol();
      out = forall(std::move(v), formula());
    } else if (head == "forallS") {
      auto v = symbol();
      out = forall_set(std::move(v), formula());
    } else if (head == "forallP1") {
      auto v = symbol();
      out = forall_path1(std::move(v), formula());
    } else {
      throw Error("Parse", "unknown connective '" + head + "'");
    }
    expect(')');
    return out;
  }
};

}  // namespace detail

inline FormulaPtr parse_formula(const std::string& text) {
  detail::SexprParser p{text};
  auto f = p.formula();
  p.skip_ws();
  if (p.pos != text.size()) throw Error("Parse", "trailing input after formula");
  return f;
}

}  // namespace qualomega
