#pragma once

#include <string>
#include <vector>

#include "qualomega/alphabet.hpp"
#include "qualomega/lasso.hpp"
#include "qualomega/word_automaton.hpp"

namespace qualomega {

/// Finite presentation of an infinite binary tree with finitely many
/// distinct subtrees: a rooted graph of node classes with total child maps.
/// The label universe is an Alphabet (input letters, or automaton states for
/// run trees).
struct RegularTree {
  std::vector<std::string> class_names;
  Alphabet labels_over;
  int root = 0;
  std::vector<int> label;   // per class
  std::vector<int> child0;  // per class
  std::vector<int> child1;  // per class

  int class_count() const { return static_cast<int>(class_names.size()); }

  int class_index(const std::string& name) const {
    for (int i = 0; i < class_count(); ++i)
      if (class_names[i] == name) return i;
    throw Error("UnknownClass", "tree class '" + name + "' not declared");
  }
};

inline ValidationReport validate(const RegularTree& t) {
  ValidationReport rep;
  const int n = t.class_count();
  if (n == 0) {
    rep.issues.push_back({"DanglingState", "tree has no classes"});
    return rep;
  }
  if (t.root < 0 || t.root >= n) rep.issues.push_back({"DanglingState", "root out of range"});
  if (static_cast<int>(t.label.size()) != n || static_cast<int>(t.child0.size()) != n ||
      static_cast<int>(t.child1.size()) != n) {
    rep.issues.push_back({"DanglingState", "label/child maps must be total over classes"});
    return rep;
  }
  for (int i = 0; i < n; ++i) {
    if (t.label[i] < 0 || t.label[i] >= t.labels_over.size())
      rep.issues.push_back({"DanglingState", "label of class " + t.class_names[i] + " out of range"});
    if (t.child0[i] < 0 || t.child0[i] >= n || t.child1[i] < 0 || t.child1[i] >= n)
      rep.issues.push_back({"DanglingState", "child of class " + t.class_names[i] + " out of range"});
  }
  // every class reachable from the root
  std::vector<char> seen(n, 0);
  std::vector<int> work{t.root};
  if (t.root >= 0 && t.root < n) seen[t.root] = 1;
  while (!work.empty()) {
    const int c = work.back();
    work.pop_back();
    for (int ch : {t.child0[c], t.child1[c]})
      if (ch >= 0 && ch < n && !seen[ch]) {
        seen[ch] = 1;
        work.push_back(ch);
      }
  }
  for (int i = 0; i < n; ++i)
    if (!seen[i])
      rep.issues.push_back({"UnreachableClass", "class " + t.class_names[i] + " unreachable from root"});
  return rep;
}

/// The constant tree t_w of a lasso: every branch reads w. Classes are the
/// lasso positions; both children advance the position.
inline RegularTree constant_tree(const LassoWord& w, const Alphabet& sigma) {
  RegularTree t;
  t.labels_over = sigma;
  for (int i = 0; i < w.total_length(); ++i) {
    t.class_names.push_back("p" + std::to_string(i));
    t.label.push_back(w.letter_at(i));
    t.child0.push_back(w.next_position(i));
    t.child1.push_back(w.next_position(i));
  }
  t.root = 0;
  return t;
}

}  // namespace qualomega
