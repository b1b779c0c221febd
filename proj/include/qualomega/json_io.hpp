#pragma once

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qualomega/markov.hpp"
#include "qualomega/regular_tree.hpp"
#include "qualomega/transforms.hpp"
#include "qualomega/tree_automaton.hpp"
#include "qualomega/tree_semantics.hpp"
#include "qualomega/word_automaton.hpp"

namespace qualomega {

// Document formats. All probabilities are exact "num/den" strings; omitted
// transitions are zero. ordered_json keeps a stable field order so outputs
// are byte-reproducible.
using Json = nlohmann::ordered_json;

namespace io_detail {

inline Json load(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw Error("Parse", what + ": " + e.what());
  }
}

inline const Json& field(const Json& j, const std::string& key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) throw Error("Parse", what + ": missing field '" + key + "'");
  return *it;
}

inline std::vector<std::string> string_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error("Parse", what + " must be a list of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw Error("Parse", what + " must be a list of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline int resolve(const std::vector<std::string>& names, const std::string& name,
                   const std::string& what) {
  for (int i = 0; i < static_cast<int>(names.size()); ++i)
    if (names[i] == name) return i;
  throw Error("Parse", what + ": unknown name '" + name + "'");
}

}  // namespace io_detail

// --- acceptance --------------------------------------------------------------

inline Json acceptance_to_json(const AcceptanceCondition& acc,
                               const std::vector<std::string>& names) {
  Json j;
  j["kind"] = to_string(acc.kind());
  auto name_list = [&](const std::set<int>& s) {
    Json arr = Json::array();
    for (int q : s) arr.push_back(names.at(q));
    return arr;
  };
  switch (acc.kind()) {
    case AcceptanceKind::Buchi: j["accepting"] = name_list(acc.state_set()); break;
    case AcceptanceKind::CoBuchi: j["rejecting"] = name_list(acc.state_set()); break;
    case AcceptanceKind::Rabin: {
      Json pairs = Json::array();
      for (const auto& p : acc.pairs()) {
        Json pj;
        pj["alpha"] = name_list(p.alpha);
        pj["beta"] = name_list(p.beta);
        pairs.push_back(pj);
      }
      j["pairs"] = pairs;
      break;
    }
    case AcceptanceKind::Parity: {
      Json prio;
      for (const auto& [q, v] : acc.priority()) prio[names.at(q)] = v;
      j["priority"] = prio;
      break;
    }
  }
  return j;
}

inline AcceptanceCondition acceptance_from_json(const Json& j,
                                                const std::vector<std::string>& names) {
  using io_detail::field;
  using io_detail::resolve;
  const std::string kind = field(j, "kind", "acceptance").get<std::string>();
  auto name_set = [&](const Json& arr) {
    std::set<int> s;
    for (const auto& e : io_detail::string_list(arr, "acceptance set"))
      s.insert(resolve(names, e, "acceptance"));
    return s;
  };
  if (kind == "buchi") return AcceptanceCondition::buchi(name_set(field(j, "accepting", "buchi")));
  if (kind == "cobuchi")
    return AcceptanceCondition::cobuchi(name_set(field(j, "rejecting", "cobuchi")));
  if (kind == "rabin") {
    std::vector<RabinPair> pairs;
    for (const auto& pj : field(j, "pairs", "rabin"))
      pairs.push_back({name_set(io_detail::field(pj, "alpha", "rabin pair")),
                       name_set(io_detail::field(pj, "beta", "rabin pair"))});
    return AcceptanceCondition::rabin(std::move(pairs));
  }
  if (kind == "parity") {
    std::map<int, int> prio;
    for (const auto& [name, v] : field(j, "priority", "parity").items())
      prio[resolve(names, name, "parity")] = v.get<int>();
    return AcceptanceCondition::parity(std::move(prio));
  }
  throw Error("Parse", "unknown acceptance kind '" + kind + "'");
}

// --- word automata -------------------------------------------------------------

inline Json automaton_to_json(const ProbWordAutomaton& a) {
  Json j;
  j["states"] = a.states;
  j["alphabet"] = a.alphabet.letters();
  j["initial"] = a.states.at(a.initial);
  j["acceptance"] = acceptance_to_json(a.acceptance, a.states);
  Json delta = Json::array();
  for (int q = 0; q < a.state_count(); ++q)
    for (int l = 0; l < a.alphabet.size(); ++l)
      for (const auto& [t, p] : a.row(q, l)) {
        Json e;
        e["from"] = a.states[q];
        e["letter"] = a.alphabet.letter(l);
        e["to"] = a.states[t];
        e["prob"] = format_rational(p);
        delta.push_back(e);
      }
  j["delta"] = delta;
  return j;
}

inline ProbWordAutomaton automaton_from_json(const Json& j) {
  using io_detail::field;
  ProbWordAutomaton a;
  a.states = io_detail::string_list(field(j, "states", "automaton"), "states");
  a.alphabet = Alphabet(io_detail::string_list(field(j, "alphabet", "automaton"), "alphabet"));
  a.initial = io_detail::resolve(a.states, field(j, "initial", "automaton").get<std::string>(),
                                 "initial state");
  a.acceptance = acceptance_from_json(field(j, "acceptance", "automaton"), a.states);
  a.delta.assign(a.states.size(), std::vector<DistRow>(a.alphabet.size()));
  for (const auto& e : field(j, "delta", "automaton")) {
    const int q = io_detail::resolve(a.states, field(e, "from", "delta").get<std::string>(), "delta");
    const int l = a.alphabet.require(field(e, "letter", "delta").get<std::string>());
    const int t = io_detail::resolve(a.states, field(e, "to", "delta").get<std::string>(), "delta");
    add_to_row(a.delta[q][l], t, parse_rational(field(e, "prob", "delta").get<std::string>()));
  }
  return a;
}

// --- chains ---------------------------------------------------------------------

inline Json chain_to_json(const FiniteChain& c, const ChainObjective* o = nullptr) {
  Json j;
  j["states"] = c.state_names;
  j["initial"] = c.state_names.at(c.initial);
  Json delta = Json::array();
  for (int s = 0; s < c.state_count(); ++s)
    for (const auto& [t, p] : c.delta[s]) {
      Json e;
      e["from"] = c.state_names[s];
      e["to"] = c.state_names[t];
      e["prob"] = format_rational(p);
      delta.push_back(e);
    }
  j["delta"] = delta;
  j["payloads"] = c.payload_names;
  Json labels;
  for (int s = 0; s < c.state_count(); ++s)
    labels[c.state_names[s]] = c.payload_names.at(c.label[s]);
  j["labels"] = labels;
  if (o) {
    Json oj;
    oj["acceptance"] = acceptance_to_json(o->condition, c.payload_names);
    Json silent = Json::array();
    for (int p = 0; p < static_cast<int>(o->silent.size()); ++p)
      if (o->silent[p]) silent.push_back(c.payload_names.at(p));
    oj["silent"] = silent;
    j["objective"] = oj;
  }
  return j;
}

struct ChainDocument {
  FiniteChain chain;
  std::optional<ChainObjective> objective;
};

inline ChainDocument chain_from_json(const Json& j) {
  using io_detail::field;
  ChainDocument doc;
  FiniteChain& c = doc.chain;
  c.state_names = io_detail::string_list(field(j, "states", "chain"), "states");
  c.initial = io_detail::resolve(c.state_names, field(j, "initial", "chain").get<std::string>(),
                                 "initial state");
  c.delta.resize(c.state_names.size());
  for (const auto& e : field(j, "delta", "chain")) {
    const int s =
        io_detail::resolve(c.state_names, field(e, "from", "delta").get<std::string>(), "delta");
    const int t =
        io_detail::resolve(c.state_names, field(e, "to", "delta").get<std::string>(), "delta");
    add_to_row(c.delta[s], t, parse_rational(field(e, "prob", "delta").get<std::string>()));
  }
  if (j.contains("payloads"))
    c.payload_names = io_detail::string_list(j["payloads"], "payloads");
  const auto& labels = field(j, "labels", "chain");
  c.label.assign(c.state_names.size(), -1);
  for (const auto& [state, payload] : labels.items()) {
    const int s = io_detail::resolve(c.state_names, state, "labels");
    const std::string p = payload.get<std::string>();
    auto it = std::find(c.payload_names.begin(), c.payload_names.end(), p);
    if (it == c.payload_names.end()) {
      if (j.contains("payloads")) throw Error("Parse", "label '" + p + "' not in payloads");
      c.payload_names.push_back(p);
      it = c.payload_names.end() - 1;
    }
    c.label[s] = static_cast<int>(it - c.payload_names.begin());
  }
  for (int s = 0; s < c.state_count(); ++s)
    if (c.label[s] < 0) throw Error("Parse", "state '" + c.state_names[s] + "' has no label");
  if (j.contains("objective")) {
    const auto& oj = j["objective"];
    ChainObjective o;
    o.condition = acceptance_from_json(field(oj, "acceptance", "objective"), c.payload_names);
    o.silent.assign(c.payload_names.size(), 0);
    if (oj.contains("silent"))
      for (const auto& name : io_detail::string_list(oj["silent"], "silent"))
        o.silent[c.payload_index(name)] = 1;
    doc.objective = std::move(o);
  }
  return doc;
}

// --- regular trees -----------------------------------------------------------

inline Json tree_to_json(const RegularTree& t) {
  Json j;
  j["classes"] = t.class_names;
  j["alphabet"] = t.labels_over.letters();
  j["root"] = t.class_names.at(t.root);
  Json labels, c0, c1;
  for (int i = 0; i < t.class_count(); ++i) {
    labels[t.class_names[i]] = t.labels_over.letter(t.label[i]);
    c0[t.class_names[i]] = t.class_names.at(t.child0[i]);
    c1[t.class_names[i]] = t.class_names.at(t.child1[i]);
  }
  j["labels"] = labels;
  j["child0"] = c0;
  j["child1"] = c1;
  return j;
}

inline RegularTree tree_from_json(const Json& j) {
  using io_detail::field;
  RegularTree t;
  t.class_names = io_detail::string_list(field(j, "classes", "tree"), "classes");
  t.labels_over = Alphabet(io_detail::string_list(field(j, "alphabet", "tree"), "alphabet"));
  t.root = io_detail::resolve(t.class_names, field(j, "root", "tree").get<std::string>(), "root");
  const int n = t.class_count();
  t.label.assign(n, -1);
  t.child0.assign(n, -1);
  t.child1.assign(n, -1);
  for (const auto& [cls, letter] : field(j, "labels", "tree").items())
    t.label[io_detail::resolve(t.class_names, cls, "labels")] =
        t.labels_over.require(letter.get<std::string>());
  for (const auto& [cls, target] : field(j, "child0", "tree").items())
    t.child0[io_detail::resolve(t.class_names, cls, "child0")] =
        io_detail::resolve(t.class_names, target.get<std::string>(), "child0");
  for (const auto& [cls, target] : field(j, "child1", "tree").items())
    t.child1[io_detail::resolve(t.class_names, cls, "child1")] =
        io_detail::resolve(t.class_names, target.get<std::string>(), "child1");
  return t;
}

// --- tree automata --------------------------------------------------------------

inline Json tree_automaton_to_json(const TreeAutomaton& a) {
  Json j;
  j["states"] = a.states;
  j["alphabet"] = a.alphabet.letters();
  j["initial"] = a.states.at(a.initial);
  j["acceptance"] = acceptance_to_json(a.acceptance, a.states);
  Json delta = Json::array();
  for (const auto& t : a.delta) {
    Json e;
    e["from"] = a.states.at(t.from);
    e["letter"] = a.alphabet.letter(t.letter);
    e["left"] = a.states.at(t.left);
    e["right"] = a.states.at(t.right);
    delta.push_back(e);
  }
  j["delta"] = delta;
  return j;
}

inline TreeAutomaton tree_automaton_from_json(const Json& j) {
  using io_detail::field;
  TreeAutomaton a;
  a.states = io_detail::string_list(field(j, "states", "tree automaton"), "states");
  a.alphabet = Alphabet(io_detail::string_list(field(j, "alphabet", "tree automaton"), "alphabet"));
  a.initial = io_detail::resolve(a.states, field(j, "initial", "tree automaton").get<std::string>(),
                                 "initial state");
  a.acceptance = acceptance_from_json(field(j, "acceptance", "tree automaton"), a.states);
  for (const auto& e : field(j, "delta", "tree automaton")) {
    TreeTransition t;
    t.from = io_detail::resolve(a.states, field(e, "from", "delta").get<std::string>(), "delta");
    t.letter = a.alphabet.require(field(e, "letter", "delta").get<std::string>());
    t.left = io_detail::resolve(a.states, field(e, "left", "delta").get<std::string>(), "delta");
    t.right = io_detail::resolve(a.states, field(e, "right", "delta").get<std::string>(), "delta");
    a.delta.push_back(t);
  }
  return a;
}

inline Json prob_tree_automaton_to_json(const ProbTreeAutomaton& a) {
  Json j;
  j["states"] = a.states;
  j["alphabet"] = a.alphabet.letters();
  j["initial"] = a.states.at(a.initial);
  j["acceptance"] = acceptance_to_json(a.acceptance, a.states);
  Json delta = Json::array();
  for (int q = 0; q < a.state_count(); ++q)
    for (int l = 0; l < a.alphabet.size(); ++l)
      for (const auto& [pair, p] : a.row(q, l)) {
        Json e;
        e["from"] = a.states[q];
        e["letter"] = a.alphabet.letter(l);
        e["left"] = a.states.at(pair.first);
        e["right"] = a.states.at(pair.second);
        e["prob"] = format_rational(p);
        delta.push_back(e);
      }
  j["delta"] = delta;
  return j;
}

inline ProbTreeAutomaton prob_tree_automaton_from_json(const Json& j) {
  using io_detail::field;
  ProbTreeAutomaton a;
  a.states = io_detail::string_list(field(j, "states", "tree automaton"), "states");
  a.alphabet = Alphabet(io_detail::string_list(field(j, "alphabet", "tree automaton"), "alphabet"));
  a.initial = io_detail::resolve(a.states, field(j, "initial", "tree automaton").get<std::string>(),
                                 "initial state");
  a.acceptance = acceptance_from_json(field(j, "acceptance", "tree automaton"), a.states);
  a.delta.assign(a.states.size(), std::vector<ProbTreeAutomaton::PairRow>(a.alphabet.size()));
  for (const auto& e : field(j, "delta", "tree automaton")) {
    const int q = io_detail::resolve(a.states, field(e, "from", "delta").get<std::string>(), "delta");
    const int l = a.alphabet.require(field(e, "letter", "delta").get<std::string>());
    const int left =
        io_detail::resolve(a.states, field(e, "left", "delta").get<std::string>(), "delta");
    const int right =
        io_detail::resolve(a.states, field(e, "right", "delta").get<std::string>(), "delta");
    add_to_pair_row(a.delta[q][l], left, right,
                    parse_rational(field(e, "prob", "delta").get<std::string>()));
  }
  return a;
}

/// "prob" on delta rows distinguishes the probabilistic document.
inline bool is_probabilistic_tree_doc(const Json& j) {
  const auto it = j.find("delta");
  if (it == j.end() || !it->is_array() || it->empty()) return false;
  return it->front().contains("prob");
}

// --- runs ---------------------------------------------------------------------

inline Json run_to_json(const RegularRun& r, const RegularTree& base) {
  Json j = tree_to_json(r.run);
  Json bases;
  for (int c = 0; c < r.run.class_count(); ++c)
    bases[r.run.class_names[c]] = base.class_names.at(r.base_class[c]);
  j["base"] = bases;
  return j;
}

inline RegularRun run_from_json(const Json& j, const RegularTree& base) {
  RegularRun r;
  r.run = tree_from_json(j);
  r.base_class.assign(r.run.class_count(), -1);
  for (const auto& [cls, target] : io_detail::field(j, "base", "run").items())
    r.base_class[io_detail::resolve(r.run.class_names, cls, "base")] =
        io_detail::resolve(base.class_names, target.get<std::string>(), "base");
  for (int c = 0; c < r.run.class_count(); ++c)
    if (r.base_class[c] < 0) throw Error("Parse", "run class without a base class");
  return r;
}

// --- reports --------------------------------------------------------------------

inline Json report_to_json(const TransformReport& r) {
  Json j;
  j["kind"] = r.kind;
  j["input_class"] = to_string(r.input_class);
  j["output_class"] = to_string(r.output_class);
  j["fresh_states"] = r.fresh_states;
  if (r.padding_depth > 0) j["padding_depth"] = r.padding_depth;
  Json map = Json::array();
  for (const auto& [from, to] : r.state_map) {
    Json e;
    e["old"] = from;
    e["new"] = to;
    map.push_back(e);
  }
  j["state_map"] = map;
  return j;
}

// --- files ----------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("Io", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("Io", "cannot write '" + path + "'");
  out << content;
}

inline Json read_json_file(const std::string& path) {
  return io_detail::load(read_file(path), path);
}

inline void write_json_file(const std::string& path, const Json& j) {
  write_file(path, j.dump(2) + "\n");
}

}  // namespace qualomega
