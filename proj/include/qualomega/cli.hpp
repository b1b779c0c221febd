#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qualomega/corpus.hpp"
#include "qualomega/json_io.hpp"
#include "qualomega/mso_encode.hpp"
#include "qualomega/transforms.hpp"
#include "qualomega/tree_semantics.hpp"
#include "qualomega/word_value.hpp"

namespace qualomega::cli {

// Exit codes: 0 success, 1 a checked property or membership is false,
// 2 input/usage error.
constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;

namespace cli_detail {

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("QUALOMEGA_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error("BadArgument", "QUALOMEGA_SEED is not a 64-bit integer");
    }
  }
  return 1;
}

inline ProbWordAutomaton load_word_automaton(const std::string& path) {
  return automaton_from_json(read_json_file(path));
}

inline void require_valid(const ProbWordAutomaton& a, const std::string& path) {
  const auto rep = validate(a);
  if (!rep.ok()) throw Error("InvalidAutomaton", path + ":\n" + rep.summary());
}

struct PipelineResult {
  ProbWordAutomaton final_automaton;
  int padding_depth = 1;
  Json report;
  bool preserved = true;
};

/// Lemma 5 -> Lemma 6 -> Theorem 8, with per-stage reports and optional
/// value-preservation spot checks on caller-supplied lassos.
inline PipelineResult pipeline_word(const ProbWordAutomaton& a,
                                    const std::vector<std::string>& lasso_texts,
                                    const std::optional<std::string>& out_dir,
                                    std::ostream& out) {
  const auto cls = classify(a);
  if (cls == AutomatonClass::General)
    throw Error("NotSemiSimple", "pipeline input must be semi-simple, simple or binary branching");
  const auto kind = a.acceptance.kind();
  if (kind != AcceptanceKind::Rabin && kind != AcceptanceKind::Parity)
    throw Error("UnsupportedAcceptance", "pipeline input must use Rabin or parity acceptance");

  auto write_stage = [&](const std::string& name, const Json& doc) {
    if (!out_dir) return;
    write_json_file(*out_dir + "/" + name, doc);
  };

  PipelineResult res;
  Json stages = Json::array();

  ProbWordAutomaton s1 = a;
  int depth = 1;
  if (kind == AcceptanceKind::Rabin) {
    auto [t1, r1] = semisimple_to_simple(a);
    s1 = std::move(t1);
    depth = r1.padding_depth;
    stages.push_back(report_to_json(r1));
    write_stage("stage1_simple.json", automaton_to_json(s1));
    out << "stage 1 semisimple-to-simple: " << to_string(r1.output_class) << ", padding depth "
        << depth << "\n";
  } else {
    if (cls == AutomatonClass::SemiSimple)
      throw Error("UnsupportedAcceptance",
                  "a semi-simple parity automaton cannot enter the pipeline (stage 1 is Rabin-only)");
    Json skip;
    skip["kind"] = "semisimple-to-simple";
    skip["skipped"] = "parity input already simple or binary branching";
    stages.push_back(skip);
    out << "stage 1 semisimple-to-simple: skipped (parity input)\n";
  }

  auto [s2, r2] = simple_to_binary(s1);
  stages.push_back(report_to_json(r2));
  write_stage("stage2_binary.json", automaton_to_json(s2));
  out << "stage 2 simple-to-binary: " << to_string(r2.output_class) << "\n";

  ProbWordAutomaton s3 = s2;
  if (s2.acceptance.kind() == AcceptanceKind::Rabin) {
    auto [t3, r3] = rabin_to_parity_binary(s2);
    s3 = std::move(t3);
    stages.push_back(report_to_json(r3));
    write_stage("stage3_parity.json", automaton_to_json(s3));
    out << "stage 3 rabin-to-parity: " << to_string(r3.output_class) << ", "
        << s3.state_count() << " states\n";
  } else {
    Json skip;
    skip["kind"] = "rabin-to-parity";
    skip["skipped"] = "input already parity";
    stages.push_back(skip);
    out << "stage 3 rabin-to-parity: skipped (already parity)\n";
  }

  Json checks = Json::array();
  const int pad_letter = depth > 1 ? s3.alphabet.require("#") : -1;
  for (const auto& text : lasso_texts) {
    const auto w = parse_lasso(text, a.alphabet);
    const auto padded = depth > 1 ? pad_lasso(w, depth, pad_letter) : w;
    const auto v0 = value(a, w).value;
    const auto v3 = value(s3, padded).value;
    Json c;
    c["lasso"] = text;
    c["input_value"] = format_rational(v0);
    c["final_value"] = format_rational(v3);
    c["preserved"] = v0 == v3;
    if (v0 != v3) res.preserved = false;
    checks.push_back(c);
    out << "spot check " << text << ": " << format_rational(v0) << " -> "
        << format_rational(v3) << (v0 == v3 ? " (preserved)" : " (NOT preserved)") << "\n";
  }

  res.final_automaton = std::move(s3);
  res.padding_depth = depth;
  res.report["stages"] = stages;
  res.report["spot_checks"] = checks;
  res.report["final_class"] = to_string(classify(res.final_automaton));
  res.report["final_acceptance"] = to_string(res.final_automaton.acceptance.kind());
  return res;
}

}  // namespace cli_detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact-arithmetic toolkit for probabilistic omega-word and tree automata"};
  app.require_subcommand(1);
  int exit_code = kOk;

  // validate ------------------------------------------------------------------
  std::string val_path;
  auto* cmd_validate = app.add_subcommand("validate", "check the invariants of an automaton document");
  cmd_validate->add_option("-a,--automaton", val_path, "automaton JSON file")->required();
  cmd_validate->callback([&] {
    const auto a = cli_detail::load_word_automaton(val_path);
    const auto rep = validate(a);
    if (rep.ok()) {
      out << "ok\n";
    } else {
      out << rep.summary();
      exit_code = kFalse;
    }
  });

  // classify ------------------------------------------------------------------
  std::string cls_path;
  auto* cmd_classify = app.add_subcommand("classify", "report the Def-4 structural class");
  cmd_classify->add_option("-a,--automaton", cls_path, "automaton JSON file")->required();
  cmd_classify->callback([&] {
    const auto a = cli_detail::load_word_automaton(cls_path);
    cli_detail::require_valid(a, cls_path);
    out << to_string(classify(a)) << "\n";
  });

  // value ----------------------------------------------------------------------
  std::string value_path, value_lasso, value_dump;
  auto* cmd_value = app.add_subcommand("value", "exact value A(w) on an ultimately periodic word");
  cmd_value->add_option("-a,--automaton", value_path, "automaton JSON file")->required();
  cmd_value->add_option("-w,--word", value_lasso, "lasso word 'u;v'")->required();
  cmd_value->add_option("--dump-chain", value_dump, "write the witness product chain to this file");
  cmd_value->callback([&] {
    const auto a = cli_detail::load_word_automaton(value_path);
    cli_detail::require_valid(a, value_path);
    const auto w = parse_lasso(value_lasso, a.alphabet);
    const auto v = value(a, w);
    out << format_rational(v.value) << "\n";
    if (!value_dump.empty()) {
      const auto o = lifted_objective(a);
      write_json_file(value_dump, chain_to_json(v.witness, &o));
    }
  });

  // member ---------------------------------------------------------------------
  std::string mem_path, mem_lasso, mem_semantics = "as";
  auto* cmd_member = app.add_subcommand("member", "almost-sure / probable membership of a lasso word");
  cmd_member->add_option("-a,--automaton", mem_path, "automaton JSON file")->required();
  cmd_member->add_option("-w,--word", mem_lasso, "lasso word 'u;v'")->required();
  cmd_member->add_option("--semantics", mem_semantics, "as (almost-sure) or prob (probable)")
      ->check(CLI::IsMember({"as", "prob"}));
  cmd_member->callback([&] {
    const auto a = cli_detail::load_word_automaton(mem_path);
    cli_detail::require_valid(a, mem_path);
    const auto w = parse_lasso(mem_lasso, a.alphabet);
    const bool member = mem_semantics == "as" ? member_as(a, w) : member_prob(a, w);
    out << (member ? "true" : "false") << "\n";
    if (!member) exit_code = kFalse;
  });

  // transform ------------------------------------------------------------------
  std::string tr_kind, tr_in, tr_out, tr_report;
  auto* cmd_transform = app.add_subcommand("transform", "apply one construction");
  cmd_transform->add_option("--kind", tr_kind, "construction to apply")
      ->required()
      ->check(CLI::IsMember({"semisimple-to-simple", "simple-to-binary", "rabin-to-parity",
                             "word-to-tree-copy", "word-to-tree-switch", "word-to-universal-tree"}));
  cmd_transform->add_option("-a,--automaton", tr_in, "input automaton JSON file")->required();
  cmd_transform->add_option("-o,--output", tr_out, "output file (stdout when omitted)");
  cmd_transform->add_option("--report", tr_report, "write the transform report to this file");
  cmd_transform->callback([&] {
    const auto a = cli_detail::load_word_automaton(tr_in);
    cli_detail::require_valid(a, tr_in);
    Json doc;
    Json report;
    if (tr_kind == "semisimple-to-simple") {
      const auto [b, rep] = semisimple_to_simple(a);
      doc = automaton_to_json(b);
      report = report_to_json(rep);
    } else if (tr_kind == "simple-to-binary") {
      const auto [b, rep] = simple_to_binary(a);
      doc = automaton_to_json(b);
      report = report_to_json(rep);
    } else if (tr_kind == "rabin-to-parity") {
      const auto [b, rep] = rabin_to_parity_binary(a);
      doc = automaton_to_json(b);
      report = report_to_json(rep);
    } else if (tr_kind == "word-to-tree-copy") {
      doc = prob_tree_automaton_to_json(word_to_tree_copy(a));
    } else if (tr_kind == "word-to-tree-switch") {
      doc = prob_tree_automaton_to_json(word_to_tree_switch(a));
    } else {
      doc = tree_automaton_to_json(word_to_universal_tree(a));
    }
    if (tr_out.empty())
      out << doc.dump(2) << "\n";
    else
      write_json_file(tr_out, doc);
    if (!tr_report.empty()) write_json_file(tr_report, report);
  });

  // tree -----------------------------------------------------------------------
  auto* cmd_tree = app.add_subcommand("tree", "qualitative tree-automaton checks");
  cmd_tree->require_subcommand(1);

  std::string qas_aut, qas_tree;
  auto* cmd_qas = cmd_tree->add_subcommand("qaslang", "Prop-4 membership in qaslang via the acceptance chain");
  cmd_qas->add_option("-a,--automaton", qas_aut, "probabilistic tree automaton JSON file")->required();
  cmd_qas->add_option("-t,--tree", qas_tree, "regular tree JSON file")->required();
  cmd_qas->callback([&] {
    const auto a = prob_tree_automaton_from_json(read_json_file(qas_aut));
    const auto t = tree_from_json(read_json_file(qas_tree));
    const bool member = qaslang_member(a, t);
    out << (member ? "true" : "false") << "\n";
    if (!member) exit_code = kFalse;
  });

  std::string cr_aut, cr_tree, cr_run;
  auto* cmd_check_run = cmd_tree->add_subcommand("check-run", "validate a regular run and compute its branch measure");
  cmd_check_run->add_option("-a,--automaton", cr_aut, "tree automaton JSON file (plain or probabilistic)")
      ->required();
  cmd_check_run->add_option("-t,--tree", cr_tree, "regular tree JSON file")->required();
  cmd_check_run->add_option("-r,--run", cr_run, "regular run JSON file")->required();
  cmd_check_run->callback([&] {
    const auto tree_doc = read_json_file(cr_aut);
    const auto t = tree_from_json(read_json_file(cr_tree));
    AcceptanceCondition acc;
    RegularRun run;
    ValidationReport rep;
    if (is_probabilistic_tree_doc(tree_doc)) {
      const auto a = prob_tree_automaton_from_json(tree_doc);
      run = run_from_json(read_json_file(cr_run), t);
      rep = validate_run(run, a, t);
      acc = a.acceptance;
    } else {
      const auto a = tree_automaton_from_json(tree_doc);
      run = run_from_json(read_json_file(cr_run), t);
      rep = validate_run(run, a, t);
      acc = a.acceptance;
    }
    if (!rep.ok()) throw Error("InvalidRun", rep.summary());
    const auto rc = qualitative_run_check(run, acc);
    out << "branch measure " << format_rational(rc.branch_measure) << "\n";
    out << (rc.qualitatively_accepting ? "qualitatively accepting" : "not qualitatively accepting")
        << "\n";
    if (!rc.qualitatively_accepting) exit_code = kFalse;
  });

  std::string en_aut, en_tree;
  int en_bound = 64;
  std::size_t en_max = 10000;
  bool en_check = false;
  auto* cmd_enum = cmd_tree->add_subcommand("enumerate-runs", "enumerate regular runs up to a class bound");
  cmd_enum->add_option("-a,--automaton", en_aut, "plain tree automaton JSON file")->required();
  cmd_enum->add_option("-t,--tree", en_tree, "regular tree JSON file")->required();
  cmd_enum->add_option("--bound", en_bound, "maximum product classes per run (default 64)");
  cmd_enum->add_option("--max-runs", en_max, "stop after this many runs (default 10000)");
  cmd_enum->add_flag("--check", en_check, "evaluate each run qualitatively; report counterexamples");
  cmd_enum->callback([&] {
    const auto a = tree_automaton_from_json(read_json_file(en_aut));
    const auto t = tree_from_json(read_json_file(en_tree));
    const auto runs = enumerate_regular_runs(a, t, en_bound, en_max);
    out << runs.runs.size() << (runs.complete ? "" : "+") << " runs with <= " << en_bound
        << " classes\n";
    if (en_check) {
      int counterexamples = 0;
      for (std::size_t i = 0; i < runs.runs.size(); ++i) {
        const auto rc = qualitative_run_check(runs.runs[i], a.acceptance);
        if (!rc.qualitatively_accepting) {
          ++counterexamples;
          out << "counterexample run " << i << ": branch measure "
              << format_rational(rc.branch_measure) << "\n";
        }
      }
      if (counterexamples == 0) {
        out << "no counterexample up to bound " << en_bound
            << (runs.complete ? "" : " (enumeration truncated)") << "\n";
      } else {
        exit_code = kFalse;
      }
    }
  });

  // chain -----------------------------------------------------------------------
  auto* cmd_chain = app.add_subcommand("chain", "finite Markov chain analysis");
  cmd_chain->require_subcommand(1);
  std::string ch_path;
  auto* cmd_solve = cmd_chain->add_subcommand("solve", "BSCC table, absorption probabilities, objective value");
  cmd_solve->add_option("-c,--chain", ch_path, "chain JSON file")->required();
  cmd_solve->callback([&] {
    const auto doc = chain_from_json(read_json_file(ch_path));
    const auto rep = validate(doc.chain);
    if (!rep.ok()) throw Error("InvalidChain", rep.summary());
    const auto dec = bscc_decompose(doc.chain);
    out << "transient states: " << dec.transient.size() << "\n";
    for (std::size_t b = 0; b < dec.bsccs.size(); ++b) {
      out << "bscc " << b << " reach " << format_rational(dec.reach_prob[b]) << " {";
      for (std::size_t i = 0; i < dec.bsccs[b].size(); ++i)
        out << (i ? " " : "") << doc.chain.state_names[dec.bsccs[b][i]];
      out << "}\n";
    }
    if (doc.objective) {
      const auto v = objective_value(doc.chain, *doc.objective, dec);
      out << "objective value " << format_rational(v) << "\n";
    }
  });

  // simulate ---------------------------------------------------------------------
  std::string sim_path;
  int sim_steps = 128;
  std::uint64_t sim_seed = 0;
  bool sim_seed_set = false;
  auto* cmd_sim = app.add_subcommand("simulate", "deterministic random walk with an inf-set estimate");
  cmd_sim->add_option("-c,--chain", sim_path, "chain JSON file")->required();
  cmd_sim->add_option("--steps", sim_steps, "number of transitions (default 128)");
  cmd_sim->add_option("--seed", sim_seed, "64-bit seed (default QUALOMEGA_SEED or 1)")
      ->each([&](const std::string&) { sim_seed_set = true; });
  cmd_sim->callback([&] {
    const auto doc = chain_from_json(read_json_file(sim_path));
    const auto rep = validate(doc.chain);
    if (!rep.ok()) throw Error("InvalidChain", rep.summary());
    const ChainObjective obj =
        doc.objective ? *doc.objective
                      : ChainObjective{AcceptanceCondition::buchi({}), {}};
    const auto run = sample_run(doc.chain, obj, sim_steps,
                                sim_seed_set ? sim_seed : cli_detail::default_seed());
    out << "trace:";
    for (int s : run.visited) out << " " << doc.chain.state_names[s];
    out << "\ninf-set estimate:";
    for (int p : run.infset_estimate) out << " " << doc.chain.payload_names[p];
    out << "\n";
    if (doc.objective && !run.infset_estimate.empty())
      out << "estimated verdict: "
          << (doc.objective->condition.accepts_infset(run.infset_estimate) ? "accepting"
                                                                           : "rejecting")
          << "\n";
  });

  // emit-mso -----------------------------------------------------------------------
  std::string mso_path, mso_out;
  bool mso_sentence = false, mso_stats = false;
  auto* cmd_mso = app.add_subcommand("emit-mso", "emit phi_A (or the emptiness sentence) for a parity tree automaton");
  cmd_mso->add_option("-a,--automaton", mso_path, "plain parity tree automaton JSON file")->required();
  cmd_mso->add_flag("--sentence", mso_sentence, "emit the closed sentence forall X-vec . not phi_A");
  cmd_mso->add_flag("--stats", mso_stats, "print atom counts instead of nothing extra");
  cmd_mso->add_option("-o,--output", mso_out, "output file (stdout when omitted)");
  cmd_mso->callback([&] {
    const auto a = tree_automaton_from_json(read_json_file(mso_path));
    FormulaPtr f;
    if (mso_sentence) {
      f = emptiness_sentence(a);
    } else {
      f = phi_A(a).formula;
    }
    const auto text = print_formula(f);
    if (mso_out.empty())
      out << text << "\n";
    else
      write_file(mso_out, text + "\n");
    if (mso_stats) {
      out << "atoms " << atom_count(f) << "\n";
      out << "path-measure quantifiers " << count_kind(f, FormulaKind::ForallMeasurePath) << "\n";
      out << "free variables " << free_variables(f).size() << "\n";
    }
  });

  // corpus ---------------------------------------------------------------------------
  CorpusSpec corpus_spec;
  bool corpus_seed_set = false;
  std::string corpus_dir;
  auto* cmd_corpus = app.add_subcommand("corpus", "generate a reproducible random instance corpus");
  cmd_corpus->add_option("--seed", corpus_spec.seed, "64-bit seed (default QUALOMEGA_SEED or 1)")
      ->each([&](const std::string&) { corpus_seed_set = true; });
  cmd_corpus->add_option("--semisimple", corpus_spec.semisimple, "number of semi-simple automata");
  cmd_corpus->add_option("--simple", corpus_spec.simple, "number of simple automata");
  cmd_corpus->add_option("--binary", corpus_spec.binary, "number of binary-branching automata");
  cmd_corpus->add_option("--trees", corpus_spec.trees, "number of regular trees");
  cmd_corpus->add_option("--lassos", corpus_spec.lassos_per_automaton, "lassos per automaton");
  cmd_corpus->add_option("--max-states", corpus_spec.max_states, "state bound (default 4)");
  cmd_corpus->add_option("--max-letters", corpus_spec.max_letters, "alphabet bound (default 2)");
  cmd_corpus->add_option("--out", corpus_dir, "output directory")->required();
  cmd_corpus->callback([&] {
    if (!corpus_seed_set) corpus_spec.seed = cli_detail::default_seed();
    std::filesystem::create_directories(corpus_dir);
    SplitMix64 rng(corpus_spec.seed);
    Json manifest;
    manifest["seed"] = corpus_spec.seed;
    Json files = Json::array();
    auto emit = [&](const std::string& stem, int count, auto&& gen) {
      for (int i = 0; i < count; ++i) {
        const auto a = gen();
        const std::string name = stem + "_" + std::to_string(i) + ".json";
        write_json_file(corpus_dir + "/" + name, automaton_to_json(a));
        Json entry;
        entry["file"] = name;
        entry["class"] = stem;
        if (corpus_spec.lassos_per_automaton > 0) {
          Json ls = Json::array();
          for (int k = 0; k < corpus_spec.lassos_per_automaton; ++k)
            ls.push_back(format_lasso(random_lasso(rng, a.alphabet, corpus_spec.max_lasso_length),
                                      a.alphabet));
          entry["lassos"] = ls;
        }
        files.push_back(entry);
      }
    };
    auto pick_kind = [&]() {
      return corpus_spec.kinds[rng.below(corpus_spec.kinds.size())];
    };
    emit("semisimple", corpus_spec.semisimple,
         [&] { return random_semisimple(rng, corpus_spec, AcceptanceKind::Rabin); });
    emit("simple", corpus_spec.simple, [&] { return random_simple(rng, corpus_spec, pick_kind()); });
    emit("binary", corpus_spec.binary, [&] { return random_binary(rng, corpus_spec, pick_kind()); });
    for (int i = 0; i < corpus_spec.trees; ++i) {
      const auto t = random_regular_tree(rng, Alphabet(corpus_detail::letter_names(
                                                  1 + static_cast<int>(rng.below(corpus_spec.max_letters)))),
                                         corpus_spec.max_tree_classes);
      const std::string name = "tree_" + std::to_string(i) + ".json";
      write_json_file(corpus_dir + "/" + name, tree_to_json(t));
      Json entry;
      entry["file"] = name;
      entry["class"] = "tree";
      files.push_back(entry);
    }
    manifest["files"] = files;
    write_json_file(corpus_dir + "/manifest.json", manifest);
    out << "wrote " << files.size() << " instances to " << corpus_dir << "\n";
  });

  // pipeline --------------------------------------------------------------------------
  auto* cmd_pipeline = app.add_subcommand("pipeline", "chain the word constructions end to end");
  cmd_pipeline->require_subcommand(1);

  std::string pw_path, pw_dir;
  std::vector<std::string> pw_lassos;
  auto* cmd_pw = cmd_pipeline->add_subcommand("word", "Lemma 5 -> Lemma 6 -> Theorem 8");
  cmd_pw->add_option("-a,--automaton", pw_path, "semi-simple Rabin (or simple parity) automaton")->required();
  cmd_pw->add_option("--output", pw_dir, "directory for stage files and report.json");
  cmd_pw->add_option("--lassos", pw_lassos, "lassos 'u;v' for value-preservation spot checks");
  cmd_pw->callback([&] {
    const auto a = cli_detail::load_word_automaton(pw_path);
    cli_detail::require_valid(a, pw_path);
    std::optional<std::string> dir;
    if (!pw_dir.empty()) {
      std::filesystem::create_directories(pw_dir);
      dir = pw_dir;
    }
    auto res = cli_detail::pipeline_word(a, pw_lassos, dir, out);
    if (dir) write_json_file(*dir + "/report.json", res.report);
    if (!res.preserved) exit_code = kFalse;
  });

  std::string pf_path, pf_dir;
  std::vector<std::string> pf_lassos;
  auto* cmd_pf = cmd_pipeline->add_subcommand("full", "word pipeline + Theorem 11 + phi_A");
  cmd_pf->add_option("-a,--automaton", pf_path, "semi-simple Rabin (or simple parity) automaton")->required();
  cmd_pf->add_option("--output", pf_dir, "directory for stage files and report.json")->required();
  cmd_pf->add_option("--lassos", pf_lassos, "lassos 'u;v' for value-preservation spot checks");
  cmd_pf->callback([&] {
    const auto a = cli_detail::load_word_automaton(pf_path);
    cli_detail::require_valid(a, pf_path);
    std::filesystem::create_directories(pf_dir);
    auto res = cli_detail::pipeline_word(a, pf_lassos, pf_dir, out);

    const auto universal = word_to_universal_tree(res.final_automaton);
    write_json_file(pf_dir + "/stage4_tree.json", tree_automaton_to_json(universal));
    out << "stage 4 word-to-universal-tree: " << universal.delta.size() << " transitions\n";

    const auto phi = phi_A(universal);
    write_file(pf_dir + "/stage5_phi.mso", print_formula(phi.formula) + "\n");
    write_file(pf_dir + "/stage5_emptiness.mso", print_formula(emptiness_sentence(universal)) + "\n");
    out << "stage 5 emit-mso: " << atom_count(phi.formula) << " atoms\n";

    res.report["stage4_transitions"] = static_cast<int>(universal.delta.size());
    res.report["stage5_atoms"] = atom_count(phi.formula);
    write_json_file(pf_dir + "/report.json", res.report);
    if (!res.preserved) exit_code = kFalse;
  });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return exit_code;
}

}  // namespace qualomega::cli
