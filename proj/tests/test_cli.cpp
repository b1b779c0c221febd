#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "qualomega/cli.hpp"

using namespace qualomega;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qualomega_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

void write_one_state_accepting(const std::string& path) {
  const auto a = WordAutomatonBuilder({"q"}, {"a"})
                     .edge("q", "a", "q", rat(1))
                     .acceptance(AcceptanceCondition::parity({{0, 0}}))
                     .build();
  write_json_file(path, automaton_to_json(a));
}

}  // namespace

TEST_CASE("value on the one-state accepting automaton prints 1") {
  TempDir dir;
  const auto aut = dir.file("a.json");
  write_one_state_accepting(aut);
  std::string out;
  const int code = run_cli({"value", "-a", aut, "-w", "a;a"}, &out);
  CHECK(code == cli::kOk);
  CHECK(out == "1\n");
}

TEST_CASE("member exit codes follow the verdict") {
  TempDir dir;
  const auto aut = dir.file("a.json");
  const auto a = WordAutomatonBuilder({"s", "acc", "rej"}, {"a"})
                     .edge("s", "a", "acc", rat(1, 2))
                     .edge("s", "a", "rej", rat(1, 2))
                     .edge("acc", "a", "acc", rat(1))
                     .edge("rej", "a", "rej", rat(1))
                     .acceptance(AcceptanceCondition::parity({{0, 1}, {1, 0}, {2, 1}}))
                     .build();
  write_json_file(aut, automaton_to_json(a));
  std::string out;
  CHECK(run_cli({"member", "-a", aut, "-w", ";a", "--semantics", "as"}, &out) == cli::kFalse);
  CHECK(out == "false\n");
  CHECK(run_cli({"member", "-a", aut, "-w", ";a", "--semantics", "prob"}, &out) == cli::kOk);
  CHECK(out == "true\n");
}

TEST_CASE("validate reports non-stochastic rows with exit 1") {
  TempDir dir;
  const auto aut = dir.file("bad.json");
  write_file(aut, R"({
    "states": ["q"], "alphabet": ["a"], "initial": "q",
    "acceptance": {"kind": "buchi", "accepting": []},
    "delta": [{"from": "q", "letter": "a", "to": "q", "prob": "3/4"}]
  })");
  std::string out;
  CHECK(run_cli({"validate", "-a", aut}, &out) == cli::kFalse);
  CHECK(out.find("3/4") != std::string::npos);

  const auto good = dir.file("good.json");
  write_one_state_accepting(good);
  CHECK(run_cli({"validate", "-a", good}, &out) == cli::kOk);
}

TEST_CASE("malformed input exits 2 with a message") {
  TempDir dir;
  const auto bad = dir.file("nope.json");
  write_file(bad, "{ not json");
  std::string err;
  CHECK(run_cli({"classify", "-a", bad}, nullptr, &err) == cli::kInputError);
  CHECK(!err.empty());
  CHECK(run_cli({"value", "-a", dir.file("missing.json"), "-w", ";a"}, nullptr, &err) ==
        cli::kInputError);
}

TEST_CASE("transform writes output and report files that parse back") {
  TempDir dir;
  const auto in = dir.file("in.json");
  const auto a = WordAutomatonBuilder({"q", "p"}, {"a"})
                     .edge("q", "a", "q", rat(1, 2))
                     .edge("q", "a", "p", rat(1, 2))
                     .edge("p", "a", "p", rat(1))
                     .acceptance(AcceptanceCondition::rabin({{{1}, {}}}))
                     .build();
  write_json_file(in, automaton_to_json(a));

  const auto outp = dir.file("out.json");
  const auto repp = dir.file("rep.json");
  CHECK(run_cli({"transform", "--kind", "simple-to-binary", "-a", in, "-o", outp, "--report", repp}) ==
        cli::kOk);
  const auto b = automaton_from_json(read_json_file(outp));
  CHECK(classify(b) == AutomatonClass::BinaryBranching);
  const auto rep = read_json_file(repp);
  CHECK(rep["output_class"] == "binary-branching");
}

TEST_CASE("corpus generation is byte-identical for a fixed seed") {
  TempDir d1, d2;
  const std::vector<std::string> base{"corpus", "--seed", "7", "--semisimple", "3",
                                      "--binary", "2",    "--trees",      "2", "--lassos", "2"};
  auto args1 = base;
  args1.push_back("--out");
  args1.push_back(d1.path.string());
  auto args2 = base;
  args2.push_back("--out");
  args2.push_back(d2.path.string());
  REQUIRE(run_cli(args1) == cli::kOk);
  REQUIRE(run_cli(args2) == cli::kOk);
  for (const auto& entry : fs::directory_iterator(d1.path)) {
    const auto name = entry.path().filename().string();
    CHECK(read_file(entry.path().string()) == read_file((d2.path / name).string()));
  }
}

TEST_CASE("pipeline word emits staged artifacts with the promised classes") {
  TempDir dir;
  const auto in = dir.file("in.json");
  const auto a = WordAutomatonBuilder({"q", "q1", "q2", "q3"}, {"a"})
                     .edge("q", "a", "q1", rat(1, 8))
                     .edge("q", "a", "q2", rat(4, 8))
                     .edge("q", "a", "q3", rat(3, 8))
                     .edge("q1", "a", "q1", rat(1))
                     .edge("q2", "a", "q2", rat(1))
                     .edge("q3", "a", "q3", rat(1))
                     .acceptance(AcceptanceCondition::rabin({{{1}, {}}}))
                     .build();
  write_json_file(in, automaton_to_json(a));

  const auto outdir = dir.file("stages");
  std::string out;
  const int code = run_cli(
      {"pipeline", "word", "-a", in, "--output", outdir, "--lassos", ";a", "--lassos", "a;a"}, &out);
  CHECK(code == cli::kOk);
  CHECK(classify(automaton_from_json(read_json_file(outdir + "/stage1_simple.json"))) ==
        AutomatonClass::Simple);
  CHECK(classify(automaton_from_json(read_json_file(outdir + "/stage2_binary.json"))) ==
        AutomatonClass::BinaryBranching);
  const auto final_aut = automaton_from_json(read_json_file(outdir + "/stage3_parity.json"));
  CHECK(classify(final_aut) == AutomatonClass::BinaryBranching);
  CHECK(final_aut.acceptance.kind() == AcceptanceKind::Parity);
  const auto report = read_json_file(outdir + "/report.json");
  for (const auto& check : report["spot_checks"]) CHECK(check["preserved"] == true);
}

TEST_CASE("pipeline full adds the tree automaton and the formulas") {
  TempDir dir;
  const auto in = dir.file("in.json");
  const auto a = WordAutomatonBuilder({"q", "p"}, {"a"})
                     .edge("q", "a", "p", rat(1))
                     .edge("p", "a", "p", rat(1))
                     .acceptance(AcceptanceCondition::rabin({{{1}, {}}}))
                     .build();
  write_json_file(in, automaton_to_json(a));

  const auto outdir = dir.file("stages");
  std::string out;
  REQUIRE(run_cli({"pipeline", "full", "-a", in, "--output", outdir, "--lassos", ";a"}, &out) ==
          cli::kOk);
  const auto tree = tree_automaton_from_json(read_json_file(outdir + "/stage4_tree.json"));
  for (const auto& tr : tree.delta) CHECK(tree.has_transition(tr.from, tr.letter, tr.right, tr.left));
  const auto phi = parse_formula(read_file(outdir + "/stage5_phi.mso"));
  CHECK(count_kind(phi, FormulaKind::ForallMeasurePath) == 1);
  const auto sentence = parse_formula(read_file(outdir + "/stage5_emptiness.mso"));
  CHECK(is_sentence(sentence));
}

TEST_CASE("chain solve prints the BSCC table and the objective value") {
  TempDir dir;
  const auto a = WordAutomatonBuilder({"q0", "q1"}, {"a"})
                     .edge("q0", "a", "q0", rat(1, 2))
                     .edge("q0", "a", "q1", rat(1, 2))
                     .edge("q1", "a", "q1", rat(1))
                     .acceptance(AcceptanceCondition::buchi({1}))
                     .build();
  const auto c = product_chain(a, parse_lasso(";a", a.alphabet));
  const auto o = lifted_objective(a);
  const auto path = dir.file("chain.json");
  write_json_file(path, chain_to_json(c, &o));
  std::string out;
  REQUIRE(run_cli({"chain", "solve", "-c", path}, &out) == cli::kOk);
  CHECK(out.find("objective value 1") != std::string::npos);
}

TEST_CASE("simulate is reproducible for a fixed seed") {
  TempDir dir;
  const auto a = WordAutomatonBuilder({"q0", "q1"}, {"a"})
                     .edge("q0", "a", "q0", rat(1, 2))
                     .edge("q0", "a", "q1", rat(1, 2))
                     .edge("q1", "a", "q1", rat(1))
                     .acceptance(AcceptanceCondition::buchi({1}))
                     .build();
  const auto c = product_chain(a, parse_lasso(";a", a.alphabet));
  const auto o = lifted_objective(a);
  const auto path = dir.file("chain.json");
  write_json_file(path, chain_to_json(c, &o));
  std::string o1, o2;
  REQUIRE(run_cli({"simulate", "-c", path, "--steps", "64", "--seed", "5"}, &o1) == cli::kOk);
  REQUIRE(run_cli({"simulate", "-c", path, "--steps", "64", "--seed", "5"}, &o2) == cli::kOk);
  CHECK(o1 == o2);
}

TEST_CASE("emit-mso writes a parseable formula with stats") {
  TempDir dir;
  const auto a = WordAutomatonBuilder({"q0", "q1"}, {"a"})
                     .edge("q0", "a", "q0", rat(1, 2))
                     .edge("q0", "a", "q1", rat(1, 2))
                     .edge("q1", "a", "q0", rat(1, 2))
                     .edge("q1", "a", "q1", rat(1, 2))
                     .acceptance(AcceptanceCondition::parity({{0, 0}, {1, 1}}))
                     .build();
  const auto u = word_to_universal_tree(a);
  const auto path = dir.file("tree.json");
  write_json_file(path, tree_automaton_to_json(u));
  std::string out;
  REQUIRE(run_cli({"emit-mso", "-a", path, "--stats"}, &out) == cli::kOk);
  CHECK(out.find("atoms ") != std::string::npos);
  CHECK(out.find("path-measure quantifiers 1") != std::string::npos);

  const auto mso_file = dir.file("phi.mso");
  REQUIRE(run_cli({"emit-mso", "-a", path, "--sentence", "-o", mso_file}) == cli::kOk);
  CHECK(is_sentence(parse_formula(read_file(mso_file))));
}
