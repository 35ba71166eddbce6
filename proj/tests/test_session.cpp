#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "sygus/printer.hpp"
#include "sygus/session.hpp"

using namespace sygus;
using testutil::loadText;

namespace {

std::string codeOf(const std::string& text, bool permissive = false) {
  try {
    loadText(text, permissive);
  } catch (const SygusError& e) {
    return e.code();
  }
  return "no-error";
}

}  // namespace

TEST_CASE("command phases are enforced", "[session]") {
  // set-logic must come first
  CHECK(codeOf("(synth-fun f ((x Bool)) Bool)\n(set-logic LIA)\n"
               "(check-synth)") == "E-ORDER");
  // set-feature before body commands only
  CHECK(codeOf("(set-logic LIA)\n(synth-fun f ((x Int)) Int)\n"
               "(set-feature :weights true)\n(check-synth)") == "E-ORDER");
  // duplicate set-logic
  CHECK(codeOf("(set-logic LIA)\n(set-logic LIA)\n(check-synth)") ==
        "E-ORDER");
  // missing check-synth
  CHECK(codeOf("(set-logic LIA)\n(synth-fun f ((x Int)) Int)") == "E-ORDER");
  // nothing after check-synth
  CHECK(codeOf("(set-logic LIA)\n(check-synth)\n(constraint true)") ==
        "E-ORDER");
}

TEST_CASE("declarations are checked for duplicates and scope", "[session]") {
  CHECK(codeOf("(set-logic LIA)\n(declare-var x Int)\n(declare-var x Int)\n"
               "(check-synth)") == "E-DUP-SYMBOL");
  CHECK(codeOf("(set-logic LIA)\n(synth-fun f ((x Int)) Int)\n"
               "(synth-fun f ((x Int)) Int)\n(check-synth)") == "E-DUP-SYMBOL");
  // constraints may only mention declared symbols
  CHECK(codeOf("(set-logic LIA)\n(constraint (= y 1))\n(check-synth)") ==
        "E-UNBOUND");
}

TEST_CASE("feature gating controls grammars, weights and oracles",
          "[session]") {
  // grammars feature is on by default
  CHECK(codeOf("(set-logic LIA)\n"
               "(synth-fun f ((x Int)) Int ((I Int)) ((I Int (0 x))))\n"
               "(check-synth)") == "no-error");
  CHECK(codeOf("(set-logic LIA)\n(set-feature :grammars false)\n"
               "(synth-fun f ((x Int)) Int ((I Int)) ((I Int (0 x))))\n"
               "(check-synth)") == "E-FEATURE-GATED");
  CHECK(codeOf("(set-logic LIA)\n(declare-weight :w)\n(check-synth)") ==
        "E-FEATURE-GATED");
  CHECK(codeOf("(set-logic LIA)\n(set-feature :weights true)\n"
               "(declare-weight :w)\n(check-synth)") == "no-error");
  CHECK(codeOf("(set-logic LIA)\n"
               "(declare-oracle-fun o ((Int)) Int bin)\n(check-synth)",
               false) != "no-error");
  CHECK(codeOf("(set-logic LIA)\n(set-feature :nope true)\n(check-synth)") ==
        "E-CMD");
}

TEST_CASE("define-fun bodies may not call synth-funs unless fwd-decls",
          "[session]") {
  const std::string base =
      "(synth-fun f ((x Int)) Int)\n"
      "(define-fun g ((x Int)) Int (+ (f x) 1))\n"
      "(declare-var y Int)\n(constraint (= (g y) y))\n(check-synth)";
  CHECK(codeOf("(set-logic LIA)\n" + base) != "no-error");
  CHECK(codeOf("(set-logic LIA)\n(set-feature :fwd-decls true)\n" + base) ==
        "no-error");
}

TEST_CASE("inv-constraint desugars to three implications over fresh vars",
          "[session]") {
  Session s = testutil::loadCorpus("ex11.sy");
  REQUIRE(s.constraints.size() == 3);
  // interleaved unprimed/primed universal variables
  REQUIRE(s.universalVars.size() >= 4);
  CHECK(s.universalVars[0].name == "v1");
  CHECK(s.universalVars[1].name == "vp1");
  for (auto& c : s.constraints) {
    CHECK(c.origin == ConstraintOrigin::Inv);
    std::string out = toString(*c.term);
    CHECK(out.substr(0, 4) == "(=> ");
  }
}

TEST_CASE("chc-constraint desugars to F_body/F_head implications",
          "[session]") {
  Session s = testutil::loadCorpus("ex12.sy");
  REQUIRE(s.constraints.size() == 3);
  CHECK(s.sig.macros.count("F_body") == 1);
  CHECK(s.sig.macros.count("F_head") == 1);
  CHECK(s.sig.macros.count("F_body!0") == 1);
  CHECK(s.sig.macros.count("F_head!1") == 1);
}

TEST_CASE("declare-oracle-fun desugars to a function-sorted universal",
          "[session]") {
  Session s = testutil::loadCorpus("ex14.sy");
  bool found = false;
  for (auto& v : s.universalVars)
    if (v.name == "target") {
      found = true;
      CHECK(toString(v.sort) ==
            "(-> (_ BitVec 64) (_ BitVec 64))");
    }
  CHECK(found);
  CHECK(s.oracleValued.count("target") == 1);
}

TEST_CASE("oracle sugar commands expand with fresh names", "[session]") {
  Session s = testutil::loadCorpus("oracle_sugars.sy");
  // every sugar became a core binding or declaration; none survive
  for (auto& c : s.coreCommands) {
    CHECK(asCmd<CmdOracleSugar>(c) == nullptr);
    CHECK(asCmd<CmdDeclareCorrectnessOracle>(c) == nullptr);
    CHECK(asCmd<CmdInvConstraint>(c) == nullptr);
    CHECK(asCmd<CmdChcConstraint>(c) == nullptr);
  }
  CHECK_FALSE(s.oracleBindings.empty());
}

TEST_CASE("fresh names avoid captured user symbols", "[session]") {
  // `s` is taken by a universal variable, so the correctness-cex expansion
  // must suffix its witness variable
  std::string text = testutil::slurp(testutil::corpusPath("oracle_sugars.sy"));
  Session s = loadText(text);
  bool sawSuffixed = false;
  for (auto& v : s.universalVars)
    if (v.name.find("!") != std::string::npos) sawSuffixed = true;
  CHECK(sawSuffixed);
}

TEST_CASE("desugared stream revalidates through the CLI", "[session]") {
  for (const char* name :
       {"ex11.sy", "ex12.sy", "ex13.sy", "oracle_sugars.sy", "ex14.sy"}) {
    auto d = testutil::runCli("desugar " + testutil::corpusPath(name));
    REQUIRE(d.exitCode == 0);
    std::string tmp = "/tmp/sygus-test-desugar.sy";
    std::ofstream(tmp) << d.output;
    auto v = testutil::runCli("validate " + tmp);
    INFO(name << ": " << v.output);
    CHECK(v.exitCode == 0);
  }
}

TEST_CASE("optimize-synth records the objective", "[session]") {
  Session s = testutil::loadCorpus("ex10.sy");
  REQUIRE(s.objective.has_value());
  CHECK(s.objective->terms.size() == 2);
  REQUIRE(s.objective->attrs.size() == 1);
  CHECK(s.objective->attrs[0].keyword == ":lexico");
}
