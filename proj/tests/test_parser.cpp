#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "sygus/parser.hpp"
#include "sygus/printer.hpp"

using namespace sygus;

static SExprPtr one(const std::string& text) {
  auto es = readAll(text);
  REQUIRE(es.size() == 1);
  return es[0];
}

TEST_CASE("sorts parse including indexed and parametric forms", "[parser]") {
  Parser p;
  Sort s1 = p.parseSort(*one("Int"));
  CHECK(toString(s1) == "Int");
  Sort s2 = p.parseSort(*one("(_ BitVec 8)"));
  CHECK(toString(s2) == "(_ BitVec 8)");
  Sort s3 = p.parseSort(*one("(Array Int (Set Bool))"));
  CHECK(toString(s3) == "(Array Int (Set Bool))");
}

TEST_CASE("function sorts need explicit permission and may nest", "[parser]") {
  Parser p;
  CHECK_THROWS_AS(p.parseSort(*one("(-> Int Bool)")), SygusError);
  Sort f = p.parseSort(*one("(-> Int Bool)"), true);
  CHECK(toString(f) == "(-> Int Bool)");
  Sort g = p.parseSort(*one("(-> (-> Int Bool) Bool)"), true);
  CHECK(toString(g) == "(-> (-> Int Bool) Bool)");
}

TEST_CASE("terms round-trip through the printer", "[parser]") {
  Parser p;
  for (const char* text : {
           "(+ x 1)",
           "(ite (<= x y) x y)",
           "(let ((a (+ x 1)) (b 2)) (* a b))",
           "(exists ((z Int)) (= z x))",
           "(forall ((z Int) (w Bool)) (=> w (= z x)))",
           "(! (+ x x) :numX 2)",
           "((_ extract 3 0) v)",
           "(str.++ \"a\" (str.at s 0))",
           "(- 1)",
           "(f (g x) #x0F #b11 3.5 true)",
       }) {
    TermPtr t = p.parseTerm(*one(text));
    CHECK(toString(*t) == text);
  }
}

TEST_CASE("annotated terms keep attribute lists", "[parser]") {
  Parser p;
  TermPtr t = p.parseTerm(*one("(! (+ x x) :numX 2 :flag)"));
  auto* an = asAnnotated(*t);
  REQUIRE(an != nullptr);
  REQUIRE(an->attrs.size() == 2);
  CHECK(an->attrs[0].keyword == ":numX");
  CHECK(an->attrs[0].numeralValue() == 2);
  CHECK(an->attrs[1].keyword == ":flag");
  CHECK(an->attrs[1].value == nullptr);
}

TEST_CASE("synth-fun grammar uses predeclaration plus grouped listing",
          "[parser]") {
  Parser p;
  auto cmds = p.parseCommands(readAll(
      "(synth-fun f ((x Int)) Int ((I Int) (B Bool))"
      " ((I Int (0 1 x (+ I I) (Constant Int) (Variable Int)))"
      "  (B Bool ((= I I)))))"));
  REQUIRE(cmds.size() == 1);
  auto* sf = asCmd<CmdSynthFun>(cmds[0]);
  REQUIRE(sf != nullptr);
  CHECK(sf->name == "f");
  REQUIRE(sf->grammar.has_value());
  REQUIRE(sf->grammar->nonterminals.size() == 2);
  CHECK(sf->grammar->nonterminals[0].name == "I");
  CHECK(sf->grammar->rules[0].size() == 6);
  CHECK(sf->grammar->rules[1].size() == 1);
}

TEST_CASE("grammar predeclaration and listing must align", "[parser]") {
  Parser p;
  // listing order differs from the predeclaration
  CHECK_THROWS_AS(
      p.parseCommands(readAll("(synth-fun f ((x Int)) Int ((I Int) (B Bool))"
                              " ((B Bool ((= I I))) (I Int (0 x))))")),
      SygusError);
  // missing rule group
  CHECK_THROWS_AS(
      p.parseCommands(readAll("(synth-fun f ((x Int)) Int ((I Int) (B Bool))"
                              " ((I Int (0 x))))")),
      SygusError);
}

TEST_CASE("declare-weight accepts keyword or symbol spelling", "[parser]") {
  Parser p;
  auto cmds =
      p.parseCommands(readAll("(declare-weight :numX)\n(declare-weight numI)"));
  auto* w0 = asCmd<CmdDeclareWeight>(cmds[0]);
  auto* w1 = asCmd<CmdDeclareWeight>(cmds[1]);
  REQUIRE(w0 != nullptr);
  REQUIRE(w1 != nullptr);
  CHECK(w0->keyword == ":numX");
  CHECK(w1->keyword == ":numI");
}

TEST_CASE("oracle-constraint takes the template term before the oracle name",
          "[parser]") {
  Parser p;
  auto cmds = p.parseCommands(
      readAll("(oracle-constraint ((x Int)) ((y Int)) (= (f x) y) orc)"));
  auto* oc = asCmd<CmdOracleCombined>(cmds[0]);
  REQUIRE(oc != nullptr);
  CHECK_FALSE(oc->isAssume);
  CHECK(oc->invars.size() == 1);
  CHECK(oc->outvars.size() == 1);
  CHECK(oc->oracleName == "orc");
}

TEST_CASE("three-list oracle-constraint needs permissive mode", "[parser]") {
  const std::string text =
      "(oracle-constraint () ((x Int)) ((z Bool)) (=> (f x) z) orc)";
  Parser strict;
  try {
    strict.parseCommands(readAll(text));
    FAIL("expected a diagnostic");
  } catch (const SygusError& e) {
    CHECK(e.code() == "E-ARITY");
  }
  Parser lax{ParserOptions{true}};
  auto cmds = lax.parseCommands(readAll(text));
  auto* oc = asCmd<CmdOracleCombined>(cmds[0]);
  REQUIRE(oc != nullptr);
  CHECK(oc->invars.empty());
  REQUIRE(oc->outvars.size() == 2);
  CHECK(oc->outvars[0].name == "x");
  CHECK(oc->outvars[1].name == "z");
}

TEST_CASE("declare-oracle-fun may take function-sorted arguments", "[parser]") {
  Parser p;
  auto cmds = p.parseCommands(
      readAll("(declare-oracle-fun isCorrect ((-> Int Bool)) Bool bin)"));
  auto* d = asCmd<CmdDeclareOracleFun>(cmds[0]);
  REQUIRE(d != nullptr);
  CHECK(toString(d->argSorts[0]) == "(-> Int Bool)");
}

TEST_CASE("oracle sugar commands parse to their own payloads", "[parser]") {
  Parser p;
  auto cmds = p.parseCommands(readAll(
      "(oracle-constraint-io f orc1)\n"
      "(oracle-constraint-cex f orc2)\n"
      "(oracle-constraint-membership f orc3)\n"
      "(oracle-constraint-poswitness f orc4)\n"
      "(oracle-constraint-negwitness f orc5)\n"
      "(declare-correctness-oracle f orc6)\n"
      "(declare-correctness-cex-oracle f orc7)"));
  REQUIRE(cmds.size() == 7);
  CHECK(asCmd<CmdOracleSugar>(cmds[0])->kind == OracleSugarKind::Io);
  CHECK(asCmd<CmdOracleSugar>(cmds[1])->kind == OracleSugarKind::Cex);
  CHECK(asCmd<CmdOracleSugar>(cmds[2])->kind == OracleSugarKind::Membership);
  CHECK(asCmd<CmdOracleSugar>(cmds[3])->kind == OracleSugarKind::PosWitness);
  CHECK(asCmd<CmdOracleSugar>(cmds[4])->kind == OracleSugarKind::NegWitness);
  CHECK_FALSE(asCmd<CmdDeclareCorrectnessOracle>(cmds[5])->withCex);
  CHECK(asCmd<CmdDeclareCorrectnessOracle>(cmds[6])->withCex);
}

TEST_CASE("malformed commands report stable codes", "[parser]") {
  auto codeOf = [](const std::string& text) {
    Parser p;
    try {
      p.parseCommands(readAll(text));
    } catch (const SygusError& e) {
      return e.code();
    }
    return std::string("no-error");
  };
  CHECK(codeOf("(synth-fun)") == "E-ARITY");
  CHECK(codeOf("(constraint)") == "E-ARITY");
  CHECK(codeOf("(declare-var x)") == "E-ARITY");
  CHECK(codeOf("(set-logic (LIA))") == "E-SYMBOL");
  CHECK(codeOf("(inv-constraint s pre trans)") == "E-ARITY");
  CHECK(codeOf("(unknown-command 1)") == "E-CMD");
}

TEST_CASE("chc-constraint parses vars, body and head", "[parser]") {
  Parser p;
  auto cmds = p.parseCommands(readAll(
      "(chc-constraint ((x Int)) (and (inv x) (> x 0)) (inv x))"));
  auto* c = asCmd<CmdChcConstraint>(cmds[0]);
  REQUIRE(c != nullptr);
  CHECK(c->vars.size() == 1);
}
