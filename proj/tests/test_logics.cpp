#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "sygus/logics.hpp"
#include "sygus/session.hpp"

using namespace sygus;
using testutil::loadText;

namespace {

std::string codeOf(const std::string& text) {
  try {
    loadText(text);
  } catch (const SygusError& e) {
    return e.code();
  }
  return "no-error";
}

}  // namespace

TEST_CASE("logic names parse into flavors and base theories", "[logics]") {
  auto lia = parseSygusLogic("LIA");
  REQUIRE(lia.has_value());
  CHECK(lia->flavor == LogicFlavor::Smtlib);
  CHECK(lia->base.theories.ints);
  CHECK(lia->base.linear);

  auto nia = parseSygusLogic("NIA");
  REQUIRE(nia.has_value());
  CHECK_FALSE(nia->base.linear);

  auto pbe = parseSygusLogic("PBE_SLIA");
  REQUIRE(pbe.has_value());
  CHECK(pbe->flavor == LogicFlavor::Pbe);
  CHECK(pbe->base.theories.strings);

  auto inv = parseSygusLogic("Inv_LIA");
  REQUIRE(inv.has_value());
  CHECK(inv->flavor == LogicFlavor::Inv);

  auto chc = parseSygusLogic("CHC_LIA");
  REQUIRE(chc.has_value());
  CHECK(chc->flavor == LogicFlavor::Chc);

  CHECK_FALSE(parseSygusLogic("NOPE_42").has_value());
}

TEST_CASE("linear logics reject nonlinear constraints", "[logics]") {
  const std::string head =
      "(synth-fun f ((x Int)) Int)\n(declare-var x Int)\n(declare-var y Int)\n";
  CHECK(codeOf("(set-logic LIA)\n" + head +
               "(constraint (= (f x) (* x y)))\n(check-synth)") ==
        "E-LOGIC-TERM");
  // multiplication by a constant stays linear
  CHECK(codeOf("(set-logic LIA)\n" + head +
               "(constraint (= (f x) (* 2 y)))\n(check-synth)") == "no-error");
  CHECK(codeOf("(set-logic NIA)\n" + head +
               "(constraint (= (f x) (* x y)))\n(check-synth)") == "no-error");
}

TEST_CASE("PBE logics allow only PBE equalities", "[logics]") {
  const std::string head =
      "(set-logic PBE_SLIA)\n(synth-fun f ((s String)) String)\n";
  CHECK(codeOf(head + "(constraint (= (f \"a\") \"b\"))\n(check-synth)") ==
        "no-error");
  // conjunction of equalities is fine
  CHECK(codeOf(head +
               "(constraint (and (= (f \"a\") \"b\") (= (f \"c\") \"d\")))\n"
               "(check-synth)") == "no-error");
  // non-literal argument is not
  CHECK(codeOf(head +
               "(declare-var s String)\n"
               "(constraint (= (f s) \"b\"))\n(check-synth)") ==
        "E-LOGIC-TERM");
  // inequality is not
  CHECK(codeOf(head +
               "(constraint (distinct (f \"a\") \"b\"))\n(check-synth)") ==
        "E-LOGIC-TERM");
}

TEST_CASE("Inv logics demand exactly the inv-constraint shape", "[logics]") {
  CHECK(codeOf("(set-logic Inv_LIA)\n"
               "(synth-fun inv ((x Int)) Bool)\n"
               "(define-fun pre ((x Int)) Bool (= x 0))\n"
               "(define-fun trans ((x Int) (xp Int)) Bool (= xp (+ x 1)))\n"
               "(define-fun post ((x Int)) Bool (>= x 0))\n"
               "(inv-constraint inv pre trans post)\n"
               "(check-synth)") == "no-error");
  // extra plain constraint
  CHECK(codeOf("(set-logic Inv_LIA)\n"
               "(synth-fun inv ((x Int)) Bool)\n"
               "(define-fun pre ((x Int)) Bool (= x 0))\n"
               "(define-fun trans ((x Int) (xp Int)) Bool (= xp (+ x 1)))\n"
               "(define-fun post ((x Int)) Bool (>= x 0))\n"
               "(inv-constraint inv pre trans post)\n"
               "(constraint true)\n"
               "(check-synth)") == "E-LOGIC-TERM");
  // missing inv-constraint
  CHECK(codeOf("(set-logic Inv_LIA)\n"
               "(synth-fun inv ((x Int)) Bool)\n"
               "(check-synth)") == "E-LOGIC-TERM");
  // Int-sorted synth-fun
  CHECK(codeOf("(set-logic Inv_LIA)\n"
               "(synth-fun inv ((x Int)) Int)\n"
               "(check-synth)") == "E-LOGIC-TERM");
}

TEST_CASE("CHC logics demand S-atomic clause structure", "[logics]") {
  CHECK(codeOf("(set-logic CHC_LIA)\n"
               "(synth-fun inv ((x Int)) Bool)\n"
               "(chc-constraint ((x Int)) (> x 0) (inv x))\n"
               "(chc-constraint ((x Int)) (and (inv x) (< x 0)) false)\n"
               "(check-synth)") == "no-error");
  // a query clause (head false) is mandatory
  CHECK(codeOf("(set-logic CHC_LIA)\n"
               "(synth-fun inv ((x Int)) Bool)\n"
               "(chc-constraint ((x Int)) (> x 0) (inv x))\n"
               "(check-synth)") == "E-LOGIC-TERM");
  // plain constraints are not allowed
  CHECK(codeOf("(set-logic CHC_LIA)\n"
               "(synth-fun inv ((x Int)) Bool)\n"
               "(declare-var y Int)\n"
               "(constraint (inv y))\n"
               "(check-synth)") == "E-LOGIC-TERM");
  // synth predicate applied to a non-variable is not S-atomic
  CHECK(codeOf("(set-logic CHC_LIA)\n"
               "(synth-fun inv ((x Int)) Bool)\n"
               "(chc-constraint ((x Int)) (> x 0) (inv (+ x 1)))\n"
               "(check-synth)") == "E-LOGIC-TERM");
}

TEST_CASE("grammar rules must stay inside the logic", "[logics]") {
  // bvadd inside an LIA grammar
  CHECK(codeOf("(set-logic LIA)\n"
               "(synth-fun f ((x Int)) Int ((I Int))"
               " ((I Int (0 x (bvadd I I)))))\n"
               "(check-synth)") != "no-error");
  // nonlinear production in a linear logic
  CHECK(codeOf("(set-logic LIA)\n"
               "(synth-fun f ((x Int)) Int ((I Int))"
               " ((I Int (0 1 x (* I I)))))\n"
               "(check-synth)") == "E-LOGIC-TERM");
  CHECK(codeOf("(set-logic NIA)\n"
               "(synth-fun f ((x Int)) Int ((I Int))"
               " ((I Int (0 1 x (* I I)))))\n"
               "(check-synth)") == "no-error");
}

TEST_CASE("the whole reference corpus validates", "[logics]") {
  for (const char* name :
       {"ex01.sy", "ex02.sy", "ex03.sy", "ex04.sy", "ex05.sy", "ex06.sy",
        "ex07.sy", "ex08.sy", "ex09.sy", "ex10.sy", "ex11.sy", "ex12.sy",
        "ex13.sy", "ex14.sy", "apxb_lia.sy", "apxb_nia.sy", "apxb_lra.sy",
        "apxb_nra.sy", "apxb_bv.sy", "apxb_bv_full.sy", "apxb_s.sy"}) {
    INFO(name);
    CHECK_NOTHROW(testutil::loadCorpus(name));
  }
}

TEST_CASE("the permissive-only example needs exactly one relaxation",
          "[logics]") {
  try {
    testutil::loadCorpus("ex15.sy");
    FAIL("expected E-ARITY in strict mode");
  } catch (const SygusError& e) {
    CHECK(e.code() == "E-ARITY");
  }
  CHECK_NOTHROW(testutil::loadCorpus("ex15.sy", /*permissive=*/true));
}
