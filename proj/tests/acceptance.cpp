// Acceptance driver: one pass/fail line per criterion, nonzero exit if any
// criterion fails.  Independent of the unit-test framework.

#include <sys/stat.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brute_oracle.hpp"
#include "helpers.hpp"
#include "sygus/eval.hpp"
#include "sygus/grammar.hpp"
#include "sygus/oracle.hpp"
#include "sygus/verify.hpp"

using namespace sygus;
using testutil::corpusPath;
using testutil::loadCorpus;
using testutil::loadText;
using testutil::runCli;
using testutil::slurp;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(bool ok, const std::string& msg) {
  if (!ok) throw Failure(msg);
}

const RuleSet& grammarOf(const Session& s, const std::string& fun) {
  auto it = s.ruleSets.find(fun);
  check(it != s.ruleSets.end(), "no grammar for " + fun);
  return it->second;
}

TermPtr term(const std::string& text) {
  Parser p;
  return p.parseTerm(*readAll(text)[0]);
}

Response respOf(const std::string& name, const Session& s) {
  return parseResponse(slurp(corpusPath(name)), s);
}

// ---- criterion 1: corpus validation --------------------------------------

void criterion1() {
  std::size_t validated = 0;
  for (auto& entry :
       std::filesystem::directory_iterator(SYGUS_CORPUS_DIR)) {
    std::string path = entry.path().string();
    if (path.size() < 3 || path.substr(path.size() - 3) != ".sy") continue;
    bool isEx15 = entry.path().filename() == "ex15.sy";
    auto r = runCli("validate " + path);
    if (isEx15) {
      check(r.exitCode != 0, "ex15.sy must fail in strict mode");
      std::size_t errs = 0, pos = 0;
      while ((pos = r.output.find("error ", pos)) != std::string::npos) {
        ++errs;
        pos += 6;
      }
      check(errs == 1, "ex15.sy must report exactly one error, got " +
                           std::to_string(errs));
      check(r.output.find("E-ARITY") != std::string::npos,
            "ex15.sy error must be E-ARITY: " + r.output);
      auto p = runCli("validate --permissive " + path);
      check(p.exitCode == 0, "ex15.sy must validate permissively");
    } else {
      check(r.exitCode == 0, path + " failed validation: " + r.output);
    }
    ++validated;
  }
  check(validated >= 22, "corpus smaller than expected");
}

// ---- criterion 2: response checking and mutants --------------------------

void criterion2() {
  struct Ref {
    const char* input;
    const char* resp;
  };
  for (Ref c : {Ref{"ex01.sy", "ex01.resp"}, Ref{"ex02.sy", "ex02.resp"},
                Ref{"ex03.sy", "ex03.resp"}, Ref{"ex04.sy", "ex04.resp"},
                Ref{"ex05.sy", "ex05.resp"}, Ref{"ex06.sy", "ex06.resp"},
                Ref{"ex07.sy", "ex07.resp"}, Ref{"ex08.sy", "ex08.resp"},
                Ref{"ex09.sy", "ex09.resp1"}, Ref{"ex09.sy", "ex09.resp2"},
                Ref{"ex10.sy", "ex10.resp1"}, Ref{"ex10.sy", "ex10.resp2"},
                Ref{"ex11.sy", "ex11.resp"}, Ref{"ex12.sy", "ex12.resp"},
                Ref{"ex13.sy", "ex13.resp"}}) {
    Session s = loadCorpus(c.input);
    Response r = respOf(c.resp, s);
    check(checkSyntactic(s, r).pass,
          std::string(c.resp) + " failed the syntactic check");
    SemanticVerdict v = r.kind == Response::OptSolution
                            ? checkOptimize(s, r)
                            : checkSemanticBounded(s, r);
    check(v.kind == SemanticVerdict::PassedBounded,
          std::string(c.resp) + " failed the bounded check: " + v.reason);
  }
  for (int ex = 1; ex <= 13; ++ex) {
    char input[16], mut[24];
    std::snprintf(input, sizeof input, "ex%02d.sy", ex);
    Session s = loadCorpus(input);
    for (int m = 1; m <= 3; ++m) {
      std::snprintf(mut, sizeof mut, "ex%02d.mut%d.resp", ex, m);
      Response r = respOf(mut, s);
      bool rejected = !checkSyntactic(s, r).pass;
      if (!rejected) {
        SemanticVerdict v = r.kind == Response::OptSolution
                                ? checkOptimize(s, r)
                                : checkSemanticBounded(s, r);
        rejected = v.kind == SemanticVerdict::Refuted;
      }
      check(rejected, std::string(mut) + " was not rejected");
    }
  }
  // named behaviors
  Session s1 = loadCorpus("ex01.sy");
  Response m1 = respOf("ex01.mut1.resp", s1);
  check(!checkSyntactic(s1, m1).pass,
        "ex01.mut1 (* x y) must fail grammar membership");
  Session s3 = loadCorpus("ex03.sy");
  Response ident = respOf("ex03.mut1.resp", s3);
  SemanticVerdict v3 = checkSemanticBounded(s3, ident);
  check(v3.kind == SemanticVerdict::Refuted &&
            v3.reason.find("#x0782ECAD") != std::string::npos,
        "ex03 identity must be refuted at #x0782ECAD: " + v3.reason);
  Session s6 = loadCorpus("ex06.sy");
  Response fn = respOf("ex06.mut1.resp", s6);
  SemanticVerdict v6 = checkSemanticBounded(s6, fn);
  check(v6.kind == SemanticVerdict::Refuted &&
            v6.reason.find("Nancy") != std::string::npos,
        "ex06 first-name-only must be refuted at the Nancy point: " +
            v6.reason);
}

// ---- criterion 3: weighted-derivation sets -------------------------------

void criterion3() {
  using namespace bruteoracle;
  Session s7 = loadCorpus("ex07.sy");
  const RuleSet& rs7 = grammarOf(s7, "f");
  WeightAnalyzer wa7(rs7, "numX");
  WeightSet ws7 = wa7.weightSets(0, *term("(+ x (* x x))"));
  check(ws7.bases() == std::set<long long>{3} && ws7.pumps().empty(),
        "numX weight set of (+ x (* x x)) must be {3}");

  Session s8 = loadCorpus("ex08.sy");
  const RuleSet& rs8 = grammarOf(s8, "f");
  WeightAnalyzer wa8(rs8, "numI");
  WeightSet ws8 = wa8.weightSets(0, *term("(+ x 1)"));
  check(ws8.bases() == std::set<long long>{0, 2},
        "numI weight set of (+ x 1) must be {0, 2}");

  // brute-force oracle agreement (derivations up to 8 steps)
  struct Ref {
    const char* file;
    const char* kw;
  };
  for (Ref c : {Ref{"ex07.sy", "numX"}, Ref{"ex08.sy", "numI"}}) {
    Session s = loadCorpus(c.file);
    const RuleSet& rs = grammarOf(s, "f");
    WeightAnalyzer wa(rs, c.kw);
    for (auto& t : enumerateGrammar(rs, 0, 4).terms) {
      std::set<long long> brute = bruteWeights(rs, 0, *t, 8, c.kw);
      WeightSet ws = wa.weightSets(0, *t);
      for (long long k : brute)
        check(weightAchievable(ws, k),
              std::string(c.file) + ": brute weight " + std::to_string(k) +
                  " of " + toString(*t) + " not achievable");
      check(ws.pumps().empty() && ws.bases() == brute,
            std::string(c.file) + ": weight set of " + toString(*t) +
                " disagrees with brute force");
    }
  }

  // 50 random weighted grammars
  std::mt19937 rng(20260825);
  int checkedTerms = 0;
  for (int trial = 0; trial < 50; ++trial) {
    bool twoNts = rng() % 2 == 0;
    auto rollWeight = [&](const std::string& r) -> std::string {
      if (rng() % 2 == 0) return r;
      return "(! " + r + " :w " + std::to_string(rng() % 4) + ")";
    };
    std::vector<std::string> poolA = {"0", "1", "x", "(+ A A)", "(- A)"};
    if (twoNts) {
      poolA.push_back("B");
      poolA.push_back("(+ B 1)");
    }
    std::vector<std::string> poolB = {"0", "x", "(+ B B)", "A"};
    auto pick = [&](std::vector<std::string>& pool, std::size_t n) {
      std::shuffle(pool.begin(), pool.end(), rng);
      std::string out;
      for (std::size_t i = 0; i < n && i < pool.size(); ++i)
        out += " " + rollWeight(pool[i]);
      return out;
    };
    std::string g = "((A Int (" + pick(poolA, 2 + rng() % 3) + "))";
    if (twoNts) g += " (B Int (" + pick(poolB, 2 + rng() % 3) + "))";
    g += ")";
    std::string pre = twoNts ? "((A Int) (B Int))" : "((A Int))";
    std::string text =
        "(set-logic LIA)\n(set-feature :weights true)\n(declare-weight w)\n"
        "(synth-fun f ((x Int)) Int " + pre + " " + g + ")\n(check-synth)";
    Session s;
    try {
      s = loadText(text);
    } catch (const SygusError&) {
      continue;
    }
    const RuleSet& rs = grammarOf(s, "f");
    WeightAnalyzer wa(rs, "w");
    std::size_t used = 0;
    for (auto& t : enumerateGrammar(rs, 0, 3).terms) {
      if (used++ >= 6) break;
      ++checkedTerms;
      std::set<long long> brute = bruteWeights(rs, 0, *t, 12, "w");
      WeightSet ws = wa.weightSets(0, *t);
      for (long long k : brute)
        check(weightAchievable(ws, k),
              "random grammar " + g + ": brute weight " +
                  std::to_string(k) + " of " + toString(*t) +
                  " not achievable");
      for (auto& part : ws.parts) {
        check(brute.count(part.base) == 1,
              "random grammar " + g + ": base " +
                  std::to_string(part.base) + " of " + toString(*t) +
                  " has no short derivation");
        for (long long p : part.pumps)
          check(brute.count(part.base + p) == 1,
                "random grammar " + g + ": pump " + std::to_string(p) +
                    " of " + toString(*t) + " has no short derivation");
      }
      if (ws.pumps().empty())
        check(ws.bases() == brute,
              "random grammar " + g + ": finite weight set of " +
                  toString(*t) + " disagrees with brute force");
    }
  }
  check(checkedTerms > 100, "too few random-grammar terms exercised");
}

// ---- criterion 4: objective comparison -----------------------------------

void criterion4() {
  Session smin = loadText(
      "(set-logic LIA)\n(synth-fun f ((x Int)) Int)\n"
      "(declare-var x Int)\n(constraint (= (f x) x))\n"
      "(optimize-synth ((! (f 0) :min) (! (f 1) :max)) :lexico)");
  auto tup = [](long a, long b) {
    return std::vector<ValuePtr>{vInt(a), vInt(b)};
  };
  const CmdOptimizeSynth& obj = *smin.objective;
  check(compareSolutions(obj, tup(0, 3), tup(1, 3)) ==
            CompareOutcome::APreferred,
        "(0,3) must beat (1,3)");
  check(compareSolutions(obj, tup(1, 3), tup(1, 0)) ==
            CompareOutcome::APreferred,
        "(1,3) must beat (1,0)");
  check(compareSolutions(obj, tup(1, 0), tup(0, 3)) ==
            CompareOutcome::BPreferred,
        "(1,0) vs (0,3) must prefer B");

  Session s10 = loadCorpus("ex10.sy");
  check(compareSolutions(*s10.objective, tup(1, 1), tup(0, 100)) ==
            CompareOutcome::APreferred,
        "(1,1) must beat (0,100) lexicographically");

  Session s3 = loadText(
      "(set-logic LIA)\n(synth-fun f ((x Int)) Int)\n"
      "(declare-var x Int)\n(constraint (= (f x) x))\n"
      "(optimize-synth ((! (f 0) :min) (! (f 1) :max) (f 2)) :lexico)");
  const CmdOptimizeSynth& obj3 = *s3.objective;
  std::mt19937 rng(7);
  auto randTup = [&] {
    return std::vector<ValuePtr>{vInt(static_cast<long>(rng() % 5)),
                                 vInt(static_cast<long>(rng() % 5)),
                                 vInt(static_cast<long>(rng() % 5))};
  };
  for (int trial = 0; trial < 1000; ++trial) {
    auto a = randTup(), b = randTup(), c = randTup();
    check(compareSolutions(obj3, a, a) == CompareOutcome::Equal,
          "comparison must be reflexive-equal");
    CompareOutcome ab = compareSolutions(obj3, a, b);
    CompareOutcome ba = compareSolutions(obj3, b, a);
    if (ab == CompareOutcome::APreferred)
      check(ba == CompareOutcome::BPreferred, "comparison must be asymmetric");
    if (ab == CompareOutcome::Equal)
      check(ba == CompareOutcome::Equal, "equality must be symmetric");
    if (ab == CompareOutcome::APreferred &&
        compareSolutions(obj3, b, c) == CompareOutcome::APreferred)
      check(compareSolutions(obj3, a, c) == CompareOutcome::APreferred,
            "comparison must be transitive");
  }
}

// ---- criterion 5: desugaring goldens -------------------------------------

void criterion5() {
  for (const char* name : {"ex11", "ex12", "ex13", "oracle_sugars"}) {
    auto d = runCli("desugar " + corpusPath(std::string(name) + ".sy"));
    check(d.exitCode == 0, std::string(name) + ".sy failed to desugar");
    check(d.output == slurp(corpusPath(std::string(name) + ".golden.core")),
          std::string(name) + ".sy desugaring differs from its golden");
    // the desugared stream revalidates
    std::string tmp = "/tmp/sygus-acceptance-desugar.sy";
    std::ofstream(tmp) << d.output;
    auto v = runCli("validate " + tmp);
    check(v.exitCode == 0,
          std::string(name) + ".sy desugared form fails validation: " +
              v.output);
  }
}

// ---- criterion 6: enumeration / membership duality -----------------------

void criterion6() {
  using namespace bruteoracle;
  for (const char* name : {"ex01.sy", "ex02.sy", "apxb_lia.sy"}) {
    Session s = loadCorpus(name);
    const RuleSet& rs = grammarOf(s, "f");
    GrammarMatcher m(rs);
    EnumResult er6 = enumerateGrammar(rs, 0, 6);
    check(!er6.terms.empty(), std::string(name) + ": empty enumeration");
    for (auto& t : er6.terms)
      check(m.generates(0, *t), std::string(name) + ": enumerated term " +
                                    toString(*t) + " rejected");
    EnumResult er4 = enumerateGrammar(rs, 0, 4);
    std::set<std::string> enumerated;
    for (auto& t : er4.terms) enumerated.insert(toString(*t));
    std::size_t accepted = 0;
    for (auto& t : allTerms(signatureOf(rs), 4)) {
      if (!m.generates(0, *t)) continue;
      ++accepted;
      check(enumerated.count(toString(*t)) == 1,
            std::string(name) + ": accepted term " + toString(*t) +
                " missing from enumeration");
    }
    check(accepted > 0, std::string(name) + ": no accepted terms");
  }
}

// ---- criterion 7: evaluator semantics ------------------------------------

ValuePtr evalOk(Evaluator& ev, const std::string& text, const ValueEnv& env) {
  EvalResult r = ev.eval(*term(text), env);
  check(r.isOk(), "evaluation of " + text + " failed");
  return r.value;
}

void criterion7() {
  Signature sig = baseSignature(TheorySet{true, true, true, true, true, true});
  Evaluator ev(sig);

  // Euclidean division: x = y*(div x y) + (mod x y), 0 <= mod < |y|
  for (long x = -50; x <= 50; ++x)
    for (long y = -50; y <= 50; ++y) {
      if (y == 0) continue;
      ValueEnv env{{"x", vInt(x)}, {"y", vInt(y)}};
      ValuePtr d = evalOk(ev, "(div x y)", env);
      ValuePtr m = evalOk(ev, "(mod x y)", env);
      mpz_class dv = asValue<IntV>(*d)->v, mv = asValue<IntV>(*m)->v;
      check(x == y * dv + mv && mv >= 0 && mv < abs(mpz_class(y)),
            "Euclidean div/mod law fails at x=" + std::to_string(x) +
                " y=" + std::to_string(y));
    }

  // bit-vector laws, width 4, exhaustive
  auto bv4 = [](unsigned long b) { return vBV(4, mpz_class(b)); };
  struct BvOp {
    const char* name;
    std::function<unsigned long(unsigned long, unsigned long)> ref;
  };
  auto toSigned = [](unsigned long a) {
    return static_cast<long>(a >= 8 ? a - 16 : a);
  };
  std::vector<BvOp> ops = {
      {"bvadd", [](unsigned long a, unsigned long b) { return (a + b) % 16; }},
      {"bvsub",
       [](unsigned long a, unsigned long b) { return (a + 16 - b) % 16; }},
      {"bvmul", [](unsigned long a, unsigned long b) { return (a * b) % 16; }},
      {"bvand", [](unsigned long a, unsigned long b) { return a & b; }},
      {"bvor", [](unsigned long a, unsigned long b) { return a | b; }},
      {"bvxor", [](unsigned long a, unsigned long b) { return a ^ b; }},
      {"bvudiv",
       [](unsigned long a, unsigned long b) { return b == 0 ? 15 : a / b; }},
      {"bvurem",
       [](unsigned long a, unsigned long b) { return b == 0 ? a : a % b; }},
      {"bvshl",
       [](unsigned long a, unsigned long b) {
         return b > 3 ? 0 : (a << b) % 16;
       }},
      {"bvlshr",
       [](unsigned long a, unsigned long b) { return b > 3 ? 0 : a >> b; }},
  };
  for (unsigned long a = 0; a < 16; ++a)
    for (unsigned long b = 0; b < 16; ++b) {
      ValueEnv env{{"a", bv4(a)}, {"b", bv4(b)}};
      for (auto& op : ops) {
        ValuePtr r =
            evalOk(ev, std::string("(") + op.name + " a b)", env);
        check(asValue<BVV>(*r)->bits == op.ref(a, b),
              std::string(op.name) + " wrong at a=" + std::to_string(a) +
                  " b=" + std::to_string(b));
      }
      ValuePtr ult = evalOk(ev, "(bvult a b)", env);
      check(asValue<BoolV>(*ult)->v == (a < b), "bvult wrong");
      ValuePtr slt = evalOk(ev, "(bvslt a b)", env);
      check(asValue<BoolV>(*slt)->v == (toSigned(a) < toSigned(b)),
            "bvslt wrong");
    }

  // string corner cases against an independent reference
  auto refSubstr = [](const std::string& s, long i, long n) -> std::string {
    if (i < 0 || n <= 0 || i >= static_cast<long>(s.size())) return "";
    long take = std::min(n, static_cast<long>(s.size()) - i);
    return s.substr(static_cast<std::size_t>(i),
                    static_cast<std::size_t>(take));
  };
  struct StrCase {
    const char* expr;
    const char* want;  // printed value
  };
  for (StrCase c : {
           StrCase{"(str.substr \"hello\" 1 3)", "\"ell\""},
           StrCase{"(str.substr \"hello\" 4 10)", "\"o\""},
           StrCase{"(str.substr \"hello\" 5 1)", "\"\""},
           StrCase{"(str.substr \"hello\" (- 1) 2)", "\"\""},
           StrCase{"(str.indexof \"abcabc\" \"bc\" 2)", "4"},
           StrCase{"(str.indexof \"abc\" \"d\" 0)", "(- 1)"},
           StrCase{"(str.indexof \"abc\" \"\" 1)", "1"},
           StrCase{"(str.at \"abc\" 3)", "\"\""},
           StrCase{"(str.to_int \"007\")", "7"},
           StrCase{"(str.to_int \"-5\")", "(- 1)"},
           StrCase{"(str.to_int \"\")", "(- 1)"},
           StrCase{"(str.from_int (- 3))", "\"\""},
           StrCase{"(str.replace \"aaa\" \"a\" \"b\")", "\"baa\""},
           StrCase{"(str.replace \"abc\" \"\" \"x\")", "\"xabc\""},
           StrCase{"(str.prefixof \"\" \"abc\")", "true"},
           StrCase{"(str.contains \"abc\" \"\")", "true"},
       }) {
    ValuePtr v = evalOk(ev, c.expr, {});
    check(printValue(*v) == c.want,
          std::string(c.expr) + " = " + printValue(*v) + ", want " + c.want);
  }
  // random agreement with the reference substring semantics
  std::mt19937 rng(99);
  for (int i = 0; i < 500; ++i) {
    std::string s;
    for (int k = static_cast<int>(rng() % 6); k > 0; --k)
      s.push_back(static_cast<char>('a' + rng() % 3));
    long off = static_cast<long>(rng() % 9) - 2;
    long len = static_cast<long>(rng() % 9) - 2;
    ValueEnv env{{"s", vString(s)}, {"i", vInt(off)}, {"n", vInt(len)}};
    ValuePtr v = evalOk(ev, "(str.substr s i n)", env);
    check(asValue<StringV>(*v)->chars == refSubstr(s, off, len),
          "str.substr disagrees with the reference on \"" + s + "\"");
  }
}

// ---- criterion 8: enumerative solving ------------------------------------

void criterion8() {
  auto timedSolve = [](const char* file, double limit) {
    Session s = loadCorpus(file);
    auto t0 = std::chrono::steady_clock::now();
    SolveOptions opts;
    opts.timeoutSecs = limit;
    Response r = solveEnumerative(s, opts);
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    check(r.kind == Response::Solution,
          std::string(file) + ": solver did not find a solution");
    check(secs < limit, std::string(file) + ": solver exceeded " +
                            std::to_string(limit) + "s");
    check(checkSyntactic(s, r).pass,
          std::string(file) + ": solution fails the syntactic check");
    SemanticVerdict v = checkSemanticBounded(s, r);
    check(v.kind == SemanticVerdict::PassedBounded,
          std::string(file) + ": solution fails the bounded check: " +
              v.reason);
  };
  timedSolve("ex01.sy", 10);
  timedSolve("ex06.sy", 120);  // PBE over strings at the default max size 7
}

// ---- criterion 9: external-oracle protocol -------------------------------

std::string writeScript(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  out << "#!/bin/sh\n" << body << "\n";
  out.close();
  ::chmod(path.c_str(), 0755);
  return path;
}

ValuePtr randomValue(std::mt19937& rng) {
  auto randMpz = [&](int bits) {
    mpz_class z = 0;
    for (int i = 0; i < bits; i += 16)
      z = z * 65536 + static_cast<unsigned>(rng() & 0xffff);
    return z;
  };
  switch (rng() % 5) {
    case 0: {
      mpz_class z = randMpz(64);
      return vInt(rng() & 1 ? mpz_class(-z) : z);
    }
    case 1: {
      mpq_class q(randMpz(32), randMpz(16) + 1);
      return vReal(rng() & 1 ? mpq_class(-q) : q);
    }
    case 2:
      return vBool(rng() & 1);
    case 3: {
      unsigned width = 1 + rng() % 65;
      return vBV(width, randMpz(static_cast<int>(width)));
    }
    default: {
      static const std::string alphabet = "abcXYZ 019\"\\!~";
      std::string s;
      for (std::size_t k = rng() % 12; k > 0; --k)
        s.push_back(alphabet[rng() % alphabet.size()]);
      return vString(s);
    }
  }
}

void criterion9() {
  const char* hexes[10] = {
      "#x28085a970e13e12c", "#xbe5341bebd2a0749", "#xe239460eed2cc34e",
      "#xac5b1b5e9b236b10", "#x4069a4c7173e1786", "#x39419062091119a6",
      "#x49aeeca628644ee0", "#x75e5bc2a07c77c97", "#x4c5ee4be98c5ee7d",
      "#xcd67bd5beaac575e"};
  Sort bv = bitVecSort(64);
  for (int mode = 0; mode < 2; ++mode) {
    std::string label = mode == 0 ? "command-line" : "file";
    Session sess = loadCorpus("oracle_io.sy");
    OracleBinding b = sess.oracleBindings.at(0);
    b.transport =
        mode == 0 ? OracleBinding::CommandLine : OracleBinding::File;
    OracleResolver res;
    std::string cmd = std::string("exec \"") + SYGUS_CLI_PATH +
                      "\" oracle-stub --table \"" +
                      corpusPath("ident_bv64.table") + "\"" +
                      (mode == 1 ? " --file-mode" : "") + " \"$@\"";
    res.overrides[b.oracleName] =
        writeScript("/tmp/sygus-acceptance-oracle-" + label, cmd);
    Transcript tr;
    for (auto* h : hexes)
      runOracleCall(sess, tr, b, {parseValueText(h, &bv)}, res);
    check(tr.calls.size() == 10 && tr.constraints.size() == 10,
          label + ": expected 10 oracle calls");
    for (int i = 0; i < 10; ++i)
      check(toString(*tr.constraints[i]) ==
                std::string("(= (f ") + hexes[i] + ") " + hexes[i] + ")",
            label + ": unexpected instantiated constraint");
    Session replay = loadCorpus("oracle_io.sy");
    std::size_t before = replay.constraints.size();
    applyTranscript(replay, tr);
    check(replay.constraints.size() - before == 10,
          label + ": transcript replay must add 10 constraints");
    Response ident = parseResponse(
        "((define-fun f ((x (_ BitVec 64))) (_ BitVec 64) x))", sess);
    SemanticVerdict v = checkSemanticBounded(sess, ident);
    check(v.kind == SemanticVerdict::PassedBounded && v.points >= 10,
          label + ": identity must satisfy the collected constraints");
  }
  // bit-exact value round-trips over the wire syntax
  std::mt19937 rng(20260825);
  StubTable echo = parseStubTable("(fallback x)");
  for (int i = 0; i < 1000; ++i) {
    ValuePtr v = randomValue(rng);
    std::string wire = printValue(*v);
    check(valueEqual(*v, *parseValueText(wire)),
          "value does not round-trip: " + wire);
    if (i % 5 == 0) {
      std::string out, err;
      check(stubOracleRun(echo, false, {wire}, out, err) == 0 &&
                out.size() > 3 &&
                valueEqual(*v, *parseValueText(
                                   out.substr(1, out.size() - 3))),
            "stub echo does not round-trip: " + wire);
    }
  }
}

// ---- criterion 10: SMT-LIB emission --------------------------------------

void criterion10() {
  for (const char* ex : {"ex01", "ex02"}) {
    Session s = loadCorpus(std::string(ex) + ".sy");
    Response r = respOf(std::string(ex) + ".resp", s);
    std::string smt = emitSmt(s, r);
    check(smt == slurp(corpusPath(std::string(ex) + ".golden.smt2")),
          std::string(ex) + " emission differs from its golden");
    readAll(smt);  // throws if unbalanced
    check(smt.find("(check-sat)") != std::string::npos &&
              smt.find("(assert (not ") != std::string::npos,
          std::string(ex) + " emission lacks the negated conjecture");
  }
  // Running the emitted queries through an SMT solver is skipped: no solver
  // binary is available in this environment.
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void()> run;
  };
  std::vector<Criterion> cs = {
      {1, "corpus validation", criterion1},
      {2, "response checking and mutants", criterion2},
      {3, "weighted-derivation sets vs brute force", criterion3},
      {4, "objective comparison", criterion4},
      {5, "desugaring goldens", criterion5},
      {6, "enumeration/membership duality", criterion6},
      {7, "evaluator semantics", criterion7},
      {8, "enumerative solving", criterion8},
      {9, "external-oracle protocol", criterion9},
      {10, "SMT-LIB emission (solver run skipped: none installed)",
       criterion10},
  };
  int failures = 0;
  for (auto& c : cs) {
    try {
      c.run();
      std::printf("criterion %2d: PASS  %s\n", c.id, c.title);
    } catch (const std::exception& e) {
      ++failures;
      std::printf("criterion %2d: FAIL  %s — %s\n", c.id, c.title, e.what());
    }
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
