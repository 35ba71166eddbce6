// Command-line frontend: validate, desugar, check, emit-smt, enumerate,
// weights, solve, oracle-stub.
//
// Exit codes: 0 success, 1 diagnostics / syntactic fail / refuted,
// 2 usage, 3 internal or oracle failure, 4 unknown verdict.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sygus/oracle.hpp"
#include "sygus/verify.hpp"

namespace {

using nlohmann::json;

std::string readFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void printDiagnostic(const sygus::SygusError& e, bool asJson) {
  if (asJson) {
    json j{{"severity", "error"},
           {"code", e.code()},
           {"line", e.span().line},
           {"col", e.span().column},
           {"message", e.what()}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "error " << e.code() << " " << e.span().line << ":"
              << e.span().column << " " << e.what() << "\n";
  }
}

sygus::Session loadSession(const std::string& path, bool permissive) {
  auto es = sygus::readAll(readFile(path));
  sygus::Parser p(sygus::ParserOptions{permissive});
  auto cmds = p.parseCommands(es);
  sygus::Session s(sygus::SessionOptions{permissive});
  s.processAll(cmds);
  return s;
}

sygus::Response loadResponse(const std::string& path,
                             const sygus::Session& s) {
  return sygus::parseResponse(readFile(path), s);
}

std::string renderCommand(const sygus::Command& c, const sygus::Session& s,
                          bool expand) {
  using namespace sygus;
  // special-logic inputs desugar to their base logic
  if (auto* x = asCmd<CmdSetLogic>(c)) {
    if (s.logic.flavor == LogicFlavor::Inv)
      return "(set-logic " + s.logic.base.name + ")";
    if (s.logic.flavor == LogicFlavor::Chc)
      // the expanded clauses define F_body/F_head over the synth predicate
      return "(set-logic " + s.logic.base.name +
             ")\n(set-feature :fwd-decls true)";
  }
  if (expand) {
    if (auto* x = asCmd<CmdConstraint>(c)) {
      std::string out = "(constraint ";
      printTerm(*expandMacros(x->term, s.sig), out);
      return out + ")";
    }
    if (auto* x = asCmd<CmdAssume>(c)) {
      std::string out = "(assume ";
      printTerm(*expandMacros(x->term, s.sig), out);
      return out + ")";
    }
  }
  std::string out;
  printCommand(c, out);
  return out;
}

std::string renderWeightSet(const sygus::WeightSet& ws) {
  auto renderSet = [](const std::set<long long>& xs) {
    std::string out = "{";
    bool first = true;
    for (long long x : xs) {
      if (!first) out.push_back(',');
      first = false;
      out += std::to_string(x);
    }
    return out + "}";
  };
  return "bases=" + renderSet(ws.bases()) + " pumps=" + renderSet(ws.pumps());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SyGuS 2.1 language toolkit"};
  app.require_subcommand(1);
  bool jsonOut = false;
  app.add_flag("--json", jsonOut, "structured diagnostics");

  // validate
  std::string vFile;
  bool vStrict = false, vPermissive = false;
  auto* validate = app.add_subcommand("validate", "parse and validate a file");
  validate->add_option("file", vFile)->required();
  validate->add_flag("--strict", vStrict, "exact standard syntax (default)");
  validate->add_flag("--permissive", vPermissive,
                     "enable documented relaxations");

  // desugar
  std::string dFile;
  bool dExpand = false, dPermissive = false;
  auto* desugar = app.add_subcommand("desugar", "print the core form");
  desugar->add_option("file", dFile)->required();
  desugar->add_flag("--expand", dExpand, "expand macros in formulas");
  desugar->add_flag("--permissive", dPermissive);

  // check
  std::string cFile, cResp;
  bool cPermissive = false;
  sygus::DomainSpec cDomain;
  auto* check = app.add_subcommand("check", "check a solver response");
  check->add_option("file", cFile)->required();
  check->add_option("--solution", cResp)->required();
  check->add_option("--bound", cDomain.intBound, "Int grid bound");
  check->add_option("--samples", cDomain.samples, "random samples");
  check->add_option("--seed", cDomain.seed, "random seed");
  check->add_option("--fuel", cDomain.fuel, "evaluation fuel");
  check->add_flag("--permissive", cPermissive);

  // emit-smt
  std::string eFile, eResp, eOut;
  bool eTrunc = false, ePermissive = false;
  auto* emit = app.add_subcommand("emit-smt", "emit an SMT-LIB query");
  emit->add_option("file", eFile)->required();
  emit->add_option("--solution", eResp)->required();
  emit->add_option("-o,--output", eOut)->required();
  emit->add_flag("--allow-pump-truncation", eTrunc);
  emit->add_flag("--permissive", ePermissive);

  // enumerate
  std::string nFile, nFun;
  std::size_t nMax = 4;
  bool nPermissive = false;
  auto* enumerate = app.add_subcommand("enumerate", "enumerate grammar terms");
  enumerate->add_option("file", nFile)->required();
  enumerate->add_option("--fun", nFun)->required();
  enumerate->add_option("--max-size", nMax)->required();
  enumerate->add_flag("--permissive", nPermissive);

  // weights
  std::string wFile, wFun, wKeyword, wTerm;
  bool wPermissive = false;
  auto* weights = app.add_subcommand("weights", "weighted-derivation set");
  weights->add_option("file", wFile)->required();
  weights->add_option("--fun", wFun)->required();
  weights->add_option("--keyword", wKeyword)->required();
  weights->add_option("--term", wTerm)->required();
  weights->add_flag("--permissive", wPermissive);

  // solve
  std::string sFile;
  sygus::SolveOptions sOpts;
  std::vector<std::string> sOracles;
  bool sPermissive = false;
  auto* solve = app.add_subcommand("solve", "enumerative synthesis");
  solve->add_option("file", sFile)->required();
  solve->add_option("--max-size", sOpts.maxSize);
  solve->add_option("--timeout", sOpts.timeoutSecs);
  solve->add_option("--oracle", sOracles, "oracle name=path mappings");
  solve->add_flag("--permissive", sPermissive);

  // oracle-stub
  std::string oTable;
  bool oFileMode = false;
  std::vector<std::string> oArgs;
  auto* stub = app.add_subcommand("oracle-stub", "table-driven stub oracle");
  stub->add_option("--table", oTable)->required();
  stub->add_flag("--file-mode", oFileMode);
  stub->add_option("args", oArgs, "input values (or the query file)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*validate) {
      try {
        loadSession(vFile, vPermissive);
      } catch (const sygus::SygusError& e) {
        printDiagnostic(e, jsonOut);
        return 1;
      }
      return 0;
    }

    if (*desugar) {
      sygus::Session s{sygus::SessionOptions{}};
      try {
        s = loadSession(dFile, dPermissive);
      } catch (const sygus::SygusError& e) {
        printDiagnostic(e, jsonOut);
        return 1;
      }
      for (auto& c : s.coreCommands)
        std::cout << renderCommand(c, s, dExpand) << "\n";
      return 0;
    }

    if (*check) {
      try {
        sygus::Session s = loadSession(cFile, cPermissive);
        sygus::Response r = loadResponse(cResp, s);
        if (r.kind == sygus::Response::Fail ||
            r.kind == sygus::Response::Infeasible) {
          std::cout << (r.kind == sygus::Response::Fail ? "fail"
                                                        : "infeasible")
                    << " response; nothing to check\n";
          return 0;
        }
        sygus::CheckResult syn = sygus::checkSyntactic(s, r);
        if (!syn.pass) {
          std::cout << "syntactic fail: " << syn.message << "\n";
          return 1;
        }
        sygus::SemanticVerdict v =
            (s.objective && r.kind == sygus::Response::OptSolution)
                ? sygus::checkOptimize(s, r, cDomain)
                : sygus::checkSemanticBounded(s, r, cDomain);
        if (v.kind == sygus::SemanticVerdict::PassedBounded) {
          std::cout << "passed-bounded (" << v.points << " points)\n";
          return 0;
        }
        if (v.kind == sygus::SemanticVerdict::Refuted) {
          std::cout << "refuted: " << v.reason;
          if (!v.counterexample.empty()) {
            std::cout << " at";
            for (auto& [name, val] : v.counterexample)
              std::cout << " " << name << "=" << sygus::printValue(*val);
          }
          std::cout << "\n";
          return 1;
        }
        std::cout << "unknown (" << v.reason << ")\n";
        return 4;
      } catch (const sygus::SygusError& e) {
        printDiagnostic(e, jsonOut);
        return 1;
      }
    }

    if (*emit) {
      try {
        sygus::Session s = loadSession(eFile, ePermissive);
        sygus::Response r = loadResponse(eResp, s);
        std::string smt = sygus::emitSmt(s, r, sygus::EmitOptions{eTrunc});
        std::ofstream out(eOut, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + eOut + "'");
        out << smt;
        return 0;
      } catch (const sygus::SygusError& e) {
        printDiagnostic(e, jsonOut);
        return 1;
      }
    }

    if (*enumerate) {
      try {
        sygus::Session s = loadSession(nFile, nPermissive);
        auto it = s.ruleSets.find(nFun);
        if (it == s.ruleSets.end()) {
          std::cout << "error E-SYMBOL 1:1 no grammar for function '" << nFun
                    << "'\n";
          return 1;
        }
        sygus::EnumResult res = sygus::enumerateGrammar(it->second, 0, nMax);
        if (res.sampled)
          std::cout << "; constant classes sampled, enumeration incomplete\n";
        for (auto& t : res.terms) std::cout << sygus::toString(*t) << "\n";
        return 0;
      } catch (const sygus::SygusError& e) {
        printDiagnostic(e, jsonOut);
        return 1;
      }
    }

    if (*weights) {
      try {
        sygus::Session s = loadSession(wFile, wPermissive);
        auto it = s.ruleSets.find(wFun);
        if (it == s.ruleSets.end()) {
          std::cout << "error E-SYMBOL 1:1 no grammar for function '" << wFun
                    << "'\n";
          return 1;
        }
        std::string kw = wKeyword;
        if (!kw.empty() && kw[0] == ':') kw = kw.substr(1);
        auto es = sygus::readAll(wTerm);
        if (es.size() != 1)
          throw sygus::SygusError("E-TERM", sygus::Span{},
                                  "--term must be a single term");
        sygus::Parser p;
        sygus::TermPtr t = p.parseTerm(*es[0]);
        sygus::WeightAnalyzer wa(it->second, kw);
        std::cout << renderWeightSet(wa.weightSets(0, *t)) << "\n";
        return 0;
      } catch (const sygus::SygusError& e) {
        printDiagnostic(e, jsonOut);
        return 1;
      }
    }

    if (*solve) {
      try {
        sygus::Session s = loadSession(sFile, sPermissive);
        sygus::OracleResolver resolver;
        for (auto& m : sOracles) {
          auto eq = m.find('=');
          if (eq == std::string::npos) {
            std::cerr << "--oracle expects name=path\n";
            return 2;
          }
          resolver.overrides[m.substr(0, eq)] = m.substr(eq + 1);
        }
        sygus::Response r = sygus::solveEnumerative(s, sOpts);
        std::cout << sygus::printResponse(r);
        return r.kind == sygus::Response::Solution ? 0 : 1;
      } catch (const sygus::SygusError& e) {
        printDiagnostic(e, jsonOut);
        return 1;
      }
    }

    if (*stub) {
      sygus::StubTable table;
      try {
        table = sygus::parseStubTable(readFile(oTable));
      } catch (const sygus::SygusError& e) {
        std::cerr << "bad stub table: " << e.what() << "\n";
        return 2;
      }
      std::string out, err;
      int code = sygus::stubOracleRun(table, oFileMode, oArgs, out, err);
      std::cout << out;
      if (!err.empty()) std::cerr << err << "\n";
      return code;
    }
  } catch (const sygus::OracleError& e) {
    std::cerr << "oracle error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
