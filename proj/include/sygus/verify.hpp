#pragma once

// Solver-response checking: parse responses, check syntactic conformance
// (grammar membership), perform bounded semantic falsification of the
// conjecture with weight-symbol substitution, check and compare optimization
// responses, emit SMT-LIB validity queries, and run a baseline enumerative
// solver.

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sygus/parser.hpp"
#include "sygus/printer.hpp"
#include "sygus/session.hpp"
#include "sygus/value.hpp"

namespace sygus {

// ---- responses -----------------------------------------------------------

struct SolutionDef {
  bool recursive = false;  // define-fun-rec
  std::string name;
  std::vector<SortedVar> args;
  Sort returnSort;
  TermPtr body;
};

struct Response {
  enum Kind { Solution, OptSolution, Infeasible, Fail } kind = Fail;
  std::vector<SExprPtr> optValueExprs;  // OptSolution value tuple
  std::vector<SolutionDef> defs;
};

inline Response parseResponse(const std::string& text, const Session& s) {
  auto es = readAll(text);
  Response r;
  if (es.size() == 1 && es[0]->kind == SExprKind::Symbol) {
    if (es[0]->text == "fail") {
      r.kind = Response::Fail;
      return r;
    }
    if (es[0]->text == "infeasible") {
      r.kind = Response::Infeasible;
      return r;
    }
    throw SygusError("E-CMD", es[0]->span,
                     "unexpected response '" + es[0]->text + "'");
  }
  if (es.size() != 1 || !es[0]->isList())
    throw SygusError("E-CMD", es.empty() ? Span{} : es[0]->span,
                     "response must be a single parenthesized list, 'fail' "
                     "or 'infeasible'");
  const SExpr& outer = *es[0];
  Parser p;
  std::size_t idx = 0;
  r.kind = Response::Solution;
  auto isDefList = [](const SExpr& e) {
    return e.isList() && !e.children.empty() &&
           (e.children[0]->isSymbol("define-fun") ||
            e.children[0]->isSymbol("define-fun-rec"));
  };
  if (s.objective && !outer.children.empty() &&
      outer.children[0]->isList() && !isDefList(*outer.children[0])) {
    r.kind = Response::OptSolution;
    for (auto& c : outer.children[0]->children) r.optValueExprs.push_back(c);
    idx = 1;
  }
  for (; idx < outer.children.size(); ++idx) {
    const SExpr& d = *outer.children[idx];
    if (!isDefList(d))
      throw SygusError("E-CMD", d.span,
                       "expected a define-fun or define-fun-rec");
    if (d.children.size() != 5)
      throw SygusError("E-ARITY", d.span,
                       "function definition takes a name, an argument list, "
                       "a sort and a body");
    SolutionDef def;
    def.recursive = d.children[0]->isSymbol("define-fun-rec");
    if (d.children[1]->kind != SExprKind::Symbol)
      throw SygusError("E-SYMBOL", d.children[1]->span, "expected a symbol");
    def.name = d.children[1]->text;
    def.args = p.parseSortedVars(*d.children[2]);
    def.returnSort = p.parseSort(*d.children[3]);
    def.body = p.parseTerm(*d.children[4]);
    r.defs.push_back(std::move(def));
  }

  // well-formedness relative to the session
  if (r.kind == Response::OptSolution) {
    if (!s.objective)
      throw SygusError("E-CMD", outer.span,
                       "value tuple in a response without optimize-synth");
    if (r.optValueExprs.size() != s.objective->terms.size())
      throw SygusError("E-ARITY", outer.span,
                       "response value tuple arity mismatch");
  }
  if (r.defs.size() != s.funs.size())
    throw SygusError("E-CMD", outer.span,
                     "response must define every function to synthesize, in "
                     "declaration order");
  for (std::size_t i = 0; i < r.defs.size(); ++i) {
    SolutionDef& def = r.defs[i];
    const SynthFunEntry& fun = s.funs[i];
    if (def.name != fun.name)
      throw SygusError("E-CMD", outer.span,
                       "expected a definition for '" + fun.name +
                           "', found '" + def.name + "' (definitions must "
                           "follow declaration order)");
    if (def.args.size() != fun.args.size())
      throw SygusError("E-ARITY", outer.span,
                       "argument list of '" + def.name +
                           "' does not match its declaration");
    SortEnv paramEnv;
    for (std::size_t j = 0; j < def.args.size(); ++j) {
      Sort resolved = resolveSort(s.sig, def.args[j].sort);
      if (def.args[j].name != fun.args[j].name ||
          resolved != fun.args[j].sort)
        throw SygusError("E-CMD", outer.span,
                         "argument list of '" + def.name +
                             "' must be identical to the one used when the "
                             "function was declared");
      def.args[j].sort = resolved;
      paramEnv[def.args[j].name] = resolved;
    }
    Sort ret = resolveSort(s.sig, def.returnSort);
    if (ret != fun.returnSort)
      throw SygusError("E-CMD", outer.span,
                       "return sort of '" + def.name +
                           "' does not match its declaration");
    def.returnSort = ret;
    std::set<std::string> bodySyms;
    collectSymbols(*def.body, bodySyms);
    bool occurs = bodySyms.count(def.name) > 0;
    if (occurs && !def.recursive)
      throw SygusError("E-CMD", outer.span,
                       "'" + def.name +
                           "' occurs free in its body; define-fun-rec must "
                           "be used");
    Sort bodySort = sortCheck(*def.body, s.sig, paramEnv);
    if (bodySort != ret)
      throw SygusError("E-RANK", outer.span,
                       "body of '" + def.name + "' has sort " +
                           toString(bodySort) + ", expected " +
                           toString(ret));
  }
  return r;
}

inline std::string printResponse(const Response& r) {
  if (r.kind == Response::Fail) return "fail\n";
  if (r.kind == Response::Infeasible) return "infeasible\n";
  std::string out = "(\n";
  if (r.kind == Response::OptSolution) {
    out += "  (";
    for (std::size_t i = 0; i < r.optValueExprs.size(); ++i) {
      if (i) out.push_back(' ');
      out += toString(*r.optValueExprs[i]);
    }
    out += ")\n";
  }
  for (auto& d : r.defs) {
    out += "  (";
    out += d.recursive ? "define-fun-rec" : "define-fun";
    out += " " + d.name + " ";
    printSortedVars(d.args, out);
    out.push_back(' ');
    printSort(d.returnSort, out);
    out.push_back(' ');
    printTerm(*d.body, out);
    out += ")\n";
  }
  out += ")\n";
  return out;
}

// ---- syntactic check -----------------------------------------------------

struct CheckResult {
  bool pass = true;
  std::string message;
};

inline CheckResult checkSyntactic(const Session& s, const Response& r) {
  CheckResult res;
  if (r.kind != Response::Solution && r.kind != Response::OptSolution) {
    res.pass = false;
    res.message = "response carries no solution";
    return res;
  }
  for (auto& def : r.defs) {
    auto it = s.ruleSets.find(def.name);
    if (it == s.ruleSets.end()) continue;  // grammar-less: sort check only
    GrammarMatcher m(it->second);
    if (!m.generates(0, *def.body)) {
      res.pass = false;
      res.message = "body of '" + def.name +
                    "' is not generated by its grammar: " + toString(*def.body);
      return res;
    }
  }
  return res;
}

// ---- value domains -------------------------------------------------------

struct DomainSpec {
  long long intBound = 50;   // exhaustive Int range [-B, B]
  int samples = 500;         // random points when the grid is too large
  unsigned seed = 0;
  long long fuel = 10000;
  std::size_t gridCap = 20000;  // maximum exhaustive grid size
};

namespace detail {

inline void datatypeValues(const Signature& sig, const std::string& dt,
                           int depth, std::vector<ValuePtr>& out,
                           std::size_t cap);

// Finite helper universe for a primitive sort (used inside datatype values
// and as the small-box domain).
inline std::vector<ValuePtr> smallValues(const Signature& sig,
                                         const Sort& sort) {
  if (isBoolSort(sort)) return {vBool(false), vBool(true)};
  if (isIntSort(sort))
    return {vInt(-2), vInt(-1), vInt(0), vInt(1), vInt(2)};
  if (isRealSort(sort))
    return {vReal(mpq_class(-1)), vReal(mpq_class(0)),
            vReal(mpq_class(1, 2)), vReal(mpq_class(1)),
            vReal(mpq_class(2))};
  if (isStringSort(sort))
    return {vString(""), vString("a"), vString("b"), vString("c")};
  if (isBitVecSort(sort)) {
    unsigned w = bitVecWidth(sort);
    std::vector<ValuePtr> out{vBV(w, 0), vBV(w, 1),
                              vBV(w, (mpz_class(1) << w) - 1)};
    if (w >= 2) out.push_back(vBV(w, 2));
    return out;
  }
  auto it = sig.sorts.find(sort.head.base);
  if (it != sig.sorts.end() && it->second.kind == SortDecl::Datatype) {
    std::vector<ValuePtr> out;
    datatypeValues(sig, sort.head.base, 2, out, 25);
    return out;
  }
  return {};
}

inline void datatypeValues(const Signature& sig, const std::string& dt,
                           int depth, std::vector<ValuePtr>& out,
                           std::size_t cap) {
  const DatatypeDefInfo& def = sig.datatypes.at(dt);
  for (auto& ctor : def.constructors) {
    if (out.size() >= cap) return;
    if (ctor.selectors.empty()) {
      out.push_back(mkValue(Value{DTV{ctor.name, {}}}));
      continue;
    }
    if (depth <= 0) continue;
    // per-argument universes
    std::vector<std::vector<ValuePtr>> argSets;
    bool ok = true;
    for (auto& sel : ctor.selectors) {
      std::vector<ValuePtr> vals;
      auto it = sig.sorts.find(sel.sort.head.base);
      if (it != sig.sorts.end() && it->second.kind == SortDecl::Datatype)
        datatypeValues(sig, sel.sort.head.base, depth - 1, vals, cap);
      else
        vals = smallValues(sig, sel.sort);
      if (vals.empty()) ok = false;
      argSets.push_back(std::move(vals));
    }
    if (!ok) continue;
    std::vector<std::size_t> pick(argSets.size(), 0);
    while (out.size() < cap) {
      DTV v{ctor.name, {}};
      for (std::size_t i = 0; i < argSets.size(); ++i)
        v.args.push_back(argSets[i][pick[i]]);
      out.push_back(mkValue(Value{std::move(v)}));
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < argSets[i].size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
  }
}

// Full bounded universe for a sort; nullopt when the sort is too large to
// enumerate (sampled instead) or unsupported.
inline std::optional<std::vector<ValuePtr>> exhaustiveValues(
    const Signature& sig, const Sort& sort, long long intBound) {
  if (isBoolSort(sort)) return std::vector<ValuePtr>{vBool(false), vBool(true)};
  if (isIntSort(sort)) {
    std::vector<ValuePtr> out;
    for (long long v = -intBound; v <= intBound; ++v) out.push_back(vInt(v));
    return out;
  }
  if (isBitVecSort(sort)) {
    unsigned w = bitVecWidth(sort);
    if (w > 8) return std::nullopt;
    std::vector<ValuePtr> out;
    for (unsigned long v = 0; v < (1ul << w); ++v)
      out.push_back(vBV(w, mpz_class(static_cast<long>(v))));
    return out;
  }
  if (isStringSort(sort)) {
    std::vector<ValuePtr> out{vString("")};
    std::vector<std::string> layer{""};
    const char* alpha = "abc";
    for (int len = 1; len <= 3; ++len) {
      std::vector<std::string> next;
      for (auto& s : layer)
        for (int c = 0; c < 3; ++c) {
          next.push_back(s + alpha[c]);
          out.push_back(vString(next.back()));
        }
      layer = std::move(next);
    }
    return out;
  }
  auto it = sig.sorts.find(sort.head.base);
  if (it != sig.sorts.end() && it->second.kind == SortDecl::Datatype) {
    std::vector<ValuePtr> out;
    datatypeValues(sig, sort.head.base, 3, out, 400);
    return out;
  }
  return std::nullopt;
}

inline ValuePtr randomValue(std::mt19937& rng, const Signature& sig,
                            const Sort& sort) {
  auto pick = [&](long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  };
  if (isBoolSort(sort)) return vBool(pick(0, 1) == 1);
  if (isIntSort(sort)) return vInt(pick(-50, 50));
  if (isRealSort(sort)) return vReal(mpq_class(pick(-50, 50), pick(1, 10)));
  if (isBitVecSort(sort)) {
    unsigned w = bitVecWidth(sort);
    mpz_class bits = 0;
    for (unsigned i = 0; i < w; i += 16)
      bits = (bits << 16) | mpz_class(pick(0, 65535));
    return vBV(w, bits);
  }
  if (isStringSort(sort)) {
    int len = static_cast<int>(pick(0, 3));
    std::string s;
    for (int i = 0; i < len; ++i)
      s.push_back(static_cast<char>('a' + pick(0, 2)));
    return vString(s);
  }
  auto it = sig.sorts.find(sort.head.base);
  if (it != sig.sorts.end() && it->second.kind == SortDecl::Datatype) {
    std::vector<ValuePtr> out;
    datatypeValues(sig, sort.head.base, 3, out, 100);
    if (out.empty()) return nullptr;
    return out[static_cast<std::size_t>(pick(0, static_cast<long>(out.size()) - 1))];
  }
  return nullptr;
}

}  // namespace detail

// ---- semantic check ------------------------------------------------------

struct SemanticVerdict {
  enum Kind { Refuted, PassedBounded, Unknown } kind = PassedBounded;
  std::string reason;  // unknown: out-of-fuel | undefined | unsupported
  std::vector<std::pair<std::string, ValuePtr>> counterexample;
  std::size_t points = 0;
};

// Pinned interpretations for function-sorted (oracle-valued) universal
// variables: variable name -> printed argument tuple -> reply value term.
using OracleInterps = std::map<std::string, std::map<std::string, TermPtr>>;

inline void collectWeightSymbols(
    const Term& t, const Signature& sig,
    std::set<std::pair<std::string, std::string>>& out) {
  if (auto* id = asIdent(t)) {
    if (id->id.indices.size() == 1 && sig.weightKeywords.count(id->id.base) &&
        sig.synthFuns.count(id->id.indices[0]))
      out.insert({id->id.base, id->id.indices[0]});
    return;
  }
  if (auto* a = asApply(t)) {
    for (auto& arg : a->args) collectWeightSymbols(*arg, sig, out);
    return;
  }
  if (auto* an = asAnnotated(t)) collectWeightSymbols(*an->body, sig, out);
  if (auto* b = asBinder(t)) collectWeightSymbols(*b->body, sig, out);
  if (auto* l = asLet(t)) {
    for (auto& [name, bt] : l->bindings) collectWeightSymbols(*bt, sig, out);
    collectWeightSymbols(*l->body, sig, out);
  }
}

inline TermPtr replaceWeightSymbols(
    const TermPtr& t, const Signature& sig,
    const std::map<std::pair<std::string, std::string>, TermPtr>& repl) {
  if (auto* id = asIdent(*t)) {
    if (id->id.indices.size() == 1 && sig.weightKeywords.count(id->id.base)) {
      auto it = repl.find({id->id.base, id->id.indices[0]});
      if (it != repl.end()) return it->second;
    }
    return t;
  }
  if (asLiteral(*t)) return t;
  if (auto* a = asApply(*t)) {
    std::vector<TermPtr> args;
    for (auto& arg : a->args)
      args.push_back(replaceWeightSymbols(arg, sig, repl));
    return mkApply(a->head, std::move(args), t->span);
  }
  if (auto* an = asAnnotated(*t))
    return mkTerm(Term{
        TermAnnotated{replaceWeightSymbols(an->body, sig, repl), an->attrs},
        t->span});
  if (auto* b = asBinder(*t))
    return mkTerm(Term{
        TermBinder{b->kind, b->binders,
                   replaceWeightSymbols(b->body, sig, repl)},
        t->span});
  auto* l = asLet(*t);
  std::vector<std::pair<std::string, TermPtr>> bindings;
  for (auto& [name, bt] : l->bindings)
    bindings.emplace_back(name, replaceWeightSymbols(bt, sig, repl));
  return mkTerm(Term{
      TermLet{std::move(bindings), replaceWeightSymbols(l->body, sig, repl)},
      t->span});
}

inline bool mentionsAnySymbol(const Term& t, const std::set<std::string>& set) {
  std::set<std::string> used;
  collectSymbols(t, used);
  for (auto& s : set)
    if (used.count(s)) return true;
  return false;
}

namespace detail {

// Replaces applications of oracle-valued variables with their pinned reply
// terms; sets `unresolved` when an occurrence cannot be replaced.
inline TermPtr resolveOracleApps(const TermPtr& t, const Session& s,
                                 const OracleInterps& interps, Evaluator& ev,
                                 long long fuel, bool& unresolved) {
  if (auto* id = asIdent(*t)) {
    if (!id->id.indexed() && s.oracleValued.count(id->id.base))
      unresolved = true;
    return t;
  }
  if (asLiteral(*t)) return t;
  if (auto* a = asApply(*t)) {
    std::vector<TermPtr> args;
    for (auto& arg : a->args)
      args.push_back(resolveOracleApps(arg, s, interps, ev, fuel, unresolved));
    if (!a->head.indexed() && s.oracleValued.count(a->head.base)) {
      auto it = interps.find(a->head.base);
      if (it != interps.end()) {
        std::string key = "(";
        bool ok = true;
        for (std::size_t i = 0; i < args.size(); ++i) {
          ev.resetFuel(fuel);
          EvalResult r = ev.eval(*args[i], {});
          if (!r.isOk()) {
            ok = false;
            break;
          }
          if (i) key.push_back(' ');
          key += printValue(*r.value);
        }
        key.push_back(')');
        if (ok) {
          auto row = it->second.find(key);
          if (row != it->second.end()) return row->second;
        }
      }
      unresolved = true;
    }
    return mkApply(a->head, std::move(args), t->span);
  }
  if (auto* an = asAnnotated(*t))
    return mkTerm(Term{
        TermAnnotated{
            resolveOracleApps(an->body, s, interps, ev, fuel, unresolved),
            an->attrs},
        t->span});
  if (auto* b = asBinder(*t)) {
    if (mentionsAnySymbol(*b->body, s.oracleValued)) unresolved = true;
    return t;
  }
  auto* l = asLet(*t);
  std::vector<std::pair<std::string, TermPtr>> bindings;
  for (auto& [name, bt] : l->bindings)
    bindings.emplace_back(
        name, resolveOracleApps(bt, s, interps, ev, fuel, unresolved));
  return mkTerm(Term{
      TermLet{std::move(bindings),
              resolveOracleApps(l->body, s, interps, ev, fuel, unresolved)},
      t->span});
}

struct Formula {
  TermPtr term;
  bool unresolved = false;  // still mentions an oracle-valued variable
};

}  // namespace detail

inline SemanticVerdict checkSemanticBounded(
    const Session& s, const Response& r, const DomainSpec& d = {},
    const std::vector<TermPtr>& extraConstraints = {},
    const OracleInterps& interps = {}) {
  if (r.kind != Response::Solution && r.kind != Response::OptSolution) {
    SemanticVerdict v;
    v.kind = SemanticVerdict::Unknown;
    v.reason = "unsupported";
    return v;
  }
  Evaluator ev(s.sig, d.fuel);
  for (auto& [name, m] : s.sig.macros)
    ev.define(name, Definition{m.params, m.body, false});
  for (auto& def : r.defs)
    ev.define(def.name, Definition{def.args, def.body, def.recursive});

  // resolve oracle applications against the pinned interpretations
  // macro expansion first: weight symbols and oracle applications may be
  // hidden inside macro bodies
  std::vector<detail::Formula> alphas, phis;
  for (auto& a : s.assumptions) {
    detail::Formula f;
    f.term = expandMacros(a.term, s.sig);
    if (!s.oracleValued.empty())
      f.term = detail::resolveOracleApps(f.term, s, interps, ev, d.fuel,
                                         f.unresolved);
    alphas.push_back(std::move(f));
  }
  auto addPhi = [&](const TermPtr& t) {
    detail::Formula f;
    f.term = expandMacros(t, s.sig);
    if (!s.oracleValued.empty())
      f.term = detail::resolveOracleApps(f.term, s, interps, ev, d.fuel,
                                         f.unresolved);
    phis.push_back(std::move(f));
  };
  for (auto& c : s.constraints) addPhi(c.term);
  for (auto& c : extraConstraints) addPhi(c);

  // weight symbols: enumerate candidate global substitutions
  std::set<std::pair<std::string, std::string>> wsyms;
  for (auto& f : alphas) collectWeightSymbols(*f.term, s.sig, wsyms);
  for (auto& f : phis) collectWeightSymbols(*f.term, s.sig, wsyms);
  std::vector<std::pair<std::string, std::string>> symList(wsyms.begin(),
                                                           wsyms.end());
  std::vector<std::vector<long long>> candidates;
  for (auto& [kw, fun] : symList) {
    auto rsIt = s.ruleSets.find(fun);
    const SolutionDef* def = nullptr;
    for (auto& x : r.defs)
      if (x.name == fun) def = &x;
    if (rsIt == s.ruleSets.end() || !def) {
      SemanticVerdict v;
      v.kind = SemanticVerdict::Unknown;
      v.reason = "unsupported";
      return v;
    }
    WeightAnalyzer wa(rsIt->second, kw);
    WeightSet ws = wa.weightSets(0, *def->body);
    std::set<long long> cand;
    for (auto& part : ws.parts) {
      cand.insert(part.base);
      for (long long p : part.pumps) cand.insert(part.base + p);
    }
    for (long long k = 0; k <= 64; ++k)
      if (weightAchievable(ws, k)) cand.insert(k);
    if (cand.empty()) {
      // body not generated by the grammar: no consistent interpretation
      SemanticVerdict v;
      v.kind = SemanticVerdict::Refuted;
      v.reason = "no derivation of the body of '" + fun +
                 "' exists, so '(_ " + kw + " " + fun +
                 ")' has no interpretation";
      return v;
    }
    candidates.push_back({cand.begin(), cand.end()});
  }

  // core bounded check for one fixed weight substitution
  std::mt19937 rng(d.seed);
  auto runOnce =
      [&](const std::map<std::pair<std::string, std::string>, TermPtr>& repl)
      -> SemanticVerdict {
    SemanticVerdict verdict;
    std::vector<TermPtr> as, ps;
    for (auto& f : alphas) {
      if (f.unresolved) {
        verdict.kind = SemanticVerdict::Unknown;
        verdict.reason = "unsupported";
        return verdict;
      }
      as.push_back(repl.empty() ? f.term
                                : replaceWeightSymbols(f.term, s.sig, repl));
    }
    std::set<std::string> alphaVars;
    for (auto& a : as)
      for (auto& v : freeVars(*a)) alphaVars.insert(v);

    bool anyUnknown = false;
    std::string unknownReason;
    for (auto& f : phis) {
      if (f.unresolved) {
        anyUnknown = true;
        unknownReason = "unsupported";
        continue;
      }
      TermPtr phi = repl.empty()
                        ? f.term
                        : replaceWeightSymbols(f.term, s.sig, repl);
      // relevant universal variables
      std::set<std::string> fv = freeVars(*phi);
      fv.insert(alphaVars.begin(), alphaVars.end());
      std::vector<SortedVar> vars;
      bool unsupported = false;
      for (auto& uv : s.universalVars) {
        if (!fv.count(uv.name)) continue;
        if (s.oracleValued.count(uv.name) || uv.sort.isFunctionSort()) {
          unsupported = true;
          break;
        }
        vars.push_back(uv);
      }
      if (unsupported) {
        anyUnknown = true;
        unknownReason = "unsupported";
        continue;
      }
      // build the point list
      std::vector<std::vector<ValuePtr>> domains;
      bool exhaustive = true;
      std::size_t product = 1;
      for (auto& v : vars) {
        auto ex = detail::exhaustiveValues(s.sig, v.sort, d.intBound);
        if (!ex) {
          exhaustive = false;
          break;
        }
        product *= ex->size();
        if (product > d.gridCap) {
          exhaustive = false;
          break;
        }
        domains.push_back(std::move(*ex));
      }
      std::vector<ValueEnv> points;
      if (exhaustive) {
        std::vector<std::size_t> pick(vars.size(), 0);
        while (true) {
          ValueEnv env;
          for (std::size_t i = 0; i < vars.size(); ++i)
            env[vars[i].name] = domains[i][pick[i]];
          points.push_back(std::move(env));
          std::size_t i = 0;
          for (; i < vars.size(); ++i) {
            if (++pick[i] < domains[i].size()) break;
            pick[i] = 0;
          }
          if (i == vars.size()) break;
          if (vars.empty()) break;
        }
      } else {
        // small box plus random samples
        domains.clear();
        std::size_t boxSize = 1;
        bool boxOk = true;
        for (auto& v : vars) {
          auto small = detail::smallValues(s.sig, v.sort);
          if (small.empty()) {
            boxOk = false;
            break;
          }
          boxSize *= small.size();
          if (boxSize > d.gridCap) {
            boxOk = false;
            break;
          }
          domains.push_back(std::move(small));
        }
        if (boxOk && !vars.empty()) {
          std::vector<std::size_t> pick(vars.size(), 0);
          while (true) {
            ValueEnv env;
            for (std::size_t i = 0; i < vars.size(); ++i)
              env[vars[i].name] = domains[i][pick[i]];
            points.push_back(std::move(env));
            std::size_t i = 0;
            for (; i < vars.size(); ++i) {
              if (++pick[i] < domains[i].size()) break;
              pick[i] = 0;
            }
            if (i == vars.size()) break;
          }
        }
        for (int k = 0; k < d.samples; ++k) {
          ValueEnv env;
          bool ok = true;
          for (auto& v : vars) {
            ValuePtr val = detail::randomValue(rng, s.sig, v.sort);
            if (!val) {
              ok = false;
              break;
            }
            env[v.name] = val;
          }
          if (!ok) {
            anyUnknown = true;
            unknownReason = "unsupported";
            break;
          }
          points.push_back(std::move(env));
        }
      }
      if (points.empty()) points.push_back({});

      for (auto& env : points) {
        // assumptions first: skip points where some assumption is false
        bool vacuous = false, badAlpha = false;
        EvalStatus alphaStatus = EvalStatus::Ok;
        for (auto& a : as) {
          ev.resetFuel(d.fuel);
          EvalResult res = ev.eval(*a, env);
          if (!res.isOk()) {
            badAlpha = true;
            alphaStatus = res.status;
            break;
          }
          auto* b = asValue<BoolV>(*res.value);
          if (!b) {
            badAlpha = true;
            alphaStatus = EvalStatus::Undefined;
            break;
          }
          if (!b->v) {
            vacuous = true;
            break;
          }
        }
        if (badAlpha) {
          anyUnknown = true;
          unknownReason = alphaStatus == EvalStatus::OutOfFuel ? "out-of-fuel"
                          : alphaStatus == EvalStatus::Undefined
                              ? "undefined"
                              : "unsupported";
          continue;
        }
        ++verdict.points;
        if (vacuous) continue;
        ev.resetFuel(d.fuel);
        EvalResult res = ev.eval(*phi, env);
        if (!res.isOk()) {
          anyUnknown = true;
          unknownReason = res.status == EvalStatus::OutOfFuel ? "out-of-fuel"
                          : res.status == EvalStatus::Undefined
                              ? "undefined"
                              : "unsupported";
          continue;
        }
        auto* b = asValue<BoolV>(*res.value);
        if (!b) {
          anyUnknown = true;
          unknownReason = "undefined";
          continue;
        }
        if (!b->v) {
          verdict.kind = SemanticVerdict::Refuted;
          for (auto& v : vars)
            verdict.counterexample.emplace_back(v.name, env.at(v.name));
          verdict.reason = "constraint " + toString(*f.term) + " is false";
          return verdict;
        }
      }
    }
    if (anyUnknown) {
      verdict.kind = SemanticVerdict::Unknown;
      verdict.reason = unknownReason;
    }
    return verdict;
  };

  if (symList.empty()) return runOnce({});

  // enumerate weight substitutions; pass if any choice passes everywhere
  std::size_t total = 1;
  for (auto& c : candidates) {
    total *= c.size();
    if (total > 5000) {
      SemanticVerdict v;
      v.kind = SemanticVerdict::Unknown;
      v.reason = "unsupported";
      return v;
    }
  }
  std::optional<SemanticVerdict> firstRefuted, firstUnknown;
  std::vector<std::size_t> pick(symList.size(), 0);
  while (true) {
    std::map<std::pair<std::string, std::string>, TermPtr> repl;
    for (std::size_t i = 0; i < symList.size(); ++i) {
      long long k = candidates[i][pick[i]];
      repl[symList[i]] = k >= 0 ? mkNumeral(std::to_string(k))
                                : mkApply("-", {mkNumeral(
                                              std::to_string(-k))});
    }
    SemanticVerdict v = runOnce(repl);
    if (v.kind == SemanticVerdict::PassedBounded) return v;
    if (v.kind == SemanticVerdict::Refuted && !firstRefuted) firstRefuted = v;
    if (v.kind == SemanticVerdict::Unknown && !firstUnknown) firstUnknown = v;
    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < candidates[i].size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) break;
  }
  if (firstUnknown) return *firstUnknown;
  return *firstRefuted;
}

// ---- optimization responses ----------------------------------------------

inline SemanticVerdict checkOptimize(const Session& s, const Response& r,
                                     const DomainSpec& d = {}) {
  if (!s.objective)
    throw SygusError("E-CMD", Span{}, "no optimize-synth command in the input");
  if (r.kind != Response::OptSolution)
    throw SygusError("E-CMD", Span{},
                     "response carries no optimization value tuple");
  std::vector<TermPtr> extra;
  for (std::size_t j = 0; j < s.objective->terms.size(); ++j) {
    const TermPtr& sj = s.objective->terms[j];
    Sort sort = sortCheck(*sj, s.sig, s.env());
    ValuePtr cj = parseValue(*r.optValueExprs[j], &sort);
    extra.push_back(mkApply("=", {sj, valueToTerm(*cj)}));
  }
  return checkSemanticBounded(s, r, d, extra);
}

enum class CompareOutcome { APreferred, BPreferred, Equal, Incomparable };

// Per the objective attributes: value orderings from :min/:max annotations,
// tuple ordering :lexico or (default) pointwise dominance.
inline CompareOutcome compareSolutions(const CmdOptimizeSynth& obj,
                                       const std::vector<ValuePtr>& a,
                                       const std::vector<ValuePtr>& b) {
  if (a.size() != obj.terms.size() || b.size() != obj.terms.size())
    throw SygusError("E-ARITY", Span{}, "objective tuple arity mismatch");
  auto direction = [&](std::size_t j) -> int {
    if (auto* an = asAnnotated(*obj.terms[j])) {
      for (auto& attr : an->attrs) {
        if (attr.keyword == ":max") return 1;
        if (attr.keyword == ":min") return -1;
      }
    }
    return 0;
  };
  // +1 a preferred, -1 b preferred, 0 equal, 2 incomparable
  auto cmpPos = [&](std::size_t j) -> int {
    const Value& va = *a[j];
    const Value& vb = *b[j];
    if (valueEqual(va, vb)) return 0;
    int dir = direction(j);
    if (dir == 0) return 2;
    bool ordered = (asValue<IntV>(va) && asValue<IntV>(vb)) ||
                   (asValue<RealV>(va) && asValue<RealV>(vb));
    if (!ordered)
      throw SygusError("E-ATTR", Span{},
                       "objective ordering on a sort with no default order");
    int c = valueCompare(va, vb);
    return (dir > 0 ? c > 0 : c < 0) ? 1 : -1;
  };
  bool lexico = false;
  for (auto& attr : obj.attrs)
    if (attr.keyword == ":lexico") lexico = true;
  if (lexico) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      int c = cmpPos(j);
      if (c == 0) continue;
      if (c == 2) return CompareOutcome::Incomparable;
      return c > 0 ? CompareOutcome::APreferred : CompareOutcome::BPreferred;
    }
    return CompareOutcome::Equal;
  }
  // pointwise dominance
  bool aBetter = false, bBetter = false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    int c = cmpPos(j);
    if (c == 2) return CompareOutcome::Incomparable;
    if (c > 0) aBetter = true;
    if (c < 0) bBetter = true;
  }
  if (aBetter && bBetter) return CompareOutcome::Incomparable;
  if (aBetter) return CompareOutcome::APreferred;
  if (bBetter) return CompareOutcome::BPreferred;
  return CompareOutcome::Equal;
}

// ---- SMT-LIB emission ----------------------------------------------------

struct EmitOptions {
  bool allowPumpTruncation = false;
};

namespace detail {

inline TermPtr conjoin(const std::vector<TermPtr>& ts) {
  if (ts.empty()) return mkBool(true);
  if (ts.size() == 1) return ts[0];
  return mkApply("and", ts);
}

}  // namespace detail

inline std::string emitSmt(const Session& s, const Response& r,
                           const EmitOptions& opts = {}) {
  if (r.kind != Response::Solution && r.kind != Response::OptSolution)
    throw SygusError("E-CMD", Span{}, "response carries no solution to check");
  for (auto& c : s.constraints)
    if (mentionsAnySymbol(*c.term, s.oracleValued))
      throw SygusError("E-CMD", c.span,
                       "cannot emit a query over oracle-valued variables");
  for (auto& a : s.assumptions)
    if (mentionsAnySymbol(*a.term, s.oracleValued))
      throw SygusError("E-CMD", a.span,
                       "cannot emit a query over oracle-valued variables");

  std::string out;
  std::string logicName = s.logic.base.name;
  if (logicName == "Core") logicName = "ALL";
  if (logicName == "S") logicName = "SLIA";
  out += "(set-logic " + logicName + ")\n";

  // sorts, datatypes and macros in declaration order; solution definitions
  // are emitted before the macros, with macro applications expanded out of
  // the solution bodies so that no forward reference can occur
  std::string decls, macros;
  for (auto& c : s.coreCommands) {
    if (auto* x = asCmd<CmdDeclareSort>(c)) {
      decls += "(declare-sort " + x->name + " " + std::to_string(x->arity) +
               ")\n";
    } else if (auto* x = asCmd<CmdDeclareDatatype>(c)) {
      std::string body;
      printDatatypeDecl(x->decl, body);
      decls += "(declare-datatype " + x->name + " " + body + ")\n";
    } else if (auto* x = asCmd<CmdDeclareDatatypes>(c)) {
      std::string text;
      printCommand(c, text);
      decls += text + "\n";
    } else if (asCmd<CmdDefineFun>(c)) {
      std::string text;
      printCommand(c, text);
      macros += text + "\n";
    }
  }
  out += decls;
  for (auto& def : r.defs) {
    out += "(";
    out += def.recursive ? "define-fun-rec" : "define-fun";
    out += " " + def.name + " ";
    printSortedVars(def.args, out);
    out.push_back(' ');
    printSort(def.returnSort, out);
    out.push_back(' ');
    TermPtr body = expandMacros(def.body, s.sig);
    printTerm(*body, out);
    out += ")\n";
  }
  out += macros;

  for (auto& v : s.universalVars) {
    out += "(declare-const " + v.name + " ";
    printSort(v.sort, out);
    out += ")\n";
  }

  // weight symbols become fresh constrained integer constants
  std::set<std::pair<std::string, std::string>> wsyms;
  for (auto& c : s.constraints) collectWeightSymbols(*c.term, s.sig, wsyms);
  for (auto& a : s.assumptions) collectWeightSymbols(*a.term, s.sig, wsyms);
  std::map<std::pair<std::string, std::string>, TermPtr> repl;
  auto taken = [&] {
    std::set<std::string> t;
    for (auto& [k, v] : s.sig.funs) t.insert(k);
    for (auto& uv : s.universalVars) t.insert(uv.name);
    return t;
  }();
  for (auto& [kw, fun] : wsyms) {
    auto rsIt = s.ruleSets.find(fun);
    const SolutionDef* def = nullptr;
    for (auto& x : r.defs)
      if (x.name == fun) def = &x;
    if (rsIt == s.ruleSets.end() || !def)
      throw SygusError("E-CMD", Span{},
                       "weight symbol over a grammar-less function");
    WeightAnalyzer wa(rsIt->second, kw);
    WeightSet ws = wa.weightSets(0, *def->body);
    if (!ws.pumps().empty() && !opts.allowPumpTruncation)
      throw SygusError("E-CMD", Span{},
                       "weight set of '" + fun + "' w.r.t. ':" + kw +
                           "' has pump values; rerun with pump truncation "
                           "enabled to encode bases only");
    std::string name = freshName(kw + "." + fun, taken);
    taken.insert(name);
    repl[{kw, fun}] = mkVar(name);
    out += "(declare-const " + name + " Int)\n";
    if (!ws.pumps().empty()) out += "; pump values truncated\n";
    std::vector<TermPtr> disj;
    for (long long b : ws.bases())
      disj.push_back(mkApply(
          "=", {mkVar(name),
                b >= 0 ? mkNumeral(std::to_string(b))
                       : mkApply("-", {mkNumeral(std::to_string(-b))})}));
    TermPtr any = disj.empty()  ? mkBool(false)
                  : disj.size() == 1 ? disj[0]
                                     : mkApply("or", disj);
    out += "(assert ";
    printTerm(*any, out);
    out += ")\n";
  }

  std::vector<TermPtr> as, ps;
  for (auto& a : s.assumptions)
    as.push_back(repl.empty() ? a.term
                              : replaceWeightSymbols(a.term, s.sig, repl));
  for (auto& c : s.constraints)
    ps.push_back(repl.empty() ? c.term
                              : replaceWeightSymbols(c.term, s.sig, repl));
  TermPtr body = as.empty()
                     ? detail::conjoin(ps)
                     : mkApply("=>", {detail::conjoin(as), detail::conjoin(ps)});
  out += "(assert ";
  printTerm(*mkApply("not", {body}), out);
  out += ")\n(check-sat)\n";
  return out;
}

// ---- enumerative solver --------------------------------------------------

struct SolveOptions {
  std::size_t maxSize = 7;
  double timeoutSecs = 120;
  DomainSpec domain;
};

namespace detail {

inline void collectFunApps(const Term& t, const std::string& f,
                           std::vector<std::vector<TermPtr>>& out) {
  if (auto* a = asApply(t)) {
    if (a->head.is(f)) {
      bool allLit = true;
      for (auto& arg : a->args)
        if (!isLiteralValueTerm(*arg)) allLit = false;
      if (allLit) out.push_back(a->args);
    }
    for (auto& arg : a->args) collectFunApps(*arg, f, out);
    return;
  }
  if (auto* an = asAnnotated(t)) collectFunApps(*an->body, f, out);
  if (auto* b = asBinder(t)) collectFunApps(*b->body, f, out);
  if (auto* l = asLet(t)) {
    for (auto& [name, bt] : l->bindings) collectFunApps(*bt, f, out);
    collectFunApps(*l->body, f, out);
  }
}

}  // namespace detail

inline Response solveEnumerative(const Session& s,
                                 const SolveOptions& opts = {}) {
  Response fail;
  fail.kind = Response::Fail;
  if (s.funs.size() != 1) return fail;
  const SynthFunEntry& fun = s.funs[0];
  auto rsIt = s.ruleSets.find(fun.name);
  if (rsIt == s.ruleSets.end()) return fail;
  const RuleSet& rs = rsIt->second;
  const std::size_t n = rs.nonterminals.size();
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(opts.timeoutSecs));
  std::mt19937 rng(opts.domain.seed);

  Evaluator ev(s.sig, opts.domain.fuel);
  for (auto& [name, m] : s.sig.macros)
    ev.define(name, Definition{m.params, m.body, false});

  // sample argument tuples for observational-equivalence signatures
  std::vector<ValueEnv> sigEnvs;
  {
    std::vector<std::vector<TermPtr>> apps;
    for (auto& c : s.constraints) detail::collectFunApps(*c.term, fun.name, apps);
    std::set<std::string> seen;
    for (auto& args : apps) {
      ValueEnv env;
      std::string key;
      bool ok = args.size() == fun.args.size();
      for (std::size_t i = 0; ok && i < args.size(); ++i) {
        ev.resetFuel(opts.domain.fuel);
        EvalResult r = ev.eval(*args[i], {});
        if (!r.isOk()) {
          ok = false;
          break;
        }
        env[fun.args[i].name] = r.value;
        key += printValue(*r.value) + "|";
      }
      if (ok && seen.insert(key).second) sigEnvs.push_back(std::move(env));
    }
    if (sigEnvs.empty()) {
      // sampled tuples over the parameter sorts
      std::vector<std::vector<ValuePtr>> small;
      std::size_t product = 1;
      bool boxOk = !fun.args.empty();
      for (auto& a : fun.args) {
        auto vals = detail::smallValues(s.sig, a.sort);
        if (vals.empty()) {
          boxOk = false;
          break;
        }
        product *= vals.size();
        small.push_back(std::move(vals));
      }
      if (boxOk && product <= 36) {
        std::vector<std::size_t> pick(fun.args.size(), 0);
        while (true) {
          ValueEnv env;
          for (std::size_t i = 0; i < fun.args.size(); ++i)
            env[fun.args[i].name] = small[i][pick[i]];
          sigEnvs.push_back(std::move(env));
          std::size_t i = 0;
          for (; i < pick.size(); ++i) {
            if (++pick[i] < small[i].size()) break;
            pick[i] = 0;
          }
          if (i == pick.size()) break;
        }
      }
      for (int k = 0; k < 10 && boxOk; ++k) {
        ValueEnv env;
        bool ok = true;
        for (auto& a : fun.args) {
          ValuePtr v = detail::randomValue(rng, s.sig, a.sort);
          if (!v) {
            ok = false;
            break;
          }
          env[a.name] = v;
        }
        if (ok) sigEnvs.push_back(std::move(env));
      }
      if (sigEnvs.empty()) sigEnvs.push_back({});
    }
    if (sigEnvs.size() > 36) sigEnvs.resize(36);
  }

  auto signature = [&](const Term& t) {
    std::string key;
    for (auto& env : sigEnvs) {
      ev.resetFuel(2000);
      EvalResult r = ev.eval(t, env);
      switch (r.status) {
        case EvalStatus::Ok: key += printValue(*r.value); break;
        case EvalStatus::Undefined: key += "#u"; break;
        case EvalStatus::OutOfFuel: key += "#f"; break;
        case EvalStatus::Unsupported: key += "#s"; break;
      }
      key.push_back('|');
    }
    return key;
  };

  // quick candidate filter points over the universal variables
  std::vector<ValueEnv> filterEnvs;
  {
    std::vector<std::vector<ValuePtr>> small;
    std::size_t product = 1;
    bool boxOk = true;
    std::vector<SortedVar> uvars;
    for (auto& v : s.universalVars) {
      if (v.sort.isFunctionSort()) continue;
      uvars.push_back(v);
      auto vals = detail::smallValues(s.sig, v.sort);
      if (vals.empty()) {
        boxOk = false;
        break;
      }
      product *= vals.size();
      if (product > 200) {
        boxOk = false;
        break;
      }
      small.push_back(std::move(vals));
    }
    if (boxOk && !uvars.empty()) {
      std::vector<std::size_t> pick(uvars.size(), 0);
      while (true) {
        ValueEnv env;
        for (std::size_t i = 0; i < uvars.size(); ++i)
          env[uvars[i].name] = small[i][pick[i]];
        filterEnvs.push_back(std::move(env));
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
          if (++pick[i] < small[i].size()) break;
          pick[i] = 0;
        }
        if (i == pick.size()) break;
      }
      for (int k = 0; k < 25; ++k) {
        ValueEnv env;
        bool ok = true;
        for (auto& v : uvars) {
          ValuePtr val = detail::randomValue(rng, s.sig, v.sort);
          if (!val) {
            ok = false;
            break;
          }
          env[v.name] = val;
        }
        if (ok) filterEnvs.push_back(std::move(env));
      }
    }
    if (filterEnvs.empty()) filterEnvs.push_back({});
  }

  // formulas used by the quick filter (skip weight-dependent ones)
  std::vector<TermPtr> filterAlphas, filterPhis;
  {
    std::set<std::pair<std::string, std::string>> wsyms;
    for (auto& a : s.assumptions) {
      wsyms.clear();
      collectWeightSymbols(*a.term, s.sig, wsyms);
      if (wsyms.empty() && !mentionsAnySymbol(*a.term, s.oracleValued))
        filterAlphas.push_back(a.term);
    }
    for (auto& c : s.constraints) {
      wsyms.clear();
      collectWeightSymbols(*c.term, s.sig, wsyms);
      if (wsyms.empty() && !mentionsAnySymbol(*c.term, s.oracleValued))
        filterPhis.push_back(c.term);
    }
  }

  auto tryCandidate = [&](const TermPtr& body) -> bool {
    ev.define(fun.name, Definition{fun.args, body, false});
    for (auto& env : filterEnvs) {
      bool vacuous = false, bad = false;
      for (auto& a : filterAlphas) {
        ev.resetFuel(opts.domain.fuel);
        EvalResult r = ev.eval(*a, env);
        if (!r.isOk()) {
          bad = true;
          break;
        }
        auto* b = asValue<BoolV>(*r.value);
        if (!b) {
          bad = true;
          break;
        }
        if (!b->v) {
          vacuous = true;
          break;
        }
      }
      if (bad) return false;
      if (vacuous) continue;
      for (auto& phi : filterPhis) {
        ev.resetFuel(opts.domain.fuel);
        EvalResult r = ev.eval(*phi, env);
        if (!r.isOk()) return false;
        auto* b = asValue<BoolV>(*r.value);
        if (!b || !b->v) return false;
      }
    }
    ev.definitions().erase(fun.name);
    return true;
  };

  auto unitReach = detail::unitClosure(rs);
  std::vector<std::vector<std::vector<TermPtr>>> terms(
      n, std::vector<std::vector<TermPtr>>(opts.maxSize + 1));
  std::vector<std::set<std::string>> seenSig(n);

  struct Expander {
    const RuleSet& rs;
    const std::vector<std::vector<std::vector<TermPtr>>>& terms;
    std::vector<std::vector<TermPtr>> expand(const Term& base,
                                             std::size_t budget) {
      std::vector<std::vector<TermPtr>> out(budget + 1);
      const Term& b = detail::stripAnnotations(base);
      if (auto* id = asIdent(b)) {
        if (!id->id.indexed()) {
          int nt = rs.indexOf(id->id.base);
          if (nt >= 0) {
            for (std::size_t sz = 1; sz <= budget; ++sz)
              out[sz] = terms[nt][sz];
            return out;
          }
        }
        if (budget >= 1) out[1].push_back(mkIdent(id->id));
        return out;
      }
      if (asLiteral(b)) {
        if (budget >= 1) out[1].push_back(mkLiteral(asLiteral(b)->lit));
        return out;
      }
      auto* app = asApply(b);
      if (budget < 1 + app->args.size()) return out;
      std::size_t argsBudget = budget - 1;
      std::vector<std::vector<std::vector<TermPtr>>> parts;
      for (auto& arg : app->args) parts.push_back(expand(*arg, argsBudget));
      std::vector<std::vector<std::vector<TermPtr>>> partial(argsBudget + 1);
      partial[0].push_back({});
      for (auto& part : parts) {
        std::vector<std::vector<std::vector<TermPtr>>> next(argsBudget + 1);
        for (std::size_t sz = 0; sz <= argsBudget; ++sz) {
          if (partial[sz].empty()) continue;
          for (std::size_t extra = 1;
               extra < part.size() && sz + extra <= argsBudget; ++extra) {
            for (auto& frag : part[extra]) {
              for (auto& vec : partial[sz]) {
                auto copy = vec;
                copy.push_back(frag);
                next[sz + extra].push_back(std::move(copy));
              }
            }
          }
        }
        partial = std::move(next);
      }
      for (std::size_t sz = 0; sz <= argsBudget; ++sz)
        for (auto& vec : partial[sz])
          out[sz + 1].push_back(mkApply(app->head, vec));
      return out;
    }
  };
  Expander ex{rs, terms};

  std::size_t sinceTimeCheck = 0;
  auto expired = [&] {
    if (++sinceTimeCheck % 64 != 0) return false;
    return std::chrono::steady_clock::now() >= deadline;
  };

  for (std::size_t size = 1; size <= opts.maxSize; ++size) {
    std::vector<std::vector<TermPtr>> direct(n);
    for (std::size_t z = 0; z < n; ++z) {
      for (auto& rule : rs.rules[z]) {
        if (rule.kind == Rule::ConstantClass) {
          for (auto& c : constantSamples(rule.classSort))
            if (termSize(*c) == size) direct[z].push_back(c);
        } else if (rule.kind == Rule::VariableClass) {
          if (size == 1)
            for (auto& v : rule.matchingVars) direct[z].push_back(mkVar(v));
        } else if (rule.unitTarget < 0) {
          auto got = ex.expand(*rule.base, size);
          if (size < got.size())
            for (auto& t : got[size]) direct[z].push_back(t);
        }
        if (expired()) return fail;
      }
    }
    for (std::size_t y = 0; y < n; ++y) {
      for (int z : unitReach[y]) {
        for (auto& t : direct[z]) {
          if (expired()) return fail;
          std::string key = signature(*t);
          if (seenSig[y].count(key)) continue;
          seenSig[y].insert(key);
          terms[y][size].push_back(t);
          if (y == 0 && tryCandidate(t)) {
            Response resp;
            resp.kind = Response::Solution;
            SolutionDef def;
            def.name = fun.name;
            def.args = fun.args;
            def.returnSort = fun.returnSort;
            def.body = t;
            def.recursive = false;
            resp.defs.push_back(def);
            SemanticVerdict v = checkSemanticBounded(s, resp, opts.domain);
            if (v.kind == SemanticVerdict::PassedBounded) return resp;
          }
        }
      }
    }
  }
  return fail;
}

}  // namespace sygus
