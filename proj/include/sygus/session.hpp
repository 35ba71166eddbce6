#pragma once

// The SyGuS problem state machine: consumes a command stream in order,
// enforces command ordering and feature gates, maintains the synthesis
// conjecture components (functions, universal variables, assumptions,
// constraints, oracle bindings), and desugars every sugar command
// (inv-constraint, chc-constraint, oracle sugars) into core form.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sygus/ast.hpp"
#include "sygus/eval.hpp"
#include "sygus/grammar.hpp"
#include "sygus/logics.hpp"
#include "sygus/theories.hpp"

namespace sygus {

enum class ConstraintOrigin { User, Inv, Chc, Oracle };

struct TaggedTerm {
  TermPtr term;
  ConstraintOrigin origin;
  Span span;
};

struct OracleBinding {
  bool isAssume = false;
  std::vector<SortedVar> invars;
  std::vector<SortedVar> outvars;
  TermPtr templ;
  std::string oracleName;
  enum Transport { CommandLine, File } transport = CommandLine;
  Span span;
};

// chc-constraint clause in its original (pre-desugar) shape, kept for the
// CHC special-logic checks.
struct ChcClause {
  std::vector<SortedVar> vars;
  TermPtr body;
  TermPtr head;
  Span span;
};

struct Conjecture {
  std::vector<SynthFunEntry> funs;
  std::vector<SortedVar> vars;
  std::vector<TermPtr> assumptions;
  std::vector<TermPtr> constraints;
};

struct SessionOptions {
  bool permissive = false;
};

// True when t mentions a weight symbol (_ w f).
inline bool mentionsWeightSymbol(const Term& t, const Signature& sig) {
  if (auto* id = asIdent(t))
    return id->id.indices.size() == 1 &&
           sig.weightKeywords.count(id->id.base) > 0 &&
           sig.synthFuns.count(id->id.indices[0]) > 0;
  if (auto* a = asApply(t)) {
    for (auto& arg : a->args)
      if (mentionsWeightSymbol(*arg, sig)) return true;
    return false;
  }
  if (auto* an = asAnnotated(t)) return mentionsWeightSymbol(*an->body, sig);
  if (auto* b = asBinder(t)) return mentionsWeightSymbol(*b->body, sig);
  if (auto* l = asLet(t)) {
    for (auto& [name, bt] : l->bindings)
      if (mentionsWeightSymbol(*bt, sig)) return true;
    return mentionsWeightSymbol(*l->body, sig);
  }
  return false;
}

// True when t mentions (applies or references) a function-to-synthesize.
inline bool mentionsSynthFun(const Term& t, const Signature& sig) {
  if (auto* id = asIdent(t))
    return !id->id.indexed() && sig.synthFuns.count(id->id.base) > 0;
  if (auto* a = asApply(t)) {
    if (!a->head.indexed() && sig.synthFuns.count(a->head.base)) return true;
    for (auto& arg : a->args)
      if (mentionsSynthFun(*arg, sig)) return true;
    return false;
  }
  if (auto* an = asAnnotated(t)) return mentionsSynthFun(*an->body, sig);
  if (auto* b = asBinder(t)) return mentionsSynthFun(*b->body, sig);
  if (auto* l = asLet(t)) {
    for (auto& [name, bt] : l->bindings)
      if (mentionsSynthFun(*bt, sig)) return true;
    return mentionsSynthFun(*l->body, sig);
  }
  return false;
}

class Session {
 public:
  explicit Session(SessionOptions opts = {}) : opts_(opts) {
    logic = *parseSygusLogic("Core");
    sig = baseSignature(logic.base.theories, opts_.permissive);
  }

  enum class Phase { Start, Setters, Body };

  SygusLogic logic;
  Signature sig;
  Phase phase = Phase::Start;
  bool sawSetLogic = false;
  bool sawCheckSynth = false;

  std::vector<SynthFunEntry> funs;            // declaration order
  std::map<std::string, RuleSet> ruleSets;    // funs with grammars
  std::vector<SortedVar> universalVars;       // declaration order
  std::set<std::string> oracleValued;         // function-sorted universals
  std::vector<TaggedTerm> constraints;
  std::vector<TaggedTerm> assumptions;
  std::vector<OracleBinding> oracleBindings;
  std::vector<ChcClause> chcClauses;
  std::vector<Command> coreCommands;          // desugared stream
  std::map<std::string, long long> weightDefaults;  // keyword -> default
  std::map<std::string, Literal> info;
  std::map<std::string, Literal> options;
  std::optional<CmdOptimizeSynth> objective;

  const SortEnv& env() const { return globalEnv_; }

  const SynthFunEntry* findFun(const std::string& name) const {
    for (auto& f : funs)
      if (f.name == name) return &f;
    return nullptr;
  }

  void processAll(const std::vector<Command>& cmds) {
    for (auto& c : cmds) process(c);
    finish();
  }

  void process(const Command& c) {
    Span span = c.span;
    if (sawCheckSynth || objective)
      throw SygusError("E-ORDER", span,
                       "no commands may follow check-synth or optimize-synth");
    if (auto* x = asCmd<CmdSetInfo>(c)) {  // allowed in any phase
      info[x->keyword] = x->value;
      coreCommands.push_back(c);
      return;
    }
    if (auto* x = asCmd<CmdSetLogic>(c)) {
      if (phase != Phase::Start)
        throw SygusError("E-ORDER", span,
                         "set-logic must be the first command");
      auto l = parseSygusLogic(x->logic);
      if (!l)
        throw SygusError("E-CMD", span, "unknown logic '" + x->logic + "'");
      logic = *l;
      sig = baseSignature(logic.base.theories, opts_.permissive);
      sawSetLogic = true;
      phase = Phase::Setters;
      coreCommands.push_back(c);
      return;
    }
    if (auto* x = asCmd<CmdSetFeature>(c)) {
      if (phase == Phase::Body)
        throw SygusError("E-ORDER", span,
                         "set-feature must precede all other commands");
      phase = Phase::Setters;
      if (!isKnownFeature(x->feature))
        throw SygusError("E-CMD", span,
                         "unknown feature ':" + x->feature + "'");
      if (x->value)
        logic.features.insert(x->feature);
      else
        logic.features.erase(x->feature);
      coreCommands.push_back(c);
      return;
    }
    if (auto* x = asCmd<CmdSetOption>(c)) {
      if (phase == Phase::Body)
        throw SygusError("E-ORDER", span,
                         "set-option must precede all other commands");
      phase = Phase::Setters;
      options[x->keyword] = x->value;
      coreCommands.push_back(c);
      return;
    }

    phase = Phase::Body;

    if (auto* x = asCmd<CmdDeclareVar>(c)) {
      processDeclareVar(*x, span);
      coreCommands.push_back(c);
    } else if (auto* x = asCmd<CmdDeclareWeight>(c)) {
      processDeclareWeight(*x, span);
      coreCommands.push_back(c);
    } else if (auto* x = asCmd<CmdDefineFun>(c)) {
      processDefineFun(*x, span);
      coreCommands.push_back(c);
    } else if (auto* x = asCmd<CmdDefineSort>(c)) {
      processDefineSort(*x, span);
      coreCommands.push_back(c);
    } else if (auto* x = asCmd<CmdDeclareSort>(c)) {
      if (sig.hasSymbol(x->name))
        throw SygusError("E-DUP-SYMBOL", span,
                         "symbol '" + x->name + "' already exists");
      if (x->arity < 0)
        throw SygusError("E-CMD", span, "declare-sort arity must be >= 0");
      sig.sorts[x->name] = SortDecl{SortDecl::Declared, x->arity, {}, {}};
      coreCommands.push_back(c);
    } else if (auto* x = asCmd<CmdDeclareDatatype>(c)) {
      declareDatatypes(sig, {{x->name, 0}}, {x->decl}, span);
      coreCommands.push_back(c);
    } else if (auto* x = asCmd<CmdDeclareDatatypes>(c)) {
      declareDatatypes(sig, x->sortDecls, x->decls, span);
      coreCommands.push_back(c);
    } else if (auto* x = asCmd<CmdSynthFun>(c)) {
      processSynthFun(*x, span);
      coreCommands.push_back(c);
    } else if (auto* x = asCmd<CmdConstraint>(c)) {
      addConstraint(x->term, ConstraintOrigin::User, span);
      coreCommands.push_back(c);
    } else if (auto* x = asCmd<CmdAssume>(c)) {
      addAssumption(x->term, ConstraintOrigin::User, span);
      coreCommands.push_back(c);
    } else if (auto* x = asCmd<CmdInvConstraint>(c)) {
      desugarInvConstraint(*x, span);
    } else if (auto* x = asCmd<CmdChcConstraint>(c)) {
      desugarChcConstraint(*x, span);
    } else if (auto* x = asCmd<CmdOracleCombined>(c)) {
      processOracleCombined(*x, ConstraintOrigin::User, span);
    } else if (auto* x = asCmd<CmdDeclareOracleFun>(c)) {
      processDeclareOracleFun(*x, span);
    } else if (auto* x = asCmd<CmdOracleSugar>(c)) {
      desugarOracleSugar(*x, span);
    } else if (auto* x = asCmd<CmdDeclareCorrectnessOracle>(c)) {
      desugarCorrectnessOracle(*x, span);
    } else if (auto* x = asCmd<CmdOptimizeSynth>(c)) {
      if (objective)
        throw SygusError("E-CMD", span,
                         "more than one optimize-synth command");
      for (auto& t : x->terms) {
        sortCheck(*t, sig, globalEnv_);
        gateWeights(*t, span);
      }
      objective = *x;
      coreCommands.push_back(c);
    } else if (asCmd<CmdCheckSynth>(c)) {
      sawCheckSynth = true;
      coreCommands.push_back(c);
    } else {
      throw SygusError("E-CMD", span, "unhandled command");
    }
  }

  // End-of-stream checks: special-logic requirements of PBE_X/Inv_X/CHC_X.
  void finish() const {
    if (!sawCheckSynth && !objective)
      throw SygusError("E-ORDER", {},
                       "input must end with check-synth or optimize-synth");
    if (logic.flavor == LogicFlavor::Inv) {
      if (funs.size() != 1 ||
          !isBoolSort(resolveSort(sig, funs[0].returnSort)))
        throw SygusError("E-LOGIC-TERM", {},
                         "Inv logics require exactly one synth-fun with Bool "
                         "return sort");
      if (invConstraintCount_ != 1)
        throw SygusError("E-LOGIC-TERM", {},
                         "Inv logics require exactly one inv-constraint");
      for (auto& tc : constraints)
        if (tc.origin == ConstraintOrigin::User)
          throw SygusError("E-LOGIC-TERM", tc.span,
                           "Inv logics allow no constraints besides the "
                           "inv-constraint");
    }
    if (logic.flavor == LogicFlavor::Chc) checkChcSystem();
  }

  Conjecture buildConjecture() const {
    Conjecture cj;
    cj.funs = funs;
    cj.vars = universalVars;
    for (auto& a : assumptions) cj.assumptions.push_back(a.term);
    for (auto& f : constraints) cj.constraints.push_back(f.term);
    return cj;
  }

 private:
  SessionOptions opts_;
  SortEnv globalEnv_;
  int invConstraintCount_ = 0;

  // ---- shared helpers ----------------------------------------------------

  void requireFeature(const std::string& f, Span span) const {
    if (!logic.has(f))
      throw SygusError("E-FEATURE-GATED", span,
                       "this command requires the " + f + " feature");
  }

  void checkNewSymbol(const std::string& name, Span span) const {
    if (sig.hasSymbol(name) || globalEnv_.count(name))
      throw SygusError("E-DUP-SYMBOL", span,
                       "symbol '" + name + "' already exists");
  }

  std::set<std::string> takenSymbols() const {
    std::set<std::string> taken;
    for (auto& [k, v] : sig.funs) taken.insert(k);
    for (auto& [k, v] : sig.sorts) taken.insert(k);
    for (auto& [k, v] : sig.constructors) taken.insert(k);
    for (auto& [k, v] : sig.selectors) taken.insert(k);
    for (auto& [k, v] : globalEnv_) taken.insert(k);
    return taken;
  }

  void gateWeights(const Term& t, Span span) const {
    if (!logic.has("weights") && mentionsWeightSymbol(t, sig))
      throw SygusError("E-FEATURE-GATED", span,
                       "weight symbols require the weights feature");
  }

  static TermPtr mkCall(const std::string& name,
                        std::vector<TermPtr> args) {
    if (args.empty()) return mkVar(name);
    return mkApply(name, std::move(args));
  }

  void addUniversalVar(const std::string& name, const Sort& resolved,
                       Span span, bool oracle) {
    checkNewSymbol(name, span);
    universalVars.push_back(SortedVar{name, resolved});
    globalEnv_[name] = resolved;
    if (oracle) oracleValued.insert(name);
  }

  void addConstraint(const TermPtr& t, ConstraintOrigin origin, Span span) {
    Sort s = sortCheck(*t, sig, globalEnv_);
    if (!isBoolSort(s))
      throw SygusError("E-RANK", span, "constraint must be Bool");
    gateWeights(*t, span);
    checkTermLogic(t, origin, /*isConstraint=*/true, span);
    constraints.push_back(TaggedTerm{t, origin, span});
  }

  void addAssumption(const TermPtr& t, ConstraintOrigin origin, Span span) {
    Sort s = sortCheck(*t, sig, globalEnv_);
    if (!isBoolSort(s))
      throw SygusError("E-RANK", span, "assumption must be Bool");
    gateWeights(*t, span);
    checkTermLogic(t, origin, /*isConstraint=*/false, span);
    assumptions.push_back(TaggedTerm{t, origin, span});
  }

  // The PBE constraint-shape restriction applies to user constraint
  // commands; all formulas are subject to the base-logic checks.
  void checkTermLogic(const TermPtr& t, ConstraintOrigin origin,
                      bool isConstraint, Span span) const {
    if (logic.flavor == LogicFlavor::Pbe && isConstraint &&
        origin == ConstraintOrigin::User) {
      if (auto v = checkConstraintAllowed(logic, t, sig, sig.synthFuns))
        throw SygusError(v->code, v->span.line ? v->span : span, v->message);
      return;
    }
    TermPtr expanded = expandMacros(t, sig);
    if (containsBinder(*expanded))
      throw SygusError("E-LOGIC-TERM", span,
                       "quantifiers are not allowed in this logic");
    if (logic.base.linear) {
      if (auto v = findNonlinear(*expanded, [](const Term& s) {
            return isConstantTerm(s);
          }))
        throw SygusError(v->code, v->span.line ? v->span : span, v->message);
    }
  }

  // ---- per-command processing --------------------------------------------

  void processDeclareVar(const CmdDeclareVar& x, Span span) {
    Sort resolved = resolveSort(sig, x.sort, span);
    bool fn = resolved.isFunctionSort();
    if (fn) requireFeature("oracles", span);
    addUniversalVar(x.name, resolved, span, fn);
  }

  void processDeclareWeight(const CmdDeclareWeight& x, Span span) {
    requireFeature("weights", span);
    std::string kw = x.keyword;
    if (!kw.empty() && kw[0] == ':') kw = kw.substr(1);
    if (sig.weightKeywords.count(kw))
      throw SygusError("E-DUP-SYMBOL", span,
                       "weight keyword ':" + kw + "' already exists");
    sig.weightKeywords.insert(kw);
    for (auto& a : x.attrs) {
      if (a.keyword == ":default") {
        auto n = a.numeralValue();
        if (!n)
          throw SygusError("E-ATTR", span, ":default expects a numeral");
        weightDefaults[kw] = *n;
      }
    }
  }

  void processDefineFun(const CmdDefineFun& x, Span span,
                        bool internal = false) {
    checkNewSymbol(x.name, span);
    MacroDef def;
    SortEnv paramEnv;
    std::set<std::string> seen;
    for (auto& p : x.args) {
      if (!seen.insert(p.name).second)
        throw SygusError("E-DUP-SYMBOL", span,
                         "duplicate parameter '" + p.name + "'");
      Sort ps = resolveSort(sig, p.sort, span);
      def.params.push_back(SortedVar{p.name, ps});
      paramEnv[p.name] = ps;
    }
    def.returnSort = resolveSort(sig, x.returnSort, span);
    // the body is closed over its parameters and the signature
    Sort bs = sortCheck(*x.body, sig, paramEnv);
    if (bs != def.returnSort)
      throw SygusError("E-RANK", span,
                       "define-fun body has sort " + toString(bs) +
                           ", declared " + toString(def.returnSort));
    gateWeights(*x.body, span);
    if (!internal && mentionsSynthFun(*x.body, sig))
      requireFeature("fwd-decls", span);
    def.body = x.body;
    FunRank rank;
    for (auto& p : def.params) rank.args.push_back(p.sort);
    rank.returnSort = def.returnSort;
    sig.funs[x.name] = rank;
    sig.macros[x.name] = def;
  }

  void processDefineSort(const CmdDefineSort& x, Span span) {
    if (sig.sorts.count(x.name))
      throw SygusError("E-DUP-SYMBOL", span,
                       "sort '" + x.name + "' already exists");
    // validate the body with parameters visible as placeholder sorts
    Signature probe = sig;
    for (auto& p : x.params)
      probe.sorts[p] = SortDecl{SortDecl::Declared, 0, {}, {}};
    resolveSort(probe, x.body, span);
    sig.sorts[x.name] = SortDecl{SortDecl::Alias, 0, x.params, x.body};
  }

  void processSynthFun(const CmdSynthFun& x, Span span) {
    checkNewSymbol(x.name, span);
    SynthFunEntry entry;
    entry.name = x.name;
    std::set<std::string> seen;
    for (auto& a : x.args) {
      if (!seen.insert(a.name).second)
        throw SygusError("E-DUP-SYMBOL", span,
                         "duplicate parameter '" + a.name + "'");
      entry.args.push_back(SortedVar{a.name, resolveSort(sig, a.sort, span)});
    }
    entry.returnSort = resolveSort(sig, x.returnSort, span);
    entry.grammar = x.grammar;
    if (x.grammar) requireFeature("grammars", span);
    FunRank rank;
    for (auto& a : entry.args) rank.args.push_back(a.sort);
    rank.returnSort = entry.returnSort;
    sig.funs[x.name] = rank;
    sig.synthFuns.insert(x.name);
    funs.push_back(entry);
    if (x.grammar) {
      RuleSet rs = compileGrammar(*x.grammar, entry, sig, weightDefaults);
      auto res = checkGrammarAllowed(logic, rs, x.name, sig, sig.synthFuns);
      if (!res.ok)
        throw SygusError(res.violation->code,
                         res.violation->span.line ? res.violation->span : span,
                         res.violation->message);
      ruleSets.emplace(x.name, std::move(rs));
    }
  }

  // ---- desugaring --------------------------------------------------------

  void emitDeclareVar(const std::string& name, const Sort& sort, Span span,
                      bool oracle = false) {
    addUniversalVar(name, sort, span, oracle);
    coreCommands.push_back(Command{CmdDeclareVar{name, sort}, span});
  }

  void emitConstraint(const TermPtr& t, ConstraintOrigin origin, Span span) {
    addConstraint(t, origin, span);
    coreCommands.push_back(Command{CmdConstraint{t}, span});
  }

  const MacroDef& invMacro(const std::string& name, std::size_t arity,
                           const std::string& role, Span span) const {
    auto it = sig.macros.find(name);
    if (it == sig.macros.end())
      throw SygusError("E-CMD", span,
                       "inv-constraint " + role + " '" + name +
                           "' is not a defined function");
    if (it->second.params.size() != arity)
      throw SygusError("E-CMD", span,
                       "inv-constraint " + role + " '" + name + "' must take " +
                           std::to_string(arity) + " argument(s)");
    if (!isBoolSort(it->second.returnSort))
      throw SygusError("E-CMD", span,
                       "inv-constraint " + role + " '" + name +
                           "' must return Bool");
    return it->second;
  }

  void desugarInvConstraint(const CmdInvConstraint& x, Span span) {
    ++invConstraintCount_;
    if (!sig.synthFuns.count(x.s))
      throw SygusError("E-CMD", span,
                       "inv-constraint invariant '" + x.s +
                           "' is not a function to synthesize");
    const FunRank& rank = sig.funs.at(x.s);
    if (!isBoolSort(rank.returnSort))
      throw SygusError("E-CMD", span,
                       "inv-constraint invariant '" + x.s +
                           "' must return Bool");
    std::size_t n = rank.args.size();
    const MacroDef& pre = invMacro(x.pre, n, "precondition", span);
    const MacroDef& trans = invMacro(x.trans, 2 * n, "transition", span);
    const MacroDef& post = invMacro(x.post, n, "postcondition", span);
    for (std::size_t i = 0; i < n; ++i) {
      if (pre.params[i].sort != rank.args[i] ||
          post.params[i].sort != rank.args[i] ||
          trans.params[i].sort != rank.args[i] ||
          trans.params[n + i].sort != rank.args[i])
        throw SygusError("E-CMD", span,
                         "inv-constraint argument sorts do not match '" +
                             x.s + "'");
    }

    auto taken = takenSymbols();
    std::vector<std::string> vs, vps;
    for (std::size_t i = 0; i < n; ++i) {
      std::string v = freshName("v" + std::to_string(i + 1), taken);
      taken.insert(v);
      std::string vp = freshName("vp" + std::to_string(i + 1), taken);
      taken.insert(vp);
      vs.push_back(v);
      vps.push_back(vp);
    }
    for (std::size_t i = 0; i < n; ++i) {
      emitDeclareVar(vs[i], rank.args[i], span);
      emitDeclareVar(vps[i], rank.args[i], span);
    }
    auto vars = [](const std::vector<std::string>& names) {
      std::vector<TermPtr> out;
      for (auto& v : names) out.push_back(mkVar(v));
      return out;
    };
    std::vector<TermPtr> vv = vars(vs), vpv = vars(vps);
    std::vector<TermPtr> both = vv;
    both.insert(both.end(), vpv.begin(), vpv.end());

    emitConstraint(
        mkApply("=>", {mkCall(x.pre, vv), mkCall(x.s, vv)}),
        ConstraintOrigin::Inv, span);
    emitConstraint(
        mkApply("=>",
                {mkApply("and", {mkCall(x.s, vv), mkCall(x.trans, both)}),
                 mkCall(x.s, vpv)}),
        ConstraintOrigin::Inv, span);
    emitConstraint(
        mkApply("=>", {mkCall(x.s, vv), mkCall(x.post, vv)}),
        ConstraintOrigin::Inv, span);
  }

  void desugarChcConstraint(const CmdChcConstraint& x, Span span) {
    std::vector<SortedVar> vars;
    std::set<std::string> seen;
    SortEnv clauseEnv = globalEnv_;
    for (auto& sv : x.vars) {
      if (!seen.insert(sv.name).second)
        throw SygusError("E-DUP-SYMBOL", span,
                         "duplicate chc-constraint variable '" + sv.name +
                             "'");
      Sort rs = resolveSort(sig, sv.sort, span);
      vars.push_back(SortedVar{sv.name, rs});
      clauseEnv[sv.name] = rs;
    }
    if (!isBoolSort(sortCheck(*x.body, sig, clauseEnv)))
      throw SygusError("E-RANK", span, "chc-constraint body must be Bool");
    if (!isBoolSort(sortCheck(*x.head, sig, clauseEnv)))
      throw SygusError("E-RANK", span, "chc-constraint head must be Bool");
    chcClauses.push_back(ChcClause{vars, x.body, x.head, span});

    auto taken = takenSymbols();
    std::vector<std::string> vs;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      std::string v = freshName("v" + std::to_string(i + 1), taken);
      taken.insert(v);
      vs.push_back(v);
    }
    std::string fBody = freshName("F_body", taken);
    taken.insert(fBody);
    std::string fHead = freshName("F_head", taken);

    for (std::size_t i = 0; i < vars.size(); ++i)
      emitDeclareVar(vs[i], vars[i].sort, span);
    auto emitDefine = [&](const std::string& name, const TermPtr& body) {
      CmdDefineFun def{name, vars, simpleSort("Bool"), body};
      processDefineFun(def, span, /*internal=*/true);
      coreCommands.push_back(Command{def, span});
    };
    emitDefine(fBody, x.body);
    emitDefine(fHead, x.head);
    std::vector<TermPtr> vv;
    for (auto& v : vs) vv.push_back(mkVar(v));
    emitConstraint(
        mkApply("=>", {mkCall(fBody, vv), mkCall(fHead, vv)}),
        ConstraintOrigin::Chc, span);
  }

  OracleBinding::Transport transportOf(const std::vector<Attribute>& attrs,
                                       Span span) const {
    OracleBinding::Transport t = OracleBinding::CommandLine;
    for (auto& a : attrs) {
      if (a.keyword == ":file")
        t = OracleBinding::File;
      else if (a.keyword == ":command-line")
        t = OracleBinding::CommandLine;
      else
        throw SygusError("E-ATTR", span,
                         "unknown oracle attribute '" + a.keyword + "'");
    }
    return t;
  }

  void processOracleCombined(const CmdOracleCombined& x,
                             ConstraintOrigin origin, Span span) {
    requireFeature("oracles", span);
    OracleBinding b;
    b.isAssume = x.isAssume;
    b.oracleName = x.oracleName;
    b.transport = transportOf(x.attrs, span);
    b.span = span;
    SortEnv templEnv = globalEnv_;
    std::set<std::string> seen;
    auto bind = [&](const std::vector<SortedVar>& list,
                    std::vector<SortedVar>& out) {
      for (auto& sv : list) {
        if (!seen.insert(sv.name).second)
          throw SygusError("E-DUP-SYMBOL", span,
                           "duplicate oracle variable '" + sv.name + "'");
        Sort rs = resolveSort(sig, sv.sort, span);
        out.push_back(SortedVar{sv.name, rs});
        templEnv[sv.name] = rs;
      }
    };
    bind(x.invars, b.invars);
    bind(x.outvars, b.outvars);
    if (!isBoolSort(sortCheck(*x.term, sig, templEnv)))
      throw SygusError("E-RANK", span, "oracle template must be Bool");
    gateWeights(*x.term, span);
    checkTermLogic(x.term, ConstraintOrigin::Oracle, false, span);
    b.templ = x.term;
    oracleBindings.push_back(b);
    Command out{CmdOracleCombined{x.isAssume, b.invars, b.outvars, b.templ,
                                  b.oracleName, x.attrs},
                span};
    coreCommands.push_back(out);
    (void)origin;
  }

  void processDeclareOracleFun(const CmdDeclareOracleFun& x, Span span) {
    requireFeature("oracles", span);
    checkNewSymbol(x.name, span);
    std::vector<Sort> argSorts;
    for (auto& s : x.argSorts) argSorts.push_back(resolveSort(sig, s, span));
    Sort ret = resolveSort(sig, x.returnSort, span);

    std::vector<Sort> fnParts = argSorts;
    fnParts.push_back(ret);
    Sort fnSort = functionSort(fnParts);
    emitDeclareVar(x.name, fnSort, span, /*oracle=*/true);

    auto taken = takenSymbols();
    std::vector<SortedVar> invars;
    std::vector<TermPtr> xs;
    for (std::size_t i = 0; i < argSorts.size(); ++i) {
      std::string xi = freshName("x" + std::to_string(i + 1), taken);
      taken.insert(xi);
      invars.push_back(SortedVar{xi, argSorts[i]});
      xs.push_back(mkVar(xi));
    }
    std::string xo = freshName("x", taken);
    std::vector<SortedVar> outvars{SortedVar{xo, ret}};
    TermPtr templ = mkApply("=", {mkCall(x.name, xs), mkVar(xo)});
    processOracleCombined(
        CmdOracleCombined{/*isAssume=*/true, invars, outvars, templ,
                          x.oracleName, x.attrs},
        ConstraintOrigin::Oracle, span);
  }

  void desugarOracleSugar(const CmdOracleSugar& x, Span span) {
    requireFeature("oracles", span);
    if (!sig.synthFuns.count(x.fun))
      throw SygusError("E-CMD", span,
                       "'" + x.fun + "' is not a function to synthesize");
    const FunRank& rank = sig.funs.at(x.fun);
    auto taken = takenSymbols();
    auto freshArgs = [&](std::vector<SortedVar>& vars,
                         std::vector<TermPtr>& terms) {
      for (std::size_t i = 0; i < rank.args.size(); ++i) {
        std::string xi = freshName("x" + std::to_string(i + 1), taken);
        taken.insert(xi);
        vars.push_back(SortedVar{xi, rank.args[i]});
        terms.push_back(mkVar(xi));
      }
    };
    CmdOracleCombined out;
    out.isAssume = false;
    out.oracleName = x.oracleName;
    std::vector<SortedVar> argVars;
    std::vector<TermPtr> xs;
    freshArgs(argVars, xs);
    std::string xo = freshName("x", taken);
    taken.insert(xo);
    switch (x.kind) {
      case OracleSugarKind::Io:
        out.invars = argVars;
        out.outvars = {SortedVar{xo, rank.returnSort}};
        out.term = mkApply("=", {mkCall(x.fun, xs), mkVar(xo)});
        break;
      case OracleSugarKind::PosWitness:
      case OracleSugarKind::NegWitness: {
        out.outvars = argVars;
        out.outvars.push_back(SortedVar{xo, rank.returnSort});
        TermPtr eq = mkApply("=", {mkCall(x.fun, xs), mkVar(xo)});
        out.term =
            x.kind == OracleSugarKind::PosWitness ? eq : mkApply("not", {eq});
        break;
      }
      case OracleSugarKind::Membership: {
        out.invars = argVars;
        out.invars.push_back(SortedVar{xo, rank.returnSort});
        std::string r = freshName("R", taken);
        out.outvars = {SortedVar{r, simpleSort("Bool")}};
        out.term =
            mkApply("=", {mkApply("=", {mkCall(x.fun, xs), mkVar(xo)}),
                          mkVar(r)});
        break;
      }
      case OracleSugarKind::Cex: {
        std::string fc = freshName("F_c", taken);
        taken.insert(fc);
        std::string r = freshName("R", taken);
        std::vector<Sort> fnParts = rank.args;
        fnParts.push_back(rank.returnSort);
        out.invars = {SortedVar{fc, functionSort(fnParts)}};
        out.outvars = {SortedVar{r, simpleSort("Bool")}};
        out.outvars.insert(out.outvars.end(), argVars.begin(), argVars.end());
        out.term = mkApply(
            "=>", {mkVar(r),
                   mkApply("not", {mkApply("=", {mkCall(x.fun, xs),
                                                 mkCall(fc, xs)})})});
        break;
      }
    }
    processOracleCombined(out, ConstraintOrigin::Oracle, span);
  }

  void desugarCorrectnessOracle(const CmdDeclareCorrectnessOracle& x,
                                Span span) {
    requireFeature("oracles", span);
    if (!sig.synthFuns.count(x.fun))
      throw SygusError("E-CMD", span,
                       "'" + x.fun + "' is not a function to synthesize");
    if (x.withCex)
      desugarOracleSugar(
          CmdOracleSugar{OracleSugarKind::Cex, x.fun, x.oracleName}, span);
    const FunRank& rank = sig.funs.at(x.fun);
    auto taken = takenSymbols();
    std::string s = freshName("s", taken);
    std::vector<Sort> fnParts = rank.args;
    fnParts.push_back(rank.returnSort);
    processDeclareOracleFun(
        CmdDeclareOracleFun{s,
                            {functionSort(fnParts)},
                            simpleSort("Bool"),
                            x.oracleName,
                            {}},
        span);
    TermPtr call = mkApply(s, {mkVar(x.fun)});
    Sort cs = sortCheck(*call, sig, globalEnv_);
    if (!isBoolSort(cs))
      throw SygusError("E-RANK", span, "correctness oracle must be Bool");
    constraints.push_back(TaggedTerm{call, ConstraintOrigin::Oracle, span});
    coreCommands.push_back(Command{CmdConstraint{call}, span});
  }

  // ---- CHC special-logic checks ------------------------------------------

  static bool containsAny(const Term& t, const std::set<std::string>& syms) {
    std::set<std::string> used;
    collectSymbols(t, used);
    for (auto& s : syms)
      if (used.count(s)) return true;
    return false;
  }

  bool isSAtomic(const Term& t, const std::set<std::string>& synths,
                 const std::set<std::string>& varNames) const {
    if (!containsAny(t, synths)) return true;
    auto* a = asApply(t);
    if (!a || a->head.indexed() || !synths.count(a->head.base)) return false;
    for (auto& arg : a->args) {
      auto* id = asIdent(*arg);
      if (!id || id->id.indexed()) return false;
      if (!varNames.count(id->id.base) && !globalEnv_.count(id->id.base))
        return false;
    }
    return true;
  }

  void checkChcSystem() const {
    std::set<std::string> synths = sig.synthFuns;
    for (auto& f : funs)
      if (!isBoolSort(resolveSort(sig, f.returnSort)))
        throw SygusError("E-LOGIC-TERM", {},
                         "CHC logics require Bool-valued synth-fun commands "
                         "only");
    for (auto& tc : constraints)
      if (tc.origin == ConstraintOrigin::User ||
          tc.origin == ConstraintOrigin::Inv)
        throw SygusError("E-LOGIC-TERM", tc.span,
                         "CHC logics allow no constraints besides "
                         "chc-constraint commands");
    if (chcClauses.empty())
      throw SygusError("E-LOGIC-TERM", {},
                       "CHC logics require at least one chc-constraint");
    int queries = 0;
    for (auto& clause : chcClauses) {
      std::set<std::string> varNames;
      for (auto& v : clause.vars) varNames.insert(v.name);
      TermPtr head = expandMacros(clause.head, sig);
      TermPtr body = expandMacros(clause.body, sig);
      if (!isSAtomic(*head, synths, varNames))
        throw SygusError("E-LOGIC-TERM", clause.span,
                         "chc-constraint head must be an atomic term over "
                         "the functions to synthesize");
      bool bodyOk = isSAtomic(*body, synths, varNames);
      if (!bodyOk) {
        auto* a = asApply(*body);
        if (a && a->head.is("and")) {
          bodyOk = true;
          for (auto& arg : a->args)
            if (!isSAtomic(*arg, synths, varNames)) bodyOk = false;
        }
      }
      if (!bodyOk)
        throw SygusError("E-LOGIC-TERM", clause.span,
                         "chc-constraint body must be a conjunction of "
                         "atomic terms over the functions to synthesize");
      if (auto* lit = asLiteral(*clause.head)) {
        if (lit->lit.kind == LitKind::Boolean && lit->lit.text == "false")
          ++queries;
      }
    }
    if (queries != 1)
      throw SygusError("E-LOGIC-TERM", {},
                       "CHC logics require exactly one chc-constraint with "
                       "head false");
  }
};

}  // namespace sygus
