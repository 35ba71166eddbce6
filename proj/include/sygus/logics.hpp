#pragma once

// SyGuS logics: input/output logic, features, constraint restrictions
// (linearity, PBE equalities) and grammar allowedness.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sygus/ast.hpp"
#include "sygus/eval.hpp"
#include "sygus/grammar.hpp"
#include "sygus/theories.hpp"

namespace sygus {

enum class LogicFlavor { Core, Smtlib, Pbe, Inv, Chc };

struct SygusLogic {
  LogicFlavor flavor = LogicFlavor::Core;
  BaseLogicInfo base;          // underlying base logic
  std::string name = "Core";   // as written in set-logic
  std::set<std::string> features{"grammars"};  // default feature set

  bool has(const std::string& f) const { return features.count(f) > 0; }
};

inline std::optional<SygusLogic> parseSygusLogic(const std::string& name) {
  SygusLogic logic;
  logic.name = name;
  auto wrap = [&](const std::string& prefix,
                  LogicFlavor flavor) -> std::optional<SygusLogic> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    auto base = lookupBaseLogic(name.substr(prefix.size()));
    if (!base) return std::nullopt;
    logic.flavor = flavor;
    logic.base = *base;
    return logic;
  };
  if (auto l = wrap("PBE_", LogicFlavor::Pbe)) return l;
  if (auto l = wrap("Inv_", LogicFlavor::Inv)) return l;
  if (auto l = wrap("CHC_", LogicFlavor::Chc)) return l;
  auto base = lookupBaseLogic(name);
  if (!base) return std::nullopt;
  logic.flavor = base->core ? LogicFlavor::Core : LogicFlavor::Smtlib;
  logic.base = *base;
  return logic;
}

// ---- term-level restrictions ---------------------------------------------

// A term is constant-valued when, after macro expansion, it contains no
// identifiers at all (only literals, their negations and theory functions
// over such).
inline bool isConstantTerm(const Term& t) {
  if (asLiteral(t)) return true;
  if (asIdent(t)) return false;
  if (auto* an = asAnnotated(t)) return isConstantTerm(*an->body);
  if (auto* a = asApply(t)) {
    for (auto& arg : a->args)
      if (!isConstantTerm(*arg)) return false;
    return true;
  }
  return false;
}

struct LogicViolation {
  std::string code;
  std::string message;
  Span span;
  bool conservative = false;
};

// Linearity over an already macro-expanded term: every `*` needs a
// constant-valued operand; div, mod and / need a constant-valued second
// operand. `constant` decides constancy of a subterm (overridable so the
// grammar check can treat constant nonterminals as constants).
template <class ConstFn>
std::optional<LogicViolation> findNonlinear(const Term& t, ConstFn constant) {
  if (auto* a = asApply(t)) {
    const std::string& h = a->head.base;
    if (!a->head.indexed()) {
      if (h == "*" && a->args.size() >= 2) {
        std::size_t nonconst = 0;
        for (auto& arg : a->args)
          if (!constant(*arg)) ++nonconst;
        if (nonconst > 1)
          return LogicViolation{
              "E-LOGIC-TERM",
              "nonlinear multiplication " + toString(t), t.span};
      }
      if ((h == "div" || h == "mod" || h == "/") && a->args.size() == 2) {
        if (!constant(*a->args[1]))
          return LogicViolation{
              "E-LOGIC-TERM",
              "'" + h + "' by a non-constant divisor in " + toString(t),
              t.span};
      }
    }
    for (auto& arg : a->args)
      if (auto v = findNonlinear(*arg, constant)) return v;
    return std::nullopt;
  }
  if (auto* an = asAnnotated(t)) return findNonlinear(*an->body, constant);
  if (auto* b = asBinder(t)) return findNonlinear(*b->body, constant);
  if (auto* l = asLet(t)) {
    for (auto& [name, bt] : l->bindings)
      if (auto v = findNonlinear(*bt, constant)) return v;
    return findNonlinear(*l->body, constant);
  }
  return std::nullopt;
}

inline bool containsBinder(const Term& t) { return !isBinderFree(t); }

// PBE equality: (= (f c...) d) in either orientation, f a function to
// synthesize, every c and d a literal value.
inline bool isPbeEquality(const Term& t, const std::set<std::string>& synthFuns) {
  auto* a = asApply(t);
  if (!a || !a->head.is("=") || a->args.size() != 2) return false;
  auto check = [&](const Term& app, const Term& rhs) {
    auto* fa = asApply(app);
    if (!fa || fa->head.indexed() || !synthFuns.count(fa->head.base))
      return false;
    for (auto& arg : fa->args)
      if (!isLiteralValueTerm(*arg)) return false;
    return isLiteralValueTerm(rhs);
  };
  return check(*a->args[0], *a->args[1]) || check(*a->args[1], *a->args[0]);
}

inline bool isPbeConstraint(const Term& t,
                            const std::set<std::string>& synthFuns) {
  if (isPbeEquality(t, synthFuns)) return true;
  auto* a = asApply(t);
  if (a && a->head.is("and")) {
    for (auto& arg : a->args)
      if (!isPbeConstraint(*arg, synthFuns)) return false;
    return true;
  }
  return false;
}

// check_constraint_allowed: term-level input-logic restrictions for a
// constraint/assumption t (already sort-checked to Bool).
inline std::optional<LogicViolation> checkConstraintAllowed(
    const SygusLogic& logic, const TermPtr& t, const Signature& sig,
    const std::set<std::string>& synthFuns) {
  TermPtr expanded = expandMacros(t, sig);
  if (logic.flavor == LogicFlavor::Pbe) {
    if (!isPbeConstraint(*expanded, synthFuns))
      return LogicViolation{
          "E-LOGIC-TERM",
          "constraint is not a conjunction of PBE equalities: " +
              toString(*t),
          t->span};
    return std::nullopt;
  }
  // QF logics: no quantifiers
  if (containsBinder(*expanded))
    return LogicViolation{"E-LOGIC-TERM",
                          "quantifiers are not allowed in this logic",
                          t->span};
  if (logic.base.linear)
    return findNonlinear(*expanded, [](const Term& s) {
      return isConstantTerm(s);
    });
  return std::nullopt;
}

// ---- grammar allowedness -------------------------------------------------

// Collects the unindexed application heads and identifiers of t.
inline void collectSymbols(const Term& t, std::set<std::string>& out) {
  if (auto* id = asIdent(t)) {
    if (!id->id.indexed()) out.insert(id->id.base);
    return;
  }
  if (auto* a = asApply(t)) {
    if (!a->head.indexed()) out.insert(a->head.base);
    for (auto& arg : a->args) collectSymbols(*arg, out);
    return;
  }
  if (auto* an = asAnnotated(t)) collectSymbols(*an->body, out);
  if (auto* b = asBinder(t)) collectSymbols(*b->body, out);
  if (auto* l = asLet(t)) {
    for (auto& [name, bt] : l->bindings) collectSymbols(*bt, out);
    collectSymbols(*l->body, out);
  }
}

// Greatest-fixpoint constancy per nonterminal: y is constant-valued iff every
// rule for y builds constants (literals, Constant classes, theory
// applications of constant operands). Variable classes and argument
// variables break constancy.
inline std::vector<bool> constantNonterminals(const RuleSet& rs) {
  std::size_t n = rs.nonterminals.size();
  std::vector<bool> isConst(n, true);
  std::set<std::string> argNames;
  for (auto& a : rs.args) argNames.insert(a.name);

  std::function<bool(const Term&)> constTerm = [&](const Term& t) -> bool {
    if (asLiteral(t)) return true;
    if (auto* id = asIdent(t)) {
      if (id->id.indexed()) return false;
      int nt = rs.indexOf(id->id.base);
      if (nt >= 0) return isConst[nt];
      return false;  // argument variable or outer symbol
    }
    if (auto* an = asAnnotated(t)) return constTerm(*an->body);
    if (auto* a = asApply(t)) {
      for (auto& arg : a->args)
        if (!constTerm(*arg)) return false;
      return true;
    }
    return false;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t y = 0; y < n; ++y) {
      if (!isConst[y]) continue;
      bool stillConst = true;
      for (auto& rule : rs.rules[y]) {
        if (rule.kind == Rule::ConstantClass) continue;
        if (rule.kind == Rule::VariableClass) {
          if (!rule.matchingVars.empty()) stillConst = false;
          continue;
        }
        if (!constTerm(*rule.base)) stillConst = false;
      }
      if (!stillConst) {
        isConst[y] = false;
        changed = true;
      }
    }
  }
  return isConst;
}

struct GrammarCheckResult {
  bool ok = true;
  std::optional<LogicViolation> violation;
};

// check_grammar_allowed: feature gates and the linear-language check.
inline GrammarCheckResult checkGrammarAllowed(
    const SygusLogic& logic, const RuleSet& rs, const std::string& self,
    const Signature& sig, const std::set<std::string>& synthFuns) {
  GrammarCheckResult result;

  // (a) feature gates on expanded rule bodies
  for (std::size_t y = 0; y < rs.rules.size(); ++y) {
    for (auto& rule : rs.rules[y]) {
      if (rule.kind != Rule::Concrete) continue;
      TermPtr expanded = expandMacros(rule.base, sig);
      std::set<std::string> syms;
      collectSymbols(*expanded, syms);
      for (auto& f : synthFuns) {
        if (!syms.count(f)) continue;
        if (f == self && !logic.has("recursion")) {
          result.ok = false;
          result.violation = LogicViolation{
              "E-FEATURE-GATED",
              "rule " + toString(*rule.base) + " mentions '" + self +
                  "' itself; the recursion feature is disabled",
              rule.base->span};
          return result;
        }
        if (f != self && !logic.has("fwd-decls")) {
          result.ok = false;
          result.violation = LogicViolation{
              "E-FEATURE-GATED",
              "rule " + toString(*rule.base) +
                  " mentions the function to synthesize '" + f +
                  "'; the fwd-decls feature is disabled",
              rule.base->span};
          return result;
        }
      }
      // weight annotations require the weights feature
      if (!rule.weights.empty() && !logic.has("weights")) {
        result.ok = false;
        result.violation = LogicViolation{
            "E-FEATURE-GATED",
            "weight annotations require the weights feature",
            rule.base->span};
        return result;
      }
    }
  }

  // (b) linear-language check
  if (logic.base.linear) {
    auto isConst = constantNonterminals(rs);
    auto constant = [&](const Term& s) -> bool {
      if (auto* id = asIdent(s)) {
        if (!id->id.indexed()) {
          int nt = rs.indexOf(id->id.base);
          if (nt >= 0) return isConst[nt];
        }
      }
      std::function<bool(const Term&)> constTerm =
          [&](const Term& t) -> bool {
        if (asLiteral(t)) return true;
        if (auto* id2 = asIdent(t)) {
          if (id2->id.indexed()) return false;
          int nt = rs.indexOf(id2->id.base);
          return nt >= 0 && isConst[nt];
        }
        if (auto* an = asAnnotated(t)) return constTerm(*an->body);
        if (auto* a = asApply(t)) {
          for (auto& arg : a->args)
            if (!constTerm(*arg)) return false;
          return true;
        }
        return false;
      };
      return constTerm(s);
    };
    for (std::size_t y = 0; y < rs.rules.size(); ++y) {
      for (auto& rule : rs.rules[y]) {
        if (rule.kind != Rule::Concrete) continue;
        TermPtr expanded = expandMacros(rule.base, sig);
        if (auto v = findNonlinear(*expanded, constant)) {
          // try to confirm with a closed witness at small depth
          bool confirmed = false;
          auto en = enumerateGrammar(rs, 0, 7);
          for (auto& t : en.terms) {
            if (findNonlinear(*t, [](const Term& s) {
                  return isConstantTerm(s);
                })) {
              confirmed = true;
              break;
            }
          }
          v->conservative = !confirmed;
          v->message = "grammar rule may generate nonlinear terms: " +
                       v->message +
                       (confirmed ? "" : " (conservative: no witness found)");
          result.ok = false;
          result.violation = v;
          return result;
        }
      }
    }
  }
  return result;
}

}  // namespace sygus
