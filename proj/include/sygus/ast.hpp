#pragma once

// Typed AST: identifiers, sorts, attributes, terms, grammar definitions,
// features and the full command set.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sygus/sexpr.hpp"

namespace sygus {

struct Identifier {
  std::string base;
  // each index is either a numeral or a symbol; kept as lexemes
  std::vector<std::string> indices;

  bool indexed() const { return !indices.empty(); }
  bool is(std::string_view s) const { return indices.empty() && base == s; }

  friend bool operator==(const Identifier& a, const Identifier& b) {
    return a.base == b.base && a.indices == b.indices;
  }
  friend bool operator!=(const Identifier& a, const Identifier& b) {
    return !(a == b);
  }
};

struct Sort {
  Identifier head;
  std::vector<Sort> args;

  bool isFunctionSort() const { return head.is("->"); }

  friend bool operator==(const Sort& a, const Sort& b) {
    return a.head == b.head && a.args == b.args;
  }
  friend bool operator!=(const Sort& a, const Sort& b) { return !(a == b); }
};

inline Sort simpleSort(std::string name) {
  return Sort{Identifier{std::move(name), {}}, {}};
}

inline Sort bitVecSort(unsigned width) {
  return Sort{Identifier{"BitVec", {std::to_string(width)}}, {}};
}

// (-> σ1 ... σn σ); args = params followed by the return sort
inline Sort functionSort(std::vector<Sort> paramsAndReturn) {
  return Sort{Identifier{"->", {}}, std::move(paramsAndReturn)};
}

enum class LitKind { Numeral, Decimal, Boolean, Hex, Binary, String };

struct Literal {
  LitKind kind;
  std::string text;  // original lexeme; strings keep delimiting quotes

  std::string stringChars() const { return decodeStringLexeme(text); }
  friend bool operator==(const Literal& a, const Literal& b) {
    return a.kind == b.kind && a.text == b.text;
  }
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Attribute values are kept as raw S-expressions; most uses only ever need
// the numeral accessor.
struct Attribute {
  std::string keyword;  // with leading ':'
  SExprPtr value;       // may be null

  std::optional<long long> numeralValue() const {
    if (value && value->kind == SExprKind::Numeral)
      return std::stoll(value->text);
    return std::nullopt;
  }
};

struct SortedVar {
  std::string name;
  Sort sort;
};

struct TermIdent {
  Identifier id;
};
struct TermLiteral {
  Literal lit;
};
struct TermApply {
  Identifier head;
  std::vector<TermPtr> args;  // nonempty
};
struct TermAnnotated {
  TermPtr body;
  std::vector<Attribute> attrs;  // nonempty
};
enum class BinderKind { Exists, Forall };
struct TermBinder {
  BinderKind kind;
  std::vector<SortedVar> binders;  // nonempty
  TermPtr body;
};
struct TermLet {
  std::vector<std::pair<std::string, TermPtr>> bindings;  // nonempty
  TermPtr body;
};

struct Term {
  std::variant<TermIdent, TermLiteral, TermApply, TermAnnotated, TermBinder,
               TermLet>
      node;
  Span span;
};

inline TermPtr mkTerm(Term t) { return std::make_shared<const Term>(std::move(t)); }
inline TermPtr mkIdent(Identifier id, Span span = {}) {
  return mkTerm(Term{TermIdent{std::move(id)}, span});
}
inline TermPtr mkVar(std::string name, Span span = {}) {
  return mkIdent(Identifier{std::move(name), {}}, span);
}
inline TermPtr mkLiteral(Literal lit, Span span = {}) {
  return mkTerm(Term{TermLiteral{std::move(lit)}, span});
}
inline TermPtr mkNumeral(const std::string& text) {
  return mkLiteral(Literal{LitKind::Numeral, text});
}
inline TermPtr mkBool(bool b) {
  return mkLiteral(Literal{LitKind::Boolean, b ? "true" : "false"});
}
inline TermPtr mkApply(Identifier head, std::vector<TermPtr> args,
                       Span span = {}) {
  return mkTerm(Term{TermApply{std::move(head), std::move(args)}, span});
}
inline TermPtr mkApply(std::string head, std::vector<TermPtr> args) {
  return mkApply(Identifier{std::move(head), {}}, std::move(args));
}

template <class V>
decltype(auto) visitTerm(V&& v, const Term& t) {
  return std::visit(std::forward<V>(v), t.node);
}

inline const TermIdent* asIdent(const Term& t) {
  return std::get_if<TermIdent>(&t.node);
}
inline const TermLiteral* asLiteral(const Term& t) {
  return std::get_if<TermLiteral>(&t.node);
}
inline const TermApply* asApply(const Term& t) {
  return std::get_if<TermApply>(&t.node);
}
inline const TermAnnotated* asAnnotated(const Term& t) {
  return std::get_if<TermAnnotated>(&t.node);
}
inline const TermBinder* asBinder(const Term& t) {
  return std::get_if<TermBinder>(&t.node);
}
inline const TermLet* asLet(const Term& t) {
  return std::get_if<TermLet>(&t.node);
}

inline bool isBinderFree(const Term& t) {
  if (asBinder(t) || asLet(t)) return false;
  if (auto* a = asApply(t)) {
    for (auto& arg : a->args)
      if (!isBinderFree(*arg)) return false;
    return true;
  }
  if (auto* an = asAnnotated(t)) return isBinderFree(*an->body);
  return true;
}

// (- N) and (- D): the value syntax for negative arithmetic constants.
inline const Literal* asNegatedNumeral(const Term& t) {
  if (auto* a = asApply(t)) {
    if (a->head.is("-") && a->args.size() == 1) {
      if (auto* l = asLiteral(*a->args[0])) {
        if (l->lit.kind == LitKind::Numeral || l->lit.kind == LitKind::Decimal)
          return &l->lit;
      }
    }
  }
  return nullptr;
}

// A literal value term: a plain literal or a unary-negated numeral/decimal.
inline bool isLiteralValueTerm(const Term& t) {
  return asLiteral(t) != nullptr || asNegatedNumeral(t) != nullptr;
}

// ---- grammar definitions -------------------------------------------------

struct GTermConstant {
  Sort sort;
};
struct GTermVariable {
  Sort sort;
};
struct GTermRule {
  TermPtr term;  // binder-free
};
struct GTerm {
  std::variant<GTermConstant, GTermVariable, GTermRule> node;
};

struct GrammarDef {
  std::vector<SortedVar> nonterminals;        // predeclaration order
  std::vector<std::vector<GTerm>> rules;      // parallel to nonterminals
};

// ---- commands ------------------------------------------------------------

struct DatatypeConstructor {
  std::string name;
  std::vector<SortedVar> selectors;
};
struct DatatypeDecl {
  std::vector<DatatypeConstructor> constructors;
};

struct CmdAssume {
  TermPtr term;
};
struct CmdCheckSynth {};
struct CmdChcConstraint {
  std::vector<SortedVar> vars;
  TermPtr body;
  TermPtr head;
};
struct CmdConstraint {
  TermPtr term;
};
struct CmdDeclareVar {
  std::string name;
  Sort sort;
};
struct CmdDeclareWeight {
  std::string keyword;  // with ':'
  std::vector<Attribute> attrs;
};
struct CmdInvConstraint {
  std::string s, pre, trans, post;
};
struct CmdOptimizeSynth {
  std::vector<TermPtr> terms;
  std::vector<Attribute> attrs;
};
struct CmdSetFeature {
  std::string feature;  // without ':'
  bool value;
};
struct CmdSynthFun {
  std::string name;
  std::vector<SortedVar> args;
  Sort returnSort;
  std::optional<GrammarDef> grammar;
};
struct CmdOracleCombined {  // oracle-assume / oracle-constraint
  bool isAssume;
  std::vector<SortedVar> invars;
  std::vector<SortedVar> outvars;
  TermPtr term;
  std::string oracleName;
  std::vector<Attribute> attrs;
};
struct CmdDeclareOracleFun {
  std::string name;
  std::vector<Sort> argSorts;
  Sort returnSort;
  std::string oracleName;
  std::vector<Attribute> attrs;
};
enum class OracleSugarKind { Io, Cex, Membership, PosWitness, NegWitness };
struct CmdOracleSugar {
  OracleSugarKind kind;
  std::string fun;
  std::string oracleName;
};
struct CmdDeclareCorrectnessOracle {
  bool withCex;  // declare-correctness-cex-oracle
  std::string fun;
  std::string oracleName;
};
struct CmdDeclareDatatype {
  std::string name;
  DatatypeDecl decl;
};
struct CmdDeclareDatatypes {
  std::vector<std::pair<std::string, long long>> sortDecls;
  std::vector<DatatypeDecl> decls;
};
struct CmdDeclareSort {
  std::string name;
  long long arity;
};
struct CmdDefineFun {
  std::string name;
  std::vector<SortedVar> args;
  Sort returnSort;
  TermPtr body;
};
struct CmdDefineSort {
  std::string name;
  std::vector<std::string> params;
  Sort body;
};
struct CmdSetInfo {
  std::string keyword;
  Literal value;
};
struct CmdSetLogic {
  std::string logic;
};
struct CmdSetOption {
  std::string keyword;
  Literal value;
};

struct Command {
  std::variant<CmdAssume, CmdCheckSynth, CmdChcConstraint, CmdConstraint,
               CmdDeclareVar, CmdDeclareWeight, CmdInvConstraint,
               CmdOptimizeSynth, CmdSetFeature, CmdSynthFun, CmdOracleCombined,
               CmdDeclareOracleFun, CmdOracleSugar,
               CmdDeclareCorrectnessOracle, CmdDeclareDatatype,
               CmdDeclareDatatypes, CmdDeclareSort, CmdDefineFun,
               CmdDefineSort, CmdSetInfo, CmdSetLogic, CmdSetOption>
      node;
  Span span;
};

template <class T>
const T* asCmd(const Command& c) {
  return std::get_if<T>(&c.node);
}

inline bool isKnownFeature(std::string_view f) {
  return f == "grammars" || f == "fwd-decls" || f == "recursion" ||
         f == "oracles" || f == "weights";
}

}  // namespace sygus
