#pragma once

// SExpr -> typed AST: sorts, identifiers, attributes, terms, grammar
// definitions and commands.

#include <string>
#include <utility>
#include <vector>

#include "sygus/ast.hpp"
#include "sygus/sexpr.hpp"

namespace sygus {

struct ParserOptions {
  // Accepts the three-list oracle-constraint form (inputs = first list,
  // outputs = concatenation of the remaining two when exactly two of the
  // three are nonempty).
  bool permissive = false;
};

class Parser {
 public:
  explicit Parser(ParserOptions options = {}) : options_(options) {}

  // ---- identifiers -------------------------------------------------------

  Identifier parseIdentifier(const SExpr& e) {
    if (e.kind == SExprKind::Symbol) return Identifier{e.text, {}};
    if (e.isList() && e.children.size() >= 3 && e.children[0]->isSymbol("_")) {
      const SExpr& base = *e.children[1];
      if (base.kind != SExprKind::Symbol)
        fail(e, "E-IDENT", "indexed identifier base must be a symbol");
      Identifier id{base.text, {}};
      for (std::size_t i = 2; i < e.children.size(); ++i) {
        const SExpr& idx = *e.children[i];
        if (idx.kind != SExprKind::Numeral && idx.kind != SExprKind::Symbol)
          fail(idx, "E-IDENT", "identifier index must be a numeral or symbol");
        id.indices.push_back(idx.text);
      }
      return id;
    }
    fail(e, "E-IDENT", "expected an identifier");
  }

  // ---- sorts -------------------------------------------------------------

  // Function sorts (-> σ1 ... σn σ) are only legal in the binding lists of
  // oracle commands; `allowFunction` is set there.
  Sort parseSort(const SExpr& e, bool allowFunction = false) {
    if (e.kind == SExprKind::Symbol) {
      checkSortName(e);
      return simpleSort(e.text);
    }
    if (!e.isList() || e.children.empty())
      fail(e, "E-SORT", "expected a sort");
    if (e.children[0]->isSymbol("_")) {
      return Sort{parseIdentifier(e), {}};
    }
    if (e.children[0]->isSymbol("->")) {
      if (!allowFunction)
        fail(e, "E-SORT", "function sorts may not be written here");
      if (e.children.size() < 3)
        fail(e, "E-SORT", "function sort needs arguments and a result");
      std::vector<Sort> parts;
      for (std::size_t i = 1; i < e.children.size(); ++i)
        parts.push_back(parseSort(*e.children[i], allowFunction));
      return functionSort(std::move(parts));
    }
    if (e.children.size() < 2)
      fail(e, "E-SORT", "applied sort constructor needs arguments");
    Identifier head = parseIdentifier(*e.children[0]);
    std::vector<Sort> args;
    for (std::size_t i = 1; i < e.children.size(); ++i)
      args.push_back(parseSort(*e.children[i]));
    return Sort{std::move(head), std::move(args)};
  }

  // ---- attributes --------------------------------------------------------

  // Parses a keyword-led attribute sequence starting at children[i].
  std::vector<Attribute> parseAttributes(const SExpr& list, std::size_t i) {
    std::vector<Attribute> attrs;
    while (i < list.children.size()) {
      const SExpr& kw = *list.children[i];
      if (kw.kind != SExprKind::Keyword)
        fail(kw, "E-ATTR", "expected a keyword");
      Attribute a{kw.text, nullptr};
      ++i;
      if (i < list.children.size() &&
          list.children[i]->kind != SExprKind::Keyword) {
        a.value = list.children[i];
        ++i;
      }
      attrs.push_back(std::move(a));
    }
    return attrs;
  }

  // ---- terms -------------------------------------------------------------

  TermPtr parseTerm(const SExpr& e) {
    switch (e.kind) {
      case SExprKind::Symbol:
        return mkIdent(Identifier{e.text, {}}, e.span);
      case SExprKind::Numeral:
        return mkLiteral(Literal{LitKind::Numeral, e.text}, e.span);
      case SExprKind::Decimal:
        return mkLiteral(Literal{LitKind::Decimal, e.text}, e.span);
      case SExprKind::Boolean:
        return mkLiteral(Literal{LitKind::Boolean, e.text}, e.span);
      case SExprKind::Hex:
        return mkLiteral(Literal{LitKind::Hex, e.text}, e.span);
      case SExprKind::Binary:
        return mkLiteral(Literal{LitKind::Binary, e.text}, e.span);
      case SExprKind::String:
        return mkLiteral(Literal{LitKind::String, e.text}, e.span);
      case SExprKind::Keyword:
        fail(e, "E-TERM", "keyword in term position");
      case SExprKind::List:
        break;
    }
    if (e.children.empty()) fail(e, "E-TERM", "empty term");
    const SExpr& head = *e.children[0];
    if (head.isSymbol("_")) return mkIdent(parseIdentifier(e), e.span);
    if (head.isSymbol("!")) {
      if (e.children.size() < 3)
        fail(e, "E-TERM", "annotation needs a term and at least one attribute");
      TermPtr body = parseTerm(*e.children[1]);
      auto attrs = parseAttributes(e, 2);
      if (attrs.empty())
        fail(e, "E-TERM", "annotation needs at least one attribute");
      return mkTerm(Term{TermAnnotated{std::move(body), std::move(attrs)},
                         e.span});
    }
    if (head.isSymbol("exists") || head.isSymbol("forall")) {
      if (e.children.size() != 3)
        fail(e, "E-TERM", head.text + " needs a binding list and a body");
      auto binders = parseSortedVars(*e.children[1]);
      if (binders.empty())
        fail(e, "E-TERM", head.text + " needs at least one binding");
      TermPtr body = parseTerm(*e.children[2]);
      BinderKind kind =
          head.isSymbol("exists") ? BinderKind::Exists : BinderKind::Forall;
      return mkTerm(Term{TermBinder{kind, std::move(binders), std::move(body)},
                         e.span});
    }
    if (head.isSymbol("let")) {
      if (e.children.size() != 3)
        fail(e, "E-TERM", "let needs a binding list and a body");
      const SExpr& blist = *e.children[1];
      if (!blist.isList() || blist.children.empty())
        fail(blist, "E-TERM", "let needs at least one binding");
      std::vector<std::pair<std::string, TermPtr>> bindings;
      for (auto& b : blist.children) {
        if (!b->isList() || b->children.size() != 2)
          fail(*b, "E-TERM", "let binding must be (symbol term)");
        bindings.emplace_back(expectSymbol(*b->children[0]),
                              parseTerm(*b->children[1]));
      }
      TermPtr body = parseTerm(*e.children[2]);
      return mkTerm(Term{TermLet{std::move(bindings), std::move(body)},
                         e.span});
    }
    // application
    Identifier id = parseIdentifier(head);
    if (e.children.size() < 2)
      fail(e, "E-TERM", "application needs at least one argument");
    std::vector<TermPtr> args;
    for (std::size_t i = 1; i < e.children.size(); ++i)
      args.push_back(parseTerm(*e.children[i]));
    return mkApply(std::move(id), std::move(args), e.span);
  }

  // A binder-free term; lets and quantifiers are rejected up front so the
  // diagnostic points at the offending construct.
  TermPtr parseBfTerm(const SExpr& e) {
    TermPtr t = parseTerm(e);
    if (!isBinderFree(*t))
      fail(e, "E-BINDER", "binders are not allowed in this position");
    return t;
  }

  // ---- sorted variables --------------------------------------------------

  std::vector<SortedVar> parseSortedVars(const SExpr& e,
                                         bool allowFunction = false) {
    if (!e.isList()) fail(e, "E-SORTEDVAR", "expected a sorted-variable list");
    std::vector<SortedVar> out;
    for (auto& c : e.children) {
      if (!c->isList() || c->children.size() != 2)
        fail(*c, "E-SORTEDVAR", "sorted variable must be (symbol sort)");
      out.push_back(SortedVar{expectSymbol(*c->children[0]),
                              parseSort(*c->children[1], allowFunction)});
    }
    return out;
  }

  // ---- grammar definitions ----------------------------------------------

  GTerm parseGTerm(const SExpr& e) {
    if (e.isList() && e.children.size() == 2) {
      if (e.children[0]->isSymbol("Constant"))
        return GTerm{GTermConstant{parseSort(*e.children[1])}};
      if (e.children[0]->isSymbol("Variable"))
        return GTerm{GTermVariable{parseSort(*e.children[1])}};
    }
    if (e.isList() && !e.children.empty() &&
        (e.children[0]->isSymbol("Constant") ||
         e.children[0]->isSymbol("Variable")))
      fail(e, "E-GRAMMAR", e.children[0]->text + " takes exactly one sort");
    return GTerm{GTermRule{parseBfTerm(e)}};
  }

  GrammarDef parseGrammar(const SExpr& predecl, const SExpr& listing) {
    GrammarDef g;
    g.nonterminals = parseSortedVars(predecl);
    if (g.nonterminals.empty())
      fail(predecl, "E-GRAMMAR", "grammar predeclaration is empty");
    if (!listing.isList() ||
        listing.children.size() != g.nonterminals.size())
      fail(listing, "E-GRAMMAR",
           "grouped rule listing does not match the predeclaration");
    for (std::size_t i = 0; i < g.nonterminals.size(); ++i) {
      const SExpr& group = *listing.children[i];
      if (!group.isList() || group.children.size() != 3)
        fail(group, "E-GRAMMAR",
             "rule group must be (symbol sort (gterm+))");
      std::string name = expectSymbol(*group.children[0]);
      Sort sort = parseSort(*group.children[1]);
      if (name != g.nonterminals[i].name || sort != g.nonterminals[i].sort)
        fail(group, "E-GRAMMAR",
             "rule group head '" + name +
                 "' does not match the predeclaration entry '" +
                 g.nonterminals[i].name + "'");
      const SExpr& glist = *group.children[2];
      if (!glist.isList() || glist.children.empty())
        fail(glist, "E-GRAMMAR", "rule group needs at least one rule");
      std::vector<GTerm> rules;
      for (auto& r : glist.children) rules.push_back(parseGTerm(*r));
      g.rules.push_back(std::move(rules));
    }
    return g;
  }

  // ---- commands ----------------------------------------------------------

  Command parseCommand(const SExpr& e) {
    if (!e.isList() || e.children.empty() ||
        e.children[0]->kind != SExprKind::Symbol)
      fail(e, "E-CMD", "expected a command");
    const std::string& head = e.children[0]->text;
    Command c;
    c.span = e.span;
    if (head == "assume") {
      c.node = CmdAssume{parseTerm(*arg(e, 1, 1))};
    } else if (head == "check-synth") {
      arity(e, 0, 0);
      c.node = CmdCheckSynth{};
    } else if (head == "chc-constraint") {
      arity(e, 3, 3);
      c.node = CmdChcConstraint{parseSortedVars(*e.children[1]),
                                parseTerm(*e.children[2]),
                                parseTerm(*e.children[3])};
    } else if (head == "constraint") {
      c.node = CmdConstraint{parseTerm(*arg(e, 1, 1))};
    } else if (head == "declare-var") {
      arity(e, 2, 2);
      // function sorts appear here in desugared declare-oracle-fun output;
      // the session gates them on the oracles feature
      c.node = CmdDeclareVar{expectSymbol(*e.children[1]),
                             parseSort(*e.children[2], true)};
    } else if (head == "declare-weight") {
      arity(e, 1, -1);
      // the declared name is written as a plain symbol; the matching
      // annotation keyword is the same name with a ':' prefix
      if (e.children[1]->kind != SExprKind::Symbol &&
          e.children[1]->kind != SExprKind::Keyword)
        fail(*e.children[1], "E-CMD",
             "declare-weight expects a weight name");
      std::string wname = e.children[1]->text;
      if (wname.empty() || wname[0] != ':') wname = ":" + wname;
      c.node = CmdDeclareWeight{std::move(wname), parseAttributes(e, 2)};
    } else if (head == "inv-constraint") {
      arity(e, 4, 4);
      c.node = CmdInvConstraint{
          expectSymbol(*e.children[1]), expectSymbol(*e.children[2]),
          expectSymbol(*e.children[3]), expectSymbol(*e.children[4])};
    } else if (head == "optimize-synth") {
      arity(e, 1, -1);
      const SExpr& tlist = *e.children[1];
      if (!tlist.isList())
        fail(tlist, "E-CMD", "optimize-synth expects a term list");
      CmdOptimizeSynth cmd;
      for (auto& t : tlist.children) cmd.terms.push_back(parseTerm(*t));
      cmd.attrs = parseAttributes(e, 2);
      c.node = std::move(cmd);
    } else if (head == "set-feature") {
      arity(e, 2, 2);
      const SExpr& kw = *e.children[1];
      const SExpr& val = *e.children[2];
      if (kw.kind != SExprKind::Keyword)
        fail(kw, "E-CMD", "set-feature expects a keyword");
      if (val.kind != SExprKind::Boolean)
        fail(val, "E-CMD", "set-feature expects a boolean");
      c.node = CmdSetFeature{kw.text.substr(1), val.text == "true"};
    } else if (head == "synth-fun") {
      arity(e, 3, 5);
      CmdSynthFun cmd;
      cmd.name = expectSymbol(*e.children[1]);
      cmd.args = parseSortedVars(*e.children[2]);
      cmd.returnSort = parseSort(*e.children[3]);
      if (e.children.size() == 5)
        fail(e, "E-CMD",
             "synth-fun grammar needs both a predeclaration and a rule "
             "listing");
      if (e.children.size() == 6)
        cmd.grammar = parseGrammar(*e.children[4], *e.children[5]);
      c.node = std::move(cmd);
    } else if (head == "oracle-assume" || head == "oracle-constraint") {
      c.node = parseOracleCombined(e, head == "oracle-assume");
    } else if (head == "declare-oracle-fun") {
      arity(e, 4, -1);
      CmdDeclareOracleFun cmd;
      cmd.name = expectSymbol(*e.children[1]);
      const SExpr& slist = *e.children[2];
      if (!slist.isList())
        fail(slist, "E-CMD", "declare-oracle-fun expects a sort list");
      // correctness oracles take the function to synthesize as an input,
      // so argument sorts may be function sorts
      for (auto& s : slist.children)
        cmd.argSorts.push_back(parseSort(*s, true));
      cmd.returnSort = parseSort(*e.children[3]);
      cmd.oracleName = expectSymbol(*e.children[4]);
      cmd.attrs = parseAttributes(e, 5);
      c.node = std::move(cmd);
    } else if (head == "oracle-constraint-io") {
      c.node = oracleSugar(e, OracleSugarKind::Io);
    } else if (head == "oracle-constraint-cex") {
      c.node = oracleSugar(e, OracleSugarKind::Cex);
    } else if (head == "oracle-constraint-membership") {
      c.node = oracleSugar(e, OracleSugarKind::Membership);
    } else if (head == "oracle-constraint-poswitness") {
      c.node = oracleSugar(e, OracleSugarKind::PosWitness);
    } else if (head == "oracle-constraint-negwitness") {
      c.node = oracleSugar(e, OracleSugarKind::NegWitness);
    } else if (head == "declare-correctness-oracle" ||
               head == "declare-correctness-cex-oracle") {
      arity(e, 2, 2);
      c.node = CmdDeclareCorrectnessOracle{
          head == "declare-correctness-cex-oracle",
          expectSymbol(*e.children[1]), expectSymbol(*e.children[2])};
    } else if (head == "declare-datatype") {
      arity(e, 2, 2);
      c.node = CmdDeclareDatatype{expectSymbol(*e.children[1]),
                                  parseDatatypeDecl(*e.children[2])};
    } else if (head == "declare-datatypes") {
      arity(e, 2, 2);
      c.node = parseDeclareDatatypes(e);
    } else if (head == "declare-sort") {
      arity(e, 2, 2);
      if (e.children[2]->kind != SExprKind::Numeral)
        fail(*e.children[2], "E-CMD", "declare-sort expects a numeral arity");
      c.node = CmdDeclareSort{expectSymbol(*e.children[1]),
                              std::stoll(e.children[2]->text)};
    } else if (head == "define-fun") {
      arity(e, 4, 4);
      c.node = CmdDefineFun{expectSymbol(*e.children[1]),
                            parseSortedVars(*e.children[2]),
                            parseSort(*e.children[3]),
                            parseTerm(*e.children[4])};
    } else if (head == "define-sort") {
      arity(e, 2, 3);
      CmdDefineSort cmd;
      cmd.name = expectSymbol(*e.children[1]);
      if (e.children.size() == 4) {
        const SExpr& plist = *e.children[2];
        if (!plist.isList())
          fail(plist, "E-CMD", "define-sort expects a parameter list");
        for (auto& p : plist.children) cmd.params.push_back(expectSymbol(*p));
        cmd.body = parseSort(*e.children[3]);
      } else {
        cmd.body = parseSort(*e.children[2]);
      }
      c.node = std::move(cmd);
    } else if (head == "set-info") {
      arity(e, 2, 2);
      c.node = CmdSetInfo{expectKeyword(*e.children[1]),
                          expectLiteral(*e.children[2])};
    } else if (head == "set-logic") {
      arity(e, 1, 1);
      c.node = CmdSetLogic{expectSymbol(*e.children[1])};
    } else if (head == "set-option") {
      arity(e, 2, 2);
      c.node = CmdSetOption{expectKeyword(*e.children[1]),
                            expectLiteral(*e.children[2])};
    } else {
      fail(e, "E-CMD", "unknown command '" + head + "'");
    }
    return c;
  }

  std::vector<Command> parseCommands(const std::vector<SExprPtr>& es) {
    std::vector<Command> out;
    for (auto& e : es) out.push_back(parseCommand(*e));
    return out;
  }

 private:
  [[noreturn]] void fail(const SExpr& e, const char* code,
                         const std::string& msg) {
    throw SygusError(code, e.span, msg);
  }

  // argument count check; max = -1 means unbounded
  void arity(const SExpr& e, int min, int max) {
    int n = static_cast<int>(e.children.size()) - 1;
    if (n < min || (max >= 0 && n > max))
      fail(e, "E-ARITY",
           "'" + e.children[0]->text + "' given " + std::to_string(n) +
               " argument(s)");
  }

  const SExprPtr& arg(const SExpr& e, int i, int exact) {
    arity(e, exact, exact);
    return e.children[static_cast<std::size_t>(i)];
  }

  std::string expectSymbol(const SExpr& e) {
    if (e.kind != SExprKind::Symbol)
      fail(e, "E-SYMBOL", "expected a symbol");
    if (isReserved(e.text))
      fail(e, "E-SYMBOL",
           "reserved word '" + e.text + "' used where a symbol is required");
    return e.text;
  }

  std::string expectKeyword(const SExpr& e) {
    if (e.kind != SExprKind::Keyword)
      fail(e, "E-CMD", "expected a keyword");
    return e.text;
  }

  Literal expectLiteral(const SExpr& e) {
    switch (e.kind) {
      case SExprKind::Numeral: return Literal{LitKind::Numeral, e.text};
      case SExprKind::Decimal: return Literal{LitKind::Decimal, e.text};
      case SExprKind::Boolean: return Literal{LitKind::Boolean, e.text};
      case SExprKind::Hex: return Literal{LitKind::Hex, e.text};
      case SExprKind::Binary: return Literal{LitKind::Binary, e.text};
      case SExprKind::String: return Literal{LitKind::String, e.text};
      default: fail(e, "E-CMD", "expected a literal");
    }
  }

  void checkSortName(const SExpr& e) {
    if (isReserved(e.text))
      fail(e, "E-SORT", "reserved word '" + e.text + "' used as a sort");
  }

  CmdOracleCombined parseOracleCombined(const SExpr& e, bool isAssume) {
    // two-list production: (oracle-constraint ((x σ)*) ((y σ)*) t N A*)
    // the permissive three-list relaxation accepts one extra leading list
    std::size_t nLists = 0;
    while (1 + nLists < e.children.size() &&
           e.children[1 + nLists]->isList() &&
           (e.children[1 + nLists]->children.empty() ||
            e.children[1 + nLists]->children[0]->isList()))
      ++nLists;
    CmdOracleCombined cmd;
    cmd.isAssume = isAssume;
    std::size_t termIdx;
    if (nLists == 2) {
      cmd.invars = parseSortedVars(*e.children[1], true);
      cmd.outvars = parseSortedVars(*e.children[2], true);
      termIdx = 3;
    } else if (nLists == 3) {
      if (!options_.permissive)
        fail(e, "E-ARITY",
             "oracle command takes exactly two sorted-variable lists");
      auto l1 = parseSortedVars(*e.children[1], true);
      auto l2 = parseSortedVars(*e.children[2], true);
      auto l3 = parseSortedVars(*e.children[3], true);
      int nonempty = !l1.empty() + !l2.empty() + !l3.empty();
      if (nonempty != 2)
        fail(e, "E-ARITY",
             "three-list oracle command needs exactly two nonempty lists");
      cmd.invars = std::move(l1);
      cmd.outvars = std::move(l2);
      cmd.outvars.insert(cmd.outvars.end(), l3.begin(), l3.end());
      termIdx = 4;
    } else {
      fail(e, "E-ARITY",
           "oracle command takes two sorted-variable lists, a term and an "
           "oracle name");
    }
    if (e.children.size() < termIdx + 2)
      fail(e, "E-ARITY", "oracle command is missing its term or oracle name");
    cmd.term = parseTerm(*e.children[termIdx]);
    cmd.oracleName = expectSymbol(*e.children[termIdx + 1]);
    cmd.attrs = parseAttributes(e, termIdx + 2);
    return cmd;
  }

  CmdOracleSugar oracleSugar(const SExpr& e, OracleSugarKind kind) {
    arity(e, 2, 2);
    return CmdOracleSugar{kind, expectSymbol(*e.children[1]),
                          expectSymbol(*e.children[2])};
  }

  DatatypeDecl parseDatatypeDecl(const SExpr& e) {
    if (!e.isList() || e.children.empty())
      fail(e, "E-CMD", "datatype declaration needs at least one constructor");
    DatatypeDecl decl;
    for (auto& ctor : e.children) {
      if (!ctor->isList() || ctor->children.empty())
        fail(*ctor, "E-CMD", "constructor must be (name (selector sort)*)");
      DatatypeConstructor dc;
      dc.name = expectSymbol(*ctor->children[0]);
      for (std::size_t i = 1; i < ctor->children.size(); ++i) {
        const SExpr& sel = *ctor->children[i];
        if (!sel.isList() || sel.children.size() != 2)
          fail(sel, "E-CMD", "selector must be (name sort)");
        dc.selectors.push_back(SortedVar{expectSymbol(*sel.children[0]),
                                         parseSort(*sel.children[1])});
      }
      decl.constructors.push_back(std::move(dc));
    }
    return decl;
  }

  CmdDeclareDatatypes parseDeclareDatatypes(const SExpr& e) {
    const SExpr& sdecls = *e.children[1];
    const SExpr& ddecls = *e.children[2];
    if (!sdecls.isList() || !ddecls.isList() ||
        sdecls.children.size() != ddecls.children.size() ||
        sdecls.children.empty())
      fail(e, "E-CMD",
           "declare-datatypes needs matching sort and datatype lists");
    CmdDeclareDatatypes cmd;
    for (auto& sd : sdecls.children) {
      if (!sd->isList() || sd->children.size() != 2 ||
          sd->children[1]->kind != SExprKind::Numeral)
        fail(*sd, "E-CMD", "sort declaration must be (name numeral)");
      cmd.sortDecls.emplace_back(expectSymbol(*sd->children[0]),
                                 std::stoll(sd->children[1]->text));
    }
    for (auto& dd : ddecls.children)
      cmd.decls.push_back(parseDatatypeDecl(*dd));
    return cmd;
  }

  ParserOptions options_;
};

}  // namespace sygus
