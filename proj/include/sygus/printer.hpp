#pragma once

// AST -> concrete syntax. Output re-parses to a structurally equal node.

#include <sstream>
#include <string>

#include "sygus/ast.hpp"

namespace sygus {

inline void printIdentifier(const Identifier& id, std::string& out) {
  if (id.indices.empty()) {
    out += id.base;
  } else {
    out += "(_ ";
    out += id.base;
    for (auto& i : id.indices) {
      out.push_back(' ');
      out += i;
    }
    out.push_back(')');
  }
}

inline void printSort(const Sort& s, std::string& out) {
  if (s.args.empty()) {
    printIdentifier(s.head, out);
  } else {
    out.push_back('(');
    printIdentifier(s.head, out);
    for (auto& a : s.args) {
      out.push_back(' ');
      printSort(a, out);
    }
    out.push_back(')');
  }
}

inline std::string toString(const Sort& s) {
  std::string out;
  printSort(s, out);
  return out;
}

inline void printAttribute(const Attribute& a, std::string& out) {
  out += a.keyword;
  if (a.value) {
    out.push_back(' ');
    printSExpr(*a.value, out);
  }
}

inline void printSortedVars(const std::vector<SortedVar>& vars,
                            std::string& out) {
  out.push_back('(');
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out.push_back(' ');
    out.push_back('(');
    out += vars[i].name;
    out.push_back(' ');
    printSort(vars[i].sort, out);
    out.push_back(')');
  }
  out.push_back(')');
}

inline void printTerm(const Term& t, std::string& out) {
  visitTerm(
      [&](auto&& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TermIdent>) {
          printIdentifier(n.id, out);
        } else if constexpr (std::is_same_v<T, TermLiteral>) {
          out += n.lit.text;
        } else if constexpr (std::is_same_v<T, TermApply>) {
          out.push_back('(');
          printIdentifier(n.head, out);
          for (auto& a : n.args) {
            out.push_back(' ');
            printTerm(*a, out);
          }
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, TermAnnotated>) {
          out += "(! ";
          printTerm(*n.body, out);
          for (auto& a : n.attrs) {
            out.push_back(' ');
            printAttribute(a, out);
          }
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, TermBinder>) {
          out += n.kind == BinderKind::Exists ? "(exists " : "(forall ";
          printSortedVars(n.binders, out);
          out.push_back(' ');
          printTerm(*n.body, out);
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, TermLet>) {
          out += "(let (";
          for (std::size_t i = 0; i < n.bindings.size(); ++i) {
            if (i) out.push_back(' ');
            out.push_back('(');
            out += n.bindings[i].first;
            out.push_back(' ');
            printTerm(*n.bindings[i].second, out);
            out.push_back(')');
          }
          out += ") ";
          printTerm(*n.body, out);
          out.push_back(')');
        }
      },
      t);
}

inline std::string toString(const Term& t) {
  std::string out;
  printTerm(t, out);
  return out;
}

inline std::string toString(const TermPtr& t) { return toString(*t); }

inline void printGTerm(const GTerm& g, std::string& out) {
  std::visit(
      [&](auto&& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GTermConstant>) {
          out += "(Constant ";
          printSort(n.sort, out);
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, GTermVariable>) {
          out += "(Variable ";
          printSort(n.sort, out);
          out.push_back(')');
        } else {
          printTerm(*n.term, out);
        }
      },
      g.node);
}

inline void printGrammar(const GrammarDef& g, std::string& out,
                         const std::string& indent = "  ") {
  out += indent;
  printSortedVars(g.nonterminals, out);
  out.push_back('\n');
  out += indent;
  out += "(";
  for (std::size_t i = 0; i < g.nonterminals.size(); ++i) {
    if (i) {
      out.push_back('\n');
      out += indent;
      out.push_back(' ');
    }
    out.push_back('(');
    out += g.nonterminals[i].name;
    out.push_back(' ');
    printSort(g.nonterminals[i].sort, out);
    out += " (";
    for (std::size_t j = 0; j < g.rules[i].size(); ++j) {
      if (j) out.push_back(' ');
      printGTerm(g.rules[i][j], out);
    }
    out += "))";
  }
  out.push_back(')');
}

inline void printDatatypeDecl(const DatatypeDecl& d, std::string& out) {
  out.push_back('(');
  for (std::size_t i = 0; i < d.constructors.size(); ++i) {
    if (i) out.push_back(' ');
    auto& c = d.constructors[i];
    out.push_back('(');
    out += c.name;
    for (auto& s : c.selectors) {
      out += " (";
      out += s.name;
      out.push_back(' ');
      printSort(s.sort, out);
      out.push_back(')');
    }
    out.push_back(')');
  }
  out.push_back(')');
}

inline void printCommand(const Command& c, std::string& out) {
  std::visit(
      [&](auto&& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, CmdAssume>) {
          out += "(assume ";
          printTerm(*n.term, out);
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, CmdCheckSynth>) {
          out += "(check-synth)";
        } else if constexpr (std::is_same_v<T, CmdChcConstraint>) {
          out += "(chc-constraint ";
          printSortedVars(n.vars, out);
          out.push_back(' ');
          printTerm(*n.body, out);
          out.push_back(' ');
          printTerm(*n.head, out);
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, CmdConstraint>) {
          out += "(constraint ";
          printTerm(*n.term, out);
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, CmdDeclareVar>) {
          out += "(declare-var ";
          out += n.name;
          out.push_back(' ');
          printSort(n.sort, out);
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, CmdDeclareWeight>) {
          out += "(declare-weight ";
          out += n.keyword;
          for (auto& a : n.attrs) {
            out.push_back(' ');
            printAttribute(a, out);
          }
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, CmdInvConstraint>) {
          out += "(inv-constraint " + n.s + " " + n.pre + " " + n.trans + " " +
                 n.post + ")";
        } else if constexpr (std::is_same_v<T, CmdOptimizeSynth>) {
          out += "(optimize-synth (";
          for (std::size_t i = 0; i < n.terms.size(); ++i) {
            if (i) out.push_back(' ');
            printTerm(*n.terms[i], out);
          }
          out.push_back(')');
          for (auto& a : n.attrs) {
            out.push_back(' ');
            printAttribute(a, out);
          }
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, CmdSetFeature>) {
          out += "(set-feature :" + n.feature + " " +
                 (n.value ? "true" : "false") + ")";
        } else if constexpr (std::is_same_v<T, CmdSynthFun>) {
          out += "(synth-fun " + n.name + " ";
          printSortedVars(n.args, out);
          out.push_back(' ');
          printSort(n.returnSort, out);
          if (n.grammar) {
            out.push_back('\n');
            printGrammar(*n.grammar, out);
          }
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, CmdOracleCombined>) {
          out += n.isAssume ? "(oracle-assume " : "(oracle-constraint ";
          printSortedVars(n.invars, out);
          out.push_back(' ');
          printSortedVars(n.outvars, out);
          out.push_back(' ');
          printTerm(*n.term, out);
          out.push_back(' ');
          out += n.oracleName;
          for (auto& a : n.attrs) {
            out.push_back(' ');
            printAttribute(a, out);
          }
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, CmdDeclareOracleFun>) {
          out += "(declare-oracle-fun " + n.name + " (";
          for (std::size_t i = 0; i < n.argSorts.size(); ++i) {
            if (i) out.push_back(' ');
            printSort(n.argSorts[i], out);
          }
          out += ") ";
          printSort(n.returnSort, out);
          out.push_back(' ');
          out += n.oracleName;
          for (auto& a : n.attrs) {
            out.push_back(' ');
            printAttribute(a, out);
          }
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, CmdOracleSugar>) {
          switch (n.kind) {
            case OracleSugarKind::Io: out += "(oracle-constraint-io "; break;
            case OracleSugarKind::Cex: out += "(oracle-constraint-cex "; break;
            case OracleSugarKind::Membership:
              out += "(oracle-constraint-membership ";
              break;
            case OracleSugarKind::PosWitness:
              out += "(oracle-constraint-poswitness ";
              break;
            case OracleSugarKind::NegWitness:
              out += "(oracle-constraint-negwitness ";
              break;
          }
          out += n.fun + " " + n.oracleName + ")";
        } else if constexpr (std::is_same_v<T, CmdDeclareCorrectnessOracle>) {
          out += n.withCex ? "(declare-correctness-cex-oracle "
                           : "(declare-correctness-oracle ";
          out += n.fun + " " + n.oracleName + ")";
        } else if constexpr (std::is_same_v<T, CmdDeclareDatatype>) {
          out += "(declare-datatype " + n.name + " ";
          printDatatypeDecl(n.decl, out);
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, CmdDeclareDatatypes>) {
          out += "(declare-datatypes (";
          for (std::size_t i = 0; i < n.sortDecls.size(); ++i) {
            if (i) out.push_back(' ');
            out += "(" + n.sortDecls[i].first + " " +
                   std::to_string(n.sortDecls[i].second) + ")";
          }
          out += ") (";
          for (std::size_t i = 0; i < n.decls.size(); ++i) {
            if (i) out.push_back(' ');
            printDatatypeDecl(n.decls[i], out);
          }
          out += "))";
        } else if constexpr (std::is_same_v<T, CmdDeclareSort>) {
          out += "(declare-sort " + n.name + " " + std::to_string(n.arity) +
                 ")";
        } else if constexpr (std::is_same_v<T, CmdDefineFun>) {
          out += "(define-fun " + n.name + " ";
          printSortedVars(n.args, out);
          out.push_back(' ');
          printSort(n.returnSort, out);
          out.push_back(' ');
          printTerm(*n.body, out);
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, CmdDefineSort>) {
          out += "(define-sort " + n.name + " (";
          for (std::size_t i = 0; i < n.params.size(); ++i) {
            if (i) out.push_back(' ');
            out += n.params[i];
          }
          out += ") ";
          printSort(n.body, out);
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, CmdSetInfo>) {
          out += "(set-info " + n.keyword + " " + n.value.text + ")";
        } else if constexpr (std::is_same_v<T, CmdSetLogic>) {
          out += "(set-logic " + n.logic + ")";
        } else if constexpr (std::is_same_v<T, CmdSetOption>) {
          out += "(set-option " + n.keyword + " " + n.value.text + ")";
        }
      },
      c.node);
}

inline std::string toString(const Command& c) {
  std::string out;
  printCommand(c, out);
  return out;
}

}  // namespace sygus
