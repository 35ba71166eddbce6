#pragma once

// Builtin theory signatures (Core, Ints, Reals, BV, Strings, Arrays) plus
// user declarations (sorts, datatypes, macros, variables, functions to
// synthesize), and sort inference for terms.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sygus/ast.hpp"
#include "sygus/printer.hpp"
#include "sygus/sexpr.hpp"

namespace sygus {

struct TheorySet {
  bool ints = false;
  bool reals = false;
  bool bv = false;
  bool strings = false;
  bool arrays = false;
  bool datatypes = false;  // datatype machinery (DT logics always allow decls)
};

// Base-logic names used throughout; `linear` restricts constraints, not the
// signature.
struct BaseLogicInfo {
  std::string name;
  TheorySet theories;
  bool linear = false;
  bool core = false;  // default logic: Core only
};

inline std::optional<BaseLogicInfo> lookupBaseLogic(const std::string& name) {
  BaseLogicInfo info;
  info.name = name;
  if (name == "Core") {
    info.core = true;
    return info;
  }
  if (name == "LIA") { info.theories.ints = true; info.linear = true; return info; }
  if (name == "NIA") { info.theories.ints = true; return info; }
  if (name == "LRA") { info.theories.reals = true; info.linear = true; return info; }
  if (name == "NRA") { info.theories.reals = true; return info; }
  if (name == "BV") { info.theories.bv = true; return info; }
  if (name == "S") { info.theories.strings = true; info.theories.ints = true; info.linear = true; return info; }
  if (name == "SLIA") { info.theories.strings = true; info.theories.ints = true; info.linear = true; return info; }
  if (name == "DTLIA") { info.theories.datatypes = true; info.theories.ints = true; info.linear = true; return info; }
  if (name == "ABV") { info.theories.arrays = true; info.theories.bv = true; return info; }
  if (name == "ALIA") { info.theories.arrays = true; info.theories.ints = true; info.linear = true; return info; }
  return std::nullopt;
}

struct MacroDef {
  std::vector<SortedVar> params;
  Sort returnSort;
  TermPtr body;
};

struct FunRank {
  std::vector<Sort> args;
  Sort returnSort;
};

struct DatatypeDefInfo {
  std::string name;
  std::vector<DatatypeConstructor> constructors;
};

struct SortDecl {
  enum Kind { Builtin, Declared, Datatype, Alias } kind;
  long long arity = 0;
  std::vector<std::string> aliasParams;
  Sort aliasBody;
};

struct Signature {
  TheorySet theories;
  std::map<std::string, SortDecl> sorts;
  std::map<std::string, FunRank> funs;      // synth-funs, macros, oracle funs
  std::map<std::string, MacroDef> macros;   // define-fun bodies
  std::map<std::string, DatatypeDefInfo> datatypes;
  std::map<std::string, std::pair<std::string, std::size_t>> constructors;
  // selector name -> (datatype, constructor, index)
  struct SelectorInfo { std::string datatype; std::string ctor; std::size_t index; Sort sort; };
  std::map<std::string, SelectorInfo> selectors;
  std::set<std::string> synthFuns;
  std::set<std::string> weightKeywords;  // without leading ':'
  bool permissive = false;

  bool hasSymbol(const std::string& name) const {
    return funs.count(name) || constructors.count(name) ||
           selectors.count(name) || sorts.count(name);
  }
};

inline Signature baseSignature(const TheorySet& th, bool permissive = false) {
  Signature sig;
  sig.theories = th;
  sig.permissive = permissive;
  sig.weightKeywords.insert("weight");
  sig.sorts["Bool"] = SortDecl{SortDecl::Builtin, 0, {}, {}};
  if (th.ints) sig.sorts["Int"] = SortDecl{SortDecl::Builtin, 0, {}, {}};
  if (th.reals) sig.sorts["Real"] = SortDecl{SortDecl::Builtin, 0, {}, {}};
  if (th.strings) {
    sig.sorts["String"] = SortDecl{SortDecl::Builtin, 0, {}, {}};
    sig.sorts["RegLan"] = SortDecl{SortDecl::Builtin, 0, {}, {}};
    sig.sorts["Int"] = SortDecl{SortDecl::Builtin, 0, {}, {}};
  }
  if (th.bv) sig.sorts["BitVec"] = SortDecl{SortDecl::Builtin, 1, {}, {}};
  if (th.arrays) sig.sorts["Array"] = SortDecl{SortDecl::Builtin, 2, {}, {}};
  return sig;
}

// ---- sort resolution -----------------------------------------------------

inline Sort substituteSortParams(const Sort& body,
                                 const std::map<std::string, Sort>& binding) {
  if (body.args.empty() && !body.head.indexed()) {
    auto it = binding.find(body.head.base);
    if (it != binding.end()) return it->second;
  }
  Sort out{body.head, {}};
  for (auto& a : body.args) out.args.push_back(substituteSortParams(a, binding));
  return out;
}

// Expands define-sort aliases and validates arities/indices.
inline Sort resolveSort(const Signature& sig, const Sort& s,
                        Span span = {}) {
  if (s.isFunctionSort()) {
    Sort out{s.head, {}};
    for (auto& a : s.args) out.args.push_back(resolveSort(sig, a, span));
    return out;
  }
  if (s.head.base == "BitVec") {
    if (!sig.theories.bv)
      throw SygusError("E-SORT", span, "BitVec is not in the current logic");
    if (s.head.indices.size() != 1 || !s.args.empty())
      throw SygusError("E-SORT", span, "BitVec takes one numeral index");
    if (!matchesNumeral(s.head.indices[0]) || s.head.indices[0] == "0")
      throw SygusError("E-SORT", span, "BitVec width must be a positive numeral");
    return s;
  }
  if (s.head.indexed())
    throw SygusError("E-SORT", span,
                     "unknown indexed sort '" + s.head.base + "'");
  auto it = sig.sorts.find(s.head.base);
  if (it == sig.sorts.end())
    throw SygusError("E-SORT", span, "unknown sort '" + s.head.base + "'");
  const SortDecl& decl = it->second;
  if (decl.kind == SortDecl::Alias) {
    if (static_cast<long long>(s.args.size()) !=
        static_cast<long long>(decl.aliasParams.size()))
      throw SygusError("E-SORT", span,
                       "sort alias '" + s.head.base + "' arity mismatch");
    std::map<std::string, Sort> binding;
    for (std::size_t i = 0; i < decl.aliasParams.size(); ++i)
      binding[decl.aliasParams[i]] = resolveSort(sig, s.args[i], span);
    return resolveSort(sig, substituteSortParams(decl.aliasBody, binding),
                       span);
  }
  if (static_cast<long long>(s.args.size()) != decl.arity)
    throw SygusError("E-SORT", span,
                     "sort '" + s.head.base + "' applied at wrong arity");
  Sort out{s.head, {}};
  for (auto& a : s.args) out.args.push_back(resolveSort(sig, a, span));
  return out;
}

inline bool isBoolSort(const Sort& s) { return s.head.is("Bool"); }
inline bool isIntSort(const Sort& s) { return s.head.is("Int"); }
inline bool isRealSort(const Sort& s) { return s.head.is("Real"); }
inline bool isStringSort(const Sort& s) { return s.head.is("String"); }
inline bool isRegLanSort(const Sort& s) { return s.head.is("RegLan"); }
inline bool isBitVecSort(const Sort& s) {
  return s.head.base == "BitVec" && s.head.indices.size() == 1;
}
inline unsigned bitVecWidth(const Sort& s) {
  return static_cast<unsigned>(std::stoul(s.head.indices[0]));
}

// ---- sort inference ------------------------------------------------------

using SortEnv = std::map<std::string, Sort>;

class SortChecker {
 public:
  SortChecker(const Signature& sig) : sig_(sig) {}

  Sort check(const Term& t, const SortEnv& env) const {
    if (auto* id = asIdent(t)) return checkIdent(*id, t.span, env);
    if (auto* lit = asLiteral(t)) return literalSort(lit->lit, t.span);
    if (auto* an = asAnnotated(t)) return check(*an->body, env);
    if (auto* b = asBinder(t)) {
      SortEnv inner = env;
      for (auto& sv : b->binders)
        inner[sv.name] = resolveSort(sig_, sv.sort, t.span);
      Sort body = check(*b->body, inner);
      if (!isBoolSort(body))
        throw SygusError("E-RANK", t.span, "quantified body must be Bool");
      return simpleSort("Bool");
    }
    if (auto* l = asLet(t)) {
      SortEnv inner = env;
      for (auto& [name, bound] : l->bindings) inner[name] = check(*bound, env);
      return check(*l->body, inner);
    }
    return checkApply(*asApply(t), t.span, env);
  }

  Sort literalSort(const Literal& lit, Span span) const {
    switch (lit.kind) {
      case LitKind::Boolean:
        return simpleSort("Bool");
      case LitKind::Numeral:
        if (sig_.theories.ints) return simpleSort("Int");
        if (sig_.theories.reals) return simpleSort("Real");
        throw SygusError("E-LOGIC-TERM", span,
                         "numerals are not in the current logic");
      case LitKind::Decimal:
        if (sig_.theories.reals) return simpleSort("Real");
        throw SygusError("E-LOGIC-TERM", span,
                         "decimals are not in the current logic");
      case LitKind::Hex:
      case LitKind::Binary: {
        if (!sig_.theories.bv)
          throw SygusError("E-LOGIC-TERM", span,
                           "bit-vector constants are not in the current logic");
        unsigned digits = static_cast<unsigned>(lit.text.size() - 2);
        return bitVecSort(lit.kind == LitKind::Hex ? digits * 4 : digits);
      }
      case LitKind::String:
        if (!sig_.theories.strings)
          throw SygusError("E-LOGIC-TERM", span,
                           "string constants are not in the current logic");
        return simpleSort("String");
    }
    throw SygusError("E-RANK", span, "unreachable literal kind");
  }

 private:
  Sort checkIdent(const TermIdent& id, Span span, const SortEnv& env) const {
    const Identifier& ident = id.id;
    if (!ident.indexed()) {
      auto it = env.find(ident.base);
      if (it != env.end()) return it->second;
      auto f = sig_.funs.find(ident.base);
      if (f != sig_.funs.end()) {
        if (f->second.args.empty()) return f->second.returnSort;
        // ranked function used as an argument: its function sort
        std::vector<Sort> fs = f->second.args;
        fs.push_back(f->second.returnSort);
        return functionSort(std::move(fs));
      }
      auto c = sig_.constructors.find(ident.base);
      if (c != sig_.constructors.end()) {
        auto& dt = sig_.datatypes.at(c->second.first);
        if (dt.constructors[c->second.second].selectors.empty())
          return simpleSort(c->second.first);
      }
      if (sig_.theories.strings &&
          (ident.base == "re.none" || ident.base == "re.all" ||
           ident.base == "re.allchar"))
        return simpleSort("RegLan");
      throw SygusError("E-UNBOUND", span,
                       "unbound symbol '" + ident.base + "'");
    }
    // weight symbol (_ w f)
    if (ident.indices.size() == 1 &&
        sig_.weightKeywords.count(ident.base) &&
        sig_.synthFuns.count(ident.indices[0]))
      return simpleSort("Int");
    throw SygusError("E-UNBOUND", span,
                     "unknown indexed symbol '" + ident.base + "'");
  }

  [[noreturn]] void rankError(Span span, const std::string& head,
                              const std::string& why) const {
    throw SygusError("E-RANK", span, "'" + head + "': " + why);
  }

  void needArity(Span span, const std::string& head,
                 const std::vector<Sort>& argSorts, std::size_t n) const {
    if (argSorts.size() != n)
      rankError(span, head, "expected " + std::to_string(n) + " argument(s)");
  }

  void needMin(Span span, const std::string& head,
               const std::vector<Sort>& argSorts, std::size_t n) const {
    if (argSorts.size() < n)
      rankError(span, head,
                "expected at least " + std::to_string(n) + " argument(s)");
  }

  void allEqual(Span span, const std::string& head,
                const std::vector<Sort>& argSorts) const {
    for (std::size_t i = 1; i < argSorts.size(); ++i)
      if (argSorts[i] != argSorts[0])
        rankError(span, head, "arguments have different sorts");
  }

  Sort checkApply(const TermApply& app, Span span, const SortEnv& env) const {
    std::vector<Sort> a;
    for (auto& arg : app.args) a.push_back(check(*arg, env));
    const Identifier& id = app.head;
    const std::string& h = id.base;

    if (id.indexed()) return checkIndexedApply(id, a, span);

    // user functions / macros / synth-funs / oracle funs
    auto f = sig_.funs.find(h);
    if (f != sig_.funs.end() && !f->second.args.empty()) {
      if (a.size() != f->second.args.size())
        rankError(span, h, "wrong number of arguments");
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != f->second.args[i])
          rankError(span, h, "argument " + std::to_string(i + 1) +
                                 " has sort " + toString(a[i]) +
                                 ", expected " + toString(f->second.args[i]));
      return f->second.returnSort;
    }
    // function-sorted variables (oracle function symbols) applied to args
    auto ev = env.find(h);
    if (ev != env.end() && ev->second.isFunctionSort()) {
      const Sort& fs = ev->second;
      if (a.size() + 1 != fs.args.size())
        rankError(span, h, "wrong number of arguments");
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != fs.args[i]) rankError(span, h, "argument sort mismatch");
      return fs.args.back();
    }
    // datatype constructors / selectors
    auto c = sig_.constructors.find(h);
    if (c != sig_.constructors.end()) {
      auto& dt = sig_.datatypes.at(c->second.first);
      auto& sels = dt.constructors[c->second.second].selectors;
      if (a.size() != sels.size())
        rankError(span, h, "wrong number of constructor arguments");
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != resolveSort(sig_, sels[i].sort, span))
          rankError(span, h, "constructor argument sort mismatch");
      return simpleSort(c->second.first);
    }
    auto sel = sig_.selectors.find(h);
    if (sel != sig_.selectors.end()) {
      needArity(span, h, a, 1);
      if (!a[0].head.is(sel->second.datatype))
        rankError(span, h, "selector applied to wrong datatype");
      return resolveSort(sig_, sel->second.sort, span);
    }

    return checkBuiltinApply(h, a, span);
  }

  Sort checkIndexedApply(const Identifier& id, const std::vector<Sort>& a,
                         Span span) const {
    if (id.base == "extract" && id.indices.size() == 2) {
      if (!sig_.theories.bv)
        rankError(span, "extract", "bit-vectors are not in the current logic");
      needArity(span, "extract", a, 1);
      if (!isBitVecSort(a[0]))
        rankError(span, "extract", "argument must be a bit-vector");
      long long n = std::stoll(id.indices[0]);
      long long m = std::stoll(id.indices[1]);
      long long w = bitVecWidth(a[0]);
      if (m < 0 || n < m || n >= w)
        rankError(span, "extract", "indices out of range");
      return bitVecSort(static_cast<unsigned>(n - m + 1));
    }
    if (id.base == "is" && id.indices.size() == 1) {
      auto c = sig_.constructors.find(id.indices[0]);
      if (c == sig_.constructors.end())
        rankError(span, "is", "unknown constructor '" + id.indices[0] + "'");
      needArity(span, "is", a, 1);
      if (!a[0].head.is(c->second.first))
        rankError(span, "is", "discriminator applied to wrong datatype");
      return simpleSort("Bool");
    }
    rankError(span, id.base, "unknown indexed function");
  }

  Sort checkBuiltinApply(const std::string& h, const std::vector<Sort>& a,
                         Span span) const {
    auto boolS = simpleSort("Bool");
    auto intS = simpleSort("Int");
    auto realS = simpleSort("Real");
    auto stringS = simpleSort("String");
    auto regS = simpleSort("RegLan");

    // ---- core ----
    if (h == "not") {
      needArity(span, h, a, 1);
      if (!isBoolSort(a[0])) rankError(span, h, "argument must be Bool");
      return boolS;
    }
    if (h == "and" || h == "or" || h == "=>" || h == "xor") {
      needMin(span, h, a, 2);
      for (auto& s : a)
        if (!isBoolSort(s)) rankError(span, h, "arguments must be Bool");
      return boolS;
    }
    if (h == "=" || h == "distinct") {
      // chainable / pairwise in SMT-LIB Core
      needMin(span, h, a, 2);
      allEqual(span, h, a);
      return boolS;
    }
    if (h == "ite") {
      needArity(span, h, a, 3);
      if (!isBoolSort(a[0])) rankError(span, h, "condition must be Bool");
      if (a[1] != a[2]) rankError(span, h, "branches have different sorts");
      return a[1];
    }

    // ---- arithmetic ----
    bool intsOn = sig_.theories.ints, realsOn = sig_.theories.reals;
    auto numeric = [&](const Sort& s) {
      return (intsOn && isIntSort(s)) || (realsOn && isRealSort(s));
    };
    if (h == "+" || h == "*") {
      if (intsOn || realsOn) {
        needMin(span, h, a, 2);
        allEqual(span, h, a);
        if (!numeric(a[0])) rankError(span, h, "arguments must be numeric");
        return a[0];
      }
    }
    if (h == "-") {
      if (intsOn || realsOn) {
        needMin(span, h, a, 1);
        allEqual(span, h, a);
        if (!numeric(a[0])) rankError(span, h, "arguments must be numeric");
        return a[0];
      }
    }
    if (h == "div" || h == "mod") {
      if (intsOn) {
        needArity(span, h, a, 2);
        if (!isIntSort(a[0]) || !isIntSort(a[1]))
          rankError(span, h, "arguments must be Int");
        return intS;
      }
    }
    if (h == "abs" && intsOn) {
      needArity(span, h, a, 1);
      if (!isIntSort(a[0])) rankError(span, h, "argument must be Int");
      return intS;
    }
    if (intsOn && realsOn) {
      // Reals_Ints conversions
      if (h == "to_real") {
        needArity(span, h, a, 1);
        if (!isIntSort(a[0])) rankError(span, h, "argument must be Int");
        return realS;
      }
      if (h == "to_int") {
        needArity(span, h, a, 1);
        if (!isRealSort(a[0])) rankError(span, h, "argument must be Real");
        return intS;
      }
      if (h == "is_int") {
        needArity(span, h, a, 1);
        if (!isRealSort(a[0])) rankError(span, h, "argument must be Real");
        return boolS;
      }
    }
    if (h == "/" && realsOn) {
      needArity(span, h, a, 2);
      if (!isRealSort(a[0]) || !isRealSort(a[1]))
        rankError(span, h, "arguments must be Real");
      return realS;
    }
    if (h == "<" || h == "<=" || h == ">" || h == ">=") {
      if (intsOn || realsOn) {
        needMin(span, h, a, 2);  // chainable in SMT-LIB
        allEqual(span, h, a);
        if (!numeric(a[0])) rankError(span, h, "arguments must be numeric");
        return boolS;
      }
    }

    // ---- bit-vectors ----
    if (sig_.theories.bv) {
      auto bvOk = [&](std::size_t i) {
        if (!isBitVecSort(a[i]))
          rankError(span, h, "argument must be a bit-vector");
      };
      if (h == "bvnot" || h == "bvneg") {
        needArity(span, h, a, 1);
        bvOk(0);
        return a[0];
      }
      if (h == "bvand" || h == "bvor" || h == "bvadd" || h == "bvmul") {
        needMin(span, h, a, 2);
        bvOk(0);
        allEqual(span, h, a);
        return a[0];
      }
      if (h == "bvudiv" || h == "bvurem" || h == "bvshl" || h == "bvlshr" ||
          h == "bvsub" || h == "bvxor" || h == "bvnand" || h == "bvnor" ||
          h == "bvxnor" || h == "bvsdiv" || h == "bvsrem" || h == "bvsmod" ||
          h == "bvashr") {
        needArity(span, h, a, 2);
        bvOk(0);
        allEqual(span, h, a);
        return a[0];
      }
      if (h == "bvult" || h == "bvule" || h == "bvugt" || h == "bvuge" ||
          h == "bvslt" || h == "bvsle" || h == "bvsgt" || h == "bvsge") {
        needArity(span, h, a, 2);
        bvOk(0);
        allEqual(span, h, a);
        return boolS;
      }
      if (h == "concat") {
        needMin(span, h, a, 2);
        unsigned total = 0;
        for (auto& s : a) {
          if (!isBitVecSort(s))
            rankError(span, h, "arguments must be bit-vectors");
          total += bitVecWidth(s);
        }
        return bitVecSort(total);
      }
    }

    // ---- strings ----
    if (sig_.theories.strings) {
      auto fixed = [&](std::initializer_list<Sort> args,
                       const Sort& ret) -> Sort {
        needArity(span, h, a, args.size());
        std::size_t i = 0;
        for (auto& want : args) {
          if (a[i] != want)
            rankError(span, h,
                      "argument " + std::to_string(i + 1) + " must be " +
                          toString(want));
          ++i;
        }
        return ret;
      };
      if (h == "str.++") {
        needMin(span, h, a, 2);
        for (auto& s : a)
          if (!isStringSort(s)) rankError(span, h, "arguments must be String");
        return stringS;
      }
      if (h == "str.len") return fixed({stringS}, intS);
      if (h == "str.at") return fixed({stringS, intS}, stringS);
      if (h == "str.substr") return fixed({stringS, intS, intS}, stringS);
      if (h == "str.indexof") return fixed({stringS, stringS, intS}, intS);
      if (h == "str.replace" || h == "str.replace_all")
        return fixed({stringS, stringS, stringS}, stringS);
      if (h == "str.contains" || h == "str.prefixof" || h == "str.suffixof")
        return fixed({stringS, stringS}, boolS);
      if (h == "str.<" || h == "str.<=") return fixed({stringS, stringS}, boolS);
      if (h == "str.is_digit") return fixed({stringS}, boolS);
      if (h == "str.to_int" || h == "str.to_code") return fixed({stringS}, intS);
      if (h == "str.from_int" || h == "str.from_code")
        return fixed({intS}, stringS);
      if (h == "str.to_re" || h == "str.to.re") return fixed({stringS}, regS);
      if (h == "str.in_re" || h == "str.in.re")
        return fixed({stringS, regS}, boolS);
      if (h == "re.none" || h == "re.all" || h == "re.allchar") {
        needArity(span, h, a, 0);
        return regS;
      }
      if (h == "re.++" || h == "re.union" || h == "re.inter") {
        needMin(span, h, a, 2);
        for (auto& s : a)
          if (!isRegLanSort(s)) rankError(span, h, "arguments must be RegLan");
        return regS;
      }
      if (h == "re.*" || h == "re.+" || h == "re.opt" || h == "re.comp")
        return fixed({regS}, regS);
      if (h == "re.diff") return fixed({regS, regS}, regS);
      if (h == "re.range") return fixed({stringS, stringS}, regS);
    }

    // ---- arrays ----
    if (sig_.theories.arrays) {
      if (h == "select") {
        needArity(span, h, a, 2);
        if (!a[0].head.is("Array") || a[0].args.size() != 2)
          rankError(span, h, "first argument must be an array");
        if (a[1] != a[0].args[0]) rankError(span, h, "index sort mismatch");
        return a[0].args[1];
      }
      if (h == "store") {
        needArity(span, h, a, 3);
        if (!a[0].head.is("Array") || a[0].args.size() != 2)
          rankError(span, h, "first argument must be an array");
        if (a[1] != a[0].args[0]) rankError(span, h, "index sort mismatch");
        if (a[2] != a[0].args[1]) rankError(span, h, "element sort mismatch");
        return a[0];
      }
    }

    throw SygusError("E-UNBOUND", span, "unknown function '" + h + "'");
  }

  const Signature& sig_;
};

inline Sort sortCheck(const Term& t, const Signature& sig,
                      const SortEnv& env = {}) {
  return SortChecker(sig).check(t, env);
}

// ---- datatype declaration ------------------------------------------------

inline void declareDatatypes(
    Signature& sig,
    const std::vector<std::pair<std::string, long long>>& sortDecls,
    const std::vector<DatatypeDecl>& decls, Span span = {}) {
  if (sortDecls.size() != decls.size())
    throw SygusError("E-CMD", span,
                     "declare-datatypes list length mismatch");
  for (auto& [name, arity] : sortDecls) {
    if (arity != 0)
      throw SygusError("E-CMD", span,
                       "parametric datatypes are not supported");
    if (sig.sorts.count(name))
      throw SygusError("E-DUP-SYMBOL", span,
                       "sort '" + name + "' already exists");
    sig.sorts[name] = SortDecl{SortDecl::Datatype, 0, {}, {}};
    sig.theories.datatypes = true;
  }
  for (std::size_t i = 0; i < decls.size(); ++i) {
    const std::string& dtName = sortDecls[i].first;
    DatatypeDefInfo def;
    def.name = dtName;
    for (std::size_t ci = 0; ci < decls[i].constructors.size(); ++ci) {
      const auto& ctor = decls[i].constructors[ci];
      if (sig.hasSymbol(ctor.name) || sig.constructors.count(ctor.name) )
        throw SygusError("E-DUP-SYMBOL", span,
                         "constructor '" + ctor.name + "' already exists");
      DatatypeConstructor resolved;
      resolved.name = ctor.name;
      for (auto& sel : ctor.selectors) {
        if (sig.hasSymbol(sel.name) || sig.selectors.count(sel.name))
          throw SygusError("E-DUP-SYMBOL", span,
                           "selector '" + sel.name + "' already exists");
        resolved.selectors.push_back(
            SortedVar{sel.name, resolveSort(sig, sel.sort, span)});
      }
      sig.constructors[ctor.name] = {dtName, ci};
      for (std::size_t si = 0; si < resolved.selectors.size(); ++si)
        sig.selectors[resolved.selectors[si].name] =
            Signature::SelectorInfo{dtName, ctor.name, si,
                                    resolved.selectors[si].sort};
      def.constructors.push_back(std::move(resolved));
    }
    sig.datatypes[dtName] = std::move(def);
  }
}

}  // namespace sygus
