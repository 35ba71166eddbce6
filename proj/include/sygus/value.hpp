#pragma once

// Evaluated constants: arbitrary-precision integers and rationals, fixed
// width bit-vectors, strings, booleans, datatype values and closed function
// values, with bit-exact printing and parsing.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "sygus/ast.hpp"
#include "sygus/parser.hpp"
#include "sygus/sexpr.hpp"

namespace sygus {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct IntV {
  mpz_class v;
};
struct RealV {
  mpq_class v;  // canonicalized
};
struct BoolV {
  bool v;
};
struct BVV {
  unsigned width;
  mpz_class bits;     // 0 <= bits < 2^width
  char preferredBase; // 'x', 'b', or 0 when unknown
};
struct StringV {
  std::string chars;
};
struct DTV {
  std::string ctor;
  std::vector<ValuePtr> args;
};
struct FunV {
  std::vector<SortedVar> params;
  TermPtr body;  // closed under params
};

struct Value {
  std::variant<IntV, RealV, BoolV, BVV, StringV, DTV, FunV> node;
};

inline ValuePtr mkValue(Value v) {
  return std::make_shared<const Value>(std::move(v));
}
inline ValuePtr vInt(mpz_class v) { return mkValue(Value{IntV{std::move(v)}}); }
inline ValuePtr vInt(long v) { return vInt(mpz_class(v)); }
inline ValuePtr vReal(mpq_class v) {
  v.canonicalize();
  return mkValue(Value{RealV{std::move(v)}});
}
inline ValuePtr vBool(bool v) { return mkValue(Value{BoolV{v}}); }
inline ValuePtr vString(std::string s) {
  return mkValue(Value{StringV{std::move(s)}});
}
inline ValuePtr vBV(unsigned width, mpz_class bits, char base = 0) {
  mpz_class mask = (mpz_class(1) << width) - 1;
  mpz_class clipped = bits & mask;
  return mkValue(Value{BVV{width, std::move(clipped), base}});
}

template <class T>
const T* asValue(const Value& v) {
  return std::get_if<T>(&v.node);
}

inline bool valueEqual(const Value& a, const Value& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* x = asValue<IntV>(a)) return x->v == asValue<IntV>(b)->v;
  if (auto* x = asValue<RealV>(a)) return x->v == asValue<RealV>(b)->v;
  if (auto* x = asValue<BoolV>(a)) return x->v == asValue<BoolV>(b)->v;
  if (auto* x = asValue<BVV>(a)) {
    auto* y = asValue<BVV>(b);
    return x->width == y->width && x->bits == y->bits;
  }
  if (auto* x = asValue<StringV>(a))
    return x->chars == asValue<StringV>(b)->chars;
  if (auto* x = asValue<DTV>(a)) {
    auto* y = asValue<DTV>(b);
    if (x->ctor != y->ctor || x->args.size() != y->args.size()) return false;
    for (std::size_t i = 0; i < x->args.size(); ++i)
      if (!valueEqual(*x->args[i], *y->args[i])) return false;
    return true;
  }
  // function values: compared structurally on printed form (closed terms)
  return false;
}

// ---- printing (the value syntax used on the oracle wire) -----------------

inline std::string printValue(const Value& v);

inline std::string printMpz(const mpz_class& z) {
  if (z < 0) {
    mpz_class neg = -z;
    return "(- " + neg.get_str() + ")";
  }
  return z.get_str();
}

// Rationals print as decimals when the denominator divides a power of ten,
// else as an exact quotient.
inline std::string printMpq(const mpq_class& q) {
  bool negative = q < 0;
  mpq_class a = negative ? mpq_class(-q) : q;
  a.canonicalize();
  mpz_class num = a.get_num(), den = a.get_den();
  // strip factors of 2 and 5 from the denominator
  mpz_class d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  std::string body;
  if (d == 1) {
    int digits = std::max(twos, fives);
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    mpz_class scaled = num * (scale / den);
    std::string s = scaled.get_str();
    if (digits == 0) {
      body = s + ".0";
    } else {
      while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
      s.insert(s.size() - digits, ".");
      body = s;
    }
    return negative ? "(- " + body + ")" : body;
  }
  std::string ns = num.get_str() + ".0";  // not reached with den > 1
  body = "(/ " + num.get_str() + ".0 " + den.get_str() + ".0)";
  return negative ? "(- " + body + ")" : body;
}

inline std::string printBV(const BVV& bv) {
  char base = bv.preferredBase;
  if (base == 0) base = bv.width % 4 == 0 ? 'x' : 'b';
  if (base == 'x' && bv.width % 4 != 0) base = 'b';
  std::string out = base == 'x' ? "#x" : "#b";
  if (base == 'x') {
    std::string hex = bv.bits.get_str(16);
    while (hex.size() < bv.width / 4) hex.insert(hex.begin(), '0');
    out += hex;
  } else {
    std::string bin = bv.bits.get_str(2);
    while (bin.size() < bv.width) bin.insert(bin.begin(), '0');
    out += bin;
  }
  return out;
}

inline std::string printValue(const Value& v) {
  if (auto* x = asValue<IntV>(v)) return printMpz(x->v);
  if (auto* x = asValue<RealV>(v)) return printMpq(x->v);
  if (auto* x = asValue<BoolV>(v)) return x->v ? "true" : "false";
  if (auto* x = asValue<BVV>(v)) return printBV(*x);
  if (auto* x = asValue<StringV>(v)) return encodeStringLexeme(x->chars);
  if (auto* x = asValue<DTV>(v)) {
    if (x->args.empty()) return x->ctor;
    std::string out = "(" + x->ctor;
    for (auto& a : x->args) out += " " + printValue(*a);
    out.push_back(')');
    return out;
  }
  auto* f = asValue<FunV>(v);
  std::string out = "(lambda (";
  for (std::size_t i = 0; i < f->params.size(); ++i) {
    if (i) out.push_back(' ');
    out += "(" + f->params[i].name + " ";
    printSort(f->params[i].sort, out);
    out.push_back(')');
  }
  out += ") ";
  printTerm(*f->body, out);
  out.push_back(')');
  return out;
}

// ---- literal conversion --------------------------------------------------

inline mpz_class bvLiteralBits(const Literal& lit) {
  if (lit.kind == LitKind::Hex) return mpz_class(lit.text.substr(2), 16);
  return mpz_class(lit.text.substr(2), 2);
}

inline unsigned bvLiteralWidth(const Literal& lit) {
  unsigned digits = static_cast<unsigned>(lit.text.size() - 2);
  return lit.kind == LitKind::Hex ? digits * 4 : digits;
}

inline mpq_class decimalToRational(const std::string& text) {
  auto dot = text.find('.');
  std::string intPart = text.substr(0, dot);
  std::string frac = text.substr(dot + 1);
  mpz_class num(intPart + frac);
  mpz_class den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Literal -> Value (sort known from the literal class; BV width from lexeme).
inline ValuePtr literalValue(const Literal& lit) {
  switch (lit.kind) {
    case LitKind::Numeral: return vInt(mpz_class(lit.text));
    case LitKind::Decimal: return vReal(decimalToRational(lit.text));
    case LitKind::Boolean: return vBool(lit.text == "true");
    case LitKind::Hex:
      return vBV(bvLiteralWidth(lit), bvLiteralBits(lit), 'x');
    case LitKind::Binary:
      return vBV(bvLiteralWidth(lit), bvLiteralBits(lit), 'b');
    case LitKind::String: return vString(decodeStringLexeme(lit.text));
  }
  return nullptr;
}

// ---- value parsing (oracle replies, stub tables) -------------------------

// Parses a value S-expression. `expected` refines widths for BV sorts and
// selects Int vs Real for numerals; pass nullptr to infer from the lexeme.
inline ValuePtr parseValue(const SExpr& e, const Sort* expected = nullptr) {
  auto wantReal = [&] {
    return expected && expected->head.is("Real");
  };
  switch (e.kind) {
    case SExprKind::Numeral:
      if (wantReal()) return vReal(mpq_class(mpz_class(e.text)));
      return vInt(mpz_class(e.text));
    case SExprKind::Decimal:
      return vReal(decimalToRational(e.text));
    case SExprKind::Boolean:
      return vBool(e.text == "true");
    case SExprKind::Hex:
    case SExprKind::Binary: {
      Literal lit{e.kind == SExprKind::Hex ? LitKind::Hex : LitKind::Binary,
                  e.text};
      return literalValue(lit);
    }
    case SExprKind::String:
      return vString(decodeStringLexeme(e.text));
    case SExprKind::Symbol:
      // nullary datatype constructor
      return mkValue(Value{DTV{e.text, {}}});
    case SExprKind::Keyword:
      throw SygusError("E-VALUE", e.span, "keyword is not a value");
    case SExprKind::List:
      break;
  }
  if (e.children.empty())
    throw SygusError("E-VALUE", e.span, "empty list is not a value");
  const SExpr& head = *e.children[0];
  if (head.isSymbol("-") && e.children.size() == 2) {
    ValuePtr inner = parseValue(*e.children[1], expected);
    if (auto* i = asValue<IntV>(*inner)) return vInt(-i->v);
    if (auto* r = asValue<RealV>(*inner)) return vReal(mpq_class(-r->v));
    throw SygusError("E-VALUE", e.span, "negation of a non-numeric value");
  }
  if (head.isSymbol("/") && e.children.size() == 3) {
    ValuePtr a = parseValue(*e.children[1], nullptr);
    ValuePtr b = parseValue(*e.children[2], nullptr);
    auto toQ = [&](const Value& v) -> mpq_class {
      if (auto* i = asValue<IntV>(v)) return mpq_class(i->v);
      if (auto* r = asValue<RealV>(v)) return r->v;
      throw SygusError("E-VALUE", e.span, "non-numeric quotient");
    };
    mpq_class den = toQ(*b);
    if (den == 0)
      throw SygusError("E-VALUE", e.span, "zero denominator in value");
    return vReal(toQ(*a) / den);
  }
  if (head.isSymbol("lambda") && e.children.size() == 3) {
    Parser p;
    FunV f;
    f.params = p.parseSortedVars(*e.children[1]);
    f.body = p.parseTerm(*e.children[2]);
    return mkValue(Value{std::move(f)});
  }
  // datatype constructor application
  if (head.kind != SExprKind::Symbol)
    throw SygusError("E-VALUE", e.span, "malformed value");
  DTV dt{head.text, {}};
  for (std::size_t i = 1; i < e.children.size(); ++i)
    dt.args.push_back(parseValue(*e.children[i], nullptr));
  return mkValue(Value{std::move(dt)});
}

inline ValuePtr parseValueText(const std::string& text,
                               const Sort* expected = nullptr) {
  auto es = readAll(text);
  if (es.size() != 1)
    throw SygusError("E-VALUE", Span{}, "expected exactly one value");
  return parseValue(*es[0], expected);
}

// Total order on values of equal sort, used for observational-equivalence
// keys and deterministic output; unordered kinds fall back to printed form.
inline int valueCompare(const Value& a, const Value& b) {
  if (a.node.index() != b.node.index())
    return a.node.index() < b.node.index() ? -1 : 1;
  if (auto* x = asValue<IntV>(a)) {
    auto c = cmp(x->v, asValue<IntV>(b)->v);
    return c < 0 ? -1 : c > 0 ? 1 : 0;
  }
  if (auto* x = asValue<RealV>(a)) {
    auto c = cmp(x->v, asValue<RealV>(b)->v);
    return c < 0 ? -1 : c > 0 ? 1 : 0;
  }
  if (auto* x = asValue<BoolV>(a)) {
    auto* y = asValue<BoolV>(b);
    return x->v == y->v ? 0 : x->v < y->v ? -1 : 1;
  }
  if (auto* x = asValue<BVV>(a)) {
    auto* y = asValue<BVV>(b);
    if (x->width != y->width) return x->width < y->width ? -1 : 1;
    auto c = cmp(x->bits, y->bits);
    return c < 0 ? -1 : c > 0 ? 1 : 0;
  }
  if (auto* x = asValue<StringV>(a)) {
    auto* y = asValue<StringV>(b);
    return x->chars.compare(y->chars) < 0   ? -1
           : x->chars.compare(y->chars) > 0 ? 1
                                            : 0;
  }
  std::string pa = printValue(a), pb = printValue(b);
  return pa.compare(pb) < 0 ? -1 : pa.compare(pb) > 0 ? 1 : 0;
}

// Value -> literal/constructor term (for substitution into templates).
inline TermPtr valueToTerm(const Value& v) {
  if (auto* x = asValue<IntV>(v)) {
    if (x->v < 0) {
      mpz_class neg = -x->v;
      return mkApply("-", {mkNumeral(neg.get_str())});
    }
    return mkNumeral(x->v.get_str());
  }
  if (auto* x = asValue<RealV>(v)) {
    std::string printed = printMpq(x->v);
    auto es = readAll(printed);
    Parser p;
    return p.parseTerm(*es[0]);
  }
  if (auto* x = asValue<BoolV>(v)) return mkBool(x->v);
  if (auto* x = asValue<BVV>(v))
    return mkLiteral(Literal{
        x->preferredBase == 'b' || x->width % 4 != 0 ? LitKind::Binary
                                                     : LitKind::Hex,
        printBV(*x)});
  if (auto* x = asValue<StringV>(v))
    return mkLiteral(Literal{LitKind::String, encodeStringLexeme(x->chars)});
  if (auto* x = asValue<DTV>(v)) {
    if (x->args.empty()) return mkVar(x->ctor);
    std::vector<TermPtr> args;
    for (auto& a : x->args) args.push_back(valueToTerm(*a));
    return mkApply(Identifier{x->ctor, {}}, std::move(args));
  }
  auto* f = asValue<FunV>(v);
  // no lambda in the term language; callers handle FunV before this point
  (void)f;
  throw SygusError("E-VALUE", Span{}, "function value has no term form");
}

}  // namespace sygus
