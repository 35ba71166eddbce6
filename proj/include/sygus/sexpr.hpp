#pragma once

// S-expression reader for the SyGuS concrete syntax: comments, the literal
// classes (numeral, decimal, boolean, hex, binary, string), symbols, keywords
// and parenthesized lists, with byte-accurate source spans.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sygus {

struct Span {
  int line = 1;
  int column = 1;
  std::size_t offset = 0;
  std::size_t length = 0;
};

// Uniform diagnostic carrier; every rejection path ends up here with a stable
// machine-readable code (E-LEX, E-ARITY, E-ORDER, ...).
class SygusError : public std::runtime_error {
 public:
  SygusError(std::string code, Span span, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)), span_(span) {}
  const std::string& code() const { return code_; }
  const Span& span() const { return span_; }

 private:
  std::string code_;
  Span span_;
};

enum class SExprKind {
  Symbol,
  Keyword,
  Numeral,
  Decimal,
  Boolean,
  Hex,
  Binary,
  String,
  List,
};

struct SExpr;
using SExprPtr = std::shared_ptr<const SExpr>;

struct SExpr {
  SExprKind kind;
  std::string text;  // original lexeme (empty for lists)
  std::vector<SExprPtr> children;
  Span span;

  bool isList() const { return kind == SExprKind::List; }
  bool isSymbol(std::string_view s) const {
    return kind == SExprKind::Symbol && text == s;
  }
  bool isAtom() const { return kind != SExprKind::List; }
};

inline SExprPtr makeAtom(SExprKind kind, std::string text, Span span = {}) {
  auto e = std::make_shared<SExpr>();
  const_cast<SExpr&>(*e).kind = kind;
  const_cast<SExpr&>(*e).text = std::move(text);
  const_cast<SExpr&>(*e).span = span;
  return e;
}

inline SExprPtr makeList(std::vector<SExprPtr> children, Span span = {}) {
  auto e = std::make_shared<SExpr>();
  const_cast<SExpr&>(*e).kind = SExprKind::List;
  const_cast<SExpr&>(*e).children = std::move(children);
  const_cast<SExpr&>(*e).span = span;
  return e;
}

// Reserved words: the literal forms plus the fixed keyword list.
inline bool isReserved(std::string_view word) {
  static const std::unordered_set<std::string_view> kWords = {
      "!",
      "_",
      "check-synth",
      "Constant",
      "chc-constraint",
      "constraint",
      "declare-correctness-cex-oracle",
      "declare-correctness-oracle",
      "declare-datatype",
      "declare-datatypes",
      "declare-oracle-fun",
      "declare-sort",
      "declare-var",
      "declare-weight",
      "define-fun",
      "define-sort",
      "exists",
      "forall",
      "inv-constraint",
      "let",
      "optimize-synth",
      "oracle-assume",
      "oracle-constraint",
      "oracle-constraint-cex",
      "oracle-constraint-io",
      "oracle-constraint-membership",
      "oracle-constraint-negwitness",
      "oracle-constraint-poswitness",
      "set-feature",
      "set-info",
      "set-logic",
      "set-option",
      "synth-fun",
      "Variable",
      // boolean literals are reserved as well; the reader classifies them
      // as Boolean atoms, never as symbols
      "true",
      "false",
  };
  return kWords.count(word) > 0;
}

inline bool isSymbolSpecialChar(char c) {
  switch (c) {
    case '_': case '+': case '-': case '*': case '&': case '|': case '!':
    case '~': case '<': case '>': case '=': case '/': case '%': case '?':
    case '.': case '$': case '^':
      return true;
    default:
      return false;
  }
}

inline bool isSymbolChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || isSymbolSpecialChar(c);
}

inline bool isDigit(char c) { return c >= '0' && c <= '9'; }

inline bool matchesNumeral(std::string_view s) {
  if (s.empty()) return false;
  if (s == "0") return true;
  if (s[0] == '0' || !isDigit(s[0])) return false;
  for (char c : s)
    if (!isDigit(c)) return false;
  return true;
}

inline bool matchesDecimal(std::string_view s) {
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return false;
  std::string_view intPart = s.substr(0, dot);
  std::string_view frac = s.substr(dot + 1);
  if (!matchesNumeral(intPart)) return false;
  // fractional part: 0* Numeral
  std::size_t i = 0;
  while (i + 1 < frac.size() && frac[i] == '0') ++i;
  return matchesNumeral(frac.substr(i)) || (!frac.empty() && matchesNumeral(frac));
}

// Decode a string lexeme (including the delimiting quotes): "" inside the
// literal denotes one double-quote character, backslashes stay verbatim.
inline std::string decodeStringLexeme(std::string_view lexeme) {
  std::string out;
  for (std::size_t i = 1; i + 1 < lexeme.size(); ++i) {
    if (lexeme[i] == '"') {
      out.push_back('"');
      ++i;  // skip the second quote of the pair
    } else {
      out.push_back(lexeme[i]);
    }
  }
  return out;
}

inline std::string encodeStringLexeme(std::string_view chars) {
  std::string out = "\"";
  for (char c : chars) {
    out.push_back(c);
    if (c == '"') out.push_back('"');
  }
  out.push_back('"');
  return out;
}

class Reader {
 public:
  struct Options {
    bool allowRawNewlinesInStrings = true;
  };

  explicit Reader(std::string_view input) : input_(input) {}
  Reader(std::string_view input, Options options)
      : input_(input), options_(options) {}

  std::vector<SExprPtr> readAll() {
    std::vector<SExprPtr> result;
    skipTrivia();
    while (!atEnd()) {
      result.push_back(readOne());
      skipTrivia();
    }
    return result;
  }

 private:
  bool atEnd() const { return pos_ >= input_.size(); }
  char peek() const { return input_[pos_]; }

  Span here(std::size_t length = 0) const {
    return Span{line_, column_, pos_, length};
  }

  void advance() {
    if (input_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skipTrivia() {
    while (!atEnd()) {
      char c = peek();
      if (c == ';') {
        while (!atEnd() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' ||
                 c == '\f' || c == '\v') {
        advance();
      } else {
        break;
      }
    }
  }

  SExprPtr readOne() {
    char c = peek();
    if (c == '(') return readList();
    if (c == ')')
      throw SygusError("E-PAREN", here(1), "unbalanced closing parenthesis");
    if (c == '"') return readString();
    if (c == '#') return readBvConst();
    if (c == ':') return readKeyword();
    if (isDigit(c)) return readNumber();
    if (isSymbolChar(c)) return readSymbol();
    throw SygusError("E-LEX", here(1),
                     std::string("unexpected character '") + c + "'");
  }

  SExprPtr readList() {
    Span start = here();
    advance();  // '('
    std::vector<SExprPtr> children;
    skipTrivia();
    while (true) {
      if (atEnd())
        throw SygusError("E-PAREN", start, "unbalanced opening parenthesis");
      if (peek() == ')') {
        advance();
        break;
      }
      children.push_back(readOne());
      skipTrivia();
    }
    start.length = pos_ - start.offset;
    return makeList(std::move(children), start);
  }

  SExprPtr readString() {
    Span start = here();
    std::size_t begin = pos_;
    advance();  // opening quote
    while (true) {
      if (atEnd())
        throw SygusError("E-STRING", start, "unterminated string literal");
      char c = peek();
      if (c == '"') {
        advance();
        if (!atEnd() && peek() == '"') {
          advance();  // escaped quote, continue
          continue;
        }
        break;
      }
      if (c == '\n' && !options_.allowRawNewlinesInStrings)
        throw SygusError("E-STRING", here(1),
                         "raw newline inside string literal");
      advance();
    }
    start.length = pos_ - begin;
    return makeAtom(SExprKind::String,
                    std::string(input_.substr(begin, pos_ - begin)), start);
  }

  SExprPtr readBvConst() {
    Span start = here();
    std::size_t begin = pos_;
    advance();  // '#'
    if (atEnd() || (peek() != 'x' && peek() != 'b'))
      throw SygusError("E-LEX", start, "expected #x or #b constant");
    char base = peek();
    advance();
    std::size_t digits = 0;
    while (!atEnd()) {
      char c = peek();
      bool ok = base == 'x'
                    ? (isDigit(c) || (c >= 'a' && c <= 'f') ||
                       (c >= 'A' && c <= 'F'))
                    : (c == '0' || c == '1');
      if (!ok) break;
      advance();
      ++digits;
    }
    if (digits == 0)
      throw SygusError("E-LEX", start, "empty bit-vector constant");
    if (!atEnd() && isSymbolChar(peek()))
      throw SygusError("E-LEX", here(1), "malformed bit-vector constant");
    start.length = pos_ - begin;
    return makeAtom(base == 'x' ? SExprKind::Hex : SExprKind::Binary,
                    std::string(input_.substr(begin, pos_ - begin)), start);
  }

  SExprPtr readKeyword() {
    Span start = here();
    std::size_t begin = pos_;
    advance();  // ':'
    while (!atEnd() && isSymbolChar(peek())) advance();
    if (pos_ - begin == 1)
      throw SygusError("E-LEX", start, "empty keyword");
    start.length = pos_ - begin;
    return makeAtom(SExprKind::Keyword,
                    std::string(input_.substr(begin, pos_ - begin)), start);
  }

  SExprPtr readNumber() {
    Span start = here();
    std::size_t begin = pos_;
    while (!atEnd() && isDigit(peek())) advance();
    if (!atEnd() && peek() == '.') {
      advance();
      std::size_t fracDigits = 0;
      while (!atEnd() && isDigit(peek())) {
        advance();
        ++fracDigits;
      }
      std::string lexeme(input_.substr(begin, pos_ - begin));
      start.length = pos_ - begin;
      if (fracDigits == 0 || !matchesDecimal(lexeme))
        throw SygusError("E-LEX", start, "malformed decimal '" + lexeme + "'");
      if (!atEnd() && isSymbolChar(peek()))
        throw SygusError("E-LEX", here(1), "malformed decimal literal");
      return makeAtom(SExprKind::Decimal, lexeme, start);
    }
    std::string lexeme(input_.substr(begin, pos_ - begin));
    start.length = pos_ - begin;
    if (!atEnd() && isSymbolChar(peek()))
      throw SygusError("E-LEX", here(1),
                       "symbol may not begin with a digit: '" + lexeme + "'");
    if (!matchesNumeral(lexeme))
      throw SygusError("E-LEX", start, "malformed numeral '" + lexeme + "'");
    return makeAtom(SExprKind::Numeral, lexeme, start);
  }

  SExprPtr readSymbol() {
    Span start = here();
    std::size_t begin = pos_;
    while (!atEnd() && isSymbolChar(peek())) advance();
    std::string lexeme(input_.substr(begin, pos_ - begin));
    start.length = pos_ - begin;
    if (lexeme == "true" || lexeme == "false")
      return makeAtom(SExprKind::Boolean, lexeme, start);
    return makeAtom(SExprKind::Symbol, lexeme, start);
  }

  std::string_view input_;
  Options options_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

inline std::vector<SExprPtr> readAll(std::string_view input,
                                     Reader::Options options = {}) {
  return Reader(input, options).readAll();
}

inline void printSExpr(const SExpr& e, std::string& out) {
  if (e.isList()) {
    out.push_back('(');
    for (std::size_t i = 0; i < e.children.size(); ++i) {
      if (i) out.push_back(' ');
      printSExpr(*e.children[i], out);
    }
    out.push_back(')');
  } else {
    out += e.text;
  }
}

inline std::string toString(const SExpr& e) {
  std::string out;
  printSExpr(e, out);
  return out;
}

inline bool structurallyEqual(const SExpr& a, const SExpr& b) {
  if (a.kind != b.kind) return false;
  if (a.isList()) {
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
      if (!structurallyEqual(*a.children[i], *b.children[i])) return false;
    return true;
  }
  return a.text == b.text;
}

}  // namespace sygus
