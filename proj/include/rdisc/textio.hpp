#pragma once

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rdisc/polynomial.hpp"

namespace rdisc {

/// Canonical text form: terms descending in the term order, joined by
/// " + " / " - ", unit coefficients and unit exponents elided, variables with
/// exponent zero omitted. The zero polynomial prints as "0".
/// `names` optionally overrides the table names (same length), e.g. to print
/// a1..a4 as the letters a,b,c,d.
inline std::string to_canonical_string(
    const Polynomial& a, const std::vector<std::string>* names = nullptr) {
  const auto& table = *a.table();
  if (names && names->size() != table.size())
    throw UsageError("name override has wrong length");
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : a.terms()) {
    bool negative = sgn(t.coeff) < 0;
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    Int mag = abs(t.coeff);
    std::string vars;
    for (std::size_t i = 0; i < table.size(); ++i) {
      unsigned e = t.mono.exp(i);
      if (e == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += names ? (*names)[i] : table.name(i);
      if (e > 1) vars += "^" + std::to_string(e);
    }
    if (vars.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += vars;
    } else {
      out += mag.get_str() + "*" + vars;
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& a) {
  return os << to_canonical_string(a);
}

namespace detail {

class PolyLexer {
 public:
  explicit PolyLexer(std::string_view text) : text_(text) {}

  struct Token {
    enum Kind { kEnd, kPlus, kMinus, kStar, kCaret, kInteger, kIdent } kind;
    std::string text;
    int line, column;
  };

  Token next() {
    skip_ws();
    Token tok{Token::kEnd, "", line_, column_};
    if (pos_ >= text_.size()) return tok;
    char c = text_[pos_];
    if (c == '+') return advance(tok, Token::kPlus);
    if (c == '-') return advance(tok, Token::kMinus);
    if (c == '*') return advance(tok, Token::kStar);
    if (c == '^') return advance(tok, Token::kCaret);
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = Token::kInteger;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        consume(tok);
      return tok;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok.kind = Token::kIdent;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        consume(tok);
      return tok;
    }
    throw ParseError(line_, column_, std::string("unexpected character '") + c + "'");
  }

 private:
  Token advance(Token tok, Token::Kind kind) {
    tok.kind = kind;
    consume(tok);
    return tok;
  }
  void consume(Token& tok) {
    tok.text += text_[pos_];
    step();
  }
  void step() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      step();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace detail

/// Parses the canonical grammar (plus arbitrary whitespace):
///   poly   := [sign] term (sign term)*
///   term   := factor ('*' factor)*
///   factor := INTEGER | VAR ['^' INTEGER]
inline Polynomial parse_polynomial(std::string_view text, TablePtr table) {
  using Token = detail::PolyLexer::Token;
  detail::PolyLexer lexer(text);
  Token tok = lexer.next();
  std::vector<Polynomial::Term> terms;
  const std::size_t nvars = table->size();

  bool negative = false;
  if (tok.kind == Token::kPlus || tok.kind == Token::kMinus) {
    negative = tok.kind == Token::kMinus;
    tok = lexer.next();
  }
  while (true) {
    // One term: product of factors.
    Int coeff = negative ? -1 : 1;
    std::vector<unsigned> exps(nvars, 0u);
    bool have_factor = false;
    while (true) {
      if (tok.kind == Token::kInteger) {
        coeff *= Int(tok.text);
        tok = lexer.next();
      } else if (tok.kind == Token::kIdent) {
        auto idx = table->index_of(tok.text);
        if (!idx)
          throw ParseError(tok.line, tok.column, "unknown variable " + tok.text);
        Token after = lexer.next();
        unsigned e = 1;
        if (after.kind == Token::kCaret) {
          Token num = lexer.next();
          if (num.kind != Token::kInteger)
            throw ParseError(num.line, num.column, "expected exponent after '^'");
          unsigned long parsed = std::stoul(num.text);
          if (parsed > kMaxExponent)
            throw ParseError(num.line, num.column, "exponent too large");
          e = static_cast<unsigned>(parsed);
          after = lexer.next();
        }
        if (exps[*idx] + e > kMaxExponent)
          throw ParseError(tok.line, tok.column, "exponent too large");
        exps[*idx] += e;
        tok = after;
      } else {
        throw ParseError(tok.line, tok.column, "expected a coefficient or variable");
      }
      have_factor = true;
      if (tok.kind == Token::kStar) {
        tok = lexer.next();
        continue;
      }
      break;
    }
    if (!have_factor)
      throw ParseError(tok.line, tok.column, "empty term");
    terms.push_back({Monomial::make(*table, exps), std::move(coeff)});

    if (tok.kind == Token::kEnd) break;
    if (tok.kind == Token::kPlus || tok.kind == Token::kMinus) {
      negative = tok.kind == Token::kMinus;
      tok = lexer.next();
      continue;
    }
    throw ParseError(tok.line, tok.column, "expected '+', '-' or end of input");
  }
  return Polynomial::from_terms(std::move(table), std::move(terms));
}

}  // namespace rdisc
