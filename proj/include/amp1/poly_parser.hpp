#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "amp1/poly.hpp"

namespace amp1 {

/// Parse failure with 1-based source location.
struct parse_error : error {
  parse_error(const std::string& msg, int line, int col)
      : error(msg + " at line " + std::to_string(line) + ", column " +
              std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

namespace detail {

struct Token {
  enum class Kind { Integer, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Kind kind;
  std::string text;
  int line;
  int col;
};

inline std::vector<Token> tokenize_expression(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Token::Kind k, std::string text, int l, int c) {
    out.push_back(Token{k, std::move(text), l, c});
  };
  while (i < src.size()) {
    const char ch = src[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++col;
      ++i;
      continue;
    }
    const int tl = line, tc = col;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      push(Token::Kind::Integer, std::string(src.substr(i, j - i)), tl, tc);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_'))
        ++j;
      push(Token::Kind::Ident, std::string(src.substr(i, j - i)), tl, tc);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    switch (ch) {
      case '+': push(Token::Kind::Plus, "+", tl, tc); break;
      case '-': push(Token::Kind::Minus, "-", tl, tc); break;
      case '*': push(Token::Kind::Star, "*", tl, tc); break;
      case '/': push(Token::Kind::Slash, "/", tl, tc); break;
      case '^': push(Token::Kind::Caret, "^", tl, tc); break;
      case '(': push(Token::Kind::LParen, "(", tl, tc); break;
      case ')': push(Token::Kind::RParen, ")", tl, tc); break;
      default:
        throw parse_error(std::string("unexpected character '") + ch + "'", tl, tc);
    }
    ++col;
    ++i;
  }
  out.push_back(Token{Token::Kind::End, "", line, col});
  return out;
}

/// Recursive-descent parser for the polynomial expression grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := factor ('*' factor)*
///   factor  := '-' factor | power
///   power   := primary ('^' integer)?
///   primary := integer ('/' integer)? | identifier | '(' expr ')'
///
/// Fractions exist only as literals ("3/2"); '/' anywhere else is an error.
/// Juxtaposition is not multiplication ("2x" is rejected). Exponents are
/// non-negative integer literals. Whitespace is insignificant.
class ExpressionParser {
 public:
  ExpressionParser(std::string_view src, std::vector<std::string> vars)
      : tokens_(tokenize_expression(src)), vars_(std::move(vars)) {}

  Poly parse() {
    Poly p = parse_expr();
    const Token& t = peek();
    if (t.kind != Token::Kind::End) {
      if (t.kind == Token::Kind::Integer || t.kind == Token::Kind::Ident ||
          t.kind == Token::Kind::LParen)
        throw parse_error("missing operator before '" + t.text +
                              "' (juxtaposition is not multiplication)",
                          t.line, t.col);
      throw parse_error("unexpected '" + t.text + "'", t.line, t.col);
    }
    return p;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }
  bool match(Token::Kind k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly parse_expr() {
    Poly acc = parse_term();
    for (;;) {
      if (match(Token::Kind::Plus)) {
        acc += parse_term();
      } else if (match(Token::Kind::Minus)) {
        acc -= parse_term();
      } else {
        return acc;
      }
    }
  }

  Poly parse_term() {
    Poly acc = parse_factor();
    for (;;) {
      if (match(Token::Kind::Star)) {
        acc = acc * parse_factor();
      } else if (peek().kind == Token::Kind::Slash) {
        const Token& t = peek();
        throw parse_error("'/' is only allowed inside a fraction literal", t.line,
                          t.col);
      } else {
        return acc;
      }
    }
  }

  Poly parse_factor() {
    if (match(Token::Kind::Minus)) return -parse_factor();
    return parse_power();
  }

  Poly parse_power() {
    Poly base = parse_primary();
    if (match(Token::Kind::Caret)) {
      const Token& t = peek();
      if (t.kind != Token::Kind::Integer)
        throw parse_error("exponent must be a non-negative integer literal", t.line,
                          t.col);
      advance();
      long e = 0;
      try {
        e = std::stol(t.text);
      } catch (const std::exception&) {
        throw parse_error("exponent '" + t.text + "' out of range", t.line, t.col);
      }
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  Poly parse_primary() {
    const Token& t = advance();
    switch (t.kind) {
      case Token::Kind::Integer: {
        std::string lit = t.text;
        if (peek().kind == Token::Kind::Slash) {
          advance();
          const Token& d = peek();
          if (d.kind != Token::Kind::Integer)
            throw parse_error("expected integer after '/' in fraction literal",
                              d.line, d.col);
          advance();
          lit += "/" + d.text;
        }
        return Poly::constant(vars_, Rational::parse(lit));
      }
      case Token::Kind::Ident: {
        for (size_t i = 0; i < vars_.size(); ++i)
          if (vars_[i] == t.text) return Poly::variable(vars_, i);
        throw parse_error("unknown variable '" + t.text + "'", t.line, t.col);
      }
      case Token::Kind::LParen: {
        Poly inner = parse_expr();
        const Token& r = peek();
        if (r.kind != Token::Kind::RParen)
          throw parse_error("expected ')'", r.line, r.col);
        advance();
        return inner;
      }
      case Token::Kind::End:
        throw parse_error("unexpected end of expression", t.line, t.col);
      default:
        throw parse_error("unexpected '" + t.text + "'", t.line, t.col);
    }
  }

  std::vector<Token> tokens_;
  std::vector<std::string> vars_;
  size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression string into a polynomial over the given variables.
inline Poly parse_poly(std::string_view text, std::vector<std::string> vars) {
  return detail::ExpressionParser(text, std::move(vars)).parse();
}

}  // namespace amp1
