#pragma once

// Polynomial expressions over a parameter table:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//   unary  := '-' unary | '+' unary | power
//   power  := atom ('^' integer)?
//   atom   := number | identifier | '(' expr ')'
// Numbers are integers or decimals; division is only by nonzero constants.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "eigconf/errors.hpp"
#include "eigconf/multi_poly.hpp"
#include "eigconf/rational.hpp"
#include "eigconf/var_table.hpp"

namespace eigconf {

namespace detail {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, VarTablePtr vars) : s_(text), vars_(std::move(vars)) {}

  RatPoly parse() {
    RatPoly p = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression \"" + std::string(s_) + "\", column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  static bool starts_atom(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '(';
  }

  RatPoly expr() {
    RatPoly acc = term();
    while (true) {
      char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      RatPoly rhs = term();
      acc = c == '+' ? acc + rhs : acc - rhs;
    }
  }

  RatPoly term() {
    RatPoly acc = unary();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (c == '/') {
        ++pos_;
        RatPoly d = unary();
        if (!d.is_constant() || d.constant_value().is_zero()) fail("division is only allowed by a nonzero constant");
        acc = acc.scaled(Rational(1) / d.constant_value());
      } else if (starts_atom(c)) {
        acc = acc * unary();
      } else {
        return acc;
      }
    }
  }

  RatPoly unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  RatPoly power() {
    RatPoly base = atom();
    if (peek() != '^') return base;
    ++pos_;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be a non-negative integer");
    std::string digits(s_.substr(start, pos_ - start));
    if (digits.size() > 4) fail("exponent too large");
    return base.pow(unsigned(std::stoul(digits)));
  }

  RatPoly atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      RatPoly inner = expr();
      if (peek() != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      try {
        return RatPoly::constant(vars_, Rational::parse(s_.substr(start, pos_ - start)));
      } catch (const ParseError&) {
        fail("bad number '" + std::string(s_.substr(start, pos_ - start)) + "'");
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (!vars_->find(name)) fail("unknown identifier '" + name + "'");
      return RatPoly::variable(vars_, name);
    }
    fail(c ? "unexpected '" + std::string(1, c) + "'" : std::string("unexpected end of input"));
  }

  std::string_view s_;
  VarTablePtr vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RatPoly parse_expression(std::string_view text, const VarTablePtr& vars) {
  return detail::ExpressionParser(text, vars).parse();
}

}  // namespace eigconf
