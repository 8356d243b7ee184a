#pragma once

// Recursive-descent parser for the expression grammar:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '(' a ',' b ')' | 'z' | 'i' | '1' | '0'
//           | 'conj(' expr ')' | 'norm(' expr ')' | '-' factor | '(' expr ')'
//
// Literals (a, b) are preimage pairs. Binary operators associate to the left.

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "starcalc/error.hpp"
#include "starcalc/expression.hpp"

namespace starcalc {

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(Errc::syntax, std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(Errc code, const std::string& msg) const { fail_at(code, msg, pos_); }

  [[noreturn]] void fail_at(Errc code, const std::string& msg, std::size_t at) const {
    Error err(code, msg + " at offset " + std::to_string(at));
    err.set_offset(static_cast<long>(at));
    throw err;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) {
      if (pos_ >= text_.size()) fail(Errc::syntax, std::string("expected '") + c + "' but input ended");
      fail(Errc::syntax, std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  // Signed decimal number; returns nullopt (position untouched) if none is present.
  std::optional<double> number() {
    skip_ws();
    std::size_t p = pos_;
    if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
    const std::size_t digits_start = p;
    while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
    if (p < text_.size() && text_[p] == '.') {
      ++p;
      while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
    }
    if (p == digits_start || (p == digits_start + 1 && text_[digits_start] == '.')) return std::nullopt;
    if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
      const std::size_t exp_start = q;
      while (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) ++q;
      if (q > exp_start) p = q;
    }
    std::size_t begin = pos_;
    if (text_[begin] == '+') ++begin;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + begin, text_.data() + p, value);
    if (ec != std::errc() || ptr != text_.data() + p || !std::isfinite(value))
      fail(Errc::syntax, "numeric literal out of range");
    pos_ = p;
    return value;
  }

  Expr expr() {
    Expr lhs = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        lhs = Expr::binary(ExprKind::add, std::move(lhs), term());
      } else if (peek('-')) {
        ++pos_;
        lhs = Expr::binary(ExprKind::sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        lhs = Expr::binary(ExprKind::mul, std::move(lhs), factor());
      } else if (peek('/')) {
        ++pos_;
        lhs = Expr::binary(ExprKind::div, std::move(lhs), factor());
      } else {
        return lhs;
      }
    }
  }

  Expr call(ExprKind kind) {
    expect('(');
    if (peek(')')) fail(Errc::arity, std::string(kind == ExprKind::conj ? "conj" : "norm") + " takes one argument");
    Expr arg = expr();
    if (peek(',')) fail(Errc::arity, std::string(kind == ExprKind::conj ? "conj" : "norm") + " takes one argument");
    expect(')');
    return Expr::unary(kind, std::move(arg));
  }

  Expr factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail(Errc::syntax, "expected a factor but input ended");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const std::size_t after_paren = pos_;
      if (auto a = number(); a && peek(',')) {
        ++pos_;
        auto b = number();
        if (!b) fail(Errc::syntax, "expected the second literal component");
        expect(')');
        return Expr::literal(*a, *b);
      }
      pos_ = after_paren;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return Expr::unary(ExprKind::neg, factor());
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      const std::string_view tok = text_.substr(start, pos_ - start);
      if (tok == "0") return Expr::make_constant(ConstantKind::zero);
      if (tok == "1") return Expr::make_constant(ConstantKind::one);
      fail_at(Errc::syntax, "bare number '" + std::string(tok) + "'; write literals as (a,b)", start);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "z") return Expr::variable();
      if (word == "i") return Expr::make_constant(ConstantKind::i);
      if (word == "conj") return call(ExprKind::conj);
      if (word == "norm") return call(ExprKind::norm);
      fail_at(Errc::syntax, "unknown identifier '" + std::string(word) + "'", start);
    }
    fail(Errc::syntax, std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse_expr(std::string_view input) { return detail::Parser(input).parse(); }

}  // namespace starcalc
