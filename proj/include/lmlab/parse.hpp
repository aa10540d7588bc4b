// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cctype>
#include <sstream>
#include <string>

#include "lmlab/polynomial.hpp"

namespace lmlab {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : std::runtime_error(what + " at column " + std::to_string(column)), column_(column) {}
  /// 1-based column of the offending character.
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

namespace detail {

// Recursive descent over
//   expr := term (('+'|'-') term)*      term := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ('^' natural)?
//   atom := integer | identifier | '(' expr ')'
// Division is only by nonzero integer constants.
class Parser {
 public:
  Parser(std::string_view text, RingPtr ring) : s_(text), ring_(std::move(ring)) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (accept('+'))
        p = p + term();
      else if (accept('-'))
        p = p - term();
      else
        return p;
    }
  }

  Polynomial term() {
    Polynomial p = factor();
    for (;;) {
      if (accept('*')) {
        p = p * factor();
      } else if (accept('/')) {
        skip();
        std::size_t at = pos_;
        Polynomial q = factor();
        if (!q.is_constant() || q.is_zero()) {
          pos_ = at;
          fail("division only by a nonzero integer");
        }
        p = p * Rational(1 / q.lead_coeff());
      } else {
        return p;
      }
    }
  }

  Polynomial factor() {
    if (accept('-')) return -factor();
    Polynomial base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      if (pos_ - start > 4) fail("exponent too large");
      base = base.pow(std::stoul(std::string(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Polynomial::constant(ring_, Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      auto idx = ring_->find(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return Polynomial::variable(ring_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_poly(std::string_view text, const RingPtr& ring) {
  return detail::Parser(text, ring).parse();
}

/// Monomial body such as "x^2*y"; empty for the unit monomial.
inline std::string monomial_string(const PolyRing& ring, const Exponent* e) {
  std::string out;
  auto put = [&](std::size_t v) {
    if (!out.empty()) out += '*';
    out += ring.name(v);
    if (e[v] > 1) out += '^' + std::to_string(e[v]);
  };
  auto base = ring.find(kBaseVariable);
  for (std::size_t v = 0; v < ring.nvars(); ++v)
    if (e[v] && v != base) put(v);
  if (base && e[*base]) put(*base);  // pi written last
  return out;
}

/// Canonical text: terms in descending ring order, one sign per term,
/// coefficients written as integers or p/q.
inline std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t t = 0; t < p.size(); ++t) {
    const Rational& c = p.coeff(t);
    bool neg = c < 0;
    if (t == 0)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    Rational a = abs(c);
    std::string mono = monomial_string(*p.ring(), p.exps(t));
    if (mono.empty()) {
      out += a.get_str();
    } else {
      if (a != 1) out += a.get_str() + "*";
      out += mono;
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_string(p); }

}  // namespace lmlab
