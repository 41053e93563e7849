#ifndef WEBJETS_POLY_PARSE_HPP
#define WEBJETS_POLY_PARSE_HPP

#include <cctype>
#include <string>
#include <string_view>

#include "webjets/coef_poly.hpp"

namespace webjets {

namespace detail {

// Recursive-descent reader for polynomial text such as
// "a2/12 + 10a2^2/3 - 2*(b2 + c_2)". Juxtaposition means multiplication;
// division is only allowed by nonzero constants.
class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  CoefPoly parse() {
    CoefPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char ch) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == ch;
  }

  bool starts_atom() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char ch = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(ch)) || ch == '(' || family_from_letter(ch).has_value();
  }

  CoefPoly expr() {
    CoefPoly acc = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  CoefPoly term() {
    CoefPoly acc = unary();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc *= unary();
      } else if (peek('/')) {
        ++pos_;
        CoefPoly d = unary();
        auto c = d.constant_value();
        if (!c || c->is_zero()) fail("division by a non-constant or zero");
        acc /= *c;
      } else if (starts_atom()) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  CoefPoly unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  CoefPoly power() {
    CoefPoly base = atom();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      return pow(base, static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  CoefPoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      CoefPoly inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return CoefPoly(Rational::parse(s_.substr(start, pos_ - start)));
    }
    if (auto fam = family_from_letter(ch)) {
      ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '_') ++pos_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("symbol without index");
      return CoefPoly(Symbol(*fam, std::stoi(std::string(s_.substr(start, pos_ - start)))));
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Reads the text form produced by CoefPoly::to_string (and the looser
/// hand-written style with implicit multiplication).
inline CoefPoly parse_poly(std::string_view text) { return detail::PolyParser(text).parse(); }

}  // namespace webjets

#endif  // WEBJETS_POLY_PARSE_HPP
