#ifndef WEBJETS_RATIONAL_HPP
#define WEBJETS_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "webjets/errors.hpp"

namespace webjets {

/*
 * Exact rational number backed by GMP's mpq.
 *
 * The value is always canonical: positive denominator, numerator and
 * denominator coprime. Arithmetic never rounds.
 */
class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  explicit Rational(mpq_class&& v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p" or "p/q" with optional sign and surrounding blanks; anything else is a ParseError.
  static Rational parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    std::string s(text);
    auto bad = [&] { return Error(ErrorKind::ParseError, "bad rational literal '" + s + "'"); };
    if (s.empty()) throw bad();
    std::size_t slash = s.find('/');
    auto digits_ok = [](std::string_view d, bool allow_sign) {
      if (allow_sign && !d.empty() && (d[0] == '-' || d[0] == '+')) d.remove_prefix(1);
      if (d.empty()) return false;
      for (char ch : d)
        if (ch < '0' || ch > '9') return false;
      return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
  }

  const mpq_class& gmp() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  /// A Rational is its own constant value; mirrors CoefPoly::constant_value.
  std::optional<Rational> constant_value() const { return *this; }

  Rational inverse() const {
    if (is_zero()) throw Error(ErrorKind::NonUnitLinearTerm, "inverse of zero");
    return Rational(mpq_class(1 / v_));
  }

  std::string to_string() const { return v_.get_str(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::NonUnitLinearTerm, "division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

  std::size_t hash() const {
    return std::hash<std::string>{}(v_.get_num().get_str(16)) * 31u +
           std::hash<std::string>{}(v_.get_den().get_str(16));
  }

 private:
  mpq_class v_;
};

inline Rational pow(const Rational& base, unsigned e) {
  Rational r(1);
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

inline std::string to_string(const Rational& r) { return r.to_string(); }

}  // namespace webjets

#endif  // WEBJETS_RATIONAL_HPP
