#ifndef WEBJETS_UNI_JET_HPP
#define WEBJETS_UNI_JET_HPP

#include <algorithm>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "webjets/errors.hpp"
#include "webjets/ring.hpp"

namespace webjets {

namespace detail {

// "c*v^n" rendering shared by the jet printers; non-constant coefficients are
// parenthesized.
template <CoefficientRing R>
void append_term(std::string& out, const R& c, const std::string& power_product) {
  auto k = c.constant_value();
  bool negative = k && k->sign() < 0;
  if (out.empty())
    out += negative ? "-" : "";
  else
    out += negative ? " - " : " + ";
  if (k) {
    Rational mag = negative ? -*k : *k;
    if (power_product.empty()) {
      out += mag.to_string();
    } else {
      if (!mag.is_one()) out += mag.to_string() + "*";
      out += power_product;
    }
  } else {
    out += "(" + c.to_string() + ")";
    if (!power_product.empty()) out += "*" + power_product;
  }
}

inline std::string power_of(const std::string& var, int n) {
  if (n == 0) return "";
  if (n == 1) return var;
  return var + "^" + std::to_string(n);
}

}  // namespace detail

/*
 * Truncated power series c0 + c1 t + ... + cN t^N in one formal variable.
 * Every operation re-truncates to the (common) order N.
 */
template <CoefficientRing R>
class UniJet {
 public:
  UniJet(std::string var, int order) : var_(std::move(var)), coeffs_(static_cast<std::size_t>(order) + 1) {}
  UniJet(std::string var, std::vector<R> coeffs) : var_(std::move(var)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.resize(1);
  }

  static UniJet identity(std::string var, int order) {
    UniJet j(std::move(var), order);
    if (order >= 1) j.coeffs_[1] = R(Rational(1));
    return j;
  }

  static UniJet constant(std::string var, int order, const R& c) {
    UniJet j(std::move(var), order);
    j.coeffs_[0] = c;
    return j;
  }

  const std::string& var() const { return var_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// Coefficient of t^n; zero beyond the order.
  R operator[](int n) const { return n >= 0 && n <= order() ? coeffs_[n] : R{}; }
  R& coeff(int n) { return coeffs_.at(static_cast<std::size_t>(n)); }
  const std::vector<R>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const R& c) { return c.is_zero(); });
  }

  UniJet truncated(int n) const {
    UniJet out(var_, n);
    for (int i = 0; i <= std::min(n, order()); ++i) out.coeffs_[i] = coeffs_[i];
    return out;
  }

  UniJet renamed(std::string var) const {
    UniJet out = *this;
    out.var_ = std::move(var);
    return out;
  }

  UniJet& operator+=(const UniJet& o) { return *this = combine(*this, o, false); }
  UniJet& operator-=(const UniJet& o) { return *this = combine(*this, o, true); }
  UniJet& operator*=(const Rational& q) {
    for (auto& c : coeffs_) c = c * q;
    return *this;
  }

  friend UniJet operator+(const UniJet& f, const UniJet& g) { return combine(f, g, false); }
  friend UniJet operator-(const UniJet& f, const UniJet& g) { return combine(f, g, true); }
  friend UniJet operator-(UniJet f) {
    for (auto& c : f.coeffs_) c = -c;
    return f;
  }
  friend UniJet operator*(UniJet f, const Rational& q) { return f *= q; }
  friend UniJet operator*(const Rational& q, UniJet f) { return f *= q; }

  /// Multiplies every coefficient by a ring element.
  friend UniJet operator*(UniJet f, const R& r)
    requires(!std::same_as<R, Rational>)
  {
    for (auto& c : f.coeffs_) c = c * r;
    return f;
  }

  friend UniJet operator*(const UniJet& f, const UniJet& g) {
    check_vars(f, g);
    const int n = std::min(f.order(), g.order());
    UniJet out(f.var_, n);
    for (int k = 0; k <= n; ++k) {
      ProductSum<R> sum;
      for (int i = 0; i <= k; ++i) sum.add_product(f.coeffs_[i], g.coeffs_[k - i]);
      out.coeffs_[k] = sum.take();
    }
    return out;
  }

  friend bool operator==(const UniJet& f, const UniJet& g) {
    return f.var_ == g.var_ && f.coeffs_ == g.coeffs_;
  }

  friend std::ostream& operator<<(std::ostream& os, const UniJet& f) { return os << f.to_string(); }

  std::string to_string() const {
    std::string out;
    for (int n = 0; n <= order(); ++n)
      if (!coeffs_[n].is_zero()) detail::append_term(out, coeffs_[n], detail::power_of(var_, n));
    return out.empty() ? "0" : out;
  }

 private:
  static void check_vars(const UniJet& f, const UniJet& g) {
    if (f.var_ != g.var_) throw Error(ErrorKind::VariableMismatch, "jets in '" + f.var_ + "' and '" + g.var_ + "'");
  }

  static UniJet combine(const UniJet& f, const UniJet& g, bool subtract) {
    check_vars(f, g);
    const int n = std::min(f.order(), g.order());
    UniJet out(f.var_, n);
    for (int k = 0; k <= n; ++k) out.coeffs_[k] = subtract ? f.coeffs_[k] - g.coeffs_[k] : f.coeffs_[k] + g.coeffs_[k];
    return out;
  }

  std::string var_;
  std::vector<R> coeffs_;
};

/// f(g(t)) to the common order; g must have zero constant term.
template <CoefficientRing R>
UniJet<R> compose(const UniJet<R>& f, const UniJet<R>& g) {
  if (!g[0].is_zero()) throw Error(ErrorKind::NonzeroConstantTerm, "inner jet of a composition must vanish at 0");
  const int n = std::min(f.order(), g.order());
  // Horner: (((f_n) g + f_{n-1}) g + ...) + f_0
  UniJet<R> acc = UniJet<R>::constant(g.var(), n, f[n]);
  const UniJet<R> inner = g.truncated(n);
  for (int k = n - 1; k >= 0; --k) {
    acc = acc * inner;
    acc.coeff(0) = acc[0] + f[k];
  }
  return acc;
}

/// f(s t) for a rational s.
template <CoefficientRing R>
UniJet<R> scale_argument(const UniJet<R>& f, const Rational& s) {
  UniJet<R> out = f;
  Rational p(1);
  for (int n = 0; n <= f.order(); ++n) {
    out.coeff(n) = f[n] * p;
    p *= s;
  }
  return out;
}

template <CoefficientRing R>
UniJet<R> derivative(const UniJet<R>& f) {
  UniJet<R> out(f.var(), std::max(f.order() - 1, 0));
  for (int n = 1; n <= f.order(); ++n) out.coeff(n - 1) = f[n] * Rational(n);
  return out;
}

/*
 * Compositional inverse: g with f(g(t)) = t and g(f(t)) = t.
 *
 * Order-by-order recurrence: with g known below degree n, the degree-n
 * coefficient of f(g) is f_1 g_n + (known part), so g_n = -(known part) / f_1.
 */
template <CoefficientRing R>
UniJet<R> reverse(const UniJet<R>& f) {
  if (!f[0].is_zero()) throw Error(ErrorKind::NonzeroConstantTerm, "reversion needs f(0) = 0");
  const int n = f.order();
  if (n < 1) return UniJet<R>(f.var(), n);
  auto inv = unit_inverse(f[1]);
  if (!inv) throw Error(ErrorKind::NonUnitLinearTerm, "linear coefficient " + f[1].to_string() + " is not a unit");
  UniJet<R> g(f.var(), n);
  g.coeff(1) = R(*inv);
  for (int k = 2; k <= n; ++k) {
    const R known = compose(f.truncated(k), g.truncated(k))[k];
    g.coeff(k) = -(known * *inv);
  }
  return g;
}

}  // namespace webjets

#endif  // WEBJETS_UNI_JET_HPP
