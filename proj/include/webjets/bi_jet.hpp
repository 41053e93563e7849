#ifndef WEBJETS_BI_JET_HPP
#define WEBJETS_BI_JET_HPP

#include <algorithm>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "webjets/uni_jet.hpp"

namespace webjets {

/*
 * Truncated power series in two formal variables, truncated by total degree:
 * only coefficients c_ij with i + j <= N exist.
 *
 * Storage is dense by degree: slot(i, j) = d(d+1)/2 + j with d = i + j.
 * Absent terms are stored as zero elements of R.
 */
template <CoefficientRing R>
class BiJet {
 public:
  BiJet(std::string first, std::string second, int order)
      : first_(std::move(first)), second_(std::move(second)), order_(order), coeffs_(slots(order)) {}

  static BiJet variable(std::string first, std::string second, int order, int which) {
    BiJet j(std::move(first), std::move(second), order);
    if (order >= 1) j.set(which == 0 ? 1 : 0, which == 0 ? 0 : 1, R(Rational(1)));
    return j;
  }

  static BiJet constant(std::string first, std::string second, int order, const R& c) {
    BiJet j(std::move(first), std::move(second), order);
    j.set(0, 0, c);
    return j;
  }

  /// f(x) viewed as a jet in (x, y).
  static BiJet from_first(const UniJet<R>& f, std::string second) {
    BiJet j(f.var(), std::move(second), f.order());
    for (int i = 0; i <= f.order(); ++i) j.set(i, 0, f[i]);
    return j;
  }

  /// f(y) viewed as a jet in (x, y).
  static BiJet from_second(std::string first, const UniJet<R>& f) {
    BiJet j(std::move(first), f.var(), f.order());
    for (int i = 0; i <= f.order(); ++i) j.set(0, i, f[i]);
    return j;
  }

  const std::string& first_var() const { return first_; }
  const std::string& second_var() const { return second_; }
  int order() const { return order_; }

  /// c_ij; zero outside the truncation triangle.
  const R& operator()(int i, int j) const {
    static const R zero{};
    if (i < 0 || j < 0 || i + j > order_) return zero;
    return coeffs_[slot(i, j)];
  }
  R& at(int i, int j) { return coeffs_.at(slot(i, j)); }
  void set(int i, int j, R value) {
    if (i + j <= order_) coeffs_[slot(i, j)] = std::move(value);
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const R& c) { return c.is_zero(); });
  }

  BiJet truncated(int n) const {
    BiJet out(first_, second_, n);
    for (int d = 0; d <= std::min(n, order_); ++d)
      for (int j = 0; j <= d; ++j) out.coeffs_[slot(d - j, j)] = coeffs_[slot(d - j, j)];
    return out;
  }

  BiJet renamed(std::string first, std::string second) const {
    BiJet out = *this;
    out.first_ = std::move(first);
    out.second_ = std::move(second);
    return out;
  }

  /// Homogeneous part of total degree d.
  BiJet homogeneous_part(int d) const {
    BiJet out(first_, second_, order_);
    for (int j = 0; j <= d && d <= order_; ++j) out.set(d - j, j, (*this)(d - j, j));
    return out;
  }

  BiJet& operator+=(const BiJet& o) { return *this = combine(*this, o, false); }
  BiJet& operator-=(const BiJet& o) { return *this = combine(*this, o, true); }
  BiJet& operator*=(const Rational& q) {
    for (auto& c : coeffs_) c = c * q;
    return *this;
  }

  friend BiJet operator+(const BiJet& f, const BiJet& g) { return combine(f, g, false); }
  friend BiJet operator-(const BiJet& f, const BiJet& g) { return combine(f, g, true); }
  friend BiJet operator-(BiJet f) {
    for (auto& c : f.coeffs_) c = -c;
    return f;
  }
  friend BiJet operator*(BiJet f, const Rational& q) { return f *= q; }
  friend BiJet operator*(const Rational& q, BiJet f) { return f *= q; }

  friend BiJet operator*(const BiJet& f, const BiJet& g) {
    check_vars(f, g);
    const int n = std::min(f.order_, g.order_);
    BiJet out(f.first_, f.second_, n);
    // Collect nonzero entries once; most jets here are sparse at low degree.
    auto nonzero = [n](const BiJet& h) {
      std::vector<std::pair<int, int>> idx;
      for (int d = 0; d <= n; ++d)
        for (int j = 0; j <= d; ++j)
          if (!h(d - j, j).is_zero()) idx.emplace_back(d - j, j);
      return idx;
    };
    const auto fi = nonzero(f), gi = nonzero(g);
    std::vector<ProductSum<R>> sums(slots(n));
    for (auto [i1, j1] : fi)
      for (auto [i2, j2] : gi)
        if (i1 + j1 + i2 + j2 <= n) sums[slot(i1 + i2, j1 + j2)].add_product(f(i1, j1), g(i2, j2));
    for (std::size_t s = 0; s < sums.size(); ++s) out.coeffs_[s] = sums[s].take();
    return out;
  }

  friend bool operator==(const BiJet& f, const BiJet& g) {
    return f.first_ == g.first_ && f.second_ == g.second_ && f.order_ == g.order_ && f.coeffs_ == g.coeffs_;
  }

  /// Lists terms by ascending total degree, then descending power of the first variable.
  friend std::ostream& operator<<(std::ostream& os, const BiJet& f) { return os << f.to_string(); }

  std::string to_string() const {
    std::string out;
    for (int d = 0; d <= order_; ++d)
      for (int j = 0; j <= d; ++j) {
        const R& c = (*this)(d - j, j);
        if (c.is_zero()) continue;
        std::string pp = detail::power_of(first_, d - j);
        std::string q = detail::power_of(second_, j);
        if (!pp.empty() && !q.empty()) pp += "*";
        detail::append_term(out, c, pp + q);
      }
    return out.empty() ? "0" : out;
  }

  static std::size_t slot(int i, int j) {
    const int d = i + j;
    return static_cast<std::size_t>(d * (d + 1) / 2 + j);
  }

 private:
  static std::size_t slots(int order) { return static_cast<std::size_t>((order + 1) * (order + 2) / 2); }

  static void check_vars(const BiJet& f, const BiJet& g) {
    if (f.first_ != g.first_ || f.second_ != g.second_)
      throw Error(ErrorKind::VariableMismatch,
                  "jets in (" + f.first_ + "," + f.second_ + ") and (" + g.first_ + "," + g.second_ + ")");
  }

  static BiJet combine(const BiJet& f, const BiJet& g, bool subtract) {
    check_vars(f, g);
    const int n = std::min(f.order_, g.order_);
    BiJet out(f.first_, f.second_, n);
    for (std::size_t s = 0; s < out.coeffs_.size(); ++s)
      out.coeffs_[s] = subtract ? f.coeffs_[s] - g.coeffs_[s] : f.coeffs_[s] + g.coeffs_[s];
    return out;
  }

  std::string first_, second_;
  int order_;
  std::vector<R> coeffs_;
};

/// F(t, 0).
template <CoefficientRing R>
UniJet<R> restrict_first(const BiJet<R>& f, std::string var = "t") {
  UniJet<R> out(std::move(var), f.order());
  for (int i = 0; i <= f.order(); ++i) out.coeff(i) = f(i, 0);
  return out;
}

/// F(0, t).
template <CoefficientRing R>
UniJet<R> restrict_second(const BiJet<R>& f, std::string var = "t") {
  UniJet<R> out(std::move(var), f.order());
  for (int j = 0; j <= f.order(); ++j) out.coeff(j) = f(0, j);
  return out;
}

/// G(t, t): the coefficient of t^n is the sum of G_ij over i + j = n.
template <CoefficientRing R>
UniJet<R> eval_diag(const BiJet<R>& g, std::string var = "t") {
  UniJet<R> out(std::move(var), g.order());
  for (int d = 0; d <= g.order(); ++d) {
    R sum{};
    for (int j = 0; j <= d; ++j) sum = sum + g(d - j, j);
    out.coeff(d) = sum;
  }
  return out;
}

/*
 * F(X(x), Y(y)) with X, Y univariate and vanishing at 0. Since X^i depends
 * only on x and Y^j only on y, each term F_ij X^i Y^j is an outer product.
 */
template <CoefficientRing R>
BiJet<R> subst_bi(const BiJet<R>& f, const UniJet<R>& x, const UniJet<R>& y) {
  if (!x[0].is_zero() || !y[0].is_zero())
    throw Error(ErrorKind::NonzeroConstantTerm, "substituted jets must vanish at 0");
  const int n = std::min({f.order(), x.order(), y.order()});
  std::vector<UniJet<R>> xp, yp;
  xp.push_back(UniJet<R>::constant(x.var(), n, R(Rational(1))));
  yp.push_back(UniJet<R>::constant(y.var(), n, R(Rational(1))));
  for (int k = 1; k <= n; ++k) {
    xp.push_back(xp.back() * x.truncated(n));
    yp.push_back(yp.back() * y.truncated(n));
  }
  BiJet<R> out(x.var(), y.var(), n);
  std::vector<ProductSum<R>> sums((n + 1) * (n + 2) / 2);
  for (int d = 0; d <= n; ++d)
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      const R& c = f(i, j);
      if (c.is_zero()) continue;
      // X^i starts at x^i, Y^j at y^j.
      for (int p = i; p <= n; ++p) {
        if (xp[i][p].is_zero()) continue;
        const R cx = c * xp[i][p];
        for (int q = j; p + q <= n; ++q) sums[BiJet<R>::slot(p, q)].add_product(cx, yp[j][q]);
      }
    }
  for (int d = 0; d <= n; ++d)
    for (int j = 0; j <= d; ++j) out.set(d - j, j, sums[BiJet<R>::slot(d - j, j)].take());
  return out;
}

/// f(G(x, y)) for univariate f; G must vanish at the origin.
template <CoefficientRing R>
BiJet<R> compose(const UniJet<R>& f, const BiJet<R>& g) {
  if (!g(0, 0).is_zero()) throw Error(ErrorKind::NonzeroConstantTerm, "inner jet of a composition must vanish at 0");
  const int n = std::min(f.order(), g.order());
  const BiJet<R> inner = g.truncated(n);
  BiJet<R> acc = BiJet<R>::constant(g.first_var(), g.second_var(), n, f[n]);
  for (int k = n - 1; k >= 0; --k) {
    acc = acc * inner;
    acc.set(0, 0, acc(0, 0) + f[k]);
  }
  return acc;
}

/// Formal partial derivative in the first (which = 0) or second (which = 1) variable.
template <CoefficientRing R>
BiJet<R> partial(const BiJet<R>& f, int which) {
  BiJet<R> out(f.first_var(), f.second_var(), std::max(f.order() - 1, 0));
  for (int d = 1; d <= f.order(); ++d)
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      if (which == 0 && i > 0) out.set(i - 1, j, f(i, j) * Rational(i));
      if (which == 1 && j > 0) out.set(i, j - 1, f(i, j) * Rational(j));
    }
  return out;
}

/// 1/f for f with a nonzero rational constant term.
template <CoefficientRing R>
BiJet<R> reciprocal(const BiJet<R>& f) {
  auto inv = unit_inverse(f(0, 0));
  if (!inv) throw Error(ErrorKind::NonUnitDerivative, "constant term " + f(0, 0).to_string() + " is not a unit");
  // 1/f = inv * 1/(1 + w) with w = inv*f - 1, expanded geometrically.
  BiJet<R> w = f * *inv;
  w.set(0, 0, R{});
  BiJet<R> acc = BiJet<R>::constant(f.first_var(), f.second_var(), f.order(), R(Rational(1)));
  for (int k = 0; k < f.order(); ++k) {
    acc = acc * w;
    acc = -acc;
    acc.set(0, 0, acc(0, 0) + R(Rational(1)));
  }
  return acc * *inv;
}

/// log f for f with constant term exactly 1: the alternating series of log(1 + w).
template <CoefficientRing R>
BiJet<R> log_unit(const BiJet<R>& f) {
  auto c = f(0, 0).constant_value();
  if (!c || !c->is_one()) throw Error(ErrorKind::NonUnitDerivative, "logarithm needs constant term 1");
  BiJet<R> w = f;
  w.set(0, 0, R{});
  BiJet<R> power = w;
  BiJet<R> acc(f.first_var(), f.second_var(), f.order());
  for (int k = 1; k <= f.order(); ++k) {
    acc += power * Rational(k % 2 == 1 ? 1 : -1, k);
    power = power * w;
  }
  return acc;
}

/*
 * Quotient L of (H - x - y) by x*y*(x - s*y), of order N - 3; s = 1 is the
 * normalization divisor.
 *
 * Works degree by degree: strip a factor x, then y, then x - s*y, checking at
 * each stage that the division leaves no remainder.
 */
template <CoefficientRing R>
BiJet<R> div_exact_skew(const BiJet<R>& h, const Rational& s = Rational(1)) {
  const int n = h.order();
  BiJet<R> w = h;
  if (n >= 1) {
    w.set(1, 0, w(1, 0) - R(Rational(1)));
    w.set(0, 1, w(0, 1) - R(Rational(1)));
  }
  auto fail = [](const std::string& why) { throw Error(ErrorKind::NotDivisible, "H - x - y " + why); };
  if (!w(0, 0).is_zero()) fail("has a constant term");
  BiJet<R> out(h.first_var(), h.second_var(), std::max(n - 3, 0));
  for (int d = 1; d <= n; ++d) {
    // p: homogeneous coefficients p[j] of x^(d-j) y^j
    std::vector<R> p(d + 1);
    for (int j = 0; j <= d; ++j) p[j] = w(d - j, j);
    if (!p[d].is_zero()) fail("is not divisible by x (degree " + std::to_string(d) + ")");
    if (!p[0].is_zero()) fail("is not divisible by y (degree " + std::to_string(d) + ")");
    if (d < 3) {
      for (int j = 0; j <= d; ++j)
        if (!p[j].is_zero()) fail("is not divisible by xy(x-y) (degree " + std::to_string(d) + ")");
      continue;
    }
    // after dividing by xy: r[j] for x^(d-2-j) y^j, j = 0..d-2
    std::vector<R> r(p.begin() + 1, p.begin() + d);
    // r = (x - s y) q with q of degree e = d - 3: r[j] = q[j] - s q[j-1]
    const int e = d - 3;
    std::vector<R> q(e + 1);
    R carry{};
    for (int j = 0; j <= e; ++j) {
      carry = r[j] + carry * s;
      q[j] = carry;
    }
    // remainder: r[e+1] must equal -s q[e]
    if (!(r[e + 1] + q[e] * s).is_zero()) fail("is not divisible by x - s*y (degree " + std::to_string(d) + ")");
    for (int j = 0; j <= e; ++j) out.set(e - j, j, q[j]);
  }
  return out;
}

}  // namespace webjets

#endif  // WEBJETS_BI_JET_HPP
