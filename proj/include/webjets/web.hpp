#ifndef WEBJETS_WEB_HPP
#define WEBJETS_WEB_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "webjets/bi_jet.hpp"
#include "webjets/coef_poly.hpp"

namespace webjets {

enum class LineFamily { A, B, C };

/*
 * Linear 3-web in the normalized projective frame M = (0,0), A_M = (1,1),
 * B_M = (1,-1), C_M = (2,0). Its three line families are
 *
 *   v = a(x) u + x,   v = b(y) u + y,   v = c(z) u + z
 *
 * with a(t) = 1 - t + sum a_i t^i, b(t) = -1 - t + sum b_i t^i,
 * c(t) = -t/2 + sum c_i t^i. Only a_i, b_i, c_i for i = 2..order are stored;
 * the low-order frame terms are implied.
 */
template <CoefficientRing R>
class LinearWeb3 {
 public:
  LinearWeb3(std::vector<R> a, std::vector<R> b, std::vector<R> c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (a_.size() != b_.size() || a_.size() != c_.size() || a_.empty())
      throw Error(ErrorKind::ParseError, "a, b, c must be non-empty and of equal length");
  }

  /// Web whose coefficients are the symbols a_i, b_i, c_i themselves.
  static LinearWeb3 symbolic(int order)
    requires std::same_as<R, CoefPoly>
  {
    std::vector<R> a, b, c;
    for (int i = 2; i <= order; ++i) {
      a.emplace_back(sym_a(i));
      b.emplace_back(sym_b(i));
      c.emplace_back(sym_c(i));
    }
    return LinearWeb3(std::move(a), std::move(b), std::move(c));
  }

  /// The pencil web: every a_i, b_i, c_i is zero.
  static LinearWeb3 pencil(int order) {
    std::vector<R> z(static_cast<std::size_t>(order - 1));
    return LinearWeb3(z, z, z);
  }

  int order() const { return static_cast<int>(a_.size()) + 1; }

  const R& coefficient(LineFamily f, int i) const { return family(f).at(static_cast<std::size_t>(i - 2)); }
  const std::vector<R>& family(LineFamily f) const {
    return f == LineFamily::A ? a_ : (f == LineFamily::B ? b_ : c_);
  }

  /// a_2 + b_2 + c_2: a quarter of the characteristic at the origin.
  R mu() const { return a_[0] + b_[0] + c_[0]; }

  /// Taylor jet of a, b or c (frame terms included) in variable `var`.
  UniJet<R> series(LineFamily f, int order, std::string var = "t") const {
    if (order > this->order())
      throw Error(ErrorKind::OrderTooHigh,
                  "jet of order " + std::to_string(order) + " needs web order >= " + std::to_string(order) +
                      ", have " + std::to_string(this->order()));
    UniJet<R> s(std::move(var), order);
    const Rational one(1);
    switch (f) {
      case LineFamily::A:
        s.coeff(0) = R(one);
        if (order >= 1) s.coeff(1) = R(-one);
        break;
      case LineFamily::B:
        s.coeff(0) = R(-one);
        if (order >= 1) s.coeff(1) = R(-one);
        break;
      case LineFamily::C:
        if (order >= 1) s.coeff(1) = R(Rational(-1, 2));
        break;
    }
    for (int i = 2; i <= order; ++i) s.coeff(i) = s[i] + coefficient(f, i);
    return s;
  }

  template <class F>
  auto map(F&& fn) const {
    using T = std::decay_t<decltype(fn(a_[0]))>;
    std::vector<T> a, b, c;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      a.push_back(fn(a_[i]));
      b.push_back(fn(b_[i]));
      c.push_back(fn(c_[i]));
    }
    return LinearWeb3<T>(std::move(a), std::move(b), std::move(c));
  }

  friend bool operator==(const LinearWeb3& x, const LinearWeb3& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
  }

 private:
  std::vector<R> a_, b_, c_;
};

inline LinearWeb3<CoefPoly> to_poly(const LinearWeb3<Rational>& web) {
  return web.map([](const Rational& q) { return CoefPoly(q); });
}

inline LinearWeb3<CoefPoly> substitute(const LinearWeb3<CoefPoly>& web, const Substitution& sigma) {
  return web.map([&](const CoefPoly& p) { return substitute(p, sigma); });
}

/// Evaluates a web at rational values; every symbol must be covered.
inline LinearWeb3<Rational> specialize(const LinearWeb3<CoefPoly>& web, const std::map<Symbol, Rational>& values) {
  return web.map([&](const CoefPoly& p) {
    auto v = specialize(p, values).constant_value();
    if (!v) throw Error(ErrorKind::ParseError, "specialization leaves symbols in " + p.to_string());
    return *v;
  });
}

namespace detail {

template <CoefficientRing R>
UniJet<R> padded(const UniJet<R>& f, int order) {
  std::vector<R> c(f.coeffs());
  c.resize(static_cast<std::size_t>(order) + 1);
  return UniJet<R>(f.var(), std::move(c));
}

/*
 * Order-by-order solve of residual(sol) = 0 for a jet sol vanishing at the
 * origin, where the residual's derivative in sol at the origin is the
 * rational `slope`. After step d all terms of degree <= d are final.
 */
template <CoefficientRing R, class Residual>
BiJet<R> solve_implicit(const std::string& first, const std::string& second, int order, const Rational& slope,
                        Residual&& residual) {
  BiJet<R> sol(first, second, order);
  const Rational inv = slope.inverse();
  for (int d = 1; d <= order; ++d) {
    const BiJet<R> r = residual(sol.truncated(d), d);
    for (int j = 0; j <= d; ++j) sol.set(d - j, j, sol(d - j, j) - r(d - j, j) * inv);
  }
  return sol;
}

inline std::string leaf_var(LineFamily f) { return f == LineFamily::A ? "x" : (f == LineFamily::B ? "y" : "z"); }

}  // namespace detail

/// a(x) u + x - v for a candidate leaf parameter x(u, v) (likewise b, c).
template <CoefficientRing R>
BiJet<R> leaf_residual(const LinearWeb3<R>& web, LineFamily family, const BiJet<R>& param) {
  const int n = param.order();
  // The series is multiplied by u, so its top coefficient never contributes.
  const UniJet<R> s = detail::padded(web.series(family, std::min(n, web.order())), n);
  const auto u = BiJet<R>::variable(param.first_var(), param.second_var(), n, 0);
  const auto v = BiJet<R>::variable(param.first_var(), param.second_var(), n, 1);
  return compose(s, param) * u + param - v;
}

/// Leaf parameter x(u,v) (resp. y, z) through (u,v): solves a(x) u + x = v.
template <CoefficientRing R>
BiJet<R> leaf_param(const LinearWeb3<R>& web, LineFamily family, int order) {
  if (order > web.order())
    throw Error(ErrorKind::OrderTooHigh, "leaf parameter of order " + std::to_string(order) + " exceeds web order " +
                                             std::to_string(web.order()));
  return detail::solve_implicit<R>("u", "v", order, Rational(1), [&](const BiJet<R>& x, int) {
    return leaf_residual(web, family, x);
  });
}

template <CoefficientRing R>
struct SlopeJets {
  BiJet<R> P, Q, R_;
  int order() const { return P.order(); }
};

/// Slopes P = a(x(u,v)), Q = b(y(u,v)), R = c(z(u,v)) of the leaves through (u, v).
template <CoefficientRing R>
SlopeJets<R> slope_jets(const LinearWeb3<R>& web, int order) {
  auto slope = [&](LineFamily f) { return compose(web.series(f, order), leaf_param(web, f, order)); };
  return {slope(LineFamily::A), slope(LineFamily::B), slope(LineFamily::C)};
}

template <CoefficientRing R>
BiJet<R> pi_jet(const SlopeJets<R>& s) {
  return (s.P - s.Q) * (s.Q - s.R_) * (s.R_ - s.P);
}

/// Delta = (P-Q) R_v + (Q-R) P_v + (R-P) Q_v; one order lower than the slopes.
template <CoefficientRing R>
BiJet<R> delta_jet(const SlopeJets<R>& s) {
  const auto pv = partial(s.P, 1), qv = partial(s.Q, 1), rv = partial(s.R_, 1);
  return (s.P - s.Q) * rv + (s.Q - s.R_) * pv + (s.R_ - s.P) * qv;
}

/// (Pi(0), Delta(0)); derivatives are taken in v, the second chart coordinate.
template <CoefficientRing R>
std::pair<R, R> pi_delta_origin(const SlopeJets<R>& s) {
  return {pi_jet(s)(0, 0), delta_jet(s)(0, 0)};
}

/// P_vv + Q_vv + R_vv as a jet.
template <CoefficientRing R>
BiJet<R> second_slope_sum(const SlopeJets<R>& s) {
  return partial(partial(s.P, 1), 1) + partial(partial(s.Q, 1), 1) + partial(partial(s.R_, 1), 1);
}

/// car_W(0,0) = Pi (P_vv + Q_vv + R_vv) / Delta^2 at the origin.
template <CoefficientRing R>
R characteristic_origin(const LinearWeb3<R>& web) {
  const SlopeJets<R> s = slope_jets(web, 2);
  const auto [pi, delta] = pi_delta_origin(s);
  auto inv = unit_inverse(delta);
  if (!inv) throw Error(ErrorKind::NonUnitDerivative, "Delta(0) = " + delta.to_string() + " is not a unit");
  return pi * second_slope_sum(s)(0, 0) * (*inv * *inv);
}

/// Jet of car_W in (u, v) to the given order; needs slopes two orders higher.
template <CoefficientRing R>
BiJet<R> characteristic_jet(const LinearWeb3<R>& web, int order) {
  if (order + 2 > web.order())
    throw Error(ErrorKind::OrderTooHigh, "characteristic jet of order " + std::to_string(order) +
                                             " needs web order >= " + std::to_string(order + 2));
  const SlopeJets<R> s = slope_jets(web, order + 2);
  const BiJet<R> inv_delta = reciprocal(delta_jet(s).truncated(order));
  return pi_jet(s).truncated(order) * second_slope_sum(s) * inv_delta * inv_delta;
}

/// d/dx d/dy log(f_x / f_y) at the origin: the curvature density of the web (x, y, f).
template <CoefficientRing R>
R curvature_xyf_origin(const BiJet<R>& f) {
  if (f.order() < 3) throw Error(ErrorKind::OrderTooHigh, "curvature needs a jet of order >= 3");
  const BiJet<R> fx = partial(f, 0), fy = partial(f, 1);
  auto ix = unit_inverse(fx(0, 0));
  auto iy = unit_inverse(fy(0, 0));
  if (!ix || !iy) throw Error(ErrorKind::NonUnitDerivative, "f_x(0) and f_y(0) must be nonzero rationals");
  BiJet<R> ratio = fx * reciprocal(fy);
  // log(ratio) = log(ratio(0)) + log(ratio / ratio(0)); the constant drops out of d/dx d/dy.
  ratio *= *unit_inverse(ratio(0, 0));
  return log_unit(ratio)(1, 1);
}

/// (y - x) c(z) + (x - z) b(y) + (z - y) a(x): the concurrence determinant of three leaves.
template <CoefficientRing R>
BiJet<R> fw_residual(const LinearWeb3<R>& web, const BiJet<R>& z) {
  const int n = z.order();
  const std::string& xs = z.first_var();
  const std::string& ys = z.second_var();
  // Each series is multiplied by a factor vanishing at the origin, so order n - 1 suffices.
  const int m = std::min(n, web.order());
  const UniJet<R> a = detail::padded(web.series(LineFamily::A, m, xs), n);
  const UniJet<R> b = detail::padded(web.series(LineFamily::B, m, ys), n);
  const UniJet<R> c = detail::padded(web.series(LineFamily::C, m, "z"), n);
  const auto x = BiJet<R>::variable(xs, ys, n, 0);
  const auto y = BiJet<R>::variable(xs, ys, n, 1);
  return (y - x) * compose(c, z) + (x - z) * BiJet<R>::from_second(xs, b) + (z - y) * BiJet<R>::from_first(a, ys);
}

/// Jet of the implicit web function z = f_W(x, y) defined by the vanishing determinant.
template <CoefficientRing R>
BiJet<R> fw_jet(const LinearWeb3<R>& web, int order) {
  if (order - 1 > web.order())
    throw Error(ErrorKind::OrderTooHigh, "f_W jet of order " + std::to_string(order) + " needs web order >= " +
                                             std::to_string(order - 1));
  // d/dz of the determinant at the origin is a(0) - b(0) = 2.
  return detail::solve_implicit<R>("x", "y", order, Rational(2), [&](const BiJet<R>& z, int) {
    return fw_residual(web, z);
  });
}

}  // namespace webjets

#endif  // WEBJETS_WEB_HPP
