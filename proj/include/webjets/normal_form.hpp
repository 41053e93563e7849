#ifndef WEBJETS_NORMAL_FORM_HPP
#define WEBJETS_NORMAL_FORM_HPP

#include <string>

#include "webjets/web.hpp"

namespace webjets {

/// Everything the normalization produces, kept for auditing.
template <CoefficientRing R>
struct NormalFormResult {
  R mu;         // constant term of L
  BiJet<R> E;   // k-jet of g_mu, E = L - mu
  UniJet<R> X;  // inverse of t -> F(t, 0)
  UniJet<R> Y;  // inverse of t -> F(0, t)
  BiJet<R> G;   // F(X(x), Y(y))
  UniJet<R> K;  // G(t, t)
  UniJet<R> U;  // K(U(t)) = U(2t)
  UniJet<R> V;  // inverse of U
  BiJet<R> H;   // V(G(U(x), U(y)))
  BiJet<R> L;   // (H - x - y) / (xy(x - y))
  bool flat = false;

  int k() const { return E.order(); }

  /// F_mu = x + y + xy(x - y)(mu + E), reconstructed to order k + 3.
  BiJet<R> normal_form() const {
    const int n = H.order();
    const auto x = BiJet<R>::variable("x", "y", n, 0);
    const auto y = BiJet<R>::variable("x", "y", n, 1);
    BiJet<R> full(x.first_var(), x.second_var(), n);
    for (int d = 0; d <= L.order(); ++d)
      for (int j = 0; j <= d; ++j) full.set(d - j, j, L(d - j, j));
    return x + y + x * y * (x - y) * full;
  }
};

/*
 * Conjugates K(t) = 2t + O(t^2) to its linear part: finds U = t + u2 t^2 + ...
 * with K(U(t)) = U(2t). Comparing t^n coefficients gives
 * (2^n - 2) u_n = [K(U_{<n})]_n, which fixes every u_n.
 */
template <CoefficientRing R>
UniJet<R> sternberg_linearize(const UniJet<R>& k) {
  if (!k[0].is_zero()) throw Error(ErrorKind::NonzeroConstantTerm, "K must vanish at 0");
  auto lin = k[1].constant_value();
  if (!lin || *lin != Rational(2))
    throw Error(ErrorKind::BadLinearPart, "K must start with 2t, got linear coefficient " + k[1].to_string());
  const int n = k.order();
  UniJet<R> u = UniJet<R>::identity(k.var(), n);
  Rational two_n(2);
  for (int m = 2; m <= n; ++m) {
    two_n *= Rational(2);
    const R known = compose(k.truncated(m), u.truncated(m))[m];
    u.coeff(m) = known * (two_n - Rational(2)).inverse();
  }
  return u;
}

/// The six-step normalization of an (k+3)-jet F(x, y) with F(0,0) = 0.
/// `skew` only exists to exercise the step-6 failure path.
template <CoefficientRing R>
NormalFormResult<R> normalize(const BiJet<R>& f_in, const Rational& skew = Rational(1)) {
  if (f_in.order() < 3) throw Error(ErrorKind::OrderTooHigh, "normalization needs a jet of order >= 3");
  if (!f_in(0, 0).is_zero()) throw Error(ErrorKind::NonzeroConstantTerm, "F must vanish at the origin");
  const BiJet<R> f = f_in.renamed("x", "y");

  // Steps 1-2: straighten the axes.
  UniJet<R> x_inv = reverse(restrict_first(f, "x"));
  UniJet<R> y_inv = reverse(restrict_second(f, "y"));
  // Step 3: G = x + y + xy(...)
  BiJet<R> g = subst_bi(f, x_inv, y_inv);
  // Step 4: linearize the diagonal.
  UniJet<R> diag = eval_diag(g, "t");
  UniJet<R> u = sternberg_linearize(diag);
  // Step 5: H = V(G(U(x), U(y))) = x + y + xy(x - y)(...)
  UniJet<R> v = reverse(u);
  BiJet<R> h = compose(v, subst_bi(g, u.renamed("x"), u.renamed("y")));
  // Step 6.
  BiJet<R> l = div_exact_skew(h, skew);
  R mu = l(0, 0);
  BiJet<R> e = l;
  e.set(0, 0, R{});
  return NormalFormResult<R>{mu, std::move(e), std::move(x_inv), std::move(y_inv), std::move(g), std::move(diag),
                             std::move(u), std::move(v), std::move(h), std::move(l), mu.is_zero()};
}

/*
 * k-jet of g_mu for a linear web: normalizes the (k+3)-jet of f_W, which
 * only needs the (k+2)-jets of a, b, c. The normalizing constant mu is read
 * from L and must equal a_2 + b_2 + c_2; a mismatch is a hard error.
 */
template <CoefficientRing R>
NormalFormResult<R> normal_form_of_web(const LinearWeb3<R>& web, int k, const Rational& skew = Rational(1)) {
  if (k < 0) throw Error(ErrorKind::OrderTooHigh, "k must be non-negative");
  if (web.order() < k + 2)
    throw Error(ErrorKind::OrderTooHigh, "normal form to order " + std::to_string(k) + " needs web order >= " +
                                             std::to_string(k + 2) + ", have " + std::to_string(web.order()));
  NormalFormResult<R> result = normalize(fw_jet(web, k + 3), skew);
  const R expected = web.mu();
  if (!(result.mu == expected))
    throw Error(ErrorKind::MuMismatch, "L(0,0) = " + result.mu.to_string() + " but a2+b2+c2 = " + expected.to_string());
  result.flat = expected.is_zero();
  return result;
}

}  // namespace webjets

#endif  // WEBJETS_NORMAL_FORM_HPP
