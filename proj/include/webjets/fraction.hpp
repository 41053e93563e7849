#ifndef WEBJETS_FRACTION_HPP
#define WEBJETS_FRACTION_HPP

#include <map>
#include <vector>

#include "webjets/linear_solve.hpp"

namespace webjets {

namespace detail {

using Dense = std::vector<Rational>;  // coefficients by ascending power

inline void trim(Dense& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Dense to_dense(const CoefPoly& p, Symbol s) {
  Dense out(static_cast<std::size_t>(p.degree_in(s)) + 1);
  for (const auto& [m, c] : p.terms()) out[m.exponent(s)] += c;
  trim(out);
  return out;
}

inline CoefPoly from_dense(const Dense& p, Symbol s) {
  std::vector<CoefPoly::Term> terms;
  for (std::size_t e = 0; e < p.size(); ++e)
    if (!p[e].is_zero()) terms.emplace_back(Monomial(s, static_cast<int>(e)), p[e]);
  return CoefPoly::from_terms(std::move(terms));
}

inline Dense dense_rem(Dense a, const Dense& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

/// Monic gcd of univariate polynomials over the rationals.
inline Dense dense_gcd(Dense a, Dense b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Dense r = dense_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

}  // namespace detail

/*
 * Cancels common factors when the denominator involves at most one symbol s:
 * the numerator is read as a polynomial in the other symbols with
 * coefficients in Q[s], and the gcd of those coefficients with the
 * denominator is divided out. The denominator is made monic.
 */
inline PolyFraction reduce(PolyFraction f) {
  if (f.numerator.is_zero()) return {CoefPoly(), CoefPoly(1)};
  if (auto c = f.denominator.constant_value()) return {f.numerator / *c, CoefPoly(1)};
  const auto syms = f.denominator.symbols();
  if (syms.size() == 1) {
    const Symbol s = syms[0];
    detail::Dense g = detail::to_dense(f.denominator, s);
    std::map<Monomial, std::vector<CoefPoly::Term>> by_rest;
    for (const auto& [m, c] : f.numerator.terms()) {
      Monomial rest = m;
      rest.set_exponent(s, 0);
      by_rest[rest].emplace_back(m, c);
    }
    for (auto& [rest, terms] : by_rest) {
      g = detail::dense_gcd(g, detail::to_dense(CoefPoly::from_terms(terms), s));
      if (g.size() == 1) break;
    }
    if (g.size() > 1) {
      const CoefPoly gp = detail::from_dense(g, s);
      f.numerator = divide_exact(f.numerator, gp);
      f.denominator = divide_exact(f.denominator, gp);
    }
  }
  Rational lead = f.denominator.terms().back().second;
  return {f.numerator / lead, f.denominator / lead};
}

/*
 * p with each mapped symbol replaced by a fraction N/D. The common
 * denominator is the product of D^(max exponent) over the mapped symbols,
 * so the numerator stays polynomial. The result is not reduced.
 */
inline PolyFraction substitute_fractions(const CoefPoly& p, const std::map<Symbol, PolyFraction>& sigma) {
  Substitution numer_sub;
  std::map<Symbol, int> max_exp;
  for (const auto& [s, f] : sigma) {
    int e = p.degree_in(s);
    if (e > 0) max_exp[s] = e;
  }
  bool all_constant = true;
  for (const auto& [s, e] : max_exp)
    if (!sigma.at(s).denominator.is_constant()) all_constant = false;
  if (all_constant) {
    for (const auto& [s, e] : max_exp) {
      const auto& f = sigma.at(s);
      numer_sub.emplace(s, f.numerator / *f.denominator.constant_value());
    }
    return {substitute(p, numer_sub), CoefPoly(1)};
  }
  // Group terms by their exponents on the mapped symbols.
  std::map<Monomial, std::vector<CoefPoly::Term>> groups;
  for (const auto& [m, c] : p.terms()) {
    Monomial mapped, kept;
    for (int i = 0; i < kSymbolCount; ++i) {
      int e = m.exponent_at(i);
      if (e == 0) continue;
      Symbol s = Symbol::from_slot(i);
      if (max_exp.count(s))
        mapped.set_exponent(s, e);
      else
        kept.set_exponent(s, e);
    }
    groups[mapped].emplace_back(kept, c);
  }
  CoefPoly denominator(1);
  for (const auto& [s, e] : max_exp) denominator *= pow(sigma.at(s).denominator, static_cast<unsigned>(e));
  CoefPolyAccumulator acc;
  for (auto& [mapped, kept] : groups) {
    CoefPoly factor = CoefPoly::from_terms(kept);
    for (const auto& [s, emax] : max_exp) {
      const int e = mapped.exponent(s);
      const auto& f = sigma.at(s);
      factor *= pow(f.numerator, static_cast<unsigned>(e)) * pow(f.denominator, static_cast<unsigned>(emax - e));
    }
    acc.add(factor);
  }
  return {acc.take(), denominator};
}

}  // namespace webjets

#endif  // WEBJETS_FRACTION_HPP
