#ifndef WEBJETS_LINEAR_SOLVE_HPP
#define WEBJETS_LINEAR_SOLVE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "webjets/coef_poly.hpp"

namespace webjets {

/// Exact quotient num / den in the polynomial ring; nullopt if den does not divide num.
inline std::optional<CoefPoly> try_divide_exact(CoefPoly num, const CoefPoly& den) {
  if (den.is_zero()) throw Error(ErrorKind::NotDivisible, "division by zero polynomial");
  if (auto c = den.constant_value()) return num / *c;
  const auto& [lead_m, lead_c] = den.terms().back();
  std::vector<CoefPoly::Term> quotient;
  while (!num.is_zero()) {
    const auto& [m, c] = num.terms().back();
    Monomial q;
    for (int i = 0; i < kSymbolCount; ++i) {
      int e = m.exponent_at(i) - lead_m.exponent_at(i);
      if (e < 0) return std::nullopt;
      if (e > 0) q.set_exponent(Symbol::from_slot(i), e);
    }
    Rational qc = c / lead_c;
    quotient.emplace_back(q, qc);
    num -= CoefPoly::monomial(q, qc) * den;
  }
  return CoefPoly::from_terms(std::move(quotient));
}

inline CoefPoly divide_exact(const CoefPoly& num, const CoefPoly& den) {
  auto q = try_divide_exact(num, den);
  if (!q) throw Error(ErrorKind::NotDivisible, "(" + num.to_string() + ") / (" + den.to_string() + ")");
  return *q;
}

/// Element of the fraction field, kept as an unreduced numerator/denominator pair.
struct PolyFraction {
  CoefPoly numerator;
  CoefPoly denominator{1};
};

using PolyMatrix = std::vector<std::vector<CoefPoly>>;

/*
 * Solves matrix * x = rhs over the fraction field of the polynomial ring
 * by fraction-free (Bareiss) elimination. More equations than unknowns are
 * allowed as long as the surplus rows reduce to 0 = 0.
 *
 * All components share one denominator: the last Bareiss pivot, i.e. the
 * determinant of the pivot submatrix up to sign. When that determinant is a
 * constant it is divided out, leaving denominator 1.
 */
inline std::vector<PolyFraction> solve_linear(PolyMatrix matrix, std::vector<CoefPoly> rhs) {
  const std::size_t rows = matrix.size();
  if (rhs.size() != rows) throw Error(ErrorKind::Inconsistent, "row count of rhs differs from matrix");
  const std::size_t cols = rows == 0 ? 0 : matrix[0].size();
  for (auto& row : matrix) {
    if (row.size() != cols) throw Error(ErrorKind::Inconsistent, "ragged matrix");
    row.push_back(CoefPoly());
  }
  for (std::size_t r = 0; r < rows; ++r) matrix[r][cols] = rhs[r];

  CoefPoly prev(1);
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    // Prefer the smallest nonzero entry; constants keep intermediate swell down.
    std::optional<std::size_t> best;
    for (std::size_t r = pivot_row; r < rows; ++r) {
      if (matrix[r][col].is_zero()) continue;
      if (!best || matrix[r][col].size() < matrix[*best][col].size()) best = r;
    }
    if (!best) continue;
    std::swap(matrix[pivot_row], matrix[*best]);
    const CoefPoly pivot = matrix[pivot_row][col];
    for (std::size_t r = pivot_row + 1; r < rows; ++r) {
      const CoefPoly factor = matrix[r][col];
      for (std::size_t c = col + 1; c <= cols; ++c) {
        CoefPoly v = matrix[r][c] * pivot - factor * matrix[pivot_row][c];
        matrix[r][c] = divide_exact(v, prev);
      }
      matrix[r][col] = CoefPoly();
      // Columns skipped earlier in this row stay zero.
    }
    prev = pivot;
    pivot_cols.push_back(col);
    ++pivot_row;
  }

  for (std::size_t r = pivot_row; r < rows; ++r)
    if (!matrix[r][cols].is_zero())
      throw Error(ErrorKind::Inconsistent, "row " + std::to_string(r) + " reduces to 0 = " + matrix[r][cols].to_string());
  if (pivot_cols.size() < cols)
    throw Error(ErrorKind::RankDeficient, "rank " + std::to_string(pivot_cols.size()) + " < " + std::to_string(cols));

  // Fraction-free back substitution: x_i = numer_i / det with exact quotients.
  const CoefPoly det = matrix[cols - 1][cols - 1];
  std::vector<CoefPoly> numer(cols);
  for (std::size_t i = cols; i-- > 0;) {
    CoefPoly acc = matrix[i][cols] * det;
    for (std::size_t j = i + 1; j < cols; ++j) acc -= matrix[i][j] * numer[j];
    numer[i] = divide_exact(acc, matrix[i][i]);
  }

  std::vector<PolyFraction> out(cols);
  auto det_const = det.constant_value();
  for (std::size_t i = 0; i < cols; ++i) {
    if (det_const) {
      out[i] = {numer[i] / *det_const, CoefPoly(1)};
    } else {
      Rational lead = det.terms().back().second;
      out[i] = {numer[i] / lead, det / lead};
    }
  }
  return out;
}

/// Linear system in the given unknowns read off from polynomial equations (each "= 0").
struct LinearSystem {
  PolyMatrix matrix;
  std::vector<CoefPoly> rhs;
};

/// Splits each equation as sum_j matrix[i][j] * unknown_j = rhs[i]. Throws
/// NonLinearSystem if some term has degree > 1 in the unknowns.
inline LinearSystem extract_linear_system(const std::vector<CoefPoly>& equations, const std::vector<Symbol>& unknowns) {
  LinearSystem sys;
  for (const auto& eq : equations) {
    std::vector<CoefPoly::Term> rest;
    std::vector<std::vector<CoefPoly::Term>> cols(unknowns.size());
    for (const auto& [m, c] : eq.terms()) {
      int hit = -1, deg = 0;
      for (std::size_t j = 0; j < unknowns.size(); ++j) {
        int e = m.exponent(unknowns[j]);
        deg += e;
        if (e > 0) hit = static_cast<int>(j);
      }
      if (deg > 1)
        throw Error(ErrorKind::NonLinearSystem, "term " + m.to_string() + " is nonlinear in the unknowns");
      if (deg == 0) {
        rest.emplace_back(m, -c);
      } else {
        Monomial stripped = m;
        stripped.set_exponent(unknowns[hit], 0);
        cols[hit].emplace_back(stripped, c);
      }
    }
    std::vector<CoefPoly> row;
    for (auto& col : cols) row.push_back(CoefPoly::from_terms(std::move(col)));
    sys.matrix.push_back(std::move(row));
    sys.rhs.push_back(CoefPoly::from_terms(std::move(rest)));
  }
  return sys;
}

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact rank by Gaussian elimination over the rationals.
inline std::size_t rank(RationalMatrix m) {
  std::size_t r = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

inline Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace webjets

#endif  // WEBJETS_LINEAR_SOLVE_HPP
