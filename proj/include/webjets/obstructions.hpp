#ifndef WEBJETS_OBSTRUCTIONS_HPP
#define WEBJETS_OBSTRUCTIONS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "webjets/fraction.hpp"
#include "webjets/normal_form.hpp"

namespace webjets {

using TMap = std::map<std::pair<int, int>, CoefPoly>;
using Relations = std::map<Symbol, PolyFraction>;
using Sample = std::map<Symbol, Rational>;

/*
 * A base web together with its perturbation: coefficients a_r + A_r,
 * b_r + B_r, c_r + C_r, except that c_2 + C_2 is written c_2 - A_2 - B_2 so
 * both webs share the same normalizing constant. C_2 never appears.
 */
class PerturbedWeb {
 public:
  explicit PerturbedWeb(LinearWeb3<CoefPoly> base) : base_(std::move(base)), perturbed_(make_perturbed(base_)) {}

  const LinearWeb3<CoefPoly>& base() const { return base_; }
  const LinearWeb3<CoefPoly>& perturbed() const { return perturbed_; }
  int order() const { return base_.order(); }

 private:
  static LinearWeb3<CoefPoly> make_perturbed(const LinearWeb3<CoefPoly>& base) {
    std::vector<CoefPoly> a, b, c;
    for (int r = 2; r <= base.order(); ++r) {
      a.push_back(base.coefficient(LineFamily::A, r) + CoefPoly(sym_A(r)));
      b.push_back(base.coefficient(LineFamily::B, r) + CoefPoly(sym_B(r)));
      if (r == 2)
        c.push_back(base.coefficient(LineFamily::C, 2) - CoefPoly(sym_A(2)) - CoefPoly(sym_B(2)));
      else
        c.push_back(base.coefficient(LineFamily::C, r) + CoefPoly(sym_C(r)));
    }
    return LinearWeb3<CoefPoly>(std::move(a), std::move(b), std::move(c));
  }

  LinearWeb3<CoefPoly> base_;
  LinearWeb3<CoefPoly> perturbed_;
};

/// A_2, B_2, then A_r, B_r, C_r for r = 3..order.
inline std::vector<Symbol> perturbation_symbols(int order) {
  std::vector<Symbol> out{sym_A(2), sym_B(2)};
  for (int r = 3; r <= order; ++r) {
    out.push_back(sym_A(r));
    out.push_back(sym_B(r));
    out.push_back(sym_C(r));
  }
  return out;
}

inline Substitution zero_perturbation(int order) {
  Substitution sigma;
  for (Symbol s : perturbation_symbols(order)) sigma.emplace(s, CoefPoly());
  return sigma;
}

/// T_ij = E_ij - Ebar_ij for 1 <= i + j <= k.
inline TMap t_polys(const PerturbedWeb& p, int k) {
  const auto e = normal_form_of_web(p.base(), k).E;
  const auto ebar = normal_form_of_web(p.perturbed(), k).E;
  TMap t;
  for (int d = 1; d <= k; ++d)
    for (int j = 0; j <= d; ++j) t[{d - j, j}] = e(d - j, j) - ebar(d - j, j);
  return t;
}

/// Unknowns eliminated by the equations T_ij = 0 with i + j = level.
inline std::vector<Symbol> level_unknowns(int level) {
  switch (level) {
    case 1: return {sym_A(3), sym_B(3)};
    case 2: return {sym_A(4), sym_B(4), sym_C(4)};
    case 3: return {sym_A(5), sym_B(5), sym_C(5), sym_C(3)};
    case 5: return {sym_A(6), sym_B(6), sym_C(6), sym_A(7), sym_B(7), sym_C(7)};
    default: throw Error(ErrorKind::RankDeficient, "no elimination scheme for level " + std::to_string(level));
  }
}

struct LevelSolution {
  int level = 0;
  std::vector<Symbol> unknowns;
  Relations relations;  // as solved at this level, before later levels feed back
};

/// Rows (alpha, beta, gamma, mu, nu) of alpha A2^2 + beta B2^2 + gamma A2 B2 + mu A2 + nu B2 = 0.
struct QuadSystem {
  std::vector<std::array<PolyFraction, 5>> rows;

  /// Rows (alpha_j, beta_j, gamma_j) as rationals; nullopt if some entry is not constant.
  std::optional<RationalMatrix> quadratic_matrix() const {
    RationalMatrix m;
    for (const auto& row : rows) {
      std::vector<Rational> r;
      for (int c = 0; c < 3; ++c) {
        auto v = reduce(row[c]).numerator.constant_value();
        auto d = reduce(row[c]).denominator.constant_value();
        if (!v || !d) return std::nullopt;
        r.push_back(*v / *d);
      }
      m.push_back(std::move(r));
    }
    return m;
  }
};

/// The system solved for A2^2, B2^2, A2 B2 from three independent rows.
struct ReducedQuadSystem {
  std::array<std::size_t, 3> pivot_rows{};
  // psi[i] A2 + phi[i] B2 for i = 0..2 are A2^2, B2^2, A2 B2; for the other
  // rows, psi A2 + phi B2 = 0.
  std::vector<Rational> psi, phi;
};

/*
 * Solves the obstruction equations level by level. Relations found at a
 * level are substituted into every later equation, and once C_3 is found
 * (level 3) it is fed back into the earlier relations.
 */
class ObstructionSolver {
 public:
  ObstructionSolver(PerturbedWeb web, int k) : web_(std::move(web)), k_(k), t_(t_polys(web_, k)) {}

  const PerturbedWeb& web() const { return web_; }
  const TMap& T() const { return t_; }
  const Relations& known() const { return known_; }
  const std::vector<LevelSolution>& levels() const { return levels_; }

  const LevelSolution& solve_level(int level) {
    if (level > k_) throw Error(ErrorKind::OrderTooHigh, "level " + std::to_string(level) + " exceeds k");
    const auto unknowns = level_unknowns(level);
    std::vector<CoefPoly> equations;
    for (int j = 0; j <= level; ++j) equations.push_back(substitute_fractions(t_.at({level - j, j}), known_).numerator);
    const LinearSystem sys = extract_linear_system(equations, unknowns);
    const auto solution = solve_linear(sys.matrix, sys.rhs);
    LevelSolution out{level, unknowns, {}};
    for (std::size_t i = 0; i < unknowns.size(); ++i) out.relations[unknowns[i]] = reduce(solution[i]);
    for (auto& [s, rel] : known_) {
      PolyFraction sub = substitute_fractions(rel.numerator, out.relations);
      rel = reduce({sub.numerator, sub.denominator * rel.denominator});
    }
    for (const auto& [s, rel] : out.relations) known_[s] = rel;
    levels_.push_back(std::move(out));
    return levels_.back();
  }

  /// Levels 1, 2, 3, 5 in sequence (as far as k allows).
  void solve_all() {
    for (int level : {1, 2, 3, 5})
      if (level <= k_) solve_level(level);
  }

  /// T_ij with every known relation substituted (numerator over the shared denominator).
  PolyFraction reduced_equation(int i, int j) const { return substitute_fractions(t_.at({i, j}), known_); }

  /// The level-4 equations as quadratics in A2, B2; requires levels 1, 2, 3, 5.
  QuadSystem order4_system() const {
    QuadSystem q;
    const Monomial a2(sym_A(2)), b2(sym_B(2));
    const std::array<Monomial, 5> shape{a2 * a2, b2 * b2, a2 * b2, a2, b2};
    const auto perturbations = perturbation_symbols(std::max(web_.order(), 2));
    for (int j = 0; j <= 4; ++j) {
      PolyFraction eq = reduced_equation(4 - j, j);
      std::array<std::vector<CoefPoly::Term>, 5> parts;
      for (const auto& [m, c] : eq.numerator.terms()) {
        Monomial pert, rest;
        for (Symbol s : perturbations) {
          int e = m.exponent(s);
          if (e > 0) pert.set_exponent(s, e);
        }
        for (int i = 0; i < kSymbolCount; ++i) {
          Symbol s = Symbol::from_slot(i);
          if (m.exponent_at(i) > 0 && pert.exponent(s) == 0) rest.set_exponent(s, m.exponent_at(i));
        }
        bool placed = false;
        for (std::size_t idx = 0; idx < shape.size(); ++idx)
          if (pert == shape[idx]) {
            parts[idx].emplace_back(rest, c);
            placed = true;
          }
        if (!placed)
          throw Error(ErrorKind::ShapeMismatch, "T" + std::to_string(4 - j) + std::to_string(j) + " has term " +
                                                    m.to_string() + " outside the quadratic shape");
      }
      std::array<PolyFraction, 5> row;
      for (std::size_t idx = 0; idx < 5; ++idx)
        row[idx] = reduce({CoefPoly::from_terms(std::move(parts[idx])), eq.denominator});
      q.rows.push_back(std::move(row));
    }
    return q;
  }

 private:
  PerturbedWeb web_;
  int k_;
  TMap t_;
  Relations known_;
  std::vector<LevelSolution> levels_;
};

/// Order-1 relations: A3, B3 in terms of A2, B2, C3.
inline Relations solve_order1(const PerturbedWeb& p) {
  ObstructionSolver solver(p, 1);
  return solver.solve_level(1).relations;
}

/// Order-2 relations: A4, B4, C4 after substituting the order-1 relations.
inline Relations solve_order2(const PerturbedWeb& p) {
  ObstructionSolver solver(p, 2);
  solver.solve_level(1);
  return solver.solve_level(2).relations;
}

inline Rational sample_mu(const Sample& sample) {
  auto get = [&](Symbol s) {
    auto it = sample.find(s);
    return it == sample.end() ? Rational(0) : it->second;
  };
  return get(sym_a(2)) + get(sym_b(2)) + get(sym_c(2));
}

/// Base web of the given order with every a_r, b_r, c_r replaced by its sample value (missing = symbolic).
inline LinearWeb3<CoefPoly> sampled_base(int order, const Sample& sample) {
  return substitute(LinearWeb3<CoefPoly>::symbolic(order), [&] {
    Substitution s;
    for (const auto& [sym, v] : sample) s.emplace(sym, CoefPoly(v));
    return s;
  }());
}

/*
 * Level 3 (A5, B5, C5, C3) or level 5 (A6..C7) relations at a rational
 * specialization of the base web. The lower levels are solved first.
 */
inline Relations solve_order_specialized(int level, const Sample& sample) {
  if (level != 3 && level != 5) throw Error(ErrorKind::OrderTooHigh, "specialized solving is for levels 3 and 5");
  if (sample_mu(sample).is_zero()) throw Error(ErrorKind::SingularSample, "a2 + b2 + c2 = 0 in the sample");
  const int k = level;
  ObstructionSolver solver(PerturbedWeb(sampled_base(k + 2, sample)), k);
  for (int l : {1, 2, 3, 5})
    if (l <= level) solver.solve_level(l);
  return solver.levels().back().relations;
}

/*
 * Denominator certificate along a line through a sample: c2 is left
 * symbolic (all other base coefficients take their sample values), the
 * level is solved, and the common denominator of its relations is written
 * as (a2 + b2 + c2)^power when possible.
 */
struct DenominatorCertificate {
  int level = 0;
  CoefPoly denominator;           // monic, in c2 only
  std::optional<int> mu_power;    // set iff denominator == (a2+b2+c2)^p on the line
};

inline DenominatorCertificate denominator_certificate(int level, Sample sample) {
  sample.erase(sym_c(2));
  const int k = level;
  ObstructionSolver solver(PerturbedWeb(sampled_base(k + 2, sample)), k);
  for (int l : {1, 2, 3, 5})
    if (l <= level) solver.solve_level(l);
  DenominatorCertificate cert;
  cert.level = level;
  cert.denominator = CoefPoly(1);
  // least common multiple over the level's relations, via the powers of mu
  CoefPoly mu_line = sampled_base(2, sample).mu();
  mu_line /= mu_line.terms().back().second;
  int power = 0;
  bool pure = true;
  for (const auto& [s, rel] : solver.levels().back().relations) {
    CoefPoly d = rel.denominator;
    int p = 0;
    while (!d.is_constant()) {
      auto q = try_divide_exact(d, mu_line);
      if (!q) break;
      d = *q;
      ++p;
    }
    if (!d.is_constant()) pure = false;
    power = std::max(power, p);
    if (cert.denominator.total_degree() < rel.denominator.total_degree()) cert.denominator = rel.denominator;
  }
  if (pure) cert.mu_power = power;
  return cert;
}

/// Solves the order-4 system at a rational sample (levels 1, 2, 3, 5 first).
inline QuadSystem order4_system(const Sample& sample) {
  if (sample_mu(sample).is_zero()) throw Error(ErrorKind::SingularSample, "a2 + b2 + c2 = 0 in the sample");
  ObstructionSolver solver(PerturbedWeb(sampled_base(7, sample)), 5);
  solver.solve_all();
  return solver.order4_system();
}

/// Reduces the quadratic system to the form A2^2 = psi1 A2 + phi1 B2, ...; needs rank 3.
inline ReducedQuadSystem reduce_quad_system(const QuadSystem& q) {
  auto m = q.quadratic_matrix();
  if (!m) throw Error(ErrorKind::ShapeMismatch, "quadratic coefficients are not rational constants");
  auto value = [](const PolyFraction& f) {
    auto r = reduce(f);
    auto v = r.numerator.constant_value();
    if (!v) throw Error(ErrorKind::ShapeMismatch, "linear coefficients are not rational constants");
    return *v / *r.denominator.constant_value();
  };
  ReducedQuadSystem out;
  // choose the first three rows that are independent
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < m->size() && chosen.size() < 3; ++i) {
    RationalMatrix trial;
    for (auto c : chosen) trial.push_back((*m)[c]);
    trial.push_back((*m)[i]);
    if (rank(trial) == trial.size()) chosen.push_back(i);
  }
  if (chosen.size() < 3) throw Error(ErrorKind::RankDeficient, "quadratic part has rank < 3");
  std::copy(chosen.begin(), chosen.end(), out.pivot_rows.begin());
  PolyMatrix mat;
  std::vector<CoefPoly> rhs_mu, rhs_nu;
  for (auto c : chosen) {
    mat.push_back({CoefPoly((*m)[c][0]), CoefPoly((*m)[c][1]), CoefPoly((*m)[c][2])});
    rhs_mu.push_back(CoefPoly(-value(q.rows[c][3])));
    rhs_nu.push_back(CoefPoly(-value(q.rows[c][4])));
  }
  auto s_mu = solve_linear(mat, rhs_mu);
  auto s_nu = solve_linear(mat, rhs_nu);
  std::array<Rational, 3> psi3, phi3;
  for (int i = 0; i < 3; ++i) {
    psi3[i] = *s_mu[i].numerator.constant_value();
    phi3[i] = *s_nu[i].numerator.constant_value();
    out.psi.push_back(psi3[i]);
    out.phi.push_back(phi3[i]);
  }
  for (std::size_t r = 0; r < q.rows.size(); ++r) {
    if (std::find(chosen.begin(), chosen.end(), r) != chosen.end()) continue;
    Rational psi = value(q.rows[r][3]), phi = value(q.rows[r][4]);
    for (int i = 0; i < 3; ++i) {
      psi += (*m)[r][i] * psi3[i];
      phi += (*m)[r][i] * phi3[i];
    }
    out.psi.push_back(psi);
    out.phi.push_back(phi);
  }
  return out;
}

/// (theta, phi, psi): coefficients of a_n, b_n, c_n (n = i + j + 2) in E_ij.
struct TopTriple {
  Rational theta, phi, psi;
  friend bool operator==(const TopTriple&, const TopTriple&) = default;
};

/// Reads the top triple from a symbolic normal form computed to order >= i + j.
inline TopTriple top_linear_coeffs(const NormalFormResult<CoefPoly>& symbolic_nf, int i, int j) {
  const int n = i + j + 2;
  if (i + j < 1 || i + j > symbolic_nf.k())
    throw Error(ErrorKind::OrderTooHigh, "E_" + std::to_string(i) + std::to_string(j) + " not available");
  const CoefPoly& e = symbolic_nf.E(i, j);
  auto read = [&](Symbol s) {
    if (e.degree_in(s) > 1) throw Error(ErrorKind::NonConstantTopCoefficient, s.name() + " appears nonlinearly");
    auto c = e.coefficient_of(s, 1).constant_value();
    if (!c) throw Error(ErrorKind::NonConstantTopCoefficient, "coefficient of " + s.name() + " is not constant");
    return *c;
  };
  return {read(sym_a(n)), read(sym_b(n)), read(sym_c(n))};
}

inline TopTriple top_linear_coeffs(const LinearWeb3<CoefPoly>& symbolic_base, int i, int j) {
  return top_linear_coeffs(normal_form_of_web(symbolic_base, i + j), i, j);
}

/// Deterministic base samples: rationals p/q with |p| <= 20, 1 <= q <= 20, rejecting a2 + b2 + c2 = 0.
struct SeededSample {
  std::uint64_t seed = 0;
  Sample values;
};

inline SeededSample make_sample(int order, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    long p = static_cast<long>(rng() % 41) - 20;
    long q = static_cast<long>(rng() % 20) + 1;
    return Rational(p, q);
  };
  SeededSample s{seed, {}};
  do {
    s.values.clear();
    for (int r = 2; r <= order; ++r) {
      s.values[sym_a(r)] = draw();
      s.values[sym_b(r)] = draw();
      s.values[sym_c(r)] = draw();
    }
  } while (sample_mu(s.values).is_zero());
  return s;
}

inline std::vector<SeededSample> make_samples(int order, int count, std::uint64_t seed) {
  std::vector<SeededSample> out;
  for (int i = 0; i < count; ++i) out.push_back(make_sample(order, seed + static_cast<std::uint64_t>(i)));
  return out;
}

}  // namespace webjets

#endif  // WEBJETS_OBSTRUCTIONS_HPP
