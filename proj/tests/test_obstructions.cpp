#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace webjets;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ParseError;
}

Sample unit_sample(int order) {
  Sample s;
  for (int r = 2; r <= order; ++r) s[sym_a(r)] = s[sym_b(r)] = s[sym_c(r)] = Rational(0);
  s[sym_a(2)] = s[sym_b(2)] = s[sym_c(2)] = Rational(1);
  return s;
}

}  // namespace

TEST(Obstructions, SelfIsomorphismGivesZeroConstantTerms) {
  const PerturbedWeb p(LinearWeb3<CoefPoly>::symbolic(5));
  const TMap t = t_polys(p, 3);
  EXPECT_EQ(t.size(), 9u);
  for (const auto& [key, poly] : t) {
    EXPECT_TRUE(substitute(poly, zero_perturbation(5)).is_zero()) << key.first << key.second;
    EXPECT_FALSE(poly.is_zero());
  }
}

TEST(Obstructions, PerturbationKeepsMu) {
  const PerturbedWeb p(LinearWeb3<CoefPoly>::symbolic(3));
  EXPECT_EQ(p.perturbed().mu(), p.base().mu());
  EXPECT_EQ(p.perturbed().coefficient(LineFamily::A, 3), parse_poly("a3 + A3"));
}

TEST(Obstructions, FirstOrderTermIsLinear) {
  const PerturbedWeb p(LinearWeb3<CoefPoly>::symbolic(3));
  const TMap t = t_polys(p, 1);
  // E10 is linear in the web coefficients, so T10 = -E10(perturbation), with c2 shifted by -A2 - B2.
  EXPECT_EQ(t.at({1, 0}), parse_poly("(-2A2 - 2B2 + (-A2 - B2) + 20A3 + 8B3 + 14C3) / 7") * Rational(-1));
}

TEST(Obstructions, PrintedLowOrderRelations) {
  const PerturbedWeb p(LinearWeb3<CoefPoly>::symbolic(4));
  const Relations r1 = solve_order1(p);
  EXPECT_EQ(r1.at(sym_A(3)).numerator, parse_poly("A2/4+B2/4-C3/2"));
  EXPECT_EQ(r1.at(sym_B(3)).numerator, parse_poly("-A2/4-B2/4-C3/2"));
  const Relations r2 = solve_order2(p);
  EXPECT_EQ(r2.at(sym_A(4)).numerator,
            parse_poly("A2/8+c2B2/3+b2B2/3+B2/8-b2A2/12-B2A2/2-B2a2/6-19a2A2/12-A2^2+5c2A2/12-C3/4"));
  EXPECT_EQ(r2.at(sym_B(4)).numerator,
            parse_poly("A2/8-5c2B2/12+19b2B2/12+B2/8-a2A2/3+b2A2/6+B2A2/2+B2a2/12+B2^2-c2A2/3+C3/4"));
  EXPECT_EQ(r2.at(sym_C(4)).numerator,
            parse_poly("-A2/4+c2B2/3-5b2B2/3-B2/4+5a2A2/3-b2A2/3+B2a2/3-B2^2-c2A2/3+A2^2"));
  for (const auto& [s, f] : r2) EXPECT_EQ(f.denominator, CoefPoly(1));
}

TEST(Obstructions, SymbolicThirdOrderHasMuDenominator) {
  ObstructionSolver solver(PerturbedWeb(LinearWeb3<CoefPoly>::symbolic(5)), 3);
  for (int level : {1, 2, 3}) solver.solve_level(level);
  for (const auto& [s, f] : solver.levels().back().relations) EXPECT_EQ(f.denominator, parse_poly("a2 + b2 + c2"));
  // Solved relations satisfy every equation up to level 3.
  for (int d = 1; d <= 3; ++d)
    for (int j = 0; j <= d; ++j) EXPECT_TRUE(solver.reduced_equation(d - j, j).numerator.is_zero()) << d - j << j;
  // C3 has been fed back: no relation mentions it any more.
  for (const auto& [s, f] : solver.known()) EXPECT_FALSE(f.numerator.contains(sym_C(3))) << s.name();
}

TEST(Obstructions, SpecializedRouteMatchesSubstitution) {
  const auto sample = make_sample(4, 7).values;
  const PerturbedWeb sym(LinearWeb3<CoefPoly>::symbolic(4));
  const PerturbedWeb num(sampled_base(4, sample));
  const TMap ts = t_polys(sym, 2), tn = t_polys(num, 2);
  Substitution sigma;
  for (const auto& [s, v] : sample) sigma.emplace(s, CoefPoly(v));
  for (const auto& [key, poly] : ts) EXPECT_EQ(substitute(poly, sigma), tn.at(key));
}

TEST(Obstructions, UnitSampleDenominatorsArePowersOfThree) {
  const Sample s = unit_sample(7);
  const Relations r3 = solve_order_specialized(3, s);
  EXPECT_EQ(r3.size(), 4u);
  const auto c3 = denominator_certificate(3, s);
  ASSERT_TRUE(c3.mu_power);
  EXPECT_EQ(*c3.mu_power, 1);
  EXPECT_EQ(c3.denominator, parse_poly("c2 + 2"));
  const auto c5 = denominator_certificate(5, s);
  ASSERT_TRUE(c5.mu_power);
  EXPECT_EQ(*c5.mu_power, 2);
  EXPECT_EQ(*specialize(c5.denominator, {{sym_c(2), Rational(1)}}).constant_value(), Rational(9));
  EXPECT_EQ(solve_order_specialized(5, s).size(), 6u);
}

TEST(Obstructions, SingularSampleRejected) {
  Sample s = unit_sample(7);
  s[sym_c(2)] = Rational(-2);
  EXPECT_EQ(kind_of([&] { solve_order_specialized(3, s); }), ErrorKind::SingularSample);
  EXPECT_EQ(kind_of([&] { order4_system(s); }), ErrorKind::SingularSample);
  EXPECT_EQ(kind_of([&] { solve_order_specialized(4, unit_sample(7)); }), ErrorKind::OrderTooHigh);
  EXPECT_EQ(kind_of([] { level_unknowns(4); }), ErrorKind::RankDeficient);
}

TEST(Obstructions, VanishingA2B2ForcesEverythingToVanish) {
  const auto sample = make_sample(7, 3).values;
  ObstructionSolver solver(PerturbedWeb(sampled_base(7, sample)), 5);
  solver.solve_all();
  const Substitution zero{{sym_A(2), CoefPoly()}, {sym_B(2), CoefPoly()}};
  EXPECT_EQ(solver.known().size(), 15u);
  for (const auto& [s, f] : solver.known()) {
    EXPECT_TRUE(substitute(f.numerator, zero).is_zero()) << s.name();
    for (Symbol v : f.numerator.symbols()) EXPECT_TRUE(v == sym_A(2) || v == sym_B(2)) << s.name();
  }
}

TEST(Obstructions, OrderFourRankAtSimpleSample) {
  Sample s;
  for (int r = 2; r <= 7; ++r) s[sym_a(r)] = s[sym_b(r)] = s[sym_c(r)] = Rational(0);
  s[sym_a(2)] = Rational(1);
  const QuadSystem q = order4_system(s);
  ASSERT_EQ(q.rows.size(), 5u);
  const auto m = q.quadratic_matrix();
  ASSERT_TRUE(m);
  EXPECT_EQ(rank(*m), 3u);
}

TEST(Obstructions, ReducedQuadraticSystemIsConsistent) {
  const QuadSystem q = order4_system(make_sample(7, 5).values);
  const ReducedQuadSystem red = reduce_quad_system(q);
  const auto m = *q.quadratic_matrix();
  auto value = [](const PolyFraction& f) {
    const auto r = reduce(f);
    return *r.numerator.constant_value() / *r.denominator.constant_value();
  };
  // Row j with A2^2, B2^2, A2B2 rewritten is the linear remainder: zero on pivot rows.
  std::size_t extra = 3;
  for (std::size_t j = 0; j < 5; ++j) {
    Rational psi = value(q.rows[j][3]), phi = value(q.rows[j][4]);
    for (int i = 0; i < 3; ++i) {
      psi += m[j][i] * red.psi[i];
      phi += m[j][i] * red.phi[i];
    }
    const bool pivot = std::find(red.pivot_rows.begin(), red.pivot_rows.end(), j) != red.pivot_rows.end();
    if (pivot) {
      EXPECT_TRUE(psi.is_zero() && phi.is_zero()) << j;
    } else {
      EXPECT_EQ(psi, red.psi[extra]);
      EXPECT_EQ(phi, red.phi[extra]);
      ++extra;
    }
  }
}

TEST(Obstructions, TopTriplesAndAntidiagonalRanks) {
  const auto nf = normal_form_of_web(LinearWeb3<CoefPoly>::symbolic(6), 4);
  EXPECT_EQ(top_linear_coeffs(nf, 2, 0), (TopTriple{Rational(20, 3), Rational(4, 3), Rational(3)}));
  EXPECT_EQ(top_linear_coeffs(nf, 1, 1), (TopTriple{Rational(4), Rational(4), Rational(5)}));
  EXPECT_EQ(top_linear_coeffs(nf, 0, 2), (TopTriple{Rational(4, 3), Rational(20, 3), Rational(3)}));
  for (int d = 2; d <= 4; ++d) {
    std::vector<std::vector<Rational>> rows;
    for (int j = 0; j <= d; ++j) {
      const TopTriple t = top_linear_coeffs(nf, d - j, j);
      rows.push_back({t.theta, t.phi, t.psi});
    }
    for (std::size_t x = 0; x < rows.size(); ++x)
      for (std::size_t y = x + 1; y < rows.size(); ++y)
        for (std::size_t z = y + 1; z < rows.size(); ++z)
          EXPECT_EQ(rank({rows[x], rows[y], rows[z]}), 3u) << "n=" << d + 2;
  }
  EXPECT_EQ(kind_of([&] { top_linear_coeffs(nf, 3, 2); }), ErrorKind::OrderTooHigh);
}

TEST(Obstructions, NonConstantTopCoefficientDetected) {
  auto nf = normal_form_of_web(LinearWeb3<CoefPoly>::symbolic(4), 2);
  nf.E.set(2, 0, parse_poly("a2*a4"));
  EXPECT_EQ(kind_of([&] { top_linear_coeffs(nf, 2, 0); }), ErrorKind::NonConstantTopCoefficient);
  nf.E.set(2, 0, parse_poly("a4^2"));
  EXPECT_EQ(kind_of([&] { top_linear_coeffs(nf, 2, 0); }), ErrorKind::NonConstantTopCoefficient);
}

TEST(Obstructions, SamplesAreDeterministicAndAdmissible) {
  const auto s1 = make_samples(7, 5, 100), s2 = make_samples(7, 5, 100);
  ASSERT_EQ(s1.size(), 5u);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    EXPECT_EQ(s1[i].seed, 100 + i);
    EXPECT_EQ(s1[i].values, s2[i].values);
    EXPECT_FALSE(sample_mu(s1[i].values).is_zero());
    EXPECT_EQ(s1[i].values.size(), 18u);
    for (const auto& [s, v] : s1[i].values) {
      EXPECT_LE(abs(v.numerator()), 20);
      EXPECT_LE(v.denominator(), 20);
    }
  }
  EXPECT_NE(s1[0].values, s1[1].values);
}
