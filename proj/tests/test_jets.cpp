#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace webjets;
using testing_support::random_rational;

namespace {

using UJ = UniJet<Rational>;
using BJ = BiJet<Rational>;

UJ random_tangent(std::mt19937_64& rng, int n, const std::string& var = "t") {
  UJ f(var, n);
  if (n >= 1) f.coeff(1) = Rational(1);
  for (int k = 2; k <= n; ++k) f.coeff(k) = random_rational(rng);
  return f;
}

BJ random_bijet(std::mt19937_64& rng, int n, bool zero_constant) {
  BJ f("x", "y", n);
  for (int d = zero_constant ? 1 : 0; d <= n; ++d)
    for (int j = 0; j <= d; ++j) f.set(d - j, j, random_rational(rng));
  return f;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ParseError;
}

}  // namespace

TEST(UniJet, ReverseOfTPlusTSquaredHasCatalanCoefficients) {
  // t + t^2 = s  =>  t = (-1 + sqrt(1 + 4s)) / 2 = sum (-1)^(n-1) Cat(n-1) s^n
  const UJ f("t", {Rational(0), Rational(1), Rational(1), Rational(0), Rational(0), Rational(0)});
  const UJ g = reverse(f);
  const long catalan[] = {1, 1, 2, 5, 14};
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(g[n], Rational(n % 2 ? catalan[n - 1] : -catalan[n - 1])) << n;
  EXPECT_EQ(g.to_string(), "t - t^2 + 2*t^3 - 5*t^4 + 14*t^5");
}

TEST(UniJet, ComposeWithReverseIsIdentity) {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 9; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      UJ f = random_tangent(rng, n);
      if (n >= 1) f.coeff(1) = random_rational(rng) + Rational(11);  // nonzero unit
      const UJ g = reverse(f);
      EXPECT_EQ(compose(f, g), UJ::identity("t", n));
      EXPECT_EQ(compose(g, f), UJ::identity("t", n));
    }
}

TEST(UniJet, ReverseErrors) {
  EXPECT_EQ(kind_of([] { reverse(UJ("t", {Rational(1), Rational(1)})); }), ErrorKind::NonzeroConstantTerm);
  EXPECT_EQ(kind_of([] { reverse(UJ("t", {Rational(0), Rational(0), Rational(1)})); }), ErrorKind::NonUnitLinearTerm);
  EXPECT_EQ(kind_of([] { compose(UJ::identity("t", 2), UJ("t", {Rational(1), Rational(1), Rational(0)})); }),
            ErrorKind::NonzeroConstantTerm);
  EXPECT_EQ(kind_of([] { UJ::identity("t", 2) + UJ::identity("s", 2); }), ErrorKind::VariableMismatch);
}

TEST(UniJet, ReverseOverPolynomialCoefficients) {
  UniJet<CoefPoly> f("t", 4);
  f.coeff(1) = CoefPoly(1);
  f.coeff(2) = CoefPoly(sym_a(2));
  f.coeff(3) = CoefPoly(sym_a(3));
  const auto g = reverse(f);
  EXPECT_EQ(g[2], -CoefPoly(sym_a(2)));
  EXPECT_EQ(g[3], parse_poly("2*a2^2 - a3"));
  EXPECT_EQ(compose(f, g), UniJet<CoefPoly>::identity("t", 4));
}

TEST(UniJet, ArithmeticTruncatesToSmallerOrder) {
  const UJ f("t", {Rational(1), Rational(2), Rational(3)});
  const UJ g("t", {Rational(1), Rational(1)});
  EXPECT_EQ((f * g).order(), 1);
  EXPECT_EQ((f * g).to_string(), "1 + 3*t");
  EXPECT_EQ(scale_argument(f, Rational(2)).to_string(), "1 + 4*t + 12*t^2");
  EXPECT_EQ(derivative(f).to_string(), "2 + 6*t");
}

TEST(BiJet, SubstitutionRestrictsToComposition) {
  // eval_diag(subst_bi(F, X, Y)) with X = Y = g equals F(g, g) computed by univariate composition of F(t, t).
  std::mt19937_64 rng(9);
  for (int n = 1; n <= 7; ++n) {
    const BJ f = random_bijet(rng, n, true);
    const UJ g = random_tangent(rng, n);
    const UJ lhs = eval_diag(subst_bi(f, g.renamed("x"), g.renamed("y")));
    const UJ rhs = compose(eval_diag(f), g);
    EXPECT_EQ(lhs, rhs) << n;
  }
}

TEST(BiJet, SubstitutionAgreesWithPointEvaluationOfPolynomials) {
  // For a polynomial F and linear X, Y the jet substitution is exact.
  std::mt19937_64 rng(10);
  const int n = 5;
  const BJ f = random_bijet(rng, n, true);
  const Rational p = random_rational(rng), q = random_rational(rng);
  UJ x("x", n), y("y", n);
  x.coeff(1) = p;
  y.coeff(1) = q;
  const BJ s = subst_bi(f, x, y);
  for (int d = 0; d <= n; ++d)
    for (int j = 0; j <= d; ++j)
      EXPECT_EQ(s(d - j, j), f(d - j, j) * pow(p, static_cast<unsigned>(d - j)) * pow(q, static_cast<unsigned>(j)));
}

TEST(BiJet, ReciprocalAndLog) {
  std::mt19937_64 rng(12);
  for (int n = 0; n <= 6; ++n) {
    BJ f = random_bijet(rng, n, false);
    f.set(0, 0, Rational(1));
    EXPECT_EQ(f * reciprocal(f), BJ::constant("x", "y", n, Rational(1)));
    if (n >= 1) {
      // d log f = df / f, in each variable
      const BJ lf = log_unit(f);
      EXPECT_TRUE(lf(0, 0).is_zero());
      for (int which : {0, 1}) EXPECT_EQ(partial(lf, which), (partial(f, which) * reciprocal(f.truncated(n - 1))));
    }
  }
  BJ bad("x", "y", 2);
  EXPECT_EQ(kind_of([&] { reciprocal(bad); }), ErrorKind::NonUnitDerivative);
}

TEST(BiJet, PartialDerivatives) {
  BJ f("x", "y", 3);
  f.set(2, 1, Rational(5));  // 5 x^2 y
  f.set(0, 3, Rational(1));  // y^3
  EXPECT_EQ(partial(f, 0).to_string(), "10*x*y");
  EXPECT_EQ(partial(f, 1).to_string(), "5*x^2 + 3*y^2");
}

TEST(BiJet, SkewDivisionInvertsMultiplication) {
  std::mt19937_64 rng(13);
  for (int n = 3; n <= 10; ++n) {
    const BJ l = random_bijet(rng, n - 3, false).renamed("x", "y");
    const BJ x = BJ::variable("x", "y", n, 0), y = BJ::variable("x", "y", n, 1);
    BJ lp("x", "y", n);
    for (int d = 0; d <= n - 3; ++d)
      for (int j = 0; j <= d; ++j) lp.set(d - j, j, l(d - j, j));
    const BJ h = x + y + x * y * (x - y) * lp;
    EXPECT_EQ(div_exact_skew(h), l) << n;
    if (!l.truncated(0)(0, 0).is_zero()) {
      EXPECT_EQ(kind_of([&] { div_exact_skew(h, Rational(2)); }), ErrorKind::NotDivisible);
    }
  }
  BJ h = BJ::variable("x", "y", 4, 0) + BJ::variable("x", "y", 4, 1);
  h.set(2, 1, Rational(1));  // x^2 y is not a multiple of xy(x - y)
  EXPECT_EQ(kind_of([&] { div_exact_skew(h); }), ErrorKind::NotDivisible);
}

TEST(BiJet, RenderingIsDeterministic) {
  BiJet<CoefPoly> f("x", "y", 2);
  f.set(0, 0, CoefPoly(1));
  f.set(1, 1, parse_poly("a2 - 1"));
  f.set(0, 2, CoefPoly(Rational(-1, 2)));
  EXPECT_EQ(f.to_string(), "1 + (-1 + a2)*x*y - 1/2*y^2");
  EXPECT_EQ(BJ("x", "y", 3).to_string(), "0");
}
