// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "webjets/commands.hpp"

using namespace webjets;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << "\n      failed: " << what;
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

LinearWeb3<Rational> web_from_sample(int order, const Sample& s) {
  std::vector<Rational> a, b, c;
  for (int r = 2; r <= order; ++r) {
    a.push_back(s.at(sym_a(r)));
    b.push_back(s.at(sym_b(r)));
    c.push_back(s.at(sym_c(r)));
  }
  return LinearWeb3<Rational>(a, b, c);
}

BiJet<CoefPoly> jet_uv(std::initializer_list<std::tuple<int, int, const char*>> terms) {
  BiJet<CoefPoly> out("u", "v", 2);
  for (const auto& [i, j, t] : terms) out.set(i, j, parse_poly(t));
  return out;
}

void criterion_1(Outcome& o) {
  const auto t0 = Clock::now();
  const auto web = LinearWeb3<CoefPoly>::symbolic(2);
  o.require(leaf_param(web, LineFamily::A, 2) == jet_uv({{1, 0, "-1"}, {0, 1, "1"}, {2, 0, "-1"}, {1, 1, "1"}}),
            "x(u,v)");
  o.require(leaf_param(web, LineFamily::B, 2) == jet_uv({{1, 0, "1"}, {0, 1, "1"}, {2, 0, "1"}, {1, 1, "1"}}),
            "y(u,v)");
  o.require(leaf_param(web, LineFamily::C, 2) == jet_uv({{0, 1, "1"}, {1, 1, "1/2"}}), "z(u,v)");
  const auto s = slope_jets(web, 2);
  o.require(s.P == jet_uv({{0, 0, "1"}, {1, 0, "1"}, {0, 1, "-1"}, {2, 0, "1+a2"}, {1, 1, "-1-2a2"}, {0, 2, "a2"}}),
            "P");
  o.require(s.Q == jet_uv({{0, 0, "-1"}, {1, 0, "-1"}, {0, 1, "-1"}, {2, 0, "-1+b2"}, {1, 1, "-1+2b2"}, {0, 2, "b2"}}),
            "Q");
  o.require(s.R_ == jet_uv({{0, 1, "-1/2"}, {1, 1, "-1/4"}, {0, 2, "c2"}}), "R");
  const auto [pi, delta] = pi_delta_origin(s);
  o.require(pi == CoefPoly(2) && delta == CoefPoly(1), "Pi, Delta at origin");
  o.require(partial(partial(s.P, 1), 1)(0, 0) == parse_poly("2a2"), "P_vv");
  o.require(partial(partial(s.Q, 1), 1)(0, 0) == parse_poly("2b2"), "Q_vv");
  o.require(partial(partial(s.R_, 1), 1)(0, 0) == parse_poly("2c2"), "R_vv");
  o.require(characteristic_origin(web) == parse_poly("4(a2+b2+c2)"), "car(0,0)");
  const double t = seconds_since(t0);
  o.require(t < 5.0, "runtime " + std::to_string(t) + " s >= 5 s");
  o.notes << " [" << t << " s]";
}

void criterion_2(Outcome& o) {
  const auto t0 = Clock::now();
  const auto nf = normal_form_of_web(LinearWeb3<CoefPoly>::symbolic(4), 2);
  o.require(nf.E(1, 0) == parse_poly("(-2a2-2b2+c2+20a3+8b3+14c3)/7"), "E10");
  o.require(nf.E(0, 1) == parse_poly("(2a2+2b2-c2+20b3+8a3+14c3)/7"), "E01");
  o.require(nf.E(2, 0) ==
                parse_poly("a2/12+b2/12-c2/6+10a2^2/3+c2^2+2a2b2/3-2b2c2/3+2a2c2/3-2a3+c3/3+20a4/3+4b4/3+3c4"),
            "E20");
  o.require(nf.E(1, 1) == parse_poly("-a2/12-b2/12-c2/3+a2^2/3-b2^2/3+4c2(a2-b2)/3+4a4+4b4+5c4"), "E11");
  o.require(nf.E(0, 2) ==
                parse_poly("a2/12+b2/12-c2/6-10b2^2/3-c2^2-2a2b2/3-2b2c2/3+2a2c2/3+2b3-c3/3+20b4/3+4a4/3+3c4"),
            "E02");
  const double t = seconds_since(t0);
  o.require(t < 60.0, "runtime " + std::to_string(t) + " s >= 60 s");
  o.notes << " [" << t << " s]";
}

void criterion_3(Outcome& o) {
  const auto t0 = Clock::now();
  const PerturbedWeb p(LinearWeb3<CoefPoly>::symbolic(4));
  const Relations r1 = solve_order1(p), r2 = solve_order2(p);
  auto eq = [](const PolyFraction& f, const char* text) {
    return f.denominator == CoefPoly(1) && f.numerator == parse_poly(text);
  };
  o.require(eq(r1.at(sym_A(3)), "A2/4+B2/4-C3/2"), "A3");
  o.require(eq(r1.at(sym_B(3)), "-A2/4-B2/4-C3/2"), "B3");
  o.require(eq(r2.at(sym_A(4)), "A2/8+c2B2/3+b2B2/3+B2/8-b2A2/12-B2A2/2-B2a2/6-19a2A2/12-A2^2+5c2A2/12-C3/4"),
            "A4");
  o.require(eq(r2.at(sym_B(4)), "A2/8-5c2B2/12+19b2B2/12+B2/8-a2A2/3+b2A2/6+B2A2/2+B2a2/12+B2^2-c2A2/3+C3/4"),
            "B4");
  o.require(eq(r2.at(sym_C(4)), "-A2/4+c2B2/3-5b2B2/3-B2/4+5a2A2/3-b2A2/3+B2a2/3-B2^2-c2A2/3+A2^2"), "C4");
  const double t = seconds_since(t0);
  o.require(t < 120.0, "runtime " + std::to_string(t) + " s >= 120 s");
  o.notes << " [" << t << " s]";
}

void criterion_4(Outcome& o) {
  double worst = 0;
  int runs = 0;
  for (const auto& sample : make_samples(9, 20, 4000)) {
    const auto web = web_from_sample(9, sample.values);
    for (int k = 0; k <= 7; ++k) {
      const auto t0 = Clock::now();
      try {
        const auto nf = normal_form_of_web(web, k);
        const int n = k + 3;
        const auto f = fw_jet(web, n);
        const std::string tag = " (seed " + std::to_string(sample.seed) + ", k " + std::to_string(k) + ")";
        o.require(fw_residual(web, f).to_string() == "0", "implicit residual" + tag);
        for (LineFamily fam : {LineFamily::A, LineFamily::B, LineFamily::C})
          o.require(leaf_residual(web, fam, leaf_param(web, fam, std::min(n, 9))).to_string() == "0",
                    "leaf residual" + tag);
        o.require(compose(nf.K, nf.U) == scale_argument(nf.U, Rational(2)), "Sternberg residual" + tag);
        o.require(nf.normal_form() == nf.H, "H - x - y = xy(x-y)L" + tag);
        o.require(nf.E(0, 0).is_zero(), "E(0,0)" + tag);
        o.require(nf.mu == web.mu(), "L(0,0) = a2+b2+c2" + tag);
      } catch (const Error& e) {
        o.require(false, e.what());
      }
      const double t = seconds_since(t0);
      worst = std::max(worst, t);
      if (k == 7) o.require(t < 5.0, "k=7 run took " + std::to_string(t) + " s");
      ++runs;
    }
  }
  o.notes << " [" << runs << " runs, slowest " << worst << " s]";
}

void criterion_5(Outcome& o) {
  const int k = 4;
  const auto sym = normal_form_of_web(LinearWeb3<CoefPoly>::symbolic(k + 2), k);
  int mismatches = 0;
  for (const auto& sample : make_samples(k + 2, 10, 5000)) {
    const auto num = normal_form_of_web(web_from_sample(k + 2, sample.values), k);
    if (!(specialize(sym.mu, sample.values) == CoefPoly(num.mu))) ++mismatches;
    for (int d = 0; d <= k; ++d)
      for (int j = 0; j <= d; ++j)
        if (!(specialize(sym.E(d - j, j), sample.values) == CoefPoly(num.E(d - j, j)))) ++mismatches;
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.notes << " [10 samples, k = " << k << "]";
}

void criterion_6(Outcome& o) {
  const auto web = LinearWeb3<CoefPoly>::symbolic(4);
  const CoefPoly curv = curvature_xyf_origin(fw_jet(web, 4));
  const auto rho = try_divide_exact(curv, web.mu());
  o.require(rho && rho->constant_value() && !rho->is_zero(), "curvature " + curv.to_string());
  if (rho) o.notes << " [curvature = " << *rho << " * (a2 + b2 + c2)]";
  o.require(curvature_xyf_origin(fw_jet(LinearWeb3<Rational>::pencil(4), 4)).is_zero(), "pencil curvature");
}

void criterion_7(Outcome& o) {
  const auto t0 = Clock::now();
  for (const auto& sample : make_samples(7, 10, 7000)) {
    const auto m = order4_system(sample.values).quadratic_matrix();
    o.require(m && rank(*m) == 3, "rank at seed " + std::to_string(sample.seed));
  }
  // Two assignments with equal a2+b2+c2, a3+b3+c3 and a2+b2+2b3-2a3 but
  // otherwise different coefficients.
  for (std::uint64_t seed : {7100, 7200}) {
    Sample s1 = make_sample(7, seed).values;
    Sample s2 = make_sample(7, seed + 50).values;
    const Rational shift(3, 7);
    for (Symbol s : {sym_a(2), sym_b(2), sym_c(2), sym_a(3), sym_b(3), sym_c(3)}) s2[s] = s1[s];
    s2[sym_a(2)] += shift;
    s2[sym_c(2)] -= shift;
    s2[sym_a(3)] += shift / Rational(2);
    s2[sym_c(3)] -= shift / Rational(2);
    auto combos = [](const Sample& s) {
      auto v = [&](Symbol x) { return s.at(x); };
      return std::vector<Rational>{v(sym_a(2)) + v(sym_b(2)) + v(sym_c(2)), v(sym_a(3)) + v(sym_b(3)) + v(sym_c(3)),
                                   v(sym_a(2)) + v(sym_b(2)) + Rational(2) * v(sym_b(3)) - Rational(2) * v(sym_a(3))};
    };
    o.require(combos(s1) == combos(s2) && s1 != s2, "combination construction");
    const auto m1 = order4_system(s1).quadratic_matrix(), m2 = order4_system(s2).quadratic_matrix();
    o.require(m1 && m2 && *m1 == *m2, "(alpha, beta, gamma) differ for seed " + std::to_string(seed));
  }
  const auto nf = normal_form_of_web(LinearWeb3<CoefPoly>::symbolic(9), 7);
  o.require(top_linear_coeffs(nf, 2, 0) == TopTriple{Rational(20, 3), Rational(4, 3), Rational(3)}, "triple (2,0)");
  o.require(top_linear_coeffs(nf, 1, 1) == TopTriple{Rational(4), Rational(4), Rational(5)}, "triple (1,1)");
  o.require(top_linear_coeffs(nf, 0, 2) == TopTriple{Rational(4, 3), Rational(20, 3), Rational(3)}, "triple (0,2)");
  int submatrices = 0;
  for (int n = 4; n <= 9; ++n) {
    const int d = n - 2;
    std::vector<std::vector<Rational>> rows;
    for (int j = 0; j <= d; ++j) {
      const TopTriple t = top_linear_coeffs(nf, d - j, j);
      rows.push_back({t.theta, t.phi, t.psi});
    }
    for (std::size_t x = 0; x < rows.size(); ++x)
      for (std::size_t y = x + 1; y < rows.size(); ++y)
        for (std::size_t z = y + 1; z < rows.size(); ++z) {
          ++submatrices;
          o.require(rank({rows[x], rows[y], rows[z]}) == 3, "antidiagonal rank at n = " + std::to_string(n));
        }
  }
  o.notes << " [10 samples, " << submatrices << " antidiagonal 3x3 minors, " << seconds_since(t0) << " s]";
}

void criterion_8(Outcome& o) {
  const Substitution zero{{sym_A(2), CoefPoly()}, {sym_B(2), CoefPoly()}};
  for (const auto& sample : make_samples(7, 3, 8000)) {
    ObstructionSolver solver(PerturbedWeb(sampled_base(7, sample.values)), 5);
    solver.solve_all();
    int count = 0;
    for (const auto& [s, f] : solver.known()) {
      ++count;
      o.require(substitute(f.numerator, zero).is_zero(), s.name() + " at seed " + std::to_string(sample.seed));
    }
    o.require(count == 15, "expected A_i, B_i, C_i for i = 3..7");
  }
  ObstructionSolver symbolic(PerturbedWeb(LinearWeb3<CoefPoly>::symbolic(5)), 3);
  for (int level : {1, 2, 3}) symbolic.solve_level(level);
  for (const auto& [s, f] : symbolic.known())
    o.require(substitute(f.numerator, zero).is_zero(), s.name() + " (symbolic)");
  o.notes << " [3 samples to index 7, symbolic to index 5]";
}

void criterion_9(Outcome& o) {
  WebSpec base;
  base.name = "base";
  for (int r = 2; r <= 7; ++r) {
    base.a.push_back(Rational(r, 3));
    base.b.push_back(Rational(1 - r, 5));
    base.c.push_back(Rational(r % 2 ? 1 : -2, r));
  }
  const CompareVerdict self = compare_webs(base.poly_web(), base.poly_web(), 5);
  o.require(self.isomorphic_to_order(5), "self-compare at k = 5");
  WebSpec bumped = base;
  bumped.a[1] += Rational(1);
  const CompareVerdict v = compare_webs(base.poly_web(), bumped.poly_web(), 5);
  o.require(v.same_mu && v.first_difference && v.first_difference->i == 1 && v.first_difference->j == 0,
            "first difference at (1,0)");
  if (v.first_difference)
    o.require(v.first_difference->second - v.first_difference->first == CoefPoly(Rational(20, 7)),
              "E10 shift of 20/7");
  WebSpec w1 = base, w0 = base;
  w1.a[0] = Rational(1);
  w1.b[0] = w1.c[0] = w0.a[0] = w0.b[0] = w0.c[0] = Rational(0);
  o.require(!compare_webs(w1.poly_web(), w0.poly_web(), 5).same_mu, "mu gate");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"1. leaf, slope and origin identities", criterion_1},
      {"2. E10, E01, E20, E11, E02", criterion_2},
      {"3. order-1/2 obstruction relations", criterion_3},
      {"4. pipeline invariants, 20 webs of order 9, k <= 7", criterion_4},
      {"5. specialization commutes with normalization", criterion_5},
      {"6. curvature is a multiple of a2+b2+c2", criterion_6},
      {"7. rank certificates", criterion_7},
      {"8. A2 = B2 = 0 forces all perturbations to vanish", criterion_8},
      {"9. comparison semantics", criterion_9},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << o.notes.str() << " (" << seconds_since(t0) << " s)\n"
              << std::flush;
    if (!o.pass) ++failed;
  }
  std::cout << failed << " of " << criteria.size() << " criteria failed\n";
  return failed ? 1 : 0;
}
