#ifndef WEBJETS_COMMANDS_HPP
#define WEBJETS_COMMANDS_HPP

#include <cstdint>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "webjets/golden.hpp"
#include "webjets/web_spec.hpp"

namespace webjets {

/// What a subcommand produces: text for people, JSON for machines, and an exit code.
struct CommandResult {
  int exit_code = 0;
  std::string text;
  nlohmann::json json;
};

namespace detail {

inline std::string ij(int i, int j) { return std::to_string(i) + std::to_string(j); }

inline nlohmann::json fraction_json(const PolyFraction& f) {
  return {{"numerator", f.numerator.to_string()}, {"denominator", f.denominator.to_string()}};
}

inline std::string fraction_text(const PolyFraction& f) {
  if (f.denominator == CoefPoly(1)) return f.numerator.to_string();
  return "(" + f.numerator.to_string() + ") / (" + f.denominator.to_string() + ")";
}

inline void relations_out(const Relations& rel, std::ostringstream& text, nlohmann::json& json,
                          const std::string& indent) {
  json = nlohmann::json::object();
  for (const auto& [s, f] : rel) {
    text << indent << s.name() << " = " << fraction_text(f) << "\n";
    json[s.name()] = fraction_json(f);
  }
}

inline nlohmann::json sample_json(const Sample& s) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [sym, v] : s) out[sym.name()] = v.to_string();
  return out;
}

inline std::string matrix_text(const RationalMatrix& m, const std::string& indent) {
  std::string out;
  for (const auto& row : m) {
    out += indent + "[";
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? ", " : "") + row[c].to_string();
    out += "]\n";
  }
  return out;
}

}  // namespace detail

inline CommandResult cmd_characteristic(const WebSpec& spec, std::optional<int> jet = std::nullopt) {
  const auto web = spec.poly_web();
  const CoefPoly car = characteristic_origin(web);
  const bool flat = web.mu().is_zero();
  CommandResult r;
  std::ostringstream text;
  text << "car(0,0) = " << car << "\n";
  if (flat) text << "flat: a2 + b2 + c2 = 0\n";
  r.json = {{"name", spec.name}, {"characteristic", car.to_string()}, {"flat", flat}};
  if (jet) {
    const auto cj = characteristic_jet(web, *jet);
    text << "car jet (order " << *jet << ") = " << cj << "\n";
    nlohmann::json coeffs = nlohmann::json::object();
    for (int d = 0; d <= *jet; ++d)
      for (int j = 0; j <= d; ++j) coeffs[detail::ij(d - j, j)] = cj(d - j, j).to_string();
    r.json["jet"] = {{"order", *jet}, {"coefficients", coeffs}};
  }
  r.text = text.str();
  return r;
}

/// Renders mu and E_ij (by total degree, then descending i).
inline CommandResult normal_form_report(const std::string& name, const NormalFormResult<CoefPoly>& nf) {
  CommandResult r;
  std::ostringstream text;
  text << "mu = " << nf.mu << "\n";
  if (nf.flat) text << "flat: mu = 0, the normal form is not unique\n";
  nlohmann::json e = nlohmann::json::object();
  for (int d = 1; d <= nf.k(); ++d)
    for (int j = 0; j <= d; ++j) {
      const std::string key = detail::ij(d - j, j);
      text << "E" << key << " = " << nf.E(d - j, j) << "\n";
      e[key] = nf.E(d - j, j).to_string();
    }
  r.text = text.str();
  r.json = {{"name", name}, {"k", nf.k()}, {"mu", nf.mu.to_string()}, {"flat", nf.flat}, {"E", e}};
  return r;
}

inline CommandResult cmd_normal_form(const WebSpec& spec, int k) {
  return normal_form_report(spec.name, normal_form_of_web(spec.poly_web(), k));
}

/// Normalizes F = x + y + xy(x - y) mu, which is already in normal form.
inline CommandResult cmd_normal_form_synthetic(const Rational& mu, int k) {
  const int n = k + 3;
  const auto x = BiJet<CoefPoly>::variable("x", "y", n, 0);
  const auto y = BiJet<CoefPoly>::variable("x", "y", n, 1);
  auto nf = normalize(x + y + x * y * (x - y) * mu);
  nf.flat = mu.is_zero();
  return normal_form_report("synthetic", nf);
}

struct CompareVerdict {
  bool same_mu = false;
  int equal_to_order = -1;  // -1 when the mu gate fails
  struct Difference {
    int i = 0, j = 0;
    CoefPoly first, second;
  };
  std::optional<Difference> first_difference;

  bool isomorphic_to_order(int k) const { return same_mu && equal_to_order == k && !first_difference; }
};

/*
 * Necessary conditions for a local isomorphism: equal mu, then equal E
 * through order k, scanned by total degree and descending i.
 */
inline CompareVerdict compare_webs(const LinearWeb3<CoefPoly>& w1, const LinearWeb3<CoefPoly>& w2, int k) {
  CompareVerdict v;
  v.same_mu = w1.mu() == w2.mu();
  if (!v.same_mu) return v;
  if (w1.mu().is_zero())
    throw Error(ErrorKind::FlatWeb, "mu = 0: the normal form is not unique, so E cannot decide isomorphism");
  const auto e1 = normal_form_of_web(w1, k).E;
  const auto e2 = normal_form_of_web(w2, k).E;
  v.equal_to_order = 0;
  for (int d = 1; d <= k; ++d) {
    for (int j = 0; j <= d; ++j)
      if (!(e1(d - j, j) == e2(d - j, j))) {
        v.first_difference = CompareVerdict::Difference{d - j, j, e1(d - j, j), e2(d - j, j)};
        return v;
      }
    v.equal_to_order = d;
  }
  return v;
}

inline CommandResult cmd_compare(const WebSpec& s1, const WebSpec& s2, int k) {
  const CompareVerdict v = compare_webs(s1.poly_web(), s2.poly_web(), k);
  CommandResult r;
  std::ostringstream text;
  text << "same_mu: " << (v.same_mu ? "yes" : "no") << "\n";
  r.json = {{"first", s1.name}, {"second", s2.name}, {"k", k}, {"same_mu", v.same_mu},
            {"equal_to_order", v.equal_to_order}, {"first_difference", nullptr}};
  if (!v.same_mu) {
    text << "not isomorphic at these base points: mu = " << s1.poly_web().mu() << " vs " << s2.poly_web().mu() << "\n";
  } else {
    text << "equal_to_order: " << v.equal_to_order << "\n";
    if (v.first_difference) {
      const auto& d = *v.first_difference;
      text << "first difference at (" << d.i << "," << d.j << "): " << d.first << " vs " << d.second << "\n";
      text << "difference: " << (d.first - d.second) << "\n";
      r.json["first_difference"] = {{"i", d.i},
                                    {"j", d.j},
                                    {"first", d.first.to_string()},
                                    {"second", d.second.to_string()},
                                    {"difference", (d.first - d.second).to_string()}};
    }
  }
  r.exit_code = v.isomorphic_to_order(k) ? 0 : 1;
  r.text = text.str();
  return r;
}

namespace detail {

struct SampleReport {
  std::string text;
  nlohmann::json json;
};

/// Levels up to `order` at one rational specialization of the base web.
inline SampleReport obstruct_sample(int order, const Sample& sample, std::optional<std::uint64_t> seed) {
  std::ostringstream text;
  nlohmann::json json;
  if (seed) {
    text << "sample seed " << *seed << ":\n";
    json["seed"] = *seed;
  } else {
    text << "web values:\n";
  }
  json["values"] = sample_json(sample);
  if (sample_mu(sample).is_zero()) throw Error(ErrorKind::SingularSample, "a2 + b2 + c2 = 0 in the sample");
  const int k = order == 4 ? 5 : order;
  ObstructionSolver solver(PerturbedWeb(sampled_base(k + 2, sample)), k);
  for (int level : {1, 2, 3, 5})
    if (level <= k) solver.solve_level(level);
  text << "  relations (in A2, B2):\n";
  relations_out(solver.known(), text, json["relations"], "    ");
  if (order != 4) {
    const auto cert = denominator_certificate(order, sample);
    text << "  denominator along c2: " << cert.denominator << " = (a2+b2+c2)^"
         << (cert.mu_power ? std::to_string(*cert.mu_power) : std::string("?")) << "\n";
    json["denominator"] = {{"along_c2", cert.denominator.to_string()},
                           {"mu_power", cert.mu_power ? nlohmann::json(*cert.mu_power) : nlohmann::json(nullptr)}};
  } else {
    const QuadSystem q = solver.order4_system();
    nlohmann::json rows = nlohmann::json::array();
    text << "  order-4 rows (alpha, beta, gamma, mu, nu):\n";
    for (std::size_t j = 0; j < q.rows.size(); ++j) {
      nlohmann::json row = nlohmann::json::array();
      text << "    T" << ij(4 - static_cast<int>(j), static_cast<int>(j)) << ":";
      for (const auto& f : q.rows[j]) {
        const auto rf = reduce(f);
        text << " [" << fraction_text(rf) << "]";
        row.push_back(fraction_text(rf));
      }
      text << "\n";
      rows.push_back(row);
    }
    json["order4_rows"] = rows;
    if (auto m = q.quadratic_matrix()) {
      const std::size_t rk = rank(*m);
      text << "  rank of (alpha, beta, gamma) = " << rk << "\n";
      json["rank"] = rk;
      if (rk == 3) {
        const auto red = reduce_quad_system(q);
        const char* lhs[] = {"A2^2", "B2^2", "A2*B2"};
        nlohmann::json reduced = nlohmann::json::array();
        for (std::size_t i = 0; i < red.psi.size(); ++i) {
          const std::string rhs = (CoefPoly(red.psi[i]) * CoefPoly(sym_A(2)) + CoefPoly(red.phi[i]) * CoefPoly(sym_B(2))).to_string();
          text << "    " << (i < 3 ? lhs[i] : "0") << " = " << rhs << "\n";
          reduced.push_back({{"lhs", i < 3 ? lhs[i] : "0"}, {"rhs", rhs}});
        }
        json["reduced"] = reduced;
      }
    } else {
      text << "  (alpha, beta, gamma) are not constant\n";
      json["rank"] = nullptr;
    }
  }
  return {text.str(), json};
}

}  // namespace detail

/*
 * Obstruction equations up to `order` (1..5). Orders 1 and 2 run on the web
 * as given (symbolic or numeric). Orders 3 to 5 run at rational samples:
 * the web itself when numeric, otherwise `samples` seeded draws. Samples are
 * processed concurrently; output keeps seed order.
 */
inline CommandResult cmd_obstruct(const WebSpec& spec, int order, int samples, std::uint64_t seed) {
  if (order < 1 || order > 5) throw Error(ErrorKind::OrderTooHigh, "obstruction order must be 1..5");
  CommandResult r;
  std::ostringstream text;
  r.json = {{"name", spec.name}, {"order", order}};
  if (order <= 2) {
    ObstructionSolver solver(PerturbedWeb(spec.poly_web()), order);
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [key, p] : solver.T()) {
      text << "T" << detail::ij(key.first, key.second) << " = " << p << "\n";
      t[detail::ij(key.first, key.second)] = p.to_string();
    }
    r.json["T"] = t;
    nlohmann::json levels = nlohmann::json::array();
    for (int level = 1; level <= order; ++level) {
      const auto& sol = solver.solve_level(level);
      text << "order " << level << " relations:\n";
      nlohmann::json rel;
      detail::relations_out(sol.relations, text, rel, "  ");
      levels.push_back({{"level", level}, {"relations", rel}});
    }
    r.json["levels"] = levels;
    r.text = text.str();
    return r;
  }
  std::vector<std::pair<Sample, std::optional<std::uint64_t>>> work;
  const int k = order == 4 ? 5 : order;
  if (spec.symbolic) {
    for (const auto& s : make_samples(k + 2, samples, seed)) work.emplace_back(s.values, s.seed);
  } else {
    if (spec.order() < k + 2)
      throw Error(ErrorKind::OrderTooHigh, "order " + std::to_string(order) + " needs web order >= " +
                                               std::to_string(k + 2));
    Sample s;
    for (int i = 2; i <= k + 2; ++i) {
      s[sym_a(i)] = spec.a[static_cast<std::size_t>(i - 2)];
      s[sym_b(i)] = spec.b[static_cast<std::size_t>(i - 2)];
      s[sym_c(i)] = spec.c[static_cast<std::size_t>(i - 2)];
    }
    work.emplace_back(std::move(s), std::nullopt);
  }
  std::vector<std::future<detail::SampleReport>> jobs;
  for (const auto& [s, sd] : work)
    jobs.push_back(std::async(std::launch::async, [order, &s, &sd] { return detail::obstruct_sample(order, s, sd); }));
  nlohmann::json reports = nlohmann::json::array();
  bool all_rank3 = true;
  for (auto& job : jobs) {
    auto rep = job.get();
    text << rep.text;
    if (order == 4 && !(rep.json.contains("rank") && rep.json["rank"] == 3)) all_rank3 = false;
    reports.push_back(std::move(rep.json));
  }
  r.json["samples"] = reports;
  if (order == 4) {
    text << (all_rank3 ? "rank 3 at every sample\n" : "rank below 3 at some sample\n");
    r.exit_code = all_rank3 ? 0 : 1;
  }
  r.text = text.str();
  return r;
}

inline CommandResult cmd_verify_paper(const GoldenOptions& opts = {}) {
  CommandResult r;
  std::ostringstream text;
  nlohmann::json checks = nlohmann::json::array();
  int failures = 0;
  for (const auto& c : run_golden_suite(opts)) {
    if (c.pass) {
      text << "PASS " << c.name << ": " << c.got << "\n";
    } else {
      ++failures;
      text << "FAIL " << c.name << ": expected " << c.expected << ", got " << c.got << "\n";
    }
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"expected", c.expected}, {"got", c.got}});
  }
  text << failures << " failure(s)\n";
  r.exit_code = failures ? 1 : 0;
  r.text = text.str();
  r.json = {{"checks", checks}, {"failures", failures}};
  return r;
}

}  // namespace webjets

#endif  // WEBJETS_COMMANDS_HPP
