#ifndef WEBJETS_COEF_POLY_HPP
#define WEBJETS_COEF_POLY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "webjets/errors.hpp"
#include "webjets/rational.hpp"

namespace webjets {

// Coefficient families. a, b, c are web Taylor coefficients; A, B, C are the
// differences between the coefficients of two webs.
enum class Family : std::uint8_t { a = 0, b = 1, c = 2, A = 3, B = 4, C = 5 };

inline constexpr int kFamilyCount = 6;
inline constexpr int kMinSymbolIndex = 2;
inline constexpr int kMaxSymbolIndex = 13;
inline constexpr int kIndicesPerFamily = kMaxSymbolIndex - kMinSymbolIndex + 1;
inline constexpr int kSymbolCount = kFamilyCount * kIndicesPerFamily;

constexpr char family_letter(Family f) { return "abcABC"[static_cast<int>(f)]; }

inline std::optional<Family> family_from_letter(char ch) {
  switch (ch) {
    case 'a': return Family::a;
    case 'b': return Family::b;
    case 'c': return Family::c;
    case 'A': return Family::A;
    case 'B': return Family::B;
    case 'C': return Family::C;
    default: return std::nullopt;
  }
}

struct Symbol {
  Family family = Family::a;
  int index = kMinSymbolIndex;

  Symbol() = default;
  Symbol(Family f, int i) : family(f), index(i) {
    if (i < kMinSymbolIndex || i > kMaxSymbolIndex)
      throw Error(ErrorKind::SymbolOutOfRange,
                  std::string(1, family_letter(f)) + std::to_string(i) + " outside supported index range");
  }

  /// Slot in the dense exponent vector. Order: a2 < a3 < ... < b2 < ... < C13.
  int slot() const { return static_cast<int>(family) * kIndicesPerFamily + (index - kMinSymbolIndex); }
  static Symbol from_slot(int s) {
    return Symbol(static_cast<Family>(s / kIndicesPerFamily), s % kIndicesPerFamily + kMinSymbolIndex);
  }

  std::string name() const { return std::string(1, family_letter(family)) + std::to_string(index); }

  friend bool operator==(const Symbol& x, const Symbol& y) { return x.slot() == y.slot(); }
  friend bool operator<(const Symbol& x, const Symbol& y) { return x.slot() < y.slot(); }
};

inline Symbol sym_a(int i) { return {Family::a, i}; }
inline Symbol sym_b(int i) { return {Family::b, i}; }
inline Symbol sym_c(int i) { return {Family::c, i}; }
inline Symbol sym_A(int i) { return {Family::A, i}; }
inline Symbol sym_B(int i) { return {Family::B, i}; }
inline Symbol sym_C(int i) { return {Family::C, i}; }

/// Power product over the fixed symbol universe, stored as a dense exponent vector.
class Monomial {
 public:
  Monomial() { exps_.fill(0); }
  explicit Monomial(Symbol s, int e = 1) : Monomial() {
    exps_[s.slot()] = static_cast<std::uint8_t>(e);
    degree_ = e;
  }

  int degree() const { return degree_; }
  int exponent(Symbol s) const { return exps_[s.slot()]; }
  int exponent_at(int slot) const { return exps_[slot]; }
  bool is_one() const { return degree_ == 0; }

  void set_exponent(Symbol s, int e) {
    degree_ += e - exps_[s.slot()];
    exps_[s.slot()] = static_cast<std::uint8_t>(e);
  }

  friend Monomial operator*(const Monomial& x, const Monomial& y) {
    Monomial r;
    for (int i = 0; i < kSymbolCount; ++i) r.exps_[i] = static_cast<std::uint8_t>(x.exps_[i] + y.exps_[i]);
    r.degree_ = x.degree_ + y.degree_;
    return r;
  }

  friend bool operator==(const Monomial& x, const Monomial& y) {
    return x.degree_ == y.degree_ && std::memcmp(x.exps_.data(), y.exps_.data(), kSymbolCount) == 0;
  }

  /// Canonical order: ascending total degree; within a degree, monomials
  /// with larger exponents on earlier symbols come first (a2 before b2).
  friend bool operator<(const Monomial& x, const Monomial& y) {
    if (x.degree_ != y.degree_) return x.degree_ < y.degree_;
    return std::memcmp(x.exps_.data(), y.exps_.data(), kSymbolCount) > 0;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < kSymbolCount; i += 8) {
      std::uint64_t w;
      std::memcpy(&w, exps_.data() + i, 8);
      h = (h ^ w) * 1099511628211ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i < kSymbolCount; ++i) {
      if (exps_[i] == 0) continue;
      if (!out.empty()) out += '*';
      out += Symbol::from_slot(i).name();
      if (exps_[i] > 1) out += '^' + std::to_string(exps_[i]);
    }
    return out;
  }

 private:
  static_assert(kSymbolCount % 8 == 0, "exponent vector must be word-aligned for hashing");
  std::array<std::uint8_t, kSymbolCount> exps_;
  int degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/*
 * Sparse multivariate polynomial with exact rational coefficients over the
 * symbols a_r, b_r, c_r, A_r, B_r, C_r.
 *
 * Terms are kept sorted in canonical monomial order with no zero
 * coefficients, so structural equality is mathematical equality.
 */
class CoefPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  CoefPoly() = default;
  CoefPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace_back(Monomial(), c);
  }
  CoefPoly(long c) : CoefPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  CoefPoly(Symbol s) { terms_.emplace_back(Monomial(s), Rational(1)); }  // NOLINT(google-explicit-constructor)

  static CoefPoly monomial(const Monomial& m, const Rational& c) {
    CoefPoly p;
    if (!c.is_zero()) p.terms_.emplace_back(m, c);
    return p;
  }

  /// Builds a polynomial from arbitrary terms; duplicates are merged.
  static CoefPoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    CoefPoly p;
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first)
        p.terms_.back().second += t.second;
      else
        p.terms_.push_back(std::move(t));
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    }
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

  /// The value if this polynomial has no symbols, otherwise nullopt.
  std::optional<Rational> constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_[0].first.is_one()) return terms_[0].second;
    return std::nullopt;
  }

  Rational constant_term() const {
    if (!terms_.empty() && terms_[0].first.is_one()) return terms_[0].second;
    return Rational(0);
  }

  Rational coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.first < key; });
    if (it != terms_.end() && it->first == m) return it->second;
    return Rational(0);
  }

  int total_degree() const { return terms_.empty() ? -1 : terms_.back().first.degree(); }

  int degree_in(Symbol s) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.exponent(s));
    return d;
  }

  bool contains(Symbol s) const { return degree_in(s) > 0; }

  std::vector<Symbol> symbols() const {
    std::array<bool, kSymbolCount> seen{};
    for (const auto& t : terms_)
      for (int i = 0; i < kSymbolCount; ++i)
        if (t.first.exponent_at(i) > 0) seen[i] = true;
    std::vector<Symbol> out;
    for (int i = 0; i < kSymbolCount; ++i)
      if (seen[i]) out.push_back(Symbol::from_slot(i));
    return out;
  }

  /// Coefficient of s^power, as a polynomial in the remaining symbols.
  CoefPoly coefficient_of(Symbol s, int power) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.first.exponent(s) != power) continue;
      Monomial m = t.first;
      m.set_exponent(s, 0);
      out.emplace_back(m, t.second);
    }
    return from_terms(std::move(out));
  }

  CoefPoly& operator+=(const CoefPoly& o) { return *this = merge(*this, o, false); }
  CoefPoly& operator-=(const CoefPoly& o) { return *this = merge(*this, o, true); }
  CoefPoly& operator*=(const CoefPoly& o) { return *this = *this * o; }
  CoefPoly& operator*=(const Rational& c) {
    if (c.is_zero()) {
      terms_.clear();
    } else {
      for (auto& t : terms_) t.second *= c;
    }
    return *this;
  }
  CoefPoly& operator/=(const Rational& c) { return *this *= c.inverse(); }

  friend CoefPoly operator+(const CoefPoly& x, const CoefPoly& y) { return merge(x, y, false); }
  friend CoefPoly operator-(const CoefPoly& x, const CoefPoly& y) { return merge(x, y, true); }
  friend CoefPoly operator-(CoefPoly x) {
    for (auto& t : x.terms_) t.second = -t.second;
    return x;
  }
  friend CoefPoly operator*(CoefPoly x, const Rational& c) { return x *= c; }
  friend CoefPoly operator*(const Rational& c, CoefPoly x) { return x *= c; }
  friend CoefPoly operator/(CoefPoly x, const Rational& c) { return x /= c; }

  friend CoefPoly operator*(const CoefPoly& x, const CoefPoly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    if (auto c = x.constant_value()) return y * *c;
    if (auto c = y.constant_value()) return x * *c;
    return product_of(x, y);
  }

  friend bool operator==(const CoefPoly& x, const CoefPoly& y) { return x.terms_ == y.terms_; }

  std::string to_string() const;

  static CoefPoly product_of(const CoefPoly& x, const CoefPoly& y);

  friend std::ostream& operator<<(std::ostream& os, const CoefPoly& p) { return os << p.to_string(); }

 private:
  static CoefPoly merge(const CoefPoly& x, const CoefPoly& y, bool subtract) {
    CoefPoly out;
    out.terms_.reserve(x.size() + y.size());
    auto i = x.terms_.begin(), j = y.terms_.begin();
    while (i != x.terms_.end() || j != y.terms_.end()) {
      if (j == y.terms_.end() || (i != x.terms_.end() && i->first < j->first)) {
        out.terms_.push_back(*i++);
      } else if (i == x.terms_.end() || j->first < i->first) {
        out.terms_.emplace_back(j->first, subtract ? -j->second : j->second);
        ++j;
      } else {
        Rational c = subtract ? i->second - j->second : i->second + j->second;
        if (!c.is_zero()) out.terms_.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::vector<Term> terms_;
};

/// Accumulates a sum of products of polynomials without materializing each product.
class CoefPolyAccumulator {
 public:
  void add_product(const CoefPoly& x, const CoefPoly& y) {
    if (x.is_zero() || y.is_zero()) return;
    for (const auto& [mx, cx] : x.terms()) {
      for (const auto& [my, cy] : y.terms()) {
        mpq_mul(prod_.get_mpq_t(), cx.gmp().get_mpq_t(), cy.gmp().get_mpq_t());
        auto [it, inserted] = acc_.try_emplace(mx * my);
        if (inserted)
          it->second = prod_;
        else
          it->second += prod_;
      }
    }
  }

  void add(const CoefPoly& x) {
    for (const auto& [m, c] : x.terms()) {
      auto [it, inserted] = acc_.try_emplace(m);
      if (inserted)
        it->second = c.gmp();
      else
        it->second += c.gmp();
    }
  }

  CoefPoly take() {
    std::vector<CoefPoly::Term> terms;
    terms.reserve(acc_.size());
    for (auto& [m, c] : acc_)
      if (sgn(c) != 0) terms.emplace_back(m, Rational(std::move(c)));
    acc_.clear();
    return CoefPoly::from_terms(std::move(terms));
  }

 private:
  std::unordered_map<Monomial, mpq_class, MonomialHash> acc_;
  mpq_class prod_;
};

inline CoefPoly CoefPoly::product_of(const CoefPoly& x, const CoefPoly& y) {
  CoefPolyAccumulator acc;
  acc.add_product(x, y);
  return acc.take();
}

inline CoefPoly pow(const CoefPoly& base, unsigned e) {
  CoefPoly r(1);
  CoefPoly b = base;
  while (e > 0) {
    if (e & 1u) r *= b;
    e >>= 1u;
    if (e > 0) b = b * b;
  }
  return r;
}

/// Renders e.g. "-2/7*a2 + 4*b3^2 - c2*C3 + 1/2". Zero renders as "0".
inline std::string CoefPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = c.sign() < 0;
    Rational mag = negative ? -c : c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (m.is_one()) {
      out += mag.to_string();
    } else {
      if (!mag.is_one()) out += mag.to_string() + "*";
      out += m.to_string();
    }
  }
  return out;
}

inline std::string to_string(const CoefPoly& p) { return p.to_string(); }

using Substitution = std::map<Symbol, CoefPoly>;

/*
 * Simultaneous substitution: every mapped symbol is replaced by its image,
 * unmapped symbols are kept. Images are not re-substituted.
 */
inline CoefPoly substitute(const CoefPoly& p, const Substitution& sigma) {
  if (sigma.empty() || p.is_zero()) return p;
  std::array<const CoefPoly*, kSymbolCount> image{};
  for (const auto& [s, img] : sigma) image[s.slot()] = &img;
  // powers[slot][e] caches image^e
  std::array<std::vector<CoefPoly>, kSymbolCount> powers;
  auto power_of = [&](int slot, int e) -> const CoefPoly& {
    auto& cache = powers[slot];
    if (cache.empty()) cache.emplace_back(1);
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * *image[slot]);
    return cache[e];
  };

  // Group terms by their substituted part so each image power product is formed once.
  std::map<Monomial, std::vector<std::pair<Monomial, Rational>>> groups;
  for (const auto& [m, c] : p.terms()) {
    Monomial kept, replaced;
    for (int i = 0; i < kSymbolCount; ++i) {
      int e = m.exponent_at(i);
      if (e == 0) continue;
      Symbol s = Symbol::from_slot(i);
      if (image[i])
        replaced.set_exponent(s, e);
      else
        kept.set_exponent(s, e);
    }
    groups[replaced].emplace_back(kept, c);
  }
  CoefPoly result;
  for (const auto& [replaced, kept_terms] : groups) {
    CoefPoly factor(1);
    for (int i = 0; i < kSymbolCount; ++i) {
      int e = replaced.exponent_at(i);
      if (e > 0) factor = factor * power_of(i, e);
    }
    std::vector<CoefPoly::Term> kept_vec(kept_terms.begin(), kept_terms.end());
    result += factor * CoefPoly::from_terms(std::move(kept_vec));
  }
  return result;
}

/// Substitutes rational values; the result is constant if every symbol is covered.
inline CoefPoly specialize(const CoefPoly& p, const std::map<Symbol, Rational>& values) {
  Substitution sigma;
  for (const auto& [s, v] : values) sigma.emplace(s, CoefPoly(v));
  return substitute(p, sigma);
}

}  // namespace webjets

#endif  // WEBJETS_COEF_POLY_HPP
