#ifndef WEBJETS_RING_HPP
#define WEBJETS_RING_HPP

#include <concepts>
#include <optional>
#include <string>
#include <utility>

#include "webjets/coef_poly.hpp"
#include "webjets/rational.hpp"

namespace webjets {

/// Coefficient rings the jets work over: Rational and CoefPoly.
template <class R>
concept CoefficientRing = requires(R x, const R& y, const Rational& q) {
  { R(q) } -> std::same_as<R>;
  { x + y } -> std::convertible_to<R>;
  { x - y } -> std::convertible_to<R>;
  { x * y } -> std::convertible_to<R>;
  { x * q } -> std::convertible_to<R>;
  { -x } -> std::convertible_to<R>;
  { y.is_zero() } -> std::same_as<bool>;
  { y.constant_value() } -> std::same_as<std::optional<Rational>>;
  { y.to_string() } -> std::same_as<std::string>;
  { x == y } -> std::same_as<bool>;
};

static_assert(CoefficientRing<Rational>);
static_assert(CoefficientRing<CoefPoly>);

/// The inverse of r as a rational, provided r is a nonzero rational constant.
template <CoefficientRing R>
std::optional<Rational> unit_inverse(const R& r) {
  auto c = r.constant_value();
  if (!c || c->is_zero()) return std::nullopt;
  return c->inverse();
}

/// Running sum of products x*y; specialised for CoefPoly to avoid temporaries.
template <CoefficientRing R>
class ProductSum {
 public:
  void add_product(const R& x, const R& y) {
    if (!x.is_zero() && !y.is_zero()) acc_ += x * y;
  }
  void add(const R& x) { acc_ += x; }
  R take() { return std::move(acc_); }

 private:
  R acc_{};
};

template <>
class ProductSum<CoefPoly> {
 public:
  void add_product(const CoefPoly& x, const CoefPoly& y) { acc_.add_product(x, y); }
  void add(const CoefPoly& x) { acc_.add(x); }
  CoefPoly take() { return acc_.take(); }

 private:
  CoefPolyAccumulator acc_;
};

}  // namespace webjets

#endif  // WEBJETS_RING_HPP
