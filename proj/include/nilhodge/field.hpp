#pragma once

#include "nilhodge/complex.hpp"
#include "nilhodge/quad.hpp"
#include "nilhodge/ratfunc.hpp"
#include "nilhodge/rational.hpp"

#include <concepts>
#include <optional>
#include <string>

namespace nilhodge {

/// An exact field: arithmetic, decidable equality, inversion, embedding of Q.
template <class K>
concept ExactField = std::constructible_from<K, Rational> && requires(const K& a, const K& b) {
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { a / b } -> std::convertible_to<K>;
  { -a } -> std::convertible_to<K>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.inv() } -> std::convertible_to<K>;
  { to_string(a) } -> std::convertible_to<std::string>;
  { rational_coordinates(a) } -> std::convertible_to<RationalCoords>;
};

using QSqrt = Quad<Rational>;
/// Q(sqrt d)(a): the deepest tower the library composes.
using Tower = RatFunc<QSqrt>;

template <class K>
K zero() { return K(Rational(0)); }
template <class K>
K one() { return K(Rational(1)); }

/// Value as a rational number when it lies in the prime field.
template <ExactField K>
std::optional<Rational> as_rational(const K& x) {
  if constexpr (std::same_as<K, Rational>) {
    return x;
  } else {
    if constexpr (requires { x.denominator(); }) {
      if (x.denominator().degree() > 0) return std::nullopt;
    }
    RationalCoords c = rational_coordinates(x);
    if (c.empty()) return Rational(0);
    if (c.size() == 1 && c.begin()->first == "1") return c.begin()->second;
    return std::nullopt;
  }
}

/// Deterministic pivot preference: larger is better. Rationals prefer the
/// largest absolute numerator; other fields only distinguish zero/non-zero.
inline Integer pivot_weight(const Rational& x) { return abs(x.numerator()); }
template <class K>
Integer pivot_weight(const K& x) { return x.is_zero() ? Integer(0) : Integer(1); }

}  // namespace nilhodge
