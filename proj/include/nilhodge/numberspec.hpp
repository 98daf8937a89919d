#pragma once

#include "nilhodge/rational.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace nilhodge {

/// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;

  static Interval point(const Rational& x) { return {x, x}; }
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / Rational(2); }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool positive() const { return lo.sign() > 0; }
  bool negative() const { return hi.sign() < 0; }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend bool operator==(const Interval& a, const Interval& b) = default;
  std::string to_string() const { return "[" + lo.to_string() + ", " + hi.to_string() + "]"; }
};

/// m * 10^e with m > 0 rational and e an arbitrary integer. Keeps magnitudes
/// like 10^(-10^24) symbolic.
struct ExponentPair {
  Rational mantissa;
  Integer exponent;

  /// Exact value; only call when |exponent| is modest.
  Rational materialize() const;
  /// Rational enclosure of ln(m * 10^e).
  Interval ln() const;
  std::string to_string() const { return mantissa.to_string() + "e" + exponent.get_str(); }
};

int compare(const ExponentPair& a, const ExponentPair& b);

/// Smallest exponent pair 10^e with 10^e >= 2^(-k) ... used for certified
/// upper bounds of powers of two: returns e with 2^power <= 10^e.
Integer decimal_exponent_upper_bound_pow2(const Integer& power);

/// Rational enclosures of logarithms.
Interval ln2_enclosure();
Interval ln10_enclosure();
Interval ln_enclosure(const Integer& positive);
Interval ln_enclosure(const Rational& positive);

struct Convergent {
  Integer p;
  Integer q;
  ExponentPair error;  ///< |x - p/q| <= error
};

/// Raised when a certified source cannot deliver the requested precision.
class PrecisionUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A real number given by certified convergents k = 1..max_index.
struct ConvergentSeries {
  std::string name;
  std::size_t max_index = 0;
  std::function<Convergent(std::size_t)> generator;
};

/// Real root (-B + s*sqrt(B^2 - 4AC)) / (2A) of Ax^2 + Bx + C, s = +-1.
struct QuadraticSurd {
  Integer A;
  Integer B;
  Integer C;
  int sqrt_sign = 1;

  Integer discriminant() const { return B * B - 4 * A * C; }
};

/// A certified real number.
class NumberSpec {
 public:
  using Variant = std::variant<Rational, QuadraticSurd, ConvergentSeries>;

  static NumberSpec exact(const Rational& r) { return NumberSpec(Variant(r)); }
  /// Throws std::invalid_argument unless the root is real and irrational.
  static NumberSpec surd(const QuadraticSurd& s);
  static NumberSpec series(ConvergentSeries s) { return NumberSpec(Variant(std::move(s))); }

  const Variant& value() const { return v_; }
  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  bool is_surd() const { return std::holds_alternative<QuadraticSurd>(v_); }
  bool is_series() const { return std::holds_alternative<ConvergentSeries>(v_); }
  const QuadraticSurd& as_surd() const { return std::get<QuadraticSurd>(v_); }
  const ConvergentSeries& as_series() const { return std::get<ConvergentSeries>(v_); }

  std::string describe() const;

 private:
  explicit NumberSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Interval of width <= width containing x; smaller widths give nested
/// sub-intervals.
Interval enclosure(const NumberSpec& x, const Rational& width);

/// Continued-fraction convergents of a quadratic surd, k = 0, 1, ...
std::vector<std::pair<Integer, Integer>> surd_convergents(const QuadraticSurd& s, std::size_t count);

/// Built-in convergent sources.
/// sum_{k>=1} 10^(-10^(k!)), error bound twice the first omitted term.
ConvergentSeries liouville_series();
/// x = sum 1/q_k with q_1 = 2, q_{k+1} = q_k^(q_k).
ConvergentSeries self_power_series();
/// x = sum 1/q_k with q_k = 2^(2^(2^k)).
ConvergentSeries double_exponential_series();
/// x = sum 2^(-E_k) with E_1 = 1, E_{k+1} = 2^(E_k), so q_{k+1} = 2^(q_k).
ConvergentSeries power_tower_series();
/// Looks up a built-in source by name; nullopt when unknown.
std::optional<ConvergentSeries> convergent_series_by_name(const std::string& name);

}  // namespace nilhodge
