#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nilhodge {

using Integer = mpz_class;

/// Raised on any attempt to invert zero.
class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "p", "-p", "p/q" or a finite decimal "1.25".
  static Rational parse(std::string_view text);

  Integer numerator() const { return q_.get_num(); }
  Integer denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  Rational inv() const;
  Rational abs() const { return Rational(::abs(q_)); }

  Integer floor() const;
  Integer ceil() const;

  double to_double() const { return q_.get_d(); }
  std::string to_string() const { return q_.get_str(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

inline std::string to_string(const Rational& r) { return r.to_string(); }

/// Rational coordinates of a field element with respect to the monomial
/// basis the field carries ("1", "s", "t^2", "s*t", "i", ...). Keys absent
/// from the map have coordinate zero.
using RationalCoords = std::map<std::string, Rational>;

inline RationalCoords rational_coordinates(const Rational& r) {
  if (r.is_zero()) return {};
  return {{"1", r}};
}

/// Sign in the field ordering; for Rational the usual one.
inline int field_sign(const Rational& r) { return r.sign(); }

Rational pow(const Rational& base, long exponent);

}  // namespace nilhodge
