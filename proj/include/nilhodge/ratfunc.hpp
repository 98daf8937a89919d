#pragma once

#include "nilhodge/rational.hpp"

#include <concepts>
#include <string>
#include <utility>
#include <vector>

namespace nilhodge {

/// Dense univariate polynomial over an exact field, coefficients stored from
/// the constant term upwards with no trailing zeros.
template <class K>
class Poly {
 public:
  Poly() = default;
  explicit Poly(const K& c) {
    if (!c.is_zero()) c_.push_back(c);
  }
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly monomial(const K& c, std::size_t degree) {
    std::vector<K> v(degree + 1, K(Rational(0)));
    v[degree] = c;
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(Rational(0)); }
  K lead() const { return c_.empty() ? K(Rational(0)) : c_.back(); }

  K eval(const K& x) const {
    K acc(Rational(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    K l = lead().inv();
    std::vector<K> v = c_;
    for (auto& x : v) x = x * l;
    return Poly(std::move(v));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<K> v(std::max(a.c_.size(), b.c_.size()), K(Rational(0)));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<K> v = a.c_;
    for (auto& x : v) x = -x;
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> v(a.c_.size() + b.c_.size() - 1, K(Rational(0)));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    return Poly(std::move(v));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division; returns (quotient, remainder).
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero();
    Poly r = a;
    std::vector<K> q(std::max(0, a.degree() - b.degree() + 1), K(Rational(0)));
    K lb = b.lead().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      int shift = r.degree() - b.degree();
      K f = r.lead() * lb;
      q[shift] = f;
      r = r - monomial(f, shift) * b;
    }
    return {Poly(std::move(q)), r};
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  std::string to_string(const std::string& var) const {
    using nilhodge::to_string;
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const K& c = c_[i];
      if (c.is_zero()) continue;
      std::string cs = to_string(c);
      bool compound = cs.find_first_of("+ ", 1) != std::string::npos;
      std::string term;
      std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
      if (i == 0) {
        term = compound ? "(" + cs + ")" : cs;
      } else if (c == K(Rational(1))) {
        term = mono;
      } else if (c == K(Rational(-1))) {
        term = "-" + mono;
      } else {
        term = (compound ? "(" + cs + ")" : cs) + "*" + mono;
      }
      if (out.empty()) {
        out = term;
      } else if (term[0] == '-') {
        out += " - " + term.substr(1);
      } else {
        out += " + " + term;
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<K> c_;
};

/// Name of the formal parameter printed for rational functions.
inline constexpr const char* kParameterName = "a";

/// Quotient of polynomials in one formal parameter over K, canonical form:
/// coprime numerator and denominator, monic denominator.
template <class K>
class RatFunc {
 public:
  RatFunc() : den_(K(Rational(1))) {}
  RatFunc(const K& c) : num_(c), den_(K(Rational(1))) {}  // NOLINT(google-explicit-constructor)
  template <class S>
    requires(!std::same_as<S, K> && !std::same_as<S, RatFunc> && std::constructible_from<K, const S&>)
  explicit RatFunc(const S& s) : RatFunc(K(s)) {}
  RatFunc(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

  /// The formal parameter itself.
  static RatFunc parameter() {
    return RatFunc(Poly<K>::monomial(K(Rational(1)), 1), Poly<K>(K(Rational(1))));
  }

  const Poly<K>& numerator() const { return num_; }
  const Poly<K>& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  K constant_value() const { return num_.coeff(0); }

  /// Substitutes a value for the parameter.
  K eval(const K& x) const {
    K d = den_.eval(x);
    if (d.is_zero()) throw DivisionByZero();
    return num_.eval(x) / d;
  }

  RatFunc inv() const {
    if (is_zero()) throw DivisionByZero();
    return RatFunc(den_, num_);
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.den_.degree() == 0 && b.den_.degree() == 0) {
      RatFunc r;
      r.num_ = a.num_ * b.num_;
      return r;
    }
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const {
    std::string n = num_.to_string(kParameterName);
    if (den_.degree() == 0) return n;
    std::string d = den_.to_string(kParameterName);
    bool nc = n.find(' ') != std::string::npos;
    return (nc ? "(" + n + ")" : n) + "/(" + d + ")";
  }

 private:
  void canonicalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
      den_ = Poly<K>(K(Rational(1)));
      return;
    }
    if (den_.degree() > 0) {
      Poly<K> g = Poly<K>::gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = Poly<K>::divmod(num_, g).first;
        den_ = Poly<K>::divmod(den_, g).first;
      }
    }
    K l = den_.lead();
    if (!(l == K(Rational(1)))) {
      Poly<K> li(l.inv());
      num_ = num_ * li;
      den_ = den_ * li;
    }
  }

  Poly<K> num_;
  Poly<K> den_;
};

template <class K>
std::string to_string(const RatFunc<K>& x) { return x.to_string(); }

/// Coordinates over the monomials a^j (times the base field's monomials).
/// Only polynomial values have such coordinates; callers clear denominators.
template <class K>
RationalCoords rational_coordinates(const RatFunc<K>& x) {
  if (x.denominator().degree() > 0)
    throw std::logic_error("rational coordinates of a non-polynomial rational function");
  RationalCoords out;
  const auto& c = x.numerator().coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::string mono = j == 0 ? "" : (j == 1 ? std::string(kParameterName)
                                             : std::string(kParameterName) + "^" + std::to_string(j));
    for (const auto& [key, v] : rational_coordinates(c[j])) {
      std::string k = mono.empty() ? key : (key == "1" ? mono : key + "*" + mono);
      out[k] = v;
    }
  }
  return out;
}

/// Ordering in which the formal parameter exceeds every base-field element.
template <class K>
int field_sign(const RatFunc<K>& x) {
  if (x.is_zero()) return 0;
  return field_sign(x.numerator().lead()) * field_sign(x.denominator().lead());
}

}  // namespace nilhodge
