#pragma once

#include "nilhodge/rational.hpp"

#include <concepts>
#include <string>

namespace nilhodge {

/// Raised when two quadratic-surd values with different radicands meet.
class RadicandMismatch : public std::invalid_argument {
 public:
  RadicandMismatch(long d1, long d2)
      : std::invalid_argument("incompatible quadratic extensions sqrt(" + std::to_string(d1) +
                              ") and sqrt(" + std::to_string(d2) + ")") {}
};

/// Returns the squarefree part s and the square factor f with n = f^2 s.
std::pair<long, long> squarefree_decomposition(long n);

/// Element u + v*sqrt(d) of K(sqrt d) with d a squarefree integer not equal
/// to 0 or 1. The radicand travels with each value; d == 0 marks an element
/// of the base field (v == 0).
template <class K>
class Quad {
 public:
  Quad() : u_(Rational(0)), v_(Rational(0)) {}
  Quad(const K& u) : u_(u), v_(Rational(0)) {}  // NOLINT(google-explicit-constructor)
  template <class S>
    requires(!std::same_as<S, K> && !std::same_as<S, Quad> && std::constructible_from<K, const S&>)
  explicit Quad(const S& s) : Quad(K(s)) {}
  Quad(const K& u, const K& v, long d) : u_(u), v_(v), d_(d) { normalize(); }

  /// sqrt(n) for an integer n; reduces n to its squarefree part.
  static Quad sqrt(long n) {
    if (n == 0) return Quad();
    auto [s, f] = squarefree_decomposition(n);
    if (s == 1) return Quad(K(Rational(f)));
    return Quad(K(Rational(0)), K(Rational(f)), s);
  }

  const K& rational_part() const { return u_; }
  const K& surd_part() const { return v_; }
  long radicand() const { return d_; }

  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
  bool in_base_field() const { return v_.is_zero(); }

  Quad conj() const { return Quad(u_, -v_, d_); }
  K norm() const { return u_ * u_ - K(Rational(d_)) * v_ * v_; }

  Quad inv() const {
    if (is_zero()) throw DivisionByZero();
    K n = norm();
    return Quad(u_ / n, -v_ / n, d_);
  }

  friend Quad operator+(const Quad& a, const Quad& b) {
    long d = merge(a, b);
    return Quad(a.u_ + b.u_, a.v_ + b.v_, d);
  }
  friend Quad operator-(const Quad& a, const Quad& b) {
    long d = merge(a, b);
    return Quad(a.u_ - b.u_, a.v_ - b.v_, d);
  }
  friend Quad operator*(const Quad& a, const Quad& b) {
    long d = merge(a, b);
    return Quad(a.u_ * b.u_ + K(Rational(d)) * a.v_ * b.v_, a.u_ * b.v_ + a.v_ * b.u_, d);
  }
  friend Quad operator/(const Quad& a, const Quad& b) { return a * b.inv(); }
  friend Quad operator-(const Quad& a) { return Quad(-a.u_, -a.v_, a.d_); }
  Quad& operator+=(const Quad& o) { return *this = *this + o; }
  Quad& operator-=(const Quad& o) { return *this = *this - o; }
  Quad& operator*=(const Quad& o) { return *this = *this * o; }
  Quad& operator/=(const Quad& o) { return *this = *this / o; }

  friend bool operator==(const Quad& a, const Quad& b) {
    return a.d_ == b.d_ && a.u_ == b.u_ && a.v_ == b.v_;
  }

  std::string to_string() const {
    using nilhodge::to_string;
    if (v_.is_zero()) return to_string(u_);
    std::string surd = "sqrt(" + std::to_string(d_) + ")";
    std::string vs = v_ == K(Rational(1)) ? surd
                     : v_ == K(Rational(-1)) ? "-" + surd
                                             : "(" + to_string(v_) + ")*" + surd;
    if (u_.is_zero()) return vs;
    return to_string(u_) + (vs[0] == '-' ? " - " + vs.substr(1) : " + " + vs);
  }

 private:
  static long merge(const Quad& a, const Quad& b) {
    if (a.d_ == 0) return b.d_;
    if (b.d_ == 0 || a.d_ == b.d_) return a.d_;
    throw RadicandMismatch(a.d_, b.d_);
  }
  void normalize() {
    if (v_.is_zero()) d_ = 0;
  }

  K u_;
  K v_;
  long d_ = 0;
};

template <class K>
std::string to_string(const Quad<K>& x) { return x.to_string(); }

template <class K>
RationalCoords rational_coordinates(const Quad<K>& x) {
  RationalCoords out = rational_coordinates(x.rational_part());
  if (!x.surd_part().is_zero()) {
    std::string s = "sqrt(" + std::to_string(x.radicand()) + ")";
    for (const auto& [key, c] : rational_coordinates(x.surd_part()))
      out[key == "1" ? s : s + "*" + key] = c;
  }
  return out;
}

/// Sign of u + v sqrt(d) as a real number (d > 0), given an ordered base.
template <class K>
int field_sign(const Quad<K>& x) {
  int su = field_sign(x.rational_part());
  int sv = field_sign(x.surd_part());
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  if (x.radicand() < 0) throw std::domain_error("sign of a non-real quadratic number");
  // opposite signs: compare u^2 with d v^2
  int c = field_sign(x.norm());
  return c > 0 ? su : sv;
}

}  // namespace nilhodge
