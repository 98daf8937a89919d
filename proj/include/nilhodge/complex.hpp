#pragma once

#include "nilhodge/rational.hpp"

#include <concepts>
#include <string>

namespace nilhodge {

/// The pair field K(i) over a real field K.
template <class K>
class Complex {
 public:
  Complex() : re_(Rational(0)), im_(Rational(0)) {}
  Complex(const K& re) : re_(re), im_(Rational(0)) {}  // NOLINT(google-explicit-constructor)
  template <class S>
    requires(!std::same_as<S, K> && !std::same_as<S, Complex> && std::constructible_from<K, const S&>)
  explicit Complex(const S& s) : Complex(K(s)) {}
  Complex(const K& re, const K& im) : re_(re), im_(im) {}

  static Complex i() { return Complex(K(Rational(0)), K(Rational(1))); }

  const K& re() const { return re_; }
  const K& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  Complex conj() const { return Complex(re_, -im_); }
  K norm() const { return re_ * re_ + im_ * im_; }

  Complex inv() const {
    if (is_zero()) throw DivisionByZero();
    K n = norm();
    return Complex(re_ / n, -im_ / n);
  }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    if (b.im_.is_zero()) return Complex(a.re_ * b.re_, a.im_ * b.re_);
    if (a.im_.is_zero()) return Complex(a.re_ * b.re_, a.re_ * b.im_);
    return Complex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    if (b.im_.is_zero()) return Complex(a.re_ / b.re_, a.im_ / b.re_);
    return a * b.inv();
  }
  friend Complex operator-(const Complex& a) { return Complex(-a.re_, -a.im_); }
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator/=(const Complex& o) { return *this = *this / o; }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string to_string() const {
    using nilhodge::to_string;
    if (im_.is_zero()) return to_string(re_);
    std::string is = to_string(im_);
    bool compound = is.find(' ') != std::string::npos;
    std::string imag = im_ == K(Rational(1))    ? "i"
                       : im_ == K(Rational(-1)) ? "-i"
                                                : (compound ? "(" + is + ")" : is) + "*i";
    if (re_.is_zero()) return imag;
    std::string rs = to_string(re_);
    return rs + (imag[0] == '-' ? " - " + imag.substr(1) : " + " + imag);
  }

 private:
  K re_;
  K im_;
};

template <class K>
std::string to_string(const Complex<K>& x) { return x.to_string(); }

template <class K>
RationalCoords rational_coordinates(const Complex<K>& x) {
  RationalCoords out = rational_coordinates(x.re());
  for (const auto& [key, c] : rational_coordinates(x.im())) out[key == "1" ? "i" : "i*" + key] = c;
  return out;
}

template <class K>
Complex<K> conj(const Complex<K>& x) { return x.conj(); }

}  // namespace nilhodge
