#include "nilhodge/rational.hpp"

#include <cctype>

namespace nilhodge {

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DivisionByZero();
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (neg || (!whole.empty() && whole[0] == '+')) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    for (char c : whole + frac)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("malformed decimal literal '" + s + "'");
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Integer num(whole + frac, 10);
    Rational r(num, den);
    return neg ? -r : r;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
              (i == 0 && (c == '-' || c == '+'));
    if (!ok) throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
  if (s[0] == '+') s = s.substr(1);
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s, 10));
  std::string n = s.substr(0, slash), d = s.substr(slash + 1);
  if (n.empty() || n == "-" || d.empty() || d.find('/') != std::string::npos)
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  return Rational(Integer(n, 10), Integer(d, 10));
}

Rational Rational::inv() const {
  if (is_zero()) throw DivisionByZero();
  return Rational(mpq_class(1) / q_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  q_ /= o.q_;
  return *this;
}

Integer Rational::floor() const {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Integer Rational::ceil() const {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return pow(base.inv(), -exponent);
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.numerator().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.denominator().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(n, d);
}

}  // namespace nilhodge
