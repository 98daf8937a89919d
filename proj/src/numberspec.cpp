#include "nilhodge/numberspec.hpp"

#include <algorithm>
#include <cmath>

namespace nilhodge {

namespace {

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Integer pow2(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

Rational pow10_signed(const Integer& e) {
  if (!e.fits_slong_p()) throw PrecisionUnavailable("decimal exponent too large to materialize");
  long k = e.get_si();
  if (k >= 0) return Rational(pow10(static_cast<unsigned long>(k)));
  return Rational(Integer(1), pow10(static_cast<unsigned long>(-k)));
}

long decimal_size(const Integer& n) {
  return static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 10));
}

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// log10(2) lies strictly between these
const Rational kLog10TwoLo(Integer(30102999), Integer(100000000));
const Rational kLog10TwoHi(Integer(30103000), Integer(100000000));

}  // namespace

Interval operator*(const Interval& a, const Interval& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo.sign() <= 0 && b.hi.sign() >= 0) throw DivisionByZero();
  return a * Interval{b.hi.inv(), b.lo.inv()};
}

Rational ExponentPair::materialize() const { return mantissa * pow10_signed(exponent); }

Interval ExponentPair::ln() const {
  return ln_enclosure(mantissa) + Interval::point(Rational(exponent)) * ln10_enclosure();
}

int compare(const ExponentPair& a, const ExponentPair& b) {
  long la = decimal_size(a.mantissa.numerator()) - decimal_size(a.mantissa.denominator());
  long lb = decimal_size(b.mantissa.numerator()) - decimal_size(b.mantissa.denominator());
  // floor(log10 m) lies in [L - 2, L + 1]
  Integer lo_a = a.exponent + (la - 2), hi_a = a.exponent + (la + 1);
  Integer lo_b = b.exponent + (lb - 2), hi_b = b.exponent + (lb + 1);
  if (lo_a > hi_b + 1) return 1;
  if (lo_b > hi_a + 1) return -1;
  Integer diff = a.exponent - b.exponent;
  Rational lhs = a.mantissa, rhs = b.mantissa;
  if (diff >= 0) {
    lhs *= pow10_signed(diff);
  } else {
    rhs *= pow10_signed(-diff);
  }
  auto c = lhs <=> rhs;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

Integer decimal_exponent_upper_bound_pow2(const Integer& power) {
  const Rational& l = power < 0 ? kLog10TwoLo : kLog10TwoHi;
  return (Rational(power) * l).ceil();
}

Interval ln2_enclosure() {
  // ln 2 = 0.69314718055994530941...
  return {Rational::parse("0.6931471805599453"), Rational::parse("0.6931471805599454")};
}

Interval ln10_enclosure() {
  // ln 10 = 2.30258509299404568401...
  return {Rational::parse("2.302585092994045"), Rational::parse("2.302585092994046")};
}

Interval ln_enclosure(const Integer& n) {
  if (n <= 0) throw std::domain_error("logarithm of a non-positive number");
  long exp2 = 0;
  double d = mpz_get_d_2exp(&exp2, n.get_mpz_t());  // n = d * 2^exp2, d in [0.5, 1)
  double l = std::log(d);
  const double margin = 1e-14;
  Interval frac{Rational(Integer(static_cast<long>(std::floor((l - margin) * 1e12))), Integer(1000000000000L)),
                Rational(Integer(static_cast<long>(std::ceil((l + margin) * 1e12))), Integer(1000000000000L))};
  return frac + Interval::point(Rational(exp2)) * ln2_enclosure();
}

Interval ln_enclosure(const Rational& x) {
  if (x.sign() <= 0) throw std::domain_error("logarithm of a non-positive number");
  return ln_enclosure(x.numerator()) - ln_enclosure(x.denominator());
}

NumberSpec NumberSpec::surd(const QuadraticSurd& s) {
  if (s.A == 0) throw std::invalid_argument("quadratic surd with leading coefficient 0");
  if (s.sqrt_sign != 1 && s.sqrt_sign != -1) throw std::invalid_argument("root selector must be +1 or -1");
  Integer disc = s.discriminant();
  if (disc < 0) throw std::invalid_argument("quadratic surd with negative discriminant is not real");
  if (mpz_perfect_square_p(disc.get_mpz_t()))
    throw std::invalid_argument("quadratic surd with square discriminant " + disc.get_str() + " is rational");
  return NumberSpec(Variant(s));
}

std::string NumberSpec::describe() const {
  if (const auto* r = std::get_if<Rational>(&v_)) return r->to_string();
  if (const auto* s = std::get_if<QuadraticSurd>(&v_))
    return "root of " + s->A.get_str() + "x^2 + " + s->B.get_str() + "x + " + s->C.get_str() +
           (s->sqrt_sign > 0 ? " (+sqrt)" : " (-sqrt)");
  return "convergents:" + std::get<ConvergentSeries>(v_).name;
}

std::vector<std::pair<Integer, Integer>> surd_convergents(const QuadraticSurd& s, std::size_t count) {
  // x = (P + sqrt D) / Q with Q | D - P^2; for the negative root use -x.
  Integer P = s.sqrt_sign > 0 ? Integer(-s.B) : Integer(s.B);
  Integer D = s.discriminant();
  Integer Q = 2 * s.A;
  Integer root = isqrt(D);
  std::vector<std::pair<Integer, Integer>> out;
  Integer h_prev = 1, h = 0, k_prev = 0, k = 1;  // h_{-1}/k_{-1} = 1/0, h_{-2}/k_{-2} = 0/1
  for (std::size_t i = 0; i < count; ++i) {
    Integer a;
    if (Q > 0) {
      mpz_fdiv_q(a.get_mpz_t(), Integer(P + root).get_mpz_t(), Q.get_mpz_t());
    } else {
      Integer negQ = -Q;
      Integer c;
      mpz_fdiv_q(c.get_mpz_t(), Integer(P + root).get_mpz_t(), negQ.get_mpz_t());
      a = -(c + 1);
    }
    Integer h_new = a * h_prev + h, k_new = a * k_prev + k;
    h = h_prev;
    k = k_prev;
    h_prev = h_new;
    k_prev = k_new;
    out.emplace_back(h_prev, k_prev);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  if (s.sqrt_sign < 0)
    for (auto& [p, q] : out) p = -p;
  return out;
}

Interval enclosure(const NumberSpec& x, const Rational& width) {
  if (width.sign() <= 0) throw std::invalid_argument("enclosure width must be positive");
  if (const auto* r = std::get_if<Rational>(&x.value())) return Interval::point(*r);
  if (const auto* s = std::get_if<QuadraticSurd>(&x.value())) {
    std::size_t count = 8;
    while (true) {
      auto conv = surd_convergents(*s, count);
      for (std::size_t i = 0; i + 1 < conv.size(); ++i) {
        Rational a(conv[i].first, conv[i].second), b(conv[i + 1].first, conv[i + 1].second);
        if ((a - b).abs() <= width) return a < b ? Interval{a, b} : Interval{b, a};
      }
      count *= 2;
    }
  }
  const auto& series = std::get<ConvergentSeries>(x.value());
  // cap: 10^-c <= width / 100
  long c = 0;
  while (pow10_signed(Integer(-c)) > width / Rational(100)) ++c;
  ExponentPair cap{Rational(1), Integer(-c)};
  ExponentPair half_width{width / Rational(2), Integer(0)};
  std::optional<Interval> acc;
  for (std::size_t k = 1; k <= series.max_index; ++k) {
    Convergent cv = series.generator(k);
    const ExponentPair& eps = compare(cv.error, cap) > 0 ? cv.error : cap;
    Rational e = eps.materialize();
    Rational centre(cv.p, cv.q);
    Interval ball{centre - e, centre + e};
    if (!acc) {
      acc = ball;
    } else {
      acc->lo = std::max(acc->lo, ball.lo);
      acc->hi = std::min(acc->hi, ball.hi);
    }
    if (compare(eps, half_width) <= 0) return *acc;
  }
  throw PrecisionUnavailable("precision unavailable: convergent source '" + series.name +
                             "' exhausted before width " + width.to_string());
}

ConvergentSeries liouville_series() {
  ConvergentSeries s;
  s.name = "liouville";
  s.max_index = 3;
  s.generator = [](std::size_t k) {
    auto fact = [](std::size_t n) {
      unsigned long f = 1;
      for (std::size_t i = 2; i <= n; ++i) f *= i;
      return f;
    };
    Integer q = pow10(static_cast<unsigned long>(std::pow(10.0, static_cast<double>(fact(k)))));
    Integer p = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      Integer qj = pow10(static_cast<unsigned long>(std::pow(10.0, static_cast<double>(fact(j)))));
      p += q / qj;
    }
    // tail <= 2 * 10^(-10^((k+1)!))
    Integer e;
    mpz_ui_pow_ui(e.get_mpz_t(), 10, fact(k + 1));
    return Convergent{p, q, ExponentPair{Rational(2), Integer(-e)}};
  };
  return s;
}

namespace {

// x = sum_j 2^(-E_j) with strictly increasing exponents E_j;
// k-th convergent is the partial sum, error <= 2^(1 - E_{k+1}).
Convergent power_of_two_partial_sum(const std::vector<Integer>& exps, std::size_t k) {
  Integer q = pow2(exps[k - 1].get_ui());
  Integer p = 0;
  for (std::size_t j = 1; j <= k; ++j) p += q >> static_cast<mp_bitcnt_t>(exps[j - 1].get_ui());
  Integer e = decimal_exponent_upper_bound_pow2(Integer(1 - exps[k]));
  return Convergent{p, q, ExponentPair{Rational(1), e}};
}

}  // namespace

ConvergentSeries self_power_series() {
  ConvergentSeries s;
  s.name = "self-power";
  s.max_index = 4;
  s.generator = [](std::size_t k) {
    // E_1 = 1, E_{j+1} = E_j * 2^{E_j}
    std::vector<Integer> exps{Integer(1)};
    while (exps.size() < k + 1) {
      const Integer& last = exps.back();
      exps.push_back(last * pow2(last.get_ui()));
    }
    return power_of_two_partial_sum(exps, k);
  };
  return s;
}

ConvergentSeries double_exponential_series() {
  ConvergentSeries s;
  s.name = "double-exponential";
  s.max_index = 4;
  s.generator = [](std::size_t k) {
    std::vector<Integer> exps;
    for (std::size_t j = 1; j <= k + 1; ++j) exps.push_back(pow2(pow2(j).get_ui()));
    return power_of_two_partial_sum(exps, k);
  };
  return s;
}

ConvergentSeries power_tower_series() {
  ConvergentSeries s;
  s.name = "power-tower";
  s.max_index = 4;
  s.generator = [](std::size_t k) {
    // E_1 = 1, E_{j+1} = 2^{E_j}
    std::vector<Integer> exps{Integer(1)};
    while (exps.size() < k + 1) exps.push_back(pow2(exps.back().get_ui()));
    return power_of_two_partial_sum(exps, k);
  };
  return s;
}

std::optional<ConvergentSeries> convergent_series_by_name(const std::string& name) {
  if (name == "liouville") return liouville_series();
  if (name == "self-power") return self_power_series();
  if (name == "double-exponential") return double_exponential_series();
  if (name == "power-tower") return power_tower_series();
  return std::nullopt;
}

}  // namespace nilhodge
