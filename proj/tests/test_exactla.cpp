#include "nilhodge/lattice.hpp"
#include "nilhodge/numberspec.hpp"
#include "nilhodge/subspace.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nilhodge;

namespace {

Rational rand_q(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-12, 12), den(1, 6);
  return Rational(Integer(num(rng)), Integer(den(rng)));
}

template <class K>
K random_element(std::mt19937& rng);

template <>
Rational random_element<Rational>(std::mt19937& rng) { return rand_q(rng); }
template <>
QSqrt random_element<QSqrt>(std::mt19937& rng) { return QSqrt(rand_q(rng), rand_q(rng), 2); }
template <>
Complex<Rational> random_element<Complex<Rational>>(std::mt19937& rng) {
  return Complex<Rational>(rand_q(rng), rand_q(rng));
}
template <>
Tower random_element<Tower>(std::mt19937& rng) {
  Poly<QSqrt> num(std::vector<QSqrt>{random_element<QSqrt>(rng), random_element<QSqrt>(rng)});
  Poly<QSqrt> den(std::vector<QSqrt>{random_element<QSqrt>(rng), QSqrt(Rational(1))});
  return Tower(num, den);
}
template <>
Complex<Tower> random_element<Complex<Tower>>(std::mt19937& rng) {
  return Complex<Tower>(random_element<Tower>(rng), random_element<Tower>(rng));
}

template <class K>
class FieldAxioms : public ::testing::Test {};
using FieldTypes = ::testing::Types<Rational, QSqrt, Complex<Rational>, Tower, Complex<Tower>>;
TYPED_TEST_SUITE(FieldAxioms, FieldTypes);

TYPED_TEST(FieldAxioms, AssociativityInverseDistributivity) {
  using K = TypeParam;
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    K x = random_element<K>(rng), y = random_element<K>(rng), z = random_element<K>(rng);
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x + y, y + x);
    EXPECT_EQ(x * y, y * x);
    EXPECT_TRUE((x - x).is_zero());
    if (!x.is_zero()) {
      EXPECT_EQ(x * x.inv(), one<K>());
    }
  }
}

TYPED_TEST(FieldAxioms, RationalEmbeddingIsHomomorphism) {
  using K = TypeParam;
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    Rational p = rand_q(rng), q = rand_q(rng);
    EXPECT_EQ(K(p + q), K(p) + K(q));
    EXPECT_EQ(K(p * q), K(p) * K(q));
    auto back = as_rational(K(p));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, p);
  }
}

TEST(Fields, DivisionByZeroRaises) {
  EXPECT_THROW(Rational(0).inv(), DivisionByZero);
  EXPECT_THROW(QSqrt().inv(), DivisionByZero);
  EXPECT_THROW(Tower().inv(), DivisionByZero);
}

TEST(Fields, RatFuncCanonicalForm) {
  Tower a = Tower::parameter();
  Tower x = (a * a - Tower(Rational(1))) / (a - Tower(Rational(1)));
  EXPECT_EQ(x, a + Tower(Rational(1)));
  EXPECT_EQ(x.denominator().degree(), 0);
}

TEST(Fields, SqrtTwoSquaresToTwo) {
  QSqrt s = QSqrt::sqrt(2);
  EXPECT_EQ(s * s, QSqrt(Rational(2)));
  EXPECT_EQ(QSqrt::sqrt(8), QSqrt(Rational(2)) * s);
  EXPECT_THROW(QSqrt::sqrt(2) + QSqrt::sqrt(3), RadicandMismatch);
}

TEST(Fields, RationalCoordinatesOfTowerElement) {
  Tower a = Tower::parameter();
  Tower x = Tower(QSqrt::sqrt(2)) * a + Tower(Rational(3));
  auto c = rational_coordinates(x);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.at("1"), Rational(3));
  EXPECT_EQ(c.at("sqrt(2)*a"), Rational(1));
}

TEST(Rref, Identity2x2HasRank2) { EXPECT_EQ(rank(Matrix<Rational>::identity(2)), 2u); }

TEST(Rref, Zero3x5HasRank0) { EXPECT_EQ(rank(Matrix<Rational>(3, 5)), 0u); }

TEST(Rref, RankOfTransposeAgreesAndMatchesOracle) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<std::size_t> dim(1, 12);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, std::min(r, c))(rng);
    Matrix<Rational> m = trial % 2 ? oracle::random_low_rank(rng, r, c, k) : oracle::random_rational_matrix(rng, r, c, 40);
    std::size_t rk = rank(m);
    EXPECT_EQ(rk, rank(m.transpose()));
    EXPECT_EQ(rk, oracle::bareiss_rank(m));
  }
}

TEST(Kernel, IdentityHasEmptyKernel) { EXPECT_TRUE(kernel_basis(Matrix<Rational>::identity(4)).empty()); }

TEST(Kernel, Zero2x3HasThreeBasisVectors) { EXPECT_EQ(kernel_basis(Matrix<Rational>(2, 3)).size(), 3u); }

TEST(Kernel, RankNullityAndAnnihilation) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + trial % 7, c = 1 + (trial * 5) % 9;
    Matrix<Rational> m = oracle::random_low_rank(rng, r, c, std::min(r, c) / 2 + 1);
    auto ker = kernel_basis(m);
    EXPECT_EQ(ker.size() + rank(m), c);
    for (const auto& v : ker) EXPECT_TRUE(is_zero_vector(m * v));
    if (!ker.empty()) {
      EXPECT_EQ(rank(Matrix<Rational>::from_rows(c, ker)), ker.size());
    }
  }
}

TEST(Subspace, IntersectionAndSumDimensions) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = oracle::random_low_rank(rng, 3, 6, 3), b = oracle::random_low_rank(rng, 4, 6, 4);
    Span<Rational> sa(6, {a.row(0), a.row(1), a.row(2)});
    Span<Rational> sb(6, {b.row(0), b.row(1), b.row(2), b.row(3)});
    EXPECT_EQ((sa + sb).dim() + sa.intersect(sb).dim(), sa.dim() + sb.dim());
    EXPECT_TRUE(sa.contains(sa.intersect(sb)));
    EXPECT_TRUE(sb.contains(sa.intersect(sb)));
  }
}

void expect_smith(const IntMatrix& m, const std::vector<long>& diag) {
  SmithForm s = smith_normal_form(m);
  EXPECT_EQ(s.U * m * s.V, s.D);
  EXPECT_EQ(abs(determinant(s.U)), 1);
  EXPECT_EQ(abs(determinant(s.V)), 1);
  auto d = s.diagonal();
  ASSERT_EQ(d.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) EXPECT_EQ(d[i], diag[i]) << "entry " << i;
}

TEST(Smith, Diag2And3GivesDiag1And6) { expect_smith(IntMatrix::from_rows({{2, 0}, {0, 3}}), {1, 6}); }

TEST(Smith, IdentityIsFixed) { expect_smith(IntMatrix::identity(3), {1, 1, 1}); }

TEST(Smith, TwoFourSixEight) { expect_smith(IntMatrix::from_rows({{2, 4}, {6, 8}}), {2, 4}); }

TEST(Smith, DiagonalMatchesMinorGcdOracle) {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> dim(1, 4), val(-6, 6), pct(0, 99);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (pct(rng) < 75) m(i, j) = val(rng);
    SmithForm s = smith_normal_form(m);
    ASSERT_EQ(s.U * m * s.V, s.D) << m.to_string();
    auto dd = oracle::determinantal_divisors(m);
    auto d = s.diagonal();
    Integer prod = 1;
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (k + 1 < d.size() && d[k + 1] != 0) {
        EXPECT_TRUE(mpz_divisible_p(d[k + 1].get_mpz_t(), d[k].get_mpz_t()));
      }
      prod *= d[k];
      EXPECT_EQ(prod, dd[k + 1]) << m.to_string();
    }
  }
}

TEST(Lattice, IntegerKernelIsSaturated) {
  // x + 2y + 3z = 0 has kernel lattice of determinant 1 in the saturated sense
  IntMatrix m = IntMatrix::from_rows({{2, 4, 6}});
  IntMatrix k = integer_kernel(m);
  ASSERT_EQ(k.cols(), 2u);
  EXPECT_EQ(m * k, IntMatrix(1, 2));
  // saturation: the 2x2 minors of the kernel basis have gcd 1
  auto dd = oracle::determinantal_divisors(k);
  EXPECT_EQ(dd[2], 1);
}

TEST(Lattice, IntegralPreimageOfHalves) {
  Matrix<Rational> c = Matrix<Rational>::from_rows(2, {{Rational(Integer(1), Integer(2)), Rational(0)}});
  IntMatrix b = integral_preimage(c);
  // {u : u_1/2 in Z} = 2Z x Z, index 2
  EXPECT_EQ(abs(determinant(b)), 2);
  for (std::size_t j = 0; j < 2; ++j) EXPECT_TRUE(mpz_even_p(b(0, j).get_mpz_t()));
}

TEST(Enclosure, ExactRationalIsPoint) {
  Interval iv = enclosure(NumberSpec::exact(Rational(Integer(1), Integer(3))), Rational(Integer(1), Integer(100)));
  EXPECT_EQ(iv.lo, Rational(Integer(1), Integer(3)));
  EXPECT_EQ(iv.hi, Rational(Integer(1), Integer(3)));
}

TEST(Enclosure, SqrtTwoFromConvergents) {
  auto s = NumberSpec::surd({1, 0, -2, 1});
  Rational w(Integer(1), Integer(100));
  Interval iv = enclosure(s, w);
  EXPECT_LE(iv.width(), w);
  // contains sqrt 2: lo^2 <= 2 <= hi^2
  EXPECT_LE(iv.lo * iv.lo, Rational(2));
  EXPECT_GE(iv.hi * iv.hi, Rational(2));
  // consistent with the convergent 99/70 and its error bound 1/4900
  Rational c(Integer(99), Integer(70)), e(Integer(1), Integer(4900));
  EXPECT_LE(c - e, iv.hi);
  EXPECT_GE(c + e, iv.lo);
}

TEST(Enclosure, SurdRejectsRationalRoots) {
  EXPECT_THROW(NumberSpec::surd({1, 0, -4, 1}), std::invalid_argument);
  EXPECT_THROW(NumberSpec::surd({1, 0, 2, 1}), std::invalid_argument);
}

TEST(Enclosure, LiouvilleSeriesAtWidth1e50) {
  auto x = NumberSpec::series(liouville_series());
  Rational w(Integer(1), Integer("1" + std::string(50, '0')));
  Interval iv = enclosure(x, w);
  EXPECT_LE(iv.width(), w);
  // partial sum through k = 2
  Convergent c2 = liouville_series().generator(2);
  EXPECT_TRUE(iv.contains(Rational(c2.p, c2.q)));
  EXPECT_EQ(c2.error.exponent, Integer(-1000000));
  EXPECT_EQ(c2.error.mantissa, Rational(2));
}

TEST(Enclosure, PrecisionUnavailableWhenSeriesExhausted) {
  ConvergentSeries short_series = liouville_series();
  short_series.max_index = 1;
  EXPECT_THROW(enclosure(NumberSpec::series(short_series), Rational(Integer(1), Integer("1" + std::string(200, '0')))),
               PrecisionUnavailable);
}

TEST(Enclosure, SmallerWidthsGiveNestedIntervals) {
  std::vector<NumberSpec> xs{NumberSpec::surd({1, 0, -2, 1}), NumberSpec::surd({3, -5, -7, -1}),
                             NumberSpec::series(liouville_series()), NumberSpec::series(self_power_series())};
  for (const auto& x : xs) {
    std::optional<Interval> prev;
    for (int e = 1; e <= 40; e += 3) {
      Interval iv = enclosure(x, Rational(Integer(1), Integer("1" + std::string(e, '0'))));
      if (prev) {
        EXPECT_TRUE(prev->contains(iv)) << x.describe() << " e=" << e;
      }
      prev = iv;
    }
  }
}

TEST(ExponentPair, CompareHugeMagnitudesSymbolically) {
  ExponentPair a{Rational(2), Integer("-1000000000000000000000000")};
  ExponentPair b{Rational(1), Integer(-50)};
  EXPECT_LT(compare(a, b), 0);
  EXPECT_GT(compare(b, a), 0);
  EXPECT_EQ(compare(b, b), 0);
  Interval l = a.ln();
  EXPECT_TRUE(l.negative());
}

}  // namespace
