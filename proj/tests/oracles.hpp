#pragma once

// Independent reference routines used only by the tests. They deliberately
// share no code with the library's elimination or lattice algorithms.

#include "nilhodge/lattice.hpp"
#include "nilhodge/matrix.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using nilhodge::Integer;
using nilhodge::Rational;

/// Rank of an integer matrix by fraction-free (Bareiss) elimination with
/// first-non-zero pivoting.
inline std::size_t bareiss_rank(std::vector<std::vector<Integer>> a) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = a[i][j] * a[r][c] - a[i][c] * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

/// Rank of a rational matrix: scale each row to integers, then Bareiss.
inline std::size_t bareiss_rank(const nilhodge::Matrix<Rational>& m) {
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer d = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Integer den = m(i, j).denominator();
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = (m(i, j) * Rational(d)).numerator();
  }
  return bareiss_rank(std::move(a));
}

/// Rank over K(i) of a complex matrix whose real and imaginary parts are
/// rational: rank_C(A + iB) = rank_Q([[A, -B], [B, A]]) / 2.
template <class C>
std::size_t complex_rank(const nilhodge::Matrix<C>& m) {
  nilhodge::Matrix<Rational> big(2 * m.rows(), 2 * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational re = *nilhodge::as_rational(m(i, j).re());
      Rational im = *nilhodge::as_rational(m(i, j).im());
      big(i, j) = re;
      big(i, m.cols() + j) = -im;
      big(m.rows() + i, j) = im;
      big(m.rows() + i, m.cols() + j) = re;
    }
  return bareiss_rank(big) / 2;
}

inline Integer det_small(const std::vector<std::vector<Integer>>& a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Integer s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    Integer t = a[0][j] * det_small(minor);
    s += (j % 2 == 0) ? t : Integer(-t);
  }
  return s;
}

/// Determinantal divisors: D_k = gcd of all k x k minors (D_0 = 1).
inline std::vector<Integer> determinantal_divisors(const nilhodge::IntMatrix& m) {
  std::size_t r = m.rows(), c = m.cols();
  std::vector<Integer> out{Integer(1)};
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    Integer g = 0;
    std::vector<std::size_t> rs(k), cs(k);
    std::function<void(std::size_t, std::size_t)> pick_rows;
    std::function<void(std::size_t, std::size_t)> pick_cols;
    pick_cols = [&](std::size_t pos, std::size_t start) {
      if (pos == k) {
        std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub[a][b] = m(rs[a], cs[b]);
        Integer d = det_small(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        return;
      }
      for (std::size_t j = start; j < c; ++j) {
        cs[pos] = j;
        pick_cols(pos + 1, j + 1);
      }
    };
    pick_rows = [&](std::size_t pos, std::size_t start) {
      if (pos == k) {
        pick_cols(0, 0);
        return;
      }
      for (std::size_t i = start; i < r; ++i) {
        rs[pos] = i;
        pick_rows(pos + 1, i + 1);
      }
    };
    pick_rows(0, 0);
    out.push_back(g);
  }
  return out;
}

inline nilhodge::Matrix<Rational> random_rational_matrix(std::mt19937& rng, std::size_t r, std::size_t c,
                                                         int density_percent = 70) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4), pct(0, 99);
  nilhodge::Matrix<Rational> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (pct(rng) < density_percent) m(i, j) = Rational(Integer(num(rng)), Integer(den(rng)));
  return m;
}

/// Low-rank random matrix: product of r x k and k x c random factors.
inline nilhodge::Matrix<Rational> random_low_rank(std::mt19937& rng, std::size_t r, std::size_t c, std::size_t k) {
  return random_rational_matrix(rng, r, k, 100) * random_rational_matrix(rng, k, c, 100);
}

}  // namespace oracle
