#include "nilhodge/lattice.hpp"

#include <sstream>
#include <utility>

namespace nilhodge {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i].at(j);
  return m;
}

std::vector<Integer> IntMatrix::column(std::size_t j) const {
  std::vector<Integer> v;
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("integer matrix product dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
  }
  os << "]";
  return os.str();
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row_dst += f * row_src
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}
void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm s{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols()), 0};
  IntMatrix& a = s.D;
  std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    while (true) {
      std::size_t bi = m.rows(), bj = m.cols();
      for (std::size_t i = t; i < m.rows(); ++i)
        for (std::size_t j = t; j < m.cols(); ++j)
          if (a(i, j) != 0 && (bi == m.rows() || abs(a(i, j)) < abs(a(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m.rows()) {
        s.rank = t;
        return s;
      }
      swap_rows(a, t, bi);
      swap_rows(s.U, t, bi);
      swap_cols(a, t, bj);
      swap_cols(s.V, t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m.rows(); ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        add_row(a, i, t, -q);
        add_row(s.U, i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < m.cols(); ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        add_col(a, j, t, -q);
        add_col(s.V, j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // the pivot must divide the whole remaining block
      bool divides = true;
      for (std::size_t i = t + 1; i < m.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < m.cols(); ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            add_row(a, t, i, 1);
            add_row(s.U, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < m.cols(); ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < m.rows(); ++j) s.U(t, j) = -s.U(t, j);
    }
  }
  s.rank = 0;
  for (std::size_t t = 0; t < limit; ++t)
    if (a(t, t) != 0) s.rank = t + 1;
  return s;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  IntMatrix k(m.cols(), m.cols() - s.rank);
  for (std::size_t j = s.rank; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) k(i, j - s.rank) = s.V(i, j);
  return k;
}

std::pair<IntMatrix, Integer> clear_denominators(const Matrix<Rational>& m) {
  Integer d = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).denominator().get_mpz_t());
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational v = m(i, j) * Rational(d);
      out(i, j) = v.numerator();
    }
  return {out, d};
}

IntMatrix integer_kernel(const Matrix<Rational>& m) {
  IntMatrix a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer d = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).denominator().get_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = (m(i, j) * Rational(d)).numerator();
  }
  return integer_kernel(a);
}

IntMatrix integral_preimage(const Matrix<Rational>& c) {
  auto [n, d] = clear_denominators(c);
  SmithForm s = smith_normal_form(n);
  IntMatrix basis = s.V;
  for (std::size_t i = 0; i < s.rank; ++i) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), s.D(i, i).get_mpz_t());
    Integer scale = d / g;
    for (std::size_t r = 0; r < basis.rows(); ++r) basis(r, i) *= scale;
  }
  return basis;
}

}  // namespace nilhodge
