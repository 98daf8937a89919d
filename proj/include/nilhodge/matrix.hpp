#pragma once

#include "nilhodge/field.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilhodge {

template <class K>
using Vec = std::vector<K>;

/// Dense row-major matrix over an exact field.
template <ExactField K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, zero<K>()) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<K> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw std::invalid_argument("matrix entry count mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one<K>();
    return m;
  }
  static Matrix from_rows(std::size_t cols, const std::vector<Vec<K>>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_columns(std::size_t rows, const std::vector<Vec<K>>& cols) {
    return from_rows(rows, cols).transpose();
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec<K> row(std::size_t i) const { return Vec<K>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
  Vec<K> column(std::size_t j) const {
    Vec<K> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const K& x) { return x.is_zero(); });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) c(i, j) = c(i, j) + x * b(k, j);
      }
    return c;
  }
  friend Vec<K> operator*(const Matrix& a, const Vec<K>& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
    Vec<K> out(a.rows_, zero<K>());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] = out[i] + a(i, j) * v[j];
    return out;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
    Matrix c = a;
    for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] = c.a_[k] + b.a_[k];
    return c;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.a_) x = -x;
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }
  friend Matrix operator*(const K& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.a_) x = s * x;
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  /// Block-diagonal and concatenation helpers.
  Matrix hstack(const Matrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hstack row mismatch");
    Matrix c(rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) c(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) c(i, cols_ + j) = o(i, j);
    }
    return c;
  }
  Matrix vstack(const Matrix& o) const { return transpose().hstack(o.transpose()).transpose(); }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << nilhodge::to_string((*this)(i, j));
    }
    os << "]";
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> a_;
};

template <ExactField K>
struct RrefResult {
  Matrix<K> rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form. Pivot choice: largest pivot_weight in the
/// column, ties to the topmost row.
template <ExactField K>
RrefResult<K> rref(Matrix<K> m) {
  RrefResult<K> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t best = m.rows();
    Integer best_w = 0;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      Integer w = pivot_weight(m(i, c));
      if (best == m.rows() || w > best_w) {
        best = i;
        best_w = w;
      }
    }
    if (best == m.rows()) continue;
    if (best != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(best, j));
    K inv = m(r, c).inv();
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      K f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) = m(i, j) - f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.rref = std::move(m);
  return out;
}

template <ExactField K>
std::size_t rank(const Matrix<K>& m) { return rref(m).rank; }

/// Basis of the null space {x : m x = 0}; one vector per free column.
template <ExactField K>
std::vector<Vec<K>> kernel_basis(const Matrix<K>& m) {
  auto rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<Vec<K>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec<K> v(m.cols(), zero<K>());
    v[f] = one<K>();
    for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = -rr.rref(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

/// A particular solution of m x = b, if any.
template <ExactField K>
std::optional<Vec<K>> solve(const Matrix<K>& m, const Vec<K>& b) {
  Matrix<K> bm(b.size(), 1, b);
  auto rr = rref(m.hstack(bm));
  if (!rr.pivots.empty() && rr.pivots.back() == m.cols()) return std::nullopt;
  Vec<K> x(m.cols(), zero<K>());
  for (std::size_t i = 0; i < rr.rank; ++i) x[rr.pivots[i]] = rr.rref(i, m.cols());
  return x;
}

/// Inverse of a square matrix; throws on singular input.
template <ExactField K>
Matrix<K> inverse(const Matrix<K>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  std::size_t n = m.rows();
  auto rr = rref(m.hstack(Matrix<K>::identity(n)));
  if (rr.rank < n || rr.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
  Matrix<K> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr.rref(i, n + j);
  return inv;
}

template <ExactField K>
Vec<K> axpy(const K& s, const Vec<K>& x, Vec<K> y) {
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i] = y[i] + s * x[i];
  return y;
}

template <ExactField K>
bool is_zero_vector(const Vec<K>& v) {
  return std::all_of(v.begin(), v.end(), [](const K& x) { return x.is_zero(); });
}

template <ExactField K>
std::string to_string(const Vec<K>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + nilhodge::to_string(v[i]);
  return s + ")";
}

/// Coefficient-wise embedding into a larger field.
template <ExactField L, ExactField K>
Matrix<L> lift(const Matrix<K>& m) {
  Matrix<L> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = L(m(i, j));
  return out;
}
template <ExactField L, ExactField K>
Vec<L> lift(const Vec<K>& v) {
  Vec<L> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(L(x));
  return out;
}

}  // namespace nilhodge
