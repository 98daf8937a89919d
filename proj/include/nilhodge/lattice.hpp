#pragma once

#include "nilhodge/matrix.hpp"
#include "nilhodge/rational.hpp"

#include <string>
#include <vector>

namespace nilhodge {

/// Dense integer matrix used by the lattice algorithms.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::vector<Integer> column(std::size_t j) const;

  IntMatrix transpose() const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> a_;
};

/// Determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix U;  ///< rows x rows, unimodular
  IntMatrix D;  ///< rows x cols, diagonal, d_1 | d_2 | ..., non-negative
  IntMatrix V;  ///< cols x cols, unimodular
  std::size_t rank = 0;
  std::vector<Integer> diagonal() const;
};

/// U m V = D with D in Smith normal form.
SmithForm smith_normal_form(const IntMatrix& m);

/// Z-basis (as columns) of {x in Z^cols : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// Integer kernel of a rational matrix (rows are cleared of denominators).
IntMatrix integer_kernel(const Matrix<Rational>& m);

/// Z-basis (as columns) of {u in Z^k : c u in Z^r} for a rational r x k matrix
/// c. The lattice always has full rank k.
IntMatrix integral_preimage(const Matrix<Rational>& c);

/// Integer row scaling of a rational matrix: returns the integer matrix and
/// the common denominator d with m = result / d.
std::pair<IntMatrix, Integer> clear_denominators(const Matrix<Rational>& m);

}  // namespace nilhodge
