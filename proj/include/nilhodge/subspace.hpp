#pragma once

#include "nilhodge/matrix.hpp"

#include <vector>

namespace nilhodge {

/// Linear subspace of K^n held in canonical form: the non-zero rows of the
/// reduced row-echelon form of any spanning set. Equal subspaces therefore
/// compare equal.
template <ExactField K>
class Span {
 public:
  Span() = default;
  explicit Span(std::size_t ambient) : n_(ambient) {}
  Span(std::size_t ambient, const std::vector<Vec<K>>& vectors) : n_(ambient) {
    if (vectors.empty()) return;
    auto rr = rref(Matrix<K>::from_rows(n_, vectors));
    for (std::size_t i = 0; i < rr.rank; ++i) basis_.push_back(rr.rref.row(i));
    pivots_ = rr.pivots;
  }

  static Span whole(std::size_t n) {
    std::vector<Vec<K>> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back(unit(n, i));
    return Span(n, e);
  }
  static Vec<K> unit(std::size_t n, std::size_t i) {
    Vec<K> v(n, zero<K>());
    v[i] = one<K>();
    return v;
  }

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec<K>>& basis() const { return basis_; }
  bool is_zero() const { return basis_.empty(); }

  /// Coordinates of v in the canonical basis, or nullopt when v is outside.
  std::optional<Vec<K>> coordinates(const Vec<K>& v) const {
    Vec<K> c;
    Vec<K> rest = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      K x = rest[pivots_[i]];
      c.push_back(x);
      if (!x.is_zero()) rest = axpy(-x, basis_[i], rest);
    }
    if (!is_zero_vector(rest)) return std::nullopt;
    return c;
  }
  bool contains(const Vec<K>& v) const { return coordinates(v).has_value(); }
  bool contains(const Span& o) const {
    return std::all_of(o.basis_.begin(), o.basis_.end(), [&](const Vec<K>& v) { return contains(v); });
  }

  friend Span operator+(const Span& a, const Span& b) {
    std::vector<Vec<K>> all = a.basis_;
    all.insert(all.end(), b.basis_.begin(), b.basis_.end());
    return Span(a.n_, all);
  }
  friend bool operator==(const Span& a, const Span& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }

  Span intersect(const Span& o) const {
    if (is_zero() || o.is_zero()) return Span(n_);
    // solve sum x_i a_i - sum y_j b_j = 0
    std::size_t p = dim(), q = o.dim();
    Matrix<K> m(n_, p + q);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t k = 0; k < n_; ++k) m(k, i) = basis_[i][k];
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t k = 0; k < n_; ++k) m(k, p + j) = -o.basis_[j][k];
    std::vector<Vec<K>> out;
    for (const auto& sol : kernel_basis(m)) {
      Vec<K> v(n_, zero<K>());
      for (std::size_t i = 0; i < p; ++i)
        if (!sol[i].is_zero()) v = axpy(sol[i], basis_[i], v);
      out.push_back(std::move(v));
    }
    return Span(n_, out);
  }

  /// Linear functionals vanishing on this subspace (rows of the result).
  Matrix<K> annihilator() const {
    if (is_zero()) return Matrix<K>::identity(n_);
    auto ker = kernel_basis(Matrix<K>::from_rows(n_, basis_));
    return Matrix<K>::from_rows(n_, ker);
  }

  /// Image under the linear map m (columns index this ambient space).
  Span image(const Matrix<K>& m) const {
    std::vector<Vec<K>> out;
    for (const auto& v : basis_) out.push_back(m * v);
    return Span(m.rows(), out);
  }

  /// {x in K^{m.cols()} : m x in this}.
  Span preimage(const Matrix<K>& m) const {
    Matrix<K> ann = annihilator();
    if (ann.rows() == 0) return whole(m.cols());
    return Span(m.cols(), kernel_basis(ann * m));
  }

  /// Vectors extending a basis of `sub` (assumed contained here) to one of
  /// this subspace; deterministic, taken from the canonical basis.
  std::vector<Vec<K>> complement_of(const Span& sub) const {
    std::vector<Vec<K>> out;
    Span acc = sub;
    for (const auto& v : basis_) {
      if (acc.contains(v)) continue;
      out.push_back(v);
      acc = acc + Span(n_, {v});
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < basis_.size(); ++i) s += (i ? ", " : "") + nilhodge::to_string(basis_[i]);
    return s + ">";
  }

 private:
  std::size_t n_ = 0;
  std::vector<Vec<K>> basis_;
  std::vector<std::size_t> pivots_;
};

template <ExactField L, ExactField K>
Span<L> lift(const Span<K>& s) {
  std::vector<Vec<L>> b;
  for (const auto& v : s.basis()) b.push_back(lift<L>(v));
  return Span<L>(s.ambient(), b);
}

}  // namespace nilhodge
