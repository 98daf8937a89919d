#pragma once

#include "nilhodge/lie_algebra.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilhodge {

class InvalidComplexStructure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// J e_a = e_b and J e_b = -e_a for each 0-based pair (a, b).
template <ExactField K>
Matrix<K> structure_from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Matrix<K> j(n, n);
  for (auto [a, b] : pairs) {
    j(b, a) = one<K>();
    j(a, b) = -one<K>();
  }
  return j;
}

/// The standard structure J e_{2i-1} = e_{2i}.
template <ExactField K>
Matrix<K> standard_structure(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < n; i += 2) pairs.emplace_back(i, i + 1);
  return structure_from_pairs<K>(n, pairs);
}

template <ExactField K>
Vec<Complex<K>> conj(const Vec<Complex<K>>& v) {
  Vec<Complex<K>> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.conj());
  return out;
}

template <ExactField K>
Span<Complex<K>> conj(const Span<Complex<K>>& s) {
  std::vector<Vec<Complex<K>>> b;
  for (const auto& v : s.basis()) b.push_back(conj(v));
  return Span<Complex<K>>(s.ambient(), b);
}

/// An almost complex structure J (J^2 = -id) on a real Lie algebra together
/// with its type decomposition.
///
/// The holomorphic frame is X_k = b_k + i J b_k where b_1, b_2, ... are the
/// first standard basis vectors not already in the span of the earlier
/// b's and J b's. For J e_{2i-1} = e_{2i} this gives X_i = e_{2i-1} + i e_{2i}.
/// These vectors satisfy J X = -i X; the library calls their span g^{1,0}
/// throughout. Replacing J by -J swaps the two eigenspaces and leaves every
/// Hodge number unchanged.
template <ExactField K>
class ComplexStructure {
 public:
  using C = Complex<K>;

  ComplexStructure(LieAlgebra<K> g, Matrix<K> j) : g_(std::move(g)), j_(std::move(j)) {
    std::size_t n = g_.dim();
    if (j_.rows() != n || j_.cols() != n) throw InvalidComplexStructure("J has the wrong size");
    if (n % 2) throw InvalidComplexStructure("odd-dimensional algebra cannot carry an almost complex structure");
    Matrix<K> sq = j_ * j_;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (sq(a, b) != (a == b ? -one<K>() : zero<K>())) throw InvalidComplexStructure("J^2 is not -id");
    build_frame();
  }

  const LieAlgebra<K>& algebra() const { return g_; }
  const Matrix<K>& J() const { return j_; }
  std::size_t real_dim() const { return g_.dim(); }
  std::size_t complex_dim() const { return g_.dim() / 2; }

  /// Real vectors b_k with X_k = b_k + i J b_k.
  const std::vector<Vec<K>>& real_frame() const { return b_; }
  const std::vector<Vec<C>>& holomorphic_basis() const { return x_; }
  const std::vector<Vec<C>>& antiholomorphic_basis() const { return xbar_; }
  /// g_C in the standard basis e_1..e_n.
  const LieAlgebra<C>& complexified() const { return gc_; }
  /// g_C in the basis (X_1..X_m, X̄_1..X̄_m).
  const LieAlgebra<C>& adapted() const { return adapted_; }
  /// Columns X_1..X_m, X̄_1..X̄_m.
  const Matrix<C>& frame_matrix() const { return frame_; }

  Span<C> g10() const { return Span<C>(real_dim(), x_); }
  Span<C> g01() const { return Span<C>(real_dim(), xbar_); }

  Vec<C> complexify(const Vec<K>& v) const { return lift<C>(v); }
  Span<C> complexify(const Span<K>& w) const { return lift<C>(w); }

  /// W^{1,0} and W^{0,1} of a J-invariant real subspace.
  Span<C> type10(const Span<K>& w) const { return typed(w, 1); }
  Span<C> type01(const Span<K>& w) const { return typed(w, -1); }

  /// Coordinates of a vector of g_C in the adapted frame.
  Vec<C> frame_coordinates(const Vec<C>& v) const { return frame_inv_ * v; }
  /// Vector of g_C with the given adapted-frame coordinates.
  Vec<C> from_frame(const Vec<C>& c) const { return frame_ * c; }

  bool is_j_invariant(const Span<K>& w) const { return w.image(j_) == w; }

 private:
  Span<C> typed(const Span<K>& w, int sign) const {
    if (!is_j_invariant(w)) throw InvalidComplexStructure("subspace is not J-invariant");
    std::vector<Vec<C>> out;
    C s = sign > 0 ? C::i() : -C::i();
    for (const auto& v : w.basis()) {
      Vec<C> jv = lift<C>(j_ * v);
      Vec<C> x = lift<C>(v);
      out.push_back(axpy(s, jv, x));
    }
    return Span<C>(real_dim(), out);
  }

  void build_frame() {
    std::size_t n = g_.dim();
    Span<K> acc(n);
    for (std::size_t i = 0; i < n && acc.dim() < n; ++i) {
      Vec<K> e = Span<K>::unit(n, i);
      if (acc.contains(e)) continue;
      b_.push_back(e);
      acc = acc + Span<K>(n, {e, j_ * e});
    }
    for (const auto& b : b_) {
      Vec<C> x = axpy(C::i(), lift<C>(j_ * b), lift<C>(b));
      x_.push_back(x);
      xbar_.push_back(conj(x));
    }
    std::vector<Vec<C>> cols = x_;
    cols.insert(cols.end(), xbar_.begin(), xbar_.end());
    frame_ = Matrix<C>::from_columns(n, cols);
    frame_inv_ = inverse(frame_);
    gc_ = lift<C>(g_);
    adapted_ = change_basis(gc_, cols);
  }

  LieAlgebra<K> g_;
  Matrix<K> j_;
  std::vector<Vec<K>> b_;
  std::vector<Vec<C>> x_, xbar_;
  Matrix<C> frame_, frame_inv_;
  LieAlgebra<C> gc_, adapted_;
};

template <ExactField K>
struct NijenhuisValue {
  std::size_t i = 0, j = 0;  ///< 1-based, i < j
  Vec<K> value;
};

/// N(x,y) = [x,y] - [Jx,Jy] + J[Jx,y] + J[x,Jy] on all basis pairs.
template <ExactField K>
std::vector<NijenhuisValue<K>> nijenhuis(const LieAlgebra<K>& g, const Matrix<K>& j) {
  std::size_t n = g.dim();
  std::vector<NijenhuisValue<K>> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Vec<K> x = Span<K>::unit(n, a), y = Span<K>::unit(n, b);
      Vec<K> jx = j * x, jy = j * y;
      Vec<K> v = g.bracket(x, y);
      v = axpy(-one<K>(), g.bracket(jx, jy), v);
      v = axpy(one<K>(), j * g.bracket(jx, y), v);
      v = axpy(one<K>(), j * g.bracket(x, jy), v);
      out.push_back({a + 1, b + 1, std::move(v)});
    }
  return out;
}

template <ExactField K>
bool is_integrable(const LieAlgebra<K>& g, const Matrix<K>& j) {
  for (const auto& nv : nijenhuis(g, j))
    if (!is_zero_vector(nv.value)) return false;
  return true;
}

/// Integrability via [g^{1,0}, g^{1,0}] ⊆ g^{1,0} in g_C.
template <ExactField K>
bool is_integrable_by_closure(const ComplexStructure<K>& cs) {
  return is_subalgebra(cs.complexified(), cs.g10());
}

/// W ∩ JW, the largest J-invariant subspace of W.
template <ExactField K>
Span<K> j_core(const Matrix<K>& j, const Span<K>& w) {
  return w.intersect(w.image(j));
}

/// W + JW, the smallest J-invariant subspace containing W.
template <ExactField K>
Span<K> j_hull(const Matrix<K>& j, const Span<K>& w) {
  return w + w.image(j);
}

/// [S, S] ⊆ S inside g_C.
template <ExactField K>
bool check_complex_subalgebra(const ComplexStructure<K>& cs, const Span<Complex<K>>& s) {
  return is_subalgebra(cs.complexified(), s);
}

}  // namespace nilhodge
