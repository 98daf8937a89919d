#pragma once

#include "nilhodge/subspace.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilhodge {

/// Basis triple (1-based) on which the Jacobi identity fails.
struct JacobiWitness {
  std::size_t i = 0, j = 0, k = 0;
  std::string to_string() const {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
  }
};

class JacobiFailure : public std::runtime_error {
 public:
  explicit JacobiFailure(JacobiWitness w)
      : std::runtime_error("Jacobi identity fails on basis triple " + w.to_string()), witness(w) {}
  JacobiWitness witness;
};

/// Finite-dimensional Lie algebra given by structure constants
/// [e_i, e_j] = sum_k c_ij^k e_k, stored for i < j only (0-based internally).
template <ExactField K>
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t n) : n_(n), br_(n * (n > 0 ? n - 1 : 0) / 2, Vec<K>(n, zero<K>())) {}

  std::size_t dim() const { return n_; }

  void set_bracket(std::size_t i, std::size_t j, Vec<K> value) {
    if (i == j) throw std::invalid_argument("bracket of a basis vector with itself is zero");
    if (i > j) {
      for (auto& x : value) x = -x;
      std::swap(i, j);
    }
    br_.at(pair_index(i, j)) = std::move(value);
  }
  /// c_ij^k, any order of i, j.
  K constant(std::size_t i, std::size_t j, std::size_t k) const {
    if (i == j) return zero<K>();
    return i < j ? br_[pair_index(i, j)][k] : -br_[pair_index(j, i)][k];
  }
  void set_constant(std::size_t i, std::size_t j, std::size_t k, const K& c) {
    if (i > j) return set_constant(j, i, k, -c);
    br_.at(pair_index(i, j))[k] = c;
  }

  Vec<K> bracket_basis(std::size_t i, std::size_t j) const {
    if (i == j) return Vec<K>(n_, zero<K>());
    if (i < j) return br_[pair_index(i, j)];
    Vec<K> v = br_[pair_index(j, i)];
    for (auto& x : v) x = -x;
    return v;
  }

  Vec<K> bracket(const Vec<K>& x, const Vec<K>& y) const {
    Vec<K> out(n_, zero<K>());
    for (std::size_t i = 0; i < n_; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j || y[j].is_zero()) continue;
        const Vec<K>& b = br_[pair_index(std::min(i, j), std::max(i, j))];
        K f = i < j ? x[i] * y[j] : -(x[i] * y[j]);
        out = axpy(f, b, out);
      }
    }
    return out;
  }

  /// Matrix of ad(x).
  Matrix<K> ad(const Vec<K>& x) const {
    Matrix<K> m(n_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
      Vec<K> col = bracket(x, Span<K>::unit(n_, j));
      for (std::size_t i = 0; i < n_; ++i) m(i, j) = col[i];
    }
    return m;
  }

  bool is_abelian() const {
    for (const auto& b : br_)
      if (!is_zero_vector(b)) return false;
    return true;
  }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.n_ == b.n_ && a.br_ == b.br_; }

 private:
  std::size_t pair_index(std::size_t i, std::size_t j) const { return i * n_ - i * (i + 1) / 2 + (j - i - 1); }

  std::size_t n_ = 0;
  std::vector<Vec<K>> br_;
};

/// Jacobiator [[x,y],z] + [[y,z],x] + [[z,x],y] on every basis triple; the
/// first failing triple (1-based, lexicographic) is returned.
template <ExactField K>
std::optional<JacobiWitness> check_jacobi(const LieAlgebra<K>& g) {
  std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        auto ei = Span<K>::unit(n, i), ej = Span<K>::unit(n, j), ek = Span<K>::unit(n, k);
        Vec<K> s = g.bracket(g.bracket_basis(i, j), ek);
        s = axpy(one<K>(), g.bracket(g.bracket_basis(j, k), ei), s);
        s = axpy(one<K>(), g.bracket(g.bracket_basis(k, i), ej), s);
        if (!is_zero_vector(s)) return JacobiWitness{i + 1, j + 1, k + 1};
      }
  return std::nullopt;
}

template <ExactField K>
const LieAlgebra<K>& validated(const LieAlgebra<K>& g) {
  if (auto w = check_jacobi(g)) throw JacobiFailure(*w);
  return g;
}

template <ExactField L, ExactField K>
LieAlgebra<L> lift(const LieAlgebra<K>& g) {
  LieAlgebra<L> out(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) out.set_bracket(i, j, lift<L>(g.bracket_basis(i, j)));
  return out;
}

/// Span of all [e_i, e_j].
template <ExactField K>
Span<K> commutator_ideal(const LieAlgebra<K>& g) {
  std::vector<Vec<K>> v;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) v.push_back(g.bracket_basis(i, j));
  return Span<K>(g.dim(), v);
}

/// [A, B] as a subspace.
template <ExactField K>
Span<K> bracket_span(const LieAlgebra<K>& g, const Span<K>& a, const Span<K>& b) {
  std::vector<Vec<K>> v;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) v.push_back(g.bracket(x, y));
  return Span<K>(g.dim(), v);
}

template <ExactField K>
bool is_ideal(const LieAlgebra<K>& g, const Span<K>& w) {
  return w.contains(bracket_span(g, Span<K>::whole(g.dim()), w));
}

template <ExactField K>
bool is_subalgebra(const LieAlgebra<K>& g, const Span<K>& w) {
  return w.contains(bracket_span(g, w, w));
}

template <ExactField K>
bool is_abelian_subspace(const LieAlgebra<K>& g, const Span<K>& w) {
  return bracket_span(g, w, w).is_zero();
}

template <ExactField K>
struct LowerCentralSeries {
  std::vector<Span<K>> terms;        ///< g = terms[0] ⊋ terms[1] ⊋ ...
  std::optional<std::size_t> nilpotency_class;  ///< nullopt when the series stabilises above 0
};

/// g^(1) = [g,g], g^(i+1) = [g, g^(i)]. For nilpotent g the chain ends in 0
/// and the class is the number of non-zero terms.
template <ExactField K>
LowerCentralSeries<K> lower_central_series(const LieAlgebra<K>& g) {
  LowerCentralSeries<K> out;
  Span<K> whole = Span<K>::whole(g.dim());
  out.terms.push_back(whole);
  Span<K> cur = whole;
  while (!cur.is_zero()) {
    Span<K> next = bracket_span(g, whole, cur);
    out.terms.push_back(next);
    if (next == cur) return out;  // stabilised
    cur = next;
  }
  out.nilpotency_class = out.terms.size() - 1;
  return out;
}

/// Structure constants in a new basis (columns of `basis`).
template <ExactField K>
LieAlgebra<K> change_basis(const LieAlgebra<K>& g, const std::vector<Vec<K>>& basis) {
  std::size_t n = g.dim();
  Matrix<K> b = Matrix<K>::from_columns(n, basis);
  Matrix<K> binv = inverse(b);
  LieAlgebra<K> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.set_bracket(i, j, binv * g.bracket(basis[i], basis[j]));
  return out;
}

/// The subalgebra spanned by `basis`, with structure constants in that basis.
/// Throws std::invalid_argument when the span is not closed under the bracket.
template <ExactField K>
LieAlgebra<K> restrict_to(const LieAlgebra<K>& g, const std::vector<Vec<K>>& basis) {
  std::size_t m = basis.size();
  Matrix<K> b = Matrix<K>::from_columns(g.dim(), basis);
  LieAlgebra<K> out(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      auto c = solve(b, g.bracket(basis[i], basis[j]));
      if (!c) throw std::invalid_argument("span is not closed under the bracket");
      out.set_bracket(i, j, *c);
    }
  return out;
}

}  // namespace nilhodge
