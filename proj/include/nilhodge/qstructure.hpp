#pragma once

#include "nilhodge/lattice.hpp"
#include "nilhodge/lie_algebra.hpp"

#include <optional>
#include <map>
#include <type_traits>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilhodge {

/// A multiplier m != 0 with x * m free of parameter denominators, so that
/// rational_coordinates(x * m) is defined.
template <ExactField K>
K denominator_multiplier(const K& x) {
  if constexpr (requires { x.denominator().coeffs(); }) {
    using C = std::decay_t<decltype(x.denominator().lead())>;
    return K(x.denominator(), Poly<C>(one<C>()));
  } else if constexpr (requires { x.re(); x.im(); }) {
    return K(denominator_multiplier(x.re()) * denominator_multiplier(x.im()));
  } else {
    return one<K>();
  }
}

/// Rational matrix R with {c in Q^n : M c = 0} = ker R. Each row of M is
/// cleared of parameter denominators and split along the monomial basis
/// returned by rational_coordinates (which is Q-linearly independent).
template <ExactField K>
Matrix<Rational> rational_system(const Matrix<K>& m) {
  std::vector<Vec<Rational>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    K mult = one<K>();
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) mult = mult * denominator_multiplier(m(i, j));
    std::map<std::string, Vec<Rational>> split;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_zero()) continue;
      for (const auto& [key, c] : rational_coordinates(m(i, j) * mult)) {
        auto [it, fresh] = split.try_emplace(key, Vec<Rational>(m.cols(), Rational(0)));
        it->second[j] = c;
      }
    }
    for (auto& [key, row] : split) rows.push_back(std::move(row));
  }
  return Matrix<Rational>::from_rows(m.cols(), rows);
}

/// Generators v_1..v_n of <log Γ>_Q (Q-span) and V_Z (Z-span).
template <ExactField K>
class QStructure {
 public:
  QStructure(std::size_t ambient, std::vector<Vec<K>> generators) : n_(ambient), v_(std::move(generators)) {
    for (const auto& v : v_)
      if (v.size() != n_) throw std::invalid_argument("generator length does not match the algebra dimension");
    if (rank(Matrix<K>::from_rows(n_, v_)) != v_.size())
      throw std::invalid_argument("generators are linearly dependent");
  }
  static QStructure standard(std::size_t n) { return QStructure(n, Span<K>::whole(n).basis()); }

  std::size_t ambient() const { return n_; }
  const std::vector<Vec<K>>& generators() const { return v_; }
  /// Matrix whose columns are the generators.
  Matrix<K> generator_matrix() const { return Matrix<K>::from_columns(n_, v_); }

 private:
  std::size_t n_;
  std::vector<Vec<K>> v_;
};

template <ExactField K>
struct BracketCoordinates {
  std::size_t i = 0, j = 0;           ///< 1-based generator indices, i < j
  std::optional<Vec<K>> coordinates;  ///< [v_i, v_j] in the generator basis; nullopt when not in the span
  bool integral = false;
  bool even = false;  ///< all coordinates in 2Z
};

template <ExactField K>
struct SubringReport {
  bool is_subring = true;
  bool brackets_in_2vz = true;
  std::vector<BracketCoordinates<K>> brackets;
  std::optional<std::pair<std::size_t, std::size_t>> first_failure;  ///< 1-based
};

/// Whether V_Z is closed under the bracket, and whether all brackets lie in 2V_Z.
template <ExactField K>
SubringReport<K> is_lie_subring(const LieAlgebra<K>& g, const QStructure<K>& L) {
  SubringReport<K> rep;
  Matrix<K> vm = L.generator_matrix();
  Matrix<K> vinv = inverse(vm);
  const auto& v = L.generators();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      BracketCoordinates<K> b{i + 1, j + 1, vinv * g.bracket(v[i], v[j]), true, true};
      for (const K& c : *b.coordinates) {
        auto r = as_rational(c);
        if (!r || !r->is_integer()) {
          b.integral = b.even = false;
          break;
        }
        if (!mpz_divisible_ui_p(r->numerator().get_mpz_t(), 2)) b.even = false;
      }
      if (!b.integral && rep.is_subring) {
        rep.is_subring = false;
        rep.first_failure = std::make_pair(i + 1, j + 1);
      }
      if (!b.even) rep.brackets_in_2vz = false;
      rep.brackets.push_back(std::move(b));
    }
  return rep;
}

template <ExactField K>
struct RationalIntersection {
  std::size_t dim = 0;
  std::vector<Vec<Rational>> coefficients;  ///< Q-basis of {c : Σ c_i v_i ∈ W}
  std::vector<Vec<K>> vectors;              ///< the corresponding Σ c_i v_i
};

namespace detail {
template <ExactField K>
Matrix<Rational> membership_system(const QStructure<K>& L, const Span<K>& w) {
  // Σ c_i v_i ∈ W  <=>  ann(W) · V c = 0
  Matrix<K> a = w.annihilator();
  if (a.rows() == 0) return Matrix<Rational>(0, L.generators().size());
  return rational_system(a * L.generator_matrix());
}
}  // namespace detail

/// Q-span(v_i) ∩ W, with formal parameters kept formal.
template <ExactField K>
RationalIntersection<K> rational_intersection(const QStructure<K>& L, const Span<K>& w) {
  RationalIntersection<K> out;
  Matrix<Rational> sys = detail::membership_system(L, w);
  std::size_t n = L.generators().size();
  std::vector<Vec<Rational>> ker = sys.rows() == 0 ? Span<Rational>::whole(n).basis() : kernel_basis(sys);
  Span<Rational> canon(n, ker);
  out.coefficients = canon.basis();
  out.dim = canon.dim();
  for (const auto& c : out.coefficients) {
    Vec<K> v(L.ambient(), zero<K>());
    for (std::size_t i = 0; i < n; ++i)
      if (!c[i].is_zero()) v = axpy(K(c[i]), L.generators()[i], v);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

template <ExactField K>
bool is_gamma_rational(const QStructure<K>& L, const Span<K>& w) {
  return rational_intersection(L, w).dim == w.dim();
}

/// Z-basis of V_Z ∩ W as integer coefficient columns, plus the vectors.
template <ExactField K>
std::pair<IntMatrix, std::vector<Vec<K>>> lattice_intersection(const QStructure<K>& L, const Span<K>& w) {
  std::size_t n = L.generators().size();
  Matrix<Rational> sys = detail::membership_system(L, w);
  IntMatrix basis = sys.rows() == 0 ? IntMatrix::identity(n) : integer_kernel(sys);
  std::vector<Vec<K>> vecs;
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    Vec<K> v(L.ambient(), zero<K>());
    for (std::size_t i = 0; i < n; ++i)
      if (basis(i, j) != 0) v = axpy(K(Rational(basis(i, j))), L.generators()[i], v);
    vecs.push_back(std::move(v));
  }
  return {basis, vecs};
}

}  // namespace nilhodge
