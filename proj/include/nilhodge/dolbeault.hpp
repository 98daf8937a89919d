#pragma once

#include "nilhodge/cochains.hpp"
#include "nilhodge/complex_structure.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace nilhodge {

class NotIntegrable : public std::runtime_error {
 public:
  NotIntegrable() : std::runtime_error("d does not split as ∂+∂̄: J is not integrable") {}
};

/// Bidegree of a multi-index over the adapted frame (first m letters are
/// dual to X_k, the rest to X̄_k).
inline std::pair<std::size_t, std::size_t> bidegree(const std::vector<std::size_t>& idx, std::size_t m) {
  std::size_t p = 0;
  for (auto i : idx)
    if (i < m) ++p;
  return {p, idx.size() - p};
}

/// "x^{1}xb^{23}" for ζ^1 ∧ ζ̄^2 ∧ ζ̄^3 (ζ dual to X, ζ̄ dual to X̄).
inline std::string bigraded_label(const std::vector<std::size_t>& idx, std::size_t m) {
  std::string hol, anti;
  for (auto i : idx) {
    std::size_t k = (i < m ? i : i - m) + 1;
    std::string digit = (m > 9 && !(i < m ? hol : anti).empty() ? "," : "") + std::to_string(k);
    (i < m ? hol : anti) += digit;
  }
  std::string s;
  if (!hol.empty()) s += "x^{" + hol + "}";
  if (!anti.empty()) s += "xb^{" + anti + "}";
  return s.empty() ? "1" : s;
}

/// The complex (Λ^{p,•} g*, ∂̄) for fixed p.
template <ExactField C>
struct BigradedComplex {
  std::size_t p = 0;
  std::size_t m = 0;
  /// bases[q]: multi-indices (over the adapted frame) spanning Λ^{p,q}.
  std::vector<std::vector<std::vector<std::size_t>>> bases;
  /// dbar[q]: Λ^{p,q} -> Λ^{p,q+1}, for q = 0..m.
  std::vector<Matrix<C>> dbar;

  std::vector<std::size_t> cohomology() const {
    std::vector<std::size_t> r, h;
    for (const auto& d : dbar) r.push_back(rank(d));
    for (std::size_t q = 0; q <= m; ++q) h.push_back(bases[q].size() - r[q] - (q ? r[q - 1] : 0));
    return h;
  }
};

namespace detail {

/// Component of d_k (in the adapted frame) from bidegree (p,q) to (p2,q2).
template <ExactField C>
Matrix<C> bidegree_block(const Matrix<C>& d, const MultiIndexBasis& src, const MultiIndexBasis& dst, std::size_t m,
                         std::pair<std::size_t, std::size_t> from, std::pair<std::size_t, std::size_t> to,
                         std::vector<std::size_t>* src_idx = nullptr, std::vector<std::size_t>* dst_idx = nullptr) {
  std::vector<std::size_t> cols, rows;
  for (std::size_t i = 0; i < src.size(); ++i)
    if (bidegree(src[i], m) == from) cols.push_back(i);
  for (std::size_t i = 0; i < dst.size(); ++i)
    if (bidegree(dst[i], m) == to) rows.push_back(i);
  Matrix<C> out(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) out(a, b) = d(rows[a], cols[b]);
  if (src_idx) *src_idx = cols;
  if (dst_idx) *dst_idx = rows;
  return out;
}

}  // namespace detail

/// Whether d maps Λ^{p,q} into Λ^{p+1,q} ⊕ Λ^{p,q+1} for every (p,q).
template <ExactField K>
bool d_splits(const ComplexStructure<K>& cs) {
  using C = Complex<K>;
  std::size_t n = cs.real_dim(), m = cs.complex_dim();
  for (std::size_t k = 0; k < n; ++k) {
    Matrix<C> d = ce_differential(cs.adapted(), k);
    MultiIndexBasis src(n, k), dst(n, k + 1);
    for (std::size_t i = 0; i < src.size(); ++i) {
      auto [p, q] = bidegree(src[i], m);
      for (std::size_t r = 0; r < dst.size(); ++r) {
        if (d(r, i).is_zero()) continue;
        auto [p2, q2] = bidegree(dst[r], m);
        if (!((p2 == p + 1 && q2 == q) || (p2 == p && q2 == q + 1))) return false;
      }
    }
  }
  return true;
}

template <ExactField K>
BigradedComplex<Complex<K>> dolbeault_complex(const ComplexStructure<K>& cs, std::size_t p) {
  using C = Complex<K>;
  if (!is_integrable(cs.algebra(), cs.J())) throw NotIntegrable();
  std::size_t n = cs.real_dim(), m = cs.complex_dim();
  if (p > m) throw std::out_of_range("holomorphic degree exceeds the complex dimension");
  BigradedComplex<C> bc;
  bc.p = p;
  bc.m = m;
  for (std::size_t q = 0; q <= m; ++q) {
    MultiIndexBasis src(n, p + q), dst(n, p + q + 1);
    std::vector<std::size_t> cols;
    Matrix<C> d = ce_differential(cs.adapted(), p + q);
    Matrix<C> block = detail::bidegree_block(d, src, dst, m, {p, q}, {p, q + 1}, &cols);
    std::vector<std::vector<std::size_t>> basis;
    for (auto c : cols) basis.push_back(src[c]);
    bc.bases.push_back(std::move(basis));
    bc.dbar.push_back(std::move(block));
  }
  return bc;
}

/// h^{p,q} for 0 <= p, q <= m, indexed [p][q].
template <ExactField K>
std::vector<std::vector<std::size_t>> hodge_table(const ComplexStructure<K>& cs) {
  std::vector<std::vector<std::size_t>> h;
  for (std::size_t p = 0; p <= cs.complex_dim(); ++p) h.push_back(dolbeault_complex(cs, p).cohomology());
  return h;
}

}  // namespace nilhodge
