#pragma once

#include "nilhodge/lie_algebra.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilhodge {

/// Sorted k-element subsets of {0..n-1} in lexicographic order: the basis
/// e^{i_1 ... i_k} of the k-th exterior power of the dual.
class MultiIndexBasis {
 public:
  MultiIndexBasis(std::size_t n, std::size_t k) : n_(n), k_(k) {
    if (k > n) return;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    while (true) {
      index_.emplace(cur, sets_.size());
      sets_.push_back(cur);
      std::size_t pos = k;
      while (pos > 0 && cur[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++cur[pos - 1];
      for (std::size_t i = pos; i < k; ++i) cur[i] = cur[i - 1] + 1;
    }
  }

  std::size_t size() const { return sets_.size(); }
  std::size_t degree() const { return k_; }
  std::size_t ambient() const { return n_; }
  const std::vector<std::size_t>& operator[](std::size_t i) const { return sets_[i]; }
  /// Index of a sorted subset.
  std::size_t index_of(const std::vector<std::size_t>& sorted) const { return index_.at(sorted); }

  /// "e^{123}" style label (1-based; comma-separated past nine).
  std::string label(std::size_t i, const std::string& letter = "e") const {
    if (k_ == 0) return "1";
    std::string s = letter + "^{";
    for (std::size_t t = 0; t < k_; ++t) {
      if (n_ > 9 && t) s += ",";
      s += std::to_string(sets_[i][t] + 1);
    }
    return s + "}";
  }

 private:
  std::size_t n_, k_;
  std::vector<std::vector<std::size_t>> sets_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
};

/// Representation of a Lie algebra on K^dim: one matrix per basis vector.
template <ExactField K>
struct LieModule {
  std::size_t dim = 1;
  std::vector<Matrix<K>> action;  ///< empty means the trivial module

  static LieModule trivial(std::size_t d = 1) { return LieModule{d, {}}; }
  bool is_trivial() const { return action.empty(); }
};

/// Matrix of d : C^k -> C^{k+1}, C^k = Λ^k g* ⊗ V, with basis index
/// (multi-index I, module vector v) -> I * dim V + v and
///   (dω)(x_0..x_k) = Σ (-1)^i x_i·ω(..x̂_i..) + Σ_{i<j} (-1)^{i+j} ω([x_i,x_j], ..x̂_i..x̂_j..).
template <ExactField K>
Matrix<K> ce_differential(const LieAlgebra<K>& g, const LieModule<K>& mod, std::size_t k) {
  std::size_t n = g.dim();
  if (k > n) throw std::out_of_range("cochain degree " + std::to_string(k) + " exceeds dimension");
  std::size_t dv = mod.dim;
  MultiIndexBasis src(n, k), dst(n, k + 1);
  Matrix<K> d(dst.size() * dv, src.size() * dv);
  if (k == n) return d;
  for (std::size_t jj = 0; jj < dst.size(); ++jj) {
    const auto& J = dst[jj];
    if (!mod.is_trivial()) {
      for (std::size_t i = 0; i <= k; ++i) {
        std::vector<std::size_t> rest;
        for (std::size_t t = 0; t <= k; ++t)
          if (t != i) rest.push_back(J[t]);
        std::size_t ii = src.index_of(rest);
        const Matrix<K>& rho = mod.action[J[i]];
        for (std::size_t w = 0; w < dv; ++w)
          for (std::size_t v = 0; v < dv; ++v) {
            if (rho(w, v).is_zero()) continue;
            K val = i % 2 == 0 ? rho(w, v) : -rho(w, v);
            d(jj * dv + w, ii * dv + v) = d(jj * dv + w, ii * dv + v) + val;
          }
      }
    }
    for (std::size_t a = 0; a <= k; ++a)
      for (std::size_t b = a + 1; b <= k; ++b) {
        Vec<K> br = g.bracket_basis(J[a], J[b]);
        std::vector<std::size_t> rest;
        for (std::size_t t = 0; t <= k; ++t)
          if (t != a && t != b) rest.push_back(J[t]);
        bool sign_ab = (a + b) % 2 == 1;
        for (std::size_t c = 0; c < n; ++c) {
          if (br[c].is_zero()) continue;
          // ω(e_c, rest) with ω = e^I: I = {c} ∪ rest, sign from moving c into place
          std::size_t before = 0;
          bool clash = false;
          for (std::size_t r : rest) {
            if (r == c) clash = true;
            if (r < c) ++before;
          }
          if (clash) continue;
          std::vector<std::size_t> I = rest;
          I.insert(I.begin() + static_cast<std::ptrdiff_t>(before), c);
          std::size_t ii = src.index_of(I);
          bool neg = sign_ab ^ (before % 2 == 1);
          K val = neg ? -br[c] : br[c];
          for (std::size_t v = 0; v < dv; ++v) d(jj * dv + v, ii * dv + v) = d(jj * dv + v, ii * dv + v) + val;
        }
      }
  }
  return d;
}

template <ExactField K>
Matrix<K> ce_differential(const LieAlgebra<K>& g, std::size_t k) {
  return ce_differential(g, LieModule<K>::trivial(), k);
}

/// dim H^k for k = 0..n, with b_k = dim ker d_k - rank d_{k-1}.
template <ExactField K>
std::vector<std::size_t> cohomology_dimensions(const LieAlgebra<K>& g, const LieModule<K>& mod) {
  std::size_t n = g.dim();
  std::vector<std::size_t> ranks;
  for (std::size_t k = 0; k <= n; ++k) ranks.push_back(rank(ce_differential(g, mod, k)));
  std::vector<std::size_t> b;
  for (std::size_t k = 0; k <= n; ++k) {
    std::size_t dim_ck = MultiIndexBasis(n, k).size() * mod.dim;
    b.push_back(dim_ck - ranks[k] - (k ? ranks[k - 1] : 0));
  }
  return b;
}

template <ExactField K>
std::vector<std::size_t> betti_numbers(const LieAlgebra<K>& g) {
  return cohomology_dimensions(g, LieModule<K>::trivial());
}

/// Human-readable cochain, e.g. "-e^{123} + 2 e^{45}".
template <ExactField K>
std::string format_cochain(const Vec<K>& v, const MultiIndexBasis& basis, const std::string& letter = "e") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    std::string c = to_string(v[i]);
    bool neg = !c.empty() && c[0] == '-' && c.find_first_of("+-", 1) == std::string::npos;
    if (neg) c = c.substr(1);
    bool unit = c == "1";
    bool compound = c.find_first_of("+- ", 0) != std::string::npos;
    if (compound) c = "(" + c + ")";
    s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    s += (unit ? "" : c + " ") + basis.label(i, letter);
  }
  return s.empty() ? "0" : s;
}

}  // namespace nilhodge
