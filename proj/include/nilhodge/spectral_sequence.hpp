#pragma once

#include "nilhodge/cochains.hpp"
#include "nilhodge/dolbeault.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace nilhodge {

/// Raised when a filtered complex is malformed; `degree` is the cochain
/// degree where the problem was found.
class FiltrationError : public std::invalid_argument {
 public:
  FiltrationError(const std::string& what, std::size_t degree)
      : std::invalid_argument(what + " (degree " + std::to_string(degree) + ")"), degree(degree) {}
  std::size_t degree;
};

/// Cochain complex C^0 -> ... -> C^N with a decreasing filtration
/// F^0 C^k = C^k ⊇ F^1 C^k ⊇ ... ⊇ F^L C^k ⊇ F^{L+1} C^k = 0.
template <ExactField K>
struct FilteredComplex {
  std::vector<std::size_t> dims;                 ///< dim C^k, k = 0..N
  std::vector<Matrix<K>> d;                      ///< d[k] : C^k -> C^{k+1}, k = 0..N-1
  std::vector<std::vector<Span<K>>> filtration;  ///< filtration[k][p], p = 0..L

  std::size_t top_degree() const { return dims.empty() ? 0 : dims.size() - 1; }
  std::size_t length() const { return filtration.empty() ? 0 : filtration[0].size() - 1; }

  /// F^p C^k for any integer p (all of C^k below zero, nothing past L).
  Span<K> F(std::size_t k, long p) const {
    if (p <= 0) return Span<K>::whole(dims[k]);
    if (static_cast<std::size_t>(p) > length()) return Span<K>(dims[k]);
    return filtration[k][static_cast<std::size_t>(p)];
  }

  /// Throws FiltrationError on the first violated invariant.
  void validate() const {
    std::size_t n = dims.size();
    if (n == 0) throw FiltrationError("empty complex", 0);
    if (d.size() + 1 != n) throw FiltrationError("expected one differential per degree below the top", d.size());
    if (filtration.size() != n) throw FiltrationError("filtration missing for some degree", filtration.size());
    for (std::size_t k = 0; k + 1 < n; ++k)
      if (d[k].rows() != dims[k + 1] || d[k].cols() != dims[k]) throw FiltrationError("differential has the wrong shape", k);
    for (std::size_t k = 0; k + 2 < n; ++k)
      if (!(d[k + 1] * d[k]).is_zero()) throw FiltrationError("d∘d is not zero", k);
    for (std::size_t k = 0; k < n; ++k) {
      if (filtration[k].size() != length() + 1) throw FiltrationError("filtration lengths differ between degrees", k);
      if (filtration[k][0].dim() != dims[k]) throw FiltrationError("F^0 is not the whole space", k);
      for (std::size_t p = 0; p < filtration[k].size(); ++p) {
        if (filtration[k][p].ambient() != dims[k]) throw FiltrationError("filtration subspace in the wrong space", k);
        if (p && !filtration[k][p - 1].contains(filtration[k][p])) throw FiltrationError("filtration is not decreasing", k);
      }
    }
    for (std::size_t k = 0; k + 1 < n; ++k)
      for (std::size_t p = 1; p <= length(); ++p)
        if (!filtration[k + 1][p].contains(filtration[k][p].image(d[k])))
          throw FiltrationError("d does not preserve F^" + std::to_string(p), k);
  }

  /// dim H^k of the underlying complex.
  std::vector<std::size_t> cohomology() const {
    std::vector<std::size_t> r, h;
    for (const auto& m : d) r.push_back(rank(m));
    for (std::size_t k = 0; k < dims.size(); ++k)
      h.push_back(dims[k] - (k < r.size() ? r[k] : 0) - (k ? r[k - 1] : 0));
    return h;
  }
};

/// Pages of the spectral sequence of a filtered complex. Entries are indexed
/// by (p, k) with k the total degree; accessors take the usual (p, q = k - p).
template <ExactField K>
struct SpectralPages {
  std::size_t length = 0;  ///< filtration length L
  std::size_t top = 0;     ///< top cochain degree N
  /// e[r][p][k] = dim E_r^{p,k-p}, for r = 0 .. last page computed.
  std::vector<std::vector<std::vector<std::size_t>>> e;
  /// d_rank[r][p][k] = rank of d_r : E_r^{p,k-p} -> E_r^{p+r,k-p-r+1}.
  std::vector<std::vector<std::vector<std::size_t>>> d_rank;
  /// Representatives in C^k of a basis of E_r^{p,k-p}, for r <= 2.
  std::vector<std::vector<std::vector<std::vector<Vec<K>>>>> representatives;
  /// First r with E_r = E_∞.
  std::size_t stabilization = 0;
  std::vector<std::size_t> total_cohomology;

  std::size_t last_page() const { return e.size() - 1; }

  std::size_t dim(std::size_t r, long p, long q) const {
    long k = p + q;
    if (p < 0 || q < 0 || static_cast<std::size_t>(p) > length || static_cast<std::size_t>(k) > top) return 0;
    const auto& page = e[std::min(r, last_page())];
    return page[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)];
  }
  std::size_t infinity(long p, long q) const { return dim(last_page(), p, q); }

  std::size_t d_rank_at(std::size_t r, long p, long q) const {
    long k = p + q;
    if (r > last_page() || p < 0 || q < 0 || static_cast<std::size_t>(p) > length || static_cast<std::size_t>(k) > top)
      return 0;
    return d_rank[r][static_cast<std::size_t>(p)][static_cast<std::size_t>(k)];
  }

  /// Σ_{p+q=k} dim E_r^{p,q}.
  std::vector<std::size_t> totals(std::size_t r) const {
    std::vector<std::size_t> t(top + 1, 0);
    const auto& page = e[std::min(r, last_page())];
    for (std::size_t p = 0; p <= length; ++p)
      for (std::size_t k = 0; k <= top; ++k) t[k] += page[p][k];
    return t;
  }
  std::vector<std::size_t> infinity_totals() const { return totals(last_page()); }
  bool converges() const { return infinity_totals() == total_cohomology; }
  bool degenerates_at(std::size_t r) const { return stabilization <= r; }

  /// dim E_r^{p,q} as a table indexed [p][q].
  std::vector<std::vector<std::size_t>> table(std::size_t r) const {
    std::vector<std::vector<std::size_t>> t(length + 1, std::vector<std::size_t>(top + 1, 0));
    for (std::size_t p = 0; p <= length; ++p)
      for (std::size_t q = 0; q <= top; ++q) t[p][q] = dim(r, static_cast<long>(p), static_cast<long>(q));
    return t;
  }
};

namespace detail {

/// Z_r, B_r subspaces of a filtered complex, memoized.
template <ExactField K>
class PageSpaces {
 public:
  explicit PageSpaces(const FilteredComplex<K>& fc) : fc_(fc) {}

  /// Z_r^p C^k = F^p ∩ d^{-1}(F^{p+r}), r >= 0 (r < 0 behaves as r = 0).
  const Span<K>& Z(long r, long p, std::size_t k) {
    auto key = std::make_tuple(std::max(r, 0L), p, k);
    auto it = z_.find(key);
    if (it != z_.end()) return it->second;
    Span<K> z = fc_.F(k, p);
    if (k < fc_.top_degree()) z = z.intersect(fc_.F(k + 1, p + std::max(r, 0L)).preimage(fc_.d[k]));
    return z_.emplace(key, std::move(z)).first->second;
  }

  /// B_r^p C^k = F^p ∩ d(F^{p-r+1} C^{k-1}).
  const Span<K>& B(long r, long p, std::size_t k) {
    auto key = std::make_tuple(r, p, k);
    auto it = b_.find(key);
    if (it != b_.end()) return it->second;
    Span<K> b(fc_.dims[k]);
    if (k > 0) b = fc_.F(k - 1, p - r + 1).image(fc_.d[k - 1]).intersect(fc_.F(k, p));
    return b_.emplace(key, std::move(b)).first->second;
  }

  /// Z_{r-1}^{p+1} + B_r^p, so that E_r^p = Z_r^p / denominator.
  Span<K> denominator(long r, long p, std::size_t k) { return Z(r - 1, p + 1, k) + B(r, p, k); }

 private:
  const FilteredComplex<K>& fc_;
  std::map<std::tuple<long, long, std::size_t>, Span<K>> z_, b_;
};

}  // namespace detail

/// Pages E_0 .. E_{L+1} by the Z_r / B_r construction; E_{L+1} = E_∞ since
/// every d_r with r > L leaves the filtration range.
template <ExactField K>
SpectralPages<K> pages(const FilteredComplex<K>& fc) {
  fc.validate();
  SpectralPages<K> sp;
  sp.length = fc.length();
  sp.top = fc.top_degree();
  sp.total_cohomology = fc.cohomology();
  detail::PageSpaces<K> ps(fc);
  std::size_t last = std::max<std::size_t>(sp.length + 1, 2);
  for (std::size_t r = 0; r <= last; ++r) {
    long lr = static_cast<long>(r);
    std::vector<std::vector<std::size_t>> e(sp.length + 1, std::vector<std::size_t>(sp.top + 1, 0)), dr = e;
    std::vector<std::vector<std::vector<Vec<K>>>> reps(sp.length + 1, std::vector<std::vector<Vec<K>>>(sp.top + 1));
    for (std::size_t p = 0; p <= sp.length; ++p) {
      long lp = static_cast<long>(p);
      for (std::size_t k = 0; k <= sp.top; ++k) {
        const Span<K>& z = ps.Z(lr, lp, k);
        Span<K> den = ps.denominator(lr, lp, k);
        e[p][k] = z.dim() - den.dim();
        if (r <= 2) reps[p][k] = z.complement_of(den);
        if (k < sp.top && e[p][k] > 0) {
          Span<K> target = ps.denominator(lr, lp + lr, k + 1);
          dr[p][k] = (z.image(fc.d[k]) + target).dim() - target.dim();
        }
      }
    }
    sp.e.push_back(std::move(e));
    sp.d_rank.push_back(std::move(dr));
    if (r <= 2) sp.representatives.push_back(std::move(reps));
  }
  sp.stabilization = last;
  while (sp.stabilization > 0) {
    const auto& prev = sp.d_rank[sp.stabilization - 1];
    bool zero = std::all_of(prev.begin(), prev.end(),
                            [](const auto& row) { return std::all_of(row.begin(), row.end(), [](auto x) { return x == 0; }); });
    if (!zero) break;
    --sp.stabilization;
  }
  return sp;
}

/// Total complex Λ^• g_C^* over the adapted frame, filtered by holomorphic
/// degree: F^p is spanned by forms with at least p holomorphic indices.
template <ExactField K>
FilteredComplex<Complex<K>> column_filtered_complex(const ComplexStructure<K>& cs) {
  using C = Complex<K>;
  if (!is_integrable(cs.algebra(), cs.J())) throw NotIntegrable();
  std::size_t n = cs.real_dim(), m = cs.complex_dim();
  FilteredComplex<C> fc;
  for (std::size_t k = 0; k <= n; ++k) {
    MultiIndexBasis basis(n, k);
    fc.dims.push_back(basis.size());
    if (k < n) fc.d.push_back(ce_differential(cs.adapted(), k));
    std::vector<Span<C>> filt;
    for (std::size_t p = 0; p <= m; ++p) {
      std::vector<Vec<C>> gens;
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (bidegree(basis[i], m).first >= p) gens.push_back(Span<C>::unit(basis.size(), i));
      filt.emplace_back(basis.size(), gens);
    }
    fc.filtration.push_back(std::move(filt));
  }
  return fc;
}

/// The Frölicher spectral sequence: E_1^{p,q} = H^{p,q}_∂̄, E_∞ ⇒ H^*(g_C).
template <ExactField K>
SpectralPages<Complex<K>> frolicher(const ComplexStructure<K>& cs) {
  return pages(column_filtered_complex(cs));
}

template <ExactField K>
struct HochschildSerreResult {
  SpectralPages<K> pages;
  /// E_2^{r,s} = H^r(g/h, H^s(h, M)) computed directly, indexed [r][s];
  /// present only when the subalgebra is an ideal.
  std::optional<std::vector<std::vector<std::size_t>>> direct_e2;
  std::size_t sub_dim = 0, quotient_dim = 0;
  bool is_ideal = false;

  bool e2_agree() const {
    if (!direct_e2) return false;
    for (std::size_t r = 0; r < direct_e2->size(); ++r)
      for (std::size_t s = 0; s < (*direct_e2)[r].size(); ++s)
        if ((*direct_e2)[r][s] != pages.dim(2, static_cast<long>(r), static_cast<long>(s))) return false;
    return true;
  }
};

namespace detail {

/// Sorted insertion of c into a sorted index set; returns the parity of the
/// number of elements before c, or nullopt if c is already present.
inline std::optional<bool> insert_sorted(std::vector<std::size_t>& set, std::size_t c) {
  auto it = std::lower_bound(set.begin(), set.end(), c);
  if (it != set.end() && *it == c) return std::nullopt;
  bool odd = (it - set.begin()) % 2 == 1;
  set.insert(it, c);
  return odd;
}

/// Matrix of the derivation induced on Λ^s V^* (basis MultiIndexBasis(dim V, s))
/// by an endomorphism `dual` of V^* written on the dual basis.
template <ExactField K>
Matrix<K> exterior_derivation(const Matrix<K>& dual, std::size_t s) {
  std::size_t n = dual.rows();
  MultiIndexBasis basis(n, s);
  Matrix<K> out(basis.size(), basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto& I = basis[col];
    for (std::size_t t = 0; t < I.size(); ++t)
      for (std::size_t c = 0; c < n; ++c) {
        const K& coef = dual(c, I[t]);
        if (coef.is_zero()) continue;
        std::vector<std::size_t> rest;
        for (std::size_t u = 0; u < I.size(); ++u)
          if (u != t) rest.push_back(I[u]);
        auto odd = insert_sorted(rest, c);
        if (!odd) continue;
        // moving the new factor from slot t to its sorted slot
        bool neg = (t % 2 == 1) != *odd;
        std::size_t row = basis.index_of(rest);
        out(row, col) = out(row, col) + (neg ? -coef : coef);
      }
  }
  return out;
}

/// Kronecker product a ⊗ b with index (i, v) -> i * b.rows() + v.
template <ExactField K>
Matrix<K> kron(const Matrix<K>& a, const Matrix<K>& b) {
  Matrix<K> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t v = 0; v < b.rows(); ++v)
        for (std::size_t w = 0; w < b.cols(); ++w) out(i * b.rows() + v, j * b.cols() + w) = a(i, j) * b(v, w);
    }
  return out;
}

template <ExactField K>
Matrix<K> combine_action(const LieModule<K>& mod, const Vec<K>& x) {
  Matrix<K> out(mod.dim, mod.dim);
  if (mod.is_trivial()) return out;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) out = out + x[i] * mod.action[i];
  return out;
}

/// H^r(q, H^s(h, M)) for g = q ⊕ h in a basis where the first dq vectors
/// span a complement of the ideal h.
template <ExactField K>
std::vector<std::vector<std::size_t>> direct_e2(const LieAlgebra<K>& g, const LieModule<K>& mod, std::size_t dq) {
  std::size_t n = g.dim(), dh = n - dq, dv = mod.dim;
  LieAlgebra<K> h(dh), q(dq);
  for (std::size_t i = 0; i < dh; ++i)
    for (std::size_t j = i + 1; j < dh; ++j)
      for (std::size_t k = 0; k < dh; ++k) h.set_constant(i, j, k, g.constant(dq + i, dq + j, dq + k));
  for (std::size_t i = 0; i < dq; ++i)
    for (std::size_t j = i + 1; j < dq; ++j)
      for (std::size_t k = 0; k < dq; ++k) q.set_constant(i, j, k, g.constant(i, j, k));
  LieModule<K> hmod{dv, {}};
  if (!mod.is_trivial())
    for (std::size_t i = 0; i < dh; ++i) hmod.action.push_back(mod.action[dq + i]);

  std::vector<std::vector<std::size_t>> out(dq + 1, std::vector<std::size_t>(dh + 1, 0));
  for (std::size_t s = 0; s <= dh; ++s) {
    std::size_t cdim = MultiIndexBasis(dh, s).size() * dv;
    Matrix<K> dout = ce_differential(h, hmod, s);
    Span<K> z(cdim, kernel_basis(dout));
    Span<K> b(cdim);
    if (s > 0) b = Span<K>::whole(MultiIndexBasis(dh, s - 1).size() * dv).image(ce_differential(h, hmod, s - 1));
    std::vector<Vec<K>> reps = z.complement_of(b);
    std::size_t hs = reps.size();
    if (hs == 0) continue;
    std::vector<Vec<K>> cols = reps;
    for (const auto& v : b.basis()) cols.push_back(v);
    Matrix<K> frame = Matrix<K>::from_columns(cdim, cols);

    LieModule<K> hmodule{hs, {}};
    for (std::size_t x = 0; x < dq; ++x) {
      // x acts on h^* by -ad(x)^T restricted to h, on M by ρ(x).
      Matrix<K> coad(dh, dh);
      for (std::size_t y = 0; y < dh; ++y)
        for (std::size_t c = 0; c < dh; ++c) coad(y, c) = -g.constant(x, dq + y, dq + c);
      Matrix<K> act = kron(exterior_derivation(coad, s), Matrix<K>::identity(dv));
      if (!mod.is_trivial()) act = act + kron(Matrix<K>::identity(MultiIndexBasis(dh, s).size()), mod.action[x]);
      Matrix<K> induced(hs, hs);
      for (std::size_t a = 0; a < hs; ++a) {
        auto coords = solve(frame, act * reps[a]);
        if (!coords) throw std::logic_error("induced action does not preserve cocycles");
        for (std::size_t c = 0; c < hs; ++c) induced(c, a) = (*coords)[c];
      }
      hmodule.action.push_back(std::move(induced));
    }
    if (dq == 0) {
      out[0][s] = hs;
      continue;
    }
    auto hr = cohomology_dimensions(q, hmodule);
    for (std::size_t r = 0; r <= dq; ++r) out[r][s] = hr[r];
  }
  return out;
}

}  // namespace detail

/// Hochschild–Serre spectral sequence of g with coefficients in `mod`
/// relative to the subalgebra `sub`. F^p C^k is spanned by cochains with at
/// least p indices from a complement of sub (equivalently, cochains vanishing
/// when k - p + 1 arguments lie in sub).
template <ExactField K>
HochschildSerreResult<K> hochschild_serre(const LieAlgebra<K>& g, const LieModule<K>& mod, const Span<K>& sub) {
  std::size_t n = g.dim();
  if (sub.ambient() != n) throw std::invalid_argument("subalgebra lives in the wrong space");
  if (!is_subalgebra(g, sub)) throw std::invalid_argument("subspace is not a subalgebra");
  std::vector<Vec<K>> basis = Span<K>::whole(n).complement_of(sub);
  std::size_t dq = basis.size();
  for (const auto& v : sub.basis()) basis.push_back(v);
  LieAlgebra<K> g2 = change_basis(g, basis);
  LieModule<K> mod2{mod.dim, {}};
  if (!mod.is_trivial())
    for (const auto& v : basis) mod2.action.push_back(detail::combine_action(mod, v));

  FilteredComplex<K> fc;
  std::size_t dv = mod.dim;
  for (std::size_t k = 0; k <= n; ++k) {
    MultiIndexBasis mb(n, k);
    std::size_t dim = mb.size() * dv;
    fc.dims.push_back(dim);
    if (k < n) fc.d.push_back(ce_differential(g2, mod2, k));
    std::vector<Span<K>> filt;
    for (std::size_t p = 0; p <= dq; ++p) {
      std::vector<Vec<K>> gens;
      for (std::size_t i = 0; i < mb.size(); ++i) {
        std::size_t outside = std::count_if(mb[i].begin(), mb[i].end(), [&](std::size_t t) { return t < dq; });
        if (outside >= p)
          for (std::size_t v = 0; v < dv; ++v) gens.push_back(Span<K>::unit(dim, i * dv + v));
      }
      filt.emplace_back(dim, gens);
    }
    fc.filtration.push_back(std::move(filt));
  }

  HochschildSerreResult<K> res;
  res.pages = pages(fc);
  res.sub_dim = sub.dim();
  res.quotient_dim = dq;
  res.is_ideal = is_ideal(g, sub);
  if (res.is_ideal) res.direct_e2 = detail::direct_e2(g2, mod2, dq);
  return res;
}

template <ExactField K>
HochschildSerreResult<K> hochschild_serre(const LieAlgebra<K>& g, const Span<K>& sub) {
  return hochschild_serre(g, LieModule<K>::trivial(), sub);
}

/// g^{0,1} as an abstract Lie algebra on the basis X̄_1..X̄_m together with
/// the module Λ^p (g^{1,0})^*, where X̄ acts on g^{1,0} by X ↦ π^{1,0}[X̄, X]
/// and on the dual by minus the transpose.
template <ExactField K>
struct DolbeaultModule {
  LieAlgebra<Complex<K>> algebra;
  LieModule<Complex<K>> module;
};

template <ExactField K>
DolbeaultModule<K> dolbeault_module(const ComplexStructure<K>& cs, std::size_t p) {
  using C = Complex<K>;
  std::size_t m = cs.complex_dim();
  if (p > m) throw std::out_of_range("holomorphic degree exceeds the complex dimension");
  const auto& ad = cs.adapted();
  std::vector<Vec<C>> xbar;
  for (std::size_t a = 0; a < m; ++a) xbar.push_back(Span<C>::unit(2 * m, m + a));
  DolbeaultModule<K> out{restrict_to(ad, xbar), LieModule<C>{MultiIndexBasis(m, p).size(), {}}};
  for (std::size_t a = 0; a < m; ++a) {
    Matrix<C> dual(m, m);
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c) dual(b, c) = -ad.constant(m + a, b, c);
    out.module.action.push_back(detail::exterior_derivation(dual, p));
  }
  return out;
}

/// Hochschild–Serre for g^{0,1} with coefficients Λ^p (g^{1,0})^* relative to
/// a complex subalgebra `sub` ⊆ g^{0,1} (given in the standard basis of g_C).
template <ExactField K>
HochschildSerreResult<Complex<K>> hochschild_serre_dolbeault(const ComplexStructure<K>& cs, const Span<Complex<K>>& sub,
                                                             std::size_t p) {
  using C = Complex<K>;
  if (!is_integrable(cs.algebra(), cs.J())) throw NotIntegrable();
  std::size_t m = cs.complex_dim();
  if (!cs.g01().contains(sub)) throw std::invalid_argument("subspace is not contained in g^{0,1}");
  std::vector<Vec<C>> coords;
  for (const auto& v : sub.basis()) {
    Vec<C> f = cs.frame_coordinates(v);
    coords.emplace_back(f.begin() + static_cast<std::ptrdiff_t>(m), f.end());
  }
  auto dm = dolbeault_module(cs, p);
  return hochschild_serre(dm.algebra, dm.module, Span<C>(m, coords));
}

}  // namespace nilhodge
