#pragma once

#include "nilhodge/cochains.hpp"
#include "nilhodge/complex_structure.hpp"
#include "nilhodge/dolbeault.hpp"
#include "nilhodge/spectral_sequence.hpp"

#include <string>
#include <vector>

namespace nilhodge {

struct InvariantCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AlgebraSummary {
  std::size_t dim = 0;
  std::optional<std::size_t> nilpotency_class;
  std::size_t commutator_dim = 0;
  std::vector<std::size_t> lcs_dims;  ///< dims of g, [g,g], [g,[g,g]], ...
  std::vector<std::size_t> betti;
  std::vector<InvariantCheck> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

struct StructureSummary {
  std::vector<std::vector<std::size_t>> hodge;  ///< [p][q]
  std::vector<std::size_t> frolicher_e1_totals, frolicher_infinity_totals;
  std::size_t frolicher_degeneration = 0;  ///< first page r with E_r = E_∞
  std::vector<InvariantCheck> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {

inline std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

}  // namespace detail

/// Lower central series, Betti numbers and their elementary constraints.
template <ExactField K>
AlgebraSummary summarize_algebra(const LieAlgebra<K>& g) {
  AlgebraSummary out;
  std::size_t n = g.dim();
  out.dim = n;
  auto lcs = lower_central_series(g);
  out.nilpotency_class = lcs.nilpotency_class;
  for (const auto& t : lcs.terms) out.lcs_dims.push_back(t.dim());
  out.commutator_dim = commutator_ideal(g).dim();
  out.betti = betti_numbers(g);
  auto& c = out.checks;
  c.push_back({"Jacobi identity", !check_jacobi(g).has_value(), ""});
  c.push_back({"nilpotent", lcs.nilpotency_class.has_value(),
               lcs.nilpotency_class ? "class " + std::to_string(*lcs.nilpotency_class) : "lower central series stalls"});
  long euler = 0;
  for (std::size_t k = 0; k <= n; ++k) euler += (k % 2 ? -1 : 1) * static_cast<long>(out.betti[k]);
  c.push_back({"Euler characteristic zero", n == 0 || euler == 0, "sum (-1)^k b_k = " + std::to_string(euler)});
  c.push_back({"b_1 = n - dim [g,g]", n == 0 || out.betti[1] == n - out.commutator_dim,
               "b_1 = " + std::to_string(n ? out.betti[1] : 0)});
  bool dual = true;
  for (std::size_t k = 0; k <= n; ++k) dual = dual && out.betti[k] == out.betti[n - k];
  c.push_back({"Poincare duality b_k = b_{n-k}", dual, detail::join_sizes(out.betti)});
  return out;
}

/// Hodge table, Frölicher spectral sequence and the constraints relating them
/// to the Betti numbers. The structure must be integrable.
template <ExactField K>
StructureSummary summarize_structure(const ComplexStructure<K>& cs, const std::vector<std::size_t>& betti) {
  StructureSummary out;
  std::size_t m = cs.complex_dim();
  out.hodge = hodge_table(cs);
  auto sp = frolicher(cs);
  out.frolicher_e1_totals = sp.totals(1);
  out.frolicher_infinity_totals = sp.infinity_totals();
  out.frolicher_degeneration = std::max<std::size_t>(sp.stabilization, 1);
  const auto& h = out.hodge;
  auto& c = out.checks;
  c.push_back({"h^{0,0} = 1", h[0][0] == 1, ""});
  bool serre = true, alt = true, frol = true;
  std::string alt_detail, frol_detail;
  for (std::size_t p = 0; p <= m; ++p) {
    long s = 0;
    for (std::size_t q = 0; q <= m; ++q) {
      serre = serre && h[p][q] == h[m - p][m - q];
      s += (q % 2 ? -1 : 1) * static_cast<long>(h[p][q]);
    }
    if (s != 0) {
      alt = false;
      alt_detail += "p=" + std::to_string(p) + " gives " + std::to_string(s) + "; ";
    }
  }
  for (std::size_t k = 0; k <= 2 * m; ++k) {
    std::size_t total = 0;
    for (std::size_t p = 0; p <= std::min(k, m); ++p)
      if (k - p <= m) total += h[p][k - p];
    if (total < betti[k]) {
      frol = false;
      frol_detail += "k=" + std::to_string(k) + "; ";
    }
  }
  c.push_back({"Serre symmetry h^{p,q} = h^{m-p,m-q}", serre, ""});
  c.push_back({"alternating sums over q vanish", alt, alt_detail});
  c.push_back({"Frolicher inequality sum h^{p,q} >= b_k", frol, frol_detail});
  auto e1 = sp.table(1);
  bool e1_ok = true;
  for (std::size_t p = 0; p < e1.size(); ++p)
    for (std::size_t q = 0; q < e1[p].size(); ++q) e1_ok = e1_ok && e1[p][q] == (p <= m && q <= m ? h[p][q] : 0);
  c.push_back({"Frolicher E_1 equals the Hodge table", e1_ok, ""});
  c.push_back({"Frolicher E_infinity totals equal b_k", out.frolicher_infinity_totals == betti,
               detail::join_sizes(out.frolicher_infinity_totals)});
  return out;
}

}  // namespace nilhodge
