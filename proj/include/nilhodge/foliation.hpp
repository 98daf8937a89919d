#pragma once

#include "nilhodge/complex_structure.hpp"
#include "nilhodge/qstructure.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilhodge {

class FoliationPreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CheckItem {
  std::string name;
  std::string status;  ///< "pass", "fail", "no" (a branch not taken), "assumed", "pending", "n/a"
  std::string detail;
  bool passed() const { return status == "pass"; }
};

struct DiagramReport {
  std::vector<CheckItem> checks;
  bool exact() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
};

namespace detail {
inline CheckItem check(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok ? "pass" : "fail", std::move(detail)};
}
}  // namespace detail

/// Preconditions on f and f0; throws FoliationPreconditionError naming the
/// first failure.
template <ExactField K>
void require_foliation_data(const ComplexStructure<K>& cs, const Span<K>& f, const Span<K>& f0) {
  const auto& g = cs.algebra();
  if (!is_ideal(g, f)) throw FoliationPreconditionError("f is not an ideal");
  if (!cs.is_j_invariant(f)) throw FoliationPreconditionError("f is not J-invariant");
  if (!is_abelian_subspace(g, f)) throw FoliationPreconditionError("f is not abelian");
  if (!f.contains(f0)) throw FoliationPreconditionError("f0 is not contained in f");
  if (!cs.is_j_invariant(f0)) throw FoliationPreconditionError("f0 is not J-invariant");
}

/// Rows and columns of the diagram relating f0 ⊂ f, g0^{0,1} ⊂ g^{0,1},
/// h = g/f and k = f/f0 on the (0,1) level.
template <ExactField K>
DiagramReport check_foliation_diagram(const ComplexStructure<K>& cs, const Span<K>& f, const Span<K>& f0,
                                      const Span<Complex<K>>& g0_01) {
  require_foliation_data(cs, f, f0);
  DiagramReport rep;
  Span<Complex<K>> g01 = cs.g01(), f01 = cs.type01(f), f0_01 = cs.type01(f0);
  std::size_t k01 = (f.dim() - f0.dim()) / 2;

  rep.checks.push_back(detail::check("g0^{0,1} is contained in g^{0,1}", g01.contains(g0_01)));
  Span<Complex<K>> meet = g0_01.intersect(f01);
  rep.checks.push_back(detail::check("g0^{0,1} ∩ f^{0,1} = f0^{0,1}", meet == f0_01,
                                     "dim " + std::to_string(meet.dim()) + " vs " + std::to_string(f0_01.dim())));
  Span<Complex<K>> sum = g0_01 + f01;
  rep.checks.push_back(detail::check("g0^{0,1} -> h^{0,1} is onto", g01.contains(sum) && sum.dim() == g01.dim(),
                                     "image dim " + std::to_string(sum.dim() - f01.dim()) + " of " +
                                         std::to_string(g01.dim() - f01.dim())));
  rep.checks.push_back(detail::check("f^{0,1}/f0^{0,1} = k^{0,1}", f01.dim() - f0_01.dim() == k01,
                                     "dim " + std::to_string(f01.dim() - f0_01.dim()) + ", k^{0,1} dim " +
                                         std::to_string(k01)));
  bool middle = g01.dim() >= g0_01.dim() && g01.dim() - g0_01.dim() == k01;
  rep.checks.push_back(detail::check("g^{0,1}/g0^{0,1} = k^{0,1}", middle,
                                     "dim " + std::to_string(g01.dim() - g0_01.dim()) + ", k^{0,1} dim " +
                                         std::to_string(k01)));
  rep.checks.push_back(detail::check("g0^{0,1} is a subalgebra", check_complex_subalgebra(cs, g0_01)));
  return rep;
}

enum class ConjectureVerdict { TorusKnown, FibrationCase, TheoremApplies, DoesNotApply, Undetermined };

inline std::string to_string(ConjectureVerdict v) {
  switch (v) {
    case ConjectureVerdict::TorusKnown: return "torus, conjecture known";
    case ConjectureVerdict::FibrationCase: return "fibration case (torus bundle)";
    case ConjectureVerdict::TheoremApplies: return "theorem applies";
    case ConjectureVerdict::DoesNotApply: return "does not apply";
    case ConjectureVerdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

/// What is known about the leaf F, supplied by the toroidal analysis.
enum class LeafStatus { Pending, ToroidalTheta, ToroidalWild, ToroidalUndetermined, NotToroidal };

inline std::string to_string(LeafStatus s) {
  switch (s) {
    case LeafStatus::Pending: return "pending";
    case LeafStatus::ToroidalTheta: return "toroidal theta";
    case LeafStatus::ToroidalWild: return "toroidal wild";
    case LeafStatus::ToroidalUndetermined: return "toroidal, theta/wild undetermined";
    case LeafStatus::NotToroidal: return "not toroidal";
  }
  return "pending";
}

struct ConjectureReport {
  std::vector<CheckItem> items;
  ConjectureVerdict verdict = ConjectureVerdict::Undetermined;
  std::string summary;
  bool gamma_rational = false;
  std::size_t rational_dim = 0;
};

/// Hypothesis checklist for the toroidal-foliation theorem.
template <ExactField K>
ConjectureReport conjecture_status(const ComplexStructure<K>& cs, const QStructure<K>& lattice, const Span<K>& f,
                                   const Span<K>& f0, const Span<Complex<K>>& g0_01,
                                   LeafStatus leaf = LeafStatus::Pending) {
  const auto& g = cs.algebra();
  ConjectureReport rep;
  auto& items = rep.items;
  if (g.is_abelian()) {
    items.push_back({"algebra is abelian", "pass", "the nilmanifold is a complex torus"});
    rep.verdict = ConjectureVerdict::TorusKnown;
    rep.summary = to_string(rep.verdict);
    rep.gamma_rational = true;
    rep.rational_dim = g.dim();
    return rep;
  }

  bool ideal = is_ideal(g, f), jinv = cs.is_j_invariant(f), abelian = is_abelian_subspace(g, f);
  items.push_back(detail::check("f is an ideal", ideal));
  items.push_back(detail::check("f is J-invariant", jinv));
  items.push_back(detail::check("f is abelian", abelian));
  bool base_abelian = f.contains(commutator_ideal(g));
  items.push_back({"h = g/f is abelian", base_abelian ? "pass" : "assumed",
                   base_abelian ? "base is a complex torus, conjecture known for it"
                                : "base nilmanifold not a torus; conjecture for base assumed"});

  auto inter = rational_intersection(lattice, f);
  rep.rational_dim = inter.dim;
  rep.gamma_rational = inter.dim == f.dim();
  items.push_back({"f is Gamma-rational", rep.gamma_rational ? "pass" : "no",
                   "dim_Q(<log Gamma>_Q ∩ f) = " + std::to_string(inter.dim) + " of " + std::to_string(f.dim())});

  if (!(ideal && jinv && abelian)) {
    rep.verdict = ConjectureVerdict::DoesNotApply;
    rep.summary = "does not apply: f is not a J-invariant abelian ideal";
    return rep;
  }
  if (rep.gamma_rational) {
    rep.verdict = ConjectureVerdict::FibrationCase;
    rep.summary = base_abelian ? "fibration case: holomorphic torus bundle over a complex torus"
                               : "fibration case: holomorphic torus bundle (conjecture for base assumed)";
    return rep;
  }

  // foliation case
  auto [coeffs, gens] = lattice_intersection(lattice, f);
  Span<K> real_span(g.dim(), gens);
  Span<K> largest = j_core(cs.J(), real_span);
  items.push_back(detail::check("f0 is the largest complex subspace of span_R(Gamma_f)", largest == f0,
                                "computed dim " + std::to_string(largest.dim()) + ", given dim " +
                                    std::to_string(f0.dim())));
  bool diagram_ok = false;
  try {
    auto d = check_foliation_diagram(cs, f, f0, g0_01);
    diagram_ok = d.exact();
    std::string failed;
    for (const auto& c : d.checks)
      if (!c.passed()) failed += (failed.empty() ? "" : "; ") + c.name;
    items.push_back(detail::check("diagram exact", diagram_ok, failed.empty() ? "" : "failed: " + failed));
  } catch (const FoliationPreconditionError& e) {
    items.push_back(detail::check("diagram exact", false, e.what()));
  }
  std::string leaf_status = leaf == LeafStatus::Pending ? "pending"
                            : leaf == LeafStatus::NotToroidal ? "fail"
                                                             : "pass";
  items.push_back({"leaf F is toroidal", leaf_status, to_string(leaf)});

  bool hyp = largest == f0 && diagram_ok;
  if (!hyp || leaf == LeafStatus::NotToroidal) {
    rep.verdict = ConjectureVerdict::DoesNotApply;
    rep.summary = "does not apply: a hypothesis fails";
  } else {
    rep.verdict = ConjectureVerdict::TheoremApplies;
    rep.summary = leaf == LeafStatus::Pending ? "theorem applies (foliation case, pending the toroidal verdict on the leaf)"
                                              : "theorem applies (foliation, leaf " + to_string(leaf) + ")";
    if (!base_abelian) rep.summary += "; conjecture for base assumed";
  }
  return rep;
}

}  // namespace nilhodge
