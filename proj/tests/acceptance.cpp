// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "nilhodge/dolbeault.hpp"
#include "nilhodge/foliation.hpp"
#include "nilhodge/formats.hpp"
#include "nilhodge/invariants.hpp"
#include "nilhodge/qstructure.hpp"
#include "nilhodge/spectral_sequence.hpp"
#include "nilhodge/structure_equations.hpp"
#include "nilhodge/toroidal.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#ifndef NILHODGE_DATA_DIR
#define NILHODGE_DATA_DIR "data"
#endif

namespace {

using namespace nilhodge;
using C = Complex<Rational>;

const char* kH7 = "(0,0,0,12,13,23)";

struct Outcome {
  std::vector<std::string> failures;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Span<Rational> span_e(std::size_t n, std::initializer_list<std::size_t> idx) {
  std::vector<Vec<Rational>> v;
  for (auto i : idx) v.push_back(Span<Rational>::unit(n, i - 1));
  return Span<Rational>(n, v);
}

ComplexStructure<Rational> h7_j0() {
  return ComplexStructure<Rational>(parse_structure_equations(kH7), standard_structure<Rational>(6));
}

ComplexStructure<Tower> h7_j0_tower() {
  return ComplexStructure<Tower>(lift<Tower>(parse_structure_equations(kH7)), standard_structure<Tower>(6));
}

QStructure<Tower> example_lattice(const Tower& a) {
  Tower s2(QSqrt::sqrt(2)), z, o(Rational(1));
  return QStructure<Tower>(6, {{s2, z, z, z, z, z},
                               {z, s2, z, z, z, z},
                               {s2 * a, z, s2, z, z, z},
                               {z, z, z, o, z, z},
                               {z, z, z, z, o, z},
                               {z, z, z, a, z, -o}});
}

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(NILHODGE_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing data file " + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// dist(σ√d, Z) >= r^{-σ}, decided with an integer square root.
bool surd_distance_at_least(long d, long sigma, const Rational& r) {
  Integer n = Integer(d) * Integer(sigma) * Integer(sigma);
  Integer f;
  mpz_sqrt(f.get_mpz_t(), n.get_mpz_t());
  Rational eps(1);
  for (long k = 0; k < sigma; ++k) eps = eps / r;
  Rational lo = Rational(f) + eps, hi = Rational(f) + Rational(1) - eps;
  return lo * lo <= Rational(n) && hi.sign() > 0 && hi * hi >= Rational(n);
}

// 1. Parsing and validation of the h7 equations.
Outcome criterion1() {
  Outcome o;
  auto g = parse_structure_equations(kH7);
  o.expect(g.dim() == 6, "dimension 6");
  o.expect(!check_jacobi(g).has_value(), "Jacobi identity");
  auto lcs = lower_central_series(g);
  o.expect(lcs.nilpotency_class == std::optional<std::size_t>(2), "nilpotency class 2");
  o.expect(commutator_ideal(g).dim() == 3, "dim [g,g] = 3");
  o.expect(format_structure_equations(g) == kH7, "canonical equations round-trip");
  return o;
}

// 2. de Rham cohomology over the catalog.
Outcome criterion2() {
  Outcome o;
  auto b = betti_numbers(LieAlgebra<Rational>(6));
  for (std::size_t k = 0; k <= 6; ++k) o.expect(b[k] == choose(6, k), "abelian6 b_" + std::to_string(k));
  for (const auto& e : builtin_catalog()) {
    auto s = summarize_algebra(parse_structure_equations(e.equations));
    for (const auto& c : s.checks) o.expect(c.passed, e.name + ": " + c.name);
  }
  o.note = std::to_string(builtin_catalog().size()) + " catalog entries";
  return o;
}

// 3. Dolbeault cohomology: abelian6 and (h7, J0), with a second elimination.
Outcome criterion3() {
  Outcome o;
  ComplexStructure<Rational> torus(LieAlgebra<Rational>(6), standard_structure<Rational>(6));
  auto ht = hodge_table(torus);
  for (std::size_t p = 0; p <= 3; ++p)
    for (std::size_t q = 0; q <= 3; ++q)
      o.expect(ht[p][q] == choose(3, p) * choose(3, q), "abelian6 h^{" + std::to_string(p) + "," + std::to_string(q) + "}");

  auto cs = h7_j0();
  auto h = hodge_table(cs);
  auto b = betti_numbers(cs.algebra());
  o.expect(h[0][0] == 1, "h^{0,0} = 1");
  for (std::size_t p = 0; p <= 3; ++p) {
    auto bc = dolbeault_complex(cs, p);
    long alt = 0;
    for (std::size_t q = 0; q <= 3; ++q) {
      std::size_t r = oracle::complex_rank(bc.dbar[q]), rprev = q ? oracle::complex_rank(bc.dbar[q - 1]) : 0;
      std::string at = "h^{" + std::to_string(p) + "," + std::to_string(q) + "}";
      o.expect(h[p][q] == bc.bases[q].size() - r - rprev, at + " against Bareiss elimination");
      o.expect(h[p][q] == h[3 - p][3 - q], at + " Serre symmetry");
      alt += (q % 2 ? -1 : 1) * static_cast<long>(h[p][q]);
    }
    o.expect(alt == 0, "alternating sum for p = " + std::to_string(p));
  }
  for (std::size_t k = 0; k <= 6; ++k) {
    std::size_t total = 0;
    for (std::size_t p = 0; p <= 3; ++p)
      if (k >= p && k - p <= 3) total += h[p][k - p];
    o.expect(total >= b[k], "Frolicher inequality k = " + std::to_string(k));
  }
  return o;
}

// 4. J-core and J-hull of [g,g], and the subalgebra footnote.
Outcome criterion4() {
  Outcome o;
  auto cs = h7_j0();
  auto w = commutator_ideal(cs.algebra());
  o.expect(j_core(cs.J(), w) == span_e(6, {5, 6}), "j_core([g,g]) = <e5,e6>");
  o.expect(j_hull(cs.J(), w) == span_e(6, {3, 4, 5, 6}), "j_hull([g,g]) = <e3,...,e6>");
  const auto& x = cs.holomorphic_basis();
  const auto& xb = cs.antiholomorphic_basis();
  o.expect(!check_complex_subalgebra(cs, Span<C>(6, {x[0], xb[0], x[2], xb[2]})), "realified g0 is rejected");
  o.expect(check_complex_subalgebra(cs, Span<C>(6, {xb[0], xb[2]})), "<Xb1, Xb3> is accepted");
  return o;
}

// 5. The lattice pipeline for the h7 example.
Outcome criterion5() {
  Outcome o;
  auto g = lift<Tower>(parse_structure_equations(kH7));
  Tower a = Tower::parameter(), half(Rational(Integer(1), Integer(2)));
  auto L = example_lattice(a);
  auto sub = is_lie_subring(g, L);
  o.expect(sub.is_subring, "V_Z is a Lie subring");
  o.expect(sub.brackets_in_2vz, "all brackets lie in 2V_Z");
  auto f = lift<Tower>(span_e(6, {3, 4, 5, 6}));
  o.expect(rational_intersection(L, f).dim == 3, "dim_Q(V_Q ∩ f) = 3 for formal a");
  o.expect(rational_intersection(example_lattice(half), f).dim == 4, "dim_Q(V_Q ∩ f) = 4 for a = 1/2");
  auto la = leaf_analysis(h7_j0_tower(), L, f);
  Matrix<CTower> want(2, 3, {one<CTower>(), CTower(), CTower(a, Tower()), CTower(), one<CTower>(), CTower::i()});
  o.expect(la.normal.normalized == want, "leaf period matrix normalizes to (1 0 a; 0 1 i)");
  return o;
}

// 6. Toroidal classification of the leaf.
Outcome criterion6() {
  Outcome o;
  auto half = parse_period_text(read_data("leaf_half.period"));
  auto rm_half = remmert_morimoto(half);
  auto v_half = theta_classify(rm_half.normal, half);
  o.expect(v_half.kind == ThetaVerdict::Kind::NotToroidal, "a = 1/2 is not toroidal");
  o.expect(!v_half.witness.empty(), "a = 1/2 carries a witness");

  auto root = parse_period_text(read_data("leaf_sqrt2.period"));
  auto nf = remmert_morimoto(root).normal;
  auto v_root = theta_classify(nf, root);
  o.expect(v_root.kind == ThetaVerdict::Kind::ThetaCertified, "a = sqrt 2 is theta");
  bool scan_ok = v_root.kind == ThetaVerdict::Kind::ThetaCertified;
  for (long s = 1; scan_ok && s <= 100; ++s) scan_ok = surd_distance_at_least(2, s, v_root.radius);
  o.expect(scan_ok, "dist >= r^-|sigma| for |sigma| <= 100");

  // A convergent source with q_{k+1} = q_k^{q_k}. The literal 2^{q_k} recursion
  // is also run: its ratios converge to ln 2, the theta boundary.
  auto formal = parse_period_text(read_data("leaf_formal.period"));
  auto fnf = remmert_morimoto(formal).normal;
  ThetaOptions opts;
  opts.convergents = self_power_series();
  auto wild = theta_classify(fnf, formal, opts);
  o.expect(wild.kind == ThetaVerdict::Kind::WildEvidence, "self-power convergents give WildEvidence");
  o.expect(wild.ratios.size() >= 4, "four ratios");
  for (std::size_t k = 1; k < std::min<std::size_t>(wild.ratios.size(), 4); ++k)
    o.expect(wild.ratios[k - 1].hi < wild.ratios[k].lo, "rho_" + std::to_string(k + 1) + " > rho_" + std::to_string(k));
  opts.convergents = power_tower_series();
  auto tower = theta_classify(fnf, formal, opts);
  bool bounded = !tower.ratios.empty();
  for (const auto& iv : tower.ratios) bounded = bounded && iv.hi.to_double() <= std::log(2.0) + 1e-9;
  o.expect(bounded, "2^{q_k} convergents keep rho_k <= ln 2");
  o.note = "wild case uses q_{k+1} = q_k^{q_k}; q_{k+1} = 2^{q_k} gives rho_k -> ln 2 (theta-type), verdict " +
           to_string(tower.kind);
  return o;
}

// 7. Frolicher and Hochschild-Serre spectral sequences on (h7, J0).
Outcome criterion7() {
  Outcome o;
  auto cs = h7_j0();
  auto h = hodge_table(cs);
  auto sp = frolicher(cs);
  for (long p = 0; p <= 3; ++p)
    for (long q = 0; q <= 3; ++q) o.expect(sp.dim(1, p, q) == h[p][q], "Frolicher E_1 entry");
  o.expect(sp.infinity_totals() == betti_numbers(cs.algebra()), "Frolicher E_infinity totals = b_k");
  const auto& xb = cs.antiholomorphic_basis();
  Span<C> g0(6, {xb[0], xb[2]});
  for (std::size_t p = 0; p <= 3; ++p) {
    auto res = hochschild_serre_dolbeault(cs, g0, p);
    std::string at = " (p = " + std::to_string(p) + ")";
    o.expect(res.direct_e2.has_value() && res.e2_agree(), "H-S E_2 equals H^r(k, H^s(g0, .))" + at);
    auto tot = res.pages.infinity_totals();
    for (std::size_t q = 0; q <= 3; ++q) o.expect(tot[q] == h[p][q], "H-S E_infinity total" + at);
  }
  return o;
}

// 8. Conjecture status for the worked case.
Outcome criterion8() {
  Outcome o;
  auto cs = h7_j0_tower();
  auto f = lift<Tower>(span_e(6, {3, 4, 5, 6}));
  auto f0 = lift<Tower>(span_e(6, {5, 6}));
  const auto& xb = cs.antiholomorphic_basis();
  Span<CTower> g0(6, {xb[0], xb[2]});

  auto formal = example_lattice(Tower::parameter());
  auto rep = conjecture_status(cs, formal, f, f0, g0);
  o.expect(rep.verdict == ConjectureVerdict::TheoremApplies && !rep.gamma_rational,
           "formal a: theorem applies in the foliation branch");
  auto leaf = leaf_analysis(cs, formal, f);
  rep = conjecture_status(cs, formal, f, f0, g0, leaf.leaf_status());
  o.expect(rep.verdict == ConjectureVerdict::TheoremApplies, "formal a after the leaf analysis");

  auto root = example_lattice(Tower(QSqrt::sqrt(2)));
  auto leaf_root = leaf_analysis(cs, root, f);
  auto rep_root = conjecture_status(cs, root, f, f0, g0, leaf_root.leaf_status());
  o.expect(rep_root.verdict == ConjectureVerdict::TheoremApplies, "a = sqrt 2: theorem applies");
  o.expect(rep_root.summary == "theorem applies (foliation, leaf toroidal theta)", "a = sqrt 2 summary");

  auto rep_half = conjecture_status(cs, example_lattice(Tower(Rational(Integer(1), Integer(2)))), f, f0, g0);
  o.expect(rep_half.verdict == ConjectureVerdict::FibrationCase, "a = 1/2: fibration case");
  o.expect(rep_half.summary.find("torus bundle") != std::string::npos, "a = 1/2 summary mentions the torus bundle");
  o.note = rep.summary + " / " + rep_root.summary + " / " + rep_half.summary;
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "parse and validate (0,0,0,12,13,23)", 1, criterion1},
      {2, "de Rham cohomology on the catalog", 5, criterion2},
      {3, "Dolbeault cohomology and invariant checks", 30, criterion3},
      {4, "J-core, J-hull and the complex subalgebra test", 1, criterion4},
      {5, "lattice pipeline for the h7 example", 5, criterion5},
      {6, "toroidal classification of the leaf", 30, criterion6},
      {7, "Frolicher and Hochschild-Serre spectral sequences", 60, criterion7},
      {8, "verify-theorem verdicts", 5, criterion8},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds)
      o.failures.push_back("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds) + " s");
    bool ok = o.failures.empty();
    failed += ok ? 0 : 1;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << timing << "]";
    if (!o.note.empty()) std::cout << " (" << o.note << ")";
    std::cout << "\n";
    for (const auto& f : o.failures) std::cout << "     failed: " << f << "\n";
  }
  return failed ? 1 : 0;
}
