#include "nilhodge/dolbeault.hpp"
#include "nilhodge/formats.hpp"
#include "nilhodge/foliation.hpp"
#include "nilhodge/invariants.hpp"
#include "nilhodge/qstructure.hpp"
#include "nilhodge/structure_equations.hpp"
#include "nilhodge/toroidal.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef NILHODGE_VERSION
#define NILHODGE_VERSION "0.0.0"
#endif

namespace {

using namespace nilhodge;
using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kInput = 2, kMath = 3, kUnsupported = 4 };

struct Failure : std::runtime_error {
  Failure(int code, const std::string& msg, json extra = json::object())
      : std::runtime_error(msg), code(code), extra(std::move(extra)) {}
  int code;
  json extra;
};

struct Result {
  json doc = json::object();
  std::ostringstream text;
  int code = kOk;
};

std::string sig(double x, int digits = 7) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

json sizes(const std::vector<std::size_t>& v) { return json(v); }

std::string join(const std::vector<std::size_t>& v, const std::string& sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure(kInput, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// ---------------------------------------------------------------- algebras

struct AlgebraInput {
  std::string name;
  std::string equations;
  std::vector<std::string> structures;
};

AlgebraInput resolve_algebra(const std::string& arg) {
  for (const auto& e : builtin_catalog())
    if (e.name == arg) return {e.name, e.equations, e.structures};
  return {"", arg, {}};
}

LieAlgebra<Rational> load_algebra(const std::string& equations) {
  try {
    return parse_structure_equations(equations);
  } catch (const StructureParseError& e) {
    throw Failure(kInput, std::string("parse error: ") + e.what());
  } catch (const JacobiFailure& e) {
    throw Failure(kMath, std::string("Jacobi identity fails: ") + e.what());
  }
}

json algebra_json(const AlgebraInput& in, const LieAlgebra<Rational>& g) {
  json j;
  if (!in.name.empty()) j["name"] = in.name;
  j["equations"] = format_structure_equations(g);
  j["dimension"] = g.dim();
  return j;
}

std::string render_table(const std::vector<std::vector<std::size_t>>& h) {
  std::ostringstream out;
  out << "      ";
  for (std::size_t q = 0; q < h[0].size(); ++q) out << " q=" << q;
  out << "\n";
  for (std::size_t p = 0; p < h.size(); ++p) {
    out << "  p=" << p << " ";
    for (auto x : h[p]) {
      std::string s = std::to_string(x);
      out << std::string(4 - std::min<std::size_t>(s.size(), 3), ' ') << s;
    }
    out << "\n";
  }
  return out.str();
}

json checks_json(const std::vector<InvariantCheck>& cs) {
  json out = json::array();
  for (const auto& c : cs) {
    json j;
    j["name"] = c.name;
    j["status"] = c.passed ? "pass" : "fail";
    if (!c.detail.empty()) j["detail"] = c.detail;
    out.push_back(j);
  }
  return out;
}

void render_checks(std::ostream& out, const std::vector<InvariantCheck>& cs, const std::string& indent = "  ") {
  for (const auto& c : cs)
    out << indent << (c.passed ? "[pass] " : "[FAIL] ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")")
        << "\n";
}

/// J from a spec, with integrability enforced (exit 4 and a Nijenhuis witness).
Matrix<Rational> load_structure(const LieAlgebra<Rational>& g, const std::string& spec) {
  Matrix<Rational> j;
  try {
    j = parse_complex_structure_spec(spec, g.dim());
    ComplexStructure<Rational> probe(g, j);
  } catch (const InputError& e) {
    throw Failure(kInput, e.what());
  } catch (const InvalidComplexStructure& e) {
    throw Failure(kInput, std::string("invalid complex structure: ") + e.what());
  }
  for (const auto& nv : nijenhuis(g, j)) {
    if (is_zero_vector(nv.value)) continue;
    json w;
    w["pair"] = {nv.i, nv.j};
    w["value"] = to_string(nv.value);
    throw Failure(kUnsupported,
                  "J is not integrable: N(e" + std::to_string(nv.i) + ", e" + std::to_string(nv.j) + ") = " +
                      to_string(nv.value),
                  json{{"nijenhuis_witness", w}});
  }
  return j;
}

// ---------------------------------------------------------------- check

Result cmd_check(const std::string& arg) {
  Result r;
  auto in = resolve_algebra(arg);
  auto g = load_algebra(in.equations);
  auto s = summarize_algebra(g);
  r.doc["algebra"] = algebra_json(in, g);
  json res;
  res["jacobi"] = "pass";
  res["nilpotent"] = s.nilpotency_class.has_value();
  if (s.nilpotency_class) res["nilpotency_class"] = *s.nilpotency_class;
  res["commutator_dimension"] = s.commutator_dim;
  res["lower_central_series"] = sizes(s.lcs_dims);
  res["valid"] = s.nilpotency_class.has_value();
  r.doc["result"] = res;
  r.text << "algebra " << (in.name.empty() ? "" : in.name + " ") << format_structure_equations(g) << "\n";
  r.text << "  dimension " << g.dim() << "\n  Jacobi identity: pass\n";
  if (s.nilpotency_class) {
    r.text << "  nilpotent of class " << *s.nilpotency_class << "\n";
  } else {
    r.text << "  not nilpotent\n";
    r.code = kMath;
  }
  r.text << "  dim [g,g] = " << s.commutator_dim << "\n  lower central series dims: " << join(s.lcs_dims) << "\n";
  r.text << (r.code == kOk ? "valid\n" : "invalid: not nilpotent\n");
  return r;
}

// ---------------------------------------------------------------- cohomology

struct CohomologyFlags {
  std::string j;
  bool de_rham = false, dolbeault = false, hodge_table = false;
};

Result cmd_cohomology(const std::string& arg, CohomologyFlags f) {
  Result r;
  auto in = resolve_algebra(arg);
  auto g = load_algebra(in.equations);
  if (!f.de_rham && !f.dolbeault && !f.hodge_table) {
    f.de_rham = true;
    f.hodge_table = !f.j.empty();
  }
  r.doc["algebra"] = algebra_json(in, g);
  auto s = summarize_algebra(g);
  json res;
  r.text << "algebra " << (in.name.empty() ? "" : in.name + " ") << format_structure_equations(g) << "\n";
  if (f.de_rham || f.dolbeault) {
    res["betti"] = sizes(s.betti);
    r.text << "Betti numbers b_0..b_" << g.dim() << ": " << join(s.betti) << "\n";
  }
  if (f.dolbeault || f.hodge_table) {
    std::string spec = !f.j.empty() ? f.j : (!in.structures.empty() ? in.structures[0] : "std");
    auto j = load_structure(g, spec);
    ComplexStructure<Rational> cs(g, j);
    auto st = summarize_structure(cs, s.betti);
    json sj;
    sj["J"] = spec;
    sj["hodge"] = st.hodge;
    r.text << "complex structure " << spec << "\n";
    r.text << "Hodge numbers h^{p,q}:\n" << render_table(st.hodge);
    if (f.dolbeault) {
      std::vector<std::size_t> per_degree(2 * cs.complex_dim() + 1, 0);
      for (std::size_t p = 0; p < st.hodge.size(); ++p)
        for (std::size_t q = 0; q < st.hodge[p].size(); ++q) per_degree[p + q] += st.hodge[p][q];
      sj["dolbeault_totals"] = sizes(per_degree);
      sj["frolicher_degenerates_at"] = st.frolicher_degeneration;
      r.text << "sum_{p+q=k} h^{p,q}: " << join(per_degree) << "\n";
      r.text << "Frolicher spectral sequence degenerates at E_" << st.frolicher_degeneration << "\n";
    }
    sj["checks"] = checks_json(st.checks);
    render_checks(r.text, st.checks);
    if (!st.passed()) r.code = kMath;
    res["structure"] = sj;
  }
  r.doc["result"] = res;
  return r;
}

// ---------------------------------------------------------------- toroidal

std::string entry_text(const DeclaredModel& m, const CTower& z) {
  auto e = m.decompose(z);
  return e ? format_period_entry(*e, m.basis()) : to_string(z);
}

std::string entry_text(const DeclaredModel& m, const Tower& t) { return entry_text(m, CTower(t, Tower())); }

template <class M, class F>
json matrix_rows(const M& mat, F&& fmt) {
  json rows = json::array();
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < mat.cols(); ++k) row.push_back(fmt(mat(i, k)));
    rows.push_back(row);
  }
  return rows;
}

void render_rows(std::ostream& out, const json& rows, const std::string& indent) {
  for (const auto& row : rows) {
    out << indent << "(";
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? ", " : "") << row[k].get<std::string>();
    out << ")\n";
  }
}

json ints_json(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

std::string ints_text(const std::vector<Integer>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

struct ToroidalFlags {
  std::optional<std::size_t> scan;
  std::string convergents;
};

std::size_t default_scan_bound() {
  const char* env = std::getenv("NILHODGE_SCAN_BOUND");
  if (!env || !*env) return 1000;
  try {
    std::size_t pos = 0;
    unsigned long v = std::stoul(env, &pos);
    if (pos != std::string(env).size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw Failure(kInput, std::string("NILHODGE_SCAN_BOUND is not a non-negative integer: '") + env + "'");
  }
}

json verdict_json(const ThetaVerdict& v) {
  json j;
  j["kind"] = to_string(v.kind);
  switch (v.kind) {
    case ThetaVerdict::Kind::NotToroidal:
      if (!v.witness.empty()) j["witness"] = ints_json(v.witness);
      break;
    case ThetaVerdict::Kind::ThetaCertified:
      j["radius"] = v.radius.to_string();
      if (v.certificate) {
        const auto& p = v.certificate->minimal_polynomial;
        j["certificate"] = {{"column", v.certificate->column + 1},
                            {"minimal_polynomial", {p.A.get_str(), p.B.get_str(), p.C.get_str()}},
                            {"root_sign", p.sqrt_sign},
                            {"M", v.certificate->M.to_string()}};
        j["verified_up_to"] = v.verified_up_to;
      }
      break;
    case ThetaVerdict::Kind::WildEvidence:
      j["verdict"] = "divergent over computed range";
      break;
    case ThetaVerdict::Kind::Undetermined:
      j["scan_bound"] = v.scan_bound;
      if (v.max_ratio) j["max_ratio"] = sig(*v.max_ratio);
      break;
  }
  if (!v.ratios.empty()) {
    json rs = json::array();
    for (const auto& iv : v.ratios) rs.push_back({sig(iv.lo.to_double()), sig(iv.hi.to_double())});
    j["convergent_ratios"] = rs;
  }
  j["notes"] = v.notes;
  return j;
}

void render_verdict(std::ostream& out, const ThetaVerdict& v) {
  out << "verdict: " << to_string(v.kind) << "\n";
  if (v.kind == ThetaVerdict::Kind::NotToroidal && !v.witness.empty())
    out << "  witness sigma = " << ints_text(v.witness) << "\n";
  if (v.kind == ThetaVerdict::Kind::ThetaCertified) {
    out << "  radius r = " << v.radius.to_string() << "\n";
    if (v.certificate) {
      const auto& p = v.certificate->minimal_polynomial;
      out << "  glueing entry " << v.certificate->column + 1 << " is a root of " << p.A.get_str() << "x^2 + (" << p.B.get_str()
          << ")x + (" << p.C.get_str() << "), M = " << v.certificate->M.to_string() << "\n";
      out << "  dist >= r^-|sigma| checked directly for |sigma| <= " << v.verified_up_to << "\n";
    }
  }
  if (v.kind == ThetaVerdict::Kind::Undetermined) {
    if (v.scan_bound) {
      out << "  scanned |sigma| <= " << v.scan_bound;
      if (v.max_ratio) out << ", max ratio " << sig(*v.max_ratio);
      out << "\n";
    }
  }
  for (std::size_t k = 0; k < v.ratios.size(); ++k)
    out << "  rho_" << k + 1 << " in [" << sig(v.ratios[k].lo.to_double()) << ", " << sig(v.ratios[k].hi.to_double())
        << "]\n";
  for (const auto& n : v.notes) out << "  note: " << n << "\n";
}

Result cmd_toroidal(const std::string& path, const ToroidalFlags& f) {
  Result r;
  PeriodData pd;
  try {
    pd = parse_period_text(read_file(path));
  } catch (const InputError& e) {
    throw Failure(kInput, path + ": " + e.what());
  }
  ThetaOptions opts;
  opts.scan_bound = f.scan ? *f.scan : default_scan_bound();
  if (!f.convergents.empty()) {
    opts.convergents = convergent_series_by_name(f.convergents);
    if (!opts.convergents) throw Failure(kInput, "unknown convergent source '" + f.convergents + "'");
  }
  RemmertMorimoto rm;
  try {
    rm = remmert_morimoto(pd);
  } catch (const PeriodError& e) {
    throw Failure(kMath, e.what());
  } catch (const UnsupportedPeriodData& e) {
    throw Failure(kUnsupported, e.what());
  }
  const auto& nf = rm.normal;
  DeclaredModel model(pd.basis);
  auto verdict = theta_classify(nf, pd, opts);

  json input;
  input["file"] = path;
  input["n"] = pd.n;
  json basis = json::array();
  for (const auto& d : pd.basis) basis.push_back({{"name", d.name}, {"value", d.value ? d.value->describe() : "formal"}});
  input["numbers"] = basis;
  input["rank"] = pd.rank();
  input["scan_bound"] = opts.scan_bound;
  if (opts.convergents) input["convergents"] = opts.convergents->name;
  r.doc["input"] = input;

  auto cz = [&](const CTower& z) { return entry_text(model, z); };
  auto tz = [&](const Tower& t) { return entry_text(model, t); };
  json norm;
  norm["a"] = nf.a;
  norm["b"] = nf.b;
  norm["q"] = nf.q;
  norm["normalized"] = matrix_rows(nf.normalized, cz);
  norm["R"] = matrix_rows(nf.R, tz);
  norm["P"] = matrix_rows(nf.P, cz);
  norm["column_ops"] = matrix_rows(nf.column_ops, [](const Integer& x) { return x.get_str(); });
  norm["notes"] = nf.notes;
  json res;
  res["normal_form"] = norm;
  json rmj;
  rmj["a"] = rm.a;
  rmj["b"] = rm.b;
  rmj["toroidal_dimension"] = nf.toroidal_dim();
  rmj["toroidal_part"] = rm.toroidal ? json(format_period_data(*rm.toroidal)) : json(nullptr);
  res["remmert_morimoto"] = rmj;
  res["theta"] = verdict_json(verdict);

  r.text << "period data: n = " << pd.n << ", rank " << pd.rank() << "\n";
  r.text << "normal form (a = " << nf.a << ", b = " << nf.b << ", q = " << nf.q << "):\n";
  render_rows(r.text, norm["normalized"], "  ");
  if (nf.R.rows()) {
    r.text << "glueing matrix R:\n";
    render_rows(r.text, norm["R"], "  ");
  }
  for (const auto& n : nf.notes) r.text << "  note: " << n << "\n";
  r.text << "decomposition: C^" << rm.a << " x (C^*)^" << rm.b << " x T, dim T = " << nf.toroidal_dim() << "\n";
  render_verdict(r.text, verdict);

  if (verdict.kind != ThetaVerdict::Kind::NotToroidal) {
    std::vector<std::vector<std::size_t>> h(nf.n + 1, std::vector<std::size_t>(nf.q + 1));
    for (std::size_t p = 0; p <= nf.n; ++p)
      for (std::size_t q = 0; q <= nf.q; ++q) h[p][q] = hausdorff_hodge(nf, p, q);
    res["hausdorff_hodge"] = h;
    r.text << (verdict.kind == ThetaVerdict::Kind::ThetaCertified ? "Dolbeault dimensions h^{p,q}(F):\n"
                                                                   : "Hausdorff quotient dimensions h^{p,q}(F):\n")
           << render_table(h);
  }
  r.doc["result"] = res;
  return r;
}

// ---------------------------------------------------------------- verify-theorem

struct TheoremFlags {
  std::string j, lattice, ideal, f0, g0;
  std::optional<std::size_t> scan;
};

Span<Tower> real_span(const std::string& list, std::size_t n, const std::string& what) {
  std::vector<Vec<Tower>> v;
  try {
    for (auto [prefix, k] : parse_basis_list(list, {"e"})) {
      if (k >= n) throw Failure(kInput, what + ": e" + std::to_string(k + 1) + " exceeds the dimension");
      v.push_back(Span<Tower>::unit(n, k));
    }
  } catch (const InputError& e) {
    throw Failure(kInput, what + ": " + e.what());
  }
  return Span<Tower>(n, v);
}

Result cmd_verify(const std::string& arg, const TheoremFlags& f) {
  Result r;
  auto in = resolve_algebra(arg);
  auto g = load_algebra(in.equations);
  std::size_t n = g.dim();
  auto j = load_structure(g, f.j);
  LatticeSpec ls;
  try {
    ls = parse_lattice_text(read_file(f.lattice));
  } catch (const InputError& e) {
    throw Failure(kInput, f.lattice + ": " + e.what());
  }
  if (ls.n != n) throw Failure(kInput, "lattice dimension " + std::to_string(ls.n) + " does not match the algebra");
  ComplexStructure<Tower> cs(lift<Tower>(g), lift<Tower>(j));
  std::optional<QStructure<Tower>> lattice;
  try {
    lattice.emplace(n, ls.generators);
  } catch (const std::invalid_argument& e) {
    throw Failure(kMath, std::string("lattice generators: ") + e.what());
  }
  auto fspan = real_span(f.ideal, n, "--ideal");
  auto f0span = real_span(f.f0, n, "--f0");
  std::vector<Vec<CTower>> g0;
  try {
    for (auto [prefix, k] : parse_basis_list(f.g0, {"Xb", "X"})) {
      if (k >= cs.complex_dim()) throw Failure(kInput, "--g0: index " + std::to_string(k + 1) + " out of range");
      g0.push_back(prefix == "Xb" ? cs.antiholomorphic_basis()[k] : cs.holomorphic_basis()[k]);
    }
  } catch (const InputError& e) {
    throw Failure(kInput, std::string("--g0: ") + e.what());
  }
  Span<CTower> g0span(n, g0);

  auto subring = is_lie_subring(cs.algebra(), *lattice);
  auto rep = conjecture_status(cs, *lattice, fspan, f0span, g0span);
  std::optional<LeafAnalysis> leaf;
  if (rep.verdict == ConjectureVerdict::TheoremApplies && !rep.gamma_rational) {
    ThetaOptions opts;
    opts.scan_bound = f.scan ? *f.scan : default_scan_bound();
    try {
      leaf = leaf_analysis(cs, *lattice, fspan, ls.parameter_value, opts);
    } catch (const UnsupportedPeriodData& e) {
      throw Failure(kUnsupported, std::string("leaf analysis: ") + e.what());
    }
    rep = conjecture_status(cs, *lattice, fspan, f0span, g0span, leaf->leaf_status());
  }

  json input;
  input["algebra"] = algebra_json(in, g);
  input["J"] = f.j;
  input["lattice"] = f.lattice;
  input["parameter"] = ls.parameter_name.empty()
                           ? json(nullptr)
                           : json({{"name", ls.parameter_name},
                                   {"symbolic", ls.symbolic_parameter},
                                   {"value", ls.parameter_value ? ls.parameter_value->describe() : "formal"}});
  input["ideal"] = f.ideal;
  input["f0"] = f.f0;
  input["g0"] = f.g0;
  r.doc["input"] = input;

  json res;
  res["lattice_is_lie_subring"] = subring.is_subring;
  json items = json::array();
  for (const auto& it : rep.items) {
    json ij{{"name", it.name}, {"status", it.status}};
    if (!it.detail.empty()) ij["detail"] = it.detail;
    items.push_back(ij);
  }
  res["checks"] = items;
  res["gamma_rational"] = rep.gamma_rational;
  res["rational_dimension"] = rep.rational_dim;
  if (leaf) {
    DeclaredModel model(leaf->period.basis);
    json lj;
    lj["classification"] = leaf->classification();
    lj["lattice_rank"] = leaf->lattice_rank;
    lj["period_data"] = format_period_data(leaf->period);
    lj["normalized"] = matrix_rows(leaf->normal.normalized, [&](const CTower& z) { return entry_text(model, z); });
    if (leaf->verdict) lj["theta"] = verdict_json(*leaf->verdict);
    lj["status"] = to_string(leaf->leaf_status());
    res["leaf"] = lj;
  }
  res["verdict"] = to_string(rep.verdict);
  res["summary"] = rep.summary;
  r.doc["result"] = res;

  r.text << "algebra " << (in.name.empty() ? "" : in.name + " ") << format_structure_equations(g) << ", J " << f.j
         << "\n";
  r.text << "lattice " << f.lattice << (subring.is_subring ? " (Lie subring)" : " (not a Lie subring)") << "\n";
  for (const auto& it : rep.items)
    r.text << "  [" << it.status << "] " << it.name << (it.detail.empty() ? "" : " (" + it.detail + ")") << "\n";
  if (leaf) {
    r.text << "leaf F: " << leaf->classification() << ", lattice rank " << leaf->lattice_rank << "\n";
    render_rows(r.text, res["leaf"]["normalized"], "  ");
    if (leaf->verdict) render_verdict(r.text, *leaf->verdict);
  }
  r.text << rep.summary << "\n";
  return r;
}

// ---------------------------------------------------------------- catalog

std::vector<CatalogEntry> load_catalog(const std::string& path) {
  auto entries = builtin_catalog();
  if (path.empty()) return entries;
  std::vector<CatalogEntry> user;
  try {
    std::istringstream in(read_file(path));
    user = parse_catalog(in);
  } catch (const InputError& e) {
    throw Failure(kInput, path + ": " + e.what());
  }
  for (const auto& u : user) {
    for (const auto& b : entries)
      if (b.name == u.name)
        throw Failure(kInput, path + ": line " + std::to_string(u.line) + ": entry '" + u.name +
                                  "' duplicates a built-in entry");
    entries.push_back(u);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return entries;
}

Result cmd_catalog_run(const std::string& filter, const std::string& path) {
  Result r;
  auto entries = load_catalog(path);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  if (!filter.empty()) {
    std::erase_if(entries, [&](const CatalogEntry& e) { return e.name != filter; });
    if (entries.empty()) throw Failure(kInput, "no catalog entry named '" + filter + "'");
  }
  json list = json::array();
  std::size_t failed = 0;
  for (const auto& e : entries) {
    json ej;
    ej["name"] = e.name;
    ej["equations"] = e.equations;
    if (!e.note.empty()) ej["note"] = e.note;
    std::string where = e.line ? " (" + path + " line " + std::to_string(e.line) + ")" : "";
    r.text << e.name << " " << e.equations << where << "\n";
    bool ok = true;
    try {
      auto g = load_algebra(e.equations);
      auto s = summarize_algebra(g);
      ej["betti"] = sizes(s.betti);
      ej["checks"] = checks_json(s.checks);
      r.text << "  Betti numbers: " << join(s.betti) << "\n";
      render_checks(r.text, s.checks);
      ok = s.passed();
      json structures = json::array();
      for (const auto& spec : e.structures) {
        json sj;
        sj["J"] = spec;
        try {
          auto j = load_structure(g, spec);
          auto st = summarize_structure(ComplexStructure<Rational>(g, j), s.betti);
          sj["integrable"] = true;
          sj["hodge"] = st.hodge;
          sj["checks"] = checks_json(st.checks);
          r.text << "  J " << spec << ": integrable\n" << render_table(st.hodge);
          render_checks(r.text, st.checks, "    ");
          ok = ok && st.passed();
        } catch (const Failure& f) {
          sj["integrable"] = false;
          sj["error"] = f.what();
          r.text << "  J " << spec << ": " << f.what() << "\n";
          ok = false;
        }
        structures.push_back(sj);
      }
      ej["structures"] = structures;
    } catch (const Failure& f) {
      ej["error"] = f.what();
      r.text << "  error: " << f.what() << "\n";
      ok = false;
    }
    ej["status"] = ok ? "pass" : "fail";
    failed += ok ? 0 : 1;
    list.push_back(ej);
  }
  r.doc["result"] = {{"entries", list}, {"passed", entries.size() - failed}, {"failed", failed}};
  r.text << entries.size() - failed << " of " << entries.size() << " entries pass\n";
  if (failed) r.code = kMath;
  return r;
}

Result cmd_catalog_list(const std::string& path) {
  Result r;
  json list = json::array();
  for (const auto& e : load_catalog(path)) {
    list.push_back({{"name", e.name}, {"equations", e.equations}, {"structures", e.structures}, {"note", e.note}});
    r.text << e.name << "  " << e.equations << (e.note.empty() ? "" : "  # " + e.note) << "\n";
  }
  r.doc["result"] = {{"entries", list}};
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant Dolbeault cohomology of nilmanifolds and toroidal groups"};
  app.set_version_flag("--version", std::string(NILHODGE_VERSION));
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Print the structured JSON document instead of text");
  app.fallthrough();

  std::string algebra, file, filter, catalog_file;
  CohomologyFlags cf;
  ToroidalFlags tf;
  TheoremFlags thf;
  std::size_t scan = 0, scan_theorem = 0;

  auto* check = app.add_subcommand("check", "Parse structure equations and validate Jacobi and nilpotency");
  check->add_option("algebra", algebra, "Structure equations such as (0,0,0,12,13,23) or a catalog name")->required();

  auto* coh = app.add_subcommand("cohomology", "de Rham and Dolbeault cohomology of a nilpotent Lie algebra");
  coh->add_option("algebra", algebra, "Structure equations or a catalog name")->required();
  coh->add_option("--J", cf.j, "Complex structure: std, pairs:12,34,... or matrix:row;row;...");
  coh->add_flag("--de-rham", cf.de_rham, "Betti numbers");
  coh->add_flag("--dolbeault", cf.dolbeault, "Hodge numbers with totals and Frolicher degeneration");
  coh->add_flag("--hodge-table", cf.hodge_table, "Hodge numbers h^{p,q} as a grid");

  auto* tor = app.add_subcommand("toroidal", "Normal form and theta/wild classification of period data");
  tor->add_option("period-file", file, "Period data file")->required()->check(CLI::ExistingFile);
  auto* scan_opt = tor->add_option("--scan", scan, "Scan bound N for |sigma| (default $NILHODGE_SCAN_BOUND or 1000)");
  tor->add_option("--convergents", tf.convergents,
                  "Convergent source: liouville, self-power, double-exponential or power-tower");

  auto* thm = app.add_subcommand("verify-theorem", "Hypothesis checklist for the toroidal foliation theorem");
  thm->add_option("algebra", algebra, "Structure equations or a catalog name")->required();
  thm->add_option("--J", thf.j, "Complex structure")->required();
  thm->add_option("--lattice", thf.lattice, "Lattice file")->required()->check(CLI::ExistingFile);
  thm->add_option("--ideal", thf.ideal, "Basis of f, e.g. e3,e4,e5,e6")->required();
  thm->add_option("--f0", thf.f0, "Basis of f0, e.g. e5,e6")->required();
  thm->add_option("--g0", thf.g0, "Basis of g0^{0,1}, e.g. Xb1,Xb3")->required();
  auto* thm_scan = thm->add_option("--scan", scan_theorem, "Scan bound for the leaf verdict");

  auto* cat = app.add_subcommand("catalog", "Built-in and user catalogs of nilpotent Lie algebras");
  cat->require_subcommand(1);
  auto* run = cat->add_subcommand("run", "Run the invariant suite over catalog entries");
  run->add_option("--filter", filter, "Only the entry with this name");
  run->add_option("--catalog", catalog_file, "Additional catalog file")->check(CLI::ExistingFile);
  auto* list = cat->add_subcommand("list", "List catalog entries");
  list->add_option("--catalog", catalog_file, "Additional catalog file")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInput;
  }

  std::vector<std::string> echo;
  for (int i = 1; i < argc; ++i) echo.emplace_back(argv[i]);
  json doc;
  doc["tool"] = "nilhodge";
  doc["version"] = NILHODGE_VERSION;
  doc["command"] = echo;

  Result r;
  try {
    if (*check) {
      r = cmd_check(algebra);
    } else if (*coh) {
      r = cmd_cohomology(algebra, cf);
    } else if (*tor) {
      if (*scan_opt) tf.scan = scan;
      r = cmd_toroidal(file, tf);
    } else if (*thm) {
      if (*thm_scan) thf.scan = scan_theorem;
      r = cmd_verify(algebra, thf);
    } else if (*run) {
      r = cmd_catalog_run(filter, catalog_file);
    } else if (*list) {
      r = cmd_catalog_list(catalog_file);
    }
  } catch (const Failure& f) {
    doc["error"] = {{"exit_code", f.code}, {"message", f.what()}};
    for (auto it = f.extra.begin(); it != f.extra.end(); ++it) doc["error"][it.key()] = it.value();
    if (as_json) std::cout << doc.dump(2) << "\n";
    else std::cerr << "error: " << f.what() << "\n";
    return f.code;
  }
  for (auto it = r.doc.begin(); it != r.doc.end(); ++it) doc[it.key()] = it.value();
  doc["exit_code"] = r.code;
  if (as_json) std::cout << doc.dump(2) << "\n";
  else std::cout << r.text.str();
  return r.code;
}
