#include "nilhodge/toroidal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace nilhodge {

namespace {

std::optional<int> sign_of(const QSqrt& x) {
  const Rational& u = x.rational_part();
  const Rational& v = x.surd_part();
  if (v.is_zero() || u.is_zero()) return v.is_zero() ? u.sign() : v.sign();
  if (u.sign() == v.sign()) return u.sign();
  Rational uu = u * u, vv = v * v * Rational(x.radicand());
  return uu > vv ? u.sign() : v.sign();
}

std::optional<int> sign_of(const Tower& t) {
  if (t.is_zero()) return 0;
  if (!t.is_constant()) return std::nullopt;
  return sign_of(t.constant_value() / t.denominator().coeff(0));
}

QSqrt surd_value(const QuadraticSurd& s) {
  Integer disc = s.discriminant();
  if (!disc.fits_slong_p()) throw UnsupportedPeriodData("surd discriminant too large");
  QSqrt root = QSqrt::sqrt(disc.get_si());
  QSqrt num = QSqrt(Rational(Integer(-s.B))) + (s.sqrt_sign < 0 ? -root : root);
  return num / QSqrt(Rational(Integer(2 * s.A)));
}

Matrix<Tower> multiplication_by_i(std::size_t n) {
  Matrix<Tower> j(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    j(n + k, k) = one<Tower>();
    j(k, n + k) = -one<Tower>();
  }
  return j;
}

Vec<CTower> to_complex(const Vec<Tower>& real, std::size_t n) {
  Vec<CTower> z;
  for (std::size_t k = 0; k < n; ++k) z.emplace_back(real[k], real[n + k]);
  return z;
}

Integer lcm_int(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

std::string join_ints(const std::vector<Integer>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::vector<Matrix<Rational>> decompose_matrix(const Matrix<Tower>& r, const DeclaredModel& model) {
  std::vector<Matrix<Rational>> parts(model.size(), Matrix<Rational>(r.rows(), r.cols()));
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t k = 0; k < r.cols(); ++k) {
      auto c = model.decompose(r(i, k));
      if (!c)
        throw UnsupportedPeriodData("glueing entry " + to_string(r(i, k)) +
                                    " is not a rational combination of the declared numbers");
      for (std::size_t j = 0; j < parts.size(); ++j) parts[j](i, k) = (*c)[j];
    }
  return parts;
}

/// Z-basis (columns) of {σ ∈ Z^u : σ^t R ∈ Z^{2q}} given R = Σ α_j R_j.
IntMatrix integral_functionals(const std::vector<Matrix<Rational>>& parts) {
  std::size_t u = parts[0].rows(), c = parts[0].cols();
  if (u == 0) return IntMatrix(0, 0);
  std::vector<Vec<Rational>> constraints;
  for (std::size_t j = 1; j < parts.size(); ++j)
    for (std::size_t k = 0; k < c; ++k) {
      Vec<Rational> row = parts[j].column(k);
      if (!is_zero_vector(row)) constraints.push_back(row);
    }
  IntMatrix basis = constraints.empty() ? IntMatrix::identity(u) : integer_kernel(Matrix<Rational>::from_rows(u, constraints));
  if (basis.cols() == 0 || c == 0) return basis;
  Matrix<Rational> m(c, basis.cols());
  for (std::size_t k = 0; k < c; ++k)
    for (std::size_t t = 0; t < basis.cols(); ++t) {
      Rational acc(0);
      for (std::size_t i = 0; i < u; ++i) acc += parts[0](i, k) * Rational(basis(i, t));
      m(k, t) = acc;
    }
  return basis * integral_preimage(m);
}

struct BasicForm {
  std::size_t q = 0;
  std::vector<std::size_t> order;  ///< generator indices: unit columns, then the rest
  std::vector<int> sign;           ///< per position in `order`
  std::vector<Vec<CTower>> units, f0_basis;
  Matrix<Tower> R;
  Matrix<CTower> P;
  bool flipped = false;
};

/// Splits generators (real vectors in R^{2n}) into those forming the identity
/// block and the rest, which carry R and P.
BasicForm basic_form(const std::vector<Vec<Tower>>& gens, std::size_t n) {
  BasicForm bf;
  std::size_t dim = 2 * n;
  Span<Tower> s(dim, gens);
  Span<Tower> f0 = s.intersect(s.image(multiplication_by_i(n)));
  bf.q = f0.dim() / 2;

  Span<Tower> acc = f0;
  std::vector<std::size_t> unit_idx, rest_idx;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!acc.contains(gens[i])) {
      unit_idx.push_back(i);
      acc = acc + Span<Tower>(dim, {gens[i]});
    } else {
      rest_idx.push_back(i);
    }
  }
  std::size_t u = unit_idx.size(), c = rest_idx.size();

  std::vector<Vec<Tower>> cols;
  for (auto i : unit_idx) cols.push_back(gens[i]);
  for (const auto& v : f0.basis()) cols.push_back(v);
  Matrix<Tower> frame = Matrix<Tower>::from_columns(dim, cols);
  Matrix<Tower> r(u, c);
  std::vector<Vec<CTower>> w;
  for (std::size_t t = 0; t < c; ++t) {
    auto coords = solve(frame, gens[rest_idx[t]]);
    if (!coords) throw std::logic_error("generator outside its own span");
    Vec<Tower> rem = gens[rest_idx[t]];
    for (std::size_t j = 0; j < u; ++j) {
      r(j, t) = (*coords)[j];
      rem = axpy(-(*coords)[j], gens[unit_idx[j]], rem);
    }
    w.push_back(to_complex(rem, n));
  }

  std::vector<std::size_t> chosen, others;
  Span<CTower> wacc(n);
  for (std::size_t t = 0; t < c; ++t) {
    if (chosen.size() < bf.q && !wacc.contains(w[t])) {
      chosen.push_back(t);
      wacc = wacc + Span<CTower>(n, {w[t]});
    } else {
      others.push_back(t);
    }
  }
  std::vector<std::size_t> perm = chosen;
  perm.insert(perm.end(), others.begin(), others.end());
  for (auto t : chosen) bf.f0_basis.push_back(w[t]);

  bf.R = Matrix<Tower>(u, c);
  bf.P = Matrix<CTower>(bf.q, c);
  Matrix<CTower> fmat = Matrix<CTower>::from_columns(n, bf.f0_basis);
  for (std::size_t t = 0; t < c; ++t) {
    for (std::size_t j = 0; j < u; ++j) bf.R(j, t) = r(j, perm[t]);
    if (bf.q == 0) continue;
    auto pc = solve(fmat, w[perm[t]]);
    if (!pc) throw std::logic_error("f0 component outside f0");
    for (std::size_t k = 0; k < bf.q; ++k) bf.P(k, t) = (*pc)[k];
  }

  bf.order = unit_idx;
  for (auto t : perm) bf.order.push_back(rest_idx[t]);
  bf.sign.assign(bf.order.size(), 1);

  // For an elliptic curve factor, orient the periods as (1, τ) with Im τ > 0.
  if (bf.q == 1) {
    auto s = sign_of(bf.P(0, 1).im());
    if (s && *s < 0) {
      bf.flipped = true;
      for (auto& x : bf.f0_basis[0]) x = -x;
      bf.sign[u] = -1;
      for (std::size_t j = 0; j < u; ++j) bf.R(j, 0) = -bf.R(j, 0);
      bf.P(0, 1) = -bf.P(0, 1);
    }
  }
  for (auto i : unit_idx) bf.units.push_back(to_complex(gens[i], n));
  return bf;
}

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

// ---------------------------------------------------------------- model

DeclaredModel::DeclaredModel(std::vector<DeclaredNumber> basis) : basis_(std::move(basis)) {
  std::map<std::string, int> names;
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    const auto& d = basis_[j];
    if (d.name.empty() || d.name == "i" || d.name == "1") throw PeriodError("invalid declared number name '" + d.name + "'");
    if (names[d.name]++) throw PeriodError("declared number '" + d.name + "' appears twice");
    if (d.value && d.value->is_rational())
      throw PeriodError("declared number '" + d.name + "' is rational, so it is not independent of 1");
    if (d.value && d.value->is_surd()) {
      if (surd_slot_) {
        QSqrt prev = surd_value(basis_[*surd_slot_ - 1].value->as_surd());
        QSqrt cur = surd_value(d.value->as_surd());
        if (prev.radicand() == cur.radicand())
          throw PeriodError("declared numbers '" + basis_[*surd_slot_ - 1].name + "' and '" + d.name +
                            "' are linearly dependent over Q together with 1");
        throw UnsupportedPeriodData("at most one quadratic surd can be declared");
      }
      surd_slot_ = j + 1;
      values_.push_back(Tower(surd_value(d.value->as_surd())));
    } else {
      if (param_slot_) throw UnsupportedPeriodData("at most one formal or series number can be declared");
      param_slot_ = j + 1;
      values_.push_back(Tower::parameter());
    }
  }
}

Tower DeclaredModel::value(const Vec<Rational>& coeffs) const {
  if (coeffs.size() != size()) throw PeriodError("entry has the wrong number of coefficients");
  Tower t = Tower(coeffs[0]);
  for (std::size_t j = 1; j < coeffs.size(); ++j)
    if (!coeffs[j].is_zero()) t = t + Tower(coeffs[j]) * values_[j - 1];
  return t;
}

CTower DeclaredModel::value(const PeriodEntry& e) const { return CTower(value(e.re), value(e.im)); }

std::optional<Vec<Rational>> DeclaredModel::decompose(const Tower& t) const {
  Vec<Rational> out(size(), Rational(0));
  if (t.is_zero()) return out;
  if (t.denominator().degree() != 0) return std::nullopt;
  QSqrt c = t.denominator().coeff(0);
  const auto& num = t.numerator();
  if (num.degree() > 1) return std::nullopt;
  if (num.degree() == 1) {
    QSqrt x = num.coeff(1) / c;
    if (!param_slot_ || !x.in_base_field()) return std::nullopt;
    out[*param_slot_] += x.rational_part();
  }
  QSqrt x = num.coeff(0) / c;
  out[0] += x.rational_part();
  if (!x.in_base_field()) {
    if (!surd_slot_) return std::nullopt;
    QSqrt alpha = values_[*surd_slot_ - 1].constant_value();
    if (alpha.radicand() != x.radicand()) return std::nullopt;
    Rational coef = x.surd_part() / alpha.surd_part();
    out[*surd_slot_] += coef;
    out[0] -= coef * alpha.rational_part();
  }
  return out;
}

std::optional<PeriodEntry> DeclaredModel::decompose(const CTower& z) const {
  auto re = decompose(z.re()), im = decompose(z.im());
  if (!re || !im) return std::nullopt;
  return PeriodEntry{*re, *im};
}

bool DeclaredModel::all_numeric() const {
  return std::all_of(basis_.begin(), basis_.end(), [](const DeclaredNumber& d) { return !d.is_formal(); });
}

// ---------------------------------------------------------------- validation

Matrix<Tower> realified_generators(const PeriodData& pd) {
  DeclaredModel model(pd.basis);
  Matrix<Tower> g(2 * pd.n, pd.rank());
  for (std::size_t c = 0; c < pd.rank(); ++c) {
    if (pd.generators[c].size() != pd.n)
      throw PeriodError("generator " + std::to_string(c + 1) + " has " + std::to_string(pd.generators[c].size()) +
                        " entries, expected " + std::to_string(pd.n));
    for (std::size_t k = 0; k < pd.n; ++k) {
      g(k, c) = model.value(pd.generators[c][k].re);
      g(pd.n + k, c) = model.value(pd.generators[c][k].im);
    }
  }
  return g;
}

Matrix<CTower> complex_generators(const PeriodData& pd) {
  Matrix<Tower> g = realified_generators(pd);
  Matrix<CTower> out(pd.n, pd.rank());
  for (std::size_t c = 0; c < pd.rank(); ++c)
    for (std::size_t k = 0; k < pd.n; ++k) out(k, c) = CTower(g(k, c), g(pd.n + k, c));
  return out;
}

void validate(const PeriodData& pd) {
  Matrix<Tower> g = realified_generators(pd);
  auto ker = kernel_basis(g);
  if (!ker.empty()) {
    std::string rel;
    for (std::size_t c = 0; c < ker[0].size(); ++c) {
      if (ker[0][c].is_zero()) continue;
      rel += (rel.empty() ? "" : " + ") + ("(" + to_string(ker[0][c]) + ")*g" + std::to_string(c + 1));
    }
    throw PeriodError("generators are linearly dependent over R: " + rel + " = 0");
  }
}

// ---------------------------------------------------------------- normal form

NormalForm toroidal_normalize(const PeriodData& pd) {
  validate(pd);
  DeclaredModel model(pd.basis);
  std::size_t n = pd.n, m = pd.rank();
  Matrix<Tower> g = realified_generators(pd);
  Matrix<CTower> gc = complex_generators(pd);
  std::vector<Vec<Tower>> gens;
  for (std::size_t c = 0; c < m; ++c) gens.push_back(g.column(c));

  NormalForm nf;
  nf.n = n;
  nf.m = m;
  BasicForm bf1 = basic_form(gens, n);
  auto parts1 = decompose_matrix(bf1.R, model);
  IntMatrix lam = integral_functionals(parts1);
  std::size_t u1 = bf1.R.rows();
  nf.b = u1 == 0 ? 0 : lam.cols();
  nf.R_initial = bf1.R;
  if (nf.b) nf.witness = *check_irrationality(parts1);

  IntMatrix x(m, nf.b), k;
  if (nf.b == 0) {
    k = IntMatrix::identity(m);
  } else {
    IntMatrix phi(nf.b, m);
    for (std::size_t i = 0; i < nf.b; ++i) {
      for (std::size_t t = 0; t < u1; ++t) phi(i, bf1.order[t]) = lam(t, i);
      for (std::size_t t = 0; t < bf1.R.cols(); ++t) {
        Rational acc(0);
        for (std::size_t s = 0; s < u1; ++s) acc += Rational(lam(s, i)) * parts1[0](s, t);
        if (!acc.is_integer()) throw std::logic_error("integral functional takes a non-integer value");
        phi(i, bf1.order[u1 + t]) = bf1.sign[u1 + t] * acc.numerator();
      }
    }
    SmithForm snf = smith_normal_form(phi);
    for (std::size_t i = 0; i < nf.b; ++i)
      if (snf.D(i, i) != 1) throw std::logic_error("integral functionals are not onto Z^b");
    IntMatrix vb(m, nf.b);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < nf.b; ++c) vb(r, c) = snf.V(r, c);
    x = vb * snf.U;
    k = integer_kernel(phi);
    nf.notes.push_back("split off " + std::to_string(nf.b) + " factor(s) C^* along integral functionals");
  }

  std::vector<Vec<Tower>> gens2;
  for (std::size_t c = 0; c < k.cols(); ++c) {
    Vec<Tower> v(2 * n, zero<Tower>());
    for (std::size_t i = 0; i < m; ++i)
      if (k(i, c) != 0) v = axpy(Tower(Rational(k(i, c))), gens[i], v);
    gens2.push_back(std::move(v));
  }
  BasicForm bf2 = basic_form(gens2, n);
  nf.q = bf2.q;
  if (bf2.flipped) nf.notes.push_back("torus coordinate negated so that Im τ > 0");

  std::vector<Vec<CTower>> xc;
  for (std::size_t c = 0; c < nf.b; ++c) {
    Vec<CTower> v(n, zero<CTower>());
    for (std::size_t i = 0; i < m; ++i)
      if (x(i, c) != 0) v = axpy(CTower(Rational(x(i, c))), gc.column(i), v);
    xc.push_back(std::move(v));
  }
  std::vector<Vec<CTower>> spanning = xc;
  spanning.insert(spanning.end(), bf2.units.begin(), bf2.units.end());
  spanning.insert(spanning.end(), bf2.f0_basis.begin(), bf2.f0_basis.end());
  Span<CTower> sc(n, spanning);
  std::vector<Vec<CTower>> complement;
  for (std::size_t i = 0; i < n && sc.dim() < n; ++i) {
    Vec<CTower> e = Span<CTower>::unit(n, i);
    if (sc.contains(e)) continue;
    complement.push_back(e);
    sc = sc + Span<CTower>(n, {e});
  }
  nf.a = complement.size();

  std::vector<Vec<CTower>> basis = complement;
  basis.insert(basis.end(), spanning.begin(), spanning.end());
  if (basis.size() != n) throw std::logic_error("toroidal coordinates do not form a basis");
  nf.coordinate_change = Matrix<CTower>::from_columns(n, basis);

  std::size_t m2 = k.cols();
  nf.column_ops = IntMatrix(m, m);
  for (std::size_t c = 0; c < nf.b; ++c)
    for (std::size_t i = 0; i < m; ++i) nf.column_ops(i, c) = x(i, c);
  for (std::size_t t = 0; t < m2; ++t)
    for (std::size_t i = 0; i < m; ++i) nf.column_ops(i, nf.b + t) = bf2.sign[t] * k(i, bf2.order[t]);

  Matrix<CTower> ops(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) ops(i, j) = CTower(Rational(nf.column_ops(i, j)));
  nf.normalized = inverse(nf.coordinate_change) * gc * ops;
  nf.R = bf2.R;
  nf.P = bf2.P;
  nf.R_parts = decompose_matrix(nf.R, model);
  return nf;
}

std::optional<std::vector<Integer>> check_irrationality(const std::vector<Matrix<Rational>>& parts) {
  if (parts.empty() || parts[0].rows() == 0) return std::nullopt;
  IntMatrix lam = integral_functionals(parts);
  if (lam.cols() == 0) return std::nullopt;
  std::optional<std::vector<Integer>> best;
  Integer best_norm;
  for (std::size_t c = 0; c < lam.cols(); ++c) {
    std::vector<Integer> v = lam.column(c);
    Integer norm = 0;
    for (const auto& e : v) norm = std::max(norm, Integer(abs(e)));
    if (!best || norm < best_norm) {
      best = v;
      best_norm = norm;
    }
  }
  for (const auto& e : *best) {
    if (e == 0) continue;
    if (e < 0)
      for (auto& f : *best) f = -f;
    break;
  }
  return best;
}

std::optional<std::vector<Integer>> check_irrationality(const Matrix<Tower>& r, const DeclaredModel& model) {
  return check_irrationality(decompose_matrix(r, model));
}

RemmertMorimoto remmert_morimoto(const PeriodData& pd) {
  RemmertMorimoto rm;
  rm.normal = toroidal_normalize(pd);
  rm.a = rm.normal.a;
  rm.b = rm.normal.b;
  std::size_t nt = rm.normal.toroidal_dim();
  if (nt == 0) return rm;
  DeclaredModel model(pd.basis);
  PeriodData t;
  t.n = nt;
  t.basis = pd.basis;
  std::size_t row0 = rm.a + rm.b;
  for (std::size_t c = rm.b; c < pd.rank(); ++c) {
    std::vector<PeriodEntry> gen;
    for (std::size_t r = 0; r < nt; ++r) {
      auto e = model.decompose(rm.normal.normalized(row0 + r, c));
      if (!e) throw UnsupportedPeriodData("torus period outside the declared numbers");
      gen.push_back(*e);
    }
    t.generators.push_back(std::move(gen));
  }
  rm.toroidal = std::move(t);
  return rm;
}

// ---------------------------------------------------------------- theta / wild

std::string to_string(ThetaVerdict::Kind k) {
  switch (k) {
    case ThetaVerdict::Kind::NotToroidal: return "not toroidal";
    case ThetaVerdict::Kind::ThetaCertified: return "toroidal theta (certified)";
    case ThetaVerdict::Kind::WildEvidence: return "toroidal wild (evidence)";
    case ThetaVerdict::Kind::Undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

/// dist(x, Z) for x in the interval, or nullopt when the interval is too wide
/// to pin down the nearest integer.
std::optional<Interval> distance_to_integers(const Interval& x) {
  Rational half(1, 2);
  Integer tau = (x.mid() + half).floor();
  Rational t(tau);
  if (x.lo < t - half || x.hi > t + half) return std::nullopt;
  Rational a = (x.lo - t).abs(), b = (x.hi - t).abs();
  if (x.contains(t)) return Interval{Rational(0), std::max(a, b)};
  return Interval{std::min(a, b), std::max(a, b)};
}

/// Enclosures of the declared numbers at a fixed width, computed lazily.
class EnclosureCache {
 public:
  explicit EnclosureCache(const DeclaredModel& model) : model_(model) {}

  /// Interval for Σ coeffs[j] α_j; throws PrecisionUnavailable.
  Interval eval(const Vec<Rational>& coeffs, int level) {
    Interval acc = Interval::point(coeffs[0]);
    for (std::size_t j = 1; j < coeffs.size(); ++j) {
      if (coeffs[j].is_zero()) continue;
      acc = acc + Interval::point(coeffs[j]) * get(j, level);
    }
    return acc;
  }

  static Rational width(int level) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, 20u << level);
    return Rational(Integer(1), p);
  }
  static constexpr int kLevels = 7;

 private:
  const Interval& get(std::size_t slot, int level) {
    auto key = std::make_pair(slot, level);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const auto& d = model_.basis()[slot - 1];
    if (!d.value) throw PrecisionUnavailable("declared number '" + d.name + "' has no numeric value");
    return cache_.emplace(key, enclosure(*d.value, width(level))).first->second;
  }

  const DeclaredModel& model_;
  std::map<std::pair<std::size_t, int>, Interval> cache_;
};

/// Coefficients of (R^t σ)_k on the declared numbers.
Vec<Rational> column_combination(const std::vector<Matrix<Rational>>& parts, const std::vector<long>& sigma,
                                 std::size_t k) {
  Vec<Rational> out(parts.size(), Rational(0));
  for (std::size_t j = 0; j < parts.size(); ++j)
    for (std::size_t i = 0; i < sigma.size(); ++i)
      if (sigma[i]) out[j] += Rational(sigma[i]) * parts[j](i, k);
  return out;
}

/// Max-norm dist(R^t σ, Z^{2q}) enclosed, refining until the lower end is
/// positive.
std::optional<Interval> max_distance(const std::vector<Matrix<Rational>>& parts, const std::vector<long>& sigma,
                                     EnclosureCache& cache, const std::optional<Rational>& threshold = std::nullopt) {
  std::size_t cols = parts[0].cols();
  for (int level = 0; level < EnclosureCache::kLevels; ++level) {
    Interval best{Rational(0), Rational(0)};
    bool ok = true;
    for (std::size_t k = 0; k < cols && ok; ++k) {
      auto d = distance_to_integers(cache.eval(column_combination(parts, sigma, k), level));
      if (!d) {
        ok = false;
        break;
      }
      best.lo = std::max(best.lo, d->lo);
      best.hi = std::max(best.hi, d->hi);
    }
    if (!ok || best.lo.sign() <= 0) continue;
    if (threshold && best.lo < *threshold && best.hi >= *threshold) continue;
    return best;
  }
  return std::nullopt;
}

Integer ceil_abs_bound(const Interval& x) { return std::max(x.lo.abs(), x.hi.abs()).ceil(); }

struct SurdShape {
  std::size_t column = 0;
  std::size_t slot = 0;
  Rational c0, c1;  ///< entry = c0 + c1 α_slot
};

/// Single glueing row with exactly one irrational entry built from one
/// declared number.
std::optional<SurdShape> single_irrational_entry(const std::vector<Matrix<Rational>>& parts) {
  if (parts[0].rows() != 1) return std::nullopt;
  std::optional<SurdShape> shape;
  for (std::size_t k = 0; k < parts[0].cols(); ++k) {
    std::vector<std::size_t> slots;
    for (std::size_t j = 1; j < parts.size(); ++j)
      if (!parts[j](0, k).is_zero()) slots.push_back(j);
    if (slots.empty()) continue;
    if (shape || slots.size() > 1) return std::nullopt;
    shape = SurdShape{k, slots[0], parts[0](0, k), parts[slots[0]](0, k)};
  }
  return shape;
}

/// Integer minimal polynomial A x^2 + B x + C of c0 + c1 α for α a root of s,
/// with the root sign fixed numerically.
QuadraticSurd transformed_surd(const QuadraticSurd& s, const Rational& c0, const Rational& c1) {
  Rational A(s.A), B(s.B), C(s.C);
  Rational a2 = A;
  Rational b2 = Rational(-2) * A * c0 + B * c1;
  Rational cc = A * c0 * c0 - B * c1 * c0 + C * c1 * c1;
  Integer l = lcm_int(lcm_int(a2.denominator(), b2.denominator()), cc.denominator());
  Integer ia = (a2 * Rational(l)).numerator(), ib = (b2 * Rational(l)).numerator(), ic = (cc * Rational(l)).numerator();
  Integer gcd;
  mpz_gcd(gcd.get_mpz_t(), ia.get_mpz_t(), ib.get_mpz_t());
  mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), ic.get_mpz_t());
  ia /= gcd;
  ib /= gcd;
  ic /= gcd;
  if (ia < 0) {
    ia = -ia;
    ib = -ib;
    ic = -ic;
  }
  // β = c0 + c1 α; α's root sign flips with the sign of c1
  int sign = s.sqrt_sign * (c1.sign() * (s.A < 0 ? -1 : 1));
  // with A > 0 after normalization the larger root has sqrt_sign +1
  return QuadraticSurd{ia, ib, ic, sign > 0 ? 1 : -1};
}

bool ratios_accelerate(const std::vector<Interval>& rho) {
  if (rho.size() < 3) return false;
  for (std::size_t k = 0; k + 1 < rho.size(); ++k)
    if (!(rho[k + 1].lo > rho[k].hi)) return false;
  for (std::size_t k = 0; k + 2 < rho.size(); ++k) {
    Rational inc_lo = rho[k + 2].lo - rho[k + 1].hi;
    Rational inc_hi = rho[k + 1].hi - rho[k].lo;
    if (inc_lo < inc_hi) return false;
  }
  return true;
}

Rational pow_rational(const Rational& r, std::size_t e) {
  mpq_class out(1);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), r.numerator().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), r.denominator().get_mpz_t(), e);
  return Rational(num, den);
}

/// Calls f(σ) for σ ∈ Z^u with max-norm s, one of each ±σ pair.
template <class F>
void for_each_shell_vector(std::size_t u, long s, F&& f) {
  std::vector<long> v(u, -s);
  while (true) {
    long norm = 0;
    for (auto x : v) norm = std::max(norm, std::labs(x));
    bool canonical = false;
    for (auto x : v)
      if (x != 0) {
        canonical = x > 0;
        break;
      }
    if (norm == s && canonical && !f(v)) return;
    std::size_t i = 0;
    while (i < u && v[i] == s) v[i++] = -s;
    if (i == u) return;
    ++v[i];
  }
}

}  // namespace

ThetaVerdict theta_classify(const Matrix<Tower>& r, const DeclaredModel& model, const ThetaOptions& opts) {
  ThetaVerdict out;
  auto parts = decompose_matrix(r, model);
  if (auto sigma = check_irrationality(parts)) {
    out.kind = ThetaVerdict::Kind::NotToroidal;
    out.witness = *sigma;
    out.notes.push_back("sigma^t R is integral for sigma = " + join_ints(*sigma));
    return out;
  }
  std::size_t u = r.rows();
  if (u == 0) {
    out.kind = ThetaVerdict::Kind::ThetaCertified;
    out.radius = Rational(1);
    out.notes.push_back("no glueing rows: compact torus");
    return out;
  }

  EnclosureCache cache(model);
  auto shape = single_irrational_entry(parts);
  bool surd_shape = shape && model.basis()[shape->slot - 1].value && model.basis()[shape->slot - 1].value->is_surd();

  if (surd_shape) {
    const QuadraticSurd& alpha = model.basis()[shape->slot - 1].value->as_surd();
    QuadraticSurd beta = transformed_surd(alpha, shape->c0, shape->c1);
    Vec<Rational> beta_coeffs(parts.size(), Rational(0));
    beta_coeffs[0] = shape->c0;
    beta_coeffs[shape->slot] = shape->c1;
    Interval bi = cache.eval(beta_coeffs, 0);
    // fix the root sign against the midpoint -B/(2A) of the two roots
    Rational centre = Rational(Integer(-beta.B)) / Rational(Integer(2 * beta.A));
    beta.sqrt_sign = bi.lo > centre ? 1 : -1;
    Rational M = Rational(Integer(2 * abs(beta.A))) * Rational(Integer(ceil_abs_bound(bi) + 1)) + Rational(Integer(abs(beta.B)));
    Integer rr = std::max(Integer(3), M.ceil());
    out.radius = Rational(rr);
    out.certificate = LiouvilleCertificate{shape->column, beta, M};
    std::size_t cutoff = std::min(opts.certificate_cutoff, std::max<std::size_t>(opts.scan_bound, 1));
    for (std::size_t s = 1; s <= cutoff; ++s) {
      Rational bound = pow_rational(out.radius, s).inv();
      if (Rational(static_cast<long>(s)) * bound > M.inv())
        throw std::logic_error("radius too small for the Liouville certificate");
      auto d = max_distance(parts, {static_cast<long>(s)}, cache, bound);
      if (!d || d->lo < bound) {
        out.kind = ThetaVerdict::Kind::Undetermined;
        out.notes.push_back("certificate check failed at |sigma| = " + std::to_string(s));
        return out;
      }
    }
    out.kind = ThetaVerdict::Kind::ThetaCertified;
    out.verified_up_to = cutoff;
    out.notes.push_back("effective Liouville bound |beta - p/q| >= 1/(M q^2), M = " + M.to_string());
    if (opts.convergents) out.notes.push_back("convergent source ignored: the entry is a certified surd");
    return out;
  }

  if (u == 1 && !shape) out.notes.push_back("certified path needs exactly one irrational glueing entry");
  else if (u > 1) out.notes.push_back("certified path supports a single glueing row; using evidence");
  else out.notes.push_back("irrational entry is not a declared quadratic surd; using evidence");

  // evidence scan
  out.scan_bound = 0;
  bool numeric = true;
  for (std::size_t j = 1; j < parts.size(); ++j) {
    bool used = false;
    for (std::size_t i = 0; i < parts[j].rows(); ++i)
      for (std::size_t k = 0; k < parts[j].cols(); ++k) used = used || !parts[j](i, k).is_zero();
    if (used && model.basis()[j - 1].is_formal()) numeric = false;
  }
  if (!numeric) {
    out.notes.push_back("glueing matrix involves a formal number without numeric value; scan skipped");
  } else {
    const std::size_t budget = 200000;
    std::size_t evaluated = 0;
    bool exhausted = false;
    double best = -1;
    for (long s = 1; s <= static_cast<long>(opts.scan_bound) && !exhausted; ++s) {
      bool shell_done = true;
      for_each_shell_vector(u, s, [&](const std::vector<long>& sigma) {
        if (evaluated >= budget) {
          shell_done = false;
          return false;
        }
        ++evaluated;
        std::optional<Interval> d;
        try {
          d = max_distance(parts, sigma, cache);
        } catch (const PrecisionUnavailable&) {
          d.reset();
        }
        if (!d) {
          exhausted = true;
          return false;
        }
        Interval rho = (-ln_enclosure(d->hi)) / Interval::point(Rational(s));
        best = std::max(best, rho.mid().to_double());
        return true;
      });
      if (!shell_done || exhausted) break;
      out.scan_bound = static_cast<std::size_t>(s);
    }
    if (exhausted) out.notes.push_back("precision exhausted after |sigma| = " + std::to_string(out.scan_bound));
    if (out.scan_bound < opts.scan_bound && !exhausted)
      out.notes.push_back("scan stopped at |sigma| = " + std::to_string(out.scan_bound) + " (evaluation budget)");
    if (best >= 0) out.max_ratio = best;
  }

  // convergent ratios
  std::optional<ConvergentSeries> source = opts.convergents;
  if (!source && shape) {
    const auto& d = model.basis()[shape->slot - 1];
    if (d.value && d.value->is_series()) source = d.value->as_series();
  }
  if (source && shape) {
    Integer l = lcm_int(shape->c0.denominator(), shape->c1.denominator());
    for (std::size_t k = 0; k < parts[0].cols(); ++k) l = lcm_int(l, parts[0](0, k).denominator());
    Integer m1 = abs((shape->c1 * Rational(l)).numerator());
    for (std::size_t k = 1; k <= source->max_index; ++k) {
      Convergent cv;
      try {
        cv = source->generator(k);
      } catch (const std::exception& e) {
        out.notes.push_back(std::string("convergent source stopped: ") + e.what());
        break;
      }
      Integer denom = m1 * abs(cv.q);
      Interval num = (-cv.error.ln()) - ln_enclosure(denom);
      out.ratios.push_back(num / Interval::point(Rational(Integer(l * abs(cv.q)))));
    }
    if (ratios_accelerate(out.ratios)) {
      out.kind = ThetaVerdict::Kind::WildEvidence;
      out.notes.push_back("divergent over computed range: rho_k increases with growing increments");
      return out;
    }
    out.notes.push_back("convergent ratios do not show unbounded growth");
    for (const auto& r2 : out.ratios) {
      double v = r2.mid().to_double();
      if (!out.max_ratio || v > *out.max_ratio) out.max_ratio = v;
    }
  } else if (opts.convergents) {
    out.notes.push_back("convergent source ignored: glueing matrix is not a single irrational entry");
  }
  out.kind = ThetaVerdict::Kind::Undetermined;
  return out;
}

ThetaVerdict theta_classify(const NormalForm& nf, const PeriodData& pd, const ThetaOptions& opts) {
  if (nf.a || nf.b) {
    ThetaVerdict out;
    out.kind = ThetaVerdict::Kind::NotToroidal;
    out.witness = nf.witness;
    if (nf.b) out.notes.push_back("sigma^t R is integral for sigma = " + join_ints(nf.witness));
    out.notes.push_back("F splits off C^" + std::to_string(nf.a) + " x (C^*)^" + std::to_string(nf.b));
    return out;
  }
  return theta_classify(nf.R, DeclaredModel(pd.basis), opts);
}

std::size_t hausdorff_hodge(const NormalForm& nf, std::size_t p, std::size_t qq) {
  if (nf.a || nf.b)
    throw PeriodError("not a toroidal group: " + std::to_string(nf.a) + " factor(s) C and " + std::to_string(nf.b) +
                      " factor(s) C^* split off");
  return binom(nf.n, p) * binom(nf.q, qq);
}

std::size_t hausdorff_hodge(const PeriodData& pd, std::size_t p, std::size_t qq) {
  return hausdorff_hodge(toroidal_normalize(pd), p, qq);
}

// ---------------------------------------------------------------- leaves

std::string LeafAnalysis::classification() const {
  switch (kind) {
    case Kind::CompactTorus: return "compact torus";
    case Kind::Toroidal: return verdict ? "toroidal, " + to_string(verdict->kind) : "toroidal";
    case Kind::Other:
      return "C^" + std::to_string(normal.a) + " x (C^*)^" + std::to_string(normal.b) + " x toroidal";
  }
  return "";
}

LeafStatus LeafAnalysis::leaf_status() const {
  if (kind == Kind::CompactTorus) return LeafStatus::ToroidalTheta;
  if (kind == Kind::Other || !verdict) return LeafStatus::NotToroidal;
  switch (verdict->kind) {
    case ThetaVerdict::Kind::ThetaCertified: return LeafStatus::ToroidalTheta;
    case ThetaVerdict::Kind::WildEvidence: return LeafStatus::ToroidalWild;
    case ThetaVerdict::Kind::Undetermined: return LeafStatus::ToroidalUndetermined;
    case ThetaVerdict::Kind::NotToroidal: return LeafStatus::NotToroidal;
  }
  return LeafStatus::Pending;
}

namespace detail {

std::vector<std::vector<CTower>> leaf_coordinates(const Matrix<Tower>& j, const Span<Tower>& f,
                                                  const std::vector<Vec<Tower>>& vectors) {
  std::size_t dim = j.rows();
  std::vector<Vec<Tower>> frame;
  Span<Tower> acc(dim);
  for (const auto& v : f.basis()) {
    if (acc.contains(v)) continue;
    Vec<Tower> jv = j * v;
    frame.push_back(v);
    frame.push_back(jv);
    acc = acc + Span<Tower>(dim, {v, jv});
  }
  Matrix<Tower> fm = Matrix<Tower>::from_columns(dim, frame);
  std::vector<std::vector<CTower>> out;
  for (const auto& x : vectors) {
    auto c = solve(fm, x);
    if (!c) throw std::invalid_argument("lattice vector outside f");
    std::vector<CTower> z;
    for (std::size_t k = 0; k + 1 < c->size(); k += 2) z.emplace_back((*c)[k], (*c)[k + 1]);
    out.push_back(std::move(z));
  }
  return out;
}

std::vector<DeclaredNumber> infer_basis(const std::vector<std::vector<CTower>>& entries,
                                        const std::optional<NumberSpec>& parameter_value) {
  std::optional<long> radicand;
  bool param = false;
  auto scan = [&](const Tower& t) {
    if (t.denominator().degree() > 0 || t.numerator().degree() > 0) param = true;
    for (const auto& poly : {t.numerator(), t.denominator()})
      for (const auto& c : poly.coeffs()) {
        if (c.in_base_field()) continue;
        if (radicand && *radicand != c.radicand()) throw UnsupportedPeriodData("two different surds occur");
        radicand = c.radicand();
      }
  };
  for (const auto& col : entries)
    for (const auto& z : col) {
      scan(z.re());
      scan(z.im());
    }
  std::vector<DeclaredNumber> out;
  if (radicand)
    out.push_back({"sqrt(" + std::to_string(*radicand) + ")",
                   NumberSpec::surd(QuadraticSurd{Integer(1), Integer(0), Integer(-*radicand), 1})});
  if (param) out.push_back({"a", parameter_value});
  return out;
}

LeafAnalysis classify_leaf(PeriodData pd, std::size_t real_dim, const ThetaOptions& opts) {
  LeafAnalysis la;
  la.normal = toroidal_normalize(pd);
  la.lattice_rank = pd.rank();
  if (la.lattice_rank == real_dim) {
    la.kind = LeafAnalysis::Kind::CompactTorus;
  } else if (la.normal.a == 0 && la.normal.b == 0) {
    la.kind = LeafAnalysis::Kind::Toroidal;
    la.verdict = theta_classify(la.normal, pd, opts);
  } else {
    la.kind = LeafAnalysis::Kind::Other;
  }
  la.period = std::move(pd);
  return la;
}

}  // namespace detail

}  // namespace nilhodge
