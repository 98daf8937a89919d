#pragma once

#include "nilhodge/complex.hpp"
#include "nilhodge/complex_structure.hpp"
#include "nilhodge/field.hpp"
#include "nilhodge/foliation.hpp"
#include "nilhodge/lattice.hpp"
#include "nilhodge/numberspec.hpp"
#include "nilhodge/qstructure.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilhodge {

using CTower = Complex<Tower>;

/// Malformed or degenerate period data (dependent generators, bad sizes).
class PeriodError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Period data outside the supported number model (for instance two
/// unrelated surds, or an entry that is not a rational combination of the
/// declared numbers after normalization).
class UnsupportedPeriodData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A real number declared Q-linearly independent from 1 and the other
/// declared numbers. Without a value it is a formal indeterminate.
struct DeclaredNumber {
  std::string name;
  std::optional<NumberSpec> value;
  bool is_formal() const { return !value.has_value(); }
};

/// Complex number re + i im, both given by coefficients on (1, α_1, ..., α_s).
struct PeriodEntry {
  Vec<Rational> re;
  Vec<Rational> im;
};

/// Generators of a discrete subgroup Γ of C^n.
struct PeriodData {
  std::size_t n = 0;
  std::vector<DeclaredNumber> basis;
  std::vector<std::vector<PeriodEntry>> generators;  ///< m vectors of n entries

  std::size_t rank() const { return generators.size(); }
};

/// Maps declared numbers into Tower = Q(√d)(a): one surd may use √d, one
/// non-surd number (series or formal) becomes the parameter a.
class DeclaredModel {
 public:
  explicit DeclaredModel(std::vector<DeclaredNumber> basis);

  const std::vector<DeclaredNumber>& basis() const { return basis_; }
  std::size_t size() const { return basis_.size() + 1; }
  /// Name of coefficient slot j (slot 0 is "1").
  std::string slot_name(std::size_t j) const { return j == 0 ? "1" : basis_[j - 1].name; }

  Tower value(const Vec<Rational>& coeffs) const;
  CTower value(const PeriodEntry& e) const;
  /// Coefficients on (1, α_1, ...), or nullopt when t is not such a combination.
  std::optional<Vec<Rational>> decompose(const Tower& t) const;
  std::optional<PeriodEntry> decompose(const CTower& z) const;

  /// Whether every declared number has a numeric value.
  bool all_numeric() const;

 private:
  std::vector<DeclaredNumber> basis_;
  std::vector<Tower> values_;
  std::optional<std::size_t> surd_slot_, param_slot_;
};

/// Checks sizes, declared numbers and R-independence of the generators;
/// throws PeriodError (dependency witness in the message) or
/// UnsupportedPeriodData.
void validate(const PeriodData& pd);

/// Generators as real column vectors (Re z_1..Re z_n, Im z_1..Im z_n).
Matrix<Tower> realified_generators(const PeriodData& pd);
/// Generators as complex column vectors.
Matrix<CTower> complex_generators(const PeriodData& pd);

/// Block form of the generator matrix
///
///   ( 0    0    0 )   a rows
///   ( I_b  0    0 )   b rows
///   ( 0    I    R )   n_T - q rows
///   ( 0    0    P )   q rows
///
/// with normalized = coordinate_change^{-1} · G · column_ops.
struct NormalForm {
  std::size_t n = 0, m = 0, a = 0, b = 0, q = 0;
  std::size_t toroidal_dim() const { return n - a - b; }

  Matrix<CTower> coordinate_change;  ///< columns are the new basis of C^n
  IntMatrix column_ops;              ///< unimodular m x m
  Matrix<CTower> normalized;
  Matrix<Tower> R;                      ///< (n_T - q) x 2q glueing matrix
  Matrix<CTower> P;                     ///< q x 2q torus periods
  std::vector<Matrix<Rational>> R_parts;  ///< R = Σ_j α_j R_parts[j], α_0 = 1
  /// Glueing matrix of the whole group before any C^* factor is split off,
  /// and an integral σ with σ^t R_initial integral when b > 0.
  Matrix<Tower> R_initial;
  std::vector<Integer> witness;
  std::vector<std::string> notes;
};

NormalForm toroidal_normalize(const PeriodData& pd);

/// Integral σ with σ^t R ∈ Z^{2q}, from the declared decomposition of R.
/// nullopt means the irrationality condition holds.
std::optional<std::vector<Integer>> check_irrationality(const std::vector<Matrix<Rational>>& R_parts);
std::optional<std::vector<Integer>> check_irrationality(const Matrix<Tower>& R, const DeclaredModel& model);

struct RemmertMorimoto {
  std::size_t a = 0, b = 0;
  std::optional<PeriodData> toroidal;  ///< absent when the toroidal factor is a point
  NormalForm normal;
};

/// F ≅ C^a × (C^*)^b × T.
RemmertMorimoto remmert_morimoto(const PeriodData& pd);

struct ThetaOptions {
  std::size_t scan_bound = 1000;
  std::optional<ConvergentSeries> convergents;
  /// |σ| up to which a certificate is double-checked by direct comparison.
  std::size_t certificate_cutoff = 100;
};

/// |β - τ/σ| >= 1 / (M σ^2) for the quadratic irrational β.
struct LiouvilleCertificate {
  std::size_t column = 0;  ///< entry of R carrying β
  QuadraticSurd minimal_polynomial;
  Rational M;
};

struct ThetaVerdict {
  enum class Kind { NotToroidal, ThetaCertified, WildEvidence, Undetermined };
  Kind kind = Kind::Undetermined;

  std::vector<Integer> witness;                     ///< NotToroidal
  Rational radius;                                  ///< ThetaCertified
  std::optional<LiouvilleCertificate> certificate;  ///< ThetaCertified (surd shape)
  std::size_t verified_up_to = 0;                   ///< ThetaCertified: direct check range
  std::vector<Interval> ratios;                     ///< ρ_k along convergents
  std::size_t scan_bound = 0;                       ///< Undetermined: |σ| range scanned
  std::optional<double> max_ratio;                  ///< Undetermined: largest ρ seen
  std::vector<std::string> notes;
};

std::string to_string(ThetaVerdict::Kind k);

ThetaVerdict theta_classify(const Matrix<Tower>& R, const DeclaredModel& model, const ThetaOptions& opts = {});
/// Verdict for the whole group: NotToroidal as soon as a C or C^* factor
/// splits off, otherwise the verdict on nf.R.
ThetaVerdict theta_classify(const NormalForm& nf, const PeriodData& pd, const ThetaOptions& opts = {});

/// dim of the Hausdorff quotient of H^{p,q'}(F) for a toroidal group of
/// complex dimension n and rank q: C(n,p) C(q,q'). Throws PeriodError when
/// F is not toroidal (a C or C^* factor splits off).
std::size_t hausdorff_hodge(const NormalForm& nf, std::size_t p, std::size_t qq);
std::size_t hausdorff_hodge(const PeriodData& pd, std::size_t p, std::size_t qq);

struct LeafAnalysis {
  enum class Kind { CompactTorus, Toroidal, Other };
  Kind kind = Kind::Other;
  PeriodData period;
  NormalForm normal;
  std::size_t lattice_rank = 0;
  std::optional<ThetaVerdict> verdict;

  std::string classification() const;
  LeafStatus leaf_status() const;
};

namespace detail {

/// Complex coordinates of vectors in a J-invariant real subspace f with
/// respect to the frame b_k + i J b_k taken greedily from f's basis.
std::vector<std::vector<CTower>> leaf_coordinates(const Matrix<Tower>& j, const Span<Tower>& f,
                                                  const std::vector<Vec<Tower>>& vectors);

/// Declared basis matching the numbers occurring in the given entries:
/// a surd √d if one occurs, and the parameter as "a" with the given value.
std::vector<DeclaredNumber> infer_basis(const std::vector<std::vector<CTower>>& entries,
                                        const std::optional<NumberSpec>& parameter_value);

LeafAnalysis classify_leaf(PeriodData pd, std::size_t real_dim, const ThetaOptions& opts);

}  // namespace detail

/// The abelian group F = (V_Z ∩ f) \ f for a J-invariant abelian ideal f,
/// its period data in J-induced coordinates, and its classification.
/// `parameter_value` gives the number the parameter a stands for, if any.
template <ExactField K>
LeafAnalysis leaf_analysis(const ComplexStructure<K>& cs, const QStructure<K>& L, const Span<K>& f,
                           const std::optional<NumberSpec>& parameter_value = std::nullopt,
                           const ThetaOptions& opts = {}) {
  const auto& g = cs.algebra();
  if (!is_ideal(g, f)) throw FoliationPreconditionError("f is not an ideal");
  if (!cs.is_j_invariant(f)) throw FoliationPreconditionError("f is not J-invariant");
  if (!is_abelian_subspace(g, f)) throw FoliationPreconditionError("f is not abelian");
  auto [coeffs, gens] = lattice_intersection(L, f);
  std::vector<Vec<Tower>> tg;
  for (const auto& v : gens) tg.push_back(lift<Tower>(v));
  auto entries = detail::leaf_coordinates(lift<Tower>(cs.J()), lift<Tower>(f), tg);
  PeriodData pd;
  pd.n = f.dim() / 2;
  pd.basis = detail::infer_basis(entries, parameter_value);
  DeclaredModel model(pd.basis);
  for (const auto& col : entries) {
    std::vector<PeriodEntry> gen;
    for (const auto& z : col) {
      auto e = model.decompose(z);
      if (!e) throw UnsupportedPeriodData("lattice coordinate " + to_string(z) + " is outside the declared numbers");
      gen.push_back(*e);
    }
    pd.generators.push_back(std::move(gen));
  }
  return detail::classify_leaf(std::move(pd), f.dim(), opts);
}

}  // namespace nilhodge
