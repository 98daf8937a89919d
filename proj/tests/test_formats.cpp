#include "nilhodge/complex_structure.hpp"
#include "nilhodge/formats.hpp"
#include "nilhodge/structure_equations.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace {

using namespace nilhodge;

Rational Q(long p, long q = 1) { return Rational(Integer(p), Integer(q)); }

std::size_t error_line(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.line;
  }
  ADD_FAILURE() << "no InputError thrown";
  return 0;
}

bool same_entries(const PeriodData& a, const PeriodData& b) {
  if (a.n != b.n || a.rank() != b.rank() || a.basis.size() != b.basis.size()) return false;
  for (std::size_t k = 0; k < a.basis.size(); ++k)
    if (a.basis[k].name != b.basis[k].name || a.basis[k].is_formal() != b.basis[k].is_formal()) return false;
  for (std::size_t g = 0; g < a.rank(); ++g)
    for (std::size_t j = 0; j < a.n; ++j)
      if (a.generators[g][j].re != b.generators[g][j].re || a.generators[g][j].im != b.generators[g][j].im)
        return false;
  return true;
}

TEST(NumberValue, Forms) {
  EXPECT_FALSE(parse_number_value("formal").has_value());
  auto s = parse_number_value("sqrt 2");
  ASSERT_TRUE(s && s->is_surd());
  EXPECT_EQ(s->as_surd().discriminant(), Integer(8));
  auto g = parse_number_value("surd 1 -1 -1 +");
  ASSERT_TRUE(g && g->is_surd());
  EXPECT_EQ(g->as_surd().sqrt_sign, 1);
  auto r = parse_number_value("3/4");
  ASSERT_TRUE(r && r->is_rational());
  EXPECT_EQ(std::get<Rational>(r->value()), Q(3, 4));
  auto x = parse_number_value("series self-power");
  ASSERT_TRUE(x && x->is_series());
  EXPECT_THROW(parse_number_value("sqrt 4"), InputError);
  EXPECT_THROW(parse_number_value("series nope"), InputError);
  EXPECT_THROW(parse_number_value("banana"), InputError);
}

TEST(PeriodFile, ParsesTermsAndComments) {
  auto pd = parse_period_text(
      "# leaf\n"
      "dimension 2\n"
      "number s = sqrt 2\n"
      "number a = formal\n"
      "\n"
      "generator: 1, 0\n"
      "generator: -1/2*s + a, 3*i - s*i\n");
  EXPECT_EQ(pd.n, 2u);
  ASSERT_EQ(pd.basis.size(), 2u);
  EXPECT_EQ(pd.basis[0].name, "s");
  EXPECT_TRUE(pd.basis[1].is_formal());
  ASSERT_EQ(pd.rank(), 2u);
  // coefficients on (1, s, a)
  const auto& e = pd.generators[1];
  EXPECT_EQ(e[0].re, Vec<Rational>({Q(0), Q(-1, 2), Q(1)}));
  EXPECT_EQ(e[0].im, Vec<Rational>({Q(0), Q(0), Q(0)}));
  EXPECT_EQ(e[1].re, Vec<Rational>({Q(0), Q(0), Q(0)}));
  EXPECT_EQ(e[1].im, Vec<Rational>({Q(3), Q(-1), Q(0)}));
}

TEST(PeriodFile, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line([] { parse_period_text("dimension 2\ngenerator: 1, 0, 0\n"); }), 2u);
  EXPECT_EQ(error_line([] { parse_period_text("dimension 2\ngenerator: 1, 0\nnumber s = sqrt 3\n"); }), 3u);
  EXPECT_EQ(error_line([] { parse_period_text("dimension 1\nnumber s = 1/2\n"); }), 2u);
  EXPECT_EQ(error_line([] { parse_period_text("dimension 1\nnumber s = sqrt 2\nnumber s = sqrt 3\n"); }), 3u);
  EXPECT_EQ(error_line([] { parse_period_text("dimension 1\ngenerator: t\n"); }), 2u);
  EXPECT_EQ(error_line([] { parse_period_text("dimension 1\ngenerator: 1\nfoo 3\n"); }), 3u);
  EXPECT_EQ(error_line([] { parse_period_text("generator: 1\n"); }), 1u);
  EXPECT_EQ(error_line([] { parse_period_text("dimension x\n"); }), 1u);
}

TEST(PeriodFile, RoundTripRandom) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5), den(1, 4), dim(1, 3), nb(0, 2);
  for (int trial = 0; trial < 60; ++trial) {
    PeriodData pd;
    pd.n = dim(rng);
    std::size_t b = nb(rng);
    const char* names[] = {"s", "a"};
    if (b > 0) pd.basis.push_back({names[0], NumberSpec::surd({Integer(1), Integer(0), Integer(-3), 1})});
    if (b > 1) pd.basis.push_back({names[1], std::nullopt});
    std::size_t m = pd.n + trial % 3;
    for (std::size_t g = 0; g < m; ++g) {
      std::vector<PeriodEntry> row;
      for (std::size_t j = 0; j < pd.n; ++j) {
        PeriodEntry e{Vec<Rational>(b + 1), Vec<Rational>(b + 1)};
        for (std::size_t k = 0; k <= b; ++k) {
          e.re[k] = Q(coef(rng), den(rng));
          e.im[k] = Q(coef(rng), den(rng));
        }
        row.push_back(e);
      }
      pd.generators.push_back(row);
    }
    auto text = format_period_data(pd);
    auto back = parse_period_text(text);
    EXPECT_TRUE(same_entries(pd, back)) << text;
    EXPECT_EQ(format_period_data(back), text);
  }
}

TEST(LatticeFile, SymbolicAndSubstitutedParameters) {
  const std::string body =
      "vector: sqrt(2), 0\n"
      "vector: sqrt(2)*a, 1 - a\n";
  auto formal = parse_lattice_text("dimension 2\nparameter a = formal\n" + body);
  EXPECT_TRUE(formal.symbolic_parameter);
  EXPECT_FALSE(formal.parameter_value.has_value());
  Tower s2(QSqrt::sqrt(2)), a = Tower::parameter(), one(Rational(1));
  ASSERT_EQ(formal.generators.size(), 2u);
  EXPECT_EQ(formal.generators[1], Vec<Tower>({s2 * a, one - a}));

  auto half = parse_lattice_text("dimension 2\nparameter a = 1/2\n" + body);
  EXPECT_FALSE(half.symbolic_parameter);
  EXPECT_EQ(half.generators[1], Vec<Tower>({s2 * Tower(Q(1, 2)), Tower(Q(1, 2))}));

  auto root = parse_lattice_text("dimension 2\nparameter a = sqrt 2\n" + body);
  EXPECT_EQ(root.generators[1], Vec<Tower>({Tower(Q(2)), one - s2}));

  auto series = parse_lattice_text("dimension 2\nparameter a = series self-power\n" + body);
  EXPECT_TRUE(series.symbolic_parameter);
  ASSERT_TRUE(series.parameter_value.has_value());
  EXPECT_TRUE(series.parameter_value->is_series());
  EXPECT_EQ(series.generators[1], formal.generators[1]);
}

TEST(LatticeFile, Errors) {
  EXPECT_EQ(error_line([] { parse_lattice_text("dimension 2\nvector: 1, 0\n"); }), 2u);
  EXPECT_EQ(error_line([] { parse_lattice_text("dimension 1\nvector: b\n"); }), 2u);
  EXPECT_EQ(error_line([] { parse_lattice_text("dimension 1\nvector: 1\nparameter a = formal\n"); }), 3u);
  EXPECT_EQ(error_line([] { parse_lattice_text("dimension 1\nparameter a = 1\nparameter b = 2\n"); }), 3u);
}

TEST(ComplexStructureSpec, Forms) {
  auto std4 = standard_structure<Rational>(4);
  EXPECT_EQ(parse_complex_structure_spec("std", 4), std4);
  EXPECT_EQ(parse_complex_structure_spec("pairs:12,34", 4), std4);
  EXPECT_EQ(parse_complex_structure_spec("pairs:1-2,3-4", 4), std4);
  EXPECT_EQ(parse_complex_structure_spec("matrix:0 -1 0 0; 1 0 0 0; 0 0 0 -1; 0 0 1 0", 4), std4);
  EXPECT_THROW(parse_complex_structure_spec("std", 3), InputError);
  EXPECT_THROW(parse_complex_structure_spec("pairs:12,23", 4), InputError);
  EXPECT_THROW(parse_complex_structure_spec("pairs:12", 4), InputError);
  EXPECT_THROW(parse_complex_structure_spec("pairs:15,23", 4), InputError);
  EXPECT_THROW(parse_complex_structure_spec("matrix:0 1; 1", 2), InputError);
  EXPECT_THROW(parse_complex_structure_spec("whatever", 2), InputError);
}

TEST(ComplexStructureSpec, PairsSquareToMinusOne) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> idx{1, 2, 3, 4, 5, 6};
    std::shuffle(idx.begin(), idx.end(), rng);
    std::string spec = "pairs:";
    for (int k = 0; k < 6; k += 2)
      spec += (k ? "," : "") + std::to_string(idx[k]) + "-" + std::to_string(idx[k + 1]);
    auto j = parse_complex_structure_spec(spec, 6);
    EXPECT_EQ(j * j, -Matrix<Rational>::identity(6)) << spec;
    for (int k = 0; k < 6; k += 2) EXPECT_EQ(j(idx[k + 1] - 1, idx[k] - 1), Q(1)) << spec;
  }
}

TEST(BasisList, PrefixesAndIndices) {
  using P = std::pair<std::string, std::size_t>;
  EXPECT_EQ(parse_basis_list("e3, e4,e5", {"e"}), (std::vector<P>{{"e", 2}, {"e", 3}, {"e", 4}}));
  EXPECT_EQ(parse_basis_list("Xb1,X2", {"Xb", "X"}), (std::vector<P>{{"Xb", 0}, {"X", 1}}));
  EXPECT_THROW(parse_basis_list("e0", {"e"}), InputError);
  EXPECT_THROW(parse_basis_list("y1", {"e"}), InputError);
  EXPECT_THROW(parse_basis_list("e", {"e"}), InputError);
}

TEST(Catalog, ParsesEntries) {
  std::istringstream in(
      "# user catalog\n"
      "[kt]\n"
      "equations = (0,0,0,12)\n"
      "J = std\n"
      "J = pairs:13,24\n"
      "note = surface\n"
      "\n"
      "[h3r]\n"
      "equations = (0,0,12,0)\n");
  auto c = parse_catalog(in);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].name, "kt");
  EXPECT_EQ(c[0].line, 2u);
  EXPECT_EQ(c[0].structures, (std::vector<std::string>{"std", "pairs:13,24"}));
  EXPECT_EQ(c[0].note, "surface");
  EXPECT_EQ(c[1].line, 8u);
  EXPECT_TRUE(c[1].structures.empty());
}

TEST(Catalog, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    return error_line([&] {
      std::istringstream in(text);
      parse_catalog(in);
    });
  };
  EXPECT_EQ(line_of("equations = (0,0)\n"), 1u);
  EXPECT_EQ(line_of("[a]\nequations = (0,0,12\n"), 2u);
  EXPECT_EQ(line_of("[a]\nequations = (0,0)\n[a]\nequations = (0,0)\n"), 3u);
  EXPECT_EQ(line_of("[a]\ncolour = red\n"), 2u);
  EXPECT_EQ(line_of("[a]\nnote = x\n[b]\nequations = (0)\n"), 1u);
  EXPECT_EQ(line_of("[a\n"), 1u);
}

TEST(Catalog, BuiltinsAreValid) {
  auto c = builtin_catalog();
  std::vector<std::string> names;
  for (const auto& e : c) {
    names.push_back(e.name);
    auto g = parse_structure_equations(e.equations);
    EXPECT_FALSE(check_jacobi(g).has_value()) << e.name;
    for (const auto& spec : e.structures) EXPECT_TRUE(is_integrable(g, parse_complex_structure_spec(spec, g.dim())));
  }
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"abelian6", "h7", "heis3+R3", "kodaira-thurston"}));
}

}  // namespace
