#pragma once

#include "nilhodge/cochains.hpp"
#include "nilhodge/complex_structure.hpp"
#include "nilhodge/structure_equations.hpp"

#include <random>
#include <string>
#include <vector>

namespace fixtures {

using namespace nilhodge;

using C = Complex<Rational>;
inline const char* kH7 = "(0,0,0,12,13,23)";

inline ComplexStructure<Rational> h7_j0() {
  return ComplexStructure<Rational>(parse_structure_equations(kH7), standard_structure<Rational>(6));
}

inline Span<Rational> span_e(std::size_t n, std::initializer_list<std::size_t> idx) {
  std::vector<Vec<Rational>> v;
  for (auto i : idx) v.push_back(Span<Rational>::unit(n, i - 1));
  return Span<Rational>(n, v);
}

inline Span<C> span_c(std::size_t n, const std::vector<Vec<C>>& v) { return Span<C>(n, v); }

inline std::size_t binom(std::size_t n, std::size_t k) { return MultiIndexBasis(n, k).size(); }

/// Algebras with an integrable structure, gathered by trying pairings.
inline std::vector<ComplexStructure<Rational>> integrable_catalog() {
  std::vector<std::string> algs{"(0,0,0,0)",          "(0,0,0,12)",          "(0,0,0,0,0,0)", kH7,
                                "(0,0,0,0,12,34)",    "(0,0,0,0,0,12)",      "(0,0,0,0,12,13)",
                                "(0,0,0,12,13,23)",   "(0,0,0,0,13-24,14+23)", "(0,0,12,13,23,14+25)",
                                "(0,0,0,12,13,14+23)", "(0,0,0,0,12,14+23)"};
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairings4{{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}},
      pairings6{{{0, 1}, {2, 3}, {4, 5}}, {{0, 2}, {1, 3}, {4, 5}}, {{0, 1}, {2, 4}, {3, 5}}, {{0, 3}, {1, 2}, {4, 5}}};
  std::vector<ComplexStructure<Rational>> out;
  for (const auto& s : algs) {
    auto g = parse_structure_equations(s);
    for (const auto& pr : g.dim() == 4 ? pairings4 : pairings6) {
      auto j = structure_from_pairs<Rational>(g.dim(), pr);
      if (is_integrable(g, j)) out.emplace_back(g, j);
    }
  }
  return out;
}

inline Matrix<Rational> random_invertible(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> v(-2, 2);
  while (true) {
    Matrix<Rational> p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = Rational(v(rng));
    if (rank(p) == n) return p;
  }
}

}  // namespace fixtures
