#pragma once

#include "nilhodge/numberspec.hpp"
#include "nilhodge/toroidal.hpp"

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilhodge {

/// Malformed text input. `line` is 1-based, 0 when the error is not tied to a
/// line (for instance a command-line spec).
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, const std::string& msg)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line(line) {}
  std::size_t line;
};

/// "formal" gives nullopt; otherwise "sqrt D", "surd A B C [+|-]",
/// "series NAME" or a rational "p/q". Throws InputError(0, ...).
std::optional<NumberSpec> parse_number_value(const std::string& text);

/// Period files:
///
///   # comment
///   dimension 2
///   number a = formal
///   number s = sqrt 2
///   number t = surd 1 -1 -1 +
///   number x = series self-power
///   generator: 1, 0
///   generator: a + 1/2*s, i
///
/// Each generator lists n complex entries separated by commas. An entry is a
/// sum of terms; a term is a product (with `*`) of at most one rational, at
/// most one declared name and at most one `i`. Declarations must precede the
/// generators. Rational-valued numbers are rejected since they are not
/// independent of 1.
PeriodData parse_period_data(std::istream& in);
PeriodData parse_period_text(const std::string& text);
/// Inverse of parse_period_data up to whitespace and term order.
std::string format_period_data(const PeriodData& pd);
std::string format_period_entry(const PeriodEntry& e, const std::vector<DeclaredNumber>& basis);

/// Lattice files for the Q-structure of a nilmanifold:
///
///   dimension 6
///   parameter a = formal          (or a rational, sqrt D, surd ..., series NAME)
///   vector: sqrt(2), 0, 0, 0, 0, 0
///   vector: sqrt(2)*a, 0, sqrt(2), 0, 0, 0
///
/// Entries are sums of products of a rational, sqrt(D) and the parameter name.
/// A rational or surd parameter is substituted; a formal or series parameter
/// stays symbolic and its value (if any) is kept for the leaf analysis.
struct LatticeSpec {
  std::size_t n = 0;
  std::string parameter_name;
  bool symbolic_parameter = false;
  std::optional<NumberSpec> parameter_value;
  std::vector<Vec<Tower>> generators;
};

LatticeSpec parse_lattice(std::istream& in);
LatticeSpec parse_lattice_text(const std::string& text);

/// "std" (J e_{2i-1} = e_{2i}), "pairs:12,34,56" or "pairs:1-2,3-4" (J e_a = e_b
/// for each pair), or "matrix:r11 r12 ...; r21 ..." with rows separated by ';'.
Matrix<Rational> parse_complex_structure_spec(const std::string& spec, std::size_t n);

/// Comma-separated basis names such as "e3,e4" or "Xb1,Xb3": returns
/// (prefix, 0-based index) pairs. Only the listed prefixes are accepted.
std::vector<std::pair<std::string, std::size_t>> parse_basis_list(const std::string& text,
                                                                  const std::vector<std::string>& prefixes);

/// Catalog files:
///
///   [h7]
///   equations = (0,0,0,12,13,23)
///   J = std
///   J = pairs:13,24,56
///   note = free text
///
/// Blank lines and '#' comments are ignored. Structure equations are parsed
/// here; Jacobi and integrability are left to the caller.
struct CatalogEntry {
  std::string name;
  std::string equations;
  std::vector<std::string> structures;
  std::string note;
  std::size_t line = 0;  ///< line of the [name] header, 0 for built-ins
};

std::vector<CatalogEntry> parse_catalog(std::istream& in);
std::vector<CatalogEntry> builtin_catalog();

}  // namespace nilhodge
