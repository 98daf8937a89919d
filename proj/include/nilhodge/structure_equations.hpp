#pragma once

#include "nilhodge/lie_algebra.hpp"

#include <stdexcept>
#include <string>

namespace nilhodge {

/// Malformed structure-equation text. `position` is a 0-based character offset.
class StructureParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, IndexOutOfRange };
  StructureParseError(Kind kind, std::size_t position, const std::string& msg)
      : std::runtime_error(msg + " at column " + std::to_string(position + 1)), kind(kind), position(position) {}
  Kind kind;
  std::size_t position;
};

/// Parses "(0,0,0,12,13,23)"-style tuples. Entry k lists de^k as a signed sum
/// of pairs "ij" (or "[i,j]"), optionally prefixed by "coeff*". The global
/// sign convention is de^k(e_i, e_j) = -e^k([e_i, e_j]), so "12" in position 4
/// gives c_12^4 = -1. Throws StructureParseError or JacobiFailure.
LieAlgebra<Rational> parse_structure_equations(const std::string& text);

/// Canonical text form; parse_structure_equations inverts it. Uses the
/// bracketed pair form throughout once the dimension reaches 10.
std::string format_structure_equations(const LieAlgebra<Rational>& g);

}  // namespace nilhodge
