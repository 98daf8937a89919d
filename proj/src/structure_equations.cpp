#include "nilhodge/structure_equations.hpp"

#include <cctype>
#include <map>
#include <utility>
#include <vector>

namespace nilhodge {

namespace {

using Kind = StructureParseError::Kind;

struct Term {
  Rational coeff;
  std::size_t i, j;  // 1-based
  std::size_t pos;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  std::vector<std::vector<Term>> parse() {
    skip_ws();
    expect('(');
    std::vector<std::vector<Term>> entries;
    while (true) {
      entries.push_back(entry());
      skip_ws();
      if (peek() == ',') {
        ++p_;
        continue;
      }
      expect(')');
      break;
    }
    skip_ws();
    if (p_ != s_.size()) fail("unexpected trailing input");
    return entries;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw StructureParseError(Kind::Syntax, p_, msg); }

  char peek() const { return p_ < s_.size() ? s_[p_] : '\0'; }
  void skip_ws() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++p_;
  }

  std::vector<Term> entry() {
    skip_ws();
    std::vector<Term> terms;
    // the lone "0" entry; a pair never starts with 0 followed by a separator
    if (peek() == '0') {
      std::size_t q = p_ + 1;
      while (q < s_.size() && std::isspace(static_cast<unsigned char>(s_[q]))) ++q;
      if (q >= s_.size() || s_[q] == ',' || s_[q] == ')') {
        p_ = q;
        return terms;
      }
    }
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++p_;
        skip_ws();
      } else if (!first) {
        break;
      }
      terms.push_back(signed_term(sign));
      first = false;
    }
    return terms;
  }

  Term signed_term(int sign) {
    std::size_t start = p_;
    Rational coeff(1);
    if (peek() != '[') {
      std::size_t b = p_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++p_;
      if (b == p_) fail("expected a coefficient or an index pair");
      std::string digits = s_.substr(b, p_ - b);
      std::size_t after_digits = p_;
      bool fraction = false;
      if (peek() == '/') {
        fraction = true;
        ++p_;
        std::size_t d = p_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++p_;
        if (d == p_) fail("expected a denominator");
      }
      skip_ws();
      if (peek() == '*') {
        std::size_t e = b;
        while (e < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[e])) || s_[e] == '/')) ++e;
        try {
          coeff = Rational::parse(s_.substr(b, e - b));
        } catch (const std::exception&) {
          p_ = b;
          fail("invalid coefficient");
        }
        ++p_;
        skip_ws();
        auto [i, j] = pair();
        return {coeff * Rational(sign), i, j, start};
      }
      if (fraction || digits.size() != 2) {
        p_ = b;
        fail("an index pair must be exactly two digits (use [i,j] for larger indices)");
      }
      p_ = after_digits;
      return {Rational(sign), static_cast<std::size_t>(digits[0] - '0'), static_cast<std::size_t>(digits[1] - '0'),
              start};
    }
    auto [i, j] = pair();
    return {Rational(sign), i, j, start};
  }

  std::pair<std::size_t, std::size_t> pair() {
    skip_ws();
    if (peek() == '[') {
      ++p_;
      std::size_t i = integer();
      expect(',');
      std::size_t j = integer();
      expect(']');
      return {i, j};
    }
    if (std::isdigit(static_cast<unsigned char>(peek())) && p_ + 1 < s_.size() &&
        std::isdigit(static_cast<unsigned char>(s_[p_ + 1])) &&
        (p_ + 2 >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[p_ + 2])))) {
      std::size_t i = static_cast<std::size_t>(s_[p_] - '0'), j = static_cast<std::size_t>(s_[p_ + 1] - '0');
      p_ += 2;
      return {i, j};
    }
    fail("expected an index pair");
  }

  std::size_t integer() {
    skip_ws();
    std::size_t b = p_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++p_;
    if (b == p_ || p_ - b > 6) fail("expected an index");
    return static_cast<std::size_t>(std::stoul(s_.substr(b, p_ - b)));
  }

  const std::string& s_;
  std::size_t p_ = 0;
};

std::string pair_text(std::size_t i, std::size_t j, bool bracketed) {
  if (bracketed) return "[" + std::to_string(i) + "," + std::to_string(j) + "]";
  return std::to_string(i) + std::to_string(j);
}

}  // namespace

LieAlgebra<Rational> parse_structure_equations(const std::string& text) {
  auto entries = Parser(text).parse();
  std::size_t n = entries.size();
  LieAlgebra<Rational> g(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (const Term& t : entries[k]) {
      if (t.i < 1 || t.i > n || t.j < 1 || t.j > n)
        throw StructureParseError(Kind::IndexOutOfRange, t.pos,
                                  "index pair " + pair_text(t.i, t.j, true) + " out of range 1.." + std::to_string(n));
      if (t.i == t.j)
        throw StructureParseError(Kind::Syntax, t.pos, "repeated index in pair " + pair_text(t.i, t.j, true));
      // de^k gains coeff * e^i ^ e^j  <=>  c_ij^k gains -coeff
      std::size_t i = t.i - 1, j = t.j - 1;
      g.set_constant(i, j, k, g.constant(i, j, k) - t.coeff);
    }
  }
  return validated(g);
}

std::string format_structure_equations(const LieAlgebra<Rational>& g) {
  std::size_t n = g.dim();
  bool bracketed = n >= 10;
  std::string out = "(";
  for (std::size_t k = 0; k < n; ++k) {
    if (k) out += ",";
    std::string entry;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational c = -g.constant(i, j, k);
        if (c.is_zero()) continue;
        bool neg = c.sign() < 0;
        Rational a = c.abs();
        if (neg)
          entry += "-";
        else if (!entry.empty())
          entry += "+";
        if (a != Rational(1)) entry += a.to_string() + "*";
        entry += pair_text(i + 1, j + 1, bracketed);
      }
    out += entry.empty() ? "0" : entry;
  }
  return out + ")";
}

}  // namespace nilhodge
