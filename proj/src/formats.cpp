#include "nilhodge/formats.hpp"

#include "nilhodge/structure_equations.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace nilhodge {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n"), e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

Integer parse_integer(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  std::size_t start = !t.empty() && t[0] == '-' ? 1 : 0;
  if (t.size() == start) throw std::invalid_argument("expected an integer, got '" + s + "'");
  for (std::size_t i = start; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw std::invalid_argument("expected an integer, got '" + s + "'");
  return Integer(t, 10);
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s));
  Integer den = parse_integer(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Rational(parse_integer(s.substr(0, slash)), den);
}

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool valid_name(const std::string& s) {
  if (s.empty() || !is_name_start(s[0])) return false;
  for (char c : s)
    if (!is_name_char(c)) return false;
  return true;
}

/// coefficient times a product of symbols; sqrt(D) appears as "sqrt(D)"
struct Term {
  Rational coef{1};
  std::vector<std::string> symbols;
};

std::vector<Term> parse_sum(const std::string& text) {
  std::vector<Term> terms;
  std::size_t i = 0, n = text.size();
  auto skip = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument(what + " at column " + std::to_string(i + 1) + " of '" + text + "'");
  };
  skip();
  if (i == n) fail("empty expression");
  bool first = true;
  while (true) {
    skip();
    int sign = 1;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    Term t;
    t.coef = Rational(sign);
    bool have_number = false;
    while (true) {
      skip();
      if (i >= n) fail("expected a factor");
      if (std::isdigit(static_cast<unsigned char>(text[i]))) {
        if (have_number) fail("two numeric factors");
        std::size_t s = i;
        while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
        t.coef = t.coef * parse_rational(text.substr(s, i - s));
        have_number = true;
      } else if (is_name_start(text[i])) {
        std::size_t s = i;
        while (i < n && is_name_char(text[i])) ++i;
        std::string name = text.substr(s, i - s);
        skip();
        if (name == "sqrt") {
          if (i >= n || text[i] != '(') fail("expected '(' after sqrt");
          std::size_t close = text.find(')', i);
          if (close == std::string::npos) fail("missing ')'");
          Integer d = parse_integer(trim(text.substr(i + 1, close - i - 1)));
          i = close + 1;
          name = "sqrt(" + d.get_str() + ")";
        }
        t.symbols.push_back(name);
      } else {
        fail(std::string("unexpected character '") + text[i] + "'");
      }
      skip();
      if (i < n && text[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    terms.push_back(std::move(t));
    skip();
    if (i == n) break;
  }
  return terms;
}

std::pair<std::string, std::string> split_key(const std::string& line, std::size_t lineno, char sep) {
  auto p = line.find(sep);
  if (p == std::string::npos) throw InputError(lineno, std::string("expected '") + sep + "' in '" + line + "'");
  return {trim(line.substr(0, p)), trim(line.substr(p + 1))};
}

std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return trim(h == std::string::npos ? line : line.substr(0, h));
}

std::size_t parse_dimension(const std::string& rest, std::size_t lineno) {
  try {
    Integer d = parse_integer(trim(rest));
    if (d < 0 || d > 64) throw std::invalid_argument("dimension out of range");
    return d.get_ui();
  } catch (const std::invalid_argument& e) {
    throw InputError(lineno, e.what());
  }
}

std::string coefficient_prefix(const Rational& c, bool leading, bool bare) {
  std::string s;
  Rational a = c.abs();
  if (c.sign() < 0) s = leading ? "-" : " - ";
  else if (!leading) s = " + ";
  if (bare) return s + a.to_string();
  if (a != Rational(1)) s += a.to_string() + "*";
  return s;
}

}  // namespace

std::optional<NumberSpec> parse_number_value(const std::string& text) {
  auto w = words(text);
  try {
    if (w.empty()) throw std::invalid_argument("missing number value");
    if (w[0] == "formal" && w.size() == 1) return std::nullopt;
    if (w[0] == "sqrt" && w.size() == 2) {
      Integer d = parse_integer(w[1]);
      return NumberSpec::surd(QuadraticSurd{Integer(1), Integer(0), Integer(-d), 1});
    }
    if (w[0] == "surd" && (w.size() == 4 || w.size() == 5)) {
      int sign = 1;
      if (w.size() == 5) {
        if (w[4] != "+" && w[4] != "-") throw std::invalid_argument("surd root sign must be + or -");
        sign = w[4] == "-" ? -1 : 1;
      }
      return NumberSpec::surd(QuadraticSurd{parse_integer(w[1]), parse_integer(w[2]), parse_integer(w[3]), sign});
    }
    if (w[0] == "series" && w.size() == 2) {
      auto s = convergent_series_by_name(w[1]);
      if (!s)
        throw std::invalid_argument("unknown series '" + w[1] +
                                    "' (known: liouville, self-power, double-exponential, power-tower)");
      return NumberSpec::series(*s);
    }
    if (w.size() == 1) return NumberSpec::exact(parse_rational(w[0]));
    throw std::invalid_argument("cannot read number value '" + trim(text) + "'");
  } catch (const std::invalid_argument& e) {
    throw InputError(0, e.what());
  }
}

// ---------------------------------------------------------------- period files

PeriodData parse_period_data(std::istream& in) {
  PeriodData pd;
  bool have_dim = false;
  std::map<std::string, std::size_t> slots;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    auto w = words(line);
    if (w[0] == "dimension") {
      if (have_dim) throw InputError(lineno, "dimension given twice");
      pd.n = parse_dimension(line.substr(9), lineno);
      have_dim = true;
    } else if (w[0] == "number") {
      if (!pd.generators.empty()) throw InputError(lineno, "numbers must be declared before the generators");
      auto [name, value] = split_key(line.substr(6), lineno, '=');
      if (!valid_name(name) || name == "i" || name == "sqrt") throw InputError(lineno, "invalid number name '" + name + "'");
      if (slots.count(name)) throw InputError(lineno, "number '" + name + "' declared twice");
      std::optional<NumberSpec> v;
      try {
        v = parse_number_value(value);
      } catch (const InputError& e) {
        throw InputError(lineno, e.what());
      }
      if (v && v->is_rational())
        throw InputError(lineno, "number '" + name + "' is rational; write it as a coefficient instead");
      pd.basis.push_back({name, v});
      slots[name] = pd.basis.size();
    } else if (line.rfind("generator", 0) == 0) {
      if (!have_dim) throw InputError(lineno, "dimension must come before the generators");
      auto [key, rest] = split_key(line, lineno, ':');
      if (key != "generator") throw InputError(lineno, "unknown keyword '" + key + "'");
      auto parts = split(rest, ',');
      if (parts.size() != pd.n)
        throw InputError(lineno, "generator has " + std::to_string(parts.size()) + " entries, expected " +
                                     std::to_string(pd.n));
      std::vector<PeriodEntry> gen;
      for (const auto& p : parts) {
        PeriodEntry e{Vec<Rational>(pd.basis.size() + 1, Rational(0)), Vec<Rational>(pd.basis.size() + 1, Rational(0))};
        try {
          for (const auto& t : parse_sum(p)) {
            std::size_t slot = 0;
            bool imag = false;
            for (const auto& s : t.symbols) {
              if (s == "i") {
                if (imag) throw std::invalid_argument("'i' twice in one term of '" + p + "'");
                imag = true;
              } else if (slots.count(s)) {
                if (slot) throw std::invalid_argument("product of two declared numbers in '" + p + "'");
                slot = slots[s];
              } else {
                throw std::invalid_argument("undeclared number '" + s + "'");
              }
            }
            (imag ? e.im : e.re)[slot] += t.coef;
          }
        } catch (const std::invalid_argument& ex) {
          throw InputError(lineno, ex.what());
        }
        gen.push_back(std::move(e));
      }
      pd.generators.push_back(std::move(gen));
    } else {
      throw InputError(lineno, "unknown keyword '" + w[0] + "'");
    }
  }
  if (!have_dim) throw InputError(lineno, "missing 'dimension' line");
  return pd;
}

PeriodData parse_period_text(const std::string& text) {
  std::istringstream in(text);
  return parse_period_data(in);
}

std::string format_period_entry(const PeriodEntry& e, const std::vector<DeclaredNumber>& basis) {
  std::string out;
  auto emit = [&](const Vec<Rational>& v, bool imag) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j].is_zero()) continue;
      std::string sym = j ? basis[j - 1].name : "";
      if (imag) sym += sym.empty() ? "i" : "*i";
      out += coefficient_prefix(v[j], out.empty(), sym.empty()) + sym;
    }
  };
  emit(e.re, false);
  emit(e.im, true);
  return out.empty() ? "0" : out;
}

std::string format_period_data(const PeriodData& pd) {
  std::ostringstream out;
  out << "dimension " << pd.n << "\n";
  for (const auto& d : pd.basis) {
    out << "number " << d.name << " = ";
    if (!d.value) {
      out << "formal\n";
    } else if (d.value->is_surd()) {
      const auto& s = d.value->as_surd();
      out << "surd " << s.A.get_str() << " " << s.B.get_str() << " " << s.C.get_str() << " "
          << (s.sqrt_sign < 0 ? "-" : "+") << "\n";
    } else if (d.value->is_series()) {
      out << "series " << d.value->as_series().name << "\n";
    } else {
      out << std::get<Rational>(d.value->value()).to_string() << "\n";
    }
  }
  for (const auto& g : pd.generators) {
    out << "generator:";
    for (std::size_t k = 0; k < g.size(); ++k) out << (k ? ", " : " ") << format_period_entry(g[k], pd.basis);
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------- lattice files

LatticeSpec parse_lattice(std::istream& in) {
  LatticeSpec spec;
  bool have_dim = false, have_param = false;
  Tower param_value;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    auto w = words(line);
    if (w[0] == "dimension") {
      if (have_dim) throw InputError(lineno, "dimension given twice");
      spec.n = parse_dimension(line.substr(9), lineno);
      have_dim = true;
    } else if (w[0] == "parameter") {
      if (have_param) throw InputError(lineno, "only one parameter can be declared");
      if (!spec.generators.empty()) throw InputError(lineno, "the parameter must be declared before the vectors");
      auto [name, value] = split_key(line.substr(9), lineno, '=');
      if (!valid_name(name) || name == "sqrt") throw InputError(lineno, "invalid parameter name '" + name + "'");
      spec.parameter_name = name;
      std::optional<NumberSpec> v;
      try {
        v = parse_number_value(value);
      } catch (const InputError& e) {
        throw InputError(lineno, e.what());
      }
      if (!v || v->is_series()) {
        spec.symbolic_parameter = true;
        spec.parameter_value = v;
        param_value = Tower::parameter();
      } else if (v->is_rational()) {
        param_value = Tower(std::get<Rational>(v->value()));
      } else {
        const auto& s = v->as_surd();
        Integer disc = s.discriminant();
        if (!disc.fits_slong_p()) throw InputError(lineno, "surd discriminant too large");
        QSqrt root = QSqrt::sqrt(disc.get_si());
        QSqrt num = QSqrt(Rational(Integer(-s.B))) + (s.sqrt_sign < 0 ? -root : root);
        param_value = Tower(num / QSqrt(Rational(Integer(2 * s.A))));
      }
      have_param = true;
    } else if (line.rfind("vector", 0) == 0) {
      if (!have_dim) throw InputError(lineno, "dimension must come before the vectors");
      auto [key, rest] = split_key(line, lineno, ':');
      if (key != "vector") throw InputError(lineno, "unknown keyword '" + key + "'");
      auto parts = split(rest, ',');
      if (parts.size() != spec.n)
        throw InputError(lineno, "vector has " + std::to_string(parts.size()) + " entries, expected " +
                                     std::to_string(spec.n));
      Vec<Tower> v;
      for (const auto& p : parts) {
        try {
          Tower acc;
          for (const auto& t : parse_sum(p)) {
            Tower term(t.coef);
            for (const auto& s : t.symbols) {
              if (s.rfind("sqrt(", 0) == 0) {
                term = term * Tower(QSqrt::sqrt(parse_integer(s.substr(5, s.size() - 6)).get_si()));
              } else if (have_param && s == spec.parameter_name) {
                term = term * param_value;
              } else {
                throw std::invalid_argument("unknown symbol '" + s + "'");
              }
            }
            acc = acc + term;
          }
          v.push_back(acc);
        } catch (const std::exception& ex) {
          throw InputError(lineno, ex.what());
        }
      }
      spec.generators.push_back(std::move(v));
    } else {
      throw InputError(lineno, "unknown keyword '" + w[0] + "'");
    }
  }
  if (!have_dim) throw InputError(lineno, "missing 'dimension' line");
  if (spec.generators.size() != spec.n)
    throw InputError(lineno, "expected " + std::to_string(spec.n) + " vectors, found " +
                                 std::to_string(spec.generators.size()));
  return spec;
}

LatticeSpec parse_lattice_text(const std::string& text) {
  std::istringstream in(text);
  return parse_lattice(in);
}

// ---------------------------------------------------------------- specs

Matrix<Rational> parse_complex_structure_spec(const std::string& raw, std::size_t n) {
  std::string spec = trim(raw);
  if (spec == "std") {
    if (n % 2) throw InputError(0, "std structure needs an even dimension");
    return standard_structure<Rational>(n);
  }
  if (spec.rfind("pairs:", 0) == 0) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<bool> used(n, false);
    for (const auto& item : split(spec.substr(6), ',')) {
      std::size_t a = 0, b = 0;
      try {
        auto dash = item.find('-');
        if (dash != std::string::npos) {
          a = parse_integer(trim(item.substr(0, dash))).get_ui();
          b = parse_integer(trim(item.substr(dash + 1))).get_ui();
        } else if (item.size() == 2 && std::isdigit(static_cast<unsigned char>(item[0])) &&
                   std::isdigit(static_cast<unsigned char>(item[1]))) {
          a = static_cast<std::size_t>(item[0] - '0');
          b = static_cast<std::size_t>(item[1] - '0');
        } else {
          throw std::invalid_argument("");
        }
      } catch (const std::invalid_argument&) {
        throw InputError(0, "cannot read pair '" + item + "' in J spec");
      }
      if (a < 1 || b < 1 || a > n || b > n || a == b) throw InputError(0, "pair '" + item + "' out of range");
      if (used[a - 1] || used[b - 1]) throw InputError(0, "index repeated in J spec");
      used[a - 1] = used[b - 1] = true;
      pairs.emplace_back(a - 1, b - 1);
    }
    if (2 * pairs.size() != n) throw InputError(0, "J spec must pair all " + std::to_string(n) + " basis vectors");
    return structure_from_pairs<Rational>(n, pairs);
  }
  if (spec.rfind("matrix:", 0) == 0) {
    auto rows = split(spec.substr(7), ';');
    if (rows.size() != n) throw InputError(0, "J matrix needs " + std::to_string(n) + " rows");
    Matrix<Rational> j(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      auto e = words(rows[r]);
      if (e.size() != n) throw InputError(0, "J matrix row " + std::to_string(r + 1) + " needs " + std::to_string(n) + " entries");
      for (std::size_t c = 0; c < n; ++c) {
        try {
          j(r, c) = parse_rational(e[c]);
        } catch (const std::invalid_argument& ex) {
          throw InputError(0, ex.what());
        }
      }
    }
    return j;
  }
  throw InputError(0, "unknown J spec '" + spec + "' (use std, pairs:..., or matrix:...)");
}

std::vector<std::pair<std::string, std::size_t>> parse_basis_list(const std::string& text,
                                                                  const std::vector<std::string>& prefixes) {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (const auto& item : split(text, ',')) {
    bool matched = false;
    // longest prefix first so that "Xb" wins over "X"
    std::vector<std::string> sorted = prefixes;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    for (const auto& p : sorted) {
      if (item.rfind(p, 0) != 0 || item.size() == p.size()) continue;
      std::string idx = item.substr(p.size());
      if (!std::all_of(idx.begin(), idx.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        continue;
      std::size_t k = std::stoul(idx);
      if (k == 0) throw InputError(0, "basis indices start at 1 in '" + item + "'");
      out.emplace_back(p, k - 1);
      matched = true;
      break;
    }
    if (!matched) throw InputError(0, "cannot read basis element '" + item + "'");
  }
  return out;
}

// ---------------------------------------------------------------- catalog

std::vector<CatalogEntry> parse_catalog(std::istream& in) {
  std::vector<CatalogEntry> out;
  std::map<std::string, std::size_t> seen;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw InputError(lineno, "unterminated entry header");
      std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw InputError(lineno, "empty entry name");
      if (seen.count(name))
        throw InputError(lineno, "entry '" + name + "' already defined on line " + std::to_string(seen[name]));
      seen[name] = lineno;
      out.push_back(CatalogEntry{name, "", {}, "", lineno});
      continue;
    }
    if (out.empty()) throw InputError(lineno, "expected an entry header '[name]'");
    auto [key, value] = split_key(line, lineno, '=');
    auto& e = out.back();
    if (key == "equations") {
      if (!e.equations.empty()) throw InputError(lineno, "equations given twice");
      try {
        parse_structure_equations(value);
      } catch (const StructureParseError& ex) {
        throw InputError(lineno, ex.what());
      } catch (const JacobiFailure&) {
        // syntactically fine; Jacobi is reported by the caller
      }
      e.equations = value;
    } else if (key == "J") {
      e.structures.push_back(value);
    } else if (key == "note") {
      e.note = value;
    } else {
      throw InputError(lineno, "unknown key '" + key + "'");
    }
  }
  for (const auto& e : out)
    if (e.equations.empty()) throw InputError(e.line, "entry '" + e.name + "' has no equations");
  return out;
}

std::vector<CatalogEntry> builtin_catalog() {
  return {
      {"abelian6", "(0,0,0,0,0,0)", {"std"}, "complex torus of dimension 3", 0},
      {"h7", "(0,0,0,12,13,23)", {"std"}, "free 2-step nilpotent on three generators", 0},
      {"heis3+R3", "(0,0,12,0,0,0)", {"std"}, "Heisenberg algebra plus an abelian factor", 0},
      {"kodaira-thurston", "(0,0,0,12)", {"std"}, "Kodaira-Thurston surface", 0},
  };
}

}  // namespace nilhodge
