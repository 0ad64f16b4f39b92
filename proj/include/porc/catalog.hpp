#pragma once

// The catalog of class-two exponent-p groups: relator parsing, the catalog
// file format and instantiation at a concrete prime.
//
// Catalog file format. Blank lines and lines starting with '#' are ignored.
// Each record opens with "[id]" and continues with "key = value" lines:
//
//   n            order exponent, |G| = p^n
//   k            number of generators a, b, c, ... (at most 7)
//   presentation display form of the presentation (free text)
//   relators     ';'-separated relators; empty for none
//   mparam       plus | minus: which cubic family the symbol m refers to
//   classes      class-count formula in p (G_p's also uses E)
//   aut          |Aut(G)| formula in p
//   aut[R]       case of a piecewise |Aut(G)|: R is "r" (p = r mod 12),
//   aut[R,V=0]   optionally further split on whether V_p vanishes
//   aut[R,V>0]
//   dp[...]      descendant-count cases, same guard syntax
//   shape        matrix shape of B, grammar in porc/shapes.hpp
//   shape_alt    an alternative reading of the shape, checked alongside it
//   recipe       generator recipe id (porc/recipes.hpp)
//   flags        ','-separated flags; "shape-partial" marks a shape that
//                contains B but is not claimed to equal it
//
// Relators: relator := side ('=' side)*, side := '1' | term+,
// term := '[' x ',' y ']' ('^' exponent)?, exponent := scalar | '{' scalar '}',
// scalar := ['-'] [int] [symbol] with symbol one of w, ω, omega, m.
// "A = B" contributes w(A) - w(B) to W; a bare product contributes w(A).
// Commutators not mentioned in any relator are free.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "porc/catalog_data.hpp"
#include "porc/ffield.hpp"
#include "porc/formula.hpp"
#include "porc/structure.hpp"

namespace porc {

class CatalogError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public CatalogError {
public:
  ParseError(const std::string& what, std::size_t position)
      : CatalogError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

class UnknownGenerator : public CatalogError {
public:
  using CatalogError::CatalogError;
};

class UnknownEntry : public CatalogError {
public:
  using CatalogError::CatalogError;
};

enum class Symbol { One, Omega, MPlus, MMinus };

struct SymbolicScalar {
  std::int64_t coefficient = 1;
  Symbol symbol = Symbol::One;

  Residue resolve(const ResolvedParams& params, const Field& f) const {
    Residue s = 1;
    switch (symbol) {
      case Symbol::One: s = 1; break;
      case Symbol::Omega: s = params.omega; break;
      case Symbol::MPlus: s = params.m_plus; break;
      case Symbol::MMinus: s = params.m_minus; break;
    }
    return f.mul(f.from_int(coefficient), s);
  }

  friend bool operator==(const SymbolicScalar&, const SymbolicScalar&) = default;
};

struct SymbolicTerm {
  std::size_t coord;  // wedge position of e_i ^ e_j, i < j
  SymbolicScalar scalar;
};

/// A relator as a wedge vector with symbolic coefficients (terms may repeat a coordinate).
using SymbolicWedge = std::vector<SymbolicTerm>;

namespace detail {

class RelatorParser {
public:
  RelatorParser(std::string_view s, std::size_t k, CubicFamily mfam)
      : s_(s), k_(k), coords_(k), m_symbol_(mfam == CubicFamily::Plus ? Symbol::MPlus : Symbol::MMinus) {}

  SymbolicWedge parse() {
    SymbolicWedge out;
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("empty relator", pos_);
    side(out, +1);
    while (peek() == '=') {
      ++pos_;
      side(out, -1);
    }
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return out;
  }

private:
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::size_t generator() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("expected generator", pos_);
    const char c = s_[pos_];
    if (c < 'a' || c > 'z') throw ParseError(std::string("expected generator, got '") + c + "'", pos_);
    const std::size_t g = static_cast<std::size_t>(c - 'a');
    if (g >= k_)
      throw UnknownGenerator(std::string("generator '") + c + "' outside alphabet of rank " +
                             std::to_string(k_));
    ++pos_;
    return g;
  }

  bool consume(std::string_view word) {
    if (s_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  SymbolicScalar scalar() {
    SymbolicScalar sc;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '-') {
      sc.coefficient = -1;
      ++pos_;
    }
    skip_ws();
    bool any = false;
    if (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
      std::int64_t v = 0;
      while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') v = v * 10 + (s_[pos_++] - '0');
      sc.coefficient *= v;
      any = true;
    }
    skip_ws();
    if (consume("omega") || consume("\xCF\x89") || consume("w")) {
      sc.symbol = Symbol::Omega;
      any = true;
    } else if (consume("m")) {
      sc.symbol = m_symbol_;
      any = true;
    }
    if (!any) throw ParseError("expected exponent", pos_);
    return sc;
  }

  void term(SymbolicWedge& out, int sign) {
    expect('[');
    const std::size_t x = generator();
    expect(',');
    const std::size_t y = generator();
    expect(']');
    if (x == y) throw ParseError("commutator of a generator with itself", pos_);
    SymbolicScalar sc;
    if (peek() == '^') {
      ++pos_;
      if (peek() == '{') {
        ++pos_;
        sc = scalar();
        expect('}');
      } else {
        sc = scalar();
      }
    }
    // w([a_i, a_j]) = +e_ij for i < j and -e_ji for i > j.
    const std::int64_t orient = x < y ? 1 : -1;
    sc.coefficient *= orient * sign;
    out.push_back({coords_.index(std::min(x, y), std::max(x, y)), sc});
  }

  void side(SymbolicWedge& out, int sign) {
    if (peek() == '1') {
      ++pos_;
      return;
    }
    if (peek() != '[') throw ParseError("expected '['", pos_);
    while (peek() == '[') term(out, sign);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t k_;
  WedgeCoords coords_;
  Symbol m_symbol_;
};

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      auto t = trim(s.substr(start, i - start));
      if (!t.empty()) out.push_back(std::move(t));
      start = i + 1;
    }
  }
  return out;
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

inline SymbolicWedge parse_relator(std::string_view text, std::size_t k,
                                   CubicFamily mfam = CubicFamily::Plus) {
  return detail::RelatorParser(text, k, mfam).parse();
}

/// Dense wedge vector of a relator with its symbols resolved at a prime.
inline Vec resolve_relator(const SymbolicWedge& w, std::size_t k, const ResolvedParams& params,
                           const Field& f) {
  Vec v(k * (k - 1) / 2, 0);
  for (const auto& t : w) v[t.coord] = f.add(v[t.coord], t.scalar.resolve(params, f));
  return v;
}

struct CatalogEntry {
  std::string id;
  unsigned n = 0;
  unsigned k = 0;
  std::string presentation;
  std::vector<std::string> relators;
  CubicFamily mparam = CubicFamily::Plus;
  bool uses_mparam = false;
  Formula class_poly;
  Formula aut_formula;
  CaseFormula aut_cases;
  CaseFormula dp_cases;
  std::string shape;
  std::string shape_alt;
  std::string recipe;
  std::vector<std::string> flags;
  std::uint64_t content_hash = 0;

  bool piecewise_aut() const noexcept { return !aut_cases.empty(); }
  bool is_gp() const noexcept { return id == "Gp"; }
};

/// Result of instantiating an entry: the presentation plus the parameters used.
struct Instance {
  Presentation presentation;
  ResolvedParams params;
};

class Catalog {
public:
  static Catalog parse(std::string_view text) {
    Catalog cat;
    CatalogEntry* cur = nullptr;
    std::string block;
    auto finish = [&] {
      if (cur) cur->content_hash = detail::fnv1a(block);
      block.clear();
    };
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string t = detail::trim(line);
      if (t.empty() || t[0] == '#') continue;
      if (t.front() == '[' && t.back() == ']') {
        finish();
        cat.entries_.push_back({});
        cur = &cat.entries_.back();
        cur->id = detail::trim(std::string_view(t).substr(1, t.size() - 2));
        block = t + "\n";
        continue;
      }
      if (!cur) throw CatalogError("line " + std::to_string(lineno) + ": key outside a record");
      block += t + "\n";
      std::size_t eq = 0;
      for (int depth = 0; eq < t.size() && !(t[eq] == '=' && depth == 0); ++eq)
        depth += t[eq] == '[' ? 1 : t[eq] == ']' ? -1 : 0;
      if (eq == t.size())
        throw CatalogError("line " + std::to_string(lineno) + ": expected 'key = value'");
      const std::string key = detail::trim(std::string_view(t).substr(0, eq));
      const std::string value = detail::trim(std::string_view(t).substr(eq + 1));
      try {
        cat.apply(*cur, key, value);
      } catch (const std::exception& e) {
        throw CatalogError("line " + std::to_string(lineno) + " (" + cur->id + "): " + e.what());
      }
    }
    finish();
    for (const auto& e : cat.entries_) cat.check(e);
    return cat;
  }

  static Catalog from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  static const Catalog& builtin() {
    static const Catalog cat = parse(kCatalogText);
    return cat;
  }

  const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }

  const CatalogEntry& at(std::string_view id) const {
    for (const auto& e : entries_)
      if (e.id == id) return e;
    throw UnknownEntry("no catalog entry '" + std::string(id) + "'");
  }

  bool contains(std::string_view id) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.id == id; });
  }

  /// Order exponent -> number of entries, excluding G_p.
  std::map<unsigned, unsigned> census() const {
    std::map<unsigned, unsigned> out;
    for (const auto& e : entries_)
      if (!e.is_gp()) ++out[e.n];
    return out;
  }

private:
  static CaseGuard parse_guard(const std::string& g) {
    const auto parts = detail::split(g, ',');
    if (parts.empty()) throw CatalogError("empty case guard");
    CaseGuard guard;
    guard.residue_mod12 = static_cast<unsigned>(std::stoul(parts[0]));
    if (parts.size() > 1) {
      if (parts[1] == "V=0")
        guard.v = CaseGuard::VCondition::Zero;
      else if (parts[1] == "V>0")
        guard.v = CaseGuard::VCondition::Positive;
      else
        throw CatalogError("unknown guard '" + parts[1] + "'");
    }
    return guard;
  }

  void apply(CatalogEntry& e, const std::string& key, const std::string& value) {
    if (key == "n") e.n = static_cast<unsigned>(std::stoul(value));
    else if (key == "k") e.k = static_cast<unsigned>(std::stoul(value));
    else if (key == "presentation") e.presentation = value;
    else if (key == "relators") e.relators = detail::split(value, ';');
    else if (key == "classes") e.class_poly = Formula::parse(value);
    else if (key == "aut") e.aut_formula = Formula::parse(value);
    else if (key == "shape") e.shape = value;
    else if (key == "shape_alt") e.shape_alt = value;
    else if (key == "recipe") e.recipe = value;
    else if (key == "flags") e.flags = detail::split(value, ',');
    else if (key == "mparam") {
      e.uses_mparam = true;
      if (value == "plus") e.mparam = CubicFamily::Plus;
      else if (value == "minus") e.mparam = CubicFamily::Minus;
      else throw CatalogError("mparam must be plus or minus");
    } else if (key.rfind("aut[", 0) == 0 && key.back() == ']') {
      e.aut_cases.cases.push_back({parse_guard(key.substr(4, key.size() - 5)), Formula::parse(value)});
    } else if (key.rfind("dp[", 0) == 0 && key.back() == ']') {
      e.dp_cases.cases.push_back({parse_guard(key.substr(3, key.size() - 4)), Formula::parse(value)});
    } else {
      throw CatalogError("unknown key '" + key + "'");
    }
  }

  void check(const CatalogEntry& e) const {
    if (e.k < 2 || e.k > 7) throw CatalogError(e.id + ": k must lie in [2, 7]");
    if (e.class_poly.empty()) throw CatalogError(e.id + ": missing class formula");
    if (e.aut_formula.empty() && e.aut_cases.empty()) throw CatalogError(e.id + ": missing aut formula");
    for (const auto& r : e.relators) parse_relator(r, e.k, e.mparam);
    if (std::count_if(entries_.begin(), entries_.end(), [&](const auto& o) { return o.id == e.id; }) != 1)
      throw CatalogError("duplicate id " + e.id);
  }

  std::vector<CatalogEntry> entries_;
};

inline std::vector<Vec> relation_vectors(const CatalogEntry& e, const ResolvedParams& params,
                                         const Field& f) {
  std::vector<Vec> rows;
  for (const auto& r : e.relators)
    rows.push_back(resolve_relator(parse_relator(r, e.k, e.mparam), e.k, params, f));
  return rows;
}

inline Instance instantiate(const CatalogEntry& e, PrimeModulus p) {
  const ResolvedParams params = resolve_params(p);
  const Field f(p);
  RelationSubspace w(e.k, p, relation_vectors(e, params, f));
  Presentation P = Presentation::from_relations(std::move(w));
  const Diagnostics d = validate(P);
  if (!d.ok()) throw CatalogError(e.id + ": invalid presentation: " + to_string(d.failures[0].invariant));
  if (P.order_exponent() != e.n)
    throw CatalogError(e.id + ": instantiated order p^" + std::to_string(P.order_exponent()) +
                       " but catalog states p^" + std::to_string(e.n));
  return {std::move(P), params};
}

inline Instance instantiate(const Catalog& cat, std::string_view id, PrimeModulus p) {
  return instantiate(cat.at(id), p);
}

inline BigInt class_poly_eval(const CatalogEntry& e, unsigned p) {
  if (e.is_gp()) throw FormulaError("the class count of Gp depends on E; use gp_class_formula");
  return e.class_poly.eval_at(p);
}

/// |Aut(G)| from the catalog formula. v_p is consulted only by piecewise entries.
inline BigInt aut_formula_eval(const CatalogEntry& e, unsigned p, std::optional<std::uint64_t> v_p = {}) {
  if (!e.piecewise_aut()) return e.aut_formula.eval_at(p);
  if (p % 2 == 0 || p % 3 == 0) throw CaseNotCovered("p = " + std::to_string(p) + " not coprime to 12");
  std::uint64_t v = 0;
  if (p % 12 == 1) {
    if (!v_p) throw CaseNotCovered("p = 1 mod 12 requires V_p");
    v = *v_p;
  }
  return e.aut_cases.eval(p, v);
}

/// |B| = |Aut(G)| / p^(m k), requiring exact divisibility.
inline BigInt expected_B_order(const CatalogEntry& e, unsigned p, std::optional<std::uint64_t> v_p = {}) {
  const unsigned m = e.n - e.k;
  const BigInt aut = aut_formula_eval(e, p, v_p);
  const BigInt denom = big_pow(p, m * e.k);
  if (aut % denom != 0)
    throw DivisibilityError(e.id + ": |Aut| = " + aut.str() + " not divisible by p^" +
                            std::to_string(m * e.k));
  return aut / denom;
}

}  // namespace porc
