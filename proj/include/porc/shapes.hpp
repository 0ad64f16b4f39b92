#pragma once

// Matrix-shape descriptions of B and their check against the computed B.
//
// Grammar of a shape (the catalog `shape` key):
//   shape    := template ('|' template)*
//   template := '[' row (';' row)* ']' ('where' cond (',' cond)*)?
//   row      := cell (',' cell)*
//   cell     := '*' | expr
//   cond     := expr            (expr is nonzero)
//             | expr '=' expr
//   expr     := integers, parameters, + - * /, ^n, juxtaposition, parentheses
// Every lowercase letter except `w` is a parameter ranging over GF(p); `w` is
// the primitive root. A `*` entry is arbitrary. Every template also requires
// a nonzero determinant. A shape is the union of its templates.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "porc/autos.hpp"
#include "porc/budget.hpp"
#include "porc/catalog.hpp"
#include "porc/ffield.hpp"
#include "porc/matrix_group.hpp"
#include "porc/structure.hpp"

namespace porc {

class ShapeParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A matrix in B outside the described shape (or a shape matrix outside B).
class ShapeMismatch : public std::runtime_error {
public:
  ShapeMismatch(const std::string& what, MatrixGFp m) : std::runtime_error(what), matrix(std::move(m)) {}
  MatrixGFp matrix;
};

namespace detail {

/// An expression over GF(p) in single-letter parameters.
class ShapeExpr {
public:
  using Values = std::array<Residue, 26>;

  static ShapeExpr parse(std::string_view text) {
    Parser ps{text, 0};
    ShapeExpr e;
    e.root_ = ps.expr();
    ps.skip();
    if (ps.pos != text.size()) ps.fail("unexpected character");
    return e;
  }

  /// nullopt when a division by zero occurs.
  std::optional<Residue> eval(const Values& v, std::uint32_t p, Residue omega) const {
    return root_->eval(v, p, omega);
  }

  /// Bit mask of the parameters used.
  std::uint32_t params() const { return root_->params(); }

private:
  struct Node {
    char op = 0;  // 'c' constant, 'v' variable, '+', '-', '*', '/', 'n' negate, '^'
    std::int64_t value = 0;
    char var = 0;
    std::unique_ptr<Node> a, b;

    std::optional<Residue> eval(const Values& v, std::uint32_t p, Residue omega) const {
      switch (op) {
        case 'c': return reduce(value, p);
        case 'v': return var == 'w' ? omega : v[var - 'a'];
        case 'n': {
          auto x = a->eval(v, p, omega);
          if (!x) return x;
          return reduce(-static_cast<std::int64_t>(*x), p);
        }
        case '^': {
          auto x = a->eval(v, p, omega);
          if (!x) return x;
          return pow_mod(*x, static_cast<std::uint64_t>(value), p);
        }
        default: break;
      }
      auto x = a->eval(v, p, omega), y = b->eval(v, p, omega);
      if (!x || !y) return std::nullopt;
      switch (op) {
        case '+': return static_cast<Residue>((static_cast<std::uint64_t>(*x) + *y) % p);
        case '-': return static_cast<Residue>((static_cast<std::uint64_t>(*x) + p - *y) % p);
        case '*': return mul_mod(*x, *y, p);
        case '/':
          if (*y == 0) return std::nullopt;
          return mul_mod(*x, inv_mod(*y, p), p);
        default: return std::nullopt;
      }
    }

    std::uint32_t params() const {
      std::uint32_t m = op == 'v' && var != 'w' ? 1u << (var - 'a') : 0u;
      if (a) m |= a->params();
      if (b) m |= b->params();
      return m;
    }
  };
  using NodePtr = std::unique_ptr<Node>;

  static NodePtr make(char op, NodePtr a, NodePtr b = nullptr) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  struct Parser {
    std::string_view s;
    std::size_t pos;

    void skip() {
      while (pos < s.size() && s[pos] == ' ') ++pos;
    }
    char peek() {
      skip();
      return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
      throw ShapeParseError(what + " at position " + std::to_string(pos) + " in '" + std::string(s) + "'");
    }
    static bool starts_factor(char c) { return (c >= '0' && c <= '9') || c == '(' || (c >= 'a' && c <= 'z'); }

    NodePtr expr() {
      NodePtr lhs = term();
      for (char c = peek(); c == '+' || c == '-'; c = peek()) {
        ++pos;
        lhs = make(c, std::move(lhs), term());
      }
      return lhs;
    }
    NodePtr term() {
      NodePtr lhs = unary();
      for (;;) {
        const char c = peek();
        if (c == '*' || c == '/') {
          ++pos;
          lhs = make(c, std::move(lhs), unary());
        } else if (starts_factor(c)) {
          lhs = make('*', std::move(lhs), unary());
        } else {
          return lhs;
        }
      }
    }
    NodePtr unary() {
      if (peek() == '-') {
        ++pos;
        return make('n', unary());
      }
      NodePtr base = primary();
      if (peek() == '^') {
        ++pos;
        skip();
        std::int64_t e = 0;
        const std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') e = e * 10 + (s[pos++] - '0');
        if (pos == start) fail("expected exponent");
        auto n = make('^', std::move(base));
        n->value = e;
        return n;
      }
      return base;
    }
    NodePtr primary() {
      const char c = peek();
      if (c == '(') {
        ++pos;
        NodePtr e = expr();
        if (peek() != ')') fail("expected ')'");
        ++pos;
        return e;
      }
      if (c >= '0' && c <= '9') {
        auto n = std::make_unique<Node>();
        n->op = 'c';
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') n->value = n->value * 10 + (s[pos++] - '0');
        return n;
      }
      if (c >= 'a' && c <= 'z') {
        ++pos;
        auto n = std::make_unique<Node>();
        n->op = 'v';
        n->var = c;
        return n;
      }
      fail(c ? "unexpected character" : "unexpected end");
    }
  };

  std::shared_ptr<const Node> root_;
};

inline std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace detail

struct ShapeContext {
  std::uint32_t p;
  Residue omega;
};

class ShapeTemplate {
public:
  static ShapeTemplate parse(std::string_view text, std::size_t k) {
    ShapeTemplate t;
    t.k_ = k;
    const std::string s = detail::trim(text);
    const auto close = s.find(']');
    if (s.empty() || s[0] != '[' || close == std::string::npos) throw ShapeParseError("template must start with '[...]': " + s);
    const auto rows = detail::split(std::string_view(s).substr(1, close - 1), ';');
    if (rows.size() != k) throw ShapeParseError("template has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(k));
    for (const auto& row : rows) {
      const auto cells = detail::split(row, ',');
      if (cells.size() != k) throw ShapeParseError("row '" + row + "' does not have " + std::to_string(k) + " entries");
      for (const auto& c : cells) {
        if (c == "*")
          t.cells_.emplace_back(std::nullopt);
        else
          t.cells_.emplace_back(detail::ShapeExpr::parse(c));
      }
    }
    std::string rest = detail::trim(std::string_view(s).substr(close + 1));
    if (!rest.empty()) {
      if (rest.rfind("where", 0) != 0) throw ShapeParseError("expected 'where' after the matrix: " + rest);
      for (const auto& c : detail::split_top(std::string_view(rest).substr(5), ',')) {
        const auto eq = c.find('=');
        if (eq == std::string::npos)
          t.conds_.push_back({detail::ShapeExpr::parse(c), std::nullopt});
        else
          t.conds_.push_back({detail::ShapeExpr::parse(c.substr(0, eq)), detail::ShapeExpr::parse(c.substr(eq + 1))});
      }
    }
    t.index_params();
    return t;
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t param_count() const noexcept { return params_.size(); }
  std::size_t star_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](const auto& c) { return !c; }));
  }

  bool contains(const MatrixGFp& M, const ShapeContext& ctx) const {
    if (M.k() != k_ || !M.invertible()) return false;
    Values v{};
    return match(M, ctx, 0, v);
  }

  /// Every matrix of the template; returns false (stopping early) if visit does.
  bool for_each(const ShapeContext& ctx, const std::function<bool(const MatrixGFp&)>& visit) const {
    Values v{};
    return enumerate_params(ctx, 0, v, visit);
  }

  /// A random matrix of the template, or nullopt when the draw fails a condition.
  std::optional<MatrixGFp> draw(const ShapeContext& ctx, std::mt19937_64& rng) const {
    Values v{};
    for (auto c : params_) v[c - 'a'] = static_cast<Residue>(rng() % ctx.p);
    if (!conditions_hold(v, ctx)) return std::nullopt;
    MatrixGFp M(k_, ctx.p);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (!cells_[i]) {
        M(i / k_, i % k_) = static_cast<Residue>(rng() % ctx.p);
        continue;
      }
      const auto x = cells_[i]->eval(v, ctx.p, ctx.omega);
      if (!x) return std::nullopt;
      M(i / k_, i % k_) = *x;
    }
    if (!M.invertible()) return std::nullopt;
    return M;
  }

private:
  using Values = detail::ShapeExpr::Values;
  struct Condition {
    detail::ShapeExpr lhs;
    std::optional<detail::ShapeExpr> rhs;
  };

  void index_params() {
    std::uint32_t seen = 0;
    auto add = [&](std::uint32_t mask) {
      for (int c = 0; c < 26; ++c)
        if ((mask >> c & 1) && !(seen >> c & 1)) {
          seen |= 1u << c;
          params_.push_back(static_cast<char>('a' + c));
        }
    };
    for (const auto& c : cells_)
      if (c) add(c->params());
    for (const auto& c : conds_) {
      add(c.lhs.params());
      if (c.rhs) add(c.rhs->params());
    }
    // Cells are checked as soon as their last parameter is assigned.
    level_.assign(cells_.size(), -1);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (!cells_[i]) continue;
      const std::uint32_t mask = cells_[i]->params();
      for (std::size_t j = 0; j < params_.size(); ++j)
        if (mask >> (params_[j] - 'a') & 1) level_[i] = static_cast<int>(j);
    }
  }

  bool conditions_hold(const Values& v, const ShapeContext& ctx) const {
    for (const auto& c : conds_) {
      const auto x = c.lhs.eval(v, ctx.p, ctx.omega);
      if (!x) return false;
      if (!c.rhs) {
        if (*x == 0) return false;
        continue;
      }
      const auto y = c.rhs->eval(v, ctx.p, ctx.omega);
      if (!y || *x != *y) return false;
    }
    return true;
  }

  bool cells_match(const MatrixGFp& M, const ShapeContext& ctx, int level, const Values& v) const {
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (level_[i] != level || !cells_[i]) continue;
      const auto x = cells_[i]->eval(v, ctx.p, ctx.omega);
      if (!x || *x != M(i / k_, i % k_)) return false;
    }
    return true;
  }

  bool match(const MatrixGFp& M, const ShapeContext& ctx, std::size_t j, Values& v) const {
    if (j == 0 && !cells_match(M, ctx, -1, v)) return false;
    if (j == params_.size()) return conditions_hold(v, ctx);
    for (Residue x = 0; x < ctx.p; ++x) {
      v[params_[j] - 'a'] = x;
      if (cells_match(M, ctx, static_cast<int>(j), v) && match(M, ctx, j + 1, v)) return true;
    }
    return false;
  }

  bool enumerate_params(const ShapeContext& ctx, std::size_t j, Values& v,
                        const std::function<bool(const MatrixGFp&)>& visit) const {
    if (j < params_.size()) {
      for (Residue x = 0; x < ctx.p; ++x) {
        v[params_[j] - 'a'] = x;
        if (!enumerate_params(ctx, j + 1, v, visit)) return false;
      }
      return true;
    }
    if (!conditions_hold(v, ctx)) return true;
    MatrixGFp M(k_, ctx.p);
    std::vector<std::size_t> stars;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (!cells_[i]) {
        stars.push_back(i);
        continue;
      }
      const auto x = cells_[i]->eval(v, ctx.p, ctx.omega);
      if (!x) return true;
      M(i / k_, i % k_) = *x;
    }
    for (;;) {
      if (M.invertible() && !visit(M)) return false;
      std::size_t s = 0;
      for (; s < stars.size(); ++s) {
        Residue& cell = M(stars[s] / k_, stars[s] % k_);
        if (++cell < ctx.p) break;
        cell = 0;
      }
      if (s == stars.size()) return true;
    }
  }

  std::size_t k_ = 0;
  std::vector<std::optional<detail::ShapeExpr>> cells_;
  std::vector<Condition> conds_;
  std::vector<char> params_;
  std::vector<int> level_;
};

class ShapeDescriptor {
public:
  static ShapeDescriptor parse(std::string name, std::string_view text, std::size_t k) {
    ShapeDescriptor d;
    d.name_ = std::move(name);
    d.text_ = std::string(text);
    for (const auto& t : detail::split_top(text, '|')) d.templates_.push_back(ShapeTemplate::parse(t, k));
    if (d.templates_.empty()) throw ShapeParseError("empty shape");
    return d;
  }

  const std::string& name() const noexcept { return name_; }
  const std::string& text() const noexcept { return text_; }
  const std::vector<ShapeTemplate>& templates() const noexcept { return templates_; }

  bool contains(const MatrixGFp& M, const ShapeContext& ctx) const {
    return std::any_of(templates_.begin(), templates_.end(), [&](const auto& t) { return t.contains(M, ctx); });
  }

  /// Number of raw assignments an exhaustive sweep visits.
  double sweep_size(std::uint32_t p) const {
    double total = 0;
    for (const auto& t : templates_) total += std::pow(double(p), double(t.param_count() + t.star_count()));
    return total;
  }

  /// All distinct matrices of the shape; BudgetExceeded when the sweep is larger than limit.
  std::vector<MatrixGFp> elements(const ShapeContext& ctx, double limit) const {
    const double size = sweep_size(ctx.p);
    if (size > limit) throw BudgetExceeded("shape sweep", size, limit);
    std::unordered_set<MatrixGFp, MatrixHash> seen;
    std::vector<MatrixGFp> out;
    for (const auto& t : templates_)
      t.for_each(ctx, [&](const MatrixGFp& M) {
        if (seen.insert(M).second) out.push_back(M);
        return true;
      });
    return out;
  }

  std::optional<MatrixGFp> draw(const ShapeContext& ctx, std::mt19937_64& rng) const {
    return templates_[rng() % templates_.size()].draw(ctx, rng);
  }

private:
  std::string name_, text_;
  std::vector<ShapeTemplate> templates_;
};

/// The shape readings recorded for an entry: the primary `shape` and, where
/// the printed description looks inconsistent, an alternative `shape_alt`.
inline std::vector<ShapeDescriptor> shape_descriptors(const CatalogEntry& e) {
  std::vector<ShapeDescriptor> out;
  if (!e.shape.empty()) out.push_back(ShapeDescriptor::parse("printed", e.shape, e.k));
  if (!e.shape_alt.empty()) out.push_back(ShapeDescriptor::parse("alternative", e.shape_alt, e.k));
  return out;
}

/// A partial shape has entries tied by relations it does not spell out, so
/// only B inside the shape is checked.
inline bool shape_is_partial(const CatalogEntry& e) {
  return std::find(e.flags.begin(), e.flags.end(), "shape-partial") != e.flags.end();
}

struct ShapeCheckOptions {
  double enumerate_limit = 1e5;    // |B| up to this is enumerated in full
  std::size_t b_samples = 2000;    // random elements of B otherwise
  double sweep_limit = 2e5;        // shapes up to this are swept in full
  std::size_t shape_samples = 2000;  // random shape matrices otherwise
  std::uint64_t seed = 1;
};

struct ShapeReport {
  std::string descriptor;
  bool partial = false;
  std::size_t b_checked = 0;
  bool b_exhaustive = false;
  std::optional<MatrixGFp> b_outside;  // an element of B the shape misses
  std::size_t shape_checked = 0;
  bool shape_exhaustive = false;
  std::optional<MatrixGFp> shape_extra;  // a shape matrix not in B
  std::optional<std::uint64_t> shape_count;

  bool matches() const { return !b_outside && !shape_extra; }
  std::string status() const {
    if (b_outside) return "mismatch: B element outside shape";
    if (shape_extra) return "mismatch: shape matrix outside B";
    if (partial) return b_exhaustive ? "B inside shape" : "sampled B inside shape";
    return b_exhaustive && shape_exhaustive ? "exact" : "sampled";
  }
};

/// Checks B against each recorded shape reading: every element of B (all of
/// them when |B| is small, random ones otherwise) must match, and every shape
/// matrix (or a random sample) must stabilize W. With both exhaustive, the
/// shape count equals |B| exactly when both checks pass.
inline std::vector<ShapeReport> shape_check(const CatalogEntry& e, const Presentation& P, const BigInt& b_order,
                                            const ShapeCheckOptions& opt = {}) {
  const auto params = resolve_params(P.modulus());
  const ShapeContext ctx{P.p(), params.omega};
  const auto descriptors = shape_descriptors(e);
  if (descriptors.empty()) return {};
  std::vector<MatrixGFp> b_elems;
  bool b_exhaustive = false;
  if (b_order <= BigInt(static_cast<std::uint64_t>(opt.enumerate_limit))) {
    SearchOptions so;
    so.collect = true;
    so.collect_limit = static_cast<std::size_t>(opt.enumerate_limit) + 1;
    so.node_budget = std::numeric_limits<std::uint64_t>::max();
    b_elems = stabilizer_order_backtrack(FormSystem::from_presentation(P), so).elements;
    b_exhaustive = true;
  } else {
    b_elems = sample_stabilizer(P, opt.b_samples, opt.seed);
  }
  std::vector<ShapeReport> out;
  for (const auto& d : descriptors) {
    ShapeReport r;
    r.descriptor = d.name();
    r.partial = shape_is_partial(e);
    r.b_exhaustive = b_exhaustive;
    for (const auto& M : b_elems) {
      ++r.b_checked;
      if (!d.contains(M, ctx)) {
        r.b_outside = M;
        break;
      }
    }
    if (!r.partial) {
      if (d.sweep_size(ctx.p) <= opt.sweep_limit) {
        const auto elems = d.elements(ctx, opt.sweep_limit);
        r.shape_exhaustive = true;
        r.shape_count = elems.size();
        for (const auto& M : elems) {
          ++r.shape_checked;
          if (!stabilizes(M, P.relations())) {
            r.shape_extra = M;
            break;
          }
        }
      } else {
        std::mt19937_64 rng(opt.seed);
        for (std::size_t tries = 0; r.shape_checked < opt.shape_samples && tries < 50 * opt.shape_samples; ++tries) {
          const auto M = d.draw(ctx, rng);
          if (!M) continue;
          ++r.shape_checked;
          if (!stabilizes(*M, P.relations())) {
            r.shape_extra = *M;
            break;
          }
        }
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace porc
