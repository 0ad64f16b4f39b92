#pragma once

// Explicit generating sets for B, given as single matrices and
// matrix families. A family is a matrix-valued function of parameters in
// GF(p) (some required nonzero); every parameter value is swept when the
// product space is small, otherwise each parameter is varied on its own
// around a base point. Recipes cross-check the row search: each matrix must
// stabilize W and the Schreier-Sims order of the set should equal |B|.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "porc/ffield.hpp"
#include "porc/matrix_group.hpp"

namespace porc {

class RecipeUnavailable : public std::runtime_error {
public:
  explicit RecipeUnavailable(const std::string& id) : std::runtime_error("no generator recipe for " + id) {}
};

class ParameterDomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A residue with field operators, for writing matrix entries as formulas.
class Fp {
public:
  Fp(std::int64_t v, std::uint32_t p) : v_(reduce(v, p)), p_(p) {}

  Residue value() const noexcept { return v_; }
  std::uint32_t p() const noexcept { return p_; }
  bool zero() const noexcept { return v_ == 0; }

  Fp operator-() const { return Fp(-static_cast<std::int64_t>(v_), p_); }
  Fp inv() const {
    if (!v_) throw ParameterDomainError("a recipe entry divides by zero mod " + std::to_string(p_));
    return Fp(inv_mod(v_, p_), p_);
  }

  friend Fp operator+(Fp a, Fp b) { return Fp(static_cast<std::int64_t>(a.v_) + b.v_, a.p_); }
  friend Fp operator-(Fp a, Fp b) { return Fp(static_cast<std::int64_t>(a.v_) - b.v_, a.p_); }
  friend Fp operator*(Fp a, Fp b) { return Fp(mul_mod(a.v_, b.v_, a.p_), a.p_); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
  friend Fp operator+(Fp a, std::int64_t b) { return a + Fp(b, a.p_); }
  friend Fp operator+(std::int64_t a, Fp b) { return Fp(a, b.p_) + b; }
  friend Fp operator-(Fp a, std::int64_t b) { return a - Fp(b, a.p_); }
  friend Fp operator-(std::int64_t a, Fp b) { return Fp(a, b.p_) - b; }
  friend Fp operator*(Fp a, std::int64_t b) { return a * Fp(b, a.p_); }
  friend Fp operator*(std::int64_t a, Fp b) { return Fp(a, b.p_) * b; }
  friend Fp operator/(Fp a, std::int64_t b) { return a / Fp(b, a.p_); }
  friend Fp operator/(std::int64_t a, Fp b) { return Fp(a, b.p_) / b; }
  friend bool operator==(Fp a, Fp b) noexcept { return a.v_ == b.v_; }

private:
  Residue v_;
  std::uint32_t p_;
};

/// A matrix entry written either as an integer literal or as an Fp formula.
struct Entry {
  Entry(int v) : literal(v) {}  // NOLINT: implicit by design
  Entry(Fp v) : value(v) {}     // NOLINT
  std::int64_t literal = 0;
  std::optional<Fp> value;
};

inline MatrixGFp make_matrix(std::uint32_t p, std::initializer_list<std::initializer_list<Entry>> rows) {
  MatrixGFp m(rows.size(), p);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw std::invalid_argument("recipe matrix is not square");
    std::size_t j = 0;
    for (const auto& e : row) m(i, j++) = e.value ? e.value->value() : reduce(e.literal, p);
    ++i;
  }
  return m;
}

inline MatrixGFp scaled(Fp s, MatrixGFp m) {
  for (std::size_t i = 0; i < m.k(); ++i)
    for (std::size_t j = 0; j < m.k(); ++j) m(i, j) = mul_mod(m(i, j), s.value(), m.p());
  return m;
}

enum class Domain { Any, NonZero };

struct Family {
  std::string name;
  std::vector<Domain> params;
  /// nullopt when the parameters violate a stated side condition.
  std::function<std::optional<MatrixGFp>(const std::vector<Fp>&)> build;
  std::vector<std::int64_t> base;  // base point of the axis sweep; defaults to all ones
};

struct RecipeContext {
  std::uint32_t p;
  ResolvedParams params;
  Fp c(std::int64_t v) const { return Fp(v, p); }
  Fp omega() const { return c(params.omega); }
};

struct Recipe {
  std::string id;     // recipe id; the entry id, or entry id plus a suffix for conjectured smaller sets
  std::string entry;  // catalog entry whose B it generates
  bool hypothesis = false;  // a conjectured generating set, reported, never assumed
  std::string note;
  std::function<std::vector<Family>(const RecipeContext&)> families;
};

struct RecipeOutput {
  std::vector<MatrixGFp> matrices;
  std::size_t singular = 0;  // parameter values allowed as written that gave a singular matrix
  bool axis_sweep = false;   // some family was too large to sweep fully
};

inline constexpr double kFullSweepLimit = 5e5;

namespace detail {

inline Family single(std::string name, MatrixGFp m) {
  return {std::move(name), {}, [m](const std::vector<Fp>&) { return std::optional<MatrixGFp>(m); }, {}};
}

inline void sweep_family(const Family& fam, std::uint32_t p, RecipeOutput& out) {
  const std::size_t n = fam.params.size();
  auto emit = [&](const std::vector<Fp>& v) {
    const auto m = fam.build(v);
    if (!m) return;
    if (!m->invertible()) {
      ++out.singular;
      return;
    }
    out.matrices.push_back(*m);
  };
  double total = 1;
  for (auto d : fam.params) total *= d == Domain::Any ? p : p - 1;
  auto first = [&](Domain d) { return d == Domain::Any ? 0u : 1u; };
  if (total <= kFullSweepLimit) {
    std::vector<std::uint32_t> digit(n);
    for (std::size_t i = 0; i < n; ++i) digit[i] = first(fam.params[i]);
    for (;;) {
      std::vector<Fp> v;
      for (std::size_t i = 0; i < n; ++i) v.emplace_back(digit[i], p);
      emit(v);
      std::size_t i = 0;
      for (; i < n; ++i) {
        if (++digit[i] < p) break;
        digit[i] = first(fam.params[i]);
      }
      if (i == n) return;
    }
  }
  out.axis_sweep = true;
  std::vector<Fp> base;
  for (std::size_t i = 0; i < n; ++i) base.emplace_back(fam.base.empty() ? 1 : fam.base[i], p);
  emit(base);
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t x = first(fam.params[i]); x < p; ++x) {
      auto v = base;
      v[i] = Fp(x, p);
      emit(v);
    }
}

/// Rows (r1, r2) of the first kind for the form system of example two:
/// rows 3 and 4 are (-w th, w eta, zeta, -eps) and (w delta, -w gamma, -beta, alpha).
inline MatrixGFp first_kind(const RecipeContext& C, const std::vector<Fp>& r1, const std::vector<Fp>& r2) {
  const Fp w = C.omega();
  const Fp &al = r1[0], &be = r1[1], &ga = r1[2], &de = r1[3];
  const Fp &ep = r2[0], &ze = r2[1], &et = r2[2], &th = r2[3];
  return make_matrix(C.p, {{al, be, ga, de}, {ep, ze, et, th}, {-(w * th), w * et, ze, -ep}, {w * de, -(w * ga), -be, al}});
}

inline std::vector<Family> recipe_gl2(const RecipeContext& C) {
  const std::uint32_t p = C.p;
  return {single("diag(w,1)", make_matrix(p, {{C.omega(), 0}, {0, 1}})),
          single("(-1,1;-1,0)", make_matrix(p, {{-1, 1}, {-1, 0}}))};
}

inline std::vector<Family> recipe_5_4_1(const RecipeContext& C) {
  const std::uint32_t p = C.p;
  const Fp w = C.omega();
  return {single("diag(w,1,1,1)", make_matrix(p, {{w, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})),
          single("gl2 top", make_matrix(p, {{-1, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})),
          single("diag(1,1,w,1)", make_matrix(p, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, w, 0}, {0, 0, 0, 1}})),
          single("gl2 bottom", make_matrix(p, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 1}, {0, 0, -1, 0}})),
          single("I+E13", make_matrix(p, {{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})),
          single("I+E14", make_matrix(p, {{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})),
          single("I+E23", make_matrix(p, {{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})),
          single("I+E24", make_matrix(p, {{1, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 0}, {0, 0, 0, 1}}))};
}

inline std::vector<Family> recipe_6_4_3(const RecipeContext& C) {
  const std::uint32_t p = C.p;
  const Fp w = C.omega();
  return {single("diag(1,1,w,w)", make_matrix(p, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, w, 0}, {0, 0, 0, w}})),
          single("diag(w,1,1,w)", make_matrix(p, {{w, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, w}})),
          single("gl2 pair", make_matrix(p, {{-1, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, -1}})),
          single("I+E13", make_matrix(p, {{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})),
          single("I+E14", make_matrix(p, {{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})),
          single("I+E23", make_matrix(p, {{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})),
          single("I+E24", make_matrix(p, {{1, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 0}, {0, 0, 0, 1}}))};
}

/// Generators of the first-kind subgroup with first row (1,0,0,0), and the swap.
inline std::vector<Family> recipe_6_4_4_core(const RecipeContext& C) {
  const std::uint32_t p = C.p;
  const Fp w = C.omega();
  std::vector<Family> out{
      single("diag(1,1,-1,-1)", make_matrix(p, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}})),
      single("T1", make_matrix(p, {{1, 0, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, -1}, {0, 0, 0, 1}})),
      single("T2", make_matrix(p, {{1, 0, 0, 0}, {0, 1, 0, 1}, {-w, 0, 1, 0}, {0, 0, 0, 1}}))};
  out.push_back({"T3(zeta,eta)",
                 {Domain::Any, Domain::Any},
                 [C, w](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
                   const Fp &ze = v[0], &et = v[1];
                   if (ze.zero() && et.zero()) return std::nullopt;
                   return make_matrix(C.p, {{1, 0, 0, 0}, {0, ze, et, 0}, {0, w * et, ze, 0}, {0, 0, 0, 1}});
                 },
                 {}});
  return out;
}

inline std::vector<Family> recipe_6_4_4(const RecipeContext& C) {
  auto out = recipe_6_4_4_core(C);
  out.push_back({"first kind, general first row",
                 {Domain::Any, Domain::Any, Domain::Any, Domain::Any},
                 [C](const std::vector<Fp>& r1) -> std::optional<MatrixGFp> {
                   if (r1[0].zero() && r1[1].zero() && r1[2].zero() && r1[3].zero()) return std::nullopt;
                   const bool ad = !r1[0].zero() || !r1[3].zero();
                   std::vector<Fp> r2{C.c(ad ? 0 : 1), C.c(ad ? 1 : 0), C.c(0), C.c(0)};
                   return first_kind(C, r1, r2);
                 },
                 {}});
  return out;
}

inline std::vector<Family> recipe_6_4_4_single(const RecipeContext& C) {
  auto out = recipe_6_4_4_core(C);
  // First row (0,1,0,0); alpha = delta = 0, so the second row is (1,0,0,0).
  out.push_back(single("first kind, rows e2, e1",
                       first_kind(C, {C.c(0), C.c(1), C.c(0), C.c(0)}, {C.c(1), C.c(0), C.c(0), C.c(0)})));
  return out;
}

inline std::vector<Family> recipe_7_5_6(const RecipeContext& C) {
  const Fp w = C.omega();
  const std::vector<Domain> dom{Domain::Any, Domain::Any, Domain::Any, Domain::Any, Domain::NonZero};
  return {{"first",
           dom,
           [C, w](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &al = v[0], &be = v[1], &ga = v[2], &de = v[3], &la = v[4];
             return make_matrix(C.p, {{w, al, be, 0, ga},
                                       {0, w * la, 0, 0, 0},
                                       {0, 0, la, 0, 0},
                                       {0, ga / w, -(al / w), 1, de},
                                       {0, 0, 0, 0, w * w * la}});
           },
           {}},
          {"second",
           dom,
           [C](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &al = v[0], &be = v[1], &ga = v[2], &de = v[3], &la = v[4];
             return make_matrix(C.p, {{-1, al, be, 1, ga},
                                       {0, la, 0, 0, 2 * la},
                                       {0, 0, 0, 0, la},
                                       {-1, de, be - de, 0, de - al},
                                       {0, -la, la, 0, -la}});
           },
           {}}};
}

inline MatrixGFp matrix_8_5_7_order3(const RecipeContext& C) {
  const Fp m = C.c(C.params.m_plus), u = C.c(C.params.u_plus);
  return make_matrix(C.p, {{1, 0, 0, 0, 0},
                            {0, (u - 9) / (2 * m * m), 3 / m, 0, 0},
                            {0, 1, (u + 9) / (2 * m * m), 0, 0},
                            {-((u + 3) * m / (2 * u)), 0, 0, (u * u - 2 * u + 9) / (4 * u), m * m / u},
                            {-((u + 1) * m * m / (2 * u)), 0, 0, (u * u + 3) * m / (4 * u), -((u * u + 2 * u + 9) / (4 * u))}});
}

inline std::vector<Family> recipe_8_5_7(const RecipeContext& C) {
  const Fp m = C.c(C.params.m_plus);
  return {{"first row e1",
           {Domain::Any, Domain::NonZero, Domain::Any, Domain::Any},
           [C, m](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &al = v[0], &be = v[1], &ga = v[2], &de = v[3];
             return make_matrix(C.p, {{1, 0, 0, 0, 0},
                                       {al, be, 0, ga, de},
                                       {-ga, 0, be, m * al + de, -al},
                                       {0, 0, 0, 1, 0},
                                       {0, 0, 0, 0, 1}});
           },
           {}},
          single("order three", matrix_8_5_7_order3(C)),
          {"first row (a,0,0,b,c)",
           {Domain::Any, Domain::Any, Domain::Any},
           [C, m](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &al = v[0], &be = v[1], &ga = v[2];
             if (al.zero() && be.zero() && ga.zero()) return std::nullopt;
             return make_matrix(C.p, {{al, 0, 0, be, ga},
                                       {0, 1, 0, 0, 0},
                                       {0, 0, 1, 0, 0},
                                       {ga, 0, 0, al, -be - m * ga},
                                       {be + m * ga, 0, 0, -ga, al - m * be - m * m * ga}});
           },
           {}}};
}

inline std::vector<Family> recipe_8_5_8(const RecipeContext& C) {
  const Fp w = C.omega();
  auto diag_kind = [C, w](bool second) {
    return [C, w, second](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
      const Fp &al = v[0], &be = v[1], &xi = v[2];
      if (al.zero() && be.zero()) return std::nullopt;
      const Fp n = al * al - w * be * be;
      const Fp s = second ? C.c(-1) : C.c(1);
      return scaled(xi, make_matrix(C.p, {{al, 0, w * be, 0, 0},
                                           {0, s * n, 0, 0, 0},
                                           {s * be, 0, s * al, 0, 0},
                                           {0, 0, 0, n, 0},
                                           {0, 0, 0, 0, 1}}));
    };
  };
  return {{"unipotent-by-scalar",
           {Domain::Any, Domain::Any, Domain::Any, Domain::NonZero},
           [C, w](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &la = v[0], &mu = v[1], &nu = v[2], &xi = v[3];
             return make_matrix(C.p, {{1, 0, 0, 0, 2 * mu * xi},
                                       {la, xi.inv(), mu, 0, nu},
                                       {0, 0, 1, 0, -(2 * la * xi)},
                                       {mu, 0, w * la, xi.inv(), -(w * la * la * xi) + mu * mu * xi},
                                       {0, 0, 0, 0, xi}});
           },
           {}},
          {"first diagonal kind", {Domain::Any, Domain::Any, Domain::NonZero}, diag_kind(false), {}},
          {"second diagonal kind", {Domain::Any, Domain::Any, Domain::NonZero}, diag_kind(true), {}}};
}

inline MatrixGFp matrix_8_5_9_a(const RecipeContext& C) {
  if (C.p == 3)
    return make_matrix(3, {{1, 0, 1, 0, 1}, {0, 1, 0, 0, 2}, {0, 0, 1, 0, 2}, {0, 2, 2, 1, 1}, {0, 0, 0, 0, 1}});
  auto q = [&](std::int64_t a, std::int64_t b) { return C.c(a) / C.c(b); };
  return make_matrix(C.p, {{q(-1, 3), 0, 0, q(3, 2), q(2, 27)},
                            {0, 1, q(2, 9), 3, q(-4, 27)},
                            {0, q(1, 2), q(1, 9), q(-3, 2), q(2, 27)},
                            {1, 1, q(-2, 9), q(3, 2), q(2, 27)},
                            {q(1, 4), q(-1, 4), q(1, 18), q(3, 8), q(1, 54)}});
}

inline std::vector<Family> recipe_8_5_9(const RecipeContext& C) {
  return {{"K",
           {Domain::NonZero, Domain::Any, Domain::NonZero},
           [C](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &al = v[0], &be = v[1], &la = v[2];
             const Fp a2 = al * al, a3 = a2 * al, b2 = be * be, b3 = b2 * be;
             return scaled(la, make_matrix(C.p, {{a2, al * be / 2, 0, b2 / 4, 0},
                                                  {0, al, 0, be, 0},
                                                  {-(3 * a2 * be / 2), -(3 * al * b2 / 8), a3, -(b3 / 8), 0},
                                                  {0, 0, 0, 1, 0},
                                                  {3 * a2 * b2 / 8, al * b3 / 16, -(a3 * be / 2), b2 * b2 / 64, a2 * a2}}));
           },
           {}},
          single("A", matrix_8_5_9_a(C))};
}

inline std::vector<Family> recipe_8_5_10(const RecipeContext& C) {
  return {{"unipotent-by-scalar",
           {Domain::NonZero, Domain::Any, Domain::Any, Domain::Any, Domain::Any, Domain::Any, Domain::Any},
           [C](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp& la = v[0];
             return make_matrix(C.p, {{la, 0, 0, 0, 0},
                                       {v[1], 1, 0, v[2], v[3]},
                                       {v[4], 0, 1, v[5], v[6]},
                                       {0, 0, 0, la, 0},
                                       {0, 0, 0, 0, la}});
           },
           {}},
          {"diag(l,l,1,l^2,1)",
           {Domain::NonZero},
           [C](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp& la = v[0];
             return make_matrix(C.p, {{la, 0, 0, 0, 0}, {0, la, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, la * la, 0}, {0, 0, 0, 0, 1}});
           },
           {}},
          single("X", make_matrix(C.p, {{1, 0, 0, -2, 0}, {0, -1, 1, 0, 0}, {0, -1, 0, 0, 0}, {1, 0, 0, -1, -1}, {0, 0, 0, -1, 0}}))};
}

inline std::vector<Family> recipe_8_5_12(const RecipeContext& C) {
  return {{"diagonal",
           {Domain::NonZero, Domain::NonZero, Domain::NonZero},
           [C](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &al = v[0], &be = v[1], &la = v[2];
             return scaled(la, make_matrix(C.p, {{al, 0, 0, 0, 0},
                                                  {0, be, 0, 0, 0},
                                                  {0, 0, be / al, 0, 0},
                                                  {0, 0, 0, al * al, 0},
                                                  {0, 0, 0, 0, 1}}));
           },
           {}},
          {"unipotent",
           {Domain::Any, Domain::Any, Domain::Any, Domain::Any},
           [C](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp& ga = v[0];
             return make_matrix(C.p, {{1, 0, v[1], 0, 2 * ga},
                                       {0, 1, ga, 0, v[2]},
                                       {0, 0, 1, 0, 0},
                                       {ga, 0, v[3], 1, ga * ga},
                                       {0, 0, 0, 0, 1}});
           },
           {}}};
}

inline std::vector<Family> recipe_8_5_14(const RecipeContext& C) {
  const Fp w = C.omega();
  auto k_kind = [C, w](bool second) {
    return [C, w, second](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
      const Fp &la = v[0], &al = v[1], &be = v[2];
      if (al.zero() && be.zero()) return std::nullopt;
      const Fp s = second ? C.c(-1) : C.c(1);
      return make_matrix(C.p, {{la * (al * al + w * be * be), 0, 0, 2 * w * la * al * be, 2 * la * al * be},
                                {0, al, be, 0, 0},
                                {0, s * w * be, s * al, 0, 0},
                                {s * la * al * be, 0, 0, s * la * al * al, s * la * be * be},
                                {s * w * la * al * be, 0, 0, s * w * w * la * be * be, s * la * al * al}});
    };
  };
  return {{"K first kind", {Domain::NonZero, Domain::Any, Domain::Any}, k_kind(false), {}},
          {"K second kind", {Domain::NonZero, Domain::Any, Domain::Any}, k_kind(true), {}},
          {"L",
           {Domain::Any, Domain::Any},
           [C, w](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &al = v[0], &be = v[1];
             return make_matrix(C.p, {{1, w * al, be, 0, 0},
                                       {0, 1, 0, 0, 0},
                                       {0, 0, 1, 0, 0},
                                       {0, 0, al, 1, 0},
                                       {0, w * be, 0, 0, 1}});
           },
           {}}};
}

inline std::vector<Family> recipe_8_5_17(const RecipeContext& C) {
  auto kind = [C](bool second) {
    return [C, second](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
      const Fp &al = v[0], &la = v[1], &be = v[2], &ga = v[3], &de = v[4], &ep = v[5];
      const MatrixGFp d = scaled(la, make_matrix(C.p, {{al, 0, 0, 0, 0},
                                                        {0, al * al, 0, 0, 0},
                                                        {0, 0, al, 0, 0},
                                                        {0, 0, 0, al * al, 0},
                                                        {0, 0, 0, 0, 1}}));
      const MatrixGFp u =
          second ? make_matrix(C.p, {{1, 0, 1 + ga, 0, ep},
                                     {0, ga, -(be * ga), -ga, de},
                                     {-1, 0, -1, 0, be},
                                     {be + ep, 0, be + ep - be * ga, -ga, -(be * ep) - be * be},
                                     {0, 0, 0, 0, 1}})
                 : make_matrix(C.p, {{1, 0, 1 - ga, 0, ep},
                                     {be, ga, be, 0, de},
                                     {0, 0, ga, 0, -be},
                                     {be, 0, be + be * ga - ga * ep, ga, be * ep - be * be},
                                     {0, 0, 0, 0, 1}});
      return d * u;
    };
  };
  const std::vector<Domain> dom{Domain::NonZero, Domain::NonZero, Domain::Any, Domain::NonZero, Domain::Any, Domain::Any};
  return {{"first kind", dom, kind(false), {}}, {"second kind", dom, kind(true), {}}};
}

inline std::vector<Family> recipe_8_5_18(const RecipeContext& C) {
  return {{"diagonal times unipotent",
           {Domain::NonZero, Domain::NonZero, Domain::NonZero, Domain::NonZero, Domain::Any, Domain::Any, Domain::Any},
           [C](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &al = v[0], &be = v[1], &ga = v[2], &de = v[3], &ep = v[4], &ze = v[5], &et = v[6];
             const MatrixGFp d = make_matrix(C.p, {{al, 0, 0, 0, 0}, {0, be, 0, 0, 0}, {0, 0, be, 0, 0}, {0, 0, 0, ga, 0}, {0, 0, 0, 0, de}});
             const MatrixGFp u = make_matrix(C.p, {{1, 0, 0, 0, 0}, {ep, 1, 0, 0, ze}, {0, 0, 1, et, -ze}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
             return d * u;
           },
           {}},
          single("X1", make_matrix(C.p, {{1, 0, 0, 0, 0}, {0, 1, 1, 0, 0}, {0, 0, -1, 0, 0}, {0, 0, 0, 0, 1}, {0, 0, 0, 1, 0}})),
          single("X2", make_matrix(C.p, {{0, 0, 0, 1, 0}, {0, 0, 1, 0, 0}, {0, 1, 0, 0, 0}, {1, 0, 0, 0, 0}, {0, 0, 0, 0, 1}}))};
}

inline std::vector<Family> recipe_8_6_6(const RecipeContext& C) {
  const Fp w = C.omega();
  const std::vector<Domain> dom{Domain::Any, Domain::Any, Domain::Any, Domain::Any, Domain::NonZero, Domain::Any,
                                Domain::Any, Domain::Any, Domain::Any, Domain::Any, Domain::NonZero};
  const std::vector<std::int64_t> base{0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1};
  return {{"first",
           dom,
           [C, w](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &al = v[0], &be = v[1], &ga = v[2], &de = v[3], &la = v[4];
             return make_matrix(C.p, {{w, al, be, 0, ga, v[5]},
                                       {0, w * la, 0, 0, 0, v[6]},
                                       {0, 0, la, 0, 0, v[7]},
                                       {0, ga / w, -(al / w), 1, de, v[8]},
                                       {0, 0, 0, 0, w * w * la, v[9]},
                                       {0, 0, 0, 0, 0, v[10]}});
           },
           base},
          {"second",
           dom,
           [C](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &al = v[0], &be = v[1], &ga = v[2], &de = v[3], &la = v[4];
             return make_matrix(C.p, {{-1, al, be, 1, ga, v[5]},
                                       {0, la, 0, 0, 2 * la, v[6]},
                                       {0, 0, 0, 0, la, v[7]},
                                       {-1, de, be - de, 0, de - al, v[8]},
                                       {0, -la, la, 0, -la, v[9]},
                                       {0, 0, 0, 0, 0, v[10]}});
           },
           base}};
}

inline std::vector<Family> recipe_8_6_12(const RecipeContext& C) {
  return {{"unipotent",
           {Domain::Any, Domain::Any, Domain::Any, Domain::Any, Domain::Any, Domain::Any},
           [C](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &ep = v[0], &ze = v[1], &et = v[2], &th = v[3], &la = v[4], &mu = v[5];
             return make_matrix(C.p, {{1, ep, ze, 0, et, th},
                                       {0, 1, 0, 0, 0, 0},
                                       {0, 0, 1, 0, 0, 0},
                                       {0, et, th, 1, la, mu},
                                       {0, 0, 0, 0, 1, 0},
                                       {0, 0, 0, 0, 0, 1}});
           },
           {}},
          {"tensor",
           std::vector<Domain>(8, Domain::Any),
           [C](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &al = v[0], &be = v[1], &ga = v[2], &de = v[3], &la = v[4], &mu = v[5], &nu = v[6], &xi = v[7];
             if (((al * de - be * ga) * (la * xi - mu * nu)).zero()) return std::nullopt;
             return make_matrix(C.p, {{al, 0, 0, be, 0, 0},
                                       {0, de * la, de * mu, 0, -(ga * la), -(ga * mu)},
                                       {0, de * nu, de * xi, 0, -(ga * nu), -(ga * xi)},
                                       {ga, 0, 0, de, 0, 0},
                                       {0, -(be * la), -(be * mu), 0, al * la, al * mu},
                                       {0, -(be * nu), -(be * xi), 0, al * nu, al * xi}});
           },
           {1, 0, 0, 1, 1, 0, 0, 1}}};
}

inline std::vector<Family> recipe_8_6_13(const RecipeContext& C) {
  return {{"K",
           {Domain::Any, Domain::Any, Domain::Any, Domain::Any, Domain::NonZero},
           [C](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &al = v[0], &be = v[1], &ga = v[2], &de = v[3], &la = v[4];
             if ((al * de - be * ga).zero()) return std::nullopt;
             const Fp l2 = la * la;
             return make_matrix(C.p, {{al, be, 0, 0, 0, 0},
                                       {ga, de, 0, 0, 0, 0},
                                       {0, 0, l2 * de, -(l2 * ga), 0, 0},
                                       {0, 0, -(l2 * be), l2 * al, 0, 0},
                                       {0, 0, (la - l2) * de, (2 * la + l2) * ga, la * de, la * ga},
                                       {0, 0, (la + 2 * l2) * be, 2 * (la - l2) * al, la * be, la * al}});
           },
           {1, 0, 0, 1, 1}},
          {"L",
           std::vector<Domain>(7, Domain::Any),
           [C](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &al = v[0], &be = v[1], &ga = v[2], &de = v[3], &ep = v[4], &ze = v[5], &et = v[6];
             return make_matrix(C.p, {{1, 0, 0, 0, 0, 0},
                                       {0, 1, 0, 0, 0, 0},
                                       {al, -2 * be * be + 2 * be + ep - ze + ga * de, be + 1, ga, be, ga / 2},
                                       {-(be * be) + 2 * be + ep - ze + ga * de / 2, de / 2 - et / 2, de, 2 * be + 1, de, be},
                                       {-al - ga / 2, ep, -be, -ga, 1 - be, -(ga / 2)},
                                       {ze, et, -2 * de, -4 * be, -2 * de, 1 - 2 * be}});
           },
           {0, 0, 0, 0, 0, 0, 0}}};
}

inline std::vector<Family> recipe_8_6_14_k(const RecipeContext& C) {
  const Fp m = C.c(C.params.m_minus), u = C.c(C.params.u_minus);
  return {{"diag(1,l,l,1,l,1)",
           {Domain::NonZero},
           [C](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp& la = v[0];
             return make_matrix(C.p, {{1, 0, 0, 0, 0, 0},
                                       {0, la, 0, 0, 0, 0},
                                       {0, 0, la, 0, 0, 0},
                                       {0, 0, 0, 1, 0, 0},
                                       {0, 0, 0, 0, la, 0},
                                       {0, 0, 0, 0, 0, 1}});
           },
           {}},
          {"unipotent",
           {Domain::Any, Domain::Any, Domain::Any},
           [C, m](const std::vector<Fp>& v) -> std::optional<MatrixGFp> {
             const Fp &al = v[0], &be = v[1], &ga = v[2];
             return make_matrix(C.p, {{1, 0, 0, 0, 0, 0},
                                       {-(m * ga) - be, 1, 0, -ga, 0, -al},
                                       {al, 0, 1, be, 0, ga},
                                       {0, 0, 0, 1, 0, 0},
                                       {-ga, 0, 0, m * be - al, 1, -be},
                                       {0, 0, 0, 0, 0, 1}});
           },
           {}},
          single("A", make_matrix(C.p, {{1, 0, 0, 0, 0, 0},
                                        {0, (9 - u) / (2 * u), m * m / u, 0, m * (u - 3) / u, 0},
                                        {0, -(3 * m / u), -((9 + u) / (2 * u)), 0, 2 * m * m / u, 0},
                                        {m * (3 - u) / (2 * u), 0, 0, (9 - u) / (2 * u), 0, -(m * m / u)},
                                        {0, 0, 0, 0, 1, 0},
                                        {m * m / u, 0, 0, 3 * m / u, 0, -((9 + u) / (2 * u))}}))};
}

/// The matrix B of 8.6.14 with the given first row and the stated choice of third row.
inline MatrixGFp matrix_8_6_14_b(const RecipeContext& C, const std::vector<Fp>& r) {
  const Fp m = C.c(C.params.m_minus);
  const Fp &al = r[0], &be = r[1], &ga = r[2], &de = r[3], &ep = r[4], &ze = r[5];
  std::vector<Fp> t;
  if (!al.zero() || !de.zero() || !ze.zero())
    t = {C.c(0), de * de + m * ze * de - al * ze, -(al * al) + m * de * al + de * ze, C.c(0), ze * ze - al * de, C.c(0)};
  else
    t = {ga * ga + m * ep * ga - be * ep, C.c(0), C.c(0), ga * ep + be * be, C.c(0), ep * ep + m * be * ep + be * ga};
  // Third row (-nu, xi, lambda, -mu, sigma, -rho).
  const Fp nu = -t[0], xi = t[1], la = t[2], mu = -t[3], si = t[4], rho = -t[5];
  return make_matrix(C.p, {{al, be, ga, de, ep, ze},
                            {mu + m * rho, la, m * xi + si, rho, -xi, nu},
                            {-nu, xi, la, -mu, si, -rho},
                            {ze, ep, -be, al - m * de, -ga - m * ep, de},
                            {rho, -si, xi, nu - m * mu, la + m * si, mu},
                            {de + m * ze, -ga, -(m * be) - ep, ze, be, al}});
}

inline std::vector<Family> recipe_8_6_14(const RecipeContext& C) {
  auto out = recipe_8_6_14_k(C);
  out.push_back({"B",
                 std::vector<Domain>(6, Domain::Any),
                 [C](const std::vector<Fp>& r) -> std::optional<MatrixGFp> {
                   bool all_zero = true;
                   for (const auto& x : r) all_zero = all_zero && x.zero();
                   if (all_zero) return std::nullopt;
                   return matrix_8_6_14_b(C, r);
                 },
                 {}});
  return out;
}

inline std::vector<Family> recipe_8_6_14_single(const RecipeContext& C) {
  auto out = recipe_8_6_14_k(C);
  const Fp m = C.c(C.params.m_minus);
  out.push_back(single("X", make_matrix(C.p, {{0, 1, 0, 0, 0, 0},
                                              {-1, 0, 0, 0, 0, 0},
                                              {0, 0, 0, 1, 0, 0},
                                              {0, 0, -1, 0, 0, 0},
                                              {0, 0, 0, m, 0, -1},
                                              {0, 0, -m, 0, 1, 0}})));
  return out;
}

}  // namespace detail

inline const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> all = {
      {"3.2.1", "3.2.1", false, "standard generators of GL(2,p)", detail::recipe_gl2},
      {"5.4.1", "5.4.1", false, "first worked example: eight matrices", detail::recipe_5_4_1},
      {"6.4.3", "6.4.3", false, "third worked example: seven matrices", detail::recipe_6_4_3},
      {"6.4.4", "6.4.4", false, "second worked example: swap, first-row-e1 subgroup, general first rows",
       detail::recipe_6_4_4},
      {"6.4.4/single", "6.4.4", true, "second worked example with one general-first-row matrix",
       detail::recipe_6_4_4_single},
      {"7.5.6", "7.5.6", false, "two five-parameter families", detail::recipe_7_5_6},
      {"8.5.7", "8.5.7", false, "first-row-e1 subgroup, order-three matrix, first rows (a,0,0,b,c)",
       detail::recipe_8_5_7},
      {"8.5.8", "8.5.8", false, "order p^3(p-1) subgroup and the two diagonal kinds", detail::recipe_8_5_8},
      {"8.5.9", "8.5.9", false, "K and A (dedicated A at p = 3)", detail::recipe_8_5_9},
      {"8.5.10", "8.5.10", false, "order (p-1)p^6 subgroup, diagonal family and one matrix", detail::recipe_8_5_10},
      {"8.5.12", "8.5.12", false, "diagonal and unipotent families", detail::recipe_8_5_12},
      {"8.5.14", "8.5.14", false, "K (two kinds) and L", detail::recipe_8_5_14},
      {"8.5.17", "8.5.17", false, "two diagonal-times-unipotent families", detail::recipe_8_5_17},
      {"8.5.18", "8.5.18", false, "normal subgroup family and two matrices", detail::recipe_8_5_18},
      {"8.6.6", "8.6.6", false, "two families with a free last column", detail::recipe_8_6_6},
      {"8.6.12", "8.6.12", false, "order p^6 subgroup and tensor-product family", detail::recipe_8_6_12},
      {"8.6.13", "8.6.13", false, "K and L", detail::recipe_8_6_13},
      {"8.6.14", "8.6.14", false, "K generators, A and one B per first row", detail::recipe_8_6_14},
      {"8.6.14/single", "8.6.14", true, "K generators and one further matrix", detail::recipe_8_6_14_single},
  };
  return all;
}

inline const Recipe& recipe(const std::string& id) {
  for (const auto& r : recipes())
    if (r.id == id) return r;
  throw RecipeUnavailable(id);
}

inline std::vector<const Recipe*> recipes_for(const std::string& entry) {
  std::vector<const Recipe*> out;
  for (const auto& r : recipes())
    if (r.entry == entry) out.push_back(&r);
  return out;
}

inline RecipeOutput run_recipe(const Recipe& r, PrimeModulus p) {
  const RecipeContext ctx{p.value(), resolve_params(p)};
  RecipeOutput out;
  for (const auto& fam : r.families(ctx)) detail::sweep_family(fam, p.value(), out);
  return out;
}

inline std::vector<MatrixGFp> recipe_generators(const std::string& id, PrimeModulus p) {
  return run_recipe(recipe(id), p).matrices;
}

}  // namespace porc
