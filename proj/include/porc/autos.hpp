#pragma once

// |B|, the image of Aut(G) in GL(k, p), where G has relation subspace W.
//
// Dually, G' is spanned by m alternating forms f_t(x, y) = x F_t y^T (the
// coordinates of the commutator map) and M lies in B iff M F_t M^T stays in
// span{F_s} for every t. Three independent routes:
//
//  - row search: choose the images of the generators one at a time. Every w
//    in W supported on already-placed generators gives conditions that are
//    affine-linear in the newest row, so each step solves a small linear
//    system instead of scanning F_p^k.
//  - orbit: |B| = |GL(k, p)| / |orbit of W|, using a breadth-first search
//    over subspaces under standard generators of GL(k, p).
//  - generators: Schreier-Sims order of an explicit generating list.
//
// |Aut(G)| = |B| p^(mk) because inner-by-central automorphisms supply the
// kernel Hom(G/G', G').

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "porc/budget.hpp"
#include "porc/formula.hpp"
#include "porc/linalg.hpp"
#include "porc/matrix_group.hpp"
#include "porc/structure.hpp"

namespace porc {

/// Linearly independent alternating forms on F_p^k, as Gram matrices.
struct FormSystem {
  std::size_t k = 0;
  std::uint32_t p = 0;
  std::vector<DenseMatrix> forms;

  std::size_t m() const noexcept { return forms.size(); }

  static FormSystem from_presentation(const Presentation& P) {
    FormSystem s{P.k(), P.p(), {}};
    const Field& f = P.field();
    for (std::size_t t = 0; t < P.m(); ++t) {
      DenseMatrix g(P.k(), P.k());
      for (std::size_t i = 0; i < P.k(); ++i)
        for (std::size_t j = i + 1; j < P.k(); ++j) {
          g(i, j) = P.c(i, j, t);
          g(j, i) = f.neg(P.c(i, j, t));
        }
      s.forms.push_back(std::move(g));
    }
    return s;
  }

  /// W = {w : sum_{a<b} w_ab F_t(a, b) = 0 for all t}.
  RelationSubspace annihilator() const {
    const WedgeCoords wc(k);
    const Field f{PrimeModulus(p)};
    DenseMatrix a(m(), wc.size());
    for (std::size_t t = 0; t < m(); ++t)
      for (std::size_t c = 0; c < wc.size(); ++c) a(t, c) = forms[t](wc.pair(c).first, wc.pair(c).second);
    return RelationSubspace(k, PrimeModulus(p), nullspace(a, f));
  }

  /// Common radical {x : x F_t = 0 for all t}.
  std::vector<Vec> radical() const {
    const Field f{PrimeModulus(p)};
    DenseMatrix stacked(m() * k, k);
    for (std::size_t t = 0; t < m(); ++t)
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) stacked(t * k + i, j) = forms[t](i, j);
    return nullspace(stacked, f);
  }
};

enum class AutMethod { Auto, Backtrack, Orbit, Generators, Free };

inline const char* to_string(AutMethod m) {
  switch (m) {
    case AutMethod::Auto: return "auto";
    case AutMethod::Backtrack: return "backtrack";
    case AutMethod::Orbit: return "orbit";
    case AutMethod::Generators: return "recipe";
    case AutMethod::Free: return "free";
  }
  return "?";
}

struct StabilizerResult {
  BigInt order;
  AutMethod method = AutMethod::Backtrack;
  std::uint64_t nodes = 0;
  double elapsed_ms = 0;
  std::vector<MatrixGFp> elements;  // filled only when explicitly collected
  std::string detail;
};

struct SearchOptions {
  enum class Strategy {
    Chain,      // |B| as a product of base-point orbit lengths
    Enumerate,  // count accepted leaves directly
  };
  Strategy strategy = Strategy::Chain;
  std::uint64_t node_budget = 100000000;
  bool collect = false;  // return every element of B (implies Enumerate, no reductions)
  std::size_t collect_limit = 200000;
  bool reduce_radical = true;
  std::vector<std::size_t> order;  // generator order for the row search; empty picks one greedily
};

namespace detail {

inline double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

/// Quotient of a form system by its radical, on the complement spanned by the
/// standard basis vectors chosen greedily outside R.
inline FormSystem quotient_by_radical(const FormSystem& s, const std::vector<Vec>& rad) {
  const Field f{PrimeModulus(s.p)};
  DenseMatrix span(0, s.k);
  for (const auto& v : rad) span.append_row(v);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < s.k; ++i) {
    DenseMatrix trial = span;
    Vec e(s.k, 0);
    e[i] = 1;
    trial.append_row(e);
    if (rank(trial, f) == trial.rows()) {
      span = trial;
      keep.push_back(i);
    }
  }
  FormSystem q{keep.size(), s.p, {}};
  for (const auto& F : s.forms) {
    DenseMatrix g(keep.size(), keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = 0; b < keep.size(); ++b) g(a, b) = F(keep[a], keep[b]);
    q.forms.push_back(std::move(g));
  }
  return q;
}

/// dim(W intersected with Lambda^2 of the index set `in`).
inline std::size_t restricted_dim(const RelationSubspace& w, const std::vector<bool>& in) {
  const WedgeCoords wc(w.k());
  std::vector<std::size_t> outside;
  for (std::size_t c = 0; c < wc.size(); ++c)
    if (!(in[wc.pair(c).first] && in[wc.pair(c).second])) outside.push_back(c);
  DenseMatrix a(w.dim(), outside.size());
  for (std::size_t r = 0; r < w.dim(); ++r)
    for (std::size_t c = 0; c < outside.size(); ++c) a(r, c) = w.basis()(r, outside[c]);
  return w.dim() - rank(a, Field(w.p()));
}

/// Generator orders for the row search: for each starting pair (most
/// relations inside it first), extend greedily by the generator that brings
/// the most relations into the prefix; the lexicographic order comes last.
inline std::vector<std::vector<std::size_t>> candidate_orders(const RelationSubspace& w) {
  const std::size_t k = w.k();
  std::vector<std::vector<std::size_t>> out;
  auto add = [&](std::vector<std::size_t> o) {
    if (std::find(out.begin(), out.end(), o) == out.end()) out.push_back(std::move(o));
  };
  std::vector<std::size_t> lex(k);
  for (std::size_t i = 0; i < k; ++i) lex[i] = i;
  if (k < 3) {
    add(lex);
    return out;
  }
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> starts;  // (-dim, i, j) sorted
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      std::vector<bool> in(k, false);
      in[i] = in[j] = true;
      starts.push_back({restricted_dim(w, in), i, j});
    }
  std::stable_sort(starts.begin(), starts.end(),
                   [](const auto& x, const auto& y) { return std::get<0>(x) > std::get<0>(y); });
  for (const auto& [dim, i, j] : starts) {
    std::vector<std::size_t> o{i, j};
    std::vector<bool> used(k, false);
    used[i] = used[j] = true;
    while (o.size() < k) {
      std::size_t pick = k, best = 0;
      for (std::size_t c = 0; c < k; ++c) {
        if (used[c]) continue;
        std::vector<bool> in = used;
        in[c] = true;
        const std::size_t d = restricted_dim(w, in);
        if (pick == k || d > best) {
          best = d;
          pick = c;
        }
      }
      o.push_back(pick);
      used[pick] = true;
    }
    add(std::move(o));
  }
  add(lex);
  return out;
}

/// Row-by-row search for matrices stabilizing span{F_t}.
class RowSearch {
public:
  using PointTable = std::shared_ptr<const std::vector<std::uint64_t>>;

  RowSearch(const FormSystem& s, const SearchOptions& opt, PointTable table = {})
      : point_table_(std::move(table)), s_(s), f_(PrimeModulus(s.p)), opt_(opt), k_(s.k), m_(s.m()), wc_(s.k) {
    w_ = s.annihilator();
    choose_order();
    build_constraints();
    rows_.assign(k_, Vec(k_, 0));
    images_.assign(k_, std::vector<Vec>(m_, Vec(k_, 0)));
    build_rank_table();
  }

  std::uint64_t nodes() const noexcept { return nodes_; }
  const std::vector<std::size_t>& order() const noexcept { return order_; }
  /// Point invariants, shared between searches over the same forms.
  const PointTable& point_table() const noexcept { return point_table_; }

  /// |B| as the product of the base-point orbit lengths of the stabilizer
  /// chain. Levels are processed from the bottom up so that elements found at
  /// deeper levels (which lie in every B_d above) merge candidate orbits.
  BigInt count_chain() {
    const int J = last_constrained_;
    if (J < 0) return free_tail(0);
    for (std::size_t e = 0; e < k_; ++e) place(e, unit(order_[e]));
    const auto ju = static_cast<std::size_t>(J);
    BigInt total = solutions_outside_prefix(ju) * free_tail(J + 1);
    seed_generators(ju);
    for (std::size_t d = ju; d-- > 0;) {
      for (std::size_t e = 0; e < d; ++e) place(e, unit(order_[e]));
      total *= orbit_length(d);
    }
    return total;
  }

  BigInt count_enumerate() { return enumerate(0); }

  std::vector<MatrixGFp> collect() {
    std::vector<MatrixGFp> out;
    collect_from(0, out);
    return out;
  }

  /// Elements of B drawn by random descent through the row search; a dead end
  /// restarts the descent. Not uniform, but every returned matrix lies in B.
  std::vector<MatrixGFp> sample(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<MatrixGFp> out;
    for (std::size_t attempts = 0; out.size() < n && attempts < 100 * n + 100; ++attempts)
      if (descend(0, rng)) out.push_back(current_matrix());
    return out;
  }

private:
  struct Constraint {
    std::vector<std::pair<std::size_t, Residue>> linear;                  // (depth of a, s_a)
    std::vector<std::tuple<std::size_t, std::size_t, Residue>> constant;  // (depth a, depth b, w_ab), a < b as indices
  };

  static Vec unit_vec(std::size_t k, std::size_t i) {
    Vec e(k, 0);
    e[i] = 1;
    return e;
  }
  Vec unit(std::size_t i) const { return unit_vec(k_, i); }

  void choose_order() {
    if (opt_.order.size() == k_) {
      order_ = opt_.order;
      depth_of_.assign(k_, 0);
      for (std::size_t d = 0; d < k_; ++d) depth_of_[order_[d]] = d;
      return;
    }
    order_ = candidate_orders(w_).front();
    depth_of_.assign(k_, 0);
    for (std::size_t d = 0; d < k_; ++d) depth_of_[order_[d]] = d;
  }

  void build_constraints() {
    constraints_.assign(k_, {});
    last_constrained_ = -1;
    std::vector<bool> in(k_, false);
    for (std::size_t d = 0; d < k_; ++d) {
      const std::size_t n = order_[d];
      in[n] = true;
      // Basis of W_d = W cap Lambda^2(prefix), RREF'd with the pairs touching n
      // first so that rows pivoting there span W_d modulo W_{d-1}.
      std::vector<std::size_t> cols_touch, cols_rest, cols_out;
      for (std::size_t c = 0; c < wc_.size(); ++c) {
        const auto [a, b] = wc_.pair(c);
        if (!(in[a] && in[b])) cols_out.push_back(c);
        else if (a == n || b == n) cols_touch.push_back(c);
        else cols_rest.push_back(c);
      }
      std::vector<std::size_t> perm = cols_out;
      perm.insert(perm.end(), cols_touch.begin(), cols_touch.end());
      perm.insert(perm.end(), cols_rest.begin(), cols_rest.end());
      DenseMatrix a(w_.dim(), perm.size());
      for (std::size_t r = 0; r < w_.dim(); ++r)
        for (std::size_t c = 0; c < perm.size(); ++c) a(r, c) = w_.basis()(r, perm[c]);
      const auto piv = rref(a, f_);
      for (std::size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] < cols_out.size() || piv[r] >= cols_out.size() + cols_touch.size()) continue;
        Constraint con;
        for (std::size_t c = cols_out.size(); c < perm.size(); ++c) {
          const Residue w = a(r, c);
          if (!w) continue;
          const auto [i, j] = wc_.pair(perm[c]);
          if (i == n) con.linear.push_back({depth_of_[j], f_.neg(w)});
          else if (j == n) con.linear.push_back({depth_of_[i], w});
          else con.constant.push_back({depth_of_[i], depth_of_[j], w});
        }
        constraints_[d].push_back(std::move(con));
      }
      if (!constraints_[d].empty()) last_constrained_ = static_cast<int>(d);
    }
  }

  /// Invariant of the forms vanishing on the rows of y (an m x N matrix whose
  /// row t collects the vectors v F_t): the dimension of that subspace of
  /// span{F_t} and the number of its members of each rank.
  std::uint64_t annihilator_code(const DenseMatrix& y) const {
    DenseMatrix yt(y.cols(), m_);
    for (std::size_t t = 0; t < m_; ++t)
      for (std::size_t c = 0; c < y.cols(); ++c) yt(c, t) = y(t, c);
    const auto ann = nullspace(std::move(yt), f_);
    std::vector<std::uint64_t> hist(k_ + 1, 0);
    const std::uint64_t n = ipow(s_.p, static_cast<unsigned>(ann.size()));
    DenseMatrix g(k_, k_);
    for (std::uint64_t i = 1; i < n; ++i) {
      const Vec lambda = vec_from_index(i, ann.size(), s_.p);
      Vec coef(m_, 0);
      for (std::size_t a = 0; a < ann.size(); ++a)
        for (std::size_t t = 0; t < m_; ++t) coef[t] = f_.add(coef[t], f_.mul(lambda[a], ann[a][t]));
      for (std::size_t r = 0; r < k_; ++r)
        for (std::size_t c = 0; c < k_; ++c) {
          Residue acc = 0;
          for (std::size_t t = 0; t < m_; ++t) acc = f_.add(acc, f_.mul(coef[t], s_.forms[t](r, c)));
          g(r, c) = acc;
        }
      ++hist[rank(g, f_)];
    }
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) { h = (h ^ v) * 1099511628211ull; };
    mix(ann.size());
    for (auto c : hist) mix(c);
    return h;
  }

  /// Invariant of rows 0..d with x as row d: rank of the adjoints stacked
  /// vertically (k minus the dimension of the common centralizer), rank side
  /// by side (dimension of [span, V]) and the annihilator profile.
  std::uint64_t joint_code(std::size_t d, const Vec& x) const {
    DenseMatrix vert((d + 1) * m_, k_), horiz(m_, (d + 1) * k_);
    for (std::size_t a = 0; a <= d; ++a)
      for (std::size_t t = 0; t < m_; ++t) {
        const Vec y = a == d ? row_times(x, s_.forms[t]) : images_[a][t];
        for (std::size_t j = 0; j < k_; ++j) {
          vert(a * m_ + t, j) = y[j];
          horiz(t, a * k_ + j) = y[j];
        }
      }
    const std::size_t rv = rank(vert, f_), rh = rank(horiz, f_);
    std::uint64_t h = annihilator_code(horiz) * 31 + rv * 8 + rh;
    auto mix = [&](std::uint64_t v) { h = (h ^ v) * 1099511628211ull; };
    // dim [U, U] for U = span of the rows.
    DenseMatrix uu(0, m_);
    for (std::size_t a = 0; a <= d; ++a)
      for (std::size_t b = a + 1; b <= d; ++b) {
        Vec c(m_, 0);
        const Vec& vb = b == d ? x : rows_[b];
        for (std::size_t t = 0; t < m_; ++t) c[t] = dot(a == d ? row_times(x, s_.forms[t]) : images_[a][t], vb);
        uu.append_row(c);
      }
    mix(rank(uu, f_));
    // Point invariants over U, when they are tabulated.
    if (point_table_ && ipow(s_.p, static_cast<unsigned>(d + 1)) <= 125) {
      std::vector<std::uint64_t> codes;
      const std::uint64_t n = ipow(s_.p, static_cast<unsigned>(d + 1));
      for (std::uint64_t i = 1; i < n; ++i) {
        const Vec c = vec_from_index(i, d + 1, s_.p);
        Vec y(k_, 0);
        for (std::size_t a = 0; a <= d; ++a) {
          if (!c[a]) continue;
          const Vec& va = a == d ? x : rows_[a];
          for (std::size_t j = 0; j < k_; ++j) y[j] = f_.add(y[j], f_.mul(c[a], va[j]));
        }
        codes.push_back((*point_table_)[vec_index(y, s_.p)]);
      }
      std::sort(codes.begin(), codes.end());
      for (auto c : codes) mix(c);
    }
    return h;
  }

  std::uint64_t point_code(const Vec& x) const {
    DenseMatrix a(m_, k_);
    for (std::size_t t = 0; t < m_; ++t) {
      const Vec y = row_times(x, s_.forms[t]);
      for (std::size_t j = 0; j < k_; ++j) a(t, j) = y[j];
    }
    return annihilator_code(a);
  }

  bool point_ok(std::size_t d, const Vec& x) const {
    const std::uint64_t c = point_table_ ? (*point_table_)[vec_index(x, s_.p)] : point_code(x);
    return c == target_point_[d];
  }

  bool joint_ok(std::size_t d, const Vec& x) const { return d == 0 || joint_code(d, x) == target_joint_[d]; }

  void build_rank_table() {
    target_point_.assign(k_, 0);
    for (std::size_t d = 0; d < k_; ++d) target_point_[d] = point_code(unit(order_[d]));
    const double space = std::pow(static_cast<double>(s_.p), static_cast<double>(k_));
    if (!point_table_ && space <= 2e6) {
      const std::uint64_t n = ipow(s_.p, static_cast<unsigned>(k_));
      auto table = std::make_shared<std::vector<std::uint64_t>>(n);
      for (std::uint64_t i = 0; i < n; ++i) (*table)[i] = point_code(vec_from_index(i, k_, s_.p));
      point_table_ = std::move(table);
    }
    for (std::size_t d = 0; d < k_; ++d) place(d, unit(order_[d]));
    target_joint_.assign(k_, 0);
    for (std::size_t d = 0; d < k_; ++d) target_joint_[d] = joint_code(d, unit(order_[d]));
  }

  Vec row_times(const Vec& x, const DenseMatrix& F) const {
    Vec y(k_, 0);
    for (std::size_t i = 0; i < k_; ++i) {
      if (!x[i]) continue;
      for (std::size_t j = 0; j < k_; ++j) y[j] = f_.add(y[j], f_.mul(x[i], F(i, j)));
    }
    return y;
  }

  Residue dot(const Vec& a, const Vec& b) const {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < k_; ++i) s += static_cast<std::uint64_t>(a[i]) * b[i];
    return static_cast<Residue>(s % s_.p);
  }

  void place(std::size_t d, const Vec& x) {
    rows_[d] = x;
    for (std::size_t t = 0; t < m_; ++t) images_[d][t] = row_times(x, s_.forms[t]);
  }

  void tick() {
    if (++nodes_ > opt_.node_budget)
      throw BudgetExceeded("row search nodes", static_cast<double>(nodes_), static_cast<double>(opt_.node_budget));
  }

  /// Affine solution set of the depth-d conditions given rows 0..d-1.
  std::optional<AffineSpace> solution_space(std::size_t d) const {
    const auto& cons = constraints_[d];
    if (cons.empty()) {
      AffineSpace all{Vec(k_, 0), {}};
      for (std::size_t i = 0; i < k_; ++i) all.directions.push_back(unit(i));
      return all;
    }
    DenseMatrix a(cons.size() * m_, k_);
    Vec b(cons.size() * m_, 0);
    for (std::size_t c = 0; c < cons.size(); ++c)
      for (std::size_t t = 0; t < m_; ++t) {
        const std::size_t r = c * m_ + t;
        for (const auto& [da, s] : cons[c].linear)
          for (std::size_t j = 0; j < k_; ++j) a(r, j) = f_.add(a(r, j), f_.mul(s, images_[da][t][j]));
        Residue acc = 0;
        for (const auto& [da, db, w] : cons[c].constant)
          acc = f_.add(acc, f_.mul(w, dot(images_[da][t], rows_[db])));
        b[r] = f_.neg(acc);
      }
    return solve_affine(a, b, f_);
  }

  /// RREF basis of rows 0..d-1.
  std::pair<DenseMatrix, std::vector<std::size_t>> prefix_span(std::size_t d) const {
    DenseMatrix u(0, k_);
    for (std::size_t e = 0; e < d; ++e) u.append_row(rows_[e]);
    auto piv = rref(u, f_);
    return {std::move(u), std::move(piv)};
  }

  /// Visit every point of an affine space; the visitor returns false to stop.
  template <class Visit>
  bool for_each_point(const AffineSpace& S, Visit&& visit) const {
    const std::size_t nd = S.directions.size();
    std::vector<Residue> coef(nd, 0);
    Vec x = S.origin;
    for (;;) {
      if (!visit(x)) return false;
      std::size_t i = 0;
      for (; i < nd; ++i) {
        const auto& dir = S.directions[i];
        for (std::size_t j = 0; j < k_; ++j) x[j] = f_.add(x[j], dir[j]);
        if (++coef[i] < s_.p) break;
        coef[i] = 0;
      }
      if (i == nd) return true;
    }
  }

  /// Visit x in S \ span(prefix) passing the rank invariants; the visitor returns false to stop.
  template <class Visit>
  bool for_each_candidate(std::size_t d, Visit&& visit) {
    const auto S = solution_space(d);
    if (!S) return true;
    const auto [u, piv] = prefix_span(d);
    return for_each_point(*S, [&](const Vec& x) {
      tick();
      Vec r = x;
      reduce_against(r, u, piv, f_);
      if (is_zero(r) || !point_ok(d, x) || !joint_ok(d, x)) return true;
      return visit(x);
    });
  }

  /// |S \ span(prefix)| at depth d, without enumeration.
  BigInt solutions_outside_prefix(std::size_t d) {
    tick();
    const auto S = solution_space(d);
    if (!S) return 0;
    const BigInt all = big_pow(s_.p, static_cast<unsigned>(S->directions.size()));
    // S cap U: solve origin + sum t_i dir_i = sum s_l u_l in (t, s).
    const std::size_t nd = S->directions.size();
    DenseMatrix a(k_, nd + d);
    Vec b(k_, 0);
    for (std::size_t j = 0; j < k_; ++j) {
      for (std::size_t i = 0; i < nd; ++i) a(j, i) = S->directions[i][j];
      for (std::size_t l = 0; l < d; ++l) a(j, nd + l) = f_.neg(rows_[l][j]);
      b[j] = f_.neg(S->origin[j]);
    }
    const auto both = solve_affine(a, b, f_);
    if (!both) return all;
    return all - big_pow(s_.p, static_cast<unsigned>(both->directions.size()));
  }

  /// Number of ways to choose independent rows at depths d..k-1 freely.
  BigInt free_tail(int d) const {
    BigInt r = 1;
    const BigInt pk = big_pow(s_.p, static_cast<unsigned>(k_));
    for (std::size_t e = static_cast<std::size_t>(std::max(d, 0)); e < k_; ++e)
      r *= pk - big_pow(s_.p, static_cast<unsigned>(e));
    return r;
  }

  /// Fills rows d..k-1 with some completion to an element of B, if one exists.
  bool complete(std::size_t d) {
    const int J = last_constrained_;
    if (static_cast<int>(d) > J) {
      fill_free_tail(d);
      return true;
    }
    if (static_cast<int>(d) == J) {
      const auto S = solution_space(d);
      if (!S) return false;
      const auto [u, piv] = prefix_span(d);
      bool found = false;
      for_each_point(*S, [&](const Vec& x) {
        tick();
        Vec r = x;
        reduce_against(r, u, piv, f_);
        if (is_zero(r)) return true;
        place(d, x);
        found = true;
        return false;
      });
      if (found) fill_free_tail(d + 1);
      return found;
    }
    bool found = false;
    for_each_candidate(d, [&](const Vec& x) {
      place(d, x);
      found = complete(d + 1);
      return !found;
    });
    return found;
  }

  void fill_free_tail(std::size_t d) {
    for (; d < k_; ++d) {
      const auto [u, piv] = prefix_span(d);
      for (std::size_t i = 0; i < k_; ++i) {
        Vec r = unit(i);
        reduce_against(r, u, piv, f_);
        if (!is_zero(r)) {
          place(d, unit(i));
          break;
        }
      }
    }
  }

  /// A few elements of B_J (identity on rows 0..J-1) as starting generators.
  void seed_generators(std::size_t J) {
    const auto S = solution_space(J);
    if (!S) return;
    const auto [u, piv] = prefix_span(J);
    std::size_t taken = 0;
    for_each_point(*S, [&](const Vec& x) {
      Vec r = x;
      reduce_against(r, u, piv, f_);
      if (is_zero(r)) return true;
      place(J, x);
      fill_free_tail(J + 1);
      chain_gens_.push_back(current_matrix());
      return ++taken < 2 * k_;
    });
  }

  MatrixGFp current_matrix() const {
    MatrixGFp M(k_, s_.p);
    for (std::size_t e = 0; e < k_; ++e)
      for (std::size_t j = 0; j < k_; ++j) M(order_[e], j) = rows_[e][j];
    return M;
  }

  /// Length of the B_d-orbit of e_{order[d]}, where rows 0..d-1 hold the
  /// identity prefix. Every completion found lies in B_d, and the group H they
  /// generate acts on candidate rows by x -> xM preserving extendability, so
  /// one search settles a whole H-orbit.
  std::uint64_t orbit_length(std::size_t d) {
    std::vector<Vec> cands;
    for_each_candidate(d, [&](const Vec& x) {
      cands.push_back(x);
      return true;
    });
    std::unordered_map<std::uint64_t, bool> status;  // point index -> extends
    auto& gens = chain_gens_;
    auto close = [&](std::vector<std::uint64_t> queue) {
      while (!queue.empty()) {
        const std::uint64_t pt = queue.back();
        queue.pop_back();
        const bool st = status.at(pt);
        for (const auto& g : gens) {
          const std::uint64_t img = g.apply_index(pt);
          if (status.emplace(img, st).second) queue.push_back(img);
        }
      }
    };
    for (const auto& x : cands) {
      const std::uint64_t idx = vec_index(x, s_.p);
      if (status.count(idx)) continue;
      place(d, x);
      const bool ok = complete(d + 1);
      status[idx] = ok;
      if (ok) {
        gens.push_back(current_matrix());
        std::vector<std::uint64_t> all;
        for (const auto& entry : status) all.push_back(entry.first);
        close(std::move(all));
      } else {
        close({idx});
      }
    }
    std::uint64_t n = 0;
    for (const auto& x : cands)
      if (status.at(vec_index(x, s_.p))) ++n;
    return n;
  }

  BigInt enumerate(std::size_t d) {
    const int J = last_constrained_;
    if (static_cast<int>(d) > J) return free_tail(static_cast<int>(d));
    if (static_cast<int>(d) == J) return solutions_outside_prefix(d) * free_tail(J + 1);
    BigInt total = 0;
    for_each_candidate(d, [&](const Vec& x) {
      place(d, x);
      total += enumerate(d + 1);
      return true;
    });
    return total;
  }

  bool descend(std::size_t d, std::mt19937_64& rng) {
    if (d == k_) return true;
    std::vector<Vec> cand;
    for_each_candidate(d, [&](const Vec& x) {
      cand.push_back(x);
      return cand.size() < 4096;
    });
    if (cand.empty()) return false;
    place(d, cand[rng() % cand.size()]);
    return descend(d + 1, rng);
  }

  void collect_from(std::size_t d, std::vector<MatrixGFp>& out) {
    if (d == k_) {
      MatrixGFp M(k_, s_.p);
      for (std::size_t e = 0; e < k_; ++e)
        for (std::size_t j = 0; j < k_; ++j) M(order_[e], j) = rows_[e][j];
      if (out.size() >= opt_.collect_limit)
        throw BudgetExceeded("collected elements of B", static_cast<double>(out.size()) + 1,
                             static_cast<double>(opt_.collect_limit));
      out.push_back(M);
      return;
    }
    for_each_candidate(d, [&](const Vec& x) {
      place(d, x);
      collect_from(d + 1, out);
      return true;
    });
  }

  PointTable point_table_;
  const FormSystem& s_;
  Field f_;
  SearchOptions opt_;
  std::size_t k_, m_;
  WedgeCoords wc_;
  RelationSubspace w_{1, PrimeModulus(3)};
  std::vector<std::size_t> order_, depth_of_;
  std::vector<std::vector<Constraint>> constraints_;
  int last_constrained_ = -1;
  std::vector<std::uint64_t> target_point_, target_joint_;
  std::vector<MatrixGFp> chain_gens_;
  std::vector<Vec> rows_;
  std::vector<std::vector<Vec>> images_;  // images_[d][t] = rows_[d] F_t
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline StabilizerResult stabilizer_order_backtrack(const FormSystem& s, const SearchOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  StabilizerResult res;
  res.method = AutMethod::Backtrack;
  const std::size_t K = s.k * (s.k - 1) / 2;
  if (opt.collect) {
    detail::RowSearch search(s, opt);
    res.elements = search.collect();
    res.order = res.elements.size();
    res.nodes = search.nodes();
    res.elapsed_ms = detail::elapsed_since(t0);
    return res;
  }
  if (s.m() == K) {
    res.method = AutMethod::Free;
    res.order = gl_order(static_cast<unsigned>(s.k), s.p);
    res.detail = "W = 0";
    res.elapsed_ms = detail::elapsed_since(t0);
    return res;
  }
  BigInt factor = 1;
  FormSystem work = s;
  if (opt.reduce_radical) {
    const auto rad = s.radical();
    const std::size_t r = rad.size();
    if (r > 0) {
      // B preserves the radical R; it is the full preimage of B(V/R) among
      // maps preserving R: |GL(r)| choices on R and p^(r(k-r)) off-diagonal.
      factor = gl_order(static_cast<unsigned>(r), s.p) * big_pow(s.p, static_cast<unsigned>(r * (s.k - r)));
      work = detail::quotient_by_radical(s, rad);
      res.detail = "radical of dimension " + std::to_string(r);
      if (work.k == 0) {
        res.order = factor;
        res.elapsed_ms = detail::elapsed_since(t0);
        return res;
      }
    }
  }
  if (opt.strategy == SearchOptions::Strategy::Enumerate || !opt.order.empty()) {
    detail::RowSearch search(work, opt);
    const BigInt core = opt.strategy == SearchOptions::Strategy::Chain ? search.count_chain() : search.count_enumerate();
    res.order = core * factor;
    res.nodes = search.nodes();
    res.elapsed_ms = detail::elapsed_since(t0);
    return res;
  }
  // The cost of the chain depends sharply on the generator order and is hard
  // to predict, so candidate orders are raced under budgets growing tenfold.
  const auto orders = detail::candidate_orders(work.annihilator());
  detail::RowSearch::PointTable table;
  std::uint64_t spent = 0;
  for (std::uint64_t round = 10000;; round *= 10) {
    for (const auto& order : orders) {
      const std::uint64_t left = opt.node_budget - std::min(spent, opt.node_budget);
      if (left == 0) throw BudgetExceeded("row search nodes", static_cast<double>(spent), static_cast<double>(opt.node_budget));
      SearchOptions attempt = opt;
      attempt.order = order;
      attempt.node_budget = std::min(round, left);
      detail::RowSearch search(work, attempt, table);
      table = search.point_table();
      try {
        const BigInt core = search.count_chain();
        spent += search.nodes();
        res.order = core * factor;
        res.nodes = spent;
        std::string o;
        for (auto i : order) o += std::to_string(i);
        res.detail += (res.detail.empty() ? "" : ", ") + std::string("order ") + o;
        res.elapsed_ms = detail::elapsed_since(t0);
        return res;
      } catch (const BudgetExceeded&) {
        spent += search.nodes();
      }
    }
  }
}

inline StabilizerResult stabilizer_order_backtrack(const Presentation& P, const SearchOptions& opt = {}) {
  return stabilizer_order_backtrack(FormSystem::from_presentation(P), opt);
}

/// Up to n elements of B drawn by random descent (see RowSearch::sample).
inline std::vector<MatrixGFp> sample_stabilizer(const Presentation& P, std::size_t n, std::uint64_t seed = 1) {
  const FormSystem s = FormSystem::from_presentation(P);
  SearchOptions opt;
  opt.node_budget = std::numeric_limits<std::uint64_t>::max();
  detail::RowSearch search(s, opt);
  return search.sample(n, seed);
}

/// |GL(k,p)| / |orbit of span{F_t}| under congruence M F M^T.
inline StabilizerResult stabilizer_order_orbit(const FormSystem& s, std::size_t budget = 10000000) {
  const auto t0 = std::chrono::steady_clock::now();
  const Field f{PrimeModulus(s.p)};
  const WedgeCoords wc(s.k);
  const std::size_t K = wc.size(), m = s.m();
  if (s.p > 255) throw std::invalid_argument("orbit keys store residues in one byte");
  std::vector<DenseMatrix> lifts;
  for (const auto& g : gl_generators(s.k, PrimeModulus(s.p))) lifts.push_back(wedge_square(g));

  // A subspace is keyed by its RREF basis of wedge-coordinate vectors.
  auto key_of = [&](DenseMatrix basis) {
    rref(basis, f);
    std::string key(basis.rows() * K, '\0');
    for (std::size_t r = 0; r < basis.rows(); ++r)
      for (std::size_t c = 0; c < K; ++c) key[r * K + c] = static_cast<char>(basis(r, c));
    return key;
  };
  DenseMatrix start(m, K);
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t c = 0; c < K; ++c) start(t, c) = s.forms[t](wc.pair(c).first, wc.pair(c).second);

  std::unordered_set<std::string> seen;
  std::vector<std::string> frontier{key_of(start)};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const auto& key : frontier) {
      DenseMatrix basis(m, K);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < K; ++c) basis(r, c) = static_cast<unsigned char>(key[r * K + c]);
      for (const auto& L : lifts) {
        // f'(a,b) = sum_(ij) (Lambda^2 M)[(ab),(ij)] f(i,j): the row vector times L^T.
        DenseMatrix img(m, K);
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t c = 0; c < K; ++c) {
            std::uint64_t acc = 0;
            for (std::size_t l = 0; l < K; ++l) acc += static_cast<std::uint64_t>(basis(r, l)) * L(c, l);
            img(r, c) = static_cast<Residue>(acc % s.p);
          }
        std::string nk = key_of(std::move(img));
        if (seen.insert(nk).second) {
          if (seen.size() > budget)
            throw BudgetExceeded("orbit subspaces", static_cast<double>(seen.size()), static_cast<double>(budget));
          next.push_back(std::move(nk));
        }
      }
    }
    frontier = std::move(next);
  }
  StabilizerResult res;
  res.method = AutMethod::Orbit;
  const BigInt gl = gl_order(static_cast<unsigned>(s.k), s.p);
  const BigInt orbit = seen.size();
  if (gl % orbit != 0) throw std::logic_error("orbit length does not divide |GL(k,p)|");
  res.order = gl / orbit;
  res.nodes = seen.size();
  res.detail = "orbit length " + orbit.str();
  res.elapsed_ms = detail::elapsed_since(t0);
  return res;
}

inline StabilizerResult stabilizer_order_orbit(const Presentation& P, std::size_t budget = 10000000) {
  return stabilizer_order_orbit(FormSystem::from_presentation(P), budget);
}

inline StabilizerResult stabilizer_order_generators(const std::vector<MatrixGFp>& gens, std::size_t k, std::uint32_t p) {
  const auto t0 = std::chrono::steady_clock::now();
  StabilizerResult res;
  res.method = AutMethod::Generators;
  res.order = schreier_sims_order(gens, k, p);
  res.nodes = gens.size();
  res.elapsed_ms = detail::elapsed_since(t0);
  return res;
}

/// Orbit when the expected orbit length is small, otherwise row search.
inline StabilizerResult stabilizer_order(const Presentation& P, AutMethod method = AutMethod::Auto,
                                         std::optional<BigInt> expected = {}, const SearchOptions& opt = {}) {
  const FormSystem s = FormSystem::from_presentation(P);
  if (method == AutMethod::Auto) {
    method = AutMethod::Backtrack;
    if (expected && *expected > 0 && P.p() < 256) {
      const BigInt orbit = gl_order(static_cast<unsigned>(P.k()), P.p()) / *expected;
      if (orbit <= 1000000) method = AutMethod::Orbit;
    }
  }
  switch (method) {
    case AutMethod::Orbit: return stabilizer_order_orbit(s);
    case AutMethod::Backtrack: return stabilizer_order_backtrack(s, opt);
    default: throw std::invalid_argument(std::string("method ") + to_string(method) + " needs explicit generators");
  }
}

inline BigInt aut_order(const Presentation& P, const BigInt& b_order) {
  return b_order * big_pow(P.p(), static_cast<unsigned>(P.m() * P.k()));
}

}  // namespace porc
