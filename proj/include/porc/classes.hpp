#pragma once

// Conjugacy-class counts of class-two groups.
//
// In a class-two group the class of g = (v, u) is g[g, G], and [g, G] is the
// image of the linear map y -> B(v, y). Every coset vG' therefore splits into
// p^(m - r) classes of size p^r, where r = rank of the adjoint matrix A_v
// (columns B(v, e_j)). Summing over v in F_p^k gives the class count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "porc/budget.hpp"
#include "porc/formula.hpp"
#include "porc/linalg.hpp"
#include "porc/structure.hpp"

namespace porc {

enum class ClassMethod { RankSum, BruteForce };

inline const char* to_string(ClassMethod m) { return m == ClassMethod::RankSum ? "rank-sum" : "brute-force"; }

struct ClassCountResult {
  BigInt count;
  ClassMethod method = ClassMethod::RankSum;
  double elapsed_ms = 0;
  /// rank r -> #{v : rank A_v = r} (rank-sum); class size exponent -> #classes (brute force).
  std::vector<std::uint64_t> tally;
};

inline constexpr double kRankSumBudget = 1e8;
inline constexpr double kBruteForceBudget = 2e6;

/// m x k adjoint matrix of v: column j is B(v, e_j).
inline DenseMatrix adjoint_matrix(const Presentation& P, const Vec& v) {
  DenseMatrix a(P.m(), P.k());
  Vec e(P.k(), 0);
  for (std::size_t j = 0; j < P.k(); ++j) {
    e[j] = 1;
    const Vec col = P.bracket(v, e);
    e[j] = 0;
    for (std::size_t t = 0; t < P.m(); ++t) a(t, j) = col[t];
  }
  return a;
}

inline std::size_t ad_rank(const Presentation& P, const Vec& v) { return rank(adjoint_matrix(P, v), P.field()); }

namespace detail {

/// Rank of a small row-major matrix held in a scratch buffer (destroyed).
inline std::size_t scratch_rank(Residue* a, std::size_t rows, std::size_t cols, const Field& f) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[r * cols + j], a[piv * cols + j]);
    const Residue inv = f.inv(a[r * cols + c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Residue factor = f.mul(a[i * cols + c], inv);
      if (!factor) continue;
      for (std::size_t j = c; j < cols; ++j)
        a[i * cols + j] = f.sub(a[i * cols + j], f.mul(factor, a[r * cols + j]));
    }
    ++r;
  }
  return r;
}

/// Rank tally of A_v over the odometer range [begin, end) of F_p^k.
inline std::vector<std::uint64_t> rank_tally(const Presentation& P, const std::vector<DenseMatrix>& basis,
                                             std::uint64_t begin, std::uint64_t end) {
  const Field& f = P.field();
  const std::size_t k = P.k(), m = P.m(), cells = m * k;
  const std::uint32_t p = P.p();
  std::vector<std::uint64_t> tally(std::min(m, k) + 1, 0);
  if (begin >= end) return tally;
  Vec digits = vec_from_index(begin, k, p);
  // Current adjoint matrix, kept as a flat m*k array and updated digit by digit.
  std::vector<Residue> cur(cells, 0), scratch(cells);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < cells; ++c)
      cur[c] = f.add(cur[c], f.mul(digits[i], basis[i].data()[c]));
  for (std::uint64_t idx = begin;;) {
    std::copy(cur.begin(), cur.end(), scratch.begin());
    ++tally[scratch_rank(scratch.data(), m, k, f)];
    if (++idx == end) break;
    // Each digit that changes (including those wrapping p-1 -> 0) adds A_{e_i} once.
    for (std::size_t i = 0; i < k; ++i) {
      const auto& add = basis[i].data();
      for (std::size_t c = 0; c < cells; ++c) cur[c] = f.add(cur[c], add[c]);
      if (++digits[i] < p) break;
      digits[i] = 0;
    }
  }
  return tally;
}

}  // namespace detail

/// Sum over v in F_p^k of p^(m - rank A_v). The scan can be split across threads;
/// integer tallies make the result independent of the split.
inline ClassCountResult class_count_ranksum(const Presentation& P, unsigned jobs = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  const double space = std::pow(static_cast<double>(P.p()), static_cast<double>(P.k()));
  if (space > kRankSumBudget) throw BudgetExceeded("rank-sum scan over F_p^k", space, kRankSumBudget);
  const std::uint64_t total = ipow(P.p(), static_cast<unsigned>(P.k()));
  std::vector<DenseMatrix> basis;
  for (std::size_t i = 0; i < P.k(); ++i) basis.push_back(adjoint_matrix(P, P.generator(i).x));

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::uint64_t>(1, total / 4096))));
  std::vector<std::vector<std::uint64_t>> parts(jobs);
  if (jobs == 1) {
    parts[0] = detail::rank_tally(P, basis, 0, total);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back([&, j] { parts[j] = detail::rank_tally(P, basis, total * j / jobs, total * (j + 1) / jobs); });
    for (auto& t : pool) t.join();
  }
  ClassCountResult res;
  res.method = ClassMethod::RankSum;
  res.tally.assign(std::min(P.m(), P.k()) + 1, 0);
  for (const auto& part : parts)
    for (std::size_t r = 0; r < part.size(); ++r) res.tally[r] += part[r];
  for (std::size_t r = 0; r < res.tally.size(); ++r)
    res.count += BigInt(res.tally[r]) * big_pow(P.p(), static_cast<unsigned>(P.m() - r));
  res.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

inline std::uint64_t element_index(const Presentation& P, const GroupElement& g) {
  Vec flat(g.x);
  flat.insert(flat.end(), g.u.begin(), g.u.end());
  return vec_index(flat, P.p());
}

inline GroupElement element_at(const Presentation& P, std::uint64_t idx) {
  Vec flat = vec_from_index(idx, P.k() + P.m(), P.p());
  GroupElement g;
  g.x.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(P.k()));
  g.u.assign(flat.begin() + static_cast<std::ptrdiff_t>(P.k()), flat.end());
  return g;
}

/// Orbits of G acting on itself by conjugation, found by closing each element
/// under conjugation by the generators. Uses only multiply and inverse.
inline ClassCountResult class_count_bruteforce(const Presentation& P) {
  const auto t0 = std::chrono::steady_clock::now();
  const double order = std::pow(static_cast<double>(P.p()), static_cast<double>(P.k() + P.m()));
  if (order > kBruteForceBudget) throw BudgetExceeded("brute-force class enumeration", order, kBruteForceBudget);
  const std::uint64_t n = ipow(P.p(), static_cast<unsigned>(P.k() + P.m()));
  std::vector<GroupElement> gens, gens_inv;
  for (std::size_t i = 0; i < P.k(); ++i) {
    gens.push_back(P.generator(i));
    gens_inv.push_back(inverse(P, gens.back()));
  }
  std::vector<bool> seen(n, false);
  std::vector<std::uint64_t> stack;
  ClassCountResult res;
  res.method = ClassMethod::BruteForce;
  res.tally.assign(P.m() + 1, 0);
  std::uint64_t classes = 0, covered = 0;
  for (std::uint64_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    ++classes;
    std::uint64_t size = 0;
    seen[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::uint64_t cur = stack.back();
      stack.pop_back();
      ++size;
      const GroupElement g = element_at(P, cur);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::uint64_t nb = element_index(P, multiply(P, multiply(P, gens_inv[i], g), gens[i]));
        if (!seen[nb]) {
          seen[nb] = true;
          stack.push_back(nb);
        }
      }
    }
    covered += size;
    std::size_t e = 0;
    for (std::uint64_t s = size; s > 1; s /= P.p()) ++e;
    if (e < res.tally.size()) ++res.tally[e];
  }
  if (covered != n) throw std::logic_error("conjugacy classes do not partition the group");
  res.count = classes;
  res.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace porc
