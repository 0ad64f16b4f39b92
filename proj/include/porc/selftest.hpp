#pragma once

// Property suites: group axioms, the exponent-p law, commutator bilinearity
// and centrality, wedge functoriality, Schreier-Sims against naive closure,
// and Lagrange divisibility of every |B|.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "porc/autos.hpp"
#include "porc/catalog.hpp"
#include "porc/matrix_group.hpp"
#include "porc/recipes.hpp"
#include "porc/structure.hpp"

namespace porc {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

struct SelftestOptions {
  std::vector<std::uint32_t> primes{3, 5, 7};
  std::size_t samples = 20;  // random triples per (entry, prime)
  std::uint64_t seed = 1;
  std::size_t closure_limit = 100000;
};

namespace detail {

inline GroupElement random_element(const Presentation& P, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, P.p() - 1);
  GroupElement g{Vec(P.k()), Vec(P.m())};
  for (auto& a : g.x) a = d(rng);
  for (auto& a : g.u) a = d(rng);
  return g;
}

inline MatrixGFp random_matrix(std::size_t k, std::uint32_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
  MatrixGFp M(k, p);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) M(i, j) = d(rng);
  return M;
}

inline std::string label(const CatalogEntry& e, std::uint32_t p) { return e.id + " at p=" + std::to_string(p); }

/// Runs check on instantiated presentations of every catalog entry (G_p
/// included, at primes coprime to 6) for each prime.
inline void for_each_presentation(const SelftestOptions& opt,
                                  const std::function<void(const CatalogEntry&, const Presentation&)>& check) {
  for (const auto& e : Catalog::builtin().entries())
    for (auto p : opt.primes) {
      if (e.is_gp() && p == 3) continue;
      check(e, instantiate(e, PrimeModulus(p)).presentation);
    }
}

}  // namespace detail

inline SuiteResult suite_group_axioms(const SelftestOptions& opt = {}) {
  SuiteResult r{"group axioms", 0, {}};
  std::mt19937_64 rng(opt.seed);
  detail::for_each_presentation(opt, [&](const CatalogEntry& e, const Presentation& P) {
    const GroupElement one = P.identity();
    for (std::size_t s = 0; s < opt.samples; ++s) {
      const auto a = detail::random_element(P, rng), b = detail::random_element(P, rng),
                 c = detail::random_element(P, rng);
      ++r.checks;
      if (multiply(P, multiply(P, a, b), c) != multiply(P, a, multiply(P, b, c))) {
        r.failures.push_back("associativity fails for " + detail::label(e, P.p()));
        return;
      }
      if (multiply(P, a, one) != a || multiply(P, one, a) != a) {
        r.failures.push_back("identity fails for " + detail::label(e, P.p()));
        return;
      }
      if (multiply(P, a, inverse(P, a)) != one || multiply(P, inverse(P, a), a) != one) {
        r.failures.push_back("inverse fails for " + detail::label(e, P.p()));
        return;
      }
    }
  });
  return r;
}

inline SuiteResult suite_exponent_p(const SelftestOptions& opt = {}) {
  SuiteResult r{"exponent-p law", 0, {}};
  std::mt19937_64 rng(opt.seed + 1);
  detail::for_each_presentation(opt, [&](const CatalogEntry& e, const Presentation& P) {
    for (std::size_t s = 0; s < opt.samples; ++s) {
      const auto g = detail::random_element(P, rng);
      // Repeated multiplication, independent of the closed-form power.
      GroupElement acc = P.identity();
      for (std::uint32_t i = 0; i < P.p(); ++i) acc = multiply(P, acc, g);
      ++r.checks;
      if (acc != P.identity() || power(P, g, P.p()) != P.identity()) {
        r.failures.push_back("g^p != 1 for " + detail::label(e, P.p()));
        return;
      }
    }
  });
  return r;
}

inline SuiteResult suite_commutators(const SelftestOptions& opt = {}) {
  SuiteResult r{"commutator bilinearity and centrality", 0, {}};
  std::mt19937_64 rng(opt.seed + 2);
  detail::for_each_presentation(opt, [&](const CatalogEntry& e, const Presentation& P) {
    for (std::size_t s = 0; s < opt.samples; ++s) {
      const auto a = detail::random_element(P, rng), b = detail::random_element(P, rng),
                 c = detail::random_element(P, rng);
      const auto ab_c = commutator(P, multiply(P, a, b), c);
      const auto split = multiply(P, commutator(P, a, c), commutator(P, b, c));
      const auto a_bc = commutator(P, a, multiply(P, b, c));
      const auto split2 = multiply(P, commutator(P, a, b), commutator(P, a, c));
      const auto z = commutator(P, a, b);
      ++r.checks;
      if (ab_c != split || a_bc != split2) {
        r.failures.push_back("commutator not bilinear for " + detail::label(e, P.p()));
        return;
      }
      if (multiply(P, z, c) != multiply(P, c, z) || !is_zero(z.x)) {
        r.failures.push_back("commutator not central for " + detail::label(e, P.p()));
        return;
      }
      if (z.u != P.bracket(a.x, b.x)) {
        r.failures.push_back("commutator disagrees with the bracket for " + detail::label(e, P.p()));
        return;
      }
    }
  });
  return r;
}

inline SuiteResult suite_wedge_functoriality(const SelftestOptions& opt = {}) {
  SuiteResult r{"wedge functoriality", 0, {}};
  std::mt19937_64 rng(opt.seed + 3);
  for (auto p : opt.primes) {
    const Field f{PrimeModulus(p)};
    for (std::size_t k = 2; k <= kMaxRank; ++k)
      for (std::size_t s = 0; s < opt.samples; ++s) {
        const auto M = detail::random_matrix(k, p, rng), N = detail::random_matrix(k, p, rng);
        ++r.checks;
        const DenseMatrix lhs = wedge_square(M * N);
        if (lhs.data() != dense_product(wedge_square(M), wedge_square(N), f).data()) {
          r.failures.push_back("wedge(MN) != wedge(M) wedge(N) for k=" + std::to_string(k) + ", p=" + std::to_string(p));
          break;
        }
        const DenseMatrix id = wedge_square(MatrixGFp::identity(k, p));
        bool is_identity = true;
        for (std::size_t i = 0; i < id.rows(); ++i)
          for (std::size_t j = 0; j < id.cols(); ++j) is_identity = is_identity && id(i, j) == (i == j ? 1u : 0u);
        if (!is_identity) {
          r.failures.push_back("wedge(I) != I for k=" + std::to_string(k));
          break;
        }
      }
  }
  return r;
}

/// Generator sets whose groups have order at most the closure limit: GL(k,p)
/// for small k and p, the small recipe groups, and random two-matrix groups.
inline std::vector<std::pair<std::string, std::vector<MatrixGFp>>> closure_test_sets(const SelftestOptions& opt) {
  std::vector<std::pair<std::string, std::vector<MatrixGFp>>> sets;
  sets.emplace_back("GL(2,3)", gl_generators(2, PrimeModulus(3)));
  sets.emplace_back("GL(2,5)", gl_generators(2, PrimeModulus(5)));
  sets.emplace_back("GL(2,7)", gl_generators(2, PrimeModulus(7)));
  sets.emplace_back("GL(3,3)", gl_generators(3, PrimeModulus(3)));
  for (const char* id : {"3.2.1", "6.4.3", "6.4.4", "7.5.6", "8.5.8"})
    sets.emplace_back(std::string("recipe ") + id + " at p=3", recipe_generators(id, PrimeModulus(3)));
  sets.emplace_back("recipe 3.2.1 at p=5", recipe_generators("3.2.1", PrimeModulus(5)));
  std::mt19937_64 rng(opt.seed + 4);
  // Upper unitriangular pairs in dimension 4 and 5 over GF(3).
  for (std::size_t k : {4, 5}) {
    std::vector<MatrixGFp> gens;
    for (int g = 0; g < 2; ++g) {
      MatrixGFp M = MatrixGFp::identity(k, 3);
      std::uniform_int_distribution<std::uint32_t> d(0, 2);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) M(i, j) = d(rng);
      gens.push_back(M);
    }
    sets.emplace_back("random unitriangular pair, k=" + std::to_string(k), gens);
  }
  return sets;
}

inline SuiteResult suite_schreier_sims(const SelftestOptions& opt = {}) {
  SuiteResult r{"Schreier-Sims vs naive closure", 0, {}};
  for (const auto& [name, gens] : closure_test_sets(opt)) {
    const std::size_t k = gens.front().k();
    const std::uint32_t p = gens.front().p();
    ++r.checks;
    try {
      const BigInt ss = schreier_sims_order(gens, k, p);
      const auto closure = naive_closure(gens, k, p, opt.closure_limit);
      if (ss != closure.size())
        r.failures.push_back(name + ": Schreier-Sims " + ss.str() + ", closure " + std::to_string(closure.size()));
    } catch (const BudgetExceeded&) {
      r.failures.push_back(name + ": group larger than the closure limit");
    }
  }
  return r;
}

/// Every expected |B| divides |GL(k,p)|, and so does every row-search |B| at p=3
/// for entries with k <= 4.
inline SuiteResult suite_lagrange(const SelftestOptions& opt = {}) {
  SuiteResult r{"Lagrange divisibility of |B|", 0, {}};
  for (const auto& e : Catalog::builtin().entries())
    for (auto p : opt.primes) {
      if (e.is_gp()) {
        if (p % 3 == 0) continue;
        const auto v = p % 12 == 1 ? quartic_curve_solutions(PrimeModulus(p)) : 0;
        ++r.checks;
        if (gl_order(e.k, p) % expected_B_order(e, p, v) != 0)
          r.failures.push_back("Gp at p=" + std::to_string(p) + ": expected |B| does not divide |GL|");
        continue;
      }
      const BigInt gl = gl_order(e.k, p);
      ++r.checks;
      if (gl % expected_B_order(e, p) != 0)
        r.failures.push_back(detail::label(e, p) + ": expected |B| does not divide |GL|");
      if (e.k <= 4 && p == 3) {
        ++r.checks;
        const auto P = instantiate(e, PrimeModulus(p)).presentation;
        const BigInt b = stabilizer_order_backtrack(P).order;
        if (gl % b != 0) r.failures.push_back(detail::label(e, p) + ": computed |B| does not divide |GL|");
      }
    }
  return r;
}

inline std::vector<SuiteResult> run_selftest(const SelftestOptions& opt = {}) {
  return {suite_group_axioms(opt),        suite_exponent_p(opt),    suite_commutators(opt),
          suite_wedge_functoriality(opt), suite_schreier_sims(opt), suite_lagrange(opt)};
}

}  // namespace porc
