#include <gtest/gtest.h>

#include "porc/autos.hpp"
#include "porc/catalog.hpp"
#include "porc/recipes.hpp"

using namespace porc;

namespace {

Presentation group(const char* id, std::uint32_t p) {
  return instantiate(Catalog::builtin(), id, PrimeModulus(p)).presentation;
}

}  // namespace

TEST(WedgeSquare, Examples) {
  const Field f(PrimeModulus(5));
  const auto I = wedge_square(MatrixGFp::identity(4, 5));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(I(i, j), i == j ? 1u : 0u);
  const auto M = MatrixGFp::from_rows(5, {{2, 3}, {1, 4}});
  const auto L = wedge_square(M);
  ASSERT_EQ(L.rows(), 1u);
  EXPECT_EQ(L(0, 0), M.det());
  const auto D = wedge_square(MatrixGFp::diagonal(5, {2, 1, 1, 1}));
  const WedgeCoords wc(4);
  for (std::size_t r = 0; r < wc.size(); ++r) EXPECT_EQ(D(r, r), wc.pair(r).first == 0 ? 2u : 1u);
}

TEST(Stabilizes, ThirdExampleGenerators) {
  const auto P = group("6.4.3", 3);
  EXPECT_TRUE(stabilizes(MatrixGFp::identity(4, 3), P.relations()));
  for (const auto& M : recipe_generators("6.4.3", PrimeModulus(3))) EXPECT_TRUE(stabilizes(M, P.relations()));
  // I + E_12 breaks the zero pattern of the shape.
  MatrixGFp bad = MatrixGFp::identity(4, 3);
  bad(0, 1) = 1;
  EXPECT_FALSE(stabilizes(bad, P.relations()));
}

TEST(Backtrack, Examples) {
  const auto free = stabilizer_order_backtrack(group("3.2.1", 3));
  EXPECT_EQ(free.order, 48);
  EXPECT_EQ(free.method, AutMethod::Free);
  EXPECT_EQ(stabilizer_order_backtrack(group("4.3.1", 3)).order, 864);
  EXPECT_EQ(stabilizer_order_backtrack(group("6.4.4", 3)).order, 11520);
}

TEST(Orbit, Examples) {
  const auto P = group("3.2.1", 3);
  EXPECT_EQ(stabilizer_order_orbit(P).order, 48);
  EXPECT_EQ(stabilizer_order_orbit(group("4.3.1", 3)).order, 864);
  const auto& e = Catalog::builtin().at("7.6.1");
  const auto Q = instantiate(e, PrimeModulus(3)).presentation;
  const auto r = stabilizer_order_orbit(Q);
  EXPECT_EQ(r.order, expected_B_order(e, 3));
  EXPECT_EQ(r.order, stabilizer_order_backtrack(Q).order);
}

TEST(Backtrack, BudgetIsEnforced) {
  SearchOptions opt;
  opt.node_budget = 10;
  EXPECT_THROW(stabilizer_order_backtrack(group("8.5.7", 3), opt), BudgetExceeded);
}

TEST(Backtrack, CollectReturnsElementsOfB) {
  const auto P = group("6.4.3", 3);
  SearchOptions opt;
  opt.collect = true;
  const auto r = stabilizer_order_backtrack(P, opt);
  EXPECT_EQ(r.order, 7776);
  ASSERT_EQ(r.elements.size(), 7776u);
  for (std::size_t i = 0; i < r.elements.size(); i += 97) EXPECT_TRUE(stabilizes(r.elements[i], P.relations()));
}

TEST(Sample, DrawsStabilizingMatrices) {
  const auto P = group("8.6.13", 3);
  const auto s = sample_stabilizer(P, 20, 5);
  EXPECT_EQ(s.size(), 20u);
  for (const auto& M : s) {
    EXPECT_TRUE(M.invertible());
    EXPECT_TRUE(stabilizes(M, P.relations()));
  }
}

TEST(SchreierSims, Examples) {
  EXPECT_EQ(schreier_sims_order({MatrixGFp::identity(3, 5)}, 3, 5), 1);
  const std::vector<MatrixGFp> gl2{MatrixGFp::diagonal(3, {2, 1}), MatrixGFp::from_rows(3, {{-1, 1}, {-1, 0}})};
  EXPECT_EQ(schreier_sims_order(gl2, 2, 3), 48);
  EXPECT_EQ(naive_closure(gl2, 2, 3).size(), 48u);
  EXPECT_EQ(schreier_sims_order(recipe_generators("5.4.1", PrimeModulus(3)), 4, 3), 186624);
  EXPECT_THROW(schreier_sims_order({MatrixGFp(2, 3)}, 2, 3), std::invalid_argument);
}

TEST(AutOrder, Examples) {
  const auto P = group("3.2.1", 3);
  EXPECT_EQ(aut_order(P, stabilizer_order(P).order), 432);
  const auto Q = group("5.4.2", 3);
  EXPECT_EQ(aut_order(Q, stabilizer_order_backtrack(Q).order), BigInt(240) * 162 * 24 * 9);
  const auto& e = Catalog::builtin().at("8.5.9");
  const auto R = instantiate(e, PrimeModulus(3)).presentation;
  EXPECT_EQ(aut_order(R, stabilizer_order_backtrack(R).order), BigInt(4) * 4 * big_pow(3, 16));
}

TEST(Stabilizer, AutoPicksOrbitForShortOrbits) {
  const auto& e = Catalog::builtin().at("6.4.4");
  const auto P = instantiate(e, PrimeModulus(3)).presentation;
  const auto r = stabilizer_order(P, AutMethod::Auto, expected_B_order(e, 3));
  EXPECT_EQ(r.method, AutMethod::Orbit);
  EXPECT_EQ(r.order, 11520);
  EXPECT_THROW(stabilizer_order(P, AutMethod::Generators), std::invalid_argument);
}
