#include <gtest/gtest.h>

#include "porc/autos.hpp"
#include "porc/catalog.hpp"
#include "porc/recipes.hpp"

using namespace porc;

namespace {

RecipeContext context(std::uint32_t p) { return {p, resolve_params(PrimeModulus(p))}; }

}  // namespace

TEST(Recipes, FirstExample) {
  const auto gens = recipe_generators("5.4.1", PrimeModulus(3));
  ASSERT_EQ(gens.size(), 8u);
  const auto P = instantiate(Catalog::builtin(), "5.4.1", PrimeModulus(3)).presentation;
  for (const auto& M : gens) {
    EXPECT_TRUE(M.invertible());
    EXPECT_TRUE(stabilizes(M, P.relations()));
  }
}

TEST(Recipes, ThirdExampleHasSevenMatrices) {
  EXPECT_EQ(recipe_generators("6.4.3", PrimeModulus(5)).size(), 7u);
}

TEST(Recipes, WorkedExampleOrders) {
  for (std::uint32_t p : {3u, 5u}) {
    const BigInt q = p;
    EXPECT_EQ(schreier_sims_order(recipe_generators("5.4.1", PrimeModulus(p)), 4, p),
              (q * q - 1) * (q * q - 1) * (q * q - q) * (q * q - q) * q * q * q * q);
    EXPECT_EQ(schreier_sims_order(recipe_generators("6.4.4", PrimeModulus(p)), 4, p),
              2 * (q * q * q * q - 1) * (q * q * q * q - q * q));
    EXPECT_EQ(schreier_sims_order(recipe_generators("6.4.3", PrimeModulus(p)), 4, p),
              (q - 1) * (q * q - 1) * (q * q - q) * q * q * q * q);
  }
}

TEST(Recipes, PrintedEconomyMatrixOf644IsSingular) {
  // As printed, the second row repeats the first row (0,1,0,0).
  const auto C = context(5);
  const auto printed = detail::first_kind(C, {C.c(0), C.c(1), C.c(0), C.c(0)}, {C.c(0), C.c(1), C.c(0), C.c(0)});
  EXPECT_FALSE(printed.invertible());
  const auto used = detail::first_kind(C, {C.c(0), C.c(1), C.c(0), C.c(0)}, {C.c(1), C.c(0), C.c(0), C.c(0)});
  EXPECT_TRUE(used.invertible());
  const auto P = instantiate(Catalog::builtin(), "6.4.4", PrimeModulus(5)).presentation;
  EXPECT_TRUE(stabilizes(used, P.relations()));
}

TEST(Recipes, OrderThreeMatrixOf857) {
  // The cube lies in the first-row-e1 family with alpha = gamma = delta = 0.
  // Its beta is -u^3 m^-6; the printed 4u^3 m^-3 agrees only at p = 5.
  int printed_agrees = 0;
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 17u, 19u}) {
    const auto C = context(p);
    const auto K = detail::matrix_8_5_7_order3(C);
    const auto K3 = K * K * K;
    const Fp u = C.c(C.params.u_plus), m = C.c(C.params.m_plus);
    const Fp beta = -(u * u * u) / (m * m * m * m * m * m);
    EXPECT_EQ(K3, MatrixGFp::diagonal(p, {1, beta.value(), beta.value(), 1, 1})) << p;
    printed_agrees += K3(1, 1) == (4 * u * u * u / (m * m * m)).value();
    const auto P = instantiate(Catalog::builtin(), "8.5.7", PrimeModulus(p)).presentation;
    EXPECT_TRUE(stabilizes(K, P.relations()));
  }
  EXPECT_EQ(printed_agrees, 1);
}

TEST(Recipes, DedicatedMatrixOf859AtThree) {
  const auto three = run_recipe(recipe("8.5.9"), PrimeModulus(3));
  const auto five = run_recipe(recipe("8.5.9"), PrimeModulus(5));
  EXPECT_GT(three.matrices.size(), 0u);
  const auto P = instantiate(Catalog::builtin(), "8.5.9", PrimeModulus(3)).presentation;
  for (const auto& M : three.matrices) EXPECT_TRUE(stabilizes(M, P.relations()));
  EXPECT_EQ(schreier_sims_order(three.matrices, 5, 3), expected_B_order(Catalog::builtin().at("8.5.9"), 3));
  EXPECT_GT(five.matrices.size(), 0u);
}

TEST(Recipes, LookupAndErrors) {
  EXPECT_THROW(recipe("9.9.9"), RecipeUnavailable);
  EXPECT_EQ(recipes_for("6.4.4").size(), 2u);
  EXPECT_TRUE(recipes_for("4.3.1").empty());
  const auto C = context(5);
  EXPECT_THROW(C.c(0).inv(), ParameterDomainError);
  for (const auto& r : recipes()) {
    const auto& e = Catalog::builtin().at(r.entry);
    EXPECT_EQ(e.recipe, r.hypothesis ? e.recipe : r.id) << r.id;
  }
}

TEST(Recipes, EveryRecipeAtThreeStabilizesAndGeneratesB) {
  for (const auto& r : recipes()) {
    const auto& e = Catalog::builtin().at(r.entry);
    const auto P = instantiate(e, PrimeModulus(3)).presentation;
    const auto out = run_recipe(r, PrimeModulus(3));
    EXPECT_EQ(out.singular, 0u) << r.id;
    for (const auto& M : out.matrices) ASSERT_TRUE(stabilizes(M, P.relations())) << r.id;
    EXPECT_EQ(schreier_sims_order(out.matrices, e.k, 3), expected_B_order(e, 3)) << r.id;
  }
}
