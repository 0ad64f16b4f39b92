#include <gtest/gtest.h>

#include <random>

#include "porc/catalog.hpp"
#include "porc/structure.hpp"

using namespace porc;

namespace {

Presentation group(const char* id, std::uint32_t p) {
  return instantiate(Catalog::builtin(), id, PrimeModulus(p)).presentation;
}

GroupElement random_element(const Presentation& P, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, P.p() - 1);
  GroupElement g{Vec(P.k()), Vec(P.m())};
  for (auto& a : g.x) a = d(rng);
  for (auto& a : g.u) a = d(rng);
  return g;
}

}  // namespace

TEST(QuotientMap, FreeRankTwo) {
  const auto P = Presentation::from_relations(RelationSubspace(2, PrimeModulus(3)));
  EXPECT_EQ(P.m(), 1u);
  EXPECT_EQ(P.c(0, 1, 0), 1u);
}

TEST(QuotientMap, Group431) {
  const auto P = group("4.3.1", 5);
  ASSERT_EQ(P.m(), 1u);
  EXPECT_NE(P.c(0, 1, 0), 0u);
  EXPECT_EQ(P.c(0, 2, 0), 0u);
  EXPECT_EQ(P.c(1, 2, 0), 0u);
}

TEST(QuotientMap, Group541HasOneSurvivingCoordinate) {
  const auto P = group("5.4.1", 3);
  EXPECT_EQ(P.m(), 1u);
  EXPECT_EQ(P.order_exponent(), 5u);
}

TEST(Multiply, IdentityAndHeisenberg) {
  const auto P = group("3.2.1", 3);
  const auto a = P.generator(0), b = P.generator(1);
  EXPECT_EQ(multiply(P, P.identity(), a), a);
  const auto ab = multiply(P, a, b), ba = multiply(P, b, a);
  EXPECT_EQ(ab.x, ba.x);
  EXPECT_NE(ab.u, ba.u);
  EXPECT_EQ(commutator(P, a, b).u, Vec{1});
  EXPECT_EQ(commutator(P, a, a), P.identity());
}

TEST(Multiply, AssociativeOn644) {
  const auto P = group("6.4.4", 5);
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_element(P, rng), h = random_element(P, rng), k = random_element(P, rng);
    ASSERT_EQ(multiply(P, multiply(P, g, h), k), multiply(P, g, multiply(P, h, k)));
  }
}

TEST(Commutator, RelationOf644) {
  // [d,c] = [b,a]^w in 6.4.4.
  const auto P = group("6.4.4", 5);
  const auto w = resolve_params(PrimeModulus(5)).omega;
  EXPECT_EQ(w, 2u);
  const auto dc = commutator(P, P.generator(3), P.generator(2));
  const auto ba = commutator(P, P.generator(1), P.generator(0));
  EXPECT_EQ(dc, power(P, ba, w));
  EXPECT_EQ(commutator(P, P.generator(0), P.generator(1)).u, P.bracket(P.generator(0).x, P.generator(1).x));
}

TEST(Power, ZeroSquareAndExponent) {
  const auto P = group("5.3.1", 3);
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_element(P, rng);
    ASSERT_EQ(power(P, g, 0), P.identity());
    ASSERT_EQ(power(P, g, 2), multiply(P, g, g));
    ASSERT_EQ(power(P, g, 3), P.identity());
  }
}

TEST(Inverse, Examples) {
  for (const char* id : {"3.2.1", "6.4.4", "8.6.13"}) {
    const auto P = group(id, 5);
    EXPECT_EQ(inverse(P, P.identity()), P.identity());
    GroupElement want{Vec(P.k(), 0), Vec(P.m(), 0)};
    want.x[0] = 4;
    EXPECT_EQ(inverse(P, P.generator(0)), want);
    std::mt19937 rng(3);
    for (int i = 0; i < 50; ++i) {
      const auto g = random_element(P, rng);
      ASSERT_EQ(multiply(P, g, inverse(P, g)), P.identity());
    }
  }
}

TEST(Validate, PassesAndFails) {
  const auto P = group("8.6.13", 5);
  EXPECT_TRUE(validate(P).ok());
  EXPECT_EQ(validate(P).k, 6u);
  EXPECT_EQ(validate(P).m, 2u);
  const auto Q = group("3.2.1", 3);
  EXPECT_TRUE(validate(Q).ok());
  // A zero structure tensor with m = 1 cannot span G'.
  const Presentation bad(2, 1, PrimeModulus(3), RelationSubspace(2, PrimeModulus(3)), DenseMatrix(1, 1));
  const auto d = validate(bad);
  ASSERT_FALSE(d.ok());
  EXPECT_EQ(d.failures[0].invariant, Diagnostics::Invariant::SpanDeficient);
}
