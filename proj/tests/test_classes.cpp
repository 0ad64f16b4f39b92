#include <gtest/gtest.h>

#include "porc/catalog.hpp"
#include "porc/classes.hpp"

using namespace porc;

namespace {

Presentation group(const char* id, std::uint32_t p) {
  return instantiate(Catalog::builtin(), id, PrimeModulus(p)).presentation;
}

}  // namespace

TEST(AdRank, Examples) {
  const auto P = group("3.2.1", 5);
  EXPECT_EQ(ad_rank(P, Vec{0, 0}), 0u);
  for (Residue a = 0; a < 5; ++a)
    for (Residue b = 0; b < 5; ++b)
      if (a || b) {
        EXPECT_EQ(ad_rank(P, Vec{a, b}), 1u);
      }
  const auto Q = group("5.4.1", 3);
  // Only [b,a] survives in 5.4.1, so c and d are central.
  EXPECT_EQ(ad_rank(Q, Vec{0, 0, 1, 0}), 0u);
  EXPECT_EQ(ad_rank(Q, Vec{1, 0, 1, 0}), 1u);
}

TEST(RankSum, Examples) {
  EXPECT_EQ(class_count_ranksum(group("3.2.1", 3)).count, 11);
  EXPECT_EQ(class_count_ranksum(group("6.4.4", 5)).count, 649);
  const WedgeCoords wc(3);
  std::vector<Vec> all;
  for (std::size_t i = 0; i < wc.size(); ++i) {
    Vec v(wc.size(), 0);
    v[i] = 1;
    all.push_back(v);
  }
  const auto abelian = Presentation::from_relations(RelationSubspace(3, PrimeModulus(3), all));
  EXPECT_EQ(abelian.m(), 0u);
  EXPECT_EQ(class_count_ranksum(abelian).count, 27);
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(class_count_bruteforce(group("3.2.1", 3)).count, 11);
  EXPECT_EQ(class_count_bruteforce(group("5.4.2", 3)).count, 83);
  EXPECT_EQ(class_count_bruteforce(group("4.3.1", 5)).count, 145);
}

TEST(RankSum, ParallelMatchesSerial) {
  const auto P = group("7.4.6", 5);
  EXPECT_EQ(class_count_ranksum(P, 1).count, class_count_ranksum(P, 3).count);
}

TEST(Classes, MatchFormulaAtThree) {
  for (const auto& e : Catalog::builtin().entries()) {
    if (e.is_gp()) continue;
    const auto P = instantiate(e, PrimeModulus(3)).presentation;
    EXPECT_EQ(class_count_ranksum(P).count, class_poly_eval(e, 3)) << e.id;
  }
}

TEST(Classes, BruteForceBudget) {
  EXPECT_THROW(class_count_bruteforce(group("8.4.1", 7)), BudgetExceeded);
}

TEST(RankSum, ProductRelatorReading) {
  // [f,b][c,a]^2 is a product equal to 1, not [f,b] = [c,a]^2.
  const std::string rel =
      "[b,a]; [d,a]; [e,a][c,a]; [f,a]; [c,b]; [d,b]=[c,a]; [e,b]; %; [d,c]; [e,c]; [e,d]=[f,c]; [f,d]; "
      "[f,e]=[c,a][f,c]";
  auto text = [&](const char* fb) {
    std::string r = rel;
    r.replace(r.find('%'), 1, fb);
    return "[x]\nn = 8\nk = 6\nrelators = " + r + "\nclasses = p^6+p^3-p\naut = 1\n";
  };
  const auto product = Catalog::parse(text("[f,b][c,a]^2"));
  const auto equation = Catalog::parse(text("[f,b]=[c,a]^2"));
  EXPECT_EQ(class_count_ranksum(instantiate(product, "x", PrimeModulus(3)).presentation).count, 753);
  EXPECT_EQ(class_count_ranksum(instantiate(equation, "x", PrimeModulus(3)).presentation).count, 769);
}
