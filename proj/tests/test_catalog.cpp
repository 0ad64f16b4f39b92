#include <gtest/gtest.h>

#include "porc/catalog.hpp"

using namespace porc;

TEST(Catalog, Census) {
  const auto census = Catalog::builtin().census();
  const std::map<unsigned, unsigned> want{{3, 1}, {4, 1}, {5, 3}, {6, 7}, {7, 15}, {8, 43}};
  EXPECT_EQ(census, want);
  unsigned total = 0;
  for (const auto& [n, c] : census) total += c;
  EXPECT_EQ(total, 70u);
  EXPECT_TRUE(Catalog::builtin().contains("Gp"));
}

TEST(Catalog, InstantiatesEveryEntry) {
  for (auto p : {3u, 5u, 7u})
    for (const auto& e : Catalog::builtin().entries()) {
      const auto inst = instantiate(e, PrimeModulus(p));
      EXPECT_EQ(inst.presentation.order_exponent(), e.n) << e.id;
      EXPECT_TRUE(validate(inst.presentation).ok()) << e.id;
      EXPECT_EQ(inst.presentation.k(), e.k) << e.id;
    }
}

TEST(Catalog, InstantiateExamples) {
  const auto a = instantiate(Catalog::builtin(), "3.2.1", PrimeModulus(3)).presentation;
  EXPECT_EQ(a.k(), 2u);
  EXPECT_EQ(a.m(), 1u);
  const auto g = instantiate(Catalog::builtin(), "Gp", PrimeModulus(5)).presentation;
  EXPECT_EQ(g.k(), 6u);
  EXPECT_EQ(g.m(), 3u);
  const auto h = instantiate(Catalog::builtin(), "8.6.13", PrimeModulus(3)).presentation;
  EXPECT_EQ(h.m(), 2u);
  EXPECT_EQ(h.relations().dim(), 13u);
}

TEST(Catalog, FormulaExamples) {
  const auto& cat = Catalog::builtin();
  EXPECT_EQ(class_poly_eval(cat.at("3.2.1"), 3), 11);
  EXPECT_EQ(class_poly_eval(cat.at("4.3.1"), 3), 33);
  EXPECT_EQ(class_poly_eval(cat.at("5.4.2"), 3), 83);
  EXPECT_EQ(aut_formula_eval(cat.at("3.2.1"), 3), 432);
  EXPECT_EQ(aut_formula_eval(cat.at("4.3.1"), 3), 23328);
  EXPECT_EQ(aut_formula_eval(cat.at("Gp"), 5, 0), 1920 * big_pow(5, 18));
  EXPECT_EQ(expected_B_order(cat.at("3.2.1"), 3), 48);
  EXPECT_EQ(expected_B_order(cat.at("4.3.1"), 3), 864);
  EXPECT_EQ(expected_B_order(cat.at("6.4.4"), 3), 11520);
  EXPECT_THROW(class_poly_eval(cat.at("Gp"), 5), FormulaError);
}

TEST(Catalog, UnknownIdThrows) {
  EXPECT_THROW(Catalog::builtin().at("nonexistent"), UnknownEntry);
}

TEST(Relators, SignConvention) {
  // e_{ij} indexes the wedge pair (i, j), i < j; [x_j, x_i] = -e_{ij}.
  const Field f(PrimeModulus(5));
  const WedgeCoords wc(4);
  const auto params = resolve_params(PrimeModulus(5));
  auto vec = [&](const char* text, std::size_t k) {
    return resolve_relator(parse_relator(text, k, CubicFamily::Plus), k, params, f);
  };
  const WedgeCoords w3(3);
  Vec ca = vec("[c,a]", 3);
  Vec want(3, 0);
  want[w3.index(0, 2)] = f.neg(1);
  EXPECT_EQ(ca, want);

  Vec dc = vec("[d,c]=[b,a]^w", 4);
  Vec want2(6, 0);
  want2[wc.index(2, 3)] = f.neg(1);
  want2[wc.index(0, 1)] = f.mul(2, 1);  // -(-w) with w = 2
  EXPECT_EQ(dc, want2);

  Vec dbca = vec("[d,b][c,a]", 4);
  Vec want3(6, 0);
  want3[wc.index(1, 3)] = f.neg(1);
  want3[wc.index(0, 2)] = f.neg(1);
  EXPECT_EQ(dbca, want3);
}

TEST(Catalog, ParseErrors) {
  EXPECT_THROW(Catalog::parse("k = 2\n"), CatalogError);
  EXPECT_THROW(Catalog::parse("[x]\nn = 3\nk = 2\nclasses = p\naut = p\nbogus = 1\n"), CatalogError);
  EXPECT_THROW(Catalog::parse("[x]\nn = 3\nk = 2\naut = p\n"), CatalogError);
  EXPECT_THROW(Catalog::parse("[x]\nn = 3\nk = 2\nclasses = p\naut = p\nrelators = [q,a]\n"), CatalogError);
  const auto c = Catalog::parse("[x]\nn = 3\nk = 2\nrelators = \nclasses = p^2+p-1\naut = (p^2-1)(p^2-p)p^2\n");
  EXPECT_EQ(c.entries().size(), 1u);
  EXPECT_EQ(instantiate(c, "x", PrimeModulus(3)).presentation.m(), 1u);
}

TEST(Catalog, ContentHashTracksRecordText) {
  const auto a = Catalog::parse("[x]\nn = 3\nk = 2\nclasses = p^2+p-1\naut = p\n");
  const auto b = Catalog::parse("[x]\nn = 3\nk = 2\nclasses = p^2+p\naut = p\n");
  EXPECT_NE(a.entries()[0].content_hash, b.entries()[0].content_hash);
}
