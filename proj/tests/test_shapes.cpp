#include <gtest/gtest.h>

#include "porc/shapes.hpp"

using namespace porc;

namespace {

ShapeContext ctx(std::uint32_t p) { return {p, primitive_root(PrimeModulus(p))}; }

std::pair<const CatalogEntry&, Presentation> entry(const char* id, std::uint32_t p) {
  const auto& e = Catalog::builtin().at(id);
  return {e, instantiate(e, PrimeModulus(p)).presentation};
}

}  // namespace

TEST(ShapeGrammar, ParsesAndMatches) {
  const auto d = ShapeDescriptor::parse("t", "[a,b; -b,a] where a^2+b^2 | [a,0; 0,w a]", 2);
  EXPECT_EQ(d.templates().size(), 2u);
  EXPECT_TRUE(d.contains(MatrixGFp::from_rows(5, {{1, 1}, {-1, 1}}), ctx(5)));
  EXPECT_FALSE(d.contains(MatrixGFp::from_rows(5, {{1, 2}, {-2, 1}}), ctx(5)));  // a^2 + b^2 = 0
  EXPECT_TRUE(d.contains(MatrixGFp::from_rows(5, {{3, 0}, {0, 1}}), ctx(5)));  // w = 2, 2*3 = 1
  EXPECT_FALSE(d.contains(MatrixGFp::from_rows(5, {{3, 0}, {0, 4}}), ctx(5)));
  EXPECT_FALSE(d.contains(MatrixGFp::from_rows(5, {{1, 2}, {2, 1}}), ctx(5)));
}

TEST(ShapeGrammar, Errors) {
  EXPECT_THROW(ShapeDescriptor::parse("t", "[*,*; *]", 2), ShapeParseError);
  EXPECT_THROW(ShapeDescriptor::parse("t", "*,*; *,*", 2), ShapeParseError);
  EXPECT_THROW(ShapeDescriptor::parse("t", "[a+,*; *,*]", 2), ShapeParseError);
}

TEST(ShapeGrammar, VacuousShapeIsAllOfGl) {
  const auto d = ShapeDescriptor::parse("t", "[*,*; *,*]", 2);
  EXPECT_EQ(d.elements(ctx(3), 1e5).size(), 48u);
}

TEST(ShapeCheck, ThirdExampleExact) {
  const auto [e, P] = entry("6.4.3", 3);
  const auto reports = shape_check(e, P, 7776);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].status(), "exact");
  EXPECT_EQ(reports[0].shape_count, 7776u);
}

TEST(ShapeCheck, TwoFamilyShape) {
  const auto [e, P] = entry("7.4.3", 3);
  const auto b = stabilizer_order_backtrack(P).order;
  const auto reports = shape_check(e, P, b);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_TRUE(reports[0].matches()) << reports[0].status();
  EXPECT_EQ(ShapeDescriptor::parse("p", e.shape, e.k).templates().size(), 2u);
}

TEST(ShapeCheck, AlternativeReadingOf8515) {
  const auto [e, P] = entry("8.5.15", 3);
  const auto reports = shape_check(e, P, 144);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_FALSE(reports[0].matches());
  EXPECT_EQ(reports[1].status(), "exact");
}

TEST(ShapeCheck, PrintedReadingOf869MissesTheIdentity) {
  const auto& e = Catalog::builtin().at("8.6.9");
  const auto ds = shape_descriptors(e);
  ASSERT_EQ(ds.size(), 2u);
  const auto I = MatrixGFp::identity(e.k, 5);
  EXPECT_FALSE(ds[0].contains(I, ctx(5)));
  EXPECT_TRUE(ds[1].contains(I, ctx(5)));
  const auto P = instantiate(e, PrimeModulus(5)).presentation;
  for (const auto& M : sample_stabilizer(P, 50, 3)) EXPECT_TRUE(ds[1].contains(M, ctx(5)));
}

TEST(ShapeCheck, PartialShapesOnlyBoundB) {
  const auto [e, P] = entry("7.5.6", 3);
  ASSERT_TRUE(shape_is_partial(e));
  const auto reports = shape_check(e, P, 7776);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].status(), "B inside shape");
}

TEST(ShapeCheck, EveryShapeParses) {
  for (const auto& e : Catalog::builtin().entries()) EXPECT_NO_THROW(shape_descriptors(e)) << e.id;
}
