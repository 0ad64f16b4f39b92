#include <gtest/gtest.h>

#include "porc/ffield.hpp"

using namespace porc;

namespace {

// Brute-force oracles, independent of the library's shortcuts.
std::uint32_t order_by_scan(Residue g, std::uint32_t p) {
  std::uint32_t n = 1;
  for (Residue x = g % p; x != 1; x = static_cast<Residue>(std::uint64_t(x) * g % p)) ++n;
  return n;
}

bool cubic_irreducible_by_scan(CubicFamily fam, Residue m, std::uint32_t p) {
  for (Residue x = 0; x < p; ++x)
    if (eval_cubic(fam, m, x, p) == 0) return false;
  return true;
}

std::uint64_t points_by_scan(std::uint32_t p) {
  std::uint64_t n = 1;
  for (std::uint64_t x = 0; x < p; ++x)
    for (std::uint64_t y = 0; y < p; ++y)
      if ((y * y) % p == ((x * x % p) * x % p + p - x) % p) ++n;
  return n;
}

std::uint64_t quartic_by_scan(std::uint32_t p) {
  std::uint64_t n = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t x2 = x * x % p;
    if ((x2 * x2 + 6 * x2 + 3 * (p - 1)) % p != 0) continue;
    for (std::uint64_t y = 0; y < p; ++y)
      if (y * y % p == (x2 * x % p + p - x) % p) ++n;
  }
  return n;
}

}  // namespace

TEST(PrimeModulus, RejectsTwoAndComposites) {
  EXPECT_THROW(PrimeModulus(2), FieldError);
  EXPECT_THROW(PrimeModulus(9), FieldError);
  EXPECT_THROW(PrimeModulus(1), FieldError);
  EXPECT_EQ(PrimeModulus(65521).value(), 65521u);
}

TEST(Field, PrimitiveRootExamples) {
  EXPECT_EQ(primitive_root(PrimeModulus(3)), 2u);
  EXPECT_EQ(primitive_root(PrimeModulus(5)), 2u);
  EXPECT_EQ(primitive_root(PrimeModulus(7)), 3u);
}

TEST(Field, PrimitiveRootHasFullOrderBelow500) {
  for (auto p : odd_primes_below(500)) EXPECT_EQ(order_by_scan(primitive_root(PrimeModulus(p)), p), p - 1) << p;
}

TEST(Field, SquaresAndRoots) {
  EXPECT_TRUE(is_square(0, PrimeModulus(11)));
  EXPECT_TRUE(is_square(1, PrimeModulus(5)));
  EXPECT_FALSE(is_square(2, PrimeModulus(5)));
  EXPECT_EQ(sqrt_mod(0, PrimeModulus(7)), 0u);
  EXPECT_EQ(sqrt_mod(4, PrimeModulus(7)), 2u);
  EXPECT_EQ(sqrt_mod(2, PrimeModulus(7)), 3u);
  EXPECT_THROW(sqrt_mod(3, PrimeModulus(7)), NotASquare);
  for (auto p : odd_primes_below(200))
    for (Residue a = 0; a < p; ++a) {
      bool square = false;
      for (Residue y = 0; y < p && !square; ++y) square = std::uint64_t(y) * y % p == a;
      ASSERT_EQ(is_square(a, PrimeModulus(p)), square) << a << " mod " << p;
      if (square) {
        const Residue r = sqrt_mod(a, PrimeModulus(p));
        ASSERT_EQ(std::uint64_t(r) * r % p, a);
        ASSERT_LE(r, p - r == p ? 0 : p - r);
      }
    }
}

TEST(Field, CubicParameters) {
  EXPECT_EQ(find_cubic_param(PrimeModulus(3), CubicFamily::Plus), 2u);
  EXPECT_EQ(find_cubic_param(PrimeModulus(5), CubicFamily::Plus), 1u);
  for (auto p : odd_primes_below(300))
    for (auto fam : {CubicFamily::Plus, CubicFamily::Minus}) {
      const Residue m = find_cubic_param(PrimeModulus(p), fam);
      EXPECT_TRUE(cubic_irreducible_by_scan(fam, m, p)) << p;
      for (Residue smaller = 0; smaller < m; ++smaller) EXPECT_FALSE(cubic_irreducible_by_scan(fam, smaller, p));
    }
}

TEST(Field, ResolvedParamsDiscriminants) {
  EXPECT_EQ(resolve_params(PrimeModulus(3)).omega, 2u);
  EXPECT_EQ(resolve_params(PrimeModulus(3)).m_plus, 2u);
  EXPECT_EQ(resolve_params(PrimeModulus(5)).m_plus, 1u);
  EXPECT_EQ(resolve_params(PrimeModulus(7)).omega, 3u);
  for (auto p : odd_primes_below(300)) {
    const auto r = resolve_params(PrimeModulus(p));
    const auto mp = std::int64_t(r.m_plus), mm = std::int64_t(r.m_minus);
    EXPECT_EQ(std::uint64_t(r.u_plus) * r.u_plus % p, reduce(-4 * (mp * mp % p) * mp - 27, p)) << p;
    EXPECT_EQ(std::uint64_t(r.u_minus) * r.u_minus % p, reduce(4 * (mm * mm % p) * mm - 27, p)) << p;
    EXPECT_NE(r.u_plus, 0u);
    EXPECT_NE(r.u_minus, 0u);
  }
}

TEST(Curves, Examples) {
  EXPECT_EQ(elliptic_point_count(PrimeModulus(3)), 4u);
  EXPECT_EQ(elliptic_point_count(PrimeModulus(5)), 8u);
  EXPECT_EQ(elliptic_point_count(PrimeModulus(7)), 8u);
  EXPECT_EQ(quartic_curve_solutions(PrimeModulus(5)), 0u);
  EXPECT_EQ(quartic_curve_solutions(PrimeModulus(7)), 0u);
  // x^2 = 9 solves the quartic mod 11; x = 8 gives x^3 - x = 9 = 3^2.
  EXPECT_EQ(quartic_curve_solutions(PrimeModulus(11)), 2u);
}

TEST(Curves, AgreeWithPairScanBelow200) {
  for (auto p : odd_primes_below(200)) {
    EXPECT_EQ(elliptic_point_count(PrimeModulus(p)), points_by_scan(p)) << p;
    EXPECT_EQ(quartic_curve_solutions(PrimeModulus(p)), quartic_by_scan(p)) << p;
  }
}
