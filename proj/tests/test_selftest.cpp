#include <gtest/gtest.h>

#include "porc/selftest.hpp"

using namespace porc;

TEST(Selftest, AllSuitesPass) {
  SelftestOptions opt;
  opt.primes = {3, 5};
  opt.samples = 5;
  for (const auto& r : run_selftest(opt)) {
    EXPECT_TRUE(r.ok()) << r.name << ": " << (r.failures.empty() ? "" : r.failures[0]);
    EXPECT_GT(r.checks, 0u) << r.name;
  }
}

TEST(Selftest, ClosureSetsStayUnderTheLimit) {
  for (const auto& [name, gens] : closure_test_sets({}))
    EXPECT_LE(schreier_sims_order(gens, gens.front().k(), gens.front().p()), 100000) << name;
}
