#include <gtest/gtest.h>

#include <filesystem>

#include "porc/verify.hpp"

using namespace porc;

namespace {

RunConfig small(std::vector<std::string> ids) {
  RunConfig cfg;
  cfg.ids = std::move(ids);
  cfg.class_primes = {3};
  cfg.small_aut_primes = {};
  cfg.jobs = 2;
  return cfg;
}

}  // namespace

TEST(VerifyEntry, Examples) {
  const auto& cat = Catalog::builtin();
  const auto cfg = small({});
  const auto a = verify_entry(cat.at("3.2.1"), 3, cfg, true, true);
  EXPECT_EQ(a.class_computed, BigInt(11));
  EXPECT_EQ(a.b_computed, BigInt(48));
  EXPECT_EQ(a.aut_computed, BigInt(432));
  EXPECT_TRUE(*a.class_match());
  EXPECT_TRUE(*a.aut_match());
  EXPECT_FALSE(a.mismatch());
  EXPECT_EQ(a.recipe_order(), BigInt(48));
  const auto b = verify_entry(cat.at("7.4.6"), 3, cfg, true, false);
  EXPECT_EQ(b.class_computed, BigInt(123));
  EXPECT_FALSE(b.aut_match().has_value());
  const auto c = verify_entry(cat.at("6.3.1"), 3, cfg, false, true);
  EXPECT_EQ(c.b_computed, BigInt(11232));
  EXPECT_EQ(c.aut_computed, BigInt(11232) * big_pow(3, 9));
}

TEST(VerifyEntry, FormulaSlipIsAMismatchNotAThrow) {
  auto cat = Catalog::parse("[x]\nn = 3\nk = 2\nrelators = \nclasses = p^2+p\naut = (p^2-1)(p^2-p)p^2\n");
  const auto r = verify_entry(cat.at("x"), 3, small({}), true, true);
  EXPECT_FALSE(*r.class_match());
  EXPECT_TRUE(*r.aut_match());
  EXPECT_TRUE(r.mismatch());
}

TEST(VerifyEntry, BudgetSkipIsRecorded) {
  auto cfg = small({});
  cfg.node_budget = 10;
  cfg.method = AutMethod::Backtrack;
  const auto r = verify_entry(Catalog::builtin().at("8.5.7"), 3, cfg, false, true);
  EXPECT_FALSE(r.b_computed.has_value());
  ASSERT_EQ(r.skipped.size(), 1u);
  EXPECT_FALSE(r.mismatch());
}

TEST(VerifyGp, AtFive) {
  const auto r = verify_gp(5, {}, true, false);
  EXPECT_EQ(r.E, 8u);
  EXPECT_EQ(r.class_formula, 16517);
  EXPECT_EQ(r.class_computed, BigInt(16517));
  EXPECT_EQ(r.dp, BigInt(12));
  EXPECT_EQ(r.aut_case, 0u);
}

TEST(Dp, Examples) {
  EXPECT_EQ(evaluate_dp(5), 12);
  EXPECT_EQ(evaluate_dp(7), 34);
  EXPECT_EQ(evaluate_dp(11), 30);
  const auto& gp = Catalog::builtin().at("Gp");
  const auto v13 = quartic_curve_solutions(PrimeModulus(13));
  const auto idx = gp.dp_cases.select(13, v13);
  EXPECT_EQ(gp.dp_cases.cases[idx].first.v,
            v13 > 0 ? CaseGuard::VCondition::Positive : CaseGuard::VCondition::Zero);
  EXPECT_THROW(evaluate_dp(3), CaseNotCovered);
}

TEST(VpScan, Examples) {
  EXPECT_EQ(vp_scan(100).examined, (std::vector<std::uint32_t>{13, 37, 61, 73, 97}));
  EXPECT_EQ(vp_scan(13).examined, (std::vector<std::uint32_t>{13}));
  const auto s = vp_scan(2000);
  EXPECT_FALSE(s.positive.empty());
  EXPECT_FALSE(s.zero.empty());
  EXPECT_THROW(vp_scan(100001), BudgetExceeded);
}

TEST(Report, EmptyJson) {
  const auto j = report_json({});
  EXPECT_EQ(j["entries"], nlohmann::json::array());
  EXPECT_EQ(j["gp"], nlohmann::json::array());
  EXPECT_EQ(j["schema"], 1);
}

TEST(Report, CsvHasTwelveColumns) {
  const auto r = run_verification(Catalog::builtin(), small({"3.2.1"}));
  ASSERT_EQ(r.entries.size(), 1u);
  const auto csv = report_csv(r);
  std::istringstream in(csv);
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 11);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 11);
}

TEST(Report, DeterministicModuloTimings) {
  auto strip = [](nlohmann::json j) {
    for (auto& e : j["entries"]) e.erase("timings");
    return j;
  };
  const auto cfg = small({"3.2.1", "4.3.1", "6.4.4"});
  const auto a = strip(report_json(run_verification(Catalog::builtin(), cfg)));
  auto cfg1 = cfg;
  cfg1.jobs = 1;
  const auto b = strip(report_json(run_verification(Catalog::builtin(), cfg1)));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a["entries"].size(), 3u);
  EXPECT_EQ(a["entries"][0]["id"], "3.2.1");
}

TEST(Report, RecordsSortedNumerically) {
  const auto r = run_verification(Catalog::builtin(), small({"8.5.10", "8.5.9", "3.2.1"}));
  ASSERT_EQ(r.entries.size(), 3u);
  EXPECT_EQ(r.entries[0].id, "3.2.1");
  EXPECT_EQ(r.entries[1].id, "8.5.9");
  EXPECT_EQ(r.entries[2].id, "8.5.10");
}

TEST(Report, WriteErrorsSurface) {
  EXPECT_THROW(emit_report({}, ReportFormat::Json, "/nonexistent-dir/x.json"), std::runtime_error);
}

TEST(Cache, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "porc-test-cache";
  std::filesystem::remove_all(dir);
  auto cfg = small({"4.3.1"});
  cfg.use_cache = true;
  cfg.cache_dir = dir.string();
  const auto first = run_verification(Catalog::builtin(), cfg);
  EXPECT_FALSE(std::filesystem::is_empty(dir));
  const auto second = run_verification(Catalog::builtin(), cfg);
  EXPECT_EQ(first.entries[0].b_computed, second.entries[0].b_computed);
  EXPECT_EQ(first.entries[0].class_computed, second.entries[0].class_computed);
  std::filesystem::remove_all(dir);
}
