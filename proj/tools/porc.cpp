// Command-line front end: catalog browsing, single computations and full
// verification runs. Exit codes: 0 success, 1 mismatch, 2 usage, 3 budget.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "porc/catalog.hpp"
#include "porc/classes.hpp"
#include "porc/selftest.hpp"
#include "porc/verify.hpp"

namespace {

constexpr int kOk = 0, kMismatch = 1, kUsage = 2, kBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const CLI::Validator kOddPrime(
    [](const std::string& s) -> std::string {
      try {
        const auto v = std::stoull(s);
        if (v < 3 || v > 65521 || !porc::is_prime(v)) return "'" + s + "' is not an odd prime below 65536";
      } catch (const std::exception&) {
        return "'" + s + "' is not a number";
      }
      return {};
    },
    "ODD_PRIME");

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

std::string guard_text(const porc::CaseGuard& g) {
  std::string s = "p = " + std::to_string(g.residue_mod12) + " mod 12";
  if (g.v == porc::CaseGuard::VCondition::Zero) s += ", V_p = 0";
  if (g.v == porc::CaseGuard::VCondition::Positive) s += ", V_p > 0";
  return s;
}

void show(const porc::CatalogEntry& e) {
  std::cout << "id: " << e.id << "\norder: p^" << e.n << "\ngenerators: " << e.k << "\n";
  if (!e.presentation.empty()) std::cout << "presentation: " << e.presentation << "\n";
  std::cout << "relators: " << (e.relators.empty() ? "(none)" : join(e.relators, "; ")) << "\n";
  if (e.uses_mparam) std::cout << "m: x^3 " << (e.mparam == porc::CubicFamily::Plus ? "+" : "-") << " mx - 1 irreducible\n";
  std::cout << "classes: " << e.class_poly.text() << "\n";
  if (!e.aut_formula.empty()) std::cout << "aut: " << e.aut_formula.text() << "\n";
  for (const auto& [g, f] : e.aut_cases.cases) std::cout << "aut [" << guard_text(g) << "]: " << f.text() << "\n";
  for (const auto& [g, f] : e.dp_cases.cases) std::cout << "D_p [" << guard_text(g) << "]: " << f.text() << "\n";
  if (!e.shape.empty()) std::cout << "shape: " << e.shape << "\n";
  if (!e.shape_alt.empty()) std::cout << "shape (alternative): " << e.shape_alt << "\n";
  if (!e.recipe.empty()) std::cout << "recipe: " << e.recipe << "\n";
  if (!e.flags.empty()) std::cout << "flags: " << join(e.flags, ", ") << "\n";
}

std::vector<std::uint32_t> to_primes(const std::vector<unsigned>& v) { return {v.begin(), v.end()}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Class-two exponent-p groups: conjugacy class counts and automorphism orders"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  std::string catalog_path;
  app.add_option("--catalog", catalog_path, "Catalog file to use instead of the built-in one")->check(CLI::ExistingFile);

  std::string id;
  unsigned p = 0;
  std::string method;

  auto* list = app.add_subcommand("list", "Catalog census and entry ids");

  auto* show_cmd = app.add_subcommand("show", "Presentation, formulas, shape and recipe of an entry");
  show_cmd->add_option("id", id, "Entry id")->required();

  auto* classes = app.add_subcommand("classes", "Number of conjugacy classes at a prime");
  classes->add_option("id", id, "Entry id")->required();
  classes->add_option("-p", p, "Odd prime")->required()->check(kOddPrime);
  std::string class_method = "ranksum";
  classes->add_option("--method", class_method, "ranksum or brute")->check(CLI::IsMember({"ranksum", "brute"}));

  auto* aut = app.add_subcommand("aut", "|Aut(G)| at a prime");
  aut->add_option("id", id, "Entry id")->required();
  aut->add_option("-p", p, "Odd prime")->required()->check(kOddPrime);
  std::string aut_method = "auto";
  aut->add_option("--method", aut_method, "auto, backtrack, orbit or recipe")
      ->check(CLI::IsMember({"auto", "backtrack", "orbit", "recipe"}));
  bool print_b = false;
  aut->add_flag("--B", print_b, "Print |B| (the image in GL(k,p)) instead of |Aut(G)|");
  std::uint64_t node_budget = 100000000;
  aut->add_option("--node-budget", node_budget, "Row-search node budget");

  auto* curve = app.add_subcommand("curve", "E and V_p by exhaustive scan");
  curve->add_option("-p", p, "Odd prime")->required()->check(kOddPrime);

  auto* gp = app.add_subcommand("gp", "G_p checks at a prime, as a JSON record");
  gp->add_option("-p", p, "Prime at least 5")->required()->check(kOddPrime);
  bool gp_aut = false;
  gp->add_flag("--aut", gp_aut, "Also compute |B| by row search");
  std::uint64_t gp_budget = 10000000000ULL;
  gp->add_option("--node-budget", gp_budget, "Row-search node budget for --aut");

  auto* dp = app.add_subcommand("dp", "Descendant count D_p from its case formulas");
  dp->add_option("-p", p, "Prime coprime to 12")->required()->check(kOddPrime);

  auto* verify = app.add_subcommand("verify", "Verify entries against their formulas and write a report");
  std::vector<std::string> ids;
  std::vector<unsigned> primes, aut_primes, small_aut_primes, gp_primes, gp_aut_primes;
  verify->add_option("--ids", ids, "Comma-separated entry ids (default: all)")->delimiter(',');
  auto* primes_opt =
      verify->add_option("--primes", primes, "Primes for class counts (default 3,5,7)")->delimiter(',')->check(kOddPrime);
  auto* aut_opt =
      verify->add_option("--aut-primes", aut_primes, "Primes for |Aut| (default 3)")->delimiter(',')->check(kOddPrime);
  verify->add_option("--small-aut-primes", small_aut_primes,
                     "Extra |Aut| primes for entries with k <= 4 (default 5,7 unless --primes or --aut-primes is given)")
      ->delimiter(',')
      ->check(kOddPrime);
  auto* gp_opt = verify->add_option("--gp-primes", gp_primes, "Primes for the G_p class check (default 5,7,11,13 without --ids)")
                     ->delimiter(',')
                     ->check(kOddPrime);
  verify->add_option("--gp-aut-primes", gp_aut_primes, "Primes for the G_p |B| check (default none)")
      ->delimiter(',')
      ->check(kOddPrime);
  std::string out = "-", format = "json", verify_method = "auto";
  verify->add_option("--out", out, "Report path, '-' for standard output");
  verify->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--method", verify_method, "auto, backtrack or orbit")->check(CLI::IsMember({"auto", "backtrack", "orbit"}));
  unsigned jobs = 0;
  verify->add_option("--jobs", jobs, "Worker cap (default: hardware threads)");
  bool shapes = false, cross = false, no_cache = false, no_recipes = false;
  verify->add_flag("--shapes", shapes, "Check recorded matrix shapes against B");
  verify->add_flag("--cross-check", cross, "Run orbit and row search both where both fit");
  verify->add_flag("--no-recipes", no_recipes, "Skip generator-recipe checks");
  verify->add_flag("--no-cache", no_cache, "Ignore and do not write the result cache");
  std::uint64_t verify_budget = 100000000;
  verify->add_option("--node-budget", verify_budget, "Row-search node budget");

  auto* selftest = app.add_subcommand("selftest", "Property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const porc::Catalog owned = catalog_path.empty() ? porc::Catalog{} : porc::Catalog::from_file(catalog_path);
    const porc::Catalog& cat = catalog_path.empty() ? porc::Catalog::builtin() : owned;

    if (*list) {
      std::cout << "entries: " << cat.entries().size() << "\n";
      for (const auto& [n, count] : cat.census()) std::cout << "order p^" << n << ": " << count << "\n";
      for (const auto& e : cat.entries()) std::cout << e.id << "\n";
      return kOk;
    }
    if (*show_cmd) {
      show(cat.at(id));
      return kOk;
    }
    if (*classes) {
      const auto P = porc::instantiate(cat, id, porc::PrimeModulus(p)).presentation;
      const auto r = class_method == "brute" ? porc::class_count_bruteforce(P) : porc::class_count_ranksum(P);
      std::cout << r.count << "\n";
      return kOk;
    }
    if (*aut) {
      const auto& e = cat.at(id);
      const auto P = porc::instantiate(e, porc::PrimeModulus(p)).presentation;
      porc::StabilizerResult r;
      if (aut_method == "recipe") {
        if (e.recipe.empty()) throw UsageError("entry " + id + " has no generator recipe");
        r = porc::stabilizer_order_generators(porc::recipe_generators(e.recipe, P.modulus()), P.k(), p);
      } else {
        porc::SearchOptions opt;
        opt.node_budget = node_budget;
        const auto m = aut_method == "orbit" ? porc::AutMethod::Orbit
                       : aut_method == "backtrack" ? porc::AutMethod::Backtrack
                                                   : porc::AutMethod::Auto;
        std::optional<porc::BigInt> expected;
        if (!e.is_gp() || p % 3 != 0) {
          const auto v = e.is_gp() && p % 12 == 1 ? porc::quartic_curve_solutions(porc::PrimeModulus(p)) : 0;
          expected = porc::expected_B_order(e, p, v);
        }
        r = porc::stabilizer_order(P, m, expected, opt);
      }
      std::cerr << "method " << porc::to_string(r.method) << ", " << r.elapsed_ms << " ms"
                << (r.detail.empty() ? "" : ", " + r.detail) << "\n";
      std::cout << (print_b ? r.order : porc::aut_order(P, r.order)) << "\n";
      return kOk;
    }
    if (*curve) {
      const porc::PrimeModulus pm(p);
      std::cout << "E=" << porc::elliptic_point_count(pm) << " V_p=" << porc::quartic_curve_solutions(pm) << "\n";
      return kOk;
    }
    if (*gp) {
      if (p < 5) throw UsageError("gp needs p >= 5");
      porc::RunConfig cfg;
      cfg.gp_node_budget = gp_budget;
      porc::PorcReport report;
      report.gp.push_back(porc::verify_gp(p, cfg, true, gp_aut));
      std::cout << porc::report_json(report)["gp"][0].dump(2) << "\n";
      return report.mismatches() ? kMismatch : report.budget_skips() ? kBudget : kOk;
    }
    if (*dp) {
      std::cout << porc::evaluate_dp(p) << "\n";
      return kOk;
    }
    if (*verify) {
      porc::RunConfig cfg;
      for (const auto& i : ids) cat.at(i);  // unknown ids are usage errors, before any work
      cfg.ids = ids;
      const bool scoped = !primes_opt->empty() || !aut_opt->empty();
      if (!primes_opt->empty()) cfg.class_primes = to_primes(primes);
      if (!aut_opt->empty()) cfg.aut_primes = to_primes(aut_primes);
      cfg.small_aut_primes = !small_aut_primes.empty() ? to_primes(small_aut_primes)
                             : scoped                  ? std::vector<std::uint32_t>{}
                                                       : cfg.small_aut_primes;
      if (!gp_opt->empty()) cfg.gp_primes = to_primes(gp_primes);
      else if (ids.empty() && !scoped) cfg.gp_primes = {5, 7, 11, 13};
      cfg.gp_aut_primes = to_primes(gp_aut_primes);
      for (auto q : cfg.gp_primes)
        if (q < 5) throw UsageError("G_p primes must be at least 5");
      for (auto q : cfg.gp_aut_primes)
        if (q < 5) throw UsageError("G_p |B| primes must be coprime to 12");
      cfg.method = verify_method == "orbit" ? porc::AutMethod::Orbit
                   : verify_method == "backtrack" ? porc::AutMethod::Backtrack
                                                  : porc::AutMethod::Auto;
      cfg.jobs = jobs;
      cfg.shapes = shapes;
      cfg.cross_check = cross;
      cfg.recipes = !no_recipes;
      cfg.use_cache = !no_cache;
      cfg.node_budget = verify_budget;
      const auto report = porc::run_verification(cat, cfg);
      porc::emit_report(report, format == "csv" ? porc::ReportFormat::Csv : porc::ReportFormat::Json, out);
      const auto bad = report.mismatches(), skips = report.budget_skips();
      std::cerr << report.entries.size() << " entry records, " << report.gp.size() << " G_p records, " << bad
                << " mismatches, " << skips << " budget skips\n";
      return bad ? kMismatch : skips ? kBudget : kOk;
    }
    if (*selftest) {
      bool ok = true;
      for (const auto& r : porc::run_selftest()) {
        std::cout << (r.ok() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)\n";
        for (const auto& f : r.failures) std::cout << "  " << f << "\n";
        ok = ok && r.ok();
      }
      return ok ? kOk : kMismatch;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const porc::UnknownEntry& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const porc::CaseNotCovered& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const porc::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
