#pragma once

// Verification runs: computed class counts and |B| against the catalog
// formulas, recipe and shape cross-checks, the G_p curve checks, and report
// serialization (JSON schema 1 and a fixed 12-column CSV).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "porc/autos.hpp"
#include "porc/budget.hpp"
#include "porc/catalog.hpp"
#include "porc/classes.hpp"
#include "porc/ffield.hpp"
#include "porc/recipes.hpp"
#include "porc/shapes.hpp"

namespace porc {

struct RunConfig {
  std::vector<std::string> ids;                    // empty: every non-G_p entry
  std::vector<std::uint32_t> class_primes{3, 5, 7};
  std::vector<std::uint32_t> aut_primes{3};
  std::vector<std::uint32_t> small_aut_primes{5, 7};  // extra aut primes for k <= small_aut_k
  unsigned small_aut_k = 4;
  std::vector<std::uint32_t> gp_primes;            // G_p class checks (and D_p) at these primes
  std::vector<std::uint32_t> gp_aut_primes;        // G_p |B| at these primes
  AutMethod method = AutMethod::Auto;
  bool cross_check = false;  // run orbit and backtrack both where both fit
  bool recipes = true;
  bool shapes = false;
  std::uint64_t node_budget = 100000000;
  std::uint64_t gp_node_budget = 10000000000ULL;
  std::size_t orbit_budget = 10000000;
  unsigned jobs = 0;  // 0: hardware concurrency
  bool use_cache = false;
  std::string cache_dir;  // empty: PORC_CACHE_DIR, else $HOME/.cache/porc
};

struct RecipeCheck {
  std::string recipe;
  bool hypothesis = false;
  std::size_t matrices = 0;
  std::size_t singular = 0;
  bool axis_sweep = false;
  bool stabilizes = false;
  std::optional<BigInt> order;
  std::string error;

  bool generates(const BigInt& b) const { return stabilizes && order && *order == b; }
};

struct EntryRecord {
  std::string id;
  std::uint32_t p = 0;
  std::optional<BigInt> class_computed, class_formula;
  std::string class_method;
  std::optional<BigInt> b_computed, b_expected, aut_computed, aut_formula;
  std::string aut_method;
  std::string aut_detail;
  std::vector<std::string> cross_methods;  // further methods that agreed (or "orbit≠" on disagreement)
  bool methods_agree = true;
  std::vector<RecipeCheck> recipes;
  std::vector<ShapeReport> shapes;
  double class_ms = 0, aut_ms = 0;
  std::vector<std::string> skipped;  // budget or domain skips, with reason
  std::vector<std::string> notes;    // optional cross-checks that did not fit their budget
  std::vector<std::string> errors;

  std::optional<bool> class_match() const {
    if (!class_computed || !class_formula) return std::nullopt;
    return *class_computed == *class_formula;
  }
  std::optional<bool> aut_match() const {
    if (!b_computed || !b_expected) return std::nullopt;
    return *b_computed == *b_expected && methods_agree;
  }
  /// The main (non-hypothesis) recipe's Schreier-Sims order.
  std::optional<BigInt> recipe_order() const {
    for (const auto& r : recipes)
      if (!r.hypothesis) return r.order;
    return std::nullopt;
  }
  bool mismatch() const {
    if (class_match() == false || aut_match() == false || !errors.empty()) return true;
    for (const auto& r : recipes)
      if (!r.error.empty() || !r.stabilizes || (b_computed && r.order && *r.order > *b_computed)) return true;
    return false;
  }
  std::string methods() const {
    std::string s = class_method;
    if (!aut_method.empty()) s += (s.empty() ? "" : "+") + aut_method;
    for (const auto& m : cross_methods) s += "+" + m;
    if (!recipes.empty()) s += "+recipe";
    return s;
  }
  std::string shape_status() const {
    std::string s;
    for (const auto& r : shapes) s += (s.empty() ? "" : "; ") + r.descriptor + ": " + r.status();
    return s;
  }
};

struct GpRecord {
  std::uint32_t p = 0;
  std::uint64_t E = 0, V = 0;
  BigInt class_formula;
  std::optional<BigInt> class_computed;
  std::optional<BigInt> dp;
  std::optional<std::size_t> aut_case;
  std::optional<BigInt> b_computed, b_expected;
  std::uint64_t aut_nodes = 0;
  double class_ms = 0, aut_ms = 0;
  std::vector<std::string> skipped;
  std::vector<std::string> errors;

  std::optional<bool> class_match() const {
    if (!class_computed) return std::nullopt;
    return *class_computed == class_formula;
  }
  std::optional<bool> aut_match() const {
    if (!b_computed || !b_expected) return std::nullopt;
    return *b_computed == *b_expected;
  }
  bool mismatch() const { return class_match() == false || aut_match() == false || !errors.empty(); }
};

struct PorcReport {
  std::vector<EntryRecord> entries;
  std::vector<GpRecord> gp;

  std::size_t mismatches() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& r) { return r.mismatch(); }) +
                                    std::count_if(gp.begin(), gp.end(), [](const auto& r) { return r.mismatch(); }));
  }
  std::size_t budget_skips() const {
    std::size_t n = 0;
    for (const auto& r : entries) n += r.skipped.size();
    for (const auto& r : gp) n += r.skipped.size();
    return n;
  }
};

// ---------------------------------------------------------------------------
// G_p number theory

/// p^6 + p^3 - 1 + (p^3 - p^2 - p + 1) E, from the catalog's G_p record.
inline BigInt gp_class_formula(const CatalogEntry& gp, std::uint32_t p, std::uint64_t E) {
  return gp.class_poly.eval({{'p', BigInt(p)}, {'E', BigInt(E)}});
}

inline BigInt evaluate_dp(const CatalogEntry& gp, std::uint32_t p) {
  if (p % 2 == 0 || p % 3 == 0) throw CaseNotCovered("D_p needs p coprime to 12, got " + std::to_string(p));
  const std::uint64_t v = p % 12 == 1 ? quartic_curve_solutions(PrimeModulus(p)) : 0;
  return gp.dp_cases.eval(p, v);
}

inline BigInt evaluate_dp(std::uint32_t p) { return evaluate_dp(Catalog::builtin().at("Gp"), p); }

struct VpScanSummary {
  std::vector<std::uint32_t> examined, positive, zero;
};

/// Primes p = 1 mod 12 below limit, split by whether V_p vanishes.
inline VpScanSummary vp_scan(std::uint32_t limit) {
  if (limit > 100000) throw BudgetExceeded("vp_scan limit", limit, 100000);
  VpScanSummary s;
  for (std::uint32_t p = 13; p <= limit; p += 12) {
    if (!is_prime(p)) continue;
    s.examined.push_back(p);
    (quartic_curve_solutions(PrimeModulus(p)) > 0 ? s.positive : s.zero).push_back(p);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Cache

namespace detail {

inline std::filesystem::path cache_root(const RunConfig& cfg) {
  if (!cfg.cache_dir.empty()) return cfg.cache_dir;
  if (const char* env = std::getenv("PORC_CACHE_DIR"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "porc";
  return std::filesystem::temp_directory_path() / "porc-cache";
}

inline std::string cache_key(const CatalogEntry& e, std::uint32_t p, const std::string& what) {
  std::ostringstream s;
  s << std::hex << e.content_hash << std::dec << "-" << p << "-" << what;
  return s.str();
}

inline std::optional<nlohmann::json> cache_get(const RunConfig& cfg, const std::string& key) {
  if (!cfg.use_cache) return std::nullopt;
  std::ifstream in(cache_root(cfg) / (key + ".json"));
  if (!in) return std::nullopt;
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

inline void cache_put(const RunConfig& cfg, const std::string& key, const nlohmann::json& value) {
  if (!cfg.use_cache) return;
  std::error_code ec;
  const auto dir = cache_root(cfg);
  std::filesystem::create_directories(dir, ec);
  const auto tmp = dir / (key + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << value.dump();
  }
  std::filesystem::rename(tmp, dir / (key + ".json"), ec);
}

inline bool contains(const std::vector<std::uint32_t>& v, std::uint32_t x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline RecipeCheck check_recipe(const Recipe& r, const Presentation& P) {
  RecipeCheck c;
  c.recipe = r.id;
  c.hypothesis = r.hypothesis;
  try {
    const auto out = run_recipe(r, P.modulus());
    c.matrices = out.matrices.size();
    c.singular = out.singular;
    c.axis_sweep = out.axis_sweep;
    c.stabilizes = std::all_of(out.matrices.begin(), out.matrices.end(),
                               [&](const MatrixGFp& M) { return stabilizes(M, P.relations()); });
    if (c.stabilizes) c.order = schreier_sims_order(out.matrices, P.k(), P.p());
  } catch (const std::exception& ex) {
    c.error = ex.what();
  }
  return c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Per-entry and G_p verification

/// Class count (rank-sum) and/or |B| for one entry at one prime, with the
/// recipe and shape cross-checks where the catalog defines them.
inline EntryRecord verify_entry(const CatalogEntry& e, std::uint32_t p, const RunConfig& cfg, bool do_classes,
                                bool do_aut) {
  EntryRecord rec;
  rec.id = e.id;
  rec.p = p;
  std::optional<Instance> inst;
  try {
    inst = instantiate(e, PrimeModulus(p));
  } catch (const std::exception& ex) {
    rec.errors.push_back(std::string("instantiate: ") + ex.what());
    return rec;
  }
  const Presentation& P = inst->presentation;

  if (do_classes) {
    rec.class_formula = class_poly_eval(e, p);
    rec.class_method = to_string(ClassMethod::RankSum);
    const auto key = detail::cache_key(e, p, "classes");
    if (auto hit = detail::cache_get(cfg, key)) {
      rec.class_computed = BigInt(hit->at("count").get<std::string>());
      rec.class_ms = hit->at("ms").get<double>();
    } else {
      try {
        const auto r = class_count_ranksum(P);
        rec.class_computed = r.count;
        rec.class_ms = r.elapsed_ms;
        detail::cache_put(cfg, key, {{"count", r.count.str()}, {"ms", r.elapsed_ms}});
      } catch (const BudgetExceeded& ex) {
        rec.skipped.push_back(std::string("classes: ") + ex.what());
      }
    }
  }

  if (do_aut) {
    try {
      rec.b_expected = expected_B_order(e, p);
      rec.aut_formula = aut_formula_eval(e, p);
    } catch (const std::exception& ex) {
      rec.errors.push_back(std::string("aut formula: ") + ex.what());
    }
    SearchOptions opt;
    opt.node_budget = cfg.node_budget;
    const auto key = detail::cache_key(e, p, std::string("aut-") + to_string(cfg.method));
    if (auto hit = detail::cache_get(cfg, key)) {
      rec.b_computed = BigInt(hit->at("order").get<std::string>());
      rec.aut_method = hit->at("method").get<std::string>();
      rec.aut_detail = hit->at("detail").get<std::string>();
      rec.aut_ms = hit->at("ms").get<double>();
    } else {
      try {
        const auto r = stabilizer_order(P, cfg.method, rec.b_expected, opt);
        rec.b_computed = r.order;
        rec.aut_method = to_string(r.method);
        rec.aut_detail = r.detail;
        rec.aut_ms = r.elapsed_ms;
        detail::cache_put(cfg, key,
                          {{"order", r.order.str()}, {"method", rec.aut_method}, {"detail", r.detail}, {"ms", r.elapsed_ms}});
      } catch (const BudgetExceeded& ex) {
        rec.skipped.push_back(std::string("aut: ") + ex.what());
      }
    }
    if (rec.b_computed) rec.aut_computed = aut_order(P, *rec.b_computed);
    if (cfg.cross_check && rec.b_computed) {
      // The other of orbit / row search, when it fits its budget.
      const bool ran_orbit = rec.aut_method == to_string(AutMethod::Orbit);
      try {
        StabilizerResult other;
        if (ran_orbit) {
          other = stabilizer_order_backtrack(P, opt);
        } else {
          const BigInt orbit = gl_order(static_cast<unsigned>(P.k()), p) / *rec.b_computed;
          if (orbit > BigInt(static_cast<std::uint64_t>(cfg.orbit_budget)))
            throw BudgetExceeded("orbit length", static_cast<double>(orbit), static_cast<double>(cfg.orbit_budget));
          other = stabilizer_order_orbit(P, cfg.orbit_budget);
        }
        const std::string name = to_string(other.method);
        if (other.order == *rec.b_computed) {
          rec.cross_methods.push_back(name);
        } else {
          rec.methods_agree = false;
          rec.cross_methods.push_back(name + "!=" + other.order.str());
        }
      } catch (const BudgetExceeded& ex) {
        rec.notes.push_back(std::string("cross-check: ") + ex.what());
      }
    }
    if (cfg.recipes)
      for (const Recipe* r : recipes_for(e.id)) rec.recipes.push_back(detail::check_recipe(*r, P));
    if (cfg.shapes && rec.b_computed && !e.shape.empty()) {
      try {
        rec.shapes = shape_check(e, P, *rec.b_computed);
      } catch (const std::exception& ex) {
        rec.skipped.push_back(std::string("shape: ") + ex.what());
      }
    }
  }
  return rec;
}

inline GpRecord verify_gp(std::uint32_t p, const RunConfig& cfg, bool do_classes = true, bool do_aut = false) {
  const CatalogEntry& gp = Catalog::builtin().at("Gp");
  GpRecord rec;
  rec.p = p;
  const PrimeModulus pm(p);
  rec.E = elliptic_point_count(pm);
  rec.V = quartic_curve_solutions(pm);
  rec.class_formula = gp_class_formula(gp, p, rec.E);
  if (p % 3 != 0) {
    rec.dp = evaluate_dp(gp, p);
    rec.aut_case = gp.aut_cases.select(p, rec.V);
  }
  const Presentation P = instantiate(gp, pm).presentation;
  if (do_classes) {
    try {
      const auto r = class_count_ranksum(P);
      rec.class_computed = r.count;
      rec.class_ms = r.elapsed_ms;
    } catch (const BudgetExceeded& ex) {
      rec.skipped.push_back(std::string("classes: ") + ex.what());
    }
  }
  if (do_aut) {
    if (p % 3 == 0) {
      rec.skipped.push_back("aut: no case for p = " + std::to_string(p));
      return rec;
    }
    rec.b_expected = expected_B_order(gp, p, rec.V);
    const auto key = detail::cache_key(gp, p, "aut");
    if (auto hit = detail::cache_get(cfg, key)) {
      rec.b_computed = BigInt(hit->at("order").get<std::string>());
      rec.aut_nodes = hit->at("nodes").get<std::uint64_t>();
      rec.aut_ms = hit->at("ms").get<double>();
      return rec;
    }
    SearchOptions opt;
    opt.node_budget = cfg.gp_node_budget;
    try {
      const auto r = stabilizer_order_backtrack(P, opt);
      rec.b_computed = r.order;
      rec.aut_nodes = r.nodes;
      rec.aut_ms = r.elapsed_ms;
      detail::cache_put(cfg, key, {{"order", r.order.str()}, {"nodes", r.nodes}, {"ms", r.elapsed_ms}});
    } catch (const BudgetExceeded& ex) {
      rec.skipped.push_back(std::string("aut: ") + ex.what());
    }
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Orchestration

namespace detail {

inline void run_pool(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& task) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) task(i);
  };
  if (jobs <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

inline bool id_less(const std::string& a, const std::string& b) {
  // Numeric comparison of dotted ids ("8.5.10" after "8.5.9"); G_p sorts last.
  auto parts = [](const std::string& s) {
    std::vector<long> v;
    std::stringstream ss(s);
    for (std::string t; std::getline(ss, t, '.');) v.push_back(std::isdigit(static_cast<unsigned char>(t[0])) ? std::stol(t) : 1L << 30);
    return v;
  };
  return parts(a) < parts(b);
}

}  // namespace detail

inline PorcReport run_verification(const Catalog& cat, const RunConfig& cfg) {
  struct Task {
    const CatalogEntry* e;
    std::uint32_t p;
    bool classes, aut;
  };
  std::vector<Task> tasks;
  for (const auto& e : cat.entries()) {
    if (e.is_gp()) continue;
    if (!cfg.ids.empty() && std::find(cfg.ids.begin(), cfg.ids.end(), e.id) == cfg.ids.end()) continue;
    std::vector<std::uint32_t> primes = cfg.class_primes;
    for (auto p : cfg.aut_primes) primes.push_back(p);
    if (e.k <= cfg.small_aut_k)
      for (auto p : cfg.small_aut_primes) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (auto p : primes) {
      const bool aut = detail::contains(cfg.aut_primes, p) || (e.k <= cfg.small_aut_k && detail::contains(cfg.small_aut_primes, p));
      tasks.push_back({&e, p, detail::contains(cfg.class_primes, p), aut});
    }
  }
  std::vector<std::uint32_t> gp_primes = cfg.gp_primes;
  for (auto p : cfg.gp_aut_primes) gp_primes.push_back(p);
  std::sort(gp_primes.begin(), gp_primes.end());
  gp_primes.erase(std::unique(gp_primes.begin(), gp_primes.end()), gp_primes.end());

  PorcReport report;
  report.entries.resize(tasks.size());
  report.gp.resize(gp_primes.size());
  detail::run_pool(tasks.size() + gp_primes.size(), cfg.jobs, [&](std::size_t i) {
    if (i < tasks.size()) {
      const auto& t = tasks[i];
      report.entries[i] = verify_entry(*t.e, t.p, cfg, t.classes, t.aut);
    } else {
      const auto p = gp_primes[i - tasks.size()];
      report.gp[i - tasks.size()] = verify_gp(p, cfg, detail::contains(cfg.gp_primes, p), detail::contains(cfg.gp_aut_primes, p));
    }
  });
  std::sort(report.entries.begin(), report.entries.end(), [](const auto& a, const auto& b) {
    if (a.id != b.id) return detail::id_less(a.id, b.id);
    return a.p < b.p;
  });
  return report;
}

// ---------------------------------------------------------------------------
// Serialization

enum class ReportFormat { Json, Csv };

namespace detail {

inline nlohmann::json opt_big(const std::optional<BigInt>& x) { return x ? nlohmann::json(x->str()) : nlohmann::json(); }
inline nlohmann::json opt_bool(std::optional<bool> x) { return x ? nlohmann::json(*x) : nlohmann::json(); }

inline std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string opt_str(const std::optional<BigInt>& x) { return x ? x->str() : ""; }
inline std::string opt_str(std::optional<bool> x) { return x ? (*x ? "true" : "false") : ""; }

}  // namespace detail

/// Timings are the only fields that differ between identical runs.
inline nlohmann::json report_json(const PorcReport& r) {
  using nlohmann::json;
  json entries = json::array();
  for (const auto& e : r.entries) {
    json recipes = json::array();
    for (const auto& c : e.recipes)
      recipes.push_back({{"recipe", c.recipe},
                         {"hypothesis", c.hypothesis},
                         {"matrices", c.matrices},
                         {"singular", c.singular},
                         {"axis_sweep", c.axis_sweep},
                         {"stabilizes", c.stabilizes},
                         {"order", detail::opt_big(c.order)},
                         {"generates_B", e.b_computed ? json(c.generates(*e.b_computed)) : json()},
                         {"error", c.error}});
    json shapes = json::array();
    for (const auto& s : e.shapes)
      shapes.push_back({{"descriptor", s.descriptor},
                        {"status", s.status()},
                        {"b_checked", s.b_checked},
                        {"shape_checked", s.shape_checked},
                        {"shape_count", s.shape_count ? json(*s.shape_count) : json()},
                        {"counterexample", s.b_outside ? json(s.b_outside->to_string())
                                                       : s.shape_extra ? json(s.shape_extra->to_string()) : json()}});
    entries.push_back({{"id", e.id},
                       {"p", e.p},
                       {"class_computed", detail::opt_big(e.class_computed)},
                       {"class_formula", detail::opt_big(e.class_formula)},
                       {"class_match", detail::opt_bool(e.class_match())},
                       {"B_computed", detail::opt_big(e.b_computed)},
                       {"B_expected", detail::opt_big(e.b_expected)},
                       {"aut_computed", detail::opt_big(e.aut_computed)},
                       {"aut_formula", detail::opt_big(e.aut_formula)},
                       {"aut_match", detail::opt_bool(e.aut_match())},
                       {"methods", e.methods()},
                       {"aut_detail", e.aut_detail},
                       {"recipe_order", detail::opt_big(e.recipe_order())},
                       {"recipes", recipes},
                       {"shapes", shapes},
                       {"skipped", e.skipped},
                       {"notes", e.notes},
                       {"errors", e.errors},
                       {"timings", {{"class_ms", e.class_ms}, {"aut_ms", e.aut_ms}}}});
  }
  json gp = json::array();
  for (const auto& g : r.gp)
    gp.push_back({{"p", g.p},
                  {"E", g.E},
                  {"V", g.V},
                  {"class_formula", g.class_formula.str()},
                  {"class_computed", detail::opt_big(g.class_computed)},
                  {"class_match", detail::opt_bool(g.class_match())},
                  {"D_p", detail::opt_big(g.dp)},
                  {"aut_case", g.aut_case ? json(*g.aut_case + 1) : json()},
                  {"B_computed", detail::opt_big(g.b_computed)},
                  {"B_expected", detail::opt_big(g.b_expected)},
                  {"aut_match", detail::opt_bool(g.aut_match())},
                  {"skipped", g.skipped},
                  {"errors", g.errors},
                  {"timings", {{"class_ms", g.class_ms}, {"aut_ms", g.aut_ms}}}});
  return {{"schema", 1}, {"entries", entries}, {"gp", gp}};
}

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"id",       "p",          "class_computed", "class_formula",
                                             "class_match", "B_computed", "B_expected",     "aut_match",
                                             "methods",  "recipe_order", "shape_status",  "elapsed_ms"};
  return cols;
}

inline std::string report_csv(const PorcReport& r) {
  std::ostringstream out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& e : r.entries) {
    std::ostringstream ms;
    ms << e.class_ms + e.aut_ms;
    const std::vector<std::string> row{e.id,
                                       std::to_string(e.p),
                                       detail::opt_str(e.class_computed),
                                       detail::opt_str(e.class_formula),
                                       detail::opt_str(e.class_match()),
                                       detail::opt_str(e.b_computed),
                                       detail::opt_str(e.b_expected),
                                       detail::opt_str(e.aut_match()),
                                       e.methods(),
                                       detail::opt_str(e.recipe_order()),
                                       e.shape_status(),
                                       ms.str()};
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << detail::csv_field(row[i]);
    out << "\n";
  }
  return out.str();
}

/// Writes the report to path ("-" for standard output).
inline void emit_report(const PorcReport& r, ReportFormat format, const std::string& path) {
  const std::string text = format == ReportFormat::Json ? report_json(r).dump(2) + "\n" : report_csv(r);
  if (path == "-" || path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace porc
