// Command-line front end.  Every structured result is emitted as JSON on
// stdout; verify-paper prints a human table.  Exit codes: 0 success, 1 domain
// error (bad input, failed verification), 2 budget exceeded.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"

#include "dncover/verify.hpp"

namespace {

using nlohmann::ordered_json;

std::string env_cache_dir() {
  const char* v = std::getenv("DNCOVER_CACHE_DIR");
  return v ? v : "";
}

ordered_json vector_json(const dncover::HurwitzVector& v) {
  const auto nu = dncover::nu_type(v);
  const auto sigma = dncover::sigma_set(nu);
  ordered_json j;
  j["vector"] = dncover::to_string(v);
  j["n"] = v.n;
  j["g_prime"] = v.genus();
  j["d"] = v.d();
  const auto chk = dncover::is_hurwitz_system(v);
  j["hurwitz_system"] = chk.ok;
  if (!chk.ok) j["reason"] = chk.reason;
  j["nu"] = dncover::to_string(nu);
  auto names = ordered_json::array();
  for (const auto& cls : sigma) names.push_back(dncover::class_name(cls));
  j["sigma"] = names;
  j["orders"] = dncover::nu_orders(v.n, nu);
  j["admissible"] = dncover::is_admissible(v.n, nu);
  j["h2_order"] = dncover::h2_order(v.n);
  j["h2_sigma_order"] = dncover::h2_sigma_order(v.n, sigma);
  if (v.n % 2 == 0 && dncover::dn_is_identity(dncover::evaluate(v)))
    j["schur_lift_product"] = dncover::schur_lift_product(v);
  else
    j["schur_lift_product"] = nullptr;
  return j;
}

// Per-type catalog builds are independent; run them on a small pool and
// reassemble in type order so the output never depends on the worker count.
std::vector<dncover::ComponentRecord> build_catalog(int n, int g, const dncover::CatalogOptions& opt,
                                                    int jobs) {
  const auto types = dncover::primary_types(n, g);
  std::vector<std::vector<dncover::ComponentRecord>> per_type(types.size());
  if (jobs <= 1 || types.size() <= 1) {
    for (std::size_t i = 0; i < types.size(); ++i)
      per_type[i] = dncover::components_for_type(n, types[i], opt);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    std::mutex fail_mu;
    std::exception_ptr first_error;
    auto work = [&] {
      for (std::size_t i = next.fetch_add(1); i < types.size(); i = next.fetch_add(1)) {
        try {
          per_type[i] = dncover::components_for_type(n, types[i], opt);
        } catch (...) {
          std::lock_guard<std::mutex> lock(fail_mu);
          if (!first_error) first_error = std::current_exception();
        }
      }
    };
    const int pool = std::min<int>(jobs, static_cast<int>(types.size()));
    for (int w = 0; w < pool; ++w) workers.push_back(std::async(std::launch::async, work));
    for (auto& f : workers) f.get();
    if (first_error) std::rethrow_exception(first_error);
  }
  std::vector<dncover::ComponentRecord> records;
  for (auto& chunk : per_type)
    for (auto& rec : chunk) records.push_back(std::move(rec));
  dncover::attach_coincidence_flags(n, records);
  if (opt.oracle) dncover::oracle_recount(n, records, opt);
  return records;
}

int run(int argc, char** argv) {
  CLI::App app{"combinatorial classification of dihedral covers"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker threads (output independent of this)")
      ->check(CLI::PositiveNumber);
  std::string cache_dir = env_cache_dir();
  app.add_option("--cache-dir", cache_dir,
                 "orbit cache directory (default: DNCOVER_CACHE_DIR)");

  std::string vec_text, vec2_text, nu_text, out_path, grid = "full";
  bool mod_aut = false, oracle = false;
  long long cap = 10'000'000, enum_budget = 100'000'000;
  long long limit = 0;
  int n = 0, g = 0, gp = 0, d = 0;
  double time_budget = 600.0;

  auto* c_inv = app.add_subcommand("invariant", "branch type and lift data of a vector");
  c_inv->add_option("-v,--vector", vec_text, "vector text")->required();

  auto* c_cls = app.add_subcommand("classify", "canonical form of a Hurwitz system");
  c_cls->add_option("-v,--vector", vec_text, "vector text")->required();
  c_cls->add_option("--cap", cap, "fallback orbit budget");

  auto* c_orb = app.add_subcommand("orbit", "breadth-first orbit of a Hurwitz system");
  c_orb->add_option("-v,--vector", vec_text, "vector text")->required();
  c_orb->add_flag("--mod-aut", mod_aut, "also glue states along group relabellings");
  c_orb->add_option("--cap", cap, "maximum states before giving up");

  auto* c_eq = app.add_subcommand("equivalent", "same component under moves and relabelling");
  c_eq->add_option("--v1", vec_text, "first vector")->required();
  c_eq->add_option("--v2", vec2_text, "second vector")->required();
  c_eq->add_option("--cap", cap, "fallback orbit budget");

  auto* c_cat = app.add_subcommand("catalog", "component catalog for a group order and genus");
  c_cat->add_option("-n", n, "dihedral order parameter")->required();
  c_cat->add_option("-g", g, "total genus")->required();
  c_cat->add_flag("--oracle", oracle, "recount multiplicities by full orbit partitions");
  c_cat->add_option("--out", out_path, "write JSON here atomically instead of stdout");
  c_cat->add_option("--enumerate-budget", enum_budget, "search nodes per shape");
  c_cat->add_option("--orbit-budget", cap, "orbit partition state budget");

  auto* c_ver = app.add_subcommand("verify-paper", "run the acceptance checks");
  c_ver->add_option("--grid", grid, "small (orders up to 4) or full desk grid")
      ->check(CLI::IsMember({"small", "full"}));
  c_ver->add_option("--time-budget", time_budget, "wall-clock budget in seconds");
  int only = 0;
  c_ver->add_option("--only", only, "run a single criterion (1..10)")->check(CLI::Range(1, 10));

  auto* c_enum = app.add_subcommand("enumerate", "stream every Hurwitz system of a shape");
  c_enum->add_option("-n", n, "dihedral order parameter")->required();
  c_enum->add_option("--gp", gp, "quotient genus")->required();
  c_enum->add_option("-d", d, "number of branch points")->required();
  c_enum->add_option("--nu", nu_text, "restrict to this branch type, e.g. rot1:2,refl:2");
  c_enum->add_option("--limit", limit, "stop after this many vectors");
  c_enum->add_option("--budget", enum_budget, "search node budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help/version exit clean, parse errors are domain errors
  }

  if (c_inv->parsed()) {
    std::cout << vector_json(dncover::parse_vector(vec_text)).dump(2) << "\n";
    return 0;
  }

  if (c_cls->parsed()) {
    auto v = dncover::parse_vector(vec_text);
    std::cout << dncover::to_json(dncover::canonical_invariant(v, cap)) << "\n";
    return 0;
  }

  if (c_orb->parsed()) {
    dncover::OrbitOptions opt;
    opt.mod_aut = mod_aut;
    opt.max_states = cap;
    opt.cache_dir = cache_dir;
    auto rep = dncover::orbit(dncover::parse_vector(vec_text), opt);
    ordered_json j;
    j["seed"] = dncover::to_string(rep.seed);
    j["canonical"] = dncover::to_string(rep.canonical);
    j["size"] = rep.size;
    j["diameter"] = rep.diameter;
    j["mod_aut"] = rep.mod_aut;
    j["from_cache"] = rep.from_cache;
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (c_eq->parsed()) {
    bool same = dncover::equivalent(dncover::parse_vector(vec_text),
                                    dncover::parse_vector(vec2_text), cap);
    std::cout << (same ? "true" : "false") << "\n";
    return 0;
  }

  if (c_cat->parsed()) {
    dncover::CatalogOptions opt;
    opt.oracle = oracle;
    opt.enumerate_budget = enum_budget;
    opt.orbit_budget = cap;
    auto records = build_catalog(n, g, opt, jobs);
    auto j = dncover::catalog_json(n, g, records);
    if (out_path.empty())
      std::cout << j.dump(2) << "\n";
    else
      dncover::write_catalog_file(out_path, j);
    for (const auto& rec : records)
      for (const auto& f : rec.flags)
        if (f == "unverified") return 2;  // emitted, but a budget cut the search short
    return 0;
  }

  if (c_ver->parsed()) {
    dncover::VerifyContext ctx;
    ctx.max_n = grid == "small" ? 4 : 6;
    const auto t0 = std::chrono::steady_clock::now();
    int failures = 0, ran = 0;
    for (int k = only ? only : 1; k <= (only ? only : 10); ++k) {
      auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (elapsed > time_budget) {
        std::printf("stopped after criterion %d: wall clock %.0fs over the %.0fs budget\n", k - 1,
                    elapsed, time_budget);
        return 2;
      }
      auto r = dncover::verify_criterion(k, ctx);
      std::printf("[%2d] %s  %-58s %7.2fs  %s\n", r.number, r.pass ? "PASS" : "FAIL",
                  r.name.c_str(), r.seconds, r.detail.c_str());
      std::fflush(stdout);
      ++ran;
      if (!r.pass) ++failures;
    }
    std::printf("%d/%d criteria passed\n", ran - failures, ran);
    return failures == 0 ? 0 : 1;
  }

  if (c_enum->parsed()) {
    dncover::NuType nu;
    dncover::EnumerateOptions opt;
    opt.budget = enum_budget;
    if (!nu_text.empty()) {
      nu = dncover::parse_nu(n, nu_text);
      opt.nu_filter = &nu;
    }
    long long seen = 0;
    dncover::enumerate_hs(
        n, gp, d,
        [&](const dncover::HurwitzVector& v) {
          std::cout << dncover::to_string(v) << "\n";
          ++seen;
          return limit == 0 || seen < limit;
        },
        opt);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const dncover::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
