#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "dncover/catalog.hpp"

using namespace dncover;

namespace {

// Unpruned oracle for the numerical types: scan every multiset of valid
// branching orders up to a crude length bound and keep those whose genus
// formula lands exactly on g.
std::vector<PrimaryNumericalType> brute_types(int n, int g) {
  std::vector<int> valid;
  for (int m = 2; m <= n; ++m)
    if (dn_valid_element_order(n, m)) valid.push_back(m);
  std::vector<PrimaryNumericalType> out;
  int max_d = 2 * g + 4;  // each branch point contributes at least n to 2(g-1)+4n
  for (int gp = 0; 4 * n * (gp - 1) <= 2 * (g - 1); ++gp) {
    std::vector<int> orders;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      long long rhs = 4LL * n * (gp - 1);
      for (int m : orders) rhs += 2 * n - 2 * n / m;
      if (rhs == 2 * (g - 1) && !(gp == 0 && orders.size() < 3))
        out.push_back({gp, static_cast<int>(orders.size()), orders});
      if (static_cast<int>(orders.size()) >= max_d) return;
      for (std::size_t i = from; i < valid.size(); ++i) {
        orders.push_back(valid[i]);
        rec(i);
        orders.pop_back();
      }
    };
    rec(0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const ComponentRecord* find_record(const std::vector<ComponentRecord>& recs, int gp, int d,
                                   const std::string& nu) {
  for (const auto& r : recs)
    if (r.type.g_prime == gp && r.type.d == d && to_string(r.nu) == nu) return &r;
  return nullptr;
}

bool has_flag(const ComponentRecord& r, const std::string& f) {
  return std::find(r.flags.begin(), r.flags.end(), f) != r.flags.end();
}

bool verified(const CoincidenceReport& r, const std::string& name) {
  return std::find(r.verified.begin(), r.verified.end(), name) != r.verified.end();
}

bool verified(const GroupConstruction& r, const std::string& name) {
  return std::find(r.verified.begin(), r.verified.end(), name) != r.verified.end();
}

}  // namespace

TEST_CASE("numerical types match the genus formula brute force") {
  for (int n = 2; n <= 6; ++n)
    for (int g = 2; g <= 8; ++g) {
      auto fast = primary_types(n, g);
      auto slow = brute_types(n, g);
      INFO("n=" << n << " g=" << g);
      CHECK(fast == slow);
      CHECK(std::is_sorted(fast.begin(), fast.end()));
      CHECK(std::adjacent_find(fast.begin(), fast.end()) == fast.end());
      for (const auto& t : fast) {
        CHECK(type_genus(n, t) == g);
        CHECK(hurwitz_genus(n, t.g_prime, t.orders) == g);
      }
    }
}

TEST_CASE("numerical types worked examples") {
  auto t32 = primary_types(3, 2);
  REQUIRE(t32.size() == 1);
  CHECK(t32[0].g_prime == 0);
  CHECK(t32[0].d == 4);
  CHECK(t32[0].orders == std::vector<int>{2, 2, 3, 3});

  // Unramified tower: g = 4n(g'-1)/2 + 1, so n=3, g'=2 gives g=7.
  auto t37 = primary_types(3, 7);
  PrimaryNumericalType etale{2, 0, {}};
  CHECK(std::find(t37.begin(), t37.end(), etale) != t37.end());

  CHECK_THROWS_AS(primary_types(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(primary_types(1, 5), std::invalid_argument);
}

TEST_CASE("branch orders of a vector agree with its entries") {
  auto v = parse_vector("n=6 g=0 c=[y,y,x,x^2,x^3] ab=[]");
  CHECK(nu_orders(6, nu_type(v)) == std::vector<int>({2, 2, 2, 3, 6}));
  NuType empty;
  CHECK(nu_orders(4, empty).empty());
}

TEST_CASE("catalog for n=3 genus 2 has a single component") {
  auto recs = components(3, 2);
  REQUIRE(recs.size() == 1);
  const auto& r = recs[0];
  CHECK(r.type.g_prime == 0);
  CHECK(r.type.d == 4);
  CHECK(r.type.orders == std::vector<int>{2, 2, 3, 3});
  CHECK(to_string(r.nu) == "rot1:2,refl:2");
  CHECK(r.epsilon_multiplicity == 1);
  CHECK(r.dimension == 1);
  CHECK(to_string(r.representative) == "n=3 g=0 c=[y,y,x,x^2] ab=[]");
  CHECK(r.flags.empty());

  auto j = catalog_json(3, 2, recs);
  CHECK(j.dump() ==
        "{\"n\":3,\"g\":2,\"components\":[{\"g_prime\":0,\"d\":4,\"orders\":[2,2,3,3],"
        "\"nu\":\"rot1:2,refl:2\",\"epsilon_multiplicity\":1,\"dimension\":1,"
        "\"representative\":\"n=3 g=0 c=[y,y,x,x^2] ab=[]\",\"flags\":[]}]}");

  // The orbit recount must agree and leave the catalog unchanged.
  CatalogOptions oracle;
  oracle.oracle = true;
  auto recs2 = components(3, 2, oracle);
  REQUIRE(recs2.size() == 1);
  CHECK(recs2[0].epsilon_multiplicity == 1);
  CHECK(to_string(recs2[0].representative) == to_string(r.representative));
  CHECK(recs2[0].flags.empty());
}

TEST_CASE("catalog for n=4 genus 3 lists three components with coincidence flags") {
  auto recs = components(4, 3);
  REQUIRE(recs.size() == 3);

  const auto* a = find_record(recs, 0, 4, "rot1:2,refl_even:2");
  REQUIRE(a != nullptr);
  CHECK(a->type.orders == std::vector<int>{2, 2, 4, 4});
  CHECK(a->epsilon_multiplicity == 1);
  CHECK(a->dimension == 1);
  CHECK(to_string(a->representative) == "n=4 g=0 c=[y,y,x,x^3] ab=[]");
  CHECK(a->flags == std::vector<std::string>{"possible_coincidence"});

  const auto* b = find_record(recs, 0, 5, "central:1,refl_even:2,refl_odd:2");
  REQUIRE(b != nullptr);
  CHECK(b->type.orders == std::vector<int>{2, 2, 2, 2, 2});
  CHECK(b->epsilon_multiplicity == 1);
  CHECK(b->dimension == 2);
  CHECK(b->flags.empty());

  const auto* c = find_record(recs, 1, 1, "central:1");
  REQUIRE(c != nullptr);
  CHECK(c->type.orders == std::vector<int>{2});
  CHECK(c->epsilon_multiplicity == 1);
  CHECK(c->dimension == 1);
  CHECK(c->flags == std::vector<std::string>{"possible_coincidence"});

  // Orbit recount agrees.
  CatalogOptions oracle;
  oracle.oracle = true;
  auto recs2 = components(4, 3, oracle);
  REQUIRE(recs2.size() == 3);
  for (const auto& r : recs2) {
    CHECK(r.epsilon_multiplicity == 1);
    CHECK_FALSE(has_flag(r, "unverified"));
  }
}

TEST_CASE("catalog records are internally consistent") {
  struct Cell {
    int n, g;
  };
  for (Cell cell : {Cell{3, 2}, Cell{3, 4}, Cell{4, 3}, Cell{5, 4}, Cell{6, 5}}) {
    auto recs = components(cell.n, cell.g);
    std::set<std::pair<PrimaryNumericalType, std::string>> seen;
    for (const auto& r : recs) {
      INFO("n=" << cell.n << " g=" << cell.g << " nu=" << to_string(r.nu));
      CHECK(type_genus(cell.n, r.type) == cell.g);
      CHECK(r.dimension == 3 * (r.type.g_prime - 1) + r.type.d);
      CHECK((r.epsilon_multiplicity == 1 || r.epsilon_multiplicity == 2));
      CHECK(r.nu == nu_aut_orbit_min(cell.n, r.nu));
      CHECK(is_hurwitz_system(r.representative).ok);
      CHECK(nu_type(r.representative) == r.nu);
      CHECK(nu_orders(cell.n, nu_type(r.representative)) == r.type.orders);
      CHECK(seen.insert({r.type, to_string(r.nu)}).second);
    }
  }
}

TEST_CASE("unramified components for n=4 land in genus 9") {
  auto recs = components(4, 9);
  int etale = 0;
  for (const auto& r : recs) {
    CHECK_FALSE(has_flag(r, "possible_coincidence"));
    if (r.type.d == 0) {
      ++etale;
      CHECK(r.type.g_prime == 2);
      CHECK(to_string(r.nu).empty());
      CHECK(r.epsilon_multiplicity == 2);
      CHECK(r.dimension == 3);
      CHECK(r.representative.c.empty());
    }
  }
  CHECK(etale == 1);
}

TEST_CASE("genus zero coincidence pairs are connected by moves and relabelling") {
  for (auto [n, h] : std::vector<std::pair<int, int>>{{3, 0}, {5, 0}, {4, 0}, {4, 2}, {6, 0}, {6, 3}}) {
    auto rep = coincidence_check_pair(n, h);
    INFO("n=" << n << " h=" << h << " failure=" << rep.failure);
    CHECK(rep.ok);
    CHECK(rep.delta == 1);
    CHECK(rep.case_tag == "III-b");
    CHECK(verified(rep, "first_tuple_is_hurwitz_system"));
    CHECK(verified(rep, "second_tuple_is_hurwitz_system"));
    CHECK(verified(rep, "nu_types_aut_related"));
    CHECK(verified(rep, "connected_by_moves_and_aut"));
  }

  // For n=4, h=2 the two branch types genuinely differ, so moves alone
  // cannot identify the loci; relabelling is essential.
  auto e = dn_make(4, 0, 0);
  auto x = dn_make(4, 1, 0);
  auto y = dn_make(4, 0, 1);
  HurwitzVector v1{4, {dn_mul(y, dn_pow(x, 1)), x, dn_mul(y, dn_pow(x, 3)), dn_inverse(x)}, {}};
  HurwitzVector v2{4, {x, y, x, y}, {}};
  (void)e;
  CHECK(nu_type(v1) != nu_type(v2));

  CHECK_THROWS_AS(coincidence_check_pair(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(coincidence_check_pair(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(coincidence_check_pair(6, 2), std::invalid_argument);
  CHECK_THROWS_AS(coincidence_check_pair(2, 0), std::invalid_argument);
}

TEST_CASE("the exceptional intersection example verifies in the product group") {
  for (int d4 : {2, 3, 4}) {
    auto rep = coincidence_exception_example(d4);
    INFO("d4=" << d4 << " failure=" << rep.failure);
    CHECK(rep.ok);
    CHECK(rep.delta == 1);
    CHECK(rep.case_tag == "III-a/III-b");
    CHECK(rep.verified ==
          std::vector<std::string>{"orders_2_2_2_2d", "product_trivial", "generates_direct_product",
                                   "genus_one_images", "commutator_identity", "genus_zero_images",
                                   "genus_zero_product_trivial", "genus_zero_generates_dn",
                                   "genus_one_projects_onto_dn"});
  }
  CHECK_THROWS_AS(coincidence_exception_example(1), std::invalid_argument);
}

TEST_CASE("index two pair constructions produce the advertised extensions") {
  auto expect_names = [](const GroupConstruction& r) {
    CHECK(verified(r, "group_order_4n"));
    CHECK(verified(r, "H_is_dihedral"));
    CHECK(verified(r, "Hprime_is_dihedral"));
    CHECK(verified(r, "subgroups_distinct"));
    CHECK(verified(r, "core_has_index_two"));
    CHECK(verified(r, "core_normal_in_G"));
    CHECK(verified(r, "quotient_is_klein_four"));
    CHECK(verified(r, "gamma_squares_trivial"));
    CHECK(verified(r, "gamma1_generates_H_over_core"));
    CHECK(verified(r, "gamma2_generates_Hprime_over_core"));
    CHECK(verified(r, "gamma_images_generate_quotient"));
    CHECK((verified(r, "sequence_splits") || verified(r, "sequence_does_not_split")));
  };

  struct Want {
    int n;
    std::vector<std::string> kinds;
  };
  std::vector<Want> wants = {
      {3, {"split_direct_product"}},
      {4, {"split_direct_product", "double_dihedral", "semidirect_twist"}},
      {5, {"split_direct_product"}},
      {6, {"split_direct_product", "double_dihedral"}},
      {8, {"split_direct_product", "double_dihedral"}},
      {12, {"split_direct_product", "double_dihedral", "semidirect_twist"}},
  };
  for (const auto& w : wants) {
    auto recs = dd_constructions(w.n);
    REQUIRE(recs.size() == w.kinds.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
      INFO("n=" << w.n << " kind=" << recs[i].kind << " failure=" << recs[i].failure);
      CHECK(recs[i].kind == w.kinds[i]);
      CHECK(recs[i].ok);
      CHECK(recs[i].n == w.n);
      CHECK(recs[i].group_order == 4 * w.n);
      CHECK(recs[i].split == (recs[i].kind == "split_direct_product"));
      expect_names(recs[i]);
      if (recs[i].kind == "split_direct_product")
        CHECK(verified(recs[i], "Hprime_graph_of_homomorphism"));
    }
  }
  CHECK_THROWS_AS(dd_constructions(2), std::invalid_argument);
}

TEST_CASE("order four worked equivalences") {
  auto rep = d2_equivalence_checks();
  INFO(rep.failure);
  CHECK(rep.ok);
  CHECK(rep.delta == 2);
  CHECK(rep.case_tag == "II");
  CHECK(rep.verified ==
        std::vector<std::string>{"tuples_are_hurwitz_systems", "first_pair_equivalent_under_moves",
                                 "second_pair_nu_differs", "second_pair_equivalent_under_aut"});
}

TEST_CASE("catalog files are written atomically with parent directories") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "dncover_catalog_test";
  fs::remove_all(dir);
  auto path = dir / "nested" / "catalog_3_2.json";

  auto recs = components(3, 2);
  auto j = catalog_json(3, 2, recs);
  write_catalog_file(path.string(), j);

  REQUIRE(fs::exists(path));
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
  std::ifstream in(path);
  auto parsed = nlohmann::ordered_json::parse(in);
  CHECK(parsed == j);
  CHECK(parsed["n"] == 3);
  CHECK(parsed["components"].size() == 1);
  fs::remove_all(dir);
}
