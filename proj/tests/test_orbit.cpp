#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "dncover/invariants.hpp"
#include "dncover/orbit.hpp"

using namespace dncover;

namespace {

HurwitzVector hv(int n, const std::string& text) { return parse_vector("n=" + std::to_string(n) + " " + text); }

// Reference orbit computation over string keys, bypassing the packed engine.
std::set<std::string> naive_orbit(const HurwitzVector& seed) {
  auto moves = move_set(seed.n, seed.genus(), seed.d());
  std::set<std::string> seen{to_string(seed)};
  std::vector<HurwitzVector> stack{seed};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (const auto& m : moves) {
      auto w = apply_move(v, m);
      if (seen.insert(to_string(w)).second) stack.push_back(w);
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("packing is a bijection compatible with vector order") {
  for (auto [n, gp, d] : {std::tuple{3, 1, 1}, {4, 0, 4}, {2, 2, 2}}) {
    auto codec = VectorCodec::for_shape(n, gp, d);
    auto states = enumerate_hs_packed(n, gp, d);
    REQUIRE(!states.empty());
    CHECK(std::is_sorted(states.begin(), states.end()));
    for (std::size_t i = 0; i < states.size(); ++i) {
      auto v = codec.unpack(states[i]);
      CHECK(codec.pack(v) == states[i]);
      if (i > 0) CHECK(codec.unpack(states[i - 1]) < v);
    }
  }
  CHECK_THROWS_AS(VectorCodec::for_shape(3, 3, 4), std::invalid_argument);
}

TEST_CASE("automorphism byte tables agree with entrywise application") {
  const int n = 6;
  auto codec = VectorCodec::for_shape(n, 1, 2);
  auto tables = aut_key_tables(n);
  auto auts = dn_automorphisms(n);
  REQUIRE(tables.size() == auts.size());
  auto states = enumerate_hs_packed(n, 1, 2);
  std::size_t step = std::max<std::size_t>(1, states.size() / 50);
  for (std::size_t i = 0; i < states.size(); i += step) {
    auto v = codec.unpack(states[i]);
    for (std::size_t k = 0; k < auts.size(); ++k) {
      HurwitzVector w = v;
      for (auto& e : w.c) e = auts[k].apply(e);
      for (auto& e : w.ab) e = auts[k].apply(e);
      CHECK(codec.pack(w) == map_key_bytes(states[i], tables[k], codec.total()));
    }
  }
}

TEST_CASE("orbit agrees with a direct search") {
  for (auto seed : {hv(3, "g=1 c=[x] ab=[x*y,y]"), hv(4, "g=0 c=[y,x*y,x^2,x^3] ab=[]"),
                    hv(2, "g=1 c=[y,y] ab=[x,x*y]")}) {
    auto expect = naive_orbit(seed);
    auto rep = orbit(seed);
    CHECK(rep.size == static_cast<long long>(expect.size()));
    CHECK(expect.count(to_string(rep.canonical)) == 1);
    HurwitzVector least = seed;
    for (const auto& s : expect) {
      auto v = parse_vector(s);
      if (v < least) least = v;
    }
    CHECK(rep.canonical == least);
    CHECK(!rep.from_cache);
    CHECK(rep.diameter >= 1);
    CHECK(rep.diameter < rep.size);
  }
}

TEST_CASE("orbit rejects non-systems and enforces the state budget") {
  CHECK_THROWS_AS(orbit(hv(3, "g=0 c=[x,x] ab=[]")), std::invalid_argument);
  OrbitOptions tight;
  tight.max_states = 3;
  CHECK_THROWS_AS(orbit(hv(3, "g=1 c=[x] ab=[x*y,y]"), tight), BudgetExceeded);
}

TEST_CASE("unbranched genus-two orbits split exactly by the lifting invariant") {
  // For odd n a single orbit; for even n two orbits separated by the central
  // lift of the commutator product.
  for (int n : {3, 4, 5, 6}) {
    auto states = enumerate_hs_packed(n, 2, 0);
    REQUIRE(!states.empty());
    auto part = partition_orbits(n, 2, 0, states, false);
    CHECK(part.orbit_count == (n % 2 == 0 ? 2 : 1));
    if (n % 2 == 0) {
      auto codec = VectorCodec::for_shape(n, 2, 0);
      std::vector<std::set<int>> bits(static_cast<std::size_t>(part.orbit_count));
      for (std::size_t i = 0; i < part.states.size(); ++i) {
        auto oid = static_cast<std::size_t>(part.orbit_of[i]);
        bits[oid].insert(schur_lift_product(codec.unpack(part.states[i])));
      }
      CHECK(bits[0] != bits[1]);
      for (const auto& b : bits) CHECK(b.size() == 1);
    }
    // Group automorphisms do not merge these orbits further.
    auto part_aut = partition_orbits(n, 2, 0, states, true);
    CHECK(part_aut.orbit_count == part.orbit_count);
  }
}

TEST_CASE("partition covers the cell and refines under automorphisms") {
  const int n = 4, gp = 1, d = 2;
  auto states = enumerate_hs_packed(n, gp, d);
  auto raw = partition_orbits(n, gp, d, states, false);
  auto merged = partition_orbits(n, gp, d, states, true);

  long long total = 0;
  for (auto s : raw.size) total += s;
  CHECK(total == static_cast<long long>(states.size()));
  CHECK(merged.orbit_count <= raw.orbit_count);

  // Every raw orbit sits inside a single merged orbit.
  std::vector<std::set<std::int32_t>> image(static_cast<std::size_t>(raw.orbit_count));
  for (std::size_t i = 0; i < states.size(); ++i)
    image[static_cast<std::size_t>(raw.orbit_of[i])].insert(merged.orbit_of[i]);
  for (const auto& s : image) CHECK(s.size() == 1);

  // The branch type is constant on each orbit.
  auto codec = VectorCodec::for_shape(n, gp, d);
  std::vector<std::optional<NuType>> nu(static_cast<std::size_t>(raw.orbit_count));
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto oid = static_cast<std::size_t>(raw.orbit_of[i]);
    auto t = nu_type(codec.unpack(states[i]));
    if (!nu[oid]) nu[oid] = t;
    CHECK(*nu[oid] == t);
  }

  // A single-seed search from each representative reproduces the class size.
  for (int oid = 0; oid < raw.orbit_count; ++oid) {
    auto rep = orbit(codec.unpack(raw.canonical[static_cast<std::size_t>(oid)]));
    CHECK(rep.size == raw.size[static_cast<std::size_t>(oid)]);
    CHECK(codec.pack(rep.canonical) == raw.canonical[static_cast<std::size_t>(oid)]);
  }
}

TEST_CASE("orbit cache stores canonical seeds and serves exact matches") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "dncover_orbit_cache_test";
  fs::remove_all(dir);

  OrbitOptions opt;
  opt.cache_dir = dir.string();
  auto seed = hv(3, "g=1 c=[x] ab=[x*y,y]");
  auto first = orbit(seed, opt);
  CHECK(!first.from_cache);

  // Only an exact seed match is served from the cache.
  auto canonical_again = orbit(first.canonical, opt);
  CHECK(canonical_again.from_cache);
  CHECK(canonical_again.size == first.size);
  CHECK(canonical_again.diameter == first.diameter);

  if (!(seed == first.canonical)) {
    auto recomputed = orbit(seed, opt);
    CHECK(!recomputed.from_cache);
    CHECK(recomputed.size == first.size);
  }

  // The record is written once per canonical representative.
  std::ifstream in(detail::orbit_cache_path(opt, 3, 1, 1));
  int lines = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 1);
  fs::remove_all(dir);
}
