#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "dncover/classify.hpp"

using namespace dncover;

namespace {

HurwitzVector hv(int n, const std::string& text) { return parse_vector("n=" + std::to_string(n) + " " + text); }

// All branch types with total weight d, built from the non-identity classes.
std::vector<NuType> all_nu_types(int n, int d) {
  auto classes = dn_all_classes(n);
  classes.erase(classes.begin());  // identity
  std::vector<NuType> out;
  NuType cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == classes.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      if (k > 0) cur[classes[i]] = k;
      rec(i + 1, left - k);
      cur.erase(classes[i]);
    }
  };
  rec(0, d);
  return out;
}

}  // namespace

TEST_CASE("normal form reproduces the worked examples") {
  auto f1 = normal_form(hv(3, "g=1 c=[y,y] ab=[x,e]"));
  CHECK(f1.form_case == FormCase::WithReflections);
  CHECK(f1.params == std::vector<int>{2});
  CHECK(to_string(f1.rep) == "n=3 g=1 c=[x*y,x*y] ab=[x,e]");

  auto f2 = normal_form(hv(4, "g=2 c=[] ab=[y,x^2,x,e]"));
  CHECK(f2.form_case == FormCase::Etale);
  CHECK(f2.params == std::vector<int>{1});
  CHECK(f2.rep == hv(4, "g=2 c=[] ab=[y,x^2,x,e]"));

  auto f3 = normal_form(hv(5, "g=2 c=[x^2,x^3] ab=[y,e,x,e]"));
  CHECK(f3.form_case == FormCase::RotationsOnly);
  CHECK(f3.params == std::vector<int>{2, 2, 2});
  CHECK(to_string(f3.rep) == "n=5 g=2 c=[x^2,x^2] ab=[y,x^2,x,e]");

  CHECK_THROWS_AS(normal_form(hv(3, "g=0 c=[x,x] ab=[]")), std::invalid_argument);
}

TEST_CASE("the residue pair separates the genus-two rotation-only pair in D4") {
  auto v1 = hv(4, "g=2 c=[x,x] ab=[y,x,x,e]");
  auto v2 = hv(4, "g=2 c=[x,x] ab=[y,x^3,x,e]");
  auto f1 = normal_form(v1), f2 = normal_form(v2);
  CHECK(f1.params == std::vector<int>{1, 1, 1});
  CHECK(f2.params == std::vector<int>{1, 1, 3});

  // No automorphism merges the two classes; the invariant and the search agree.
  CHECK(canonical_invariant(v1) != canonical_invariant(v2));
  CHECK_FALSE(equivalent(v1, v2));
  OrbitOptions opt;
  opt.mod_aut = true;
  CHECK(!(orbit(v1, opt).canonical == orbit(v2, opt).canonical));
}

TEST_CASE("explicit equivalences and inequivalences") {
  CHECK(equivalent(hv(3, "g=1 c=[y,y] ab=[x,e]"), hv(3, "g=1 c=[x*y,x*y] ab=[x,e]")));
  CHECK_FALSE(equivalent(hv(4, "g=2 c=[] ab=[y,e,x,e]"), hv(4, "g=2 c=[] ab=[y,x^2,x,e]")));
  auto v = hv(4, "g=1 c=[y,x^2*y] ab=[x,y]");
  CHECK(equivalent(v, v));
  CHECK_THROWS_AS(equivalent(v, hv(4, "g=2 c=[] ab=[y,e,x,e]")), std::invalid_argument);
}

TEST_CASE("canonical invariant is idempotent and conjugation-blind") {
  for (auto v : {hv(3, "g=1 c=[y,y] ab=[x,e]"), hv(4, "g=2 c=[x,x] ab=[y,x^3,x,e]"),
                 hv(4, "g=2 c=[] ab=[y,x^2,x,e]"), hv(2, "g=1 c=[y,y] ab=[x,x*y]")}) {
    auto cf = canonical_invariant(v);
    CHECK(canonical_invariant(cf.rep) == cf);
    for (const auto& g : {dn_x(v.n), dn_y(v.n)}) {
      HurwitzVector w = v;
      for (auto& e : w.c) e = dn_conj(g, e);
      for (auto& e : w.ab) e = dn_conj(g, e);
      CHECK(canonical_invariant(w) == cf);
    }
  }
}

TEST_CASE("normal form parameters satisfy the stated constraints") {
  struct Shape { int n, g_prime, d; };
  for (Shape s : {Shape{3, 2, 2}, Shape{4, 2, 2}, Shape{5, 2, 1}, Shape{6, 1, 2},
                  Shape{4, 1, 3}}) {
    auto systems = enumerate_hs(s.n, s.g_prime, s.d);
    std::size_t step = std::max<std::size_t>(1, systems.size() / 200);
    for (std::size_t i = 0; i < systems.size(); i += step) {
      auto f = normal_form(systems[i]);
      INFO(to_string(systems[i]));
      REQUIRE(is_hurwitz_system(f.rep).ok);
      CHECK(nu_total(nu_type(f.rep)) == s.d);
      if (f.form_case == FormCase::WithReflections) {
        std::size_t nr = f.params.size() - (s.n % 2 == 1 ? 1 : 3);
        for (std::size_t j = 0; j < nr; ++j) {
          CHECK(f.params[j] > 0);
          CHECK(2 * f.params[j] <= s.n);
          if (j > 0) CHECK(f.params[j - 1] <= f.params[j]);
        }
        if (s.n % 2 == 0) {
          int nu1 = f.params[nr], nu2 = f.params[nr + 1], eps = f.params[nr + 2];
          CHECK(nu1 <= nu2);
          CHECK((eps + nu2) % 2 == 1);
          CHECK((nu1 + nu2) % 2 == 0);
        } else {
          CHECK(f.params[nr] % 2 == 0);
        }
      } else if (f.form_case == FormCase::RotationsOnly) {
        int h = f.params.back();
        int sum = 0;
        bool central = false;
        for (std::size_t j = 0; j + 1 < f.params.size(); ++j) {
          CHECK(f.params[j] > 0);
          CHECK(2 * f.params[j] <= s.n);
          if (j > 0) CHECK(f.params[j - 1] <= f.params[j]);
          if (2 * f.params[j] == s.n) central = true;
          sum += f.params[j];
        }
        CHECK(mod(2 * h, s.n) == mod(sum, s.n));
        CHECK(h >= 0);
        CHECK(h < s.n);
        if (s.n % 2 == 1 || central) CHECK((s.n % 2 == 1 ? h < s.n : h < s.n / 2));
      }
    }
  }
}

TEST_CASE("the invariant matches the orbit partition on small cells") {
  struct Shape { int n, g_prime, d; };
  for (Shape s : {Shape{3, 1, 1}, Shape{3, 1, 2}, Shape{4, 1, 2}, Shape{3, 2, 1},
                  Shape{4, 2, 1}, Shape{2, 1, 2}, Shape{3, 0, 4}, Shape{4, 0, 3},
                  Shape{5, 1, 1}}) {
    auto states = enumerate_hs_packed(s.n, s.g_prime, s.d);
    if (states.empty()) continue;
    auto part = partition_orbits(s.n, s.g_prime, s.d, states, true);
    auto codec = VectorCodec::for_shape(s.n, s.g_prime, s.d);

    std::map<std::int32_t, CanonicalForm> form_of_orbit;
    std::set<std::string> distinct;
    for (int id = 0; id < part.orbit_count; ++id) {
      auto cf = canonical_invariant(codec.unpack(part.canonical[static_cast<std::size_t>(id)]));
      form_of_orbit.emplace(id, cf);
      distinct.insert(to_json(cf));
    }
    INFO("cell n=" << s.n << " g'=" << s.g_prime << " d=" << s.d);
    CHECK(static_cast<int>(distinct.size()) == part.orbit_count);

    // Constancy, sampled across each orbit.
    std::size_t step = std::max<std::size_t>(1, states.size() / 60);
    for (std::size_t i = 0; i < states.size(); i += step) {
      auto cf = canonical_invariant(codec.unpack(states[i]));
      CHECK(cf == form_of_orbit.at(part.orbit_of[i]));
    }
  }
}

TEST_CASE("realizability rules match the worked examples") {
  auto v1 = nu_realizable(5, 0, parse_nu(5, "refl:4"));
  CHECK(v1.realizable);
  CHECK(v1.rule == RealizabilityRule::O);

  auto v2 = nu_realizable(5, 0, parse_nu(5, "refl:2"));
  CHECK_FALSE(v2.realizable);
  CHECK(v2.rule == RealizabilityRule::None);

  auto v3 = nu_realizable(3, 2, parse_nu(3, "rot1:2"));
  CHECK(v3.realizable);
  CHECK(v3.rule == RealizabilityRule::AnyAdmissible_gp2);

  auto v4 = nu_realizable(4, 1, parse_nu(4, "refl_even:2"));
  CHECK(v4.realizable);
  CHECK(v4.rule == RealizabilityRule::ReflectionPresent_gp1);

  auto v5 = nu_realizable(4, 1, parse_nu(4, "rot1:2"));
  CHECK(v5.realizable);
  CHECK(v5.rule == RealizabilityRule::RotationIndex_gp1);

  auto v6 = nu_realizable(4, 1, parse_nu(4, "central:2"));
  CHECK_FALSE(v6.realizable);

  auto v7 = nu_realizable(5, 0, parse_nu(5, "refl:2,rot1:1"));
  CHECK(v7.realizable);
  CHECK(v7.rule == RealizabilityRule::R);

  auto v8 = nu_realizable(6, 0, parse_nu(6, "refl_even:4"));
  CHECK_FALSE(v8.realizable);
  auto v9 = nu_realizable(6, 0, parse_nu(6, "refl_even:4,rot1:2"));
  CHECK(v9.realizable);
  CHECK(v9.rule == RealizabilityRule::E);

  CHECK_THROWS_AS(nu_realizable(5, 0, parse_nu(5, "rot1:0")), std::invalid_argument);
  CHECK_THROWS_AS(nu_realizable(1, 0, NuType{}), std::invalid_argument);
}

TEST_CASE("realizability agrees with exhaustive search") {
  struct Shape { int n, g_prime, d; };
  for (Shape s : {Shape{2, 0, 4}, Shape{2, 1, 3}, Shape{2, 2, 2}, Shape{3, 0, 4},
                  Shape{3, 1, 3}, Shape{3, 2, 2}, Shape{4, 0, 4}, Shape{4, 1, 2},
                  Shape{5, 0, 4}, Shape{5, 1, 2}, Shape{6, 0, 3}, Shape{6, 1, 2}}) {
    std::set<std::string> found;
    enumerate_hs(s.n, s.g_prime, s.d, [&](const HurwitzVector& v) {
      found.insert(to_string(nu_type(v)));
      return true;
    });
    for (const auto& nu : all_nu_types(s.n, s.d)) {
      auto verdict = nu_realizable(s.n, s.g_prime, nu);
      INFO("n=" << s.n << " g'=" << s.g_prime << " nu=" << to_string(nu));
      CHECK(verdict.realizable == (found.count(to_string(nu)) == 1));
      if (!verdict.realizable) CHECK(verdict.rule == RealizabilityRule::None);
    }
  }
}

TEST_CASE("canonical forms serialize to stable single-line JSON") {
  auto cf = normal_form(hv(4, "g=2 c=[] ab=[y,x^2,x,e]"));
  auto text = to_json(cf);
  CHECK(text.find('\n') == std::string::npos);
  CHECK(text ==
        "{\"case\":\"etale\",\"d\":0,\"g\":2,\"n\":4,\"params\":[1],"
        "\"rep\":\"n=4 g=2 c=[] ab=[y,x^2,x,e]\"}");
}
