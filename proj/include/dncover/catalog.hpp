#pragma once

// Component catalogs.  A locus of dihedral actions in genus g is described by
// its primary numerical type (quotient genus, branch count, branching orders),
// a nu-orbit under the automorphism group, and a multiplicity counting how
// many equivalence classes share that nu.  This header enumerates all of them
// for a given (n, g), and also carries the explicit finite-group constructions
// behind the coincidence analysis: pairs of dihedral subgroups cutting out the
// same locus, the one genuinely exceptional pattern, and the groups generated
// by two dihedral subgroups sharing an index-two core.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dncover/classify.hpp"
#include "dncover/orbit.hpp"

#include "json.hpp"

namespace dncover {

// ---------------------------------------------------------------------------
// Primary numerical types: (g', d, m_1 <= ... <= m_d) with every m_i a valid
// element order, solving 2(g-1) = 2n [ 2(g'-1) + sum_i (1 - 1/m_i) ].

struct PrimaryNumericalType {
  int g_prime = 0;
  int d = 0;
  std::vector<int> orders;  // ascending

  friend bool operator==(const PrimaryNumericalType&, const PrimaryNumericalType&) = default;
  friend bool operator<(const PrimaryNumericalType& a, const PrimaryNumericalType& b) {
    if (a.g_prime != b.g_prime) return a.g_prime < b.g_prime;
    if (a.d != b.d) return a.d < b.d;
    return a.orders < b.orders;
  }
};

// Total genus cut out by a type; inverse direction of primary_types.
inline int type_genus(int n, const PrimaryNumericalType& t) {
  return hurwitz_genus(n, t.g_prime, t.orders);
}

inline std::vector<PrimaryNumericalType> primary_types(int n, int g) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  if (g < 2) throw std::invalid_argument("primary types are defined for genus >= 2");
  std::vector<int> ms;
  for (int m = 2; m <= n; ++m)
    if (dn_valid_element_order(n, m)) ms.push_back(m);
  const auto weight = [n](int m) { return 2LL * n - (2LL * n) / m; };  // ascending in m
  std::vector<PrimaryNumericalType> out;
  std::vector<int> pick;
  std::function<void(int, std::size_t, long long)> rec = [&](int gp, std::size_t lo,
                                                             long long rest) {
    if (rest == 0) {
      out.push_back({gp, static_cast<int>(pick.size()), pick});
      return;
    }
    for (std::size_t i = lo; i < ms.size(); ++i) {
      if (weight(ms[i]) > rest) break;
      pick.push_back(ms[i]);
      rec(gp, i, rest - weight(ms[i]));
      pick.pop_back();
    }
  };
  for (int gp = 0;; ++gp) {
    const long long rest = 2LL * (g - 1) - 4LL * n * (gp - 1);
    if (rest < 0) break;
    rec(gp, 0, rest);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Branching orders of a nu, ascending.
inline std::vector<int> nu_orders(int n, const NuType& nu) {
  std::vector<int> out;
  for (const auto& [cls, count] : nu)
    out.insert(out.end(), static_cast<std::size_t>(count), dn_class_element_order(n, cls));
  std::sort(out.begin(), out.end());
  return out;
}

// Least representative of the orbit of nu under the automorphism group.
inline NuType nu_aut_orbit_min(int n, const NuType& nu) {
  NuType best = nu;
  for (const auto& f : dn_automorphisms(n)) best = std::min(best, aut_image_nu(f, nu));
  return best;
}

// ---------------------------------------------------------------------------
// Component records.

struct ComponentRecord {
  PrimaryNumericalType type;
  NuType nu;                     // least Aut-orbit representative
  int epsilon_multiplicity = 1;  // equivalence classes sharing this nu-orbit
  int dimension = 0;             // 3(g'-1) + d
  HurwitzVector representative;  // least Hurwitz system with nu exactly `nu`
  std::vector<std::string> flags;
};

struct CatalogOptions {
  bool oracle = false;                       // recount multiplicities by full BFS
  long long enumerate_budget = 100'000'000;  // scan nodes per shape
  long long orbit_budget = 10'000'000;       // BFS states per orbit computation
};

namespace detail {

// All admissible + realizable nu with the given branch orders, as least
// Aut-orbit representatives.
inline std::set<NuType> realizable_nu_orbits(int n, int g_prime,
                                             const std::vector<int>& orders) {
  std::map<int, int> by_order;
  for (int m : orders) by_order[m]++;
  std::map<int, std::vector<ConjClassId>> classes_by_order;
  for (const auto& cls : dn_all_classes(n)) {
    if (cls.kind == ConjClassKind::Identity) continue;
    classes_by_order[dn_class_element_order(n, cls)].push_back(cls);
  }
  std::vector<std::pair<std::vector<ConjClassId>, int>> groups;
  for (const auto& [m, count] : by_order) {
    auto it = classes_by_order.find(m);
    if (it == classes_by_order.end()) return {};
    groups.push_back({it->second, count});
  }
  std::set<NuType> reps;
  NuType nu;
  std::function<void(std::size_t)> next_group = [&](std::size_t gi) {
    if (gi == groups.size()) {
      if (is_admissible(n, nu) && nu_realizable(n, g_prime, nu).realizable)
        reps.insert(nu_aut_orbit_min(n, nu));
      return;
    }
    const auto& [classes, total] = groups[gi];
    std::function<void(std::size_t, int)> place = [&](std::size_t ci, int rest) {
      if (ci + 1 == classes.size()) {
        if (rest > 0) nu[classes[ci]] = rest;
        next_group(gi + 1);
        if (rest > 0) nu.erase(classes[ci]);
        return;
      }
      for (int take = 0; take <= rest; ++take) {
        if (take > 0) nu[classes[ci]] = take;
        place(ci + 1, rest - take);
        if (take > 0) nu.erase(classes[ci]);
      }
    };
    place(0, total);
  };
  next_group(0);
  return reps;
}

inline void add_flag(ComponentRecord& rec, const std::string& flag) {
  for (const auto& f : rec.flags)
    if (f == flag) return;
  rec.flags.push_back(flag);
}

}  // namespace detail

// Records of a single primary type, before cross-type flags and recounts.
inline std::vector<ComponentRecord> components_for_type(int n, const PrimaryNumericalType& t,
                                                        const CatalogOptions& opt = {}) {
  std::vector<ComponentRecord> records;
  for (const auto& nu : detail::realizable_nu_orbits(n, t.g_prime, t.orders)) {
    ComponentRecord rec;
    rec.type = t;
    rec.nu = nu;
    rec.dimension = 3 * (t.g_prime - 1) + t.d;

    // Representative and multiplicity by bounded search.  A single epsilon
    // class exists unless the relative lift group has order two; in that
    // case the distinct invariant values (at most two) are counted.
    const int fiber = h2_sigma_order(n, sigma_set(nu));
    EnumerateOptions eopt;
    eopt.budget = opt.enumerate_budget;
    eopt.nu_filter = &rec.nu;
    std::set<CanonicalForm> forms;
    bool have_rep = false, budget_hit = false;
    try {
      enumerate_hs(n, t.g_prime, t.d,
                   [&](const HurwitzVector& v) {
                     if (!have_rep) {
                       rec.representative = v;
                       have_rep = true;
                     }
                     if (fiber == 1) return false;
                     forms.insert(canonical_invariant(v, opt.orbit_budget));
                     return forms.size() < 2;
                   },
                   eopt);
    } catch (const BudgetExceeded&) {
      budget_hit = true;
    }
    if (!have_rep) {
      if (budget_hit)
        throw BudgetExceeded("component search budget exhausted before a representative was found");
      throw std::logic_error("nu deemed realizable but no Hurwitz system was found");
    }
    rec.epsilon_multiplicity = fiber == 1 ? 1 : static_cast<int>(forms.size());
    if (budget_hit) detail::add_flag(rec, "unverified");

    const auto check = is_hurwitz_system(rec.representative);
    if (!check.ok || nu_type(rec.representative) != rec.nu || nu_orders(n, rec.nu) != t.orders)
      throw std::logic_error("catalog representative failed validation");
    records.push_back(std::move(rec));
  }
  return records;
}

// Advisory coincidence flags: the one proven pattern where two distinct
// records can cut out the same locus pairs a genus-one record branched over
// a single class of order n/2 with a genus-zero record of orders
// (2, 2, n, n).  Both land in genus n - 1 automatically.
inline void attach_coincidence_flags(int n, std::vector<ComponentRecord>& records) {
  if (n < 4 || n % 2 != 0) return;
  const std::vector<int> zero_side{2, 2, n, n}, one_side{n / 2};
  std::vector<std::size_t> zs, os;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rt = records[i].type;
    if (rt.g_prime == 0 && rt.d == 4 && rt.orders == zero_side) zs.push_back(i);
    if (rt.g_prime == 1 && rt.d == 1 && rt.orders == one_side) os.push_back(i);
  }
  if (zs.empty() || os.empty()) return;
  for (auto i : zs) detail::add_flag(records[i], "possible_coincidence");
  for (auto i : os) detail::add_flag(records[i], "possible_coincidence");
}

// Recount every multiplicity by a full orbit partition of the shape and
// fail loudly on disagreement.  Orbits whose orders belong to a different
// total genus are skipped; orbits matching a catalog type must appear.
inline void oracle_recount(int n, std::vector<ComponentRecord>& records,
                           const CatalogOptions& opt = {}) {
  std::map<std::pair<int, int>, std::vector<std::size_t>> by_shape;
  for (std::size_t i = 0; i < records.size(); ++i)
    by_shape[{records[i].type.g_prime, records[i].type.d}].push_back(i);
  for (const auto& [shape, idxs] : by_shape) {
    const auto [gp, d] = shape;
    std::vector<std::uint64_t> states;
    bool feasible = d + 2 * gp <= 8 && 2 * n <= 256;
    if (feasible) {
      try {
        EnumerateOptions eopt;
        eopt.budget = opt.enumerate_budget;
        states = enumerate_hs_packed(n, gp, d, eopt);
      } catch (const BudgetExceeded&) {
        feasible = false;
      }
    }
    if (feasible && static_cast<long long>(states.size()) > opt.orbit_budget)
      feasible = false;
    if (!feasible) {
      for (auto i : idxs) detail::add_flag(records[i], "unverified");
      continue;
    }
    const auto part = partition_orbits(n, gp, d, std::move(states), /*mod_aut=*/true);
    const auto codec = VectorCodec::for_shape(n, gp, d);
    std::map<NuType, int> orbit_counts;
    for (int oi = 0; oi < part.orbit_count; ++oi)
      orbit_counts[nu_aut_orbit_min(n, nu_type(codec.unpack(part.canonical[oi])))]++;

    std::set<NuType> listed;
    std::set<std::vector<int>> type_orders;
    for (auto i : idxs) {
      auto& rec = records[i];
      listed.insert(rec.nu);
      type_orders.insert(rec.type.orders);
      auto it = orbit_counts.find(rec.nu);
      if (it == orbit_counts.end())
        throw std::runtime_error("oracle recount found no orbit for nu " + to_string(rec.nu));
      const bool unverified =
          std::find(rec.flags.begin(), rec.flags.end(), "unverified") != rec.flags.end();
      if (unverified) {
        rec.epsilon_multiplicity = it->second;  // search was cut short; BFS is authoritative
        rec.flags.erase(std::remove(rec.flags.begin(), rec.flags.end(), "unverified"),
                        rec.flags.end());
      } else if (it->second != rec.epsilon_multiplicity) {
        throw std::runtime_error(
            "oracle recount disagrees for nu " + to_string(rec.nu) + ": search found " +
            std::to_string(rec.epsilon_multiplicity) + ", orbit partition found " +
            std::to_string(it->second));
      }
    }
    for (const auto& [nu, cnt] : orbit_counts) {
      if (!type_orders.count(nu_orders(n, nu))) continue;  // different genus
      if (!listed.count(nu))
        throw std::runtime_error("oracle recount found an unlisted nu " + to_string(nu));
    }
  }
}

inline std::vector<ComponentRecord> components(int n, int g, const CatalogOptions& opt = {}) {
  const auto types = primary_types(n, g);
  std::vector<ComponentRecord> records;
  for (const auto& t : types)
    for (auto& rec : components_for_type(n, t, opt)) records.push_back(std::move(rec));
  attach_coincidence_flags(n, records);
  if (opt.oracle) oracle_recount(n, records, opt);
  return records;
}

// ---------------------------------------------------------------------------
// Catalog serialization: {n, g, components: [...]} with stable field order,
// written atomically via a rename.

inline nlohmann::ordered_json catalog_json(int n, int g,
                                           const std::vector<ComponentRecord>& records) {
  nlohmann::ordered_json top;
  top["n"] = n;
  top["g"] = g;
  auto list = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json c;
    c["g_prime"] = r.type.g_prime;
    c["d"] = r.type.d;
    c["orders"] = r.type.orders;
    c["nu"] = to_string(r.nu);
    c["epsilon_multiplicity"] = r.epsilon_multiplicity;
    c["dimension"] = r.dimension;
    c["representative"] = to_string(r.representative);
    c["flags"] = r.flags;
    list.push_back(std::move(c));
  }
  top["components"] = std::move(list);
  return top;
}

inline void write_catalog_file(const std::string& path, const nlohmann::ordered_json& doc) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << doc.dump(2) << "\n";
  }
  fs::rename(tmp, target);
}

// ---------------------------------------------------------------------------
// Explicit multiplication tables for the auxiliary groups of the coincidence
// analysis: direct products D_n x C_2, the double dihedral group D_{2n}, and
// one twisted product.  Elements are dense integer codes.

struct SmallGroup {
  int order = 1;
  std::vector<int> table;  // row-major order x order
  int identity = 0;

  int mul(int a, int b) const {
    return table[static_cast<std::size_t>(a) * static_cast<std::size_t>(order) + b];
  }
  int inv(int a) const {
    for (int b = 0; b < order; ++b)
      if (mul(a, b) == identity) return b;
    throw std::logic_error("element without inverse");
  }
  int conj(int a, int b) const { return mul(mul(a, b), inv(a)); }  // a b a^{-1}
  int element_order(int a) const {
    int acc = a, k = 1;
    while (acc != identity) {
      acc = mul(acc, a);
      ++k;
    }
    return k;
  }
  std::vector<int> closure(const std::vector<int>& gens) const {
    std::vector<char> seen(static_cast<std::size_t>(order), 0);
    std::vector<int> stack{identity}, out;
    seen[static_cast<std::size_t>(identity)] = 1;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      out.push_back(a);
      for (int s : gens)
        for (int next : {mul(a, s), mul(a, inv(s))})
          if (!seen[static_cast<std::size_t>(next)]) {
            seen[static_cast<std::size_t>(next)] = 1;
            stack.push_back(next);
          }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

template <class Mul>
inline SmallGroup make_table_group(int order, Mul&& mul_fn) {
  if (order < 1) throw std::invalid_argument("group order must be positive");
  SmallGroup g;
  g.order = order;
  g.table.resize(static_cast<std::size_t>(order) * static_cast<std::size_t>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const int p = mul_fn(a, b);
      if (p < 0 || p >= order) throw std::logic_error("multiplication left the element range");
      g.table[static_cast<std::size_t>(a) * static_cast<std::size_t>(order) + b] = p;
    }
  int id = -1;
  for (int e = 0; e < order && id < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < order && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
    if (ok) id = e;
  }
  if (id < 0) throw std::logic_error("multiplication table has no identity");
  g.identity = id;
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw std::logic_error("multiplication table is not associative");
  for (int a = 0; a < order; ++a) g.inv(a);  // throws when an inverse is missing
  return g;
}

namespace detail {

// D_n x C_2 (and its twisted variant) use codes t * 2n + element key.
inline int dp_code(int n, const DihedralElement& e, int t) { return t * 2 * n + e.key(); }
inline DihedralElement dp_dn(int n, int code) {
  const int k = code % (2 * n);
  return dn_make(n, k / 2, k % 2);
}
inline int dp_bit(int n, int code) { return code / (2 * n); }

inline SmallGroup direct_product_group(int n) {
  return make_table_group(4 * n, [n](int a, int b) {
    return dp_code(n, dn_mul(dp_dn(n, a), dp_dn(n, b)), (dp_bit(n, a) + dp_bit(n, b)) % 2);
  });
}

inline SmallGroup double_dihedral_group(int n) {
  return make_table_group(4 * n, [n](int a, int b) {
    return dn_mul(dn_make(2 * n, a / 2, a % 2), dn_make(2 * n, b / 2, b % 2)).key();
  });
}

inline SmallGroup twisted_product_group(int n, const DihedralAut& f) {
  return make_table_group(4 * n, [n, f](int a, int b) {
    auto right = dp_dn(n, b);
    if (dp_bit(n, a) == 1) right = f.apply(right);
    return dp_code(n, dn_mul(dp_dn(n, a), right), (dp_bit(n, a) + dp_bit(n, b)) % 2);
  });
}

// |sub| = 2m with r of order m inverted by an involution outside <r>.
inline bool subgroup_is_dihedral(const SmallGroup& g, const std::vector<int>& sub, int m) {
  if (static_cast<int>(sub.size()) != 2 * m) return false;
  for (int r : sub) {
    if (g.element_order(r) != m) continue;
    std::set<int> cyc;
    int acc = g.identity;
    do {
      cyc.insert(acc);
      acc = g.mul(acc, r);
    } while (acc != g.identity);
    for (int s : sub) {
      if (cyc.count(s) || g.mul(s, s) != g.identity) continue;
      if (g.conj(s, r) == g.inv(r)) return true;
    }
  }
  return false;
}

}  // namespace detail

// One verified group supporting two dihedral subgroups over a shared core.
struct GroupConstruction {
  std::string kind;  // split_direct_product | double_dihedral | semidirect_twist
  int n = 0;
  int group_order = 0;
  bool split = false;  // whether K -> G -> (Z/2)^2 admits a complement
  bool ok = false;
  std::vector<std::string> verified;
  std::string failure;
};

namespace detail {

// Core verification: H, H' dihedral of order 2n inside G of order 4n, meeting
// in a normal core K of index two, Klein quotient, involutions gamma_1 and
// gamma_2 generating H and H' over K, and the expected splitting behaviour.
inline bool verify_dd(GroupConstruction& rec, const SmallGroup& g, const std::vector<int>& h,
                      const std::vector<int>& hp, int gamma1, int gamma2) {
  const int n = rec.n;
  auto fail = [&rec](const std::string& name) {
    rec.failure = name;
    return false;
  };
  auto pass = [&rec](const std::string& name) { rec.verified.push_back(name); };

  if (g.order != 4 * n) return fail("group_order_4n");
  pass("group_order_4n");
  if (!subgroup_is_dihedral(g, h, n)) return fail("H_is_dihedral");
  pass("H_is_dihedral");
  if (!subgroup_is_dihedral(g, hp, n)) return fail("Hprime_is_dihedral");
  pass("Hprime_is_dihedral");
  if (h == hp) return fail("subgroups_distinct");
  pass("subgroups_distinct");

  std::vector<int> k;
  std::set_intersection(h.begin(), h.end(), hp.begin(), hp.end(), std::back_inserter(k));
  if (static_cast<int>(k.size()) != n) return fail("core_has_index_two");
  pass("core_has_index_two");
  const std::set<int> kset(k.begin(), k.end());
  for (int a = 0; a < g.order; ++a)
    for (int e : k)
      if (!kset.count(g.conj(a, e))) return fail("core_normal_in_G");
  pass("core_normal_in_G");
  for (int a = 0; a < g.order; ++a)
    if (!kset.count(g.mul(a, a))) return fail("quotient_is_klein_four");
  pass("quotient_is_klein_four");

  const auto in = [](const std::vector<int>& sorted, int e) {
    return std::binary_search(sorted.begin(), sorted.end(), e);
  };
  if (g.mul(gamma1, gamma1) != g.identity || g.mul(gamma2, gamma2) != g.identity)
    return fail("gamma_squares_trivial");
  pass("gamma_squares_trivial");
  auto k1 = k, k2 = k;
  k1.push_back(gamma1);
  k2.push_back(gamma2);
  if (!in(h, gamma1) || kset.count(gamma1) || g.closure(k1) != h)
    return fail("gamma1_generates_H_over_core");
  pass("gamma1_generates_H_over_core");
  if (!in(hp, gamma2) || kset.count(gamma2) || g.closure(k2) != hp)
    return fail("gamma2_generates_Hprime_over_core");
  pass("gamma2_generates_Hprime_over_core");
  if (kset.count(g.mul(gamma1, gamma2))) return fail("gamma_images_generate_quotient");
  pass("gamma_images_generate_quotient");

  // A complement is a Klein subgroup meeting K trivially.
  bool complement = false;
  for (int u = 0; u < g.order && !complement; ++u) {
    if (u == g.identity || g.mul(u, u) != g.identity || kset.count(u)) continue;
    for (int v = u + 1; v < g.order && !complement; ++v) {
      if (v == g.identity || g.mul(v, v) != g.identity || kset.count(v)) continue;
      const int uv = g.mul(u, v);
      if (uv != g.mul(v, u) || kset.count(uv)) continue;
      complement = true;
    }
  }
  if (complement != rec.split)
    return fail(rec.split ? "sequence_splits" : "sequence_does_not_split");
  pass(rec.split ? "sequence_splits" : "sequence_does_not_split");
  return true;
}

}  // namespace detail

inline std::vector<GroupConstruction> dd_constructions(int n) {
  if (n < 3) throw std::invalid_argument("constructions need n >= 3");
  std::vector<GroupConstruction> out;

  {
    // Split case: G = D_n x C_2 with H' the graph of the reflection-parity
    // homomorphism (kernel = rotations).
    GroupConstruction rec{"split_direct_product", n, 4 * n, /*split=*/true, false, {}, {}};
    const auto g = detail::direct_product_group(n);
    const auto h = g.closure({detail::dp_code(n, dn_x(n), 0), detail::dp_code(n, dn_y(n), 0)});
    const auto hp = g.closure({detail::dp_code(n, dn_x(n), 0), detail::dp_code(n, dn_y(n), 1)});
    rec.ok = detail::verify_dd(rec, g, h, hp, detail::dp_code(n, dn_y(n), 0),
                               detail::dp_code(n, dn_y(n), 1));
    if (rec.ok) {
      bool graph = true;
      std::vector<char> seen(static_cast<std::size_t>(2 * n), 0);
      for (int e : hp) {
        const int slot = e % (2 * n);
        if (seen[static_cast<std::size_t>(slot)]) graph = false;
        seen[static_cast<std::size_t>(slot)] = 1;
        if (detail::dp_bit(n, e) != slot % 2) graph = false;  // parity of the D_n part
      }
      if (graph) {
        rec.verified.push_back("Hprime_graph_of_homomorphism");
      } else {
        rec.ok = false;
        rec.failure = "Hprime_graph_of_homomorphism";
      }
    }
    out.push_back(std::move(rec));
  }

  if (n % 2 == 0) {
    // Non-split case: D_{2n} contains two copies of D_n sharing the even
    // rotations.
    GroupConstruction rec{"double_dihedral", n, 4 * n, /*split=*/false, false, {}, {}};
    const auto g = detail::double_dihedral_group(n);
    const int x2 = dn_make(2 * n, 2, 0).key();
    const int y = dn_make(2 * n, 0, 1).key();
    const int xy = dn_make(2 * n, 1, 1).key();
    rec.ok = detail::verify_dd(rec, g, g.closure({x2, y}), g.closure({x2, xy}), y, xy);
    out.push_back(std::move(rec));
  }

  if (n % 4 == 0 && (n / 4) % 2 == 1) {
    // Non-split case for n = 4h, h odd: twist D_n by the order-two
    // automorphism x -> x^{2h-1}, y -> y x^2.
    GroupConstruction rec{"semidirect_twist", n, 4 * n, /*split=*/false, false, {}, {}};
    const int h = n / 4;
    const auto f = dn_aut_from_params(n, mod(2 * h - 1, n), mod(-2, n));
    bool involutive = !(f == dn_aut_identity(n));
    for (const auto& e : dn_all_elements(n))
      involutive = involutive && f.apply(f.apply(e)) == e;
    if (!involutive) {
      rec.failure = "twist_is_order_two_automorphism";
      out.push_back(std::move(rec));
      return out;
    }
    rec.verified.push_back("twist_is_order_two_automorphism");
    const auto g = detail::twisted_product_group(n, f);
    const auto hsub =
        g.closure({detail::dp_code(n, dn_x(n), 0), detail::dp_code(n, dn_y(n), 0)});
    const auto hprime =
        g.closure({detail::dp_code(n, dn_make(n, 2, 0), 0), detail::dp_code(n, dn_y(n), 0),
                   detail::dp_code(n, dn_identity(n), 1)});
    rec.ok = detail::verify_dd(rec, g, hsub, hprime,
                               detail::dp_code(n, dn_mul(dn_x(n), dn_y(n)), 0),
                               detail::dp_code(n, dn_identity(n), 1));
    out.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coincidence verifications.

struct CoincidenceReport {
  int delta = 1;         // dimension of the shared locus
  std::string case_tag;  // I / II / III-a / III-b / III-c (or a pair of tags)
  bool ok = false;
  std::vector<std::string> verified;
  std::string failure;
};

// The two genus-zero Hurwitz systems (y x^{h-1}, x, y x^{h+1}, x^{-1}) and
// (x, y, x, y) describe the same dihedral locus: their nu-types agree up to an
// automorphism and a breadth-first search joins them.
inline CoincidenceReport coincidence_check_pair(int n, int h) {
  if (n < 3) throw std::invalid_argument("need n >= 3");
  const bool valid_h = n % 2 == 1 ? h == 0 : (h == 0 || h == n / 2);
  if (!valid_h)
    throw std::invalid_argument("h must be 0 (n odd) or one of {0, n/2} (n even)");
  CoincidenceReport rep;
  rep.delta = 1;
  rep.case_tag = "III-b";
  auto fail = [&rep](const std::string& name) {
    rep.failure = name;
    return rep;
  };

  const auto x = dn_x(n), y = dn_y(n);
  const auto v1 = make_vector(
      n, {dn_mul(y, dn_pow(x, h - 1)), x, dn_mul(y, dn_pow(x, h + 1)), dn_inverse(x)}, {});
  const auto v2 = make_vector(n, {x, y, x, y}, {});
  if (!is_hurwitz_system(v1).ok) return fail("first_tuple_is_hurwitz_system");
  rep.verified.push_back("first_tuple_is_hurwitz_system");
  if (!is_hurwitz_system(v2).ok) return fail("second_tuple_is_hurwitz_system");
  rep.verified.push_back("second_tuple_is_hurwitz_system");

  bool related = false;
  const auto nu1 = nu_type(v1), nu2 = nu_type(v2);
  for (const auto& f : dn_automorphisms(n)) related = related || aut_image_nu(f, nu1) == nu2;
  if (!related) return fail("nu_types_aut_related");
  rep.verified.push_back("nu_types_aut_related");

  OrbitOptions oopt;
  oopt.mod_aut = true;
  if (!(orbit(v1, oopt).canonical == orbit(v2, oopt).canonical))
    return fail("connected_by_moves_and_aut");
  rep.verified.push_back("connected_by_moves_and_aut");
  rep.ok = true;
  return rep;
}

// The exceptional pattern: inside G = D_n x C_2 (n = 2 d4) the four-tuple
// ((e,1), (yx,1), (y,0), (x,0)) of orders (2, 2, 2, 2 d4) induces a genus-one
// system on one index-two dihedral subgroup and a genus-zero system on
// another, so two different numerical types share a one-dimensional locus.
inline CoincidenceReport coincidence_exception_example(int d4) {
  if (d4 < 2) throw std::invalid_argument("need d4 >= 2");
  const int n = 2 * d4;
  CoincidenceReport rep;
  rep.delta = 1;
  rep.case_tag = "III-a/III-b";
  auto fail = [&rep](const std::string& name) {
    rep.failure = name;
    return rep;
  };

  const auto g = detail::direct_product_group(n);
  const auto code = [n](const DihedralElement& e, int t) { return detail::dp_code(n, e, t); };
  const auto x = dn_x(n), y = dn_y(n);
  const int g1 = code(dn_identity(n), 1);
  const int g2 = code(dn_mul(y, x), 1);
  const int g3 = code(y, 0);
  const int g4 = code(x, 0);

  if (g.element_order(g1) != 2 || g.element_order(g2) != 2 || g.element_order(g3) != 2 ||
      g.element_order(g4) != 2 * d4)
    return fail("orders_2_2_2_2d");
  rep.verified.push_back("orders_2_2_2_2d");
  if (g.mul(g.mul(g1, g2), g.mul(g3, g4)) != g.identity) return fail("product_trivial");
  rep.verified.push_back("product_trivial");
  if (static_cast<int>(g.closure({g1, g2, g3, g4}).size()) != 4 * n)
    return fail("generates_direct_product");
  rep.verified.push_back("generates_direct_product");

  // Genus-one side: a = g1 g2, b = g2 g3, c = (g1 g4 g1)^2.
  const int a = g.mul(g1, g2), b = g.mul(g2, g3);
  const int g141 = g.mul(g.mul(g1, g4), g1);
  const int c = g.mul(g141, g141);
  if (a != code(dn_mul(y, x), 0) || b != code(dn_inverse(x), 1) ||
      c != code(dn_pow(x, 2), 0))
    return fail("genus_one_images");
  rep.verified.push_back("genus_one_images");
  if (g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))) != c) return fail("commutator_identity");
  rep.verified.push_back("commutator_identity");

  // Genus-zero side: (g3, g4, g1 g3 g1, g1 g4 g1).
  const int g3p = g.mul(g.mul(g1, g3), g1);
  const int g4p = g141;
  if (g3p != code(y, 0) || g4p != code(x, 0)) return fail("genus_zero_images");
  rep.verified.push_back("genus_zero_images");
  if (g.mul(g.mul(g3, g4), g.mul(g3p, g4p)) != g.identity)
    return fail("genus_zero_product_trivial");
  rep.verified.push_back("genus_zero_product_trivial");
  const auto hprime = g.closure({g3, g4, g3p, g4p});
  bool dn_copy = static_cast<int>(hprime.size()) == 2 * n;
  for (int e : hprime) dn_copy = dn_copy && detail::dp_bit(n, e) == 0;
  if (!dn_copy) return fail("genus_zero_generates_dn");
  rep.verified.push_back("genus_zero_generates_dn");

  std::set<int> proj;
  for (int e : g.closure({a, b})) proj.insert(e % (2 * n));
  if (static_cast<int>(proj.size()) != 2 * n) return fail("genus_one_projects_onto_dn");
  rep.verified.push_back("genus_one_projects_onto_dn");
  rep.ok = true;
  return rep;
}

// The two D_2 checks eliminating a two-dimensional shared locus: the would-be
// distinct genus-one systems are joined by moves alone in one arrangement and
// by an automorphism in the other.
inline CoincidenceReport d2_equivalence_checks() {
  CoincidenceReport rep;
  rep.delta = 2;
  rep.case_tag = "II";
  auto fail = [&rep](const std::string& name) {
    rep.failure = name;
    return rep;
  };

  const auto x = dn_x(2), y = dn_y(2), e = dn_identity(2);
  const auto yx = dn_mul(y, x);
  const auto va = make_vector(2, {y, y}, {yx, e});
  const auto vb = make_vector(2, {y, y}, {x, x});
  const auto vc = make_vector(2, {yx, yx}, {x, e});
  if (!is_hurwitz_system(va).ok || !is_hurwitz_system(vb).ok || !is_hurwitz_system(vc).ok)
    return fail("tuples_are_hurwitz_systems");
  rep.verified.push_back("tuples_are_hurwitz_systems");

  OrbitOptions raw;
  if (!(orbit(va, raw).canonical == orbit(vb, raw).canonical))
    return fail("first_pair_equivalent_under_moves");
  rep.verified.push_back("first_pair_equivalent_under_moves");

  if (nu_type(va) == nu_type(vc)) return fail("second_pair_nu_differs");
  rep.verified.push_back("second_pair_nu_differs");
  OrbitOptions aut;
  aut.mod_aut = true;
  if (!(orbit(va, aut).canonical == orbit(vc, aut).canonical))
    return fail("second_pair_equivalent_under_aut");
  rep.verified.push_back("second_pair_equivalent_under_aut");
  rep.ok = true;
  return rep;
}

}  // namespace dncover
