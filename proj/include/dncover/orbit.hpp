#pragma once

// Breadth-first orbit enumeration: the independent oracle against which the
// closed-form classification is checked.  States are Hurwitz vectors packed
// into 64-bit keys (one byte per slot, first slot in the highest byte, so
// unsigned comparison of keys is the lexicographic order on vectors).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <unordered_set>
#include <unordered_map>

#include "json.hpp"

#include "dncover/moves.hpp"

namespace dncover {

struct VectorCodec {
  int n = 1, d = 0, g_prime = 0;

  int total() const { return d + 2 * g_prime; }

  static VectorCodec for_shape(int n, int g_prime, int d) {
    VectorCodec c{n, d, g_prime};
    if (c.total() > 8)
      throw std::invalid_argument("orbit state has more than 8 slots; not supported");
    if (2 * n > 256) throw std::invalid_argument("group too large for packed orbit states");
    return c;
  }

  static VectorCodec for_vector(const HurwitzVector& v) {
    return for_shape(v.n, v.genus(), v.d());
  }

  std::uint64_t pack(const HurwitzVector& v) const {
    std::uint64_t key = 0;
    int slot = 0;
    for (const auto& e : v.c) key |= static_cast<std::uint64_t>(e.key()) << (8 * (7 - slot++));
    for (const auto& e : v.ab) key |= static_cast<std::uint64_t>(e.key()) << (8 * (7 - slot++));
    return key;
  }

  HurwitzVector unpack(std::uint64_t key) const {
    HurwitzVector v;
    v.n = n;
    v.c.reserve(static_cast<std::size_t>(d));
    v.ab.reserve(static_cast<std::size_t>(2 * g_prime));
    for (int slot = 0; slot < total(); ++slot) {
      int ek = static_cast<int>(key >> (8 * (7 - slot)) & 0xFF);
      auto e = dn_make(n, ek / 2, ek % 2);
      if (slot < d) v.c.push_back(e);
      else v.ab.push_back(e);
    }
    return v;
  }
};

// Byte-level lookup tables: automorphisms and global conjugations act
// slotwise on element keys.
inline std::vector<std::array<std::uint8_t, 256>> aut_key_tables(int n) {
  std::vector<std::array<std::uint8_t, 256>> tables;
  for (const auto& f : dn_automorphisms(n)) {
    std::array<std::uint8_t, 256> t{};
    for (int key = 0; key < 2 * n; ++key)
      t[static_cast<std::size_t>(key)] =
          static_cast<std::uint8_t>(f.apply(dn_make(n, key / 2, key % 2)).key());
    tables.push_back(t);
  }
  return tables;
}

inline std::uint64_t map_key_bytes(std::uint64_t key, const std::array<std::uint8_t, 256>& t,
                                   int total) {
  std::uint64_t out = 0;
  for (int slot = 0; slot < total; ++slot) {
    auto byte = static_cast<std::size_t>(key >> (8 * (7 - slot)) & 0xFF);
    out |= static_cast<std::uint64_t>(t[byte]) << (8 * (7 - slot));
  }
  return out;
}

struct OrbitOptions {
  bool mod_aut = false;
  long long max_states = 10'000'000;
  std::string cache_dir;  // empty: caching disabled
};

struct OrbitReport {
  HurwitzVector seed;
  HurwitzVector canonical;  // lexicographically least member
  long long size = 0;
  int diameter = 0;  // BFS eccentricity of the seed
  bool mod_aut = false;
  bool from_cache = false;
};

namespace detail {

inline std::string orbit_cache_path(const OrbitOptions& opt, int n, int g_prime, int d) {
  return opt.cache_dir + "/orbits_n" + std::to_string(n) + "_g" + std::to_string(g_prime) +
         "_d" + std::to_string(d) + "_" + std::to_string(move_set_hash(n, g_prime, d)) +
         (opt.mod_aut ? "_aut" : "_raw") + ".jsonl";
}

}  // namespace detail

inline OrbitReport orbit(const HurwitzVector& seed, const OrbitOptions& opt = {}) {
  auto chk = is_hurwitz_system(seed);
  if (!chk.ok) throw std::invalid_argument("orbit seed is not a Hurwitz system: " + chk.reason);
  const auto codec = VectorCodec::for_vector(seed);
  const int n = seed.n, gp = seed.genus(), d = seed.d();

  if (!opt.cache_dir.empty()) {
    std::ifstream in(detail::orbit_cache_path(opt, n, gp, d));
    std::string line;
    const std::string seed_str = to_string(seed);
    while (in && std::getline(in, line)) {
      if (line.empty()) continue;
      auto rec = nlohmann::json::parse(line);
      if (rec.at("canonical").get<std::string>() == seed_str) {
        OrbitReport report;
        report.seed = seed;
        report.canonical = seed;
        report.size = rec.at("size").get<long long>();
        report.diameter = rec.at("diameter").get<int>();
        report.mod_aut = opt.mod_aut;
        report.from_cache = true;
        return report;
      }
    }
  }

  const auto moves = move_set(n, gp, d);
  std::vector<std::array<std::uint8_t, 256>> auts;
  if (opt.mod_aut) auts = aut_key_tables(n);

  std::unordered_set<std::uint64_t> visited;
  std::vector<std::uint64_t> frontier{codec.pack(seed)};
  visited.insert(frontier[0]);
  std::uint64_t min_key = frontier[0];
  int depth = 0;

  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t key : frontier) {
      const HurwitzVector v = codec.unpack(key);
      auto push = [&](std::uint64_t t) {
        if (visited.insert(t).second) {
          if (static_cast<long long>(visited.size()) > opt.max_states)
            throw BudgetExceeded("orbit exceeded the state budget of " +
                                 std::to_string(opt.max_states));
          next.push_back(t);
          min_key = std::min(min_key, t);
        }
      };
      for (const auto& m : moves) push(codec.pack(apply_move(v, m)));
      for (const auto& t : auts) push(map_key_bytes(key, t, codec.total()));
    }
    if (!next.empty()) ++depth;
    frontier = std::move(next);
  }

  OrbitReport report;
  report.seed = seed;
  report.canonical = codec.unpack(min_key);
  report.size = static_cast<long long>(visited.size());
  report.diameter = depth;
  report.mod_aut = opt.mod_aut;

  if (!opt.cache_dir.empty()) {
    std::filesystem::create_directories(opt.cache_dir);
    const auto path = detail::orbit_cache_path(opt, n, gp, d);
    const std::string canon_str = to_string(report.canonical);
    bool present = false;
    {
      std::ifstream in(path);
      std::string line;
      while (in && std::getline(in, line)) {
        if (line.empty()) continue;
        if (nlohmann::json::parse(line).at("canonical").get<std::string>() == canon_str)
          present = true;
      }
    }
    if (!present) {
      std::ofstream out(path, std::ios::app);
      nlohmann::json rec{{"canonical", canon_str},
                         {"size", report.size},
                         {"diameter", report.diameter}};
      out << rec.dump() << "\n";
    }
  }
  return report;
}

// Orbit partition of a full cell.  `states` must be the sorted packed keys of
// every Hurwitz system of the shape; moves never leave that set, so lookups
// are binary searches.
struct OrbitPartition {
  std::vector<std::uint64_t> states;   // sorted
  std::vector<std::int32_t> orbit_of;  // state index -> orbit id
  std::vector<std::uint64_t> canonical;  // orbit id -> least member
  std::vector<long long> size;           // orbit id -> cardinality
  int orbit_count = 0;
};

inline OrbitPartition partition_orbits(int n, int g_prime, int d,
                                       std::vector<std::uint64_t> states, bool mod_aut) {
  const auto codec = VectorCodec::for_shape(n, g_prime, d);
  std::sort(states.begin(), states.end());
  OrbitPartition part;
  part.orbit_of.assign(states.size(), -1);

  const auto moves = move_set(n, g_prime, d);
  std::vector<std::array<std::uint8_t, 256>> auts;
  if (mod_aut) auts = aut_key_tables(n);

  auto index_of = [&states](std::uint64_t key) -> std::size_t {
    auto it = std::lower_bound(states.begin(), states.end(), key);
    if (it == states.end() || *it != key)
      throw std::logic_error("a move left the enumerated state set");
    return static_cast<std::size_t>(it - states.begin());
  };

  std::vector<std::uint64_t> stack;
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (part.orbit_of[s] != -1) continue;
    const int id = part.orbit_count++;
    std::uint64_t min_key = states[s];
    long long count = 0;
    part.orbit_of[s] = id;
    stack.push_back(states[s]);
    while (!stack.empty()) {
      std::uint64_t key = stack.back();
      stack.pop_back();
      ++count;
      min_key = std::min(min_key, key);
      const HurwitzVector v = codec.unpack(key);
      auto push = [&](std::uint64_t t) {
        std::size_t idx = index_of(t);
        if (part.orbit_of[idx] == -1) {
          part.orbit_of[idx] = id;
          stack.push_back(t);
        }
      };
      for (const auto& m : moves) push(codec.pack(apply_move(v, m)));
      for (const auto& t : auts) push(map_key_bytes(key, t, codec.total()));
    }
    part.canonical.push_back(min_key);
    part.size.push_back(count);
  }
  part.states = std::move(states);
  return part;
}

// Packed keys of every Hurwitz system of a shape, sorted.
inline std::vector<std::uint64_t> enumerate_hs_packed(int n, int g_prime, int d,
                                                      const EnumerateOptions& opt = {}) {
  const auto codec = VectorCodec::for_shape(n, g_prime, d);
  std::vector<std::uint64_t> states;
  enumerate_hs(n, g_prime, d,
               [&](const HurwitzVector& v) {
                 states.push_back(codec.pack(v));
                 return true;
               },
               opt);
  return states;  // lexicographic enumeration => already sorted
}

}  // namespace dncover
