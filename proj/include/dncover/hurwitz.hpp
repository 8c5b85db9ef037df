#pragma once

// Hurwitz vectors for dihedral covers: tuples
//   v = (c_1, ..., c_d; a_1, b_1, ..., a_{g'}, b_{g'})
// over D_n subject to the usual three conditions (no trivial branch entry,
// entries generate the whole group, total evaluation is the identity).

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dncover/dihedral.hpp"

namespace dncover {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HurwitzVector {
  int n = 1;
  std::vector<DihedralElement> c;   // branch entries
  std::vector<DihedralElement> ab;  // a_1, b_1, ..., a_{g'}, b_{g'}

  int d() const { return static_cast<int>(c.size()); }
  int genus() const { return static_cast<int>(ab.size()) / 2; }  // quotient genus g'

  friend bool operator==(const HurwitzVector&, const HurwitzVector&) = default;
  friend bool operator<(const HurwitzVector& v, const HurwitzVector& w) {
    for (std::size_t i = 0; i < v.c.size() && i < w.c.size(); ++i)
      if (!(v.c[i] == w.c[i])) return v.c[i] < w.c[i];
    if (v.c.size() != w.c.size()) return v.c.size() < w.c.size();
    for (std::size_t i = 0; i < v.ab.size() && i < w.ab.size(); ++i)
      if (!(v.ab[i] == w.ab[i])) return v.ab[i] < w.ab[i];
    return v.ab.size() < w.ab.size();
  }
};

inline HurwitzVector make_vector(int n, std::vector<DihedralElement> c,
                                 std::vector<DihedralElement> ab) {
  if (ab.size() % 2 != 0) throw std::invalid_argument("handle list must have even length");
  for (const auto& g : c)
    if (g.n != n) throw std::invalid_argument("branch entry from wrong group");
  for (const auto& g : ab)
    if (g.n != n) throw std::invalid_argument("handle entry from wrong group");
  return HurwitzVector{n, std::move(c), std::move(ab)};
}

inline DihedralElement evaluate(const HurwitzVector& v) {
  DihedralElement acc = dn_identity(v.n);
  for (const auto& g : v.c) acc = dn_mul(acc, g);
  for (std::size_t i = 0; i + 1 < v.ab.size(); i += 2)
    acc = dn_mul(acc, dn_commutator(v.ab[i], v.ab[i + 1]));
  return acc;
}

// Incremental "generates all of D_n" state: the subgroup generated by a set
// of dihedral elements is determined by the gcd of its rotation content
// (rotation exponents and differences of reflection exponents) together with
// one reflection exponent if any reflection is present.
struct GenerationState {
  int n = 1;
  int rot_gcd = 0;        // gcd(n, ...) accumulated; 0 = nothing yet
  int refl_exp = -1;      // exponent of first reflection seen, -1 = none

  void add(const DihedralElement& g) {
    if (g.refl == 0) {
      if (g.rot != 0) rot_gcd = std::gcd(rot_gcd == 0 ? n : rot_gcd, g.rot);
    } else if (refl_exp < 0) {
      refl_exp = g.rot;
    } else {
      int diff = mod(g.rot - refl_exp, n);
      if (diff != 0) rot_gcd = std::gcd(rot_gcd == 0 ? n : rot_gcd, diff);
    }
  }
  bool full() const {
    return refl_exp >= 0 && (rot_gcd == 1 || n == 1);
  }
  int subgroup_order() const {
    int rotations = rot_gcd == 0 ? 1 : n / std::gcd(rot_gcd, n);
    return refl_exp >= 0 ? 2 * rotations : rotations;
  }
};

inline bool generates_full_group(const HurwitzVector& v) {
  GenerationState st{v.n};
  for (const auto& g : v.c) st.add(g);
  for (const auto& g : v.ab) st.add(g);
  return st.full();
}

struct HsCheck {
  bool ok = false;
  std::string reason;  // empty iff ok
};

inline HsCheck is_hurwitz_system(const HurwitzVector& v) {
  for (std::size_t i = 0; i < v.c.size(); ++i)
    if (dn_is_identity(v.c[i]))
      return {false, "branch entry " + std::to_string(i + 1) + " is the identity"};
  if (!generates_full_group(v)) return {false, "entries do not generate the full group"};
  auto ev = evaluate(v);
  if (!dn_is_identity(ev)) return {false, "evaluation is " + to_string(ev) + ", not the identity"};
  return {true, {}};
}

// ---------------------------------------------------------------------------
// Branching invariants.

using NuType = std::map<ConjClassId, int>;      // class -> multiplicity, no identity key
using SigmaSet = std::set<ConjClassId>;         // support of nu

inline NuType nu_type(const HurwitzVector& v) {
  NuType nu;
  for (const auto& g : v.c) {
    if (dn_is_identity(g)) throw std::invalid_argument("branch entry is the identity");
    nu[dn_conjugacy_class(g)]++;
  }
  return nu;
}

inline SigmaSet sigma_set(const NuType& nu) {
  SigmaSet s;
  for (const auto& [c, k] : nu)
    if (k > 0) s.insert(c);
  return s;
}

inline SigmaSet sigma_set(const HurwitzVector& v) { return sigma_set(nu_type(v)); }

inline int nu_total(const NuType& nu) {
  int d = 0;
  for (const auto& [c, k] : nu) d += k;
  return d;
}

// Image of a class in the abelianization: Z/2 for odd n ([x] = 0, [y] = 1),
// Z/2 x Z/2 for even n ([x] = (1,0), [y] = (0,1)).
inline std::pair<int, int> class_abelianized(int n, const ConjClassId& c) {
  switch (c.kind) {
    case ConjClassKind::Identity: return {0, 0};
    case ConjClassKind::Rotation: return {n % 2 == 0 ? c.param % 2 : 0, 0};
    case ConjClassKind::CentralRotation: return {(n / 2) % 2, 0};
    case ConjClassKind::ReflEven: return {0, 1};
    case ConjClassKind::ReflOdd: return {1, 1};
    case ConjClassKind::ReflAll: return {0, 1};
  }
  throw std::logic_error("bad class kind");
}

inline bool is_admissible(int n, const NuType& nu) {
  int c1 = 0, c2 = 0;
  for (const auto& [cls, k] : nu) {
    if (cls.kind == ConjClassKind::Identity)
      throw std::invalid_argument("nu assigns weight to the identity class");
    if (k < 0) throw std::invalid_argument("nu has a negative multiplicity");
    auto [a, b] = class_abelianized(n, cls);
    c1 += a * k;
    c2 += b * k;
  }
  return c1 % 2 == 0 && c2 % 2 == 0;
}

inline NuType aut_image_nu(const DihedralAut& f, const NuType& nu) {
  NuType out;
  for (const auto& [cls, k] : nu)
    if (k > 0) out[dn_aut_image_class(f, cls)] += k;
  return out;
}

// ---------------------------------------------------------------------------
// Genus bookkeeping: 2(g - 1) = |G| [2(g' - 1) + sum_i (1 - 1/m_i)], |G| = 2n.

inline bool dn_valid_element_order(int n, int m) {
  return m >= 2 && (n % m == 0 || m == 2);
}

inline int hurwitz_genus(int n, int g_prime, const std::vector<int>& orders) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  if (g_prime < 0) throw std::invalid_argument("quotient genus must be non-negative");
  for (int m : orders)
    if (!dn_valid_element_order(n, m))
      throw std::invalid_argument("branching order " + std::to_string(m) +
                                  " is not an element order of the group");
  // 2(g-1) = 4n(g'-1) + sum (2n - 2n/m); every term is an integer.
  long long rhs = 4LL * n * (g_prime - 1);
  for (int m : orders) rhs += 2LL * n - (2LL * n) / m;
  if (rhs % 2 != 0)
    throw std::invalid_argument("genus formula gives a non-integral genus");
  long long g = rhs / 2 + 1;
  if (g < 0) throw std::invalid_argument("genus formula gives a negative genus");
  return static_cast<int>(g);
}

// ---------------------------------------------------------------------------
// Enumeration of all Hurwitz systems of a given shape, in lexicographic slot
// order.  The visitor may return false to stop early.  `budget` caps the
// number of recursion nodes visited.

struct EnumerateOptions {
  long long budget = 100'000'000;
  const NuType* nu_filter = nullptr;  // optional: exact nu to match
};

namespace detail {

inline bool enumerate_rec(HurwitzVector& v, std::size_t slot, long long& nodes,
                          const EnumerateOptions& opt, NuType& partial,
                          const std::function<bool(const HurwitzVector&)>& visit) {
  const std::size_t d = v.c.size(), total = d + v.ab.size();
  if (++nodes > opt.budget)
    throw BudgetExceeded("enumeration budget of " + std::to_string(opt.budget) +
                         " nodes exceeded");
  if (slot == total) {
    if (!generates_full_group(v)) return true;
    if (!dn_is_identity(evaluate(v))) return true;
    return visit(v);
  }
  const int n = v.n;
  for (int key = 0; key < 2 * n; ++key) {
    DihedralElement g = dn_make(n, key / 2, key % 2);
    if (slot < d) {
      if (dn_is_identity(g)) continue;
      ConjClassId cls = dn_conjugacy_class(g);
      if (opt.nu_filter) {
        auto it = opt.nu_filter->find(cls);
        if (it == opt.nu_filter->end() || partial[cls] + 1 > it->second) continue;
      }
      partial[cls]++;
      v.c[slot] = g;
      bool go = enumerate_rec(v, slot + 1, nodes, opt, partial, visit);
      partial[cls]--;
      if (!go) return false;
    } else {
      v.ab[slot - d] = g;
      if (!enumerate_rec(v, slot + 1, nodes, opt, partial, visit)) return false;
    }
  }
  return true;
}

}  // namespace detail

inline void enumerate_hs(int n, int g_prime, int d,
                         const std::function<bool(const HurwitzVector&)>& visit,
                         const EnumerateOptions& opt = {}) {
  if (n < 2 || g_prime < 0 || d < 0) throw std::invalid_argument("bad enumeration shape");
  HurwitzVector v;
  v.n = n;
  v.c.assign(static_cast<std::size_t>(d), dn_identity(n));
  v.ab.assign(static_cast<std::size_t>(2 * g_prime), dn_identity(n));
  long long nodes = 0;
  NuType partial;
  detail::enumerate_rec(v, 0, nodes, opt, partial, visit);
}

inline std::vector<HurwitzVector> enumerate_hs(int n, int g_prime, int d,
                                               const EnumerateOptions& opt = {}) {
  std::vector<HurwitzVector> out;
  enumerate_hs(n, g_prime, d,
               [&out](const HurwitzVector& v) {
                 out.push_back(v);
                 return true;
               },
               opt);
  return out;
}

// ---------------------------------------------------------------------------
// Vector text grammar:  n=<int> g=<int> c=[<elem>,...] ab=[<elem>,...]
// where g is the quotient genus g'.

inline std::string to_string(const HurwitzVector& v) {
  std::ostringstream os;
  os << "n=" << v.n << " g=" << v.genus() << " c=[";
  for (std::size_t i = 0; i < v.c.size(); ++i) os << (i ? "," : "") << to_string(v.c[i]);
  os << "] ab=[";
  for (std::size_t i = 0; i < v.ab.size(); ++i) os << (i ? "," : "") << to_string(v.ab[i]);
  os << "]";
  return os.str();
}

namespace detail {

inline std::vector<std::string> split_list(const std::string& body, const std::string& raw) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : body) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  else if (!parts.empty())
    throw std::invalid_argument("trailing comma in '" + raw + "'");
  return parts;
}

}  // namespace detail

inline HurwitzVector parse_vector(const std::string& raw) {
  // Tokenize on whitespace outside brackets.
  std::vector<std::string> fields;
  std::string cur;
  int depth = 0;
  for (char ch : raw) {
    if (std::isspace(static_cast<unsigned char>(ch)) && depth == 0) {
      if (!cur.empty()) fields.push_back(cur);
      cur.clear();
      continue;
    }
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    cur.push_back(ch);
  }
  if (!cur.empty()) fields.push_back(cur);
  if (depth != 0) throw std::invalid_argument("unbalanced brackets in '" + raw + "'");
  if (fields.size() != 4) throw std::invalid_argument("expected 'n=.. g=.. c=[..] ab=[..]'");

  auto expect = [&raw](const std::string& field, const std::string& prefix) -> std::string {
    if (field.rfind(prefix, 0) != 0)
      throw std::invalid_argument("expected '" + prefix + "...' in '" + raw + "'");
    return field.substr(prefix.size());
  };
  auto parse_int = [](const std::string& s) {
    std::size_t pos = 0;
    int value = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
    return value;
  };
  auto bracket_body = [&raw](const std::string& s) -> std::string {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
      throw std::invalid_argument("expected bracketed list in '" + raw + "'");
    return s.substr(1, s.size() - 2);
  };

  int n = parse_int(expect(fields[0], "n="));
  if (n < 2) throw std::invalid_argument("need n >= 2");
  int g_prime = parse_int(expect(fields[1], "g="));
  if (g_prime < 0) throw std::invalid_argument("quotient genus must be non-negative");

  std::vector<DihedralElement> c, ab;
  for (const auto& tok : detail::split_list(bracket_body(expect(fields[2], "c=")), raw))
    c.push_back(parse_element(n, tok));
  for (const auto& tok : detail::split_list(bracket_body(expect(fields[3], "ab=")), raw))
    ab.push_back(parse_element(n, tok));
  if (static_cast<int>(ab.size()) != 2 * g_prime)
    throw std::invalid_argument("handle list length " + std::to_string(ab.size()) +
                                " does not match g=" + std::to_string(g_prime));
  return make_vector(n, std::move(c), std::move(ab));
}

// nu text grammar: comma-separated "<class>:<count>" pairs, e.g. "rot1:2,refl:2".
inline std::string to_string(const NuType& nu) {
  std::string out;
  for (const auto& [cls, k] : nu) {
    if (k == 0) continue;
    if (!out.empty()) out += ",";
    out += class_name(cls) + ":" + std::to_string(k);
  }
  return out;
}

inline NuType parse_nu(int n, const std::string& raw) {
  NuType nu;
  if (raw.empty()) return nu;
  std::string item;
  std::istringstream is(raw);
  while (std::getline(is, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("expected '<class>:<count>' in '" + raw + "'");
    std::string name = item.substr(0, colon);
    int count = std::stoi(item.substr(colon + 1));
    if (count <= 0) throw std::invalid_argument("class count must be positive");
    ConjClassId cls = parse_class_name(n, name);
    if (cls.kind == ConjClassKind::Identity)
      throw std::invalid_argument("identity class cannot carry branching");
    nu[cls] += count;
  }
  return nu;
}

}  // namespace dncover
