#pragma once

// Exact arithmetic for the dihedral group D_n of order 2n,
//   D_n = <x, y | x^n = 1, y^2 = 1, x y = y x^{-1}>,
// its conjugacy classes, its automorphisms, and the binary dihedral
// group BD_n of order 4n together with the 2:1 projection BD_n -> D_n.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace dncover {

inline int mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

inline int gcd_int(int a, int b) { return std::gcd(a, b); }

inline int euler_phi(int m) {
  int count = 0;
  for (int a = 1; a <= m; ++a)
    if (std::gcd(a, m) == 1) ++count;
  return count;
}

// x^rot * y^refl with 0 <= rot < n, refl in {0,1}.
struct DihedralElement {
  int n = 1;
  int rot = 0;
  int refl = 0;

  friend bool operator==(const DihedralElement&, const DihedralElement&) = default;

  // Slot order used everywhere: e < y < x < x*y < x^2 < ...
  int key() const { return rot * 2 + refl; }
  friend bool operator<(const DihedralElement& a, const DihedralElement& b) {
    return a.key() < b.key();
  }
};

inline void require_same_group(const DihedralElement& a, const DihedralElement& b) {
  if (a.n != b.n) throw std::invalid_argument("dihedral elements from different groups");
}

inline DihedralElement dn_make(int n, int rot, int refl) {
  if (n < 1) throw std::invalid_argument("dihedral order parameter must be >= 1");
  return DihedralElement{n, mod(rot, n), mod(refl, 2)};
}

inline DihedralElement dn_identity(int n) { return dn_make(n, 0, 0); }
inline DihedralElement dn_x(int n) { return dn_make(n, 1, 0); }
inline DihedralElement dn_y(int n) { return dn_make(n, 0, 1); }

inline bool dn_is_identity(const DihedralElement& g) { return g.rot == 0 && g.refl == 0; }
inline bool dn_is_rotation(const DihedralElement& g) { return g.refl == 0; }
inline bool dn_is_reflection(const DihedralElement& g) { return g.refl == 1; }

// (x^a y^b)(x^c y^d) = x^{a + (-1)^b c} y^{b + d}
inline DihedralElement dn_mul(const DihedralElement& g, const DihedralElement& h) {
  require_same_group(g, h);
  int r = g.refl ? g.rot - h.rot : g.rot + h.rot;
  return dn_make(g.n, r, g.refl ^ h.refl);
}

inline DihedralElement dn_inverse(const DihedralElement& g) {
  return g.refl ? g : dn_make(g.n, -g.rot, 0);
}

inline DihedralElement dn_conj(const DihedralElement& g, const DihedralElement& h) {
  return dn_mul(dn_mul(g, h), dn_inverse(g));  // g h g^{-1}
}

inline DihedralElement dn_commutator(const DihedralElement& a, const DihedralElement& b) {
  return dn_mul(dn_mul(a, b), dn_mul(dn_inverse(a), dn_inverse(b)));
}

inline DihedralElement dn_pow(DihedralElement g, int k) {
  DihedralElement acc = dn_identity(g.n);
  if (k < 0) {
    g = dn_inverse(g);
    k = -k;
  }
  for (; k > 0; --k) acc = dn_mul(acc, g);
  return acc;
}

inline int dn_order(const DihedralElement& g) {
  if (g.refl) return 2;
  if (g.rot == 0) return 1;
  return g.n / std::gcd(g.rot, g.n);
}

inline std::vector<DihedralElement> dn_all_elements(int n) {
  std::vector<DihedralElement> out;
  out.reserve(2 * n);
  for (int r = 0; r < n; ++r)
    for (int f = 0; f < 2; ++f) out.push_back(dn_make(n, r, f));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Conjugacy classes.
//
// Rotations pair up as {x^i, x^{n-i}} (label min(i, n-i)); for even n the
// rotation x^{n/2} is central and forms its own class.  Reflections form a
// single class when n is odd, and split by exponent parity when n is even.

enum class ConjClassKind : std::uint8_t {
  Identity,
  Rotation,         // parameterized by label 1 <= i <= (n-1)/2, or i < n/2 for even n
  CentralRotation,  // x^{n/2}, n even
  ReflEven,         // n even, exponent even
  ReflOdd,          // n even, exponent odd
  ReflAll,          // n odd
};

struct ConjClassId {
  ConjClassKind kind = ConjClassKind::Identity;
  int param = 0;  // rotation label, 0 otherwise

  friend bool operator==(const ConjClassId&, const ConjClassId&) = default;
  friend bool operator<(const ConjClassId& a, const ConjClassId& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.param < b.param;
  }
};

inline ConjClassId dn_conjugacy_class(const DihedralElement& g) {
  const int n = g.n;
  if (g.refl == 0) {
    if (g.rot == 0) return {ConjClassKind::Identity, 0};
    if (n % 2 == 0 && g.rot == n / 2) return {ConjClassKind::CentralRotation, 0};
    return {ConjClassKind::Rotation, std::min(g.rot, n - g.rot)};
  }
  if (n % 2 == 1) return {ConjClassKind::ReflAll, 0};
  return {g.rot % 2 == 0 ? ConjClassKind::ReflEven : ConjClassKind::ReflOdd, 0};
}

inline std::vector<ConjClassId> dn_all_classes(int n) {
  std::vector<ConjClassId> out;
  out.push_back({ConjClassKind::Identity, 0});
  for (int i = 1; 2 * i < n; ++i) out.push_back({ConjClassKind::Rotation, i});
  if (n % 2 == 0) {
    if (n >= 2) out.push_back({ConjClassKind::CentralRotation, 0});
    out.push_back({ConjClassKind::ReflEven, 0});
    out.push_back({ConjClassKind::ReflOdd, 0});
  } else {
    out.push_back({ConjClassKind::ReflAll, 0});
  }
  return out;
}

// Rotation exponent label in (0, n/2] for rotation-like classes, 0 otherwise.
inline int dn_class_label(int n, const ConjClassId& c) {
  if (c.kind == ConjClassKind::CentralRotation) return n / 2;
  if (c.kind == ConjClassKind::Rotation) return c.param;
  return 0;
}

inline int dn_class_size(int n, const ConjClassId& c) {
  switch (c.kind) {
    case ConjClassKind::Identity: return 1;
    case ConjClassKind::Rotation: return 2;
    case ConjClassKind::CentralRotation: return 1;
    case ConjClassKind::ReflEven: return n / 2;
    case ConjClassKind::ReflOdd: return n / 2;
    case ConjClassKind::ReflAll: return n;
  }
  throw std::logic_error("bad class kind");
}

inline int dn_class_element_order(int n, const ConjClassId& c) {
  switch (c.kind) {
    case ConjClassKind::Identity: return 1;
    case ConjClassKind::Rotation: return n / std::gcd(c.param, n);
    case ConjClassKind::CentralRotation: return 2;
    default: return 2;
  }
}

// A fixed representative of the class.
inline DihedralElement dn_class_representative(int n, const ConjClassId& c) {
  switch (c.kind) {
    case ConjClassKind::Identity: return dn_identity(n);
    case ConjClassKind::Rotation: return dn_make(n, c.param, 0);
    case ConjClassKind::CentralRotation: return dn_make(n, n / 2, 0);
    case ConjClassKind::ReflEven: return dn_make(n, 0, 1);
    case ConjClassKind::ReflOdd: return dn_make(n, 1, 1);
    case ConjClassKind::ReflAll: return dn_make(n, 0, 1);
  }
  throw std::logic_error("bad class kind");
}

inline std::string class_name(const ConjClassId& c) {
  switch (c.kind) {
    case ConjClassKind::Identity: return "id";
    case ConjClassKind::Rotation: return "rot" + std::to_string(c.param);
    case ConjClassKind::CentralRotation: return "central";
    case ConjClassKind::ReflEven: return "refl_even";
    case ConjClassKind::ReflOdd: return "refl_odd";
    case ConjClassKind::ReflAll: return "refl";
  }
  throw std::logic_error("bad class kind");
}

inline ConjClassId parse_class_name(int n, const std::string& s) {
  if (s == "id") return {ConjClassKind::Identity, 0};
  if (s == "central") {
    if (n % 2 != 0) throw std::invalid_argument("class 'central' needs even n");
    return {ConjClassKind::CentralRotation, 0};
  }
  if (s == "refl") {
    if (n % 2 == 0) throw std::invalid_argument("class 'refl' needs odd n; use refl_even/refl_odd");
    return {ConjClassKind::ReflAll, 0};
  }
  if (s == "refl_even" || s == "refl_odd") {
    if (n % 2 != 0) throw std::invalid_argument("class '" + s + "' needs even n");
    return {s == "refl_even" ? ConjClassKind::ReflEven : ConjClassKind::ReflOdd, 0};
  }
  if (s.rfind("rot", 0) == 0) {
    int i = std::stoi(s.substr(3));
    if (i < 1 || 2 * i >= n) throw std::invalid_argument("rotation class label out of range: " + s);
    return {ConjClassKind::Rotation, i};
  }
  throw std::invalid_argument("unknown conjugacy class name: " + s);
}

// ---------------------------------------------------------------------------
// Automorphisms.  For n >= 3 every automorphism is x -> x^a (gcd(a,n)=1),
// y -> x^b y.  For n = 2 the group is the Klein four-group, whose
// automorphisms permute the three involutions; they are found by brute force.

struct DihedralAut {
  int n = 1;
  DihedralElement img_x;
  DihedralElement img_y;

  friend bool operator==(const DihedralAut&, const DihedralAut&) = default;

  DihedralElement apply(const DihedralElement& g) const {
    if (g.n != n) throw std::invalid_argument("automorphism applied to wrong group");
    DihedralElement out = dn_pow(img_x, g.rot);
    if (g.refl) out = dn_mul(out, img_y);
    return out;
  }
};

inline DihedralAut dn_aut_from_params(int n, int a, int b) {
  if (n < 3) throw std::invalid_argument("parameterized automorphisms need n >= 3");
  if (std::gcd(a, n) != 1) throw std::invalid_argument("automorphism parameter a must be a unit mod n");
  return DihedralAut{n, dn_make(n, a, 0), dn_make(n, b, 1)};
}

inline DihedralAut dn_aut_identity(int n) { return DihedralAut{n, dn_x(n), dn_y(n)}; }

inline bool dn_is_automorphism(const DihedralAut& f) {
  const auto all = dn_all_elements(f.n);
  std::vector<DihedralElement> image;
  image.reserve(all.size());
  for (const auto& g : all) {
    for (const auto& h : all) {
      if (!(f.apply(dn_mul(g, h)) == dn_mul(f.apply(g), f.apply(h)))) return false;
    }
    image.push_back(f.apply(g));
  }
  std::sort(image.begin(), image.end());
  return std::adjacent_find(image.begin(), image.end()) == image.end();
}

inline std::vector<DihedralAut> dn_automorphisms(int n) {
  std::vector<DihedralAut> out;
  if (n < 2) {
    out.push_back(dn_aut_identity(n));
    return out;
  }
  if (n == 2) {
    const auto all = dn_all_elements(2);
    for (const auto& ix : all)
      for (const auto& iy : all) {
        if (dn_is_identity(ix) || dn_is_identity(iy) || ix == iy) continue;
        DihedralAut f{2, ix, iy};
        if (dn_is_automorphism(f)) out.push_back(f);
      }
    return out;
  }
  for (int a = 1; a < n; ++a) {
    if (std::gcd(a, n) != 1) continue;
    for (int b = 0; b < n; ++b) out.push_back(dn_aut_from_params(n, a, b));
  }
  return out;
}

inline ConjClassId dn_aut_image_class(const DihedralAut& f, const ConjClassId& c) {
  return dn_conjugacy_class(f.apply(dn_class_representative(f.n, c)));
}

// ---------------------------------------------------------------------------
// Subgroup generated by a set of elements.

struct DnSubgroup {
  std::vector<DihedralElement> elements;  // sorted
  bool is_all = false;
  bool rotations_only = false;
  int rotation_index = 0;  // index of (H intersect rotations) in the rotation subgroup
};

inline DnSubgroup dn_subgroup_generated(int n, const std::vector<DihedralElement>& gens) {
  std::vector<char> seen(static_cast<std::size_t>(2 * n), 0);
  std::vector<DihedralElement> frontier{dn_identity(n)};
  seen[0] = 1;
  while (!frontier.empty()) {
    DihedralElement g = frontier.back();
    frontier.pop_back();
    for (const auto& s : gens) {
      if (s.n != n) throw std::invalid_argument("generator from wrong group");
      for (const auto& next : {dn_mul(g, s), dn_mul(g, dn_inverse(s))}) {
        auto idx = static_cast<std::size_t>(next.key());
        if (!seen[idx]) {
          seen[idx] = 1;
          frontier.push_back(next);
        }
      }
    }
  }
  DnSubgroup H;
  int rotations = 0;
  for (int key = 0; key < 2 * n; ++key)
    if (seen[static_cast<std::size_t>(key)]) {
      H.elements.push_back(dn_make(n, key / 2, key % 2));
      if (key % 2 == 0) ++rotations;
    }
  H.is_all = (static_cast<int>(H.elements.size()) == 2 * n);
  H.rotations_only = (static_cast<int>(H.elements.size()) == rotations);
  H.rotation_index = n / rotations;
  return H;
}

// ---------------------------------------------------------------------------
// Binary dihedral group BD_n of order 4n:
//   BD_n = <xi, eta | xi^{2n} = 1, eta^2 = xi^n, eta xi eta^{-1} = xi^{-1}>,
// realized in the unit quaternions by xi = cos(pi/n) + k sin(pi/n), eta = j.
// It is a central extension 1 -> {1, xi^n} -> BD_n -> D_n -> 1.

struct BinaryDihedralElement {
  int n = 1;
  int p = 0;  // 0 <= p < 2n
  int e = 0;  // 0 or 1

  friend bool operator==(const BinaryDihedralElement&, const BinaryDihedralElement&) = default;
  friend bool operator<(const BinaryDihedralElement& a, const BinaryDihedralElement& b) {
    return a.p * 2 + a.e < b.p * 2 + b.e;
  }
};

inline BinaryDihedralElement bd_make(int n, int p, int e) {
  if (n < 1) throw std::invalid_argument("binary dihedral order parameter must be >= 1");
  return BinaryDihedralElement{n, mod(p, 2 * n), mod(e, 2)};
}

inline BinaryDihedralElement bd_identity(int n) { return bd_make(n, 0, 0); }
inline BinaryDihedralElement bd_central(int n) { return bd_make(n, n, 0); }  // xi^n

// (xi^p eta^e)(xi^q eta^f) = xi^{p + (-1)^e q + n e f} eta^{e xor f}
inline BinaryDihedralElement bd_mul(const BinaryDihedralElement& g, const BinaryDihedralElement& h) {
  if (g.n != h.n) throw std::invalid_argument("binary dihedral elements from different groups");
  int p = g.p + (g.e ? -h.p : h.p) + g.n * (g.e & h.e);
  return bd_make(g.n, p, g.e ^ h.e);
}

inline BinaryDihedralElement bd_inverse(const BinaryDihedralElement& g) {
  return g.e ? bd_make(g.n, g.p + g.n, 1) : bd_make(g.n, -g.p, 0);
}

inline BinaryDihedralElement bd_commutator(const BinaryDihedralElement& a, const BinaryDihedralElement& b) {
  return bd_mul(bd_mul(a, b), bd_mul(bd_inverse(a), bd_inverse(b)));
}

inline int bd_order(const BinaryDihedralElement& g) {
  BinaryDihedralElement acc = g;
  int k = 1;
  while (!(acc == bd_identity(g.n))) {
    acc = bd_mul(acc, g);
    ++k;
  }
  return k;
}

// Canonical section x^i y^j -> xi^i eta^j (0 <= i < n).
inline BinaryDihedralElement bd_lift(const DihedralElement& g) {
  return bd_make(g.n, g.rot, g.refl);
}

inline DihedralElement bd_project(const BinaryDihedralElement& g) {
  return dn_make(g.n, mod(g.p, g.n), g.e);
}

// ---------------------------------------------------------------------------
// Element text grammar: e | y | x | x^i | x*y | x^i*y   with 0 <= i < n.

inline std::string to_string(const DihedralElement& g) {
  std::string rot_part;
  if (g.rot == 1) rot_part = "x";
  else if (g.rot > 1) rot_part = "x^" + std::to_string(g.rot);
  if (g.refl == 0) return rot_part.empty() ? "e" : rot_part;
  return rot_part.empty() ? "y" : rot_part + "*y";
}

inline DihedralElement parse_element(int n, const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty element string");

  const auto fail = [&raw]() -> void {
    throw std::invalid_argument("cannot parse element '" + raw + "'");
  };

  int refl = 0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "*y") == 0) {
    refl = 1;
    s.erase(s.size() - 2);
  } else if (s == "y") {
    return dn_make(n, 0, 1);
  }
  if (s == "e") {
    if (refl) fail();  // "e*y" is not in the grammar
    return dn_identity(n);
  }
  if (s.empty() || s[0] != 'x') fail();
  int rot = 1;
  if (s.size() > 1) {
    if (s[1] != '^') fail();
    std::string digits = s.substr(2);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        }))
      fail();
    try {
      rot = std::stoi(digits);
    } catch (const std::out_of_range&) {
      fail();
    }
  }
  if (rot < 0 || rot >= n)
    throw std::invalid_argument("exponent out of range in '" + raw + "' (need 0 <= i < " +
                                std::to_string(n) + ")");
  return dn_make(n, rot, refl);
}

}  // namespace dncover
