#pragma once

// Normal forms and the complete equivalence invariant.  A Hurwitz system is
// reduced to a small parameter tuple depending on its branch classes: the
// unbranched case carries only the central lift bit, systems branched over
// reflections are determined by counts, and rotation-only branching carries
// the residue pair (r, h).  Cases outside the constructive reductions use the
// breadth-first lex-min representative.

#include <optional>

#include "dncover/invariants.hpp"
#include "dncover/orbit.hpp"

namespace dncover {

inline HurwitzVector aut_apply(const DihedralAut& f, const HurwitzVector& v) {
  HurwitzVector w = v;
  for (auto& e : w.c) e = f.apply(e);
  for (auto& e : w.ab) e = f.apply(e);
  return w;
}

enum class FormCase { Etale, WithReflections, RotationsOnly, SmallFallback };

inline const char* form_case_name(FormCase c) {
  switch (c) {
    case FormCase::Etale: return "etale";
    case FormCase::WithReflections: return "with_reflections";
    case FormCase::RotationsOnly: return "rotations_only";
    case FormCase::SmallFallback: return "small_fallback";
  }
  throw std::logic_error("bad form case");
}

struct CanonicalForm {
  FormCase form_case = FormCase::SmallFallback;
  int n = 1, g_prime = 0, d = 0;
  std::vector<int> params;  // case-dependent, see normal_form
  HurwitzVector rep;        // materialized member of the equivalence class

  NuType nu() const { return nu_type(rep); }
  SigmaSet sigma() const { return sigma_set(rep); }

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.form_case == b.form_case && a.n == b.n && a.g_prime == b.g_prime &&
           a.d == b.d && a.params == b.params && a.rep == b.rep;
  }
  friend bool operator!=(const CanonicalForm& a, const CanonicalForm& b) { return !(a == b); }
  friend bool operator<(const CanonicalForm& a, const CanonicalForm& b) {
    auto key = [](const CanonicalForm& f) {
      return std::tuple<int, int, int, int>(f.n, f.g_prime, f.d, static_cast<int>(f.form_case));
    };
    if (key(a) != key(b)) return key(a) < key(b);
    if (a.params != b.params) return a.params < b.params;
    return a.rep < b.rep;
  }
};

inline std::string to_json(const CanonicalForm& f) {
  nlohmann::json j{{"case", form_case_name(f.form_case)},
                   {"n", f.n},
                   {"g", f.g_prime},
                   {"d", f.d},
                   {"params", f.params},
                   {"rep", to_string(f.rep)}};
  return j.dump();
}

namespace detail {

inline bool has_reflection_class(const SigmaSet& sigma) {
  for (const auto& c : sigma)
    if (c.kind == ConjClassKind::ReflAll || c.kind == ConjClassKind::ReflEven ||
        c.kind == ConjClassKind::ReflOdd)
      return true;
  return false;
}

// Which reduction applies.  The constructive forms require n >= 3 and enough
// handles; everything else goes through the search fallback.
inline FormCase dispatch_case(const HurwitzVector& v) {
  if (v.n == 2) return FormCase::SmallFallback;
  const auto sigma = sigma_set(v);
  if (sigma.empty())
    return v.genus() >= 2 ? FormCase::Etale : FormCase::SmallFallback;
  if (has_reflection_class(sigma))
    return v.genus() >= 1 ? FormCase::WithReflections : FormCase::SmallFallback;
  return v.genus() >= 2 ? FormCase::RotationsOnly : FormCase::SmallFallback;
}

inline HurwitzVector etale_rep(int n, int g_prime, int bit) {
  std::vector<DihedralElement> ab(static_cast<std::size_t>(2 * g_prime), dn_identity(n));
  ab[0] = dn_y(n);
  if (bit) ab[1] = dn_make(n, n / 2, 0);
  ab[2] = dn_x(n);
  return make_vector(n, {}, ab);
}

inline HurwitzVector with_reflections_rep(int n, int g_prime, const std::vector<int>& r,
                                          int nu1, int nu2, int eps) {
  std::vector<DihedralElement> c;
  int sum = 0;
  for (int ri : r) {
    c.push_back(dn_make(n, ri, 0));
    sum += ri;
  }
  c.push_back(dn_make(n, mod(eps - sum, n), 1));
  if (n % 2 == 1) {
    // single reflection class: one xy then y's
    c.push_back(dn_make(n, 1, 1));
    for (int i = 0; i < nu2 - 2; ++i) c.push_back(dn_y(n));
  } else {
    for (int i = 0; i < nu2 - 1; ++i) c.push_back(dn_make(n, 1, 1));
    for (int i = 0; i < nu1; ++i) c.push_back(dn_y(n));
  }
  std::vector<DihedralElement> ab(static_cast<std::size_t>(2 * g_prime), dn_identity(n));
  ab[0] = dn_x(n);
  return make_vector(n, c, ab);
}

inline HurwitzVector rotations_only_rep(int n, int g_prime, const std::vector<int>& r, int h) {
  std::vector<DihedralElement> c;
  for (int ri : r) c.push_back(dn_make(n, ri, 0));
  std::vector<DihedralElement> ab(static_cast<std::size_t>(2 * g_prime), dn_identity(n));
  ab[0] = dn_y(n);
  ab[1] = dn_make(n, h, 0);
  ab[2] = dn_x(n);
  return make_vector(n, c, ab);
}

// Bring the branch entries (all rotations here) to the sorted class-label
// exponents using braids and handle twists only, so the central lift
// comparison afterwards happens between vectors in the same mapping-class
// orbit with entrywise equal branch lists.
inline HurwitzVector align_rotation_entries(HurwitzVector v) {
  const int n = v.n, d = v.d();
  auto inversion_twist = [](const HurwitzVector& w) -> Move {
    for (int l = 0; l < w.genus(); ++l) {
      if (w.ab[static_cast<std::size_t>(2 * l)].refl == 1) return Move{MoveKind::XiTwistB, l};
      if (w.ab[static_cast<std::size_t>(2 * l + 1)].refl == 1) return Move{MoveKind::XiTwistA, l};
    }
    throw std::logic_error("no reflection handle available for inversion");
  };
  for (bool again = true; again;) {
    again = false;
    for (int i = 0; i < d; ++i) {
      if (2 * v.c[static_cast<std::size_t>(i)].rot > n) {
        for (int j = i; j + 1 < d; ++j) v = apply_move(v, Move{MoveKind::BraidR, j});
        v = apply_move(v, inversion_twist(v));
        again = true;
        break;
      }
    }
  }
  for (bool swapped = true; swapped;) {
    swapped = false;
    for (int j = 0; j + 1 < d; ++j) {
      if (v.c[static_cast<std::size_t>(j)].rot > v.c[static_cast<std::size_t>(j + 1)].rot) {
        v = apply_move(v, Move{MoveKind::BraidR, j});
        swapped = true;
      }
    }
  }
  return v;
}

inline CanonicalForm checked(CanonicalForm f) {
  auto chk = is_hurwitz_system(f.rep);
  if (!chk.ok)
    throw std::logic_error("materialized representative is not a Hurwitz system: " + chk.reason);
  return f;
}

}  // namespace detail

// Map-orbit normal form.  Parameter layouts:
//   Etale:            { lift bit }                       (bit = 0 for odd n)
//   WithReflections:  { r..., m }            for odd n   (m reflections)
//                     { r..., nu1, nu2, eps } for even n
//   RotationsOnly:    { r..., h }
//   SmallFallback:    {} with rep = lex-min orbit member
inline CanonicalForm normal_form(const HurwitzVector& v,
                                 long long fallback_budget = 10'000'000) {
  auto chk = is_hurwitz_system(v);
  if (!chk.ok) throw std::invalid_argument("normal_form requires a Hurwitz system: " + chk.reason);
  const int n = v.n, gp = v.genus(), d = v.d();
  CanonicalForm f;
  f.n = n;
  f.g_prime = gp;
  f.d = d;
  f.form_case = detail::dispatch_case(v);

  switch (f.form_case) {
    case FormCase::Etale: {
      int bit = n % 2 == 0 ? schur_lift_product(v) : 0;
      f.params = {bit};
      f.rep = detail::etale_rep(n, gp, bit);
      return detail::checked(f);
    }
    case FormCase::WithReflections: {
      auto nu = nu_type(v);
      std::vector<int> r;
      int m = 0, nu_even = 0, nu_odd = 0;
      for (const auto& [cls, k] : nu) {
        if (cls.kind == ConjClassKind::Rotation || cls.kind == ConjClassKind::CentralRotation)
          r.insert(r.end(), static_cast<std::size_t>(k), dn_class_label(n, cls));
        else if (cls.kind == ConjClassKind::ReflAll) m += k;
        else if (cls.kind == ConjClassKind::ReflEven) nu_even += k;
        else nu_odd += k;
      }
      std::sort(r.begin(), r.end());
      f.params = r;
      if (n % 2 == 1) {
        f.params.push_back(m);
        f.rep = detail::with_reflections_rep(n, gp, r, 0, m, 1);
      } else {
        int nu1 = std::min(nu_even, nu_odd), nu2 = std::max(nu_even, nu_odd);
        int eps = (nu2 + 1) % 2;
        f.params.push_back(nu1);
        f.params.push_back(nu2);
        f.params.push_back(eps);
        f.rep = detail::with_reflections_rep(n, gp, r, nu1, nu2, eps);
      }
      return detail::checked(f);
    }
    case FormCase::RotationsOnly: {
      auto aligned = detail::align_rotation_entries(v);
      std::vector<int> r;
      int sum = 0;
      for (const auto& e : aligned.c) {
        r.push_back(e.rot);
        sum += e.rot;
      }
      int h;
      if (n % 2 == 1) {
        h = mod(sum * ((n + 1) / 2), n);
      } else {
        const int k = n / 2;
        int h0 = mod(sum, n) / 2 % k;
        if (std::find(r.begin(), r.end(), k) != r.end()) {
          h = h0;  // central branch entry collapses the ambiguity
        } else {
          auto w1 = detail::rotations_only_rep(n, gp, r, h0);
          h = h0 + relative_h2_class(aligned, w1) * k;
        }
      }
      f.params = r;
      f.params.push_back(h);
      f.rep = detail::rotations_only_rep(n, gp, r, h);
      return detail::checked(f);
    }
    case FormCase::SmallFallback: break;
  }
  OrbitOptions opt;
  opt.max_states = fallback_budget;
  f.rep = orbit(v, opt).canonical;
  return detail::checked(f);
}

// Equivalence-class invariant: minimum of normal_form over the automorphism
// sweep, or the lex-min of the combined move-and-automorphism search in the
// fallback case (the two definitions agree there).
inline CanonicalForm canonical_invariant(const HurwitzVector& v,
                                         long long fallback_budget = 10'000'000) {
  auto chk = is_hurwitz_system(v);
  if (!chk.ok)
    throw std::invalid_argument("canonical_invariant requires a Hurwitz system: " + chk.reason);
  if (detail::dispatch_case(v) == FormCase::SmallFallback) {
    OrbitOptions opt;
    opt.mod_aut = true;
    opt.max_states = fallback_budget;
    CanonicalForm f;
    f.form_case = FormCase::SmallFallback;
    f.n = v.n;
    f.g_prime = v.genus();
    f.d = v.d();
    f.rep = orbit(v, opt).canonical;
    return detail::checked(f);
  }
  std::optional<CanonicalForm> best;
  for (const auto& aut : dn_automorphisms(v.n)) {
    auto cf = normal_form(aut_apply(aut, v), fallback_budget);
    if (!best || cf < *best) best = cf;
  }
  return *best;
}

inline bool equivalent(const HurwitzVector& v1, const HurwitzVector& v2,
                       long long fallback_budget = 10'000'000) {
  if (v1.n != v2.n || v1.genus() != v2.genus() || v1.d() != v2.d())
    throw std::invalid_argument("equivalence requires matching n, genus, and branch count");
  return canonical_invariant(v1, fallback_budget) == canonical_invariant(v2, fallback_budget);
}

// ---------------------------------------------------------------------------
// Which branch types are realized by some Hurwitz system.

enum class RealizabilityRule {
  AnyAdmissible_gp2,
  ReflectionPresent_gp1,
  RotationIndex_gp1,
  R,
  O,
  E,
  None
};

inline const char* realizability_rule_name(RealizabilityRule r) {
  switch (r) {
    case RealizabilityRule::AnyAdmissible_gp2: return "any_admissible_genus2";
    case RealizabilityRule::ReflectionPresent_gp1: return "reflection_present_genus1";
    case RealizabilityRule::RotationIndex_gp1: return "rotation_index_genus1";
    case RealizabilityRule::R: return "two_reflections_full_rotations";
    case RealizabilityRule::O: return "odd_four_reflections";
    case RealizabilityRule::E: return "even_four_reflections";
    case RealizabilityRule::None: return "none";
  }
  throw std::logic_error("bad rule");
}

struct RealizabilityVerdict {
  bool realizable = false;
  RealizabilityRule rule = RealizabilityRule::None;
};

namespace detail {

inline void validate_nu(int n, const NuType& nu) {
  auto valid = dn_all_classes(n);
  for (const auto& [cls, k] : nu) {
    if (k <= 0) throw std::invalid_argument("class multiplicity must be positive");
    if (cls.kind == ConjClassKind::Identity)
      throw std::invalid_argument("branch type may not use the identity class");
    if (std::find(valid.begin(), valid.end(), cls) == valid.end())
      throw std::invalid_argument("class " + class_name(cls) + " does not exist for n=" +
                                  std::to_string(n));
  }
}

// Genus-one, rotation-only branch types.  A system (c; x^m y, x^{m+delta} y)
// exists iff some choice of exponent signs makes the branch product x^{2delta}
// with gcd(n, <branch classes>, delta) = 1.
inline bool rotation_index_condition(int n, const NuType& nu) {
  int gcd_h = n;
  std::vector<bool> reachable(static_cast<std::size_t>(n), false);
  reachable[0] = true;
  for (const auto& [cls, k] : nu) {
    if (cls.kind != ConjClassKind::Rotation && cls.kind != ConjClassKind::CentralRotation)
      throw std::logic_error("rotation index condition needs a rotation-only branch type");
    const int s = dn_class_label(n, cls);
    gcd_h = gcd_int(gcd_h, s);
    for (int i = 0; i < k; ++i) {
      std::vector<bool> next(static_cast<std::size_t>(n), false);
      for (int e = 0; e < n; ++e)
        if (reachable[static_cast<std::size_t>(e)]) {
          next[static_cast<std::size_t>(mod(e + s, n))] = true;
          next[static_cast<std::size_t>(mod(e - s, n))] = true;
        }
      reachable = std::move(next);
    }
  }
  for (int delta = 0; delta < n; ++delta)
    if (reachable[static_cast<std::size_t>(mod(2 * delta, n))] &&
        gcd_int(gcd_int(n, gcd_h), delta) == 1)
      return true;
  return false;
}

}  // namespace detail

inline RealizabilityVerdict nu_realizable(int n, int g_prime, const NuType& nu) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (g_prime < 0) throw std::invalid_argument("genus must be non-negative");
  detail::validate_nu(n, nu);
  if (!is_admissible(n, nu)) return {false, RealizabilityRule::None};

  if (g_prime >= 2) return {true, RealizabilityRule::AnyAdmissible_gp2};

  int reflections = 0, rot_gcd = n;
  bool refl_even = false, refl_odd = false, odd_rotation = false;
  for (const auto& [cls, k] : nu) {
    switch (cls.kind) {
      case ConjClassKind::ReflAll:
        reflections += k;
        refl_even = refl_odd = true;
        break;
      case ConjClassKind::ReflEven:
        reflections += k;
        refl_even = true;
        break;
      case ConjClassKind::ReflOdd:
        reflections += k;
        refl_odd = true;
        break;
      case ConjClassKind::Rotation:
      case ConjClassKind::CentralRotation:
        rot_gcd = gcd_int(rot_gcd, dn_class_label(n, cls));
        if (dn_class_label(n, cls) % 2 == 1) odd_rotation = true;
        break;
      case ConjClassKind::Identity: break;
    }
  }

  if (g_prime == 1) {
    if (reflections > 0) return {true, RealizabilityRule::ReflectionPresent_gp1};
    bool ok = detail::rotation_index_condition(n, nu);
    return {ok, ok ? RealizabilityRule::RotationIndex_gp1 : RealizabilityRule::None};
  }

  if (reflections == 2 && rot_gcd == 1) return {true, RealizabilityRule::R};
  if (n % 2 == 1 && reflections >= 4) return {true, RealizabilityRule::O};
  if (n % 2 == 0 && reflections >= 4 && ((refl_even && refl_odd) || odd_rotation))
    return {true, RealizabilityRule::E};
  return {false, RealizabilityRule::None};
}

}  // namespace dncover
