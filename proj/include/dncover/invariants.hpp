#pragma once

// Second-homology bookkeeping for dihedral covers.  H_2(D_n) is trivial for
// odd n and Z/2 for even n; the branching-constrained quotient H_{2,Sigma}
// collapses to the trivial group as soon as Sigma contains a reflection class
// or the central rotation.  For even n the surviving Z/2 is computed through
// the binary dihedral group: lift every entry through the canonical section
// and read off whether the product evaluates to the central element xi^n.

#include "dncover/dihedral.hpp"
#include "dncover/hurwitz.hpp"

namespace dncover {

inline int h2_order(int n) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  return n % 2 == 0 ? 2 : 1;
}

inline int h2_sigma_order(int n, const SigmaSet& sigma) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  for (const auto& cls : sigma) {
    if (cls.kind == ConjClassKind::Identity)
      throw std::invalid_argument("sigma contains the identity class");
    bool odd_only = cls.kind == ConjClassKind::ReflAll;
    bool even_only = cls.kind == ConjClassKind::ReflEven ||
                     cls.kind == ConjClassKind::ReflOdd ||
                     cls.kind == ConjClassKind::CentralRotation;
    if ((odd_only && n % 2 == 0) || (even_only && n % 2 == 1))
      throw std::invalid_argument("class " + class_name(cls) + " does not exist for n = " +
                                  std::to_string(n));
    if (cls.kind == ConjClassKind::Rotation && (cls.param < 1 || 2 * cls.param >= n))
      throw std::invalid_argument("rotation class label out of range");
  }
  if (n % 2 == 1) return 1;
  for (const auto& cls : sigma) {
    switch (cls.kind) {
      case ConjClassKind::CentralRotation:
      case ConjClassKind::ReflEven:
      case ConjClassKind::ReflOdd:
      case ConjClassKind::ReflAll:
        return 1;
      default:
        break;
    }
  }
  return 2;  // empty sigma, or non-central rotations only
}

// Product of canonical lifts in the binary dihedral group.  For a vector with
// identity evaluation the result is central, i.e. 1 or xi^n; the returned bit
// is 1 exactly when it is xi^n.
inline int schur_lift_product(const HurwitzVector& v) {
  if (v.n % 2 != 0)
    throw std::invalid_argument("lift product needs even n (trivial multiplier otherwise)");
  if (!dn_is_identity(evaluate(v)))
    throw std::invalid_argument("lift product needs identity evaluation");
  BinaryDihedralElement acc = bd_identity(v.n);
  for (const auto& g : v.c) acc = bd_mul(acc, bd_lift(g));
  for (std::size_t i = 0; i + 1 < v.ab.size(); i += 2)
    acc = bd_mul(acc, bd_commutator(bd_lift(v.ab[i]), bd_lift(v.ab[i + 1])));
  if (acc == bd_identity(v.n)) return 0;
  if (acc == bd_central(v.n)) return 1;
  throw std::logic_error("lift product escaped the kernel of the projection");
}

// Relative class of two vectors with identical branch lists.  The common
// branch lifts cancel, so the XOR of the two lift products is independent of
// the section and equals the image of the invariant difference in Z/2.
inline int relative_h2_class(const HurwitzVector& v1, const HurwitzVector& v2) {
  if (v1.n != v2.n) throw std::invalid_argument("relative class needs matching n");
  if (v1.n % 2 != 0) throw std::invalid_argument("relative class needs even n");
  if (v1.genus() != v2.genus() || v1.d() != v2.d())
    throw std::invalid_argument("relative class needs matching shape (g', d)");
  if (!(v1.c == v2.c))
    throw std::invalid_argument("relative class needs entrywise-equal branch lists");
  if (!dn_is_identity(evaluate(v1)) || !dn_is_identity(evaluate(v2)))
    throw std::invalid_argument("relative class needs identity evaluations");
  if (h2_sigma_order(v1.n, sigma_set(v1)) != 2)
    throw std::invalid_argument(
        "relative class is defined only when the constrained multiplier has order 2");
  return schur_lift_product(v1) ^ schur_lift_product(v2);
}

}  // namespace dncover
