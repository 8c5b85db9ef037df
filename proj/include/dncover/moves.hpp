#pragma once

// Elementary moves on Hurwitz vectors.  Every move is induced by a based
// mapping class of the punctured surface, acts by words in the old entries,
// and preserves the boundary relator exactly; consequently evaluation, system
// membership and the branching type are all preserved, and every move has an
// explicit inverse.
//
// Notation for the twist moves: u = [a_1,b_1]...[a_{l-1},b_{l-1}] is the
// product of the handle commutators before handle l, and c_d is the last
// branch entry (the twists drag the last branch point around handle l).

#include <cstdint>
#include <string>
#include <vector>

#include "dncover/hurwitz.hpp"

namespace dncover {

enum class MoveKind : std::uint8_t {
  BraidR,           // (c_i, c_{i+1}) -> (c_{i+1}, c_{i+1}^{-1} c_i c_{i+1})
  BraidL,           // (c_i, c_{i+1}) -> (c_i c_{i+1} c_i^{-1}, c_i)
  XiTwistA,         // a_l -> u^{-1} c_d u a_l,  c_d -> w c_d w^{-1}
  XiTwistAInv,
  XiTwistB,         // b_l -> a_l^{-1} u^{-1} c_d u a_l b_l,  c_d -> w c_d w^{-1}
  XiTwistBInv,
  Map2,             // mixes handles (j, j+1); see apply_move
  Map2Inv,
  HandleTwistA,     // (a_l, b_l) -> (a_l, b_l a_l)
  HandleTwistAInv,
  HandleTwistB,     // (a_l, b_l) -> (a_l b_l, b_l)
  HandleTwistBInv,
  GlobalConj,       // every entry e -> g e g^{-1}
};

inline const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::BraidR: return "braid_r";
    case MoveKind::BraidL: return "braid_l";
    case MoveKind::XiTwistA: return "xi_twist_a";
    case MoveKind::XiTwistAInv: return "xi_twist_a_inv";
    case MoveKind::XiTwistB: return "xi_twist_b";
    case MoveKind::XiTwistBInv: return "xi_twist_b_inv";
    case MoveKind::Map2: return "map2";
    case MoveKind::Map2Inv: return "map2_inv";
    case MoveKind::HandleTwistA: return "handle_twist_a";
    case MoveKind::HandleTwistAInv: return "handle_twist_a_inv";
    case MoveKind::HandleTwistB: return "handle_twist_b";
    case MoveKind::HandleTwistBInv: return "handle_twist_b_inv";
    case MoveKind::GlobalConj: return "global_conj";
  }
  return "?";
}

struct Move {
  MoveKind kind = MoveKind::GlobalConj;
  int index = 0;        // braid position i, handle l, or handle pair j (0-based)
  DihedralElement g;    // conjugator, GlobalConj only
};

inline Move inverse_move(const Move& m) {
  switch (m.kind) {
    case MoveKind::BraidR: return {MoveKind::BraidL, m.index, m.g};
    case MoveKind::BraidL: return {MoveKind::BraidR, m.index, m.g};
    case MoveKind::XiTwistA: return {MoveKind::XiTwistAInv, m.index, m.g};
    case MoveKind::XiTwistAInv: return {MoveKind::XiTwistA, m.index, m.g};
    case MoveKind::XiTwistB: return {MoveKind::XiTwistBInv, m.index, m.g};
    case MoveKind::XiTwistBInv: return {MoveKind::XiTwistB, m.index, m.g};
    case MoveKind::Map2: return {MoveKind::Map2Inv, m.index, m.g};
    case MoveKind::Map2Inv: return {MoveKind::Map2, m.index, m.g};
    case MoveKind::HandleTwistA: return {MoveKind::HandleTwistAInv, m.index, m.g};
    case MoveKind::HandleTwistAInv: return {MoveKind::HandleTwistA, m.index, m.g};
    case MoveKind::HandleTwistB: return {MoveKind::HandleTwistBInv, m.index, m.g};
    case MoveKind::HandleTwistBInv: return {MoveKind::HandleTwistB, m.index, m.g};
    case MoveKind::GlobalConj: return {MoveKind::GlobalConj, m.index, dn_inverse(m.g)};
  }
  throw std::logic_error("bad move kind");
}

namespace detail {

inline DihedralElement handle_commutator_prefix(const HurwitzVector& v, int l) {
  DihedralElement u = dn_identity(v.n);
  for (int k = 0; k < l; ++k)
    u = dn_mul(u, dn_commutator(v.ab[2 * k], v.ab[2 * k + 1]));
  return u;
}

}  // namespace detail

inline HurwitzVector apply_move(const HurwitzVector& v, const Move& m) {
  HurwitzVector out = v;
  const int d = v.d(), gp = v.genus();
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("move not applicable: ") + what);
  };
  switch (m.kind) {
    case MoveKind::BraidR: {
      need(m.index >= 0 && m.index + 1 < d, "braid position");
      const auto ci = v.c[m.index], cj = v.c[m.index + 1];
      out.c[m.index] = cj;
      out.c[m.index + 1] = dn_conj(dn_inverse(cj), ci);
      return out;
    }
    case MoveKind::BraidL: {
      need(m.index >= 0 && m.index + 1 < d, "braid position");
      const auto ci = v.c[m.index], cj = v.c[m.index + 1];
      out.c[m.index] = dn_conj(ci, cj);
      out.c[m.index + 1] = ci;
      return out;
    }
    case MoveKind::XiTwistA: {
      need(d >= 1 && m.index >= 0 && m.index < gp, "twist needs a branch point and a handle");
      const int l = m.index;
      const auto u = detail::handle_commutator_prefix(v, l);
      const auto cd = v.c[d - 1], a = v.ab[2 * l], b = v.ab[2 * l + 1];
      const auto w = dn_mul(dn_mul(cd, u), dn_mul(a, dn_mul(b, dn_mul(dn_inverse(a), dn_inverse(u)))));
      out.ab[2 * l] = dn_mul(dn_inverse(u), dn_mul(cd, dn_mul(u, a)));
      out.c[d - 1] = dn_conj(w, cd);
      return out;
    }
    case MoveKind::XiTwistAInv: {
      need(d >= 1 && m.index >= 0 && m.index < gp, "twist needs a branch point and a handle");
      const int l = m.index;
      const auto u = detail::handle_commutator_prefix(v, l);
      const auto cd = v.c[d - 1], a = v.ab[2 * l], b = v.ab[2 * l + 1];
      const auto s = dn_mul(u, dn_mul(a, dn_mul(b, dn_mul(dn_inverse(a), dn_inverse(u)))));
      const auto cd_old = dn_conj(dn_inverse(s), cd);
      out.c[d - 1] = cd_old;
      out.ab[2 * l] = dn_mul(dn_inverse(u), dn_mul(dn_inverse(cd_old), dn_mul(u, a)));
      return out;
    }
    case MoveKind::XiTwistB: {
      need(d >= 1 && m.index >= 0 && m.index < gp, "twist needs a branch point and a handle");
      const int l = m.index;
      const auto u = detail::handle_commutator_prefix(v, l);
      const auto cd = v.c[d - 1], a = v.ab[2 * l], b = v.ab[2 * l + 1];
      const auto w = dn_mul(dn_mul(cd, u), dn_mul(dn_commutator(a, b), dn_mul(dn_inverse(a), dn_inverse(u))));
      out.ab[2 * l + 1] =
          dn_mul(dn_inverse(a), dn_mul(dn_inverse(u), dn_mul(cd, dn_mul(u, dn_mul(a, b)))));
      out.c[d - 1] = dn_conj(w, cd);
      return out;
    }
    case MoveKind::XiTwistBInv: {
      need(d >= 1 && m.index >= 0 && m.index < gp, "twist needs a branch point and a handle");
      const int l = m.index;
      const auto u = detail::handle_commutator_prefix(v, l);
      const auto cd = v.c[d - 1], a = v.ab[2 * l], b = v.ab[2 * l + 1];
      const auto t = dn_mul(u, dn_mul(dn_commutator(a, b), dn_mul(dn_inverse(a), dn_inverse(u))));
      const auto cd_old = dn_conj(dn_inverse(t), cd);
      out.c[d - 1] = cd_old;
      out.ab[2 * l + 1] =
          dn_mul(dn_inverse(a), dn_mul(dn_inverse(u), dn_mul(dn_inverse(cd_old), dn_mul(u, dn_mul(a, b)))));
      return out;
    }
    case MoveKind::Map2: {
      // Handle-pair substitution, conjugated back so the commutator product
      // [a_j,b_j][a_{j+1},b_{j+1}] is preserved exactly:
      //   (A,B,C,D) -> (A C, C^{-1} B C, C^{-1} B C B^{-1} C, D C B^{-1} C)
      need(m.index >= 0 && m.index + 1 < gp, "handle pair");
      const int j = m.index;
      const auto A = v.ab[2 * j], B = v.ab[2 * j + 1];
      const auto C = v.ab[2 * j + 2], D = v.ab[2 * j + 3];
      out.ab[2 * j] = dn_mul(A, C);
      out.ab[2 * j + 1] = dn_conj(dn_inverse(C), B);
      out.ab[2 * j + 2] =
          dn_mul(dn_inverse(C), dn_mul(B, dn_mul(C, dn_mul(dn_inverse(B), C))));
      out.ab[2 * j + 3] = dn_mul(D, dn_mul(C, dn_mul(dn_inverse(B), C)));
      return out;
    }
    case MoveKind::Map2Inv: {
      need(m.index >= 0 && m.index + 1 < gp, "handle pair");
      const int j = m.index;
      const auto A = v.ab[2 * j], B = v.ab[2 * j + 1];
      const auto C = v.ab[2 * j + 2], D = v.ab[2 * j + 3];
      const auto E = dn_mul(dn_inverse(B), C);
      const auto B0 = dn_conj(E, B);
      const auto C0 = dn_mul(B0, E);
      out.ab[2 * j] = dn_mul(A, dn_inverse(C0));
      out.ab[2 * j + 1] = B0;
      out.ab[2 * j + 2] = C0;
      out.ab[2 * j + 3] = dn_mul(D, dn_mul(dn_inverse(E), dn_inverse(C0)));
      return out;
    }
    case MoveKind::HandleTwistA: {
      need(m.index >= 0 && m.index < gp, "handle index");
      out.ab[2 * m.index + 1] = dn_mul(v.ab[2 * m.index + 1], v.ab[2 * m.index]);
      return out;
    }
    case MoveKind::HandleTwistAInv: {
      need(m.index >= 0 && m.index < gp, "handle index");
      out.ab[2 * m.index + 1] = dn_mul(v.ab[2 * m.index + 1], dn_inverse(v.ab[2 * m.index]));
      return out;
    }
    case MoveKind::HandleTwistB: {
      need(m.index >= 0 && m.index < gp, "handle index");
      out.ab[2 * m.index] = dn_mul(v.ab[2 * m.index], v.ab[2 * m.index + 1]);
      return out;
    }
    case MoveKind::HandleTwistBInv: {
      need(m.index >= 0 && m.index < gp, "handle index");
      out.ab[2 * m.index] = dn_mul(v.ab[2 * m.index], dn_inverse(v.ab[2 * m.index + 1]));
      return out;
    }
    case MoveKind::GlobalConj: {
      need(m.g.n == v.n, "conjugator group");
      for (auto& e : out.c) e = dn_conj(m.g, e);
      for (auto& e : out.ab) e = dn_conj(m.g, e);
      return out;
    }
  }
  throw std::logic_error("bad move kind");
}

// All move instances applicable to vectors of the given shape.  Global
// conjugations are included for a generating set of the group only; their
// compositions are reached by iterating moves.
inline std::vector<Move> move_set(int n, int g_prime, int d) {
  std::vector<Move> moves;
  for (int i = 0; i + 1 < d; ++i) {
    moves.push_back({MoveKind::BraidR, i, {}});
    moves.push_back({MoveKind::BraidL, i, {}});
  }
  if (d >= 1)
    for (int l = 0; l < g_prime; ++l) {
      moves.push_back({MoveKind::XiTwistA, l, {}});
      moves.push_back({MoveKind::XiTwistAInv, l, {}});
      moves.push_back({MoveKind::XiTwistB, l, {}});
      moves.push_back({MoveKind::XiTwistBInv, l, {}});
    }
  for (int j = 0; j + 1 < g_prime; ++j) {
    moves.push_back({MoveKind::Map2, j, {}});
    moves.push_back({MoveKind::Map2Inv, j, {}});
  }
  for (int l = 0; l < g_prime; ++l) {
    moves.push_back({MoveKind::HandleTwistA, l, {}});
    moves.push_back({MoveKind::HandleTwistAInv, l, {}});
    moves.push_back({MoveKind::HandleTwistB, l, {}});
    moves.push_back({MoveKind::HandleTwistBInv, l, {}});
  }
  moves.push_back({MoveKind::GlobalConj, 0, dn_x(n)});
  if (n > 2) moves.push_back({MoveKind::GlobalConj, 0, dn_inverse(dn_x(n))});
  moves.push_back({MoveKind::GlobalConj, 0, dn_y(n)});
  return moves;
}

// Stable fingerprint of the move set (cache invalidation key).
inline std::uint64_t move_set_hash(int n, int g_prime, int d) {
  std::string desc = "v1";
  for (const auto& m : move_set(n, g_prime, d)) {
    desc += "|";
    desc += move_kind_name(m.kind);
    desc += std::to_string(m.index);
    if (m.kind == MoveKind::GlobalConj) desc += to_string(m.g);
  }
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : desc) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace dncover
