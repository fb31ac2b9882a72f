#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "gkplat/exact.hpp"
#include "gkplat/gkp_code.hpp"
#include "gkplat/lattice.hpp"
#include "gkplat/normal_form.hpp"

// Logical data of normalizer elements: corrective shifts, membership tests,
// and the induced Clifford action on qudit Pauli labels.
//
// A gram-preserving u satisfies u a = a u^{-T}, so the dual-basis action of
// the same symplectic map is v = a^{-1} u a = u^{-T}.  Gate extraction works
// in the Frobenius basis, where "mod D" is meaningful: labels live in the
// dual-lattice quotient, component i and n+i reduced mod d_i.

namespace gkplat {

// unimodular left-action on the canonical dual basis
struct DualUnimodular {
  IntMat v;
};

// element of the dual quotient group, slots i and n+i reduced mod d_i
class PauliLabel {
public:
  PauliLabel(LatticeType type, IntVec raw) : type_(std::move(type)), s_(std::move(raw)) {
    if (s_.size() != 2 * type_.modes())
      throw DimensionMismatch("label length must be twice the mode count");
    for (std::size_t i = 0; i < s_.size(); ++i) s_[i] = floor_mod(s_[i], type_.slot(i));
  }

  static PauliLabel zero(const LatticeType& type) {
    return PauliLabel(type, IntVec(2 * type.modes()));
  }

  const LatticeType& type() const { return type_; }
  const IntVec& label() const { return s_; }

  bool operator==(const PauliLabel&) const = default;

private:
  LatticeType type_;
  IntVec s_;
};

class LogicalClifford {
public:
  LogicalClifford(LatticeType type, IntMat vt_mod_d, PauliLabel pauli)
      : type_(std::move(type)), vt_(std::move(vt_mod_d)), pauli_(std::move(pauli)) {
    if (vt_.rows() != 2 * type_.modes() || vt_.cols() != 2 * type_.modes())
      throw DimensionMismatch("gate matrix has wrong shape");
    if (!(pauli_.type() == type_)) throw TypeMismatch("Pauli label type mismatch");
  }

  const LatticeType& type() const { return type_; }
  const IntMat& vt_mod_d() const { return vt_; }
  const PauliLabel& pauli() const { return pauli_; }

  bool operator==(const LogicalClifford&) const = default;

private:
  LatticeType type_;
  IntMat vt_;
  PauliLabel pauli_;
};

namespace detail {

// reduce row i of m modulo the type entry of slot i
inline IntMat reduce_rows_mod(IntMat m, const LatticeType& type) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = floor_mod(m(i, j), type.slot(i));
  return m;
}

}  // namespace detail

/// Primal representation u = a v a^{-1} of a dual-basis action v.
inline IntMat primal_from_dual(const GramMatrix& a, const DualUnimodular& dual) {
  const IntMat& v = dual.v;
  if (v.rows() != a.dim() || v.cols() != a.dim())
    throw DimensionMismatch("dual action has wrong shape");
  RatMat u = to_rat(a.matrix()) * to_rat(v) * rat_inverse(a.matrix());
  IntMat out(a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (!is_integer(u(i, j)))
        throw NotDualAction("a v a^{-1} is not an integer matrix");
      out(i, j) = u(i, j).get_num();
    }
  if (!is_gram_preserving(a, out))
    throw NotDualAction("induced primal action does not preserve the Gram matrix");
  return out;
}

/// Corrective shift of the automorphism u on this code: the sector change of
/// conjugation, returned as dual coordinates with entries in [0, 1).
/// Displacing the conjugated code by eta_s restores the original code.
inline DualCoords eta_s(const GkpCode& code, const IntMat& u) {
  GkpCode conj = conjugate_by_automorphism(code, u);  // throws NotAutomorphism
  RatVec h(code.dim());
  for (std::size_t i = 0; i < h.size(); ++i)
    h[i] = (conj.sector()[i] - code.sector()[i]).value();
  return DualCoords{std::move(h)};
}

/// True iff D(eta_h) S_u normalizes the stabilizer: u preserves the Gram
/// matrix and h differs from eta_s by an integer (dual lattice) vector.
inline bool in_normalizer(const GkpCode& code, const DualCoords& h, const IntMat& u) {
  if (h.h.size() != code.dim()) throw DimensionMismatch("displacement length mismatch");
  if (u.rows() != code.dim() || u.cols() != code.dim())
    throw DimensionMismatch("automorphism has wrong shape");
  if (!is_unimodular(u) || !is_gram_preserving(code.gram(), u)) return false;
  DualCoords e = eta_s(code, u);
  for (std::size_t i = 0; i < code.dim(); ++i) {
    Rat diff = h.h[i] - e.h[i];
    if (!is_integer(diff)) return false;
  }
  return true;
}

/// Label of a dual-lattice point in the quotient by the lattice.  In the
/// Frobenius basis the lattice occupies the slots-scaled sublattice, so the
/// label is the transformed coordinate vector reduced mod D.
inline PauliLabel pauli_coset(const GramMatrix& a, const DualCoords& x) {
  if (x.h.size() != a.dim()) throw DimensionMismatch("point length mismatch");
  auto iv = as_integer_vec(x.h);
  if (!iv) throw NonIntegerPoint("point is not in the dual lattice");
  FrobeniusDecomposition fd = frobenius_form(a);
  // dual coordinates transform by w under the rebase M -> w M
  IntVec t = fd.u * *iv;
  return PauliLabel(fd.type, std::move(t));
}

/// Logical Clifford action of the normalizer element (h, u), canonicalized
/// to the Frobenius basis: the label map is v^T = u^{-1} conjugated into
/// that basis and reduced mod D, and the Pauli part is the coset of
/// h - eta_s.
inline LogicalClifford logical_action(const GkpCode& code, const DualCoords& h, const IntMat& u) {
  if (!in_normalizer(code, h, u))
    throw NotInNormalizer("element does not normalize the stabilizer");
  FrobeniusDecomposition fd = frobenius_form(code.gram());
  IntMat w_inv = unimodular_inverse(fd.u);
  IntMat u_frob = fd.u * u * w_inv;
  IntMat vt = detail::reduce_rows_mod(unimodular_inverse(u_frob), fd.type);

  DualCoords e = eta_s(code, u);
  RatVec diff(code.dim());
  for (std::size_t i = 0; i < code.dim(); ++i) diff[i] = h.h[i] - e.h[i];
  PauliLabel pauli = pauli_coset(code.gram(), DualCoords{std::move(diff)});
  return LogicalClifford(fd.type, std::move(vt), std::move(pauli));
}

/// s -> vT s mod D.
inline PauliLabel apply_gate(const LogicalClifford& g, const PauliLabel& s) {
  if (!(g.type() == s.type())) throw TypeMismatch("gate and label types differ");
  return PauliLabel(g.type(), g.vt_mod_d() * s.label());
}

/// Label composition g2 after g1.  The Pauli part follows the projective
/// rule pauli_2 + vT_2 pauli_1; the physical composite can differ from this
/// by the coset of the corrective-shift carry, which vanishes on even
/// lattices.
inline LogicalClifford compose(const LogicalClifford& g2, const LogicalClifford& g1) {
  if (!(g2.type() == g1.type())) throw TypeMismatch("gate types differ");
  IntMat vt = detail::reduce_rows_mod(g2.vt_mod_d() * g1.vt_mod_d(), g2.type());
  IntVec p = g2.vt_mod_d() * g1.pauli().label();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] += g2.pauli().label()[i];
  return LogicalClifford(g2.type(), std::move(vt), PauliLabel(g2.type(), std::move(p)));
}

inline LogicalClifford identity_gate(const LatticeType& type) {
  IntMat vt = detail::reduce_rows_mod(IntMat::identity(2 * type.modes()), type);
  return LogicalClifford(type, std::move(vt), PauliLabel::zero(type));
}

/// Mapping-torus twist on the fiber torus in dual coordinates:
/// t -> v^T t mod 1 with v = a^{-1} u a, i.e. v^T = u^{-1}.
inline std::vector<Turn> torus_twist(const GramMatrix& a, const IntMat& u,
                                     const std::vector<Turn>& t) {
  if (t.size() != a.dim()) throw DimensionMismatch("torus point length mismatch");
  if (u.rows() != a.dim() || u.cols() != a.dim())
    throw DimensionMismatch("automorphism has wrong shape");
  if (!is_gram_preserving(a, u))
    throw NotAutomorphism("matrix does not preserve the Gram matrix");
  IntMat vt = unimodular_inverse(u);
  std::vector<Turn> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    Rat acc = 0;
    for (std::size_t j = 0; j < t.size(); ++j)
      if (vt(i, j) != 0) acc += Rat(vt(i, j)) * t[j].value();
    out[i] = Turn(acc);
  }
  return out;
}

}  // namespace gkplat
