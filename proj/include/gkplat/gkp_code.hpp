#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "gkplat/exact.hpp"
#include "gkplat/lattice.hpp"
#include "gkplat/normal_form.hpp"

// GKP stabilizer groups as (Gram matrix, sector) pairs with exact phase
// arithmetic.  The sector entry t_i is the phase of generator i measured in
// turns (phi = 2 pi t), reduced into [0, 1).
//
// Composing displacements multiplies phases by the symplectic cocycle: the
// ordered word g_1^{m_1} ... g_{2n}^{m_{2n}} has turn
//
//   t(m) = sum_i m_i t_i - 1/2 sum_{i<j} m_i m_j a_ij   (mod 1).
//
// The group is abelian (all a_ij are integers), so the phase of an element
// does not depend on the composition order.

namespace gkplat {

// exact rational phase in turns, canonically reduced into [0, 1)
class Turn {
public:
  Turn() : t_(0) {}
  explicit Turn(const Rat& q) : t_(q - Rat(rat_floor(q))) {}

  const Rat& value() const { return t_; }
  bool is_zero() const { return sgn(t_) == 0; }

  friend Turn operator+(const Turn& x, const Turn& y) { return Turn(x.t_ + y.t_); }
  friend Turn operator-(const Turn& x, const Turn& y) { return Turn(x.t_ - y.t_); }
  friend Turn operator-(const Turn& x) { return Turn(-x.t_); }

  bool operator==(const Turn&) const = default;

private:
  Rat t_;
};

using Sector = std::vector<Turn>;

class GkpCode {
public:
  GkpCode(GramMatrix gram, Sector sector) : gram_(std::move(gram)), sector_(std::move(sector)) {
    if (sector_.size() != gram_.dim())
      throw DimensionMismatch("sector length must equal the Gram dimension");
  }

  const GramMatrix& gram() const { return gram_; }
  const Sector& sector() const { return sector_; }
  std::size_t dim() const { return gram_.dim(); }
  std::size_t modes() const { return gram_.modes(); }

private:
  GramMatrix gram_;
  Sector sector_;
};

// e^{2 pi i t} D(xi) with xi given by integer primal coordinates
struct StabilizerElement {
  IntVec coords;
  Turn phase;

  bool operator==(const StabilizerElement&) const = default;
};

inline GkpCode trivial_sector(GramMatrix a) {
  Sector s(a.dim());
  return GkpCode(std::move(a), std::move(s));
}

/// Phase (in turns) of the stabilizer element with lattice coordinates m.
inline Turn phase_of_element(const GkpCode& code, const IntVec& m) {
  if (m.size() != code.dim()) throw DimensionMismatch("coordinate length mismatch");
  const IntMat& a = code.gram().matrix();
  Rat acc = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) acc += Rat(m[i]) * code.sector()[i].value();
  Int cross = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m[j] != 0) cross += m[i] * m[j] * a(i, j);
  }
  acc -= make_rat(cross, Int(2));
  return Turn(acc);
}

inline Turn phase_of_element(const GkpCode& code, const RatVec& m) {
  auto iv = as_integer_vec(m);
  if (!iv) throw NonIntegerExponent("element coordinates must be integers");
  return phase_of_element(code, *iv);
}

/// One application of the displacement composition rule.
inline StabilizerElement compose_elements(const GkpCode& code, const StabilizerElement& e1,
                                          const StabilizerElement& e2) {
  if (e1.coords.size() != code.dim() || e2.coords.size() != code.dim())
    throw DimensionMismatch("element coordinate length mismatch");
  IntVec coords(code.dim());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = e1.coords[i] + e2.coords[i];
  Int cross = quad_form(code.gram().matrix(), e1.coords, e2.coords);
  Rat phase = e1.phase.value() + e2.phase.value() - make_rat(cross, Int(2));
  return StabilizerElement{std::move(coords), Turn(phase)};
}

/// Conjugation by the displacement with dual coordinates h: each sector
/// entry shifts by -h_i.
inline GkpCode displace(const GkpCode& code, const DualCoords& h) {
  if (h.h.size() != code.dim()) throw DimensionMismatch("displacement length mismatch");
  Sector s(code.dim());
  for (std::size_t i = 0; i < s.size(); ++i)
    s[i] = Turn(code.sector()[i].value() - h.h[i]);
  return GkpCode(code.gram(), std::move(s));
}

/// Same stabilizer group presented over the basis u M: gram becomes
/// u a u^T and generator j picks up the phase of the old element with
/// coordinates row j of u.
inline GkpCode rebase(const GkpCode& code, const IntMat& u) {
  if (u.rows() != code.dim() || u.cols() != code.dim())
    throw DimensionMismatch("basis change has wrong shape");
  if (!is_unimodular(u)) throw NotUnimodular("basis change must be unimodular");
  GramMatrix gram(u * code.gram().matrix() * transpose(u));
  Sector s(code.dim());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = phase_of_element(code, u.row(j));
  return GkpCode(std::move(gram), std::move(s));
}

/// Stabilizer conjugated by the symplectic automorphism with primal
/// representation u, expressed over the original basis.  The conjugated
/// generators have coordinates given by the rows of u and unchanged phases;
/// re-expressing generator j in the original basis is a rebase by u^{-1},
/// so sector'_j is the old-code phase of the element with coordinates
/// row j of u^{-1}.
inline GkpCode conjugate_by_automorphism(const GkpCode& code, const IntMat& u) {
  if (u.rows() != code.dim() || u.cols() != code.dim())
    throw DimensionMismatch("automorphism has wrong shape");
  if (!is_gram_preserving(code.gram(), u))
    throw NotAutomorphism("matrix does not preserve the Gram matrix");
  IntMat uinv = unimodular_inverse(u);
  Sector s(code.dim());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = phase_of_element(code, uinv.row(j));
  return GkpCode(code.gram(), std::move(s));
}

/// Turn-wise equality of two codes over the same basis.
inline bool codes_equal(const GkpCode& c1, const GkpCode& c2) {
  if (!(c1.gram() == c2.gram()))
    throw GramMismatch("codes are presented over different Gram matrices");
  return c1.sector() == c2.sector();
}

}  // namespace gkplat
