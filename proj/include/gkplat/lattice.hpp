#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "gkplat/exact.hpp"

// Symplectically integral lattices represented intrinsically by their Gram
// matrix.  The ambient coordinate convention is qqpp throughout: the
// symplectic form is J = [[0, I], [-I, 0]] and "standard form" means the
// block matrix [[0, D], [-D, 0]].
//
// Coordinates of a point x against the stored basis M are primal (x = c^T M);
// coordinates against the canonical dual basis M_dual (M_dual J M^T = I) are
// dual (x = h^T M_dual).  The two are linked by M = A M_dual, hence h = -A c.

namespace gkplat {

class GramMatrix {
public:
  explicit GramMatrix(IntMat a) : a_(std::move(a)) {
    if (a_.rows() == 0 || a_.rows() != a_.cols() || a_.rows() % 2 != 0)
      throw DimensionMismatch("Gram matrix must be square of even positive dimension");
    for (std::size_t i = 0; i < a_.rows(); ++i) {
      if (a_(i, i) != 0) throw NotAntisymmetric("nonzero diagonal entry");
      for (std::size_t j = i + 1; j < a_.cols(); ++j)
        if (a_(i, j) != -a_(j, i)) throw NotAntisymmetric("a(i,j) != -a(j,i)");
    }
    det_ = det(a_);
    if (sgn(det_) == 0) throw Degenerate("Gram matrix is singular");
    // det of a nondegenerate antisymmetric integer matrix is a positive
    // perfect square (the Pfaffian squared)
    if (sgn(det_) < 0 || mpz_perfect_square_p(det_.get_mpz_t()) == 0)
      throw Degenerate("determinant is not a perfect square");
  }

  std::size_t dim() const { return a_.rows(); }
  std::size_t modes() const { return a_.rows() / 2; }
  const IntMat& matrix() const { return a_; }
  const Int& determinant() const { return det_; }

  bool operator==(const GramMatrix& o) const { return a_ == o.a_; }

private:
  IntMat a_;
  Int det_;
};

// coordinate vectors against the primal / canonical dual basis
struct PrimalCoords {
  RatVec c;
  bool operator==(const PrimalCoords&) const = default;
};

struct DualCoords {
  RatVec h;
  bool operator==(const DualCoords&) const = default;
};

/// Gram matrix A = M J M^T of a floating-point generator, rounded to
/// integers.  Fails with NotIntegral when any entry is further than tol from
/// an integer.
inline GramMatrix gram_from_generator(const FloatMat& m, double tol = 1e-6) {
  if (m.rows == 0 || m.rows != m.cols || m.rows % 2 != 0)
    throw DimensionMismatch("generator must be square of even positive dimension");
  if (!(tol > 0)) throw ParseError("tolerance must be positive");
  const std::size_t n = m.rows / 2;
  const std::size_t N = m.rows;
  IntMat a(N, N);
  double worst = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      // row_i(m)^T J row_j(m) with J in qqpp layout
      double g = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        g += m(i, k) * m(j, n + k) - m(i, n + k) * m(j, k);
      double r = std::round(g);
      worst = std::max(worst, std::fabs(g - r));
      a(i, j) = Int(r);
    }
  if (worst >= tol)
    throw NotIntegral("symplectic products are not integral (max residual " +
                      std::to_string(worst) + ")");
  return GramMatrix(std::move(a));
}

/// Gram matrix of the canonical dual basis, -A^{-1}.
inline RatMat dual_gram(const GramMatrix& a) { return negate(rat_inverse(a.matrix())); }

inline DualCoords primal_to_dual(const GramMatrix& a, const PrimalCoords& p) {
  RatVec h = a.matrix() * p.c;
  for (Rat& q : h) q = -q;
  return DualCoords{std::move(h)};
}

inline PrimalCoords dual_to_primal(const GramMatrix& a, const DualCoords& d) {
  RatVec rhs(d.h.size());
  for (std::size_t i = 0; i < d.h.size(); ++i) rhs[i] = -d.h[i];
  return PrimalCoords{solve_rational(a.matrix(), rhs)};
}

/// x^T A y for primal coordinate vectors x, y.
inline Rat symplectic_product(const GramMatrix& a, const PrimalCoords& x, const PrimalCoords& y) {
  return quad_form(a.matrix(), x.c, y.c);
}

inline bool is_even(const GramMatrix& a) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (floor_mod(a.matrix()(i, j), 2) != 0) return false;
  return true;
}

}  // namespace gkplat
