#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "gkplat/exact.hpp"
#include "gkplat/lattice.hpp"

// Unique normal form of a Gram matrix under unimodular congruence
// u a u^T and the derived classification of lattices by type.

namespace gkplat {

// Positive integers d_1 >= ... >= d_n with d_{i+1} | d_i.
class LatticeType {
public:
  explicit LatticeType(std::vector<Int> d) : d_(std::move(d)) {
    if (d_.empty()) throw InvalidType("type must have at least one entry");
    for (const Int& x : d_)
      if (sgn(x) <= 0) throw InvalidType("type entries must be positive");
    for (std::size_t i = 0; i + 1 < d_.size(); ++i)
      if (!divisible(d_[i], d_[i + 1]))
        throw InvalidType("divisibility chain violated: d[i+1] must divide d[i]");
  }

  const std::vector<Int>& entries() const { return d_; }
  std::size_t modes() const { return d_.size(); }

  // type entry governing vector slot i in 0..2n-1 (slots i and n+i share d_i)
  const Int& slot(std::size_t i) const { return d_[i < d_.size() ? i : i - d_.size()]; }

  Int label_count() const {
    Int c = 1;
    for (const Int& x : d_) c *= x * x;
    return c;
  }

  bool operator==(const LatticeType&) const = default;

private:
  std::vector<Int> d_;
};

struct FrobeniusDecomposition {
  IntMat u;          // unimodular certificate, u a u^T = [[0,D],[-D,0]]
  LatticeType type;  // the diagonal of D
};

/// The standard-form Gram matrix [[0, D], [-D, 0]] of a type.
inline GramMatrix standard_gram(const LatticeType& d) {
  const std::size_t n = d.modes();
  IntMat a(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, n + i) = d.entries()[i];
    a(n + i, i) = -d.entries()[i];
  }
  return GramMatrix(std::move(a));
}

namespace detail {

// Congruence steps: every row operation on b is mirrored on columns, so b
// stays antisymmetric and equal to u0 * a * u0^T for the accumulated u0.

inline void rc_add(IntMat& b, IntMat& u, std::size_t i, std::size_t j, const Int& c) {
  const std::size_t n = b.rows();
  for (std::size_t t = 0; t < n; ++t) b(i, t) += c * b(j, t);
  for (std::size_t t = 0; t < n; ++t) b(t, i) += c * b(t, j);
  for (std::size_t t = 0; t < n; ++t) u(i, t) += c * u(j, t);
}

inline void rc_swap(IntMat& b, IntMat& u, std::size_t i, std::size_t j) {
  const std::size_t n = b.rows();
  for (std::size_t t = 0; t < n; ++t) std::swap(b(i, t), b(j, t));
  for (std::size_t t = 0; t < n; ++t) std::swap(b(t, i), b(t, j));
  for (std::size_t t = 0; t < n; ++t) std::swap(u(i, t), u(j, t));
}

inline void rc_negate(IntMat& b, IntMat& u, std::size_t i) {
  const std::size_t n = b.rows();
  for (std::size_t t = 0; t < n; ++t) b(i, t) = -b(i, t);
  for (std::size_t t = 0; t < n; ++t) b(t, i) = -b(t, i);
  for (std::size_t t = 0; t < n; ++t) u(i, t) = -u(i, t);
}

// recognizes matrices already in standard form with a valid chain
inline std::optional<std::vector<Int>> read_standard_type(const IntMat& a) {
  const std::size_t n = a.rows() / 2;
  std::vector<Int> d(n);
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) {
      bool diag_block = (j == i + n) || (i == j + n);
      if (!diag_block && a(i, j) != 0) return std::nullopt;
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a(i, n + i)) <= 0) return std::nullopt;
    d[i] = a(i, n + i);
  }
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!divisible(d[i], d[i + 1])) return std::nullopt;
  return d;
}

}  // namespace detail

/// Skew Smith-type reduction of a Gram matrix by unimodular congruence.
///
/// Repeatedly selects the entry of minimal absolute value as pivot, moves it
/// to the leading 2x2 block, clears its row pair, and absorbs any entry of
/// the trailing submatrix that the pivot does not divide.  Each block split
/// therefore carries a pivot dividing everything that follows, which yields
/// hyperbolic pairs alpha_1 | alpha_2 | ... | alpha_n.  Sign flips make all
/// pivots positive and a final permutation rewrites the interleaved pairs in
/// the qqpp layout with the diagonal non-increasing.
inline FrobeniusDecomposition frobenius_form(const GramMatrix& a) {
  const IntMat& A = a.matrix();
  const std::size_t N = a.dim(), n = a.modes();

  if (auto d = detail::read_standard_type(A))
    return {IntMat::identity(N), LatticeType(std::move(*d))};

  IntMat b = A;
  IntMat u = IntMat::identity(N);

  for (std::size_t k = 0; k + 1 < N; k += 2) {
    for (;;) {
      // minimal |entry| in the trailing submatrix, lowest (row, col) on ties
      std::size_t pi = 0, pj = 0;
      bool found = false;
      Int best;
      for (std::size_t i = k; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
          if (b(i, j) == 0) continue;
          Int m = abs(b(i, j));
          if (!found || m < best) {
            best = m;
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) throw Degenerate("reduction hit a zero block");
      if (pi != k) detail::rc_swap(b, u, pi, k);
      if (pj != k + 1) detail::rc_swap(b, u, pj, k + 1);
      const Int p = b(k, k + 1);

      bool clean = true;
      for (std::size_t j = k + 2; j < N; ++j) {
        Int q = floor_div(b(k, j), p);
        if (q != 0) detail::rc_add(b, u, j, k + 1, -q);
        if (b(k, j) != 0) clean = false;
        q = floor_div(b(k + 1, j), p);
        if (q != 0) detail::rc_add(b, u, j, k, q);
        if (b(k + 1, j) != 0) clean = false;
      }
      if (!clean) continue;  // smaller entries appeared, re-select the pivot

      bool absorbed = false;
      for (std::size_t i = k + 2; i < N && !absorbed; ++i)
        for (std::size_t j = i + 1; j < N && !absorbed; ++j)
          if (!divisible(b(i, j), p)) {
            detail::rc_add(b, u, k, i, Int(1));
            absorbed = true;
          }
      if (!absorbed) break;
    }
  }

  for (std::size_t t = 0; t < n; ++t)
    if (sgn(b(2 * t, 2 * t + 1)) < 0) detail::rc_negate(b, u, 2 * t + 1);

  // interleaved pair t sits at rows (2t, 2t+1); pair n-1-i becomes mode i
  std::vector<std::size_t> src(N);
  for (std::size_t i = 0; i < n; ++i) {
    src[i] = 2 * (n - 1 - i);
    src[n + i] = 2 * (n - 1 - i) + 1;
  }
  IntMat uf(N, N);
  std::vector<Int> d(n);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) uf(i, j) = u(src[i], j);
  for (std::size_t i = 0; i < n; ++i) d[i] = b(src[i], src[i] + 1);

  FrobeniusDecomposition out{std::move(uf), LatticeType(std::move(d))};
  if (out.u * A * transpose(out.u) != standard_gram(out.type).matrix())
    throw std::logic_error("frobenius_form: certificate check failed");
  return out;
}

/// The unique invariant of a under unimodular congruence.
inline LatticeType lattice_type(const GramMatrix& a) { return frobenius_form(a).type; }

inline bool symplectically_equivalent(const GramMatrix& a1, const GramMatrix& a2) {
  if (a1.modes() != a2.modes()) throw DimensionMismatch("mode counts differ");
  return lattice_type(a1) == lattice_type(a2);
}

/// True iff u is unimodular and u a u^T = a, i.e. the basis change is
/// implementable by a symplectic map fixing the lattice.
inline bool is_gram_preserving(const GramMatrix& a, const IntMat& u) {
  if (u.rows() != a.dim() || u.cols() != a.dim())
    throw DimensionMismatch("automorphism candidate has wrong shape");
  if (!is_unimodular(u)) return false;
  return u * a.matrix() * transpose(u) == a.matrix();
}

}  // namespace gkplat
