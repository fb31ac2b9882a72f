#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "gkplat/errors.hpp"

// Exact integer and rational linear algebra.  Every quantity in the library
// is an arbitrary-precision integer (mpz) or a canonical rational (mpq,
// lowest terms, positive denominator); floating point only enters through
// FloatMat at the numeric boundary.

namespace gkplat {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// floor quotient / remainder; floor_mod(a, b) lies in [0, b) for b > 0
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int floor_mod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool divisible(const Int& a, const Int& b) {
  return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
}

inline Rat make_rat(const Int& num, const Int& den) {
  if (sgn(den) == 0) throw ParseError("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int rat_floor(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }

inline std::optional<IntVec> as_integer_vec(const RatVec& v) {
  IntVec out;
  out.reserve(v.size());
  for (const Rat& q : v) {
    if (!is_integer(q)) return std::nullopt;
    out.push_back(q.get_num());
  }
  return out;
}

inline RatVec to_rat_vec(const IntVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (const Int& x : v) out.emplace_back(x);
  return out;
}

// ---------------------------------------------------------------------------
// dense matrices, row-major

class IntMat {
public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), v_(rows * cols) {}

  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }

  IntVec row(std::size_t r) const {
    IntVec out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
    return out;
  }

  bool operator==(const IntMat&) const = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> v_;
};

class RatMat {
public:
  RatMat() = default;
  RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), v_(rows * cols) {}

  static RatMat identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }

  bool operator==(const RatMat&) const = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> v_;
};

// double-precision matrix for the numeric I/O boundary
struct FloatMat {
  std::size_t rows = 0, cols = 0;
  std::vector<double> v;

  FloatMat() = default;
  FloatMat(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return v[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return v[r * cols + c]; }

  bool operator==(const FloatMat&) const = default;
};

inline RatMat to_rat(const IntMat& m) {
  RatMat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
  return out;
}

inline IntMat transpose(const IntMat& m) {
  IntMat out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

inline IntMat operator*(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape");
  IntMat out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

inline RatMat operator*(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape");
  RatMat out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

inline IntVec operator*(const IntMat& m, const IntVec& x) {
  if (m.cols() != x.size()) throw DimensionMismatch("matrix-vector shape");
  IntVec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * x[j];
  return out;
}

inline RatVec operator*(const IntMat& m, const RatVec& x) {
  if (m.cols() != x.size()) throw DimensionMismatch("matrix-vector shape");
  RatVec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += Rat(m(i, j)) * x[j];
  return out;
}

inline RatVec operator*(const RatMat& m, const RatVec& x) {
  if (m.cols() != x.size()) throw DimensionMismatch("matrix-vector shape");
  RatVec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * x[j];
  return out;
}

inline RatMat negate(const RatMat& m) {
  RatMat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = -m(i, j);
  return out;
}

// x^T a y
inline Int quad_form(const IntMat& a, const IntVec& x, const IntVec& y) {
  if (a.rows() != x.size() || a.cols() != y.size()) throw DimensionMismatch("quadratic form shape");
  Int acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) acc += x[i] * a(i, j) * y[j];
  }
  return acc;
}

inline Rat quad_form(const IntMat& a, const RatVec& x, const RatVec& y) {
  if (a.rows() != x.size() || a.cols() != y.size()) throw DimensionMismatch("quadratic form shape");
  Rat acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) acc += x[i] * Rat(a(i, j)) * y[j];
  }
  return acc;
}

// ---------------------------------------------------------------------------
// determinants, inverses, solving

// fraction-free Bareiss elimination
inline Int det(const IntMat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMat b = m;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t r = k;
    while (r < n && b(r, k) == 0) ++r;
    if (r == n) return 0;
    if (r != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(b(r, c), b(k, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = b(i, j) * b(k, k) - b(i, k) * b(k, j);
        mpz_divexact(b(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      b(i, k) = 0;
    }
    prev = b(k, k);
  }
  Int d = b(n - 1, n - 1);
  if (sign < 0) d = -d;
  return d;
}

/// det(u) in {+1, -1}
inline bool is_unimodular(const IntMat& u) {
  if (u.rows() != u.cols()) throw DimensionMismatch("unimodularity of non-square matrix");
  Int d = det(u);
  return d == 1 || d == -1;
}

/// Exact inverse over the rationals.  Throws SingularMatrix when det = 0.
inline RatMat rat_inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMat a = m;
  RatMat inv = RatMat::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && sgn(a(r, k)) == 0) ++r;
    if (r == n) throw SingularMatrix("matrix has no inverse");
    if (r != k)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(r, c), a(k, c));
        std::swap(inv(r, c), inv(k, c));
      }
    Rat piv = a(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      a(k, c) /= piv;
      inv(k, c) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || sgn(a(i, k)) == 0) continue;
      Rat f = a(i, k);
      for (std::size_t c = 0; c < n; ++c) {
        a(i, c) -= f * a(k, c);
        inv(i, c) -= f * inv(k, c);
      }
    }
  }
  return inv;
}

inline RatMat rat_inverse(const IntMat& m) { return rat_inverse(to_rat(m)); }

/// Integer inverse of a unimodular matrix.
inline IntMat unimodular_inverse(const IntMat& u) {
  if (!is_unimodular(u)) throw NotUnimodular("matrix determinant is not +1 or -1");
  RatMat r = rat_inverse(u);
  IntMat out(u.rows(), u.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) out(i, j) = r(i, j).get_num();
  return out;
}

/// Solve a x = b over the rationals (a square nonsingular).
inline RatVec solve_rational(const IntMat& a, const RatVec& b) {
  if (a.rows() != a.cols()) throw DimensionMismatch("solve with non-square matrix");
  if (a.rows() != b.size()) throw DimensionMismatch("solve shape");
  const std::size_t n = a.rows();
  RatMat m = to_rat(a);
  RatVec x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && sgn(m(r, k)) == 0) ++r;
    if (r == n) throw SingularMatrix("linear system is singular");
    if (r != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(r, c), m(k, c));
      std::swap(x[r], x[k]);
    }
    Rat piv = m(k, k);
    for (std::size_t c = k; c < n; ++c) m(k, c) /= piv;
    x[k] /= piv;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(m(i, k)) == 0) continue;
      Rat f = m(i, k);
      for (std::size_t c = k; c < n; ++c) m(i, c) -= f * m(k, c);
      x[i] -= f * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;)
    for (std::size_t j = k + 1; j < n; ++j) x[k] -= m(k, j) * x[j];
  return x;
}

/// Integer solution x of a x = b, or nullopt when the unique rational
/// solution has a non-integer entry.
inline std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b) {
  RatVec x = solve_rational(a, to_rat_vec(b));
  return as_integer_vec(x);
}

}  // namespace gkplat
