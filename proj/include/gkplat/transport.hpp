#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "gkplat/clifford.hpp"
#include "gkplat/exact.hpp"
#include "gkplat/gkp_code.hpp"
#include "gkplat/lattice.hpp"
#include "gkplat/normal_form.hpp"

// Loops on the space of GKP codes as discrete path words, their lifts to
// composite logical gates, and the braid-word gate map for single-mode
// scaled codes.
//
// A word folds left to right.  The running normalizer element is kept in
// the normal form D(eta) S with primal representation u_tot and dual
// coordinates h_tot; prepending a new automorphism multiplies u_tot on the
// right (primal representations anti-compose) and maps h_tot through
// v^T = u^{-1}, and a displacement adds to h_tot.

namespace gkplat {

struct AutMove {
  IntMat u;
  bool operator==(const AutMove&) const = default;
};

struct DisplaceMove {
  DualCoords h;
  bool operator==(const DisplaceMove&) const = default;
};

struct FlowMove {
  FloatMat x;  // element of the symplectic algebra, x^T J + J x = 0
  double duration = 0.0;
  bool operator==(const FlowMove&) const = default;
};

using Move = std::variant<AutMove, DisplaceMove, FlowMove>;

struct PathWord {
  GkpCode base;
  std::vector<Move> moves;
};

struct LiftResult {
  GkpCode endpoint;
  std::optional<LogicalClifford> gate;  // present iff is_loop
  bool is_loop = false;
};

// ---------------------------------------------------------------------------
// double-precision helpers for flow snapping

namespace detail {

inline FloatMat fm_identity(std::size_t n) {
  FloatMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

inline FloatMat fm_mul(const FloatMat& a, const FloatMat& b) {
  FloatMat out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      double f = a(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) out(i, j) += f * b(k, j);
    }
  return out;
}

inline FloatMat fm_transpose(const FloatMat& a) {
  FloatMat out(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) out(j, i) = a(i, j);
  return out;
}

inline double fm_inf_norm(const FloatMat& a) {
  double best = 0.0;
  for (double x : a.v) best = std::max(best, std::fabs(x));
  return best;
}

inline FloatMat fm_scale(const FloatMat& a, double f) {
  FloatMat out = a;
  for (double& x : out.v) x *= f;
  return out;
}

inline FloatMat fm_from_int(const IntMat& m) {
  FloatMat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

// scaling-and-squaring with a convergent Taylor tail
inline FloatMat fm_expm(const FloatMat& x) {
  const std::size_t n = x.rows;
  int s = 0;
  double nrm = fm_inf_norm(x);
  while (nrm > 0.25) {
    nrm *= 0.5;
    ++s;
  }
  FloatMat a = fm_scale(x, std::ldexp(1.0, -s));
  FloatMat sum = fm_identity(n);
  FloatMat term = fm_identity(n);
  for (int k = 1; k <= 64; ++k) {
    term = fm_scale(fm_mul(term, a), 1.0 / k);
    for (std::size_t i = 0; i < sum.v.size(); ++i) sum.v[i] += term.v[i];
    if (fm_inf_norm(term) < 1e-19) break;
  }
  for (int i = 0; i < s; ++i) sum = fm_mul(sum, sum);
  return sum;
}

inline FloatMat fm_inverse(FloatMat a) {
  const std::size_t n = a.rows;
  FloatMat inv = fm_identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::fabs(a(r, k)) > std::fabs(a(piv, k))) piv = r;
    if (a(piv, k) == 0.0) throw std::logic_error("singular embedding matrix");
    if (piv != k)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(k, c));
        std::swap(inv(piv, c), inv(k, c));
      }
    double p = a(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      a(k, c) /= p;
      inv(k, c) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k || a(r, k) == 0.0) continue;
      double f = a(r, k);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(k, c);
        inv(r, c) -= f * inv(k, c);
      }
    }
  }
  return inv;
}

// defect of membership in the symplectic algebra, |x^T J + J x|_max
inline double symplectic_algebra_defect(const FloatMat& x) {
  const std::size_t n = x.rows / 2;
  double worst = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.rows; ++j) {
      // (J x)_{ij} = x_{n+i,j} for i < n, -x_{i-n,j} otherwise;
      // (x^T J)_{ij} = -x_{n+j,i} for j < n, x_{j-n,i} otherwise
      double jx = i < n ? x(n + i, j) : -x(i - n, j);
      double xtj = j < n ? -x(n + j, i) : x(j - n, i);
      worst = std::max(worst, std::fabs(jx + xtj));
    }
  return worst;
}

// Converts the real symplectic endpoint of a flow run into a primal-basis
// unimodular matrix via a floating-point embedding generator built from the
// Frobenius decomposition: M = w^{-1} diag(sqrt d, sqrt d), u = M S^T M^{-1}.
inline IntMat snap_to_automorphism(const GramMatrix& a, const FloatMat& s_real, double tol) {
  const std::size_t N = a.dim(), n = a.modes();
  FrobeniusDecomposition fd = frobenius_form(a);
  FloatMat delta(N, N), delta_inv(N, N);
  for (std::size_t i = 0; i < n; ++i) {
    double root = std::sqrt(fd.type.entries()[i].get_d());
    delta(i, i) = delta(n + i, n + i) = root;
    delta_inv(i, i) = delta_inv(n + i, n + i) = 1.0 / root;
  }
  FloatMat m = fm_mul(fm_from_int(unimodular_inverse(fd.u)), delta);
  FloatMat m_inv = fm_mul(delta_inv, fm_from_int(fd.u));
  FloatMat uf = fm_mul(fm_mul(m, fm_transpose(s_real)), m_inv);

  IntMat u(N, N);
  double worst = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      double r = std::round(uf(i, j));
      worst = std::max(worst, std::fabs(uf(i, j) - r));
      u(i, j) = Int(r);
    }
  if (worst >= tol)
    throw SnapFailed("flow endpoint is not near a lattice automorphism (residual " +
                     std::to_string(worst) + ")");
  if (!is_gram_preserving(a, u))
    throw SnapFailed("rounded flow endpoint does not preserve the Gram matrix");
  return u;
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// Fold a word over its base code.  Aut and Displace moves are exact; Flow
/// moves must be converted with snap_flow first.  When the word is a loop,
/// the accumulated normalizer element is extracted as a logical gate.
inline LiftResult lift(const PathWord& word) {
  GkpCode cur = word.base;
  IntMat u_tot = IntMat::identity(word.base.dim());
  RatVec h_tot(word.base.dim(), Rat(0));

  for (const Move& move : word.moves) {
    if (std::holds_alternative<FlowMove>(move))
      throw InvalidMove("flow moves must be snapped (snap_flow) before lifting");
    if (const auto* am = std::get_if<AutMove>(&move)) {
      if (am->u.rows() != word.base.dim() || am->u.cols() != word.base.dim())
        throw InvalidMove("automorphism move has wrong shape");
      if (!is_gram_preserving(word.base.gram(), am->u))
        throw InvalidMove("automorphism move does not preserve the base Gram matrix");
      cur = conjugate_by_automorphism(cur, am->u);
      u_tot = u_tot * am->u;
      h_tot = unimodular_inverse(am->u) * h_tot;
    } else {
      const auto& dm = std::get<DisplaceMove>(move);
      if (dm.h.h.size() != word.base.dim())
        throw InvalidMove("displacement move has wrong length");
      cur = displace(cur, dm.h);
      for (std::size_t i = 0; i < h_tot.size(); ++i) h_tot[i] += dm.h.h[i];
    }
  }

  bool loop = codes_equal(cur, word.base);
  std::optional<LogicalClifford> gate;
  if (loop) gate = logical_action(word.base, DualCoords{h_tot}, u_tot);
  return LiftResult{std::move(cur), std::move(gate), loop};
}

/// Concatenation; w2 must be based at the endpoint of w1.
inline PathWord concat(const PathWord& w1, const PathWord& w2) {
  GkpCode end1 = lift(w1).endpoint;
  bool match = end1.gram() == w2.base.gram() && end1.sector() == w2.base.sector();
  if (!match) throw BaseMismatch("second word is not based at the endpoint of the first");
  PathWord out{w1.base, w1.moves};
  out.moves.insert(out.moves.end(), w2.moves.begin(), w2.moves.end());
  return out;
}

/// Word reversal: inverted moves in reverse order, based at the endpoint.
inline PathWord reverse(const PathWord& w) {
  PathWord out{lift(w).endpoint, {}};
  out.moves.reserve(w.moves.size());
  for (auto it = w.moves.rbegin(); it != w.moves.rend(); ++it) {
    if (const auto* am = std::get_if<AutMove>(&*it)) {
      out.moves.push_back(AutMove{unimodular_inverse(am->u)});
    } else if (const auto* dm = std::get_if<DisplaceMove>(&*it)) {
      RatVec h(dm->h.h.size());
      for (std::size_t i = 0; i < h.size(); ++i) h[i] = -dm->h.h[i];
      out.moves.push_back(DisplaceMove{DualCoords{std::move(h)}});
    } else {
      const auto& fm = std::get<FlowMove>(*it);
      out.moves.push_back(FlowMove{detail::fm_scale(fm.x, -1.0), fm.duration});
    }
  }
  return out;
}

/// Braid-word gate on the single-mode code of Gram [[0,d],[-d,0]].
/// Generators 1 and 2 map to the automorphisms [[1,1],[0,1]] and
/// [[1,0],[-1,1]] (negative symbols to their inverses); each automorphism is
/// followed by the sector-fixing displacement, so every prefix of the word
/// is a loop at the base code.
inline LogicalClifford braid_to_gate(const Int& d, const std::vector<int>& word) {
  std::vector<Int> dd{d};
  GkpCode base = trivial_sector(standard_gram(LatticeType(std::move(dd))));

  IntMat shear_q(2, 2), shear_p(2, 2);
  shear_q(0, 0) = 1; shear_q(0, 1) = 1; shear_q(1, 0) = 0;  shear_q(1, 1) = 1;
  shear_p(0, 0) = 1; shear_p(0, 1) = 0; shear_p(1, 0) = -1; shear_p(1, 1) = 1;

  PathWord path{base, {}};
  for (int g : word) {
    IntMat u;
    switch (g) {
      case 1: u = shear_q; break;
      case 2: u = shear_p; break;
      case -1: u = unimodular_inverse(shear_q); break;
      case -2: u = unimodular_inverse(shear_p); break;
      default: throw InvalidGenerator("braid symbols must lie in {1, 2, -1, -2}");
    }
    path.moves.push_back(AutMove{u});
    path.moves.push_back(DisplaceMove{eta_s(base, u)});
  }
  LiftResult lr = lift(path);
  if (!lr.is_loop) throw std::logic_error("braid word failed to close");
  return *lr.gate;
}

/// Replace every maximal run of Flow moves by the automorphism its endpoint
/// snaps to.  Each flow contributes exp(x * duration); the run endpoint is
/// converted through the floating-point Frobenius embedding and rounded.
inline PathWord snap_flow(const PathWord& word, double tol = 1e-6) {
  if (!(tol > 0)) throw ParseError("tolerance must be positive");
  const std::size_t N = word.base.dim();
  PathWord out{word.base, {}};

  std::optional<FloatMat> run;  // accumulated real symplectic endpoint
  auto flush = [&] {
    if (!run) return;
    out.moves.push_back(AutMove{detail::snap_to_automorphism(word.base.gram(), *run, tol)});
    run.reset();
  };

  for (const Move& move : word.moves) {
    if (const auto* fm = std::get_if<FlowMove>(&move)) {
      if (fm->x.rows != N || fm->x.cols != N) throw InvalidMove("flow matrix has wrong shape");
      double defect = detail::symplectic_algebra_defect(fm->x);
      if (defect >= tol * std::max(1.0, detail::fm_inf_norm(fm->x)))
        throw InvalidMove("flow generator is not in the symplectic algebra (defect " +
                          std::to_string(defect) + ")");
      FloatMat step = detail::fm_expm(detail::fm_scale(fm->x, fm->duration));
      run = run ? detail::fm_mul(step, *run) : step;  // later flows act on the left
    } else {
      flush();
      out.moves.push_back(move);
    }
  }
  flush();
  return out;
}

}  // namespace gkplat
