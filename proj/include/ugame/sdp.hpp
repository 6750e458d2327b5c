#pragma once

// Interior-point solver for the single SDP shape needed here:
//
//   minimize  Tr H   over 2x2 Hermitian H
//   subject to Lift_i(H) >= A_i  for every constraint i,
//
// where Lift_i is either the identity (A_i is 2x2) or H -> H (x) I_n (A_i is
// 2n x 2n). The first covers minimum-error discrimination of qubit
// ensembles, the second the conditional min-entropy of a qubit-conditioned
// bipartite state.
//
// Log-det barrier path following on the real coordinates
// h = (H00, H11, Re H01, Im H10), damped Newton centering, mu /= 20 per outer
// step, stop once the central-path duality-gap bound mu * sum_i dim(slack_i)
// drops below tol.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ugame/linalg.hpp"

namespace ugame {

enum class LiftKind { Identity, TensorIdentity };

struct TraceMinConstraint {
  LiftKind lift = LiftKind::Identity;
  std::size_t lift_dim = 1;  // n for TensorIdentity, 1 for Identity
  CMatrix bound;

  static TraceMinConstraint identity(CMatrix bound) { return {LiftKind::Identity, 1, std::move(bound)}; }
  static TraceMinConstraint tensor_identity(std::size_t n, CMatrix bound) {
    return {LiftKind::TensorIdentity, n, std::move(bound)};
  }

  std::size_t slack_dim() const { return 2 * lift_dim; }
};

class TraceMinProblem {
 public:
  explicit TraceMinProblem(std::vector<TraceMinConstraint> constraints) : constraints_(std::move(constraints)) {
    if (constraints_.empty()) throw LinalgError("TraceMinProblem: at least one constraint required");
    for (auto& c : constraints_) {
      if (c.lift == LiftKind::Identity) c.lift_dim = 1;
      if (c.lift_dim == 0) throw LinalgError("TraceMinProblem: lift dimension must be positive");
      if (c.bound.rows() != c.slack_dim() || c.bound.cols() != c.slack_dim())
        throw LinalgError("TraceMinProblem: bound dimension inconsistent with lift");
      if (!c.bound.is_hermitian(kHermitianTol)) throw LinalgError("TraceMinProblem: bound is not Hermitian");
      c.bound = c.bound.hermitian_part();
    }
  }

  /// All-identity-lift problem with the given 2x2 bounds.
  static TraceMinProblem dominating(const std::vector<CMatrix>& bounds) {
    std::vector<TraceMinConstraint> cs;
    cs.reserve(bounds.size());
    for (const auto& b : bounds) cs.push_back(TraceMinConstraint::identity(b));
    return TraceMinProblem(std::move(cs));
  }

  const std::vector<TraceMinConstraint>& constraints() const { return constraints_; }

 private:
  std::vector<TraceMinConstraint> constraints_;
};

struct TraceMinSolution {
  CMatrix optimum;            // 2x2 Hermitian
  double value = 0.0;         // Tr optimum
  double min_slack = 0.0;     // smallest eigenvalue over all slacks
  int iterations = 0;         // Newton steps
  double barrier_mu_final = 0.0;
  std::vector<CMatrix> multipliers;  // mu * slack^{-1}, one per constraint
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, CMatrix last_iterate, double last_value, int iterations, double mu,
              double newton_decrement)
      : std::runtime_error(what),
        last_iterate(std::move(last_iterate)),
        last_value(last_value),
        iterations(iterations),
        mu(mu),
        newton_decrement(newton_decrement) {}

  CMatrix last_iterate;
  double last_value;
  int iterations;
  double mu;
  double newton_decrement;
};

struct FeasibilityReport {
  bool feasible = false;
  double min_slack = 0.0;
};

inline constexpr int kMaxNewtonSteps = 200;

namespace detail {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

// 2x2 complex matrix stored row-major; the identity-lift hot path.
struct M2 {
  Complex a, b, c, e;  // [[a, b], [c, e]]
};

inline M2 mul(const M2& x, const M2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.e, x.c * y.a + x.e * y.c, x.c * y.b + x.e * y.e};
}
inline Complex tr(const M2& x) { return x.a + x.e; }

// Basis of 2x2 Hermitian matrices matching the coordinates h.
inline const std::array<M2, 4>& basis2() {
  static const std::array<M2, 4> b = {M2{1.0, 0.0, 0.0, 0.0}, M2{0.0, 0.0, 0.0, 1.0},
                                      M2{0.0, 1.0, 1.0, 0.0}, M2{0.0, Complex(0, -1), Complex(0, 1), 0.0}};
  return b;
}

inline CMatrix to_matrix(const Vec4& h) {
  return {{h[0], Complex(h[2], -h[3])}, {Complex(h[2], h[3]), h[1]}};
}

inline CMatrix lift(const CMatrix& h, const TraceMinConstraint& c) {
  return c.lift == LiftKind::Identity ? h : kron(h, CMatrix::identity(c.lift_dim));
}

struct BarrierEval {
  bool feasible = false;
  double value = 0.0;  // t Tr H - sum log det S_i
  Vec4 grad{};
  Mat4 hess{};
};

// Evaluates the barrier objective; derivatives only when `derivs` is set.
// `inverses` receives S_i^{-1} when non-null.
inline BarrierEval evaluate(const TraceMinProblem& p, const Vec4& h, double t, bool derivs,
                            std::vector<CMatrix>* inverses = nullptr) {
  BarrierEval ev;
  ev.value = t * (h[0] + h[1]);
  if (derivs) {
    ev.grad = {t, t, 0.0, 0.0};
  }
  if (inverses) inverses->clear();
  const auto& basis = basis2();
  for (const auto& c : p.constraints()) {
    if (c.lift == LiftKind::Identity) {
      const CMatrix& A = c.bound;
      const double s00 = h[0] - A(0, 0).real();
      const double s11 = h[1] - A(1, 1).real();
      const Complex s01 = Complex(h[2], -h[3]) - A(0, 1);
      const double det = s00 * s11 - std::norm(s01);
      if (!(s00 > 0.0) || !(s11 > 0.0) || !(det > 0.0)) return ev;
      ev.value -= std::log(det);
      const M2 w{s11 / det, -s01 / det, -std::conj(s01) / det, s00 / det};
      if (inverses) inverses->push_back(CMatrix{{w.a, w.b}, {w.c, w.e}});
      if (!derivs) continue;
      std::array<M2, 4> pk;
      for (int k = 0; k < 4; ++k) {
        pk[k] = mul(w, basis[k]);
        ev.grad[k] -= tr(pk[k]).real();
      }
      for (int k = 0; k < 4; ++k)
        for (int l = k; l < 4; ++l) ev.hess[k][l] += tr(mul(pk[k], pk[l])).real();
    } else {
      const CMatrix s = lift(to_matrix(h), c) - c.bound;
      CMatrix lower;
      if (!cholesky(s, lower)) return ev;
      ev.value -= cholesky_logdet(lower);
      const CMatrix w = cholesky_inverse(lower);
      if (inverses) inverses->push_back(w);
      if (!derivs) continue;
      const std::size_t n = c.lift_dim;
      std::array<CMatrix, 4> pk;
      for (int k = 0; k < 4; ++k) {
        const M2& e = basis[k];
        pk[k] = w * kron(CMatrix{{e.a, e.b}, {e.c, e.e}}, CMatrix::identity(n));
        ev.grad[k] -= pk[k].trace().real();
      }
      const std::size_t m = 2 * n;
      for (int k = 0; k < 4; ++k)
        for (int l = k; l < 4; ++l) {
          Complex s2 = 0.0;
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) s2 += pk[k](i, j) * pk[l](j, i);
          ev.hess[k][l] += s2.real();
        }
    }
  }
  if (derivs)
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < k; ++l) ev.hess[k][l] = ev.hess[l][k];
  ev.feasible = true;
  return ev;
}

// Solves hess * x = rhs by Gaussian elimination with partial pivoting.
inline bool solve4(Mat4 a, Vec4 rhs, Vec4& x) {
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (!(std::abs(a[piv][col]) > 0.0)) return false;
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = col + 1; r < 4; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int k = col; k < 4; ++k) a[r][k] -= f * a[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  for (int r = 3; r >= 0; --r) {
    double s = rhs[r];
    for (int k = r + 1; k < 4; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

inline double max_eig_bound(const CMatrix& a) {
  if (a.rows() == 2) {
    const double tr = a(0, 0).real() + a(1, 1).real();
    const double diff = a(0, 0).real() - a(1, 1).real();
    return 0.5 * (tr + std::sqrt(diff * diff + 4.0 * std::norm(a(0, 1))));
  }
  return max_eigenvalue(a);
}

}  // namespace detail

/// Min eigenvalue over all slacks Lift_i(H) - A_i; feasible iff >= -slack_tol.
inline FeasibilityReport is_feasible(const CMatrix& h, const TraceMinProblem& problem, double slack_tol) {
  if (h.rows() != 2 || h.cols() != 2) throw LinalgError("is_feasible: H must be 2x2");
  if (!h.is_hermitian()) throw LinalgError("is_feasible: H must be Hermitian");
  double min_slack = std::numeric_limits<double>::infinity();
  for (const auto& c : problem.constraints()) {
    const CMatrix s = (detail::lift(h.hermitian_part(), c) - c.bound).hermitian_part();
    min_slack = std::min(min_slack, min_eigenvalue(s));
  }
  return {min_slack >= -slack_tol, min_slack};
}

inline TraceMinSolution solve_trace_min(const TraceMinProblem& problem, double tol = 1e-9) {
  if (!(tol >= 1e-12 && tol <= 1e-3)) throw LinalgError("solve_trace_min: tol must lie in [1e-12, 1e-3]");
  using detail::Vec4;

  double start = 0.0;
  double total_dim = 0.0;
  bool first = true;
  for (const auto& c : problem.constraints()) {
    const double m = detail::max_eig_bound(c.bound);
    start = first ? m : std::max(start, m);
    first = false;
    total_dim += static_cast<double>(c.slack_dim());
  }
  Vec4 h{start + 1.0, start + 1.0, 0.0, 0.0};

  double t = 1.0;
  int steps = 0;
  double decrement = 0.0;
  for (;;) {
    // Centering.
    for (;;) {
      const auto ev = detail::evaluate(problem, h, t, true);
      if (!ev.feasible)
        throw SolverError("solve_trace_min: iterate left the feasible region", detail::to_matrix(h), h[0] + h[1],
                          steps, 1.0 / t, decrement);
      Vec4 neg{-ev.grad[0], -ev.grad[1], -ev.grad[2], -ev.grad[3]};
      Vec4 dx{};
      if (!detail::solve4(ev.hess, neg, dx)) break;
      double lambda2 = 0.0;
      for (int k = 0; k < 4; ++k) lambda2 -= ev.grad[k] * dx[k];
      decrement = lambda2;
      // Approximate centering is enough; the duality-gap bound absorbs it.
      if (!(lambda2 > 1e-10)) break;

      if (++steps > kMaxNewtonSteps)
        throw SolverError("solve_trace_min: Newton step budget exhausted", detail::to_matrix(h), h[0] + h[1],
                          steps - 1, 1.0 / t, decrement);

      double step = 1.0;
      Vec4 trial{};
      bool moved = false;
      for (int tries = 0; tries < 60; ++tries) {
        for (int k = 0; k < 4; ++k) trial[k] = h[k] + step * dx[k];
        const auto tv = detail::evaluate(problem, trial, t, false);
        // Inside the quadratic-convergence region the value test is below
        // rounding at large t, so only feasibility is required there.
        if (tv.feasible && (lambda2 < 0.0625 || tv.value <= ev.value - 0.01 * step * lambda2)) {
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
      h = trial;
    }
    if (total_dim / t < tol) break;
    t *= 20.0;
  }

  TraceMinSolution sol;
  sol.optimum = detail::to_matrix(h);
  sol.value = h[0] + h[1];
  sol.iterations = steps;
  sol.barrier_mu_final = 1.0 / t;
  std::vector<CMatrix> inverses;
  detail::evaluate(problem, h, t, false, &inverses);
  for (auto& w : inverses) sol.multipliers.push_back((1.0 / t) * w);
  sol.min_slack = is_feasible(sol.optimum, problem, 0.0).min_slack;
  return sol;
}

}  // namespace ugame
