#pragma once

// Conditional min-entropies of the register R against Bob's system B, the
// outcome X and the purification P. The generic evaluator solves
//   H_min(A|R) = -log2 min { Tr sigma : sigma (x) I_A >= rho_RA },
// with R always the first tensor factor.

#include <cmath>
#include <optional>
#include <vector>

#include "ugame/analytic.hpp"
#include "ugame/game.hpp"
#include "ugame/linalg.hpp"
#include "ugame/sdp.hpp"

namespace ugame {

/// H_min(B|A) of a state on C^dA (x) C^dB, conditioning on the first factor.
inline double hmin_sdp(const CMatrix& rho_AB, std::size_t dA, std::size_t dB, double tol = 1e-9) {
  if (dA != 2) throw GameError("hmin_sdp: the conditioning system must be a qubit");
  if (dB < 1 || rho_AB.rows() != dA * dB || rho_AB.cols() != dA * dB)
    throw GameError("hmin_sdp: state dimension does not match dims");
  require_density(rho_AB, kDensityTol, "hmin_sdp: rho_AB");
  const TraceMinSolution sol =
      solve_trace_min(TraceMinProblem({TraceMinConstraint::tensor_identity(dB, rho_AB.hermitian_part())}), tol);
  return -std::log2(sol.value);
}

inline double hmin_B_given_R_d2(double gamma) {
  detail::require_unit_gamma(gamma, "hmin_B_given_R_d2");
  return -std::log2(1.0 + gamma);
}

/// 1 - log2(sqrt(2 + 2 g^2)/2 + 1), evaluated as -log2 of the d = 2 optimum.
inline double hmin_X_given_R_d2(double gamma) { return min_entropy_of(pguess_max_d2(gamma)); }

inline double hmin_P_given_R_initial(double gamma) {
  detail::require_unit_gamma(gamma, "hmin_P_given_R_initial");
  return -std::log2(1.0 + std::sqrt(1.0 - gamma * gamma));
}

/// Zero for the optimal inputs phi_01 / phi_10, where <phi|F|phi> = 0.
inline double hmin_P_given_R_t2_d2(double gamma) {
  detail::require_unit_gamma(gamma, "hmin_P_given_R_t2_d2");
  return 0.0;
}

namespace detail {

// |alpha> = |0>, |beta> = g|0> + sqrt(1 - g^2)|1>, so <alpha|beta> = g.
inline std::vector<Complex> purification_alpha() { return {1.0, 0.0}; }
inline std::vector<Complex> purification_beta(double gamma) {
  return {gamma, std::sqrt(std::max(0.0, 1.0 - gamma * gamma))};
}

}  // namespace detail

/// (|0>|alpha> + |1>|beta>)/sqrt 2 on R (x) P, as a density matrix.
inline CMatrix rho_RP_initial(double gamma) {
  detail::require_unit_gamma(gamma, "rho_RP_initial");
  const std::vector<Complex> zero{1.0, 0.0};
  const std::vector<Complex> one{0.0, 1.0};
  const auto a = kron(std::span<const Complex>(zero), std::span<const Complex>(detail::purification_alpha()));
  const auto b = kron(std::span<const Complex>(one), std::span<const Complex>(detail::purification_beta(gamma)));
  std::vector<Complex> xi(4);
  for (std::size_t i = 0; i < 4; ++i) xi[i] = (a[i] + b[i]) / std::sqrt(2.0);
  return CMatrix::outer(xi, xi);
}

/// Tr_B of (|0>|alpha>|phi> + |1>|beta>F|phi>)/sqrt 2 on R (x) P (x) B.
inline CMatrix rho_RP_t2(double gamma, const PureState& phi) {
  detail::require_unit_gamma(gamma, "rho_RP_t2");
  const std::size_t d = phi.dim();
  if (d < 2) throw GameError("rho_RP_t2: d must be >= 2");
  const std::vector<Complex> fphi = fourier_matrix(d) * phi.amplitudes();
  const std::vector<Complex> zero{1.0, 0.0};
  const std::vector<Complex> one{0.0, 1.0};
  const auto ra = kron(std::span<const Complex>(zero), std::span<const Complex>(detail::purification_alpha()));
  const auto rb = kron(std::span<const Complex>(one), std::span<const Complex>(detail::purification_beta(gamma)));
  const auto t0 = kron(std::span<const Complex>(ra), phi.amplitudes());
  const auto t1 = kron(std::span<const Complex>(rb), std::span<const Complex>(fphi));
  std::vector<Complex> psi(t0.size());
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = (t0[i] + t1[i]) / std::sqrt(2.0);
  return partial_trace(CMatrix::outer(psi, psi), 4, d, Keep::A).hermitian_part();
}

/// Classical-quantum state sum_x rho~^x (x) |x><x| on R (x) X.
inline CMatrix rho_RX(const Ensemble& ens) {
  const std::size_t d = ens.size();
  CMatrix out(2 * d, 2 * d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) out(r * d + x, c * d + x) = ens[x](r, c);
  return out;
}

struct EntropyCurvePoint {
  double gamma = 0.0;
  double h_B_given_R = 0.0;
  double h_X_given_R = 0.0;
  double h_P_given_R_t1 = 0.0;
  double h_P_given_R_t2 = 0.0;
  std::optional<double> sdp_deviation;  // max |closed form - SDP| when checked
};

/// The four entropies evaluated by SDP for the optimal input phi_01.
inline EntropyCurvePoint entropy_point_sdp_d2(double gamma, double tol = 1e-9) {
  detail::require_unit_gamma(gamma, "entropy_point_sdp_d2");
  const GameConfig cfg(2, gamma);
  const PureState phi = phi_jl(2, 0, 1);
  EntropyCurvePoint p;
  p.gamma = gamma;
  p.h_B_given_R = hmin_sdp(joint_state_t2(cfg, phi.density()), 2, 2, tol);
  p.h_X_given_R = hmin_sdp(rho_RX(ensemble(cfg, phi)), 2, 2, tol);
  p.h_P_given_R_t1 = hmin_sdp(rho_RP_initial(gamma), 2, 2, tol);
  p.h_P_given_R_t2 = hmin_sdp(rho_RP_t2(gamma, phi), 2, 2, tol);
  return p;
}

/// Closed forms along a gamma grid; with sdp_check each point also records
/// its largest deviation from the SDP evaluation.
inline std::vector<EntropyCurvePoint> entropy_curve_d2(const std::vector<double>& grid, bool sdp_check = false) {
  std::vector<EntropyCurvePoint> out;
  out.reserve(grid.size());
  for (double g : grid) {
    EntropyCurvePoint p;
    p.gamma = g;
    p.h_B_given_R = hmin_B_given_R_d2(g);
    p.h_X_given_R = hmin_X_given_R_d2(g);
    p.h_P_given_R_t1 = hmin_P_given_R_initial(g);
    p.h_P_given_R_t2 = hmin_P_given_R_t2_d2(g);
    if (sdp_check) {
      const EntropyCurvePoint s = entropy_point_sdp_d2(g);
      p.sdp_deviation = std::max({std::abs(p.h_B_given_R - s.h_B_given_R), std::abs(p.h_X_given_R - s.h_X_given_R),
                                  std::abs(p.h_P_given_R_t1 - s.h_P_given_R_t1),
                                  std::abs(p.h_P_given_R_t2 - s.h_P_given_R_t2)});
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace ugame
