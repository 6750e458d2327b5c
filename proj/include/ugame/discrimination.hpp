#pragma once

// Minimum-error discrimination of a qubit ensemble {rho~^x}:
// p_guess = max_M sum_x Tr(M_x rho~^x) = min { Tr H : H >= rho~^x for all x }.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "ugame/analytic.hpp"
#include "ugame/game.hpp"
#include "ugame/linalg.hpp"
#include "ugame/sdp.hpp"

namespace ugame {

struct DiscriminationResult {
  double p_guess = 0.0;
  double dual_value = 0.0;
  double primal_value = 0.0;
  double gap = 0.0;  // dual_value - primal_value
  std::optional<std::vector<CMatrix>> povm;
};

namespace detail {

inline void require_qubit_state(const CMatrix& m, const char* what) {
  if (m.rows() != 2 || m.cols() != 2) throw GameError(std::string(what) + ": state must be 2x2");
  if (!m.is_hermitian(kDensityTol)) throw GameError(std::string(what) + ": state is not Hermitian");
  if (min_eigenvalue(m.hermitian_part()) < -kDensityTol)
    throw GameError(std::string(what) + ": state is not positive semidefinite");
}

inline double povm_value(const std::vector<CMatrix>& states, const std::vector<CMatrix>& povm) {
  double v = 0.0;
  for (std::size_t x = 0; x < states.size(); ++x) v += (povm[x] * states[x]).trace().real();
  return v;
}

}  // namespace detail

/// Two-state optimum 1/2 (1 + ||rho0 - rho1||_1) for subnormalized states
/// whose traces sum to one.
inline DiscriminationResult helstrom(const CMatrix& rho0, const CMatrix& rho1) {
  detail::require_qubit_state(rho0, "helstrom");
  detail::require_qubit_state(rho1, "helstrom");
  const CMatrix r0 = rho0.hermitian_part();
  const CMatrix r1 = rho1.hermitian_part();
  if (std::abs(r0.trace().real() + r1.trace().real() - 1.0) > kDensityTol)
    throw GameError("helstrom: traces must sum to 1");

  const CMatrix g = r0 - r1;
  DiscriminationResult res;
  std::vector<CMatrix> povm;
  if (g.max_abs() == 0.0) {
    povm = {0.5 * CMatrix::identity(2), 0.5 * CMatrix::identity(2)};
  } else {
    const CMatrix m0 = apply_spectral(g, [](double x) { return x >= 0.0 ? 1.0 : 0.0; });
    povm = {m0, CMatrix::identity(2) - m0};
  }
  const double tn = trace_norm_hermitian(g);
  res.p_guess = 0.5 * (1.0 + tn);
  // H = 1/2 (rho0 + rho1 + |G|) dominates both states and has trace p_guess.
  res.dual_value = res.p_guess;
  res.primal_value = detail::povm_value({r0, r1}, povm);
  res.gap = res.dual_value - res.primal_value;
  res.povm = std::move(povm);
  return res;
}

/// Square-root measurement M_x = S^{-1/2} rho~^x S^{-1/2}, S = sum_x rho~^x,
/// with the kernel of S split equally. Returns the larger of its value and
/// max_x p_x (always guessing the likeliest outcome), both valid POVM values.
inline double pgm_value(const Ensemble& ens) {
  const std::size_t d = ens.size();
  const CMatrix s_inv_sqrt = apply_spectral(ens.sum(), [](double x) { return x > 1e-12 ? 1.0 / std::sqrt(x) : 0.0; });
  const CMatrix kernel = apply_spectral(ens.sum(), [](double x) { return x > 1e-12 ? 0.0 : 1.0; });
  double v = 0.0;
  double best_prior = 0.0;
  for (std::size_t x = 0; x < d; ++x) {
    const CMatrix m = s_inv_sqrt * ens[x] * s_inv_sqrt + (1.0 / static_cast<double>(d)) * kernel;
    v += (m * ens[x]).trace().real();
    best_prior = std::max(best_prior, ens[x].trace().real());
  }
  return std::max(v, best_prior);
}

/// p_guess from the dual SDP. The POVM is recovered best-effort from the
/// barrier multipliers Z_x as Y^{-1/2} Z_x Y^{-1/2}, Y = sum_x Z_x.
inline DiscriminationResult pguess_sdp(const Ensemble& ens, double tol = 1e-9) {
  const TraceMinSolution sol = solve_trace_min(TraceMinProblem::dominating(ens.states()), tol);
  DiscriminationResult res;
  res.dual_value = sol.value;
  res.p_guess = std::clamp(sol.value, 0.0, 1.0);
  res.primal_value = pgm_value(ens);
  res.gap = res.dual_value - res.primal_value;

  CMatrix y = CMatrix::zeros(2, 2);
  for (const auto& z : sol.multipliers) y += z;
  if (min_eigenvalue(y) > 1e-12) {
    const CMatrix y_inv_sqrt = apply_spectral(y, [](double x) { return 1.0 / std::sqrt(x); });
    std::vector<CMatrix> povm;
    povm.reserve(sol.multipliers.size());
    for (const auto& z : sol.multipliers) povm.push_back((y_inv_sqrt * z * y_inv_sqrt).hermitian_part());
    res.povm = std::move(povm);
  }
  return res;
}

namespace detail {

inline void require_jl(std::size_t d, double gamma, std::size_t j, std::size_t l, const char* what) {
  if (d < 2) throw GameError(std::string(what) + ": d must be >= 2");
  if (j == l) throw GameError(std::string(what) + ": j and l must differ");
  if (j >= d || l >= d) throw GameError(std::string(what) + ": j and l must lie in [0, d-1]");
  require_unit_gamma(gamma, what);
}

}  // namespace detail

/// Q' = 1/2 (rho~^j + rho~^l + |rho~^j - rho~^l|) for the input phi_jl.
inline CMatrix certificate_phi_jl(std::size_t d, double gamma, std::size_t j, std::size_t l) {
  detail::require_jl(d, gamma, j, l, "certificate_phi_jl");
  const Ensemble ens = ensemble(GameConfig(d, gamma), phi_jl(d, j, l));
  const CMatrix g = ens[j] - ens[l];
  return (0.5 * (ens[j] + ens[l] + abs_hermitian(g.hermitian_part()))).hermitian_part();
}

/// Guessing probability of phi_jl:
/// (2 + 2 sqrt d + d + sqrt(d (2 + sqrt d)^2 + 2 g^2 (1 + sqrt d)^2 (1 - cos(2 pi (j^2 - l^2) / d))))
///   / (4 (d + sqrt d))
inline double pguess_phi_jl_closed_form(std::size_t d, double gamma, std::size_t j, std::size_t l) {
  detail::require_jl(d, gamma, j, l, "pguess_phi_jl_closed_form");
  const double dd = static_cast<double>(d);
  const double sd = std::sqrt(dd);
  // j^2 - l^2 reduced mod d keeps the cosine argument small and exact.
  const long long diff = (static_cast<long long>((j * j) % d) - static_cast<long long>((l * l) % d) +
                          static_cast<long long>(d)) %
                         static_cast<long long>(d);
  const double c = std::cos(2.0 * std::numbers::pi * static_cast<double>(diff) / dd);
  const double inner = dd * (2.0 + sd) * (2.0 + sd) + 2.0 * gamma * gamma * (1.0 + sd) * (1.0 + sd) * (1.0 - c);
  return (2.0 + 2.0 * sd + dd + std::sqrt(inner)) / (4.0 * (dd + sd));
}

}  // namespace ugame
