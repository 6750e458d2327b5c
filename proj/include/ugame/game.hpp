#pragma once

// States produced by the guessing-game circuit: the basis register, the
// joint register/system state after the controlled Fourier transform, and the
// subnormalized post-measurement register states for each outcome.

#include <cmath>
#include <cstddef>
#include <vector>

#include "ugame/linalg.hpp"

namespace ugame {

inline constexpr double kDensityTol = 1e-10;

class GameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One game instance: outcome count d and register coherence gamma.
struct GameConfig {
  std::size_t d = 2;
  Complex gamma = 0.0;

  GameConfig(std::size_t d_, Complex gamma_) : d(d_), gamma(gamma_) {
    if (d < 2) throw GameError("GameConfig: d must be >= 2");
    if (!is_finite(gamma) || std::abs(gamma) > 1.0 + 1e-12) throw GameError("GameConfig: |gamma| must be <= 1");
  }
  GameConfig(std::size_t d_, double gamma_) : GameConfig(d_, Complex(gamma_)) {}

  /// Main API paths take gamma real in [0, 1].
  void require_real_gamma() const {
    if (gamma.imag() != 0.0 || gamma.real() < 0.0) throw GameError("gamma must be real and in [0, 1]");
  }
};

/// The d subnormalized 2x2 register states, one per outcome x.
class Ensemble {
 public:
  explicit Ensemble(std::vector<CMatrix> states) : states_(std::move(states)) {
    if (states_.empty()) throw GameError("Ensemble: no states");
    double total = 0.0;
    for (const auto& s : states_) {
      if (s.rows() != 2 || s.cols() != 2) throw GameError("Ensemble: register states must be 2x2");
      if (!s.is_hermitian(kDensityTol)) throw GameError("Ensemble: state is not Hermitian");
      const CMatrix h = s.hermitian_part();
      // Closed-form 2x2 minimum eigenvalue.
      const double tr = h(0, 0).real() + h(1, 1).real();
      const double diff = h(0, 0).real() - h(1, 1).real();
      const double lmin = 0.5 * (tr - std::sqrt(diff * diff + 4.0 * std::norm(h(0, 1))));
      if (lmin < -kDensityTol) throw GameError("Ensemble: state is not positive semidefinite");
      total += tr;
    }
    if (std::abs(total - 1.0) > kDensityTol) throw GameError("Ensemble: traces do not sum to 1");
  }

  std::size_t size() const { return states_.size(); }
  const CMatrix& operator[](std::size_t x) const { return states_[x]; }
  const std::vector<CMatrix>& states() const { return states_; }

  /// Outcome probabilities p_x = Tr rho~^x.
  std::vector<double> probabilities() const {
    std::vector<double> p;
    p.reserve(states_.size());
    for (const auto& s : states_) p.push_back(s.trace().real());
    return p;
  }

  CMatrix sum() const {
    CMatrix s = CMatrix::zeros(2, 2);
    for (const auto& x : states_) s += x;
    return s;
  }

 private:
  std::vector<CMatrix> states_;
};

/// rho_R = (1/2)[[1, conj(gamma)], [gamma, 1]].
inline CMatrix register_state(Complex gamma) {
  if (!is_finite(gamma) || std::abs(gamma) > 1.0 + 1e-12) throw GameError("register_state: |gamma| must be <= 1");
  return {{0.5, 0.5 * std::conj(gamma)}, {0.5 * gamma, 0.5}};
}

/// Controlled Fourier transform U = |0><0| (x) I + |1><1| (x) F on R (x) B.
inline CMatrix controlled_fourier(std::size_t d) {
  const CMatrix f = fourier_matrix(d);
  CMatrix u(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    u(i, i) = 1.0;
    for (std::size_t j = 0; j < d; ++j) u(d + i, d + j) = f(i, j);
  }
  return u;
}

/// U (rho_R (x) rho_B) U^dagger, the 2d x 2d state just before Alice measures.
inline CMatrix joint_state_t2(const GameConfig& config, const CMatrix& rho_B) {
  if (rho_B.rows() != config.d || rho_B.cols() != config.d)
    throw GameError("joint_state_t2: rho_B dimension does not match d");
  require_density(rho_B, kDensityTol, "joint_state_t2: rho_B");
  const CMatrix u = controlled_fourier(config.d);
  return (u * kron(register_state(config.gamma), rho_B) * u.adjoint()).hermitian_part();
}

/// Post-measurement ensemble for a pure input |phi>:
///   rho~^x = 1/2 [[ |<x|phi>|^2,                conj(g) <x|phi><phi|F^dag|x> ],
///                 [ g <x|F|phi><phi|x>,          |<x|F|phi>|^2               ]]
inline Ensemble ensemble(const GameConfig& config, const PureState& phi) {
  if (phi.dim() != config.d) throw GameError("ensemble: state dimension does not match d");
  const std::size_t d = config.d;
  const std::vector<Complex> fphi = fourier_matrix(d) * phi.amplitudes();
  const Complex g = config.gamma;
  std::vector<CMatrix> states;
  states.reserve(d);
  for (std::size_t x = 0; x < d; ++x) {
    const Complex a = phi[x];
    const Complex b = fphi[x];
    const Complex off = 0.5 * g * b * std::conj(a);
    states.push_back(CMatrix{{0.5 * std::norm(a), std::conj(off)}, {off, 0.5 * std::norm(b)}});
  }
  return Ensemble(std::move(states));
}

/// Mixed-input overload:
///   rho~^x = 1/2 [[ <x|rho|x>, conj(g) <x|rho F^dag|x> ], [ g <x|F rho|x>, <x|F rho F^dag|x> ]]
inline Ensemble ensemble(const GameConfig& config, const CMatrix& rho_B) {
  if (rho_B.rows() != config.d || rho_B.cols() != config.d)
    throw GameError("ensemble: rho_B dimension does not match d");
  require_density(rho_B, kDensityTol, "ensemble: rho_B");
  const std::size_t d = config.d;
  const CMatrix f = fourier_matrix(d);
  const CMatrix f_rho = f * rho_B;
  const CMatrix f_rho_fd = f_rho * f.adjoint();
  const Complex g = config.gamma;
  std::vector<CMatrix> states;
  states.reserve(d);
  for (std::size_t x = 0; x < d; ++x) {
    const Complex off = 0.5 * g * f_rho(x, x);
    states.push_back(CMatrix{{0.5 * rho_B(x, x).real(), std::conj(off)}, {off, 0.5 * f_rho_fd(x, x).real()}});
  }
  return Ensemble(std::move(states));
}

/// gamma = overlap^(n - j): coherence left in R when j of n environment
/// subsystems are handed to Bob together with the coin.
inline Complex gamma_from_environment(Complex overlap, unsigned n, unsigned j) {
  if (j > n) throw GameError("gamma_from_environment: j must not exceed n");
  if (!is_finite(overlap) || std::abs(overlap) > 1.0 + 1e-12)
    throw GameError("gamma_from_environment: |overlap| must be <= 1");
  Complex g = 1.0;
  for (unsigned k = 0; k < n - j; ++k) g *= overlap;
  return g;
}

/// U(|+> (x) |phi>) as a 2d-dimensional pure state (gamma = 1 only).
inline PureState joint_pure_state_t2(std::size_t d, const PureState& phi) {
  if (phi.dim() != d) throw GameError("joint_pure_state_t2: state dimension does not match d");
  const std::vector<Complex> fphi = fourier_matrix(d) * phi.amplitudes();
  std::vector<Complex> psi(2 * d);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < d; ++i) {
    psi[i] = s * phi[i];
    psi[d + i] = s * fphi[i];
  }
  return PureState::normalized(std::move(psi));
}

/// Schmidt coefficients of the R|B cut at t2. Defined only for gamma = 1,
/// where the joint state is pure.
inline std::vector<double> joint_schmidt_t2(const GameConfig& config, const PureState& phi) {
  if (config.gamma != Complex(1.0))
    throw GameError("joint_schmidt_t2: requires gamma = 1 (joint state is mixed otherwise)");
  return schmidt_coefficients(joint_pure_state_t2(config.d, phi), 2, config.d);
}

}  // namespace ugame
