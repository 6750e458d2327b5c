#pragma once

// Closed-form results: optimal guessing probabilities, the optimal input
// states at gamma = 0, the d = 2 optimal Bloch vectors, and the min-entropy
// conversion. All logarithms are base 2.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ugame/game.hpp"
#include "ugame/linalg.hpp"

namespace ugame {

namespace detail {

inline void require_unit_gamma(double gamma, const char* what) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw GameError(std::string(what) + ": gamma must lie in [0, 1]");
}

}  // namespace detail

/// 1/2 (1 + sqrt(2 + 2 gamma^2) / 2): best guessing probability for d = 2.
inline double pguess_max_d2(double gamma) {
  detail::require_unit_gamma(gamma, "pguess_max_d2");
  return 0.5 * (1.0 + std::sqrt(2.0 + 2.0 * gamma * gamma) / 2.0);
}

/// 1/2 (1 + 1/sqrt(d)): best guessing probability with a classical coin.
inline double pguess_max_gamma0(std::size_t d) {
  if (d < 2) throw GameError("pguess_max_gamma0: d must be >= 2");
  return 0.5 * (1.0 + 1.0 / std::sqrt(static_cast<double>(d)));
}

/// phi_jl = c (|j> + w^{jl} F^dag |l>), c = sqrt(sqrt(d) / (2 sqrt(d) + 2)).
inline PureState phi_jl(std::size_t d, std::size_t j, std::size_t l) {
  if (d < 2) throw GameError("phi_jl: d must be >= 2");
  if (j >= d || l >= d) throw GameError("phi_jl: j and l must lie in [0, d-1]");
  const double sd = std::sqrt(static_cast<double>(d));
  const double c = std::sqrt(sd / (2.0 * sd + 2.0));
  const Complex w = root_of_unity(d, static_cast<long long>(j * l));
  std::vector<Complex> amp(d);
  // (F^dag |l>)_k = w^{-kl} / sqrt(d)
  for (std::size_t k = 0; k < d; ++k) amp[k] = c * w * root_of_unity(d, -static_cast<long long>(k * l)) / sd;
  amp[j] += c;
  return PureState::from_unit(std::move(amp));
}

/// All d^2 states phi_jl, ordered by (j, l).
inline std::vector<PureState> optimal_states_gamma0(std::size_t d) {
  std::vector<PureState> out;
  out.reserve(d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t l = 0; l < d; ++l) out.push_back(phi_jl(d, j, l));
  return out;
}

struct BlochVector {
  double cx = 0.0;
  double cy = 0.0;
  double cz = 0.0;

  BlochVector() = default;
  BlochVector(double x, double y, double z) : cx(x), cy(y), cz(z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z) || x * x + y * y + z * z > 1.0 + 1e-12)
      throw GameError("BlochVector: length must be <= 1");
  }

  double length() const { return std::sqrt(cx * cx + cy * cy + cz * cz); }

  /// 1/2 (I + cx sx + cy sy + cz sz)
  CMatrix density() const {
    return {{0.5 * (1.0 + cz), 0.5 * Complex(cx, -cy)}, {0.5 * Complex(cx, cy), 0.5 * (1.0 - cz)}};
  }

  /// The pure state on the sphere; requires unit length.
  PureState pure_state() const {
    const double n = length();
    if (std::abs(n - 1.0) > 1e-10) throw GameError("BlochVector: pure_state needs a unit vector");
    const double theta = std::acos(std::clamp(cz / n, -1.0, 1.0));
    const double phase = std::atan2(cy, cx);
    return PureState::normalized({std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phase)});
  }
};

/// The d = 2 optimal input set at one gamma. For gamma < 1 it is a finite list
/// of Bloch vectors; at gamma = 1 it is the continuous family
/// (sin t, +-sqrt(cos 2t), -sin t), t in [-pi/4, pi/4], exposed via sample().
struct OptimalSetD2 {
  double gamma = 0.0;
  std::vector<BlochVector> points;
  bool continuous = false;

  BlochVector sample(double theta, bool positive_y = true) const {
    if (!continuous) throw GameError("OptimalSetD2: no continuous family at this gamma");
    const double q = std::numbers::pi / 4.0;
    if (!(theta >= -q - 1e-15 && theta <= q + 1e-15)) throw GameError("OptimalSetD2: theta must lie in [-pi/4, pi/4]");
    const double s = std::sin(theta);
    const double y = std::sqrt(std::max(0.0, std::cos(2.0 * theta)));
    return {s, positive_y ? y : -y, -s};
  }
};

inline OptimalSetD2 optimal_states_d2(double gamma) {
  detail::require_unit_gamma(gamma, "optimal_states_d2");
  const double r = 1.0 / std::sqrt(2.0);
  OptimalSetD2 out;
  out.gamma = gamma;
  if (gamma == 1.0) {
    out.continuous = true;
    return out;
  }
  out.points = {{r, 0.0, -r}, {-r, 0.0, r}};
  if (gamma == 0.0) {
    out.points.emplace_back(r, 0.0, r);
    out.points.emplace_back(-r, 0.0, -r);
  }
  return out;
}

/// 1/2 (1 + sqrt(Tr rho_R^2)) for a register state of the form
/// 1/2 [[1, g*], [g, 1]].
inline double pguess_from_purity(const CMatrix& rho_R) {
  if (rho_R.rows() != 2 || rho_R.cols() != 2) throw GameError("pguess_from_purity: rho_R must be 2x2");
  require_density(rho_R, kDensityTol, "pguess_from_purity: rho_R");
  if (std::abs(rho_R(0, 0).real() - 0.5) > kDensityTol || std::abs(rho_R(1, 1).real() - 0.5) > kDensityTol)
    throw GameError("pguess_from_purity: register state must have diagonal (1/2, 1/2)");
  const double purity = (rho_R * rho_R).trace().real();
  return 0.5 * (1.0 + std::sqrt(purity));
}

/// -log2 p.
inline double min_entropy_of(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw GameError("min_entropy_of: p must lie in (0, 1]");
  return -std::log2(p);
}

}  // namespace ugame
