#pragma once

// Multi-start Nelder-Mead search for the input state maximizing p_guess.
// A point x in R^{2d} maps to amplitudes x[2k] + i x[2k+1], normalized.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

#include "ugame/discrimination.hpp"
#include "ugame/game.hpp"
#include "ugame/linalg.hpp"
#include "ugame/sdp.hpp"

namespace ugame {

struct OptimizerConfig {
  int restarts = 64;
  int max_evals_per_restart = 2000;
  double simplex_tol = 1e-10;  // on the spread of simplex values
  std::uint64_t seed = 0;
  double sdp_tol = 1e-9;
  double initial_step = 0.1;  // simplex edge length around the start point
  unsigned threads = 1;       // 0 = hardware concurrency

  void validate() const {
    if (restarts < 1) throw GameError("OptimizerConfig: restarts must be >= 1");
    if (max_evals_per_restart < 1) throw GameError("OptimizerConfig: max_evals_per_restart must be >= 1");
    if (!(simplex_tol > 0.0)) throw GameError("OptimizerConfig: simplex_tol must be positive");
    if (!(sdp_tol >= 1e-12 && sdp_tol <= 1e-3)) throw GameError("OptimizerConfig: sdp_tol must lie in [1e-12, 1e-3]");
    if (!(initial_step > 0.0)) throw GameError("OptimizerConfig: initial_step must be positive");
  }
};

struct OptResult {
  PureState best_state = PureState::basis(1, 0);
  double best_value = 0.0;
  std::vector<double> per_restart_values;
  long long evals_used = 0;
  long long failed_evals = 0;     // objective evaluations that threw; scored 0
  int unconverged_restarts = 0;   // restarts that hit the evaluation budget
};

/// splitmix64 finalizer.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent per-restart stream seed; depends only on (seed, index).
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

/// Haar-random pure state from 2d standard normals.
template <class Rng>
PureState random_pure_state(std::size_t d, Rng& rng) {
  if (d < 1) throw LinalgError("random_pure_state: d must be >= 1");
  if (d == 1) return PureState::basis(1, 0);
  std::normal_distribution<double> normal;
  for (;;) {
    std::vector<Complex> a(d);
    for (auto& z : a) {
      const double re = normal(rng);
      const double im = normal(rng);
      z = Complex(re, im);
    }
    if (norm(a) > 1e-150) return PureState::normalized(std::move(a));
  }
}

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;  // objective at x (maximized)
  int evals = 0;
  bool converged = false;
};

/// Maximizes objective by Nelder-Mead on its negative: reflection 1,
/// expansion 2, contraction 1/2, shrink 1/2. Stops when the spread of simplex
/// values drops below simplex_tol (converged) or the budget runs out.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                                    const std::vector<double>& x0, int max_evals, double simplex_tol,
                                    double initial_step = 0.1) {
  if (x0.empty()) throw LinalgError("nelder_mead: empty start point");
  if (max_evals < 1) throw LinalgError("nelder_mead: max_evals must be >= 1");
  const std::size_t n = x0.size();
  int evals = 0;
  auto f = [&](const std::vector<double>& x) {
    ++evals;
    return -objective(x);
  };

  std::vector<std::vector<double>> pts{x0};
  std::vector<double> vals{f(x0)};
  if (evals >= max_evals) return {x0, -vals[0], evals, false};
  for (std::size_t i = 0; i < n && evals < max_evals; ++i) {
    std::vector<double> p = x0;
    p[i] += initial_step;
    vals.push_back(f(p));
    pts.push_back(std::move(p));
  }
  if (pts.size() < n + 1) {
    const auto best = std::min_element(vals.begin(), vals.end()) - vals.begin();
    return {pts[best], -vals[best], evals, false};
  }

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<std::vector<double>> p2(n + 1);
    std::vector<double> v2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      p2[i] = std::move(pts[order[i]]);
      v2[i] = vals[order[i]];
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };
  auto along = [&](const std::vector<double>& c, const std::vector<double>& toward, double t) {
    std::vector<double> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = c[k] + t * (toward[k] - c[k]);
    return r;
  };

  bool converged = false;
  for (;;) {
    sort_simplex();
    if (vals[n] - vals[0] < simplex_tol) {
      converged = true;
      break;
    }
    if (evals >= max_evals) break;

    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) c[k] += pts[i][k] / static_cast<double>(n);

    const std::vector<double> xr = along(c, pts[n], -1.0);
    const double fr = f(xr);
    if (fr < vals[0]) {
      if (evals >= max_evals) {
        pts[n] = xr;
        vals[n] = fr;
        continue;
      }
      std::vector<double> xe = along(c, pts[n], -2.0);
      const double fe = f(xe);
      if (fe < fr) {
        pts[n] = std::move(xe);
        vals[n] = fe;
      } else {
        pts[n] = xr;
        vals[n] = fr;
      }
      continue;
    }
    if (fr < vals[n - 1]) {
      pts[n] = xr;
      vals[n] = fr;
      continue;
    }
    if (evals >= max_evals) {
      if (fr < vals[n]) {
        pts[n] = xr;
        vals[n] = fr;
      }
      continue;
    }
    if (fr < vals[n]) {
      std::vector<double> xc = along(c, xr, 0.5);
      const double fc = f(xc);
      if (fc <= fr) {
        pts[n] = std::move(xc);
        vals[n] = fc;
        continue;
      }
    } else {
      std::vector<double> xc = along(c, pts[n], 0.5);
      const double fc = f(xc);
      if (fc < vals[n]) {
        pts[n] = std::move(xc);
        vals[n] = fc;
        continue;
      }
    }
    for (std::size_t i = 1; i <= n && evals < max_evals; ++i) {
      pts[i] = along(pts[0], pts[i], 0.5);
      vals[i] = f(pts[i]);
    }
  }
  sort_simplex();
  return {pts[0], -vals[0], evals, converged};
}

namespace detail {

inline std::vector<Complex> point_to_amplitudes(const std::vector<double>& x) {
  std::vector<Complex> a(x.size() / 2);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = Complex(x[2 * k], x[2 * k + 1]);
  return a;
}

inline std::vector<double> state_to_point(const PureState& s) {
  std::vector<double> x;
  x.reserve(2 * s.dim());
  for (const auto& z : s.amplitudes()) {
    x.push_back(z.real());
    x.push_back(z.imag());
  }
  return x;
}

// Dual-SDP guessing probability of a raw point; throws on a zero vector or
// solver failure.
inline double pguess_of_point(const GameConfig& cfg, const std::vector<double>& x, double sdp_tol) {
  const Ensemble ens = ensemble(cfg, PureState::normalized(point_to_amplitudes(x)));
  return std::clamp(solve_trace_min(TraceMinProblem::dominating(ens.states()), sdp_tol).value, 0.0, 1.0);
}

inline bool state_less(const PureState& a, const PureState& b) {
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
    if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
  }
  return false;
}

struct RestartOutcome {
  PureState state = PureState::basis(1, 0);
  double value = 0.0;
  int evals = 0;
  long long failed = 0;
  bool converged = false;
};

inline RestartOutcome run_restart(const GameConfig& cfg, const std::vector<double>& x0, const OptimizerConfig& oc) {
  RestartOutcome out;
  auto objective = [&](const std::vector<double>& x) {
    try {
      return pguess_of_point(cfg, x, oc.sdp_tol);
    } catch (const std::exception&) {
      ++out.failed;
      return 0.0;
    }
  };
  const NelderMeadResult nm = nelder_mead(objective, x0, oc.max_evals_per_restart, oc.simplex_tol, oc.initial_step);
  out.evals = nm.evals;
  out.converged = nm.converged;
  try {
    out.state = PureState::normalized(point_to_amplitudes(nm.x));
    // Re-verified through the public path so the reported value is a real
    // pguess_sdp of a concrete state.
    out.value = pguess_sdp(ensemble(cfg, out.state), oc.sdp_tol).p_guess;
  } catch (const std::exception&) {
    ++out.failed;
    out.state = PureState::basis(cfg.d, 0);
    out.value = 0.0;
  }
  return out;
}

inline OptResult merge_restarts(const std::vector<RestartOutcome>& runs) {
  OptResult res;
  std::size_t best = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    res.per_restart_values.push_back(r.value);
    res.evals_used += r.evals;
    res.failed_evals += r.failed;
    if (!r.converged) ++res.unconverged_restarts;
    if (i == 0) continue;
    const auto& b = runs[best];
    if (r.value > b.value || (r.value == b.value && state_less(r.state, b.state))) best = i;
  }
  res.best_state = runs[best].state;
  res.best_value = runs[best].value;
  return res;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

inline std::vector<RestartOutcome> run_random_restarts(const GameConfig& cfg, const OptimizerConfig& oc) {
  std::vector<RestartOutcome> runs(static_cast<std::size_t>(oc.restarts));
  parallel_for(runs.size(), oc.threads, [&](std::size_t i) {
    std::mt19937_64 rng(stream_seed(oc.seed, i));
    runs[i] = run_restart(cfg, state_to_point(random_pure_state(cfg.d, rng)), oc);
  });
  return runs;
}

}  // namespace detail

/// Best p_guess found over `restarts` random starts; a lower bound on the
/// true maximum.
inline OptResult maximize_pguess(std::size_t d, double gamma, const OptimizerConfig& config) {
  config.validate();
  detail::require_unit_gamma(gamma, "maximize_pguess");
  const GameConfig cfg(d, gamma);
  return detail::merge_restarts(detail::run_random_restarts(cfg, config));
}

/// maximize_pguess along an ascending gamma grid. From the second point on,
/// the previous best state seeds one extra restart, appended last to
/// per_restart_values.
inline std::vector<OptResult> sweep_gamma(std::size_t d, const std::vector<double>& gamma_grid,
                                          const OptimizerConfig& config) {
  config.validate();
  for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
    detail::require_unit_gamma(gamma_grid[i], "sweep_gamma");
    if (i > 0 && gamma_grid[i] < gamma_grid[i - 1]) throw GameError("sweep_gamma: grid must be ascending");
  }
  std::vector<OptResult> out;
  out.reserve(gamma_grid.size());
  for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
    const GameConfig cfg(d, gamma_grid[i]);
    auto runs = detail::run_random_restarts(cfg, config);
    if (i > 0) runs.push_back(detail::run_restart(cfg, detail::state_to_point(out.back().best_state), config));
    out.push_back(detail::merge_restarts(runs));
  }
  return out;
}

}  // namespace ugame
