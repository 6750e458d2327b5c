// Multi-start search at one (d, gamma), then the Schmidt profile at gamma = 1.

#include <cstdio>
#include <cstdlib>

#include "ugame/optimizer.hpp"

int main(int argc, char** argv) {
  using namespace ugame;
  const std::size_t d = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 3;
  const double gamma = argc > 2 ? std::strtod(argv[2], nullptr) : 1.0;

  OptimizerConfig cfg;
  cfg.restarts = 32;
  cfg.seed = 1;
  const OptResult r = maximize_pguess(d, gamma, cfg);
  std::printf("best p_guess %.9f after %lld evaluations\n", r.best_value, r.evals_used);
  std::printf("state:");
  for (const auto& z : r.best_state.amplitudes()) std::printf(" (%.4f%+.4fi)", z.real(), z.imag());
  std::printf("\n");
  if (gamma == 1.0) {
    const auto s = joint_schmidt_t2(GameConfig(d, 1.0), r.best_state);
    std::printf("Schmidt coefficients %.4f %.4f\n", s[0], s[1]);
  }
}
