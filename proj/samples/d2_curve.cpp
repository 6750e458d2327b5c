// d = 2: closed-form optimum next to the SDP and Helstrom values for phi_01.

#include <cstdio>

#include "ugame/analytic.hpp"
#include "ugame/discrimination.hpp"

int main() {
  using namespace ugame;
  const PureState phi = phi_jl(2, 0, 1);
  std::printf("%6s %12s %12s %12s\n", "gamma", "closed", "sdp", "helstrom");
  for (int i = 0; i <= 10; ++i) {
    const double g = i / 10.0;
    const Ensemble ens = ensemble(GameConfig(2, g), phi);
    std::printf("%6.2f %12.9f %12.9f %12.9f\n", g, pguess_max_d2(g), pguess_sdp(ens).p_guess,
                helstrom(ens[0], ens[1]).p_guess);
  }
}
