// Checks the dual certificate Q' for every phi_jl at one (d, gamma).

#include <cstdio>
#include <cstdlib>

#include "ugame/discrimination.hpp"

int main(int argc, char** argv) {
  using namespace ugame;
  const std::size_t d = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 5;
  const double gamma = argc > 2 ? std::strtod(argv[2], nullptr) : 0.7;

  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t l = 0; l < d; ++l) {
      if (j == l) continue;
      const CMatrix q = certificate_phi_jl(d, gamma, j, l);
      const Ensemble ens = ensemble(GameConfig(d, gamma), phi_jl(d, j, l));
      const auto feas = is_feasible(q, TraceMinProblem::dominating(ens.states()), 1e-9);
      std::printf("j=%zu l=%zu  Tr Q'=%.10f  closed=%.10f  min_slack=%+.2e\n", j, l, q.trace().real(),
                  pguess_phi_jl_closed_form(d, gamma, j, l), feas.min_slack);
    }
}
