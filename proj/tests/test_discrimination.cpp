#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ugame/analytic.hpp"
#include "ugame/discrimination.hpp"

using namespace ugame;

TEST(Helstrom, IndistinguishableStates) {
  const CMatrix r{{0.25, 0.1}, {0.1, 0.25}};
  const auto res = helstrom(r, r);
  EXPECT_NEAR(res.p_guess, 0.5, 1e-15);
  ASSERT_TRUE(res.povm);
  EXPECT_LT(max_abs_diff((*res.povm)[0], 0.5 * CMatrix::identity(2)), 1e-15);
}

TEST(Helstrom, PerfectGuessingAtGammaOne) {
  const Ensemble e = ensemble(GameConfig(2, 1.0), phi_jl(2, 0, 1));
  EXPECT_NEAR(helstrom(e[0], e[1]).p_guess, 1.0, 1e-12);
}

TEST(Helstrom, BasisStateHandComputed) {
  const Ensemble e = ensemble(GameConfig(2, 1.0), PureState::basis(2, 0));
  EXPECT_NEAR(helstrom(e[0], e[1]).p_guess, 0.5 * (1.0 + std::sqrt(3.0) / 2.0), 1e-12);
}

TEST(Helstrom, Validation) {
  EXPECT_THROW(helstrom(CMatrix{{0.5, 0.0}, {0.0, 0.0}}, CMatrix{{0.2, 0.0}, {0.0, 0.0}}), GameError);
  EXPECT_THROW(helstrom(CMatrix{{0.8, 0.0}, {0.0, -0.1}}, CMatrix{{0.2, 0.0}, {0.0, 0.1}}), GameError);
}

TEST(Helstrom, PovmIsProjectiveAndOptimal) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const Ensemble e = ensemble(GameConfig(2, (t % 11) / 10.0), oracle::random_state(2, rng));
    const auto r = helstrom(e[0], e[1]);
    ASSERT_TRUE(r.povm);
    const auto& m = *r.povm;
    EXPECT_LT(max_abs_diff(m[0] + m[1], CMatrix::identity(2)), 1e-12);
    EXPECT_GE(min_eigenvalue(m[0]), -1e-12);
    EXPECT_GE(min_eigenvalue(m[1]), -1e-12);
    EXPECT_NEAR(r.primal_value, r.p_guess, 1e-12);
    EXPECT_NEAR(r.p_guess, oracle::helstrom2(e[0], e[1]), 1e-12);
  }
}

TEST(PguessSdp, OptimalD2Point) {
  const auto r = pguess_sdp(ensemble(GameConfig(2, 0.3), phi_jl(2, 0, 1)));
  EXPECT_NEAR(r.p_guess, 0.5 * (1.0 + std::sqrt(2.0 + 2.0 * 0.09) / 2.0), 1e-8);
}

TEST(PguessSdp, ClassicalCoinOptimumD3) {
  const auto r = pguess_sdp(ensemble(GameConfig(3, 0.0), phi_jl(3, 0, 1)));
  EXPECT_NEAR(r.p_guess, (1.0 + 1.0 / std::sqrt(3.0)) / 2.0, 1e-8);
  EXPECT_NEAR(r.p_guess, 0.788675, 1e-6);
}

TEST(PguessSdp, D3SpecialCases) {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex w = root_of_unity(3, 1);
  for (double g : {0.0, 0.5, 1.0}) {
    // (|2> - |1>)/sqrt 2 gives 1/2 for every gamma.
    EXPECT_NEAR(pguess_sdp(ensemble(GameConfig(3, g), PureState::normalized({0.0, -s, s}))).p_guess, 0.5, 1e-8);
  }
  const Ensemble a = ensemble(GameConfig(3, 1.0), PureState::normalized({s, 0.0, -w * s}));
  const Ensemble b = ensemble(GameConfig(3, 1.0), PureState::normalized({-w * w * s, s, 0.0}));
  EXPECT_GT(std::abs((a[0] * a[2]).trace()), 1e-6);
  EXPECT_GT(std::abs((b[0] * b[1]).trace()), 1e-6);
  EXPECT_LT(pguess_sdp(a).p_guess, 1.0 - 1e-6);
  EXPECT_LT(pguess_sdp(b).p_guess, 1.0 - 1e-6);
}

TEST(PguessSdp, RecoveredPovmIsValid) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 6;
    const Ensemble e = ensemble(GameConfig(d, 0.6), oracle::random_state(d, rng));
    const auto r = pguess_sdp(e);
    ASSERT_TRUE(r.povm);
    CMatrix sum = CMatrix::zeros(2, 2);
    double v = 0.0;
    for (std::size_t x = 0; x < d; ++x) {
      EXPECT_GE(min_eigenvalue((*r.povm)[x]), -1e-9);
      sum += (*r.povm)[x];
      v += ((*r.povm)[x] * e[x]).trace().real();
    }
    EXPECT_LT(max_abs_diff(sum, CMatrix::identity(2)), 1e-9);
    EXPECT_NEAR(v, r.dual_value, 1e-6);
  }
}

TEST(Pgm, OrthogonalAndIdenticalStates) {
  const Ensemble orth({CMatrix{{0.5, 0.0}, {0.0, 0.0}}, CMatrix{{0.0, 0.0}, {0.0, 0.5}}});
  EXPECT_NEAR(pgm_value(orth), 1.0, 1e-12);
  // The square-root measurement alone scores 0.6^2 + 0.4^2 here; the likeliest
  // guess scores 0.6.
  const CMatrix r{{0.6, 0.1}, {0.1, 0.4}};
  const Ensemble same({0.6 * r, 0.4 * r});
  EXPECT_NEAR(pgm_value(same), 0.6, 1e-12);
}

TEST(Pgm, RankDeficientSum) {
  // Both states along |0>: S is rank one, kernel split equally.
  const Ensemble e({CMatrix{{0.7, 0.0}, {0.0, 0.0}}, CMatrix{{0.3, 0.0}, {0.0, 0.0}}});
  EXPECT_NEAR(pgm_value(e), 0.7, 1e-12);
}

TEST(DiscriminationProperties, Sandwich) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 2 + t % 7;
    const double g = (t % 5) / 4.0;
    const Ensemble e = ensemble(GameConfig(d, g), oracle::random_state(d, rng));
    const auto p = e.probabilities();
    const double pmax = *std::max_element(p.begin(), p.end());
    const double pgm = pgm_value(e);
    const auto r = pguess_sdp(e);
    EXPECT_LE(pmax, pgm + 1e-8);
    EXPECT_LE(pgm, r.dual_value + 1e-8);
    EXPECT_LE(r.dual_value, 1.0 + 1e-8);
    EXPECT_LE(r.primal_value, r.dual_value + 1e-8);
    EXPECT_NEAR(r.gap, r.dual_value - r.primal_value, 1e-15);
  }
}

TEST(DiscriminationProperties, HelstromAgreesWithSdp) {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 300; ++t) {
    const Ensemble e = ensemble(GameConfig(2, (t % 21) / 20.0), oracle::random_state(2, rng));
    EXPECT_NEAR(pguess_sdp(e).dual_value, helstrom(e[0], e[1]).p_guess, 1e-8);
  }
}

TEST(Certificate, Examples) {
  EXPECT_NEAR(certificate_phi_jl(2, 0.0, 0, 1).trace().real(), 0.5 * (1.0 + 1.0 / std::sqrt(2.0)), 1e-12);
  const double q = certificate_phi_jl(5, 0.7, 1, 2).trace().real();
  EXPECT_NEAR(q, pguess_sdp(ensemble(GameConfig(5, 0.7), phi_jl(5, 1, 2))).p_guess, 1e-8);
  EXPECT_THROW(certificate_phi_jl(3, 0.5, 1, 1), GameError);
  EXPECT_THROW(certificate_phi_jl(3, 1.5, 0, 1), GameError);
}

TEST(Certificate, DominatesRhoJ) {
  for (std::size_t d = 2; d <= 6; ++d)
    for (double g : {0.0, 0.3, 1.0}) {
      const CMatrix q = certificate_phi_jl(d, g, 0, d - 1);
      const Ensemble e = ensemble(GameConfig(d, g), phi_jl(d, 0, d - 1));
      EXPECT_GE(min_eigenvalue(q - e[0]), -1e-12);
      EXPECT_GE(min_eigenvalue(q - e[d - 1]), -1e-12);
    }
}

TEST(ClosedForm, Examples) {
  for (std::size_t d = 2; d <= 9; ++d)
    EXPECT_NEAR(pguess_phi_jl_closed_form(d, 0.0, 0, 1), 0.5 * (1.0 + 1.0 / std::sqrt(double(d))), 1e-14);
  for (double g : {0.0, 0.3, 0.8, 1.0}) EXPECT_NEAR(pguess_phi_jl_closed_form(4, g, 3, 1), 0.75, 1e-14);
  EXPECT_NEAR(pguess_phi_jl_closed_form(2, 1.0, 0, 1), 1.0, 1e-14);
  EXPECT_THROW(pguess_phi_jl_closed_form(3, 0.5, 2, 2), GameError);
}

TEST(PhiJlCertificate, CertificateClosedFormAndSdpAgree) {
  for (std::size_t d = 2; d <= 8; ++d)
    for (double g : {0.0, 0.25, 0.5, 0.75, 1.0})
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t l = 0; l < d; ++l) {
          if (j == l) continue;
          const Ensemble e = ensemble(GameConfig(d, g), phi_jl(d, j, l));
          const CMatrix q = certificate_phi_jl(d, g, j, l);
          const double cf = pguess_phi_jl_closed_form(d, g, j, l);
          EXPECT_GE(is_feasible(q, TraceMinProblem::dominating(e.states()), 1e-9).min_slack, -1e-9);
          EXPECT_NEAR(q.trace().real(), cf, 1e-7);
          EXPECT_NEAR(pguess_sdp(e).p_guess, cf, 1e-7);
        }
}

TEST(PhiJlClosedForm, StrictlyIncreasingWhenPhaseNonTrivial) {
  for (std::size_t d = 2; d <= 8; ++d)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) {
        if (j == l || (j * j + d * d - l * l) % d == 0) continue;
        double prev = pguess_phi_jl_closed_form(d, 0.0, j, l);
        for (int k = 1; k <= 10; ++k) {
          const double v = pguess_phi_jl_closed_form(d, k / 10.0, j, l);
          EXPECT_GT(v, prev);
          prev = v;
        }
      }
}

TEST(PhiJlAdvantage, SdpBeatsClassicalCoin) {
  for (std::size_t d = 2; d <= 6; ++d)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) {
        if (j == l || (j * j + d * d - l * l) % d == 0) continue;
        for (double g : {0.1, 0.5, 1.0}) {
          const double p = pguess_sdp(ensemble(GameConfig(d, g), phi_jl(d, j, l))).p_guess;
          EXPECT_GT(p, pguess_max_gamma0(d) + 1e-12);
        }
      }
}
