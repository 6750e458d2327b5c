// ugame: command-line front end for the guessing-game library.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

std::uint64_t default_seed() {
  if (const char* s = std::getenv("UGAME_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable UGAME_SEED=" << s << "\n";
    }
  }
  return 0;
}

void add_search_flags(CLI::App* cmd, ugame::cli::SearchOptions& s) {
  cmd->add_option("--seed", s.seed, "RNG seed (default: $UGAME_SEED or 0)");
  cmd->add_option("--restarts", s.restarts, "random restarts per gamma")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", s.threads, "worker threads, 0 = all cores");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ugame::cli;

  CLI::App app{"Quantum preparation-uncertainty guessing game"};
  app.require_subcommand(1);
  const std::uint64_t seed0 = default_seed();

  CurveOptions curve;
  curve.search.seed = seed0;
  auto* c_curve = app.add_subcommand("curve", "p_guess as a function of gamma");
  c_curve->add_option("--d", curve.d, "outcome count");
  c_curve->add_option("--gamma-start", curve.gamma_start);
  c_curve->add_option("--gamma-end", curve.gamma_end);
  c_curve->add_option("--steps", curve.steps, "grid points");
  c_curve->add_option("--mode", curve.mode, "analytic or numeric");
  c_curve->add_option("--out", curve.out, "CSV path (default: stdout)");
  add_search_flags(c_curve, curve.search);

  Fig3Options fig3;
  fig3.search.seed = seed0;
  auto* c_fig3 = app.add_subcommand("fig3", "numeric curves for several d, CSV per d plus an SVG chart");
  c_fig3->add_option("--dims", fig3.dims, "comma-separated dimensions")->delimiter(',');
  c_fig3->add_option("--steps", fig3.steps, "grid points on [0, 1]");
  c_fig3->add_option("--out-dir", fig3.out_dir);
  add_search_flags(c_fig3, fig3.search);

  SchmidtOptions schmidt;
  schmidt.search.seed = seed0;
  auto* c_schmidt = app.add_subcommand("schmidt", "Schmidt coefficients of the best state at gamma = 1");
  c_schmidt->add_option("--d", schmidt.d);
  c_schmidt->add_option("--out", schmidt.out, "CSV path (default: stdout)");
  add_search_flags(c_schmidt, schmidt.search);

  EntropyOptions entropy;
  auto* c_entropy = app.add_subcommand("entropy", "conditional min-entropies for d = 2");
  c_entropy->add_option("--steps", entropy.steps);
  c_entropy->add_option("--out", entropy.out, "CSV path; an SVG is written next to it");
  c_entropy->add_flag("--sdp-check", entropy.sdp_check, "cross-check closed forms by SDP");

  DiscriminateOptions disc;
  auto* c_disc = app.add_subcommand("discriminate", "p_guess for a state read from a JSON file");
  c_disc->add_option("--state-file", disc.state_file)->required();
  c_disc->add_option("--gamma", disc.gamma)->required();
  c_disc->add_option("--format", disc.format, "json or csv");

  CertifyOptions cert;
  auto* c_cert = app.add_subcommand("certify", "check the two-outcome dual certificate for phi_jl");
  c_cert->add_option("--d", cert.d)->required();
  c_cert->add_option("--gamma", cert.gamma)->required();
  c_cert->add_option("--j", cert.j)->required();
  c_cert->add_option("--l", cert.l)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  if (*c_curve) return cmd_curve(curve, std::cout, std::cerr);
  if (*c_fig3) return cmd_fig3(fig3, std::cout, std::cerr);
  if (*c_schmidt) return cmd_schmidt(schmidt, std::cout, std::cerr);
  if (*c_entropy) return cmd_entropy(entropy, std::cout, std::cerr);
  if (*c_disc) return cmd_discriminate(disc, std::cout, std::cerr);
  if (*c_cert) return cmd_certify(cert, std::cout, std::cerr);
  return kUsage;
}
