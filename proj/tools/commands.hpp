#pragma once

// Implementations of the ugame subcommands. Each returns a process exit code:
// 0 success, 2 usage/input error, 3 I/O error, 4 verification failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "report.hpp"
#include "ugame/analytic.hpp"
#include "ugame/discrimination.hpp"
#include "ugame/entropy.hpp"
#include "ugame/game.hpp"
#include "ugame/optimizer.hpp"

namespace ugame::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kIo = 3, kVerify = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::vector<double> gamma_grid(double start, double end, int steps) {
  if (!(start >= 0.0 && start <= end && end <= 1.0)) throw UsageError("gamma range must satisfy 0 <= start <= end <= 1");
  if (steps < 1) throw UsageError("--steps must be >= 1");
  if (steps == 1) return {start};
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) g[i] = start + (end - start) * i / (steps - 1);
  g.back() = end;
  return g;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {  // GameError, LinalgError
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const report::IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << " (iterations " << e.iterations << ", mu " << e.mu << ")\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

struct SearchOptions {
  std::uint64_t seed = 0;
  int restarts = 64;
  unsigned threads = 1;

  OptimizerConfig config() const {
    OptimizerConfig oc;
    oc.seed = seed;
    oc.restarts = restarts;
    oc.threads = threads;
    return oc;
  }
  void describe(report::RunManifest& m) const {
    m.seed = seed;
    m.parameters["seed"] = std::to_string(seed);
    m.parameters["restarts"] = std::to_string(restarts);
    m.parameters["threads"] = std::to_string(threads);
  }
};

inline void warn_failures(std::ostream& err, const OptResult& r, double gamma) {
  if (r.failed_evals > 0)
    err << "warning: " << r.failed_evals << " objective evaluations failed at gamma=" << report::format_number(gamma)
        << " and were scored 0\n";
}

// ---------------------------------------------------------------------------

struct CurveOptions {
  std::size_t d = 2;
  double gamma_start = 0.0;
  double gamma_end = 1.0;
  int steps = 11;
  std::string mode = "analytic";
  std::string out;  // empty: stdout
  SearchOptions search;
};

inline report::CsvTable curve_table(std::size_t d, const std::vector<double>& grid, const std::vector<double>& p,
                                    const std::string& mode) {
  report::CsvTable t{{"gamma", "p_guess", "mode", "d"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i)
    t.rows.push_back({report::format_number(grid[i]), report::format_number(p[i]), mode, std::to_string(d)});
  return t;
}

inline std::vector<double> numeric_curve(std::size_t d, const std::vector<double>& grid, const SearchOptions& s,
                                         std::ostream& err) {
  const auto results = sweep_gamma(d, grid, s.config());
  std::vector<double> p;
  for (std::size_t i = 0; i < results.size(); ++i) {
    warn_failures(err, results[i], grid[i]);
    p.push_back(results[i].best_value);
  }
  return p;
}

inline int cmd_curve(const CurveOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.d < 2) throw UsageError("--d must be >= 2");
    const auto grid = gamma_grid(o.gamma_start, o.gamma_end, o.steps);
    std::vector<double> p;
    if (o.mode == "analytic") {
      const bool all_zero = std::all_of(grid.begin(), grid.end(), [](double g) { return g == 0.0; });
      if (o.d != 2 && !all_zero)
        throw UsageError("analytic mode needs d = 2, or gamma = 0 for other d; use --mode numeric");
      for (double g : grid) p.push_back(o.d == 2 ? pguess_max_d2(g) : pguess_max_gamma0(o.d));
    } else if (o.mode == "numeric") {
      p = numeric_curve(o.d, grid, o.search, err);
    } else {
      throw UsageError("--mode must be analytic or numeric");
    }
    const std::string csv = curve_table(o.d, grid, p, o.mode).str();
    if (o.out.empty()) {
      out << csv;
      return int(kOk);
    }
    report::write_text(o.out, csv);
    report::RunManifest m;
    m.command = "curve";
    m.parameters = {{"d", std::to_string(o.d)},
                    {"gamma_start", report::format_number(o.gamma_start)},
                    {"gamma_end", report::format_number(o.gamma_end)},
                    {"steps", std::to_string(o.steps)},
                    {"mode", o.mode}};
    o.search.describe(m);
    m.write_alongside(o.out);
    return int(kOk);
  });
}

// ---------------------------------------------------------------------------

struct Fig3Options {
  std::vector<std::size_t> dims{2, 3, 4, 5};
  int steps = 41;
  std::string out_dir = ".";
  SearchOptions search;
};

inline int cmd_fig3(const Fig3Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.dims.empty()) throw UsageError("--dims must list at least one dimension");
    for (auto d : o.dims)
      if (d < 2) throw UsageError("--dims entries must be >= 2");
    const auto grid = gamma_grid(0.0, 1.0, o.steps);
    std::filesystem::create_directories(o.out_dir);

    report::RunManifest m;
    m.command = "fig3";
    std::string dims_text;
    for (auto d : o.dims) dims_text += (dims_text.empty() ? "" : ",") + std::to_string(d);
    m.parameters = {{"dims", dims_text}, {"steps", std::to_string(o.steps)}, {"out_dir", o.out_dir}};
    o.search.describe(m);

    report::ChartSpec chart{"Best-found guessing probability", "gamma", "p_guess", {}};
    for (auto d : o.dims) {
      const auto p = numeric_curve(d, grid, o.search, err);
      const std::string path = (std::filesystem::path(o.out_dir) / ("fig3_d" + std::to_string(d) + ".csv")).string();
      report::write_text(path, curve_table(d, grid, p, "numeric").str());
      m.write_alongside(path);
      chart.series.push_back({"d = " + std::to_string(d), grid, p});
      out << "wrote " << path << "\n";
    }
    const std::string svg = (std::filesystem::path(o.out_dir) / "fig3.svg").string();
    report::write_text(svg, report::svg_chart(chart));
    m.write_alongside(svg);
    out << "wrote " << svg << "\n";
    return int(kOk);
  });
}

// ---------------------------------------------------------------------------

struct SchmidtOptions {
  std::size_t d = 3;
  std::string out;
  SearchOptions search;
};

inline int cmd_schmidt(const SchmidtOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.d < 2) throw UsageError("--d must be >= 2");
    const OptResult r = maximize_pguess(o.d, 1.0, o.search.config());
    warn_failures(err, r, 1.0);
    const auto s = joint_schmidt_t2(GameConfig(o.d, 1.0), r.best_state);
    report::CsvTable t{{"d", "p_guess", "schmidt_1", "schmidt_2"},
                       {{std::to_string(o.d), report::format_number(r.best_value), report::format_number(s[0]),
                         report::format_number(s.size() > 1 ? s[1] : 0.0)}}};
    if (o.out.empty()) {
      out << t.str();
      return int(kOk);
    }
    report::write_text(o.out, t.str());
    report::RunManifest m;
    m.command = "schmidt";
    m.parameters = {{"d", std::to_string(o.d)}};
    o.search.describe(m);
    m.write_alongside(o.out);
    return int(kOk);
  });
}

// ---------------------------------------------------------------------------

struct EntropyOptions {
  int steps = 11;
  std::string out;  // empty: CSV to stdout, no chart
  bool sdp_check = false;
};

inline int cmd_entropy(const EntropyOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.steps < 2) throw UsageError("--steps must be >= 2");
    const auto grid = gamma_grid(0.0, 1.0, o.steps);
    const auto pts = entropy_curve_d2(grid, o.sdp_check);
    report::CsvTable t{{"gamma", "h_B_given_R", "h_X_given_R", "h_P_given_R_t1", "h_P_given_R_t2"}, {}};
    double worst = 0.0;
    for (const auto& p : pts) {
      t.rows.push_back({report::format_number(p.gamma), report::format_number(p.h_B_given_R),
                        report::format_number(p.h_X_given_R), report::format_number(p.h_P_given_R_t1),
                        report::format_number(p.h_P_given_R_t2)});
      if (p.sdp_deviation) worst = std::max(worst, *p.sdp_deviation);
    }
    if (o.out.empty()) {
      out << t.str();
    } else {
      report::write_text(o.out, t.str());
      report::ChartSpec chart{"Conditional min-entropies, d = 2", "gamma", "H_min", {}};
      const char* names[] = {"H(B|R)", "H(X|R)", "H(P|R) t1", "H(P|R) t2"};
      for (int k = 0; k < 4; ++k) {
        report::Series s{names[k], {}, {}};
        for (const auto& p : pts) {
          s.x.push_back(p.gamma);
          const double v[] = {p.h_B_given_R, p.h_X_given_R, p.h_P_given_R_t1, p.h_P_given_R_t2};
          s.y.push_back(v[k]);
        }
        chart.series.push_back(std::move(s));
      }
      std::filesystem::path svg(o.out);
      svg.replace_extension(".svg");
      report::write_text(svg.string(), report::svg_chart(chart));
      report::RunManifest m;
      m.command = "entropy";
      m.parameters = {{"steps", std::to_string(o.steps)}, {"sdp_check", o.sdp_check ? "true" : "false"}};
      m.write_alongside(o.out);
      m.write_alongside(svg.string());
    }
    if (o.sdp_check) {
      err << "max |closed form - SDP| = " << report::format_number(worst) << "\n";
      if (worst > 1e-6) return int(kVerify);
    }
    return int(kOk);
  });
}

// ---------------------------------------------------------------------------

/// Reads {"d": int, "amplitudes": [[re, im], ...]}; normalizes with a warning
/// when the norm is off by more than 1e-6.
inline PureState load_state_file(const std::string& path, std::ostream& err) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open state file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError(path + ": top level must be an object");
  if (!j.contains("d") || !j["d"].is_number_integer()) throw UsageError(path + ": field \"d\" must be an integer");
  const long long d = j["d"].get<long long>();
  if (d < 2) throw UsageError(path + ": field \"d\" must be >= 2");
  if (!j.contains("amplitudes") || !j["amplitudes"].is_array())
    throw UsageError(path + ": field \"amplitudes\" must be an array");
  const auto& a = j["amplitudes"];
  if (static_cast<long long>(a.size()) != d)
    throw UsageError(path + ": field \"amplitudes\" has " + std::to_string(a.size()) + " entries, expected " +
                     std::to_string(d));
  std::vector<Complex> amp;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& z = a[k];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
      throw UsageError(path + ": amplitudes[" + std::to_string(k) + "] must be [re, im]");
    amp.emplace_back(z[0].get<double>(), z[1].get<double>());
  }
  const double n = norm(amp);
  if (!(n > 0.0) || !std::isfinite(n)) throw UsageError(path + ": amplitudes must be finite and not all zero");
  if (std::abs(n - 1.0) > 1e-6)
    err << "warning: state norm is " << report::format_number(n) << ", normalizing\n";
  return PureState::normalized(std::move(amp));
}

struct DiscriminateOptions {
  std::string state_file;
  double gamma = 0.0;
  std::string format = "json";
};

inline int cmd_discriminate(const DiscriminateOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.format != "json" && o.format != "csv") throw UsageError("--format must be json or csv");
    if (!(o.gamma >= 0.0 && o.gamma <= 1.0)) throw UsageError("--gamma must lie in [0, 1]");
    const PureState phi = load_state_file(o.state_file, err);
    const Ensemble ens = ensemble(GameConfig(phi.dim(), o.gamma), phi);
    const DiscriminationResult r = pguess_sdp(ens);
    const auto probs = ens.probabilities();
    if (o.format == "json") {
      nlohmann::json j = {{"d", phi.dim()},
                          {"gamma", o.gamma},
                          {"p_guess", r.p_guess},
                          {"dual_value", r.dual_value},
                          {"primal_value", r.primal_value},
                          {"gap", r.gap},
                          {"probabilities", probs}};
      out << j.dump(2) << "\n";
    } else {
      report::CsvTable t{{"d", "gamma", "p_guess", "dual_value", "primal_value", "gap"}, {}};
      std::vector<std::string> row{std::to_string(phi.dim()), report::format_number(o.gamma),
                                   report::format_number(r.p_guess), report::format_number(r.dual_value),
                                   report::format_number(r.primal_value), report::format_number(r.gap)};
      for (std::size_t x = 0; x < probs.size(); ++x) {
        t.header.push_back("p_" + std::to_string(x));
        row.push_back(report::format_number(probs[x]));
      }
      t.rows.push_back(std::move(row));
      out << t.str();
    }
    return int(kOk);
  });
}

// ---------------------------------------------------------------------------

struct CertifyOptions {
  std::size_t d = 2;
  double gamma = 0.0;
  std::size_t j = 0;
  std::size_t l = 1;
};

inline int cmd_certify(const CertifyOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CMatrix q = certificate_phi_jl(o.d, o.gamma, o.j, o.l);
    const Ensemble ens = ensemble(GameConfig(o.d, o.gamma), phi_jl(o.d, o.j, o.l));
    const FeasibilityReport feas = is_feasible(q, TraceMinProblem::dominating(ens.states()), 1e-9);
    const double trace_q = q.trace().real();
    const double closed = pguess_phi_jl_closed_form(o.d, o.gamma, o.j, o.l);
    const double sdp = pguess_sdp(ens).dual_value;
    const bool agree = feas.feasible && std::abs(trace_q - closed) <= 1e-7 && std::abs(sdp - closed) <= 1e-7 &&
                       std::abs(trace_q - sdp) <= 1e-7;
    out << "trace_Q " << report::format_number(trace_q) << "\n"
        << "min_slack " << report::format_number(feas.min_slack) << "\n"
        << "closed_form " << report::format_number(closed) << "\n"
        << "sdp_value " << report::format_number(sdp) << "\n"
        << "status " << (agree ? "agree" : "DISAGREE") << "\n";
    return agree ? int(kOk) : int(kVerify);
  });
}

}  // namespace ugame::cli
