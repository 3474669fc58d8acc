// Command line driver for convergence, drift and orbit experiments and for
// partitioned-pair order certification.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

#include "licrk/errors.hpp"
#include "licrk/harness.hpp"
#include "licrk/problems.hpp"
#include "licrk/tableau.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitCertification = 3;

struct RawOptions {
  std::string problem = "euler";
  std::string tableau = "gauss:3";
  std::string pair;
  std::string predictor = "euler";
  std::string mode = "semi";
  std::string k = "1";
  std::string h_list;
  double periods = 1.0;
  std::string out;
  std::size_t subsample = 64;
  std::uint64_t seed = 0;
  int order = 4;
  double tol = 1e-12;
  bool no_base = false;
};

void add_run_flags(CLI::App* cmd, RawOptions& o) {
  cmd->add_option("--problem", o.problem, "euler | kepler:e=<val> | kdv:d=<val>");
  cmd->add_option("--tableau", o.tableau, "gauss:<s> | dirk3 | dirk:<preset>");
  cmd->add_option("--pair", o.pair, "prk-gauss2 | prk-dirk3 (replaces tableau and predictor)");
  cmd->add_option("--predictor", o.predictor, "euler | extrapolation | hermite | cerk | exact | random");
  cmd->add_option("--mode", o.mode, "stage iteration")->check(CLI::IsMember({"semi", "explicit"}));
  cmd->add_option("--k", o.k, "iteration counts, e.g. 1,3,6 or 1-6");
  cmd->add_option("--h-list", o.h_list, "step sizes, numbers or T/<n>")->required();
  cmd->add_option("--periods", o.periods, "integration length in periods");
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--seed", o.seed, "seed for the random predictor");
}

licrk::ExperimentConfig to_config(const RawOptions& o) {
  licrk::ExperimentConfig cfg;
  cfg.problem = o.problem;
  cfg.tableau = o.tableau;
  if (!o.pair.empty()) cfg.pair = o.pair;
  cfg.predictor = o.predictor;
  cfg.mode = o.mode == "explicit" ? licrk::IterationMode::explicit_update
                                  : licrk::IterationMode::semi_implicit;
  cfg.ks = licrk::parse_k_list(o.k);
  cfg.periods = o.periods;
  cfg.out = o.out;
  cfg.subsample = o.subsample;
  cfg.seed = o.seed;
  cfg.include_base = !o.no_base;
  cfg.order = o.order;
  cfg.tol = o.tol;
  if (!o.h_list.empty()) {
    const auto problem = licrk::problem_by_id(o.problem);
    cfg.hs = licrk::parse_h_list(o.h_list, problem->period());
  }
  if (!cfg.pair) {
    const auto t = licrk::butcher_by_id(cfg.tableau);
    if (!licrk::is_canonical(t, 1e-12))
      std::cerr << "warning: tableau " << cfg.tableau << " is not canonical; V is not conserved\n";
  }
  cfg.validate();
  return cfg;
}

template <class Result>
void emit(const Result& r, const licrk::ExperimentConfig& cfg) {
  if (cfg.out.empty()) {
    r.write(std::cout, cfg.serialise());
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw licrk::Error(licrk::Errc::config, "cannot open " + cfg.out);
  r.write(f, cfg.serialise());
}

int exit_code_for(licrk::Errc code) {
  switch (code) {
    case licrk::Errc::invalid_argument:
    case licrk::Errc::config:
    case licrk::Errc::unsupported:
      return kExitUsage;
    default:
      return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linearly implicit conservative Runge-Kutta experiments"};
  app.require_subcommand(1);
  RawOptions o;

  auto* converge = app.add_subcommand("converge", "relative error table and fitted slopes");
  add_run_flags(converge, o);
  converge->add_flag("--no-base", o.no_base, "omit the base method column");

  auto* drift = app.add_subcommand("drift", "relative drift of V and secondary observables");
  add_run_flags(drift, o);
  drift->add_option("--subsample", o.subsample, "write every m-th step");

  auto* orbit = app.add_subcommand("orbit", "Kepler positions over the final period");
  add_run_flags(orbit, o);

  auto* verify = app.add_subcommand("verify-tableau", "check partitioned order conditions");
  verify->add_option("--pair", o.pair, "prk-gauss2 | prk-dirk3")->required();
  verify->add_option("--order", o.order, "order to certify");
  verify->add_option("--tol", o.tol, "residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      licrk::ExperimentConfig cfg;
      cfg.pair = o.pair;
      cfg.order = o.order;
      cfg.tol = o.tol;
      const auto report = licrk::certify(cfg);
      std::cout << report.format();
      return report.passed ? kExitOk : kExitCertification;
    }
    const auto cfg = to_config(o);
    if (converge->parsed()) {
      const auto table = licrk::convergence_study(cfg);
      emit(table, cfg);
      for (const auto& row : table.errors)
        for (double e : row)
          if (!std::isfinite(e)) return kExitNumerical;
    } else if (drift->parsed()) {
      const auto series = licrk::drift_study(cfg);
      emit(series, cfg);
      for (double m : series.max_drift)
        if (!std::isfinite(m)) return kExitNumerical;
    } else if (orbit->parsed()) {
      emit(licrk::orbit_dump(cfg), cfg);
    }
  } catch (const licrk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}
