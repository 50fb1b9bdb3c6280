#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include "cli_common.hpp"
#include "commands.hpp"
#include "steerkit/steerkit.hpp"

namespace {

using namespace steerkit;
using namespace steerkit::cli;

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const SolverNumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NonMonotoneMargin& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "unexpected failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

void add_config(CLI::App* sub) {
  sub->set_config("--config", "",
                  "flat key=value file with the same keys as the long flags; "
                  "command-line flags override");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steerability of reduced pair states in entanglement-distribution networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  int rc = kExitOk;

  // ---- sweep ----
  SweepOptions sweep;
  std::string sweep_scheme = "m2";
  CLI::App* sub_sweep = app.add_subcommand("sweep", "grid sweep over (scheme, n, alpha, mu)");
  add_config(sub_sweep);
  sub_sweep->add_option("--scenario", sweep.scenario, "rhalfpe|rpe|srpe")->required();
  sub_sweep->add_option("--scheme", sweep_scheme,
                        "m2|m3|dihedral:<m>|equatorial|projective:<res>");
  sub_sweep->add_option("--schemes", sweep.schemes, "comma list of schemes");
  sub_sweep->add_option("--direction", sweep.direction, "ab|ba");
  sub_sweep->add_option("--n", sweep.n, "single n");
  sub_sweep->add_option("--ns", sweep.ns, "comma list of n values");
  sub_sweep->add_option("--n-min", sweep.n_min, "n range start");
  sub_sweep->add_option("--n-max", sweep.n_max, "n range end (inclusive)");
  sub_sweep->add_option("--n-step", sweep.n_step, "n range step");
  sub_sweep->add_option("--alpha", sweep.alpha, "single alpha");
  sub_sweep->add_option("--alphas", sweep.alphas, "comma list of alpha values");
  sub_sweep->add_option("--alpha-min", sweep.alpha_min, "alpha range start");
  sub_sweep->add_option("--alpha-max", sweep.alpha_max, "alpha range end (inclusive)");
  sub_sweep->add_option("--alpha-step", sweep.alpha_step, "alpha range step");
  sub_sweep->add_option("--mu", sweep.mu, "single mu (default 0)");
  sub_sweep->add_option("--mus", sweep.mus, "comma list of mu values");
  sub_sweep->add_option("--out", sweep.out, "output path (default stdout)");
  sub_sweep->add_option("--format", sweep.format, "csv|json");
  sub_sweep->callback([&] {
    if (sweep.schemes.empty()) sweep.schemes = sweep_scheme;
    rc = guarded([&] { return cmd_sweep(sweep); });
  });

  // ---- threshold ----
  ThresholdOptions threshold;
  CLI::App* sub_threshold =
      app.add_subcommand("threshold", "steerability threshold in alpha or n");
  add_config(sub_threshold);
  sub_threshold->add_option("--scenario", threshold.scenario, "rhalfpe|rpe|srpe")
      ->required();
  sub_threshold->add_option("--scheme", threshold.scheme, "criterion scheme");
  sub_threshold->add_option("--direction", threshold.direction, "ab|ba");
  sub_threshold->add_option("--n", threshold.n, "fix n, solve for alpha");
  sub_threshold->add_option("--alpha", threshold.alpha, "fix alpha, solve for n");
  sub_threshold->add_option("--mu", threshold.mu, "noise weight");
  sub_threshold->add_option("--method", threshold.method, "auto|symbolic|bisection");
  sub_threshold->add_option("--out", threshold.out, "JSON record path");
  sub_threshold->callback([&] { rc = guarded([&] { return cmd_threshold(threshold); }); });

  // ---- classify ----
  ClassifyOptions classify;
  CLI::App* sub_classify =
      app.add_subcommand("classify", "steering-network case of a scenario instance");
  add_config(sub_classify);
  sub_classify->add_option("--scenario", classify.scenario, "rhalfpe|rpe|srpe")
      ->required();
  sub_classify->add_option("--scheme", classify.scheme, "measurement scheme");
  sub_classify->add_option("--n", classify.n, "party count (integer)")->required();
  sub_classify->add_option("--alpha", classify.alpha, "pair parameter")->required();
  sub_classify->add_option("--mu", classify.mu, "noise weight");
  sub_classify->add_option("--out", classify.out, "JSON output path");
  sub_classify->callback([&] { rc = guarded([&] { return cmd_classify(classify); }); });

  // ---- oracle ----
  OracleOptions oracle;
  std::string oracle_verify;
  CLI::App* sub_oracle =
      app.add_subcommand("oracle", "LP local-hidden-state oracle with certificates");
  add_config(sub_oracle);
  sub_oracle->add_option("--scenario", oracle.scenario, "rhalfpe|rpe|srpe");
  sub_oracle->add_option("--state", oracle.state_file,
                         "state JSON file (x_params or matrix) instead of --scenario");
  sub_oracle->add_option("--scheme", oracle.scheme, "measurement scheme");
  sub_oracle->add_option("--direction", oracle.direction, "ab|ba");
  sub_oracle->add_option("--n", oracle.n, "party count");
  sub_oracle->add_option("--alpha", oracle.alpha, "pair parameter");
  sub_oracle->add_option("--mu", oracle.mu, "noise weight");
  sub_oracle->add_option("--resolution", oracle.resolution,
                         "hidden-polytope resolution (snapped to the icosphere family)");
  sub_oracle->add_option("--polytope", oracle.polytope, "auto|inscribed|circumscribed");
  sub_oracle->add_option("--out", oracle.out, "certificate path");
  sub_oracle->add_option("--verify", oracle_verify, "re-check a stored certificate");
  sub_oracle->callback([&] {
    if (!oracle_verify.empty()) {
      rc = guarded([&] { return cmd_verify(VerifyOptions{oracle_verify}); });
    } else {
      rc = guarded([&] { return cmd_oracle(oracle); });
    }
  });

  // ---- reduce ----
  ReduceOptions reduce;
  CLI::App* sub_reduce =
      app.add_subcommand("reduce", "closed-form reduced pair state of a scenario");
  add_config(sub_reduce);
  sub_reduce->add_option("--scenario", reduce.scenario, "rhalfpe|rpe|srpe")->required();
  sub_reduce->add_option("--direction", reduce.direction, "ab|ba");
  sub_reduce->add_option("--n", reduce.n, "party count (real-valued allowed)")
      ->required();
  sub_reduce->add_option("--alpha", reduce.alpha, "pair parameter")->required();
  sub_reduce->add_option("--mu", reduce.mu, "noise weight");
  sub_reduce->add_option("--out", reduce.out, "output path (default stdout)");
  sub_reduce->add_option("--format", reduce.format, "csv|json");
  sub_reduce->callback([&] { rc = guarded([&] { return cmd_reduce(reduce); }); });

  // ---- verify ----
  VerifyOptions verify;
  CLI::App* sub_verify =
      app.add_subcommand("verify", "re-check a stored certificate file");
  sub_verify->add_option("--cert", verify.cert, "certificate JSON path")->required();
  sub_verify->callback([&] { rc = guarded([&] { return cmd_verify(verify); }); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  return rc;
}
