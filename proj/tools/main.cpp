#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "experiment.hpp"

using wreathwalk::cli::ExperimentConfig;

namespace {

// The --n option arrives as text ("a,b,c" or "start:stop:factor") and is
// expanded after parsing.
struct RawOptions {
  std::string n_text;
  std::string out_text;
  std::string config_file;
};

void add_common_flags(CLI::App* cmd, ExperimentConfig& config, RawOptions& raw) {
  cmd->add_option("--config", raw.config_file, "flat key=value config file")
      ->expected(1);
  cmd->add_option("--out", raw.out_text, "output directory");
  cmd->add_option("--threads", config.threads, "worker pool cap (0 = all cores)");
  cmd->add_flag("--no-plot", config.no_plot, "skip SVG plots");
  cmd->add_option("--tol", config.tol, "relative tolerance for checks");
  cmd->add_option("--support-cap", config.support_cap,
                  "cap on ball / convolution support size");
}

void add_seeded_flags(CLI::App* cmd, ExperimentConfig& config, RawOptions& raw) {
  cmd->add_option("--n", raw.n_text, "n grid: comma list or start:stop:factor");
  cmd->add_option("--trials", config.trials, "Monte Carlo trials per n");
  cmd->add_option("--seed", config.seed, "master seed")
      ->envname("WREATHWALK_SEED");
  cmd->add_flag("--dump-positions", config.dump_positions,
                "dump the first trajectory, one (x,y) per line");
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig config;
  RawOptions raw;

  // A config file provides defaults; command-line flags override it.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      raw.config_file = argv[i + 1];
    }
  }
  if (!raw.config_file.empty()) {
    try {
      wreathwalk::cli::apply_config_file(raw.config_file, config);
    } catch (const std::exception& e) {
      std::cerr << "parse error: " << e.what() << '\n';
      return 2;
    }
  }

  CLI::App app{"random walks on iterated wreath products: simulation and "
               "verification pipelines"};
  app.require_subcommand(1);
  std::string config_flag;
  app.add_option("--config", config_flag, "flat key=value config file")
      ->expected(1);

  auto* verify = app.add_subcommand("verify-group",
                                    "group axioms, brackets, metric checks");
  verify->add_option("--spec", config.spec_text, "group spec text");
  verify->add_option("--radius", config.radius, "BFS ball radius");
  verify->add_option("--triples", config.triples, "random triples to test");
  verify->add_option("--seed", config.seed, "master seed")->envname("WREATHWALK_SEED");
  verify->add_option("--measure", config.measure, "elements | words");
  add_common_flags(verify, config, raw);

  auto* growth = app.add_subcommand("growth", "exact growth function v(n)");
  growth->add_option("--spec", config.spec_text, "group spec text");
  growth->add_option("--radius", config.radius, "BFS ball radius");
  add_common_flags(growth, config, raw);

  auto* drift_exact = app.add_subcommand("drift-exact",
                                         "exact drift by convolution");
  drift_exact->add_option("--spec", config.spec_text, "group spec text");
  drift_exact->add_option("--n-max", config.n_max, "largest convolution power");
  drift_exact->add_option("--measure", config.measure, "elements | words");
  add_common_flags(drift_exact, config, raw);

  auto* drift_mc = app.add_subcommand("drift-mc", "Monte Carlo drift bracket");
  drift_mc->add_option("--spec", config.spec_text, "group spec text");
  drift_mc->add_option("--measure", config.measure, "elements | words");
  add_seeded_flags(drift_mc, config, raw);
  add_common_flags(drift_mc, config, raw);

  auto* compose = app.add_subcommand(
      "compose-drift", "E sum_z f(b_z) with an inner drift function");
  compose->add_option("--f", config.functional_name,
                      "identity | indicator | sqrt | pow(a) | L(k,a)");
  add_seeded_flags(compose, config, raw);
  add_common_flags(compose, config, raw);

  auto* entropy_exact = app.add_subcommand("entropy-exact",
                                           "exact entropy by convolution");
  entropy_exact->add_option("--spec", config.spec_text, "group spec text");
  entropy_exact->add_option("--n-max", config.n_max, "largest convolution power");
  entropy_exact->add_option("--measure", config.measure, "elements | words");
  add_common_flags(entropy_exact, config, raw);

  auto* entropy_bounds = app.add_subcommand(
      "entropy-bounds", "exact entropy/growth/drift bound checks");
  entropy_bounds->add_option("--spec", config.spec_text, "group spec text");
  entropy_bounds->add_option("--n-max", config.n_max, "largest convolution power");
  add_common_flags(entropy_bounds, config, raw);

  auto* range_stats = app.add_subcommand("range-stats",
                                         "range statistics of the 2D walk");
  add_seeded_flags(range_stats, config, raw);
  add_common_flags(range_stats, config, raw);

  auto* local_time = app.add_subcommand("local-time",
                                        "origin local time of the 2D walk");
  add_seeded_flags(local_time, config, raw);
  add_common_flags(local_time, config, raw);

  auto* functional = app.add_subcommand(
      "functional", "Monte Carlo local-time functional estimate");
  functional->add_option("--f", config.functional_name,
                         "identity | indicator | sqrt | pow(a) | L(k,a)");
  add_seeded_flags(functional, config, raw);
  add_common_flags(functional, config, raw);

  auto* concavity = app.add_subcommand("concavity",
                                       "second-difference concavity scans");
  concavity->add_option("--target", config.scan_target,
                        "ltilde | extension | reciprocal");
  concavity->add_option("--k", config.k, "iterated-log depth");
  concavity->add_option("--alpha", config.alpha, "exponent in (0,1]");
  concavity->add_option("--lo", config.lo, "scan start (0 = derived)");
  concavity->add_option("--hi", config.hi, "scan end (0 = derived)");
  concavity->add_option("--nval", config.n_value, "the n of the reciprocal scan");
  concavity->add_option("--points", config.points, "grid points");
  add_common_flags(concavity, config, raw);

  auto* appendix = app.add_subcommand(
      "appendix-check", "closed-form derivative inequalities, tower-sampled");
  appendix->add_option("--k", config.k, "iterated-log depth");
  appendix->add_option("--alpha", config.alpha, "exponent in (0,1]");
  appendix->add_option("--points", config.points, "sample points");
  add_common_flags(appendix, config, raw);

  auto* rate_fit = app.add_subcommand("rate-fit",
                                      "rank catalog rates against a series");
  rate_fit->add_option("--input", config.input, "input CSV with an n column");
  rate_fit->add_option("--column", config.column, "value column name");
  rate_fit->add_option("--rates", config.rates, "comma list of rate names");
  add_common_flags(rate_fit, config, raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    std::cerr << "parse error: " << e.get_name() << ": " << e.what() << '\n';
    return 2;
  }

  try {
    if (!raw.n_text.empty()) {
      config.n_grid = wreathwalk::cli::parse_n_grid(raw.n_text);
    }
    if (!raw.out_text.empty()) {
      config.out_dir = raw.out_text;
    }
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  }

  for (const CLI::App* sub : app.get_subcommands()) {
    config.command = sub->get_name();
  }
  return wreathwalk::cli::run_experiment(std::move(config));
}
