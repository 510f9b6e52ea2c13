#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wreathwalk/errors.hpp"
#include "wreathwalk/lattice_walk.hpp"

namespace wreathwalk::cli {

// One experiment invocation: a subcommand plus the shared knobs. Field
// defaults are the flag defaults; a config file overrides them and flags
// override the file.
struct ExperimentConfig {
  std::string command;

  std::string spec_text = "Z2 wr C2";
  std::vector<std::uint64_t> n_grid;
  std::uint64_t trials = 200;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "wreathwalk_out";
  unsigned threads = 0;
  bool no_plot = false;
  bool dump_positions = false;

  int radius = 4;
  std::uint64_t triples = 100000;
  int n_max = 6;
  std::uint64_t support_cap = 5'000'000;
  double tol = 1e-9;

  std::string functional_name = "sqrt";
  std::string scan_target = "ltilde";  // ltilde | extension | reciprocal
  int k = 1;
  double alpha = 1.0;
  double lo = 0.0;       // 0: derive from (k, alpha)
  double hi = 0.0;
  double n_value = 1e80;  // the n of the reciprocal scan
  std::uint64_t points = 10000;

  std::string input;
  std::string column = "mean";
  std::string rates;  // comma list; empty: default catalog

  std::string measure = "elements";  // or "words"
};

// "4096,16384,65536" or "1024:65536:4" (geometric, inclusive stop).
std::vector<std::uint64_t> parse_n_grid(const std::string& text);

// identity | indicator | sqrt | pow(a) | L(k,a); all vanish at 0.
RealFunction parse_functional(const std::string& name);

// Flat key=value file; '#' starts a comment. Keys are the long flag names.
void apply_config_file(const std::filesystem::path& path, ExperimentConfig& config);

// A checked property failed in a verify-style subcommand.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

// Runs the experiment, writes CSV/SVG artifacts and the manifest (always,
// also on failure), and returns the process exit code:
// 0 ok, 2 parse error, 3 resource cap, 4 verification failure, 1 internal.
int run_experiment(ExperimentConfig config);

}  // namespace wreathwalk::cli
