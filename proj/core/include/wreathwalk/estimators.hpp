#pragma once

#include <cstdint>
#include <vector>

#include "wreathwalk/distribution.hpp"
#include "wreathwalk/lattice_walk.hpp"
#include "wreathwalk/wreath_group.hpp"

namespace wreathwalk {

// Monte Carlo sandwich on the drift: means of the lower/upper word-length
// brackets of the walk's position after n steps.
struct DriftBracket {
  std::uint64_t n = 0;
  double lower_mean = 0.0;
  double upper_mean = 0.0;
  double lower_se = 0.0;
  double upper_se = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
};

DriftBracket drift_mc_bracket(const GroupSpec& spec, std::uint64_t n,
                              std::uint64_t trials, std::uint64_t master_seed,
                              unsigned threads = 0,
                              MeasureSemantics semantics = MeasureSemantics::Elements);

// The walk's endpoint after n right-multiplications of sampled generators;
// exposed for tests that want the endpoint itself.
Element sample_walk_endpoint(const WreathGroup& group, const GeneratorSet& gens,
                             std::uint64_t n, std::uint64_t seed);

// Monte Carlo mean of sum_z inner_drift(b_z) over 2D trajectories: the
// reduction of the wreath drift to a local-time functional. Shares its
// trajectory substreams with functional_estimate, so matching seeds give
// bit-identical results.
EstimateReport compose_drift(const RealFunction& inner_drift, std::uint64_t n,
                             std::uint64_t trials, std::uint64_t master_seed,
                             unsigned threads = 0);

struct EntropyBoundsRow {
  std::uint64_t n = 0;
  double entropy = 0.0;        // H(n)
  double drift = 0.0;          // L(n)
  double second_moment = 0.0;  // E l^2
  std::uint64_t growth = 0;    // v(n)
  double log_growth = 0.0;     // ln v(n)
  double h_hat = 0.0;          // H(n)/n
  double v_hat = 0.0;          // ln v(n)/n
  double l_hat = 0.0;          // L(n)/n
  double maxent_slack = 0.0;   // ln v(n) - H(n), nonnegative when the bound holds
};

struct EntropyBoundsReport {
  std::vector<EntropyBoundsRow> rows;
  double v_hat_max = 0.0;    // max_n ln v(n)/n
  double c_upper = 0.0;      // smallest C with H <= v_hat_max L + ln n + C
  double c_lower_el2 = 0.0;  // largest C with H >= C El^2/n - ln n
  double c_lower_l2 = 0.0;   // largest C with H >= C L^2/n - ln n
  double k_sqrt = 0.0;       // smallest K with L <= K sqrt(n(ln v + ln n))
  bool maxent_ok = false;        // H(n) <= ln v(n) for every n
  bool entropy_monotone = false;
  bool drift_subadditive = false;
  double max_mass_defect = 0.0;      // max_n |1 - total mass|
  double max_symmetry_gap = 0.0;     // max_n inverse_symmetry_gap
};

// Exact convolution up to n_max with the constant-free entropy/growth
// inequalities checked and the bound constants fitted.
EntropyBoundsReport entropy_bounds_check(const GroupSpec& spec, int n_max,
                                         std::size_t support_cap = 5'000'000);

}  // namespace wreathwalk
