#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wreathwalk/point.hpp"
#include "wreathwalk/point_map.hpp"

namespace wreathwalk {

// A simple-random-walk path on Z^2, positions X_0 = origin .. X_n.
struct Trajectory {
  std::uint64_t steps = 0;
  std::vector<Point> positions;
  std::uint64_t seed = 0;
};

// Deterministic given (n, seed): each step uniform over the 4 unit steps.
Trajectory simulate_srw(std::uint64_t n, std::uint64_t seed);

// Per-site visit counts b_z through time n, counting time 0, so the counts
// sum to exactly n+1. range() is the number of distinct sites visited.
struct LocalTimeField {
  PointCountMap counts;
  std::uint64_t n = 0;

  std::uint64_t range() const { return counts.distinct(); }
  std::uint64_t origin_visits() const { return counts.count(kOrigin); }
  std::uint64_t total_visits() const;
};

LocalTimeField local_times(const Trajectory& t);

// Same field as local_times(simulate_srw(n, seed)) without materializing
// the position sequence.
LocalTimeField walk_local_times(std::uint64_t n, std::uint64_t seed);

struct EstimateReport {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t master_seed = 0;
};

using RealFunction = std::function<double(double)>;

// Per-trial raw statistics from one simulated local-time field.
struct TrialFunctionalStats {
  std::vector<double> sums;  // one per requested functional
  std::uint64_t range = 0;
  std::uint64_t origin_visits = 0;
};

struct FunctionalOptions {
  unsigned threads = 0;       // 0: hardware concurrency
  bool verify_exact = false;  // per-trial conservation + concavity checks
};

// Simulates `trials` independent walks (substream i derived from
// (master_seed, i)) and evaluates sum_z f(b_z) for every f in fs on each
// trial. Output is trial-indexed and independent of the thread schedule.
//
// With verify_exact set, every trial is checked exactly: counts sum to n+1,
// and for each f the concave-functional bound
// sum f(b_z) <= R f((n+1)/R) holds per sample; violations throw Error.
// Every f must satisfy f(0) = 0.
std::vector<TrialFunctionalStats> functional_trials(
    const std::vector<RealFunction>& fs, std::uint64_t n, std::uint64_t trials,
    std::uint64_t master_seed, const FunctionalOptions& options = {});

// Monte Carlo mean/stderr of sum_z f(b_z).
EstimateReport functional_estimate(const RealFunction& f, std::uint64_t n,
                                   std::uint64_t trials, std::uint64_t master_seed,
                                   unsigned threads = 0);

struct RangeStatistics {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double variance = 0.0;
  // Tail report: q1 = (mean/2)·ln(n)/n, q2 = Pr[R >= mean/2].
  double q1 = 0.0;
  double q2 = 0.0;
  std::uint64_t master_seed = 0;
};

RangeStatistics range_statistics(std::uint64_t n, std::uint64_t trials,
                                 std::uint64_t master_seed, unsigned threads = 0);

struct OriginLocalTimeReport {
  EstimateReport estimate;     // of b_0
  double ratio_to_log_n = 0.0; // mean / ln n
  double q10 = 0.0, q50 = 0.0, q90 = 0.0;  // quantiles of b_0 / ln n
  double fitted_k = 0.0;       // largest k with Pr[b_0 >= k ln n] >= 0.9
  double pr_at_fitted_k = 0.0;
};

OriginLocalTimeReport origin_local_time(std::uint64_t n, std::uint64_t trials,
                                        std::uint64_t master_seed,
                                        unsigned threads = 0);

}  // namespace wreathwalk
