#include "wreathwalk/lattice_walk.hpp"

#include <algorithm>
#include <cmath>

#include "wreathwalk/errors.hpp"
#include "wreathwalk/parallel.hpp"
#include "wreathwalk/rng.hpp"
#include "wreathwalk/summation.hpp"

namespace wreathwalk {

namespace {

constexpr Point kSteps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

}  // namespace

Trajectory simulate_srw(std::uint64_t n, std::uint64_t seed) {
  Trajectory t;
  t.steps = n;
  t.seed = seed;
  t.positions.reserve(n + 1);
  SplitMix64 rng(seed);
  Point pos = kOrigin;
  t.positions.push_back(pos);
  for (std::uint64_t i = 0; i < n; ++i) {
    pos = pos + kSteps[rng.next_direction()];
    t.positions.push_back(pos);
  }
  return t;
}

std::uint64_t LocalTimeField::total_visits() const {
  std::uint64_t total = 0;
  counts.for_each([&](Point, std::uint32_t c) { total += c; });
  return total;
}

LocalTimeField local_times(const Trajectory& t) {
  LocalTimeField field;
  field.n = t.steps;
  for (Point p : t.positions) {
    field.counts.increment(p);
  }
  return field;
}

LocalTimeField walk_local_times(std::uint64_t n, std::uint64_t seed) {
  LocalTimeField field;
  field.n = n;
  SplitMix64 rng(seed);
  Point pos = kOrigin;
  field.counts.increment(pos);
  for (std::uint64_t i = 0; i < n; ++i) {
    pos = pos + kSteps[rng.next_direction()];
    field.counts.increment(pos);
  }
  return field;
}

std::vector<TrialFunctionalStats> functional_trials(
    const std::vector<RealFunction>& fs, std::uint64_t n, std::uint64_t trials,
    std::uint64_t master_seed, const FunctionalOptions& options) {
  if (trials == 0) {
    throw Error("at least one trial is required");
  }
  for (const RealFunction& f : fs) {
    if (f(0.0) != 0.0) {
      throw Error("functional must vanish at 0");
    }
  }

  auto run_trial = [&](std::size_t trial) {
    const LocalTimeField field =
        walk_local_times(n, substream_seed(master_seed, trial));
    TrialFunctionalStats stats;
    stats.range = field.range();
    stats.origin_visits = field.origin_visits();
    stats.sums.reserve(fs.size());
    for (const RealFunction& f : fs) {
      CompensatedSum sum;
      field.counts.for_each(
          [&](Point, std::uint32_t c) { sum.add(f(static_cast<double>(c))); });
      stats.sums.push_back(sum.value());
    }
    if (options.verify_exact) {
      if (field.total_visits() != n + 1) {
        throw Error("local-time conservation violated: counts sum to " +
                    std::to_string(field.total_visits()) + ", expected " +
                    std::to_string(n + 1));
      }
      const double r = static_cast<double>(stats.range);
      const double average = static_cast<double>(n + 1) / r;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        const double bound = r * fs[i](average);
        if (stats.sums[i] > bound * (1.0 + 1e-9) + 1e-9) {
          throw Error("concave-functional bound violated on a sample");
        }
      }
    }
    return stats;
  };

  return parallel_map<TrialFunctionalStats>(trials, options.threads, run_trial);
}

EstimateReport functional_estimate(const RealFunction& f, std::uint64_t n,
                                   std::uint64_t trials, std::uint64_t master_seed,
                                   unsigned threads) {
  FunctionalOptions options;
  options.threads = threads;
  const auto stats = functional_trials({f}, n, trials, master_seed, options);
  std::vector<double> values(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) values[i] = stats[i].sums[0];
  const MeanStderr ms = mean_and_stderr(values);
  return {n, trials, ms.mean, ms.std_error, master_seed};
}

RangeStatistics range_statistics(std::uint64_t n, std::uint64_t trials,
                                 std::uint64_t master_seed, unsigned threads) {
  FunctionalOptions options;
  options.threads = threads;
  const auto stats = functional_trials({}, n, trials, master_seed, options);
  std::vector<double> ranges(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    ranges[i] = static_cast<double>(stats[i].range);
  }
  const MeanStderr ms = mean_and_stderr(ranges);

  RangeStatistics out;
  out.n = n;
  out.trials = trials;
  out.mean = ms.mean;
  out.std_error = ms.std_error;
  out.variance = sample_variance(ranges);
  out.master_seed = master_seed;
  // Tail at half the empirical constant: the threshold q1·n/ln(n) is
  // mean/2 exactly, so no logarithms enter the count.
  const double threshold = 0.5 * out.mean;
  out.q1 = n >= 2 ? threshold * std::log(static_cast<double>(n)) /
                        static_cast<double>(n)
                  : 0.0;
  std::uint64_t hits = 0;
  for (double r : ranges) {
    if (r >= threshold) ++hits;
  }
  out.q2 = static_cast<double>(hits) / static_cast<double>(trials);
  return out;
}

namespace {

double nearest_rank(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  const auto n = static_cast<double>(sorted.size());
  auto idx = static_cast<std::size_t>(std::ceil(p * n));
  if (idx > 0) --idx;
  if (idx >= sorted.size()) idx = sorted.size() - 1;
  return sorted[idx];
}

}  // namespace

OriginLocalTimeReport origin_local_time(std::uint64_t n, std::uint64_t trials,
                                        std::uint64_t master_seed,
                                        unsigned threads) {
  FunctionalOptions options;
  options.threads = threads;
  const auto stats = functional_trials({}, n, trials, master_seed, options);
  std::vector<double> visits(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    visits[i] = static_cast<double>(stats[i].origin_visits);
  }
  const MeanStderr ms = mean_and_stderr(visits);

  OriginLocalTimeReport out;
  out.estimate = {n, trials, ms.mean, ms.std_error, master_seed};
  const double log_n = n >= 2 ? std::log(static_cast<double>(n)) : 1.0;
  out.ratio_to_log_n = ms.mean / log_n;

  std::vector<double> scaled = visits;
  for (double& v : scaled) v /= log_n;
  std::sort(scaled.begin(), scaled.end());
  out.q10 = nearest_rank(scaled, 0.10);
  out.q50 = nearest_rank(scaled, 0.50);
  out.q90 = nearest_rank(scaled, 0.90);

  out.fitted_k = out.q10;
  std::uint64_t hits = 0;
  for (double v : scaled) {
    if (v >= out.fitted_k) ++hits;
  }
  out.pr_at_fitted_k = static_cast<double>(hits) / static_cast<double>(trials);
  return out;
}

}  // namespace wreathwalk
