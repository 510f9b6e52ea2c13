#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "wreathwalk/errors.hpp"
#include "wreathwalk/lattice_walk.hpp"
#include "wreathwalk/point_map.hpp"
#include "wreathwalk/rng.hpp"

using namespace wreathwalk;

TEST_CASE("trajectories: shape, determinism, step law") {
  SUBCASE("n = 0 stays at the origin") {
    const Trajectory t = simulate_srw(0, 9);
    REQUIRE(t.positions.size() == 1);
    CHECK(t.positions[0] == kOrigin);
  }

  SUBCASE("n = 1 always visits exactly two sites") {
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
      const Trajectory t = simulate_srw(1, seed);
      CHECK(t.positions[1] != kOrigin);
      CHECK(l1_distance(t.positions[0], t.positions[1]) == 1);
    }
  }

  SUBCASE("consecutive positions differ by a unit step") {
    const Trajectory t = simulate_srw(5000, 123);
    for (std::size_t i = 1; i < t.positions.size(); ++i) {
      CHECK(l1_distance(t.positions[i - 1], t.positions[i]) == 1);
    }
  }

  SUBCASE("identical (n, seed) gives identical positions") {
    const Trajectory a = simulate_srw(4096, 77);
    const Trajectory b = simulate_srw(4096, 77);
    CHECK(a.positions == b.positions);
    const Trajectory c = simulate_srw(4096, 78);
    CHECK(a.positions != c.positions);
  }

  SUBCASE("empirical direction frequencies over 1e6 steps") {
    SplitMix64 rng(2718);
    std::uint64_t counts[4] = {0, 0, 0, 0};
    const std::uint64_t steps = 1'000'000;
    for (std::uint64_t i = 0; i < steps; ++i) {
      counts[rng.next_direction()] += 1;
    }
    for (unsigned d = 0; d < 4; ++d) {
      const double freq = static_cast<double>(counts[d]) / static_cast<double>(steps);
      CHECK(freq == doctest::Approx(0.25).epsilon(0.008));  // 0.25 +- 0.002
    }
  }
}

TEST_CASE("local times: conservation and range identity") {
  SUBCASE("n = 0 and n = 1") {
    const LocalTimeField f0 = local_times(simulate_srw(0, 5));
    CHECK(f0.range() == 1);
    CHECK(f0.origin_visits() == 1);
    const LocalTimeField f1 = local_times(simulate_srw(1, 5));
    CHECK(f1.range() == 2);
    CHECK(f1.total_visits() == 2);
  }

  SUBCASE("counts sum to n+1 and range counts distinct positions") {
    const Trajectory t = simulate_srw(20000, 42);
    const LocalTimeField field = local_times(t);
    CHECK(field.total_visits() == t.steps + 1);
    const std::set<Point> distinct(t.positions.begin(), t.positions.end());
    CHECK(field.range() == distinct.size());
    for (const Point p : distinct) {
      CHECK(field.counts.count(p) > 0);
    }
  }

  SUBCASE("streaming walk matches the materialized one") {
    const LocalTimeField streamed = walk_local_times(30000, 99);
    const LocalTimeField stored = local_times(simulate_srw(30000, 99));
    CHECK(streamed.range() == stored.range());
    CHECK(streamed.origin_visits() == stored.origin_visits());
    bool equal = true;
    streamed.counts.for_each([&](Point p, std::uint32_t c) {
      if (stored.counts.count(p) != c) equal = false;
    });
    CHECK(equal);
  }

  SUBCASE("range is nondecreasing along a trajectory prefix") {
    const Trajectory t = simulate_srw(5000, 7);
    PointCountMap seen;
    std::size_t last = 0;
    for (const Point p : t.positions) {
      seen.increment(p);
      CHECK(seen.distinct() >= last);
      last = seen.distinct();
    }
  }
}

TEST_CASE("functional estimates") {
  SUBCASE("identity sums to exactly n+1 with zero spread") {
    const EstimateReport r =
        functional_estimate([](double b) { return b; }, 1000, 32, 11, 1);
    CHECK(r.mean == 1001.0);
    CHECK(r.std_error == 0.0);
  }

  SUBCASE("indicator reproduces the range estimate bit for bit") {
    const std::uint64_t n = 4096, trials = 64, seed = 13;
    const EstimateReport ind = functional_estimate(
        [](double b) { return b > 0.0 ? 1.0 : 0.0; }, n, trials, seed, 1);
    const RangeStatistics rs = range_statistics(n, trials, seed, 1);
    CHECK(ind.mean == rs.mean);
  }

  SUBCASE("per-sample exact checks run clean") {
    FunctionalOptions options;
    options.threads = 2;
    options.verify_exact = true;
    const auto stats = functional_trials(
        {[](double b) { return std::sqrt(b); },
         [](double b) { return b > 0.0 ? 1.0 : 0.0; }},
        8192, 32, 17, options);
    for (const auto& s : stats) {
      CHECK(s.sums[1] == static_cast<double>(s.range));
    }
  }

  SUBCASE("thread count does not change results") {
    FunctionalOptions one;
    one.threads = 1;
    FunctionalOptions two;
    two.threads = 2;
    const auto a = functional_trials({[](double b) { return std::sqrt(b); }},
                                     4096, 24, 23, one);
    const auto b = functional_trials({[](double b) { return std::sqrt(b); }},
                                     4096, 24, 23, two);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].sums[0] == b[i].sums[0]);
      CHECK(a[i].range == b[i].range);
    }
  }

  SUBCASE("functionals must vanish at zero") {
    CHECK_THROWS_AS(functional_estimate([](double) { return 1.0; }, 16, 4, 1, 1),
                    Error);
  }
}

TEST_CASE("range statistics") {
  SUBCASE("n = 1: two sites, zero variance") {
    const RangeStatistics r = range_statistics(1, 40, 3, 1);
    CHECK(r.mean == 2.0);
    CHECK(r.variance == 0.0);
    CHECK(r.q2 == 1.0);
  }

  SUBCASE("variance obeys the quadratic bound with wide margin") {
    const RangeStatistics r = range_statistics(4096, 200, 5, 2);
    CHECK(r.variance <= 6.0 * r.mean * r.mean + r.mean);
    CHECK(r.q2 >= 0.9);
    CHECK(r.q1 == doctest::Approx(0.5 * r.mean * std::log(4096.0) / 4096.0));
  }
}

TEST_CASE("origin local time") {
  SUBCASE("n = 1 pins b_0 to 1") {
    const OriginLocalTimeReport r = origin_local_time(1, 50, 21, 1);
    CHECK(r.estimate.mean == 1.0);
    CHECK(r.estimate.std_error == 0.0);
  }

  SUBCASE("b_0 / ln n stays in a stable band as n grows") {
    double lo = 1e100, hi = 0.0;
    for (const std::uint64_t n : {1u << 10, 1u << 12, 1u << 14, 1u << 16}) {
      const OriginLocalTimeReport r = origin_local_time(n, 300, 31, 2);
      lo = std::min(lo, r.ratio_to_log_n);
      hi = std::max(hi, r.ratio_to_log_n);
      CHECK(r.pr_at_fitted_k >= 0.9);
      CHECK(r.fitted_k > 0.0);
    }
    CHECK(hi / lo <= 1.8);
  }
}
