#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "wreathwalk/ball.hpp"
#include "wreathwalk/distribution.hpp"
#include "wreathwalk/errors.hpp"
#include "wreathwalk/estimators.hpp"
#include "wreathwalk/iterlog.hpp"
#include "wreathwalk/lattice_walk.hpp"
#include "wreathwalk/rate_fit.hpp"
#include "wreathwalk/rng.hpp"

using namespace wreathwalk;

TEST_CASE("exact convolution") {
  const GroupSpec spec = parse_group_spec("Z2 wr C2");
  const WreathGroup group(spec);
  const GeneratorSet gens = build_generators(spec);

  SUBCASE("one step spreads uniformly over the generators") {
    const Distribution d1 = convolve(Distribution::point_mass(spec), gens);
    CHECK(d1.power() == 1);
    CHECK(d1.support_size() == 16);
    for (double p : d1.mass()) {
      CHECK(p == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    }
  }

  SUBCASE("mass conservation and exact inverse symmetry per step") {
    Distribution d = Distribution::point_mass(spec);
    for (int n = 1; n <= 5; ++n) {
      d = convolve(d, gens);
      CHECK(std::abs(d.total_mass() - 1.0) <= 1e-12);
      // dyadic weights make the symmetry exact, not just approximate
      CHECK(inverse_symmetry_gap(d) == 0.0);
    }
  }

  SUBCASE("support cap raises a resource error") {
    Distribution d = Distribution::point_mass(spec);
    d = convolve(d, gens);
    CHECK_THROWS_AS(convolve(d, gens, 50), ResourceError);
  }
}

TEST_CASE("entropy and drift of exact distributions") {
  const GroupSpec spec = parse_group_spec("Z2 wr C2");
  const GeneratorSet gens = build_generators(spec);
  const Ball ball = bfs_ball(spec, 4);

  SUBCASE("point mass has zero entropy and zero drift") {
    const Distribution d0 = Distribution::point_mass(spec);
    CHECK(entropy_of(d0) == 0.0);
    CHECK(drift_of(d0, ball) == 0.0);
  }

  SUBCASE("one step: entropy ln 16, drift exactly 1") {
    const Distribution d1 = convolve(Distribution::point_mass(spec), gens);
    CHECK(entropy_of(d1) == doctest::Approx(std::log(16.0)).epsilon(1e-12));
    CHECK(drift_of(d1, ball) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(second_moment_of(d1, ball) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("entropy is bounded by the log support size") {
    Distribution d = Distribution::point_mass(spec);
    for (int n = 1; n <= 4; ++n) {
      d = convolve(d, gens);
      CHECK(entropy_of(d) <=
            std::log(static_cast<double>(d.support_size())) + 1e-12);
    }
  }

  SUBCASE("support escaping the ball names the element") {
    Distribution d = Distribution::point_mass(spec);
    for (int n = 0; n < 3; ++n) d = convolve(d, gens);
    const Ball small = bfs_ball(spec, 1);
    CHECK_THROWS_WITH_AS(drift_of(d, small),
                         doctest::Contains("escapes the ball"), Error);
  }
}

TEST_CASE("entropy bounds report") {
  const GroupSpec spec = parse_group_spec("Z2 wr C2");
  const EntropyBoundsReport report = entropy_bounds_check(spec, 4);

  CHECK(report.rows.size() == 5);
  CHECK(report.maxent_ok);
  CHECK(report.entropy_monotone);
  CHECK(report.drift_subadditive);
  CHECK(report.max_mass_defect <= 1e-12);
  CHECK(report.max_symmetry_gap == 0.0);
  CHECK(report.rows[1].entropy == doctest::Approx(std::log(16.0)).epsilon(1e-12));
  CHECK(report.rows[1].growth == 17);
  CHECK(report.c_upper >= 0.0);
  CHECK(report.k_sqrt > 0.0);
  CHECK(report.c_lower_el2 > 0.0);
  for (const EntropyBoundsRow& row : report.rows) {
    if (row.n >= 1) {
      CHECK(row.entropy <= row.log_growth + 1e-12);
    }
  }
}

TEST_CASE("Monte Carlo drift bracket") {
  const GroupSpec spec = parse_group_spec("Z2 wr C2");

  SUBCASE("mutable walk state agrees with immutable folding") {
    const WreathGroup group(spec);
    const GeneratorSet gens = build_generators(spec);
    for (std::uint64_t seed : {1ull, 99ull, 123456ull}) {
      const Element fast = sample_walk_endpoint(group, gens, 64, seed);
      SplitMix64 rng(seed);
      Element slow = group.identity();
      for (int i = 0; i < 64; ++i) {
        slow = group.multiply(slow, gens.elements[rng.next_below(gens.size())]);
      }
      CHECK(fast == slow);
      CHECK(group.contains(fast));
    }
  }

  SUBCASE("n = 1 brackets the unit length") {
    const DriftBracket b = drift_mc_bracket(spec, 1, 200, 5, 1);
    CHECK(b.lower_mean <= 1.0);
    CHECK(1.0 <= b.upper_mean);
    CHECK(b.lower_mean <= b.upper_mean);
  }

  SUBCASE("exact drift lies inside the bracket for small n") {
    const GeneratorSet gens = build_generators(spec);
    const Ball ball = bfs_ball(spec, 5);
    Distribution d = Distribution::point_mass(spec);
    for (std::uint64_t n = 1; n <= 5; ++n) {
      d = convolve(d, gens);
      const double exact = drift_of(d, ball);
      const DriftBracket b = drift_mc_bracket(spec, n, 2000, 31, 2);
      CHECK(b.lower_mean - 5.0 * b.lower_se <= exact);
      CHECK(exact <= b.upper_mean + 5.0 * b.upper_se);
    }
  }

  SUBCASE("deterministic across thread counts") {
    const DriftBracket a = drift_mc_bracket(spec, 32, 64, 7, 1);
    const DriftBracket b = drift_mc_bracket(spec, 32, 64, 7, 2);
    CHECK(a.lower_mean == b.lower_mean);
    CHECK(a.upper_mean == b.upper_mean);
  }
}

TEST_CASE("composed drift functionals") {
  SUBCASE("identity reduces to exact conservation") {
    const EstimateReport r =
        compose_drift([](double b) { return b; }, 2048, 32, 3, 1);
    CHECK(r.mean == 2049.0);
    CHECK(r.std_error == 0.0);
  }

  SUBCASE("indicator reduces to the range estimator, bit for bit") {
    const EstimateReport ind = compose_drift(
        [](double b) { return b > 0.0 ? 1.0 : 0.0; }, 4096, 50, 11, 2);
    const RangeStatistics rs = range_statistics(4096, 50, 11, 2);
    CHECK(ind.mean == rs.mean);
  }

  SUBCASE("concave-extension inner drift lands near the linear segment") {
    const ConcaveExtension ext({1, 1.0});
    const EstimateReport r = compose_drift(
        [&ext](double b) { return ext(b); }, 4096, 40, 13, 2);
    // all local times stay far below the knot at this scale
    CHECK(r.mean == doctest::Approx(4097.0 / 8.0).epsilon(1e-12));
  }
}

TEST_CASE("rate fitting") {
  SUBCASE("synthetic n/ln n is identified with a unit band") {
    std::vector<std::pair<double, double>> series;
    for (int e = 10; e <= 20; e += 2) {
      const double n = std::pow(2.0, e);
      series.emplace_back(n, n / std::log(n));
    }
    const auto reports = rate_fit(series, default_rate_catalog());
    REQUIRE(!reports.empty());
    CHECK(reports.front().rate == "n/ln(n)");
    CHECK(reports.front().band_ratio() == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("synthetic sqrt(n) has log-log slope 1/2") {
    std::vector<std::pair<double, double>> series;
    for (int e = 8; e <= 18; e += 2) {
      const double n = std::pow(2.0, e);
      series.emplace_back(n, std::sqrt(n));
    }
    const auto reports = rate_fit(series, default_rate_catalog());
    CHECK(reports.front().rate == "sqrt(n)");
    CHECK(reports.front().slope == doctest::Approx(0.5).epsilon(1e-6));
  }

  SUBCASE("polynomial family is distinguished") {
    std::vector<std::pair<double, double>> series;
    for (int e = 8; e <= 20; e += 2) {
      const double n = std::pow(2.0, e);
      series.emplace_back(n, std::pow(n, 0.875));
    }
    const auto reports = rate_fit(series, default_rate_catalog());
    CHECK(reports.front().rate == "n^(7/8)");
  }

  SUBCASE("rate parser handles the iterated-log family") {
    CHECK(parse_rate("n/lnln(n)").value(std::exp(std::exp(2.0))) ==
          doctest::Approx(std::exp(std::exp(2.0)) / 2.0));
    CHECK(parse_rate("n/ln(n)^(1/2)").value(100.0) ==
          doctest::Approx(100.0 / std::sqrt(std::log(100.0))));
    CHECK(parse_rate("n^(3/4)").value(16.0) == doctest::Approx(8.0));
    CHECK(parse_rate("n").value(7.0) == 7.0);
    CHECK_THROWS_AS(parse_rate("m/ln(m)"), Error);
    CHECK_THROWS_AS(parse_rate("n/log(n"), Error);
  }

  SUBCASE("preconditions") {
    std::vector<std::pair<double, double>> two = {{1.0, 1.0}, {2.0, 2.0}};
    CHECK_THROWS_AS(rate_fit(two, default_rate_catalog()), Error);
    std::vector<std::pair<double, double>> unordered = {
        {4.0, 1.0}, {2.0, 2.0}, {8.0, 3.0}};
    CHECK_THROWS_AS(rate_fit(unordered, default_rate_catalog()), Error);
  }
}

TEST_CASE("word-measure walk stays sane") {
  const GroupSpec spec = parse_group_spec("Z2 wr C2");
  const DriftBracket b =
      drift_mc_bracket(spec, 16, 100, 3, 1, MeasureSemantics::Words);
  CHECK(b.lower_mean <= b.upper_mean);
  CHECK(b.upper_mean > 0.0);
}
