#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "wreathwalk/errors.hpp"
#include "wreathwalk/iterlog.hpp"
#include "wreathwalk/tower_real.hpp"

using namespace wreathwalk;

TEST_CASE("tower reals: representation, normalization, order") {
  SUBCASE("plain values round-trip") {
    for (double v : {1e-300, 0.5, 1.0, 2.718281828, 1e8, 1e300}) {
      CHECK(TowerReal::from_value(v).to_double() == v);
    }
    CHECK_THROWS_AS(TowerReal::from_value(0.0), DomainError);
    CHECK_THROWS_AS(TowerReal::from_value(-1.0), DomainError);
  }

  SUBCASE("small towers collapse to depth 0") {
    const TowerReal x = TowerReal::tower(2, 1.0);
    CHECK(x.depth() == 0);
    CHECK(x.to_double() == doctest::Approx(std::exp(std::exp(1.0))));
  }

  SUBCASE("large towers stay symbolic and compare correctly") {
    const TowerReal big = TowerReal::tower(1, 800.0);
    CHECK(big.depth() == 1);
    CHECK_FALSE(big.fits_double());
    CHECK(TowerReal::from_value(1e300) < big);
    CHECK(big < TowerReal::tower(2, 800.0));
    CHECK(big == TowerReal::tower(1, 800.0));
    CHECK(big.log_as_double() == 800.0);
  }

  SUBCASE("from_log inverts log_as_double") {
    for (double u : {-5.0, 0.0, 10.0, 700.0, 1000.0, 1e9}) {
      const TowerReal x = TowerReal::from_log(u);
      CHECK(x.log_as_double() == doctest::Approx(u).epsilon(1e-12));
    }
  }

  SUBCASE("log_tower peels one level") {
    CHECK(TowerReal::tower(2, 800.0).log_tower() == TowerReal::tower(1, 800.0));
    CHECK(TowerReal::from_value(std::exp(4.0)).log_tower().to_double() ==
          doctest::Approx(4.0));
    CHECK_THROWS_AS(TowerReal::from_value(0.5).log_tower(), DomainError);
  }
}

TEST_CASE("iterated logs") {
  CHECK(iterated_log(1, std::exp(1.0)) == doctest::Approx(1.0));
  CHECK(iterated_log(2, std::exp(std::exp(1.0))) == doctest::Approx(1.0));
  CHECK(iterated_log(2, TowerReal::tower(2, 64.0)) == 64.0);
  CHECK(iterated_log(3, TowerReal::tower(1, 1e9)) ==
        doctest::Approx(std::log(std::log(1e9))));
  // the final log may be nonpositive; an intermediate one must not be
  CHECK(iterated_log(3, std::exp(std::exp(1.0))) == doctest::Approx(0.0));
  CHECK_THROWS_AS(iterated_log(2, 0.5), DomainError);
}

TEST_CASE("concavity threshold") {
  CHECK(concavity_threshold({1, 1.0}).to_double() ==
        doctest::Approx(54.598150033).epsilon(1e-9));
  CHECK(concavity_threshold({1, 0.5}).to_double() ==
        doctest::Approx(8.886110521e6).epsilon(1e-9));
  const TowerReal t21 = concavity_threshold({2, 1.0});
  CHECK(iterated_log(2, t21) == doctest::Approx(8.0).epsilon(1e-9));
  for (int k = 1; k <= 3; ++k) {
    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
      const TowerReal t = concavity_threshold({k, alpha});
      CHECK(iterated_log(k, t) ==
            doctest::Approx(std::pow(4.0 * k, 1.0 / alpha)).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(concavity_threshold({0, 1.0}), DomainError);
  CHECK_THROWS_AS(concavity_threshold({1, 1.5}), DomainError);
}

TEST_CASE("ltilde evaluation") {
  const IterLogParams p11{1, 1.0};
  CHECK(ltilde(p11, std::exp(4.0)) ==
        doctest::Approx(std::exp(4.0) / 4.0).epsilon(1e-12));
  CHECK(ltilde(p11, std::exp(4.0)) == doctest::Approx(13.6495).epsilon(1e-4));
  CHECK(ltilde(p11, std::exp(1.0)) == doctest::Approx(std::exp(1.0)));

  SUBCASE("log-space chain identity") {
    for (double x : {1e2, 1e10, 1e100, 1e300}) {
      for (int k : {1, 2}) {
        for (double alpha : {0.5, 1.0}) {
          const TowerReal v = ltilde({k, alpha}, TowerReal::from_value(x));
          const double expected =
              std::log(x) - alpha * std::log(iterated_log(k, x));
          CHECK(v.log_as_double() == doctest::Approx(expected).epsilon(1e-12));
        }
      }
    }
  }

  SUBCASE("monotone in x beyond the threshold") {
    const double t = concavity_threshold(p11).to_double();
    double prev = 0.0;
    for (int i = 0; i <= 40; ++i) {
      const double x = t * std::pow(10.0, i * 7.0);
      const double v = ltilde(p11, TowerReal::from_value(x)).log_as_double();
      CHECK(v > prev);
      prev = v;
    }
  }

  SUBCASE("domain error below e") {
    CHECK_THROWS_AS(ltilde(p11, 1.0), DomainError);
  }

  SUBCASE("tower arguments keep the correction when ln x fits") {
    const TowerReal x = TowerReal::tower(2, 70.0);  // ln x = e^70 ~ 2.5e30
    const TowerReal v = ltilde({1, 1.0}, x);
    const double lnx = x.log_as_double();
    CHECK(v.log_as_double() ==
          doctest::Approx(lnx - std::log(lnx)).epsilon(1e-12));
  }
}

TEST_CASE("concave extension") {
  const ConcaveExtension ext({1, 1.0});

  SUBCASE("closed-form slope and knot") {
    CHECK(ext.slope() == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(ext.knot().to_double() ==
          doctest::Approx(std::exp(8.0)).epsilon(1e-12));
    CHECK(ext.knot().to_double() == doctest::Approx(2980.958).epsilon(1e-4));
  }

  SUBCASE("bisection cross-check of the knot") {
    // solve ltilde(z)/z = slope on [T, 1e6] independently of the closed form
    const IterLogParams p{1, 1.0};
    double lo = concavity_threshold(p).to_double() * 1.5;
    double hi = 1e6;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      const double ratio = ltilde(p, mid) / mid;
      if (ratio > ext.slope()) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(std::exp(8.0)).epsilon(1e-9));
  }

  SUBCASE("zero at zero, linear below the knot, ltilde above") {
    CHECK(ext(0.0) == 0.0);
    CHECK(ext(100.0) == doctest::Approx(12.5));
    const double z = ext.knot().to_double();
    CHECK(ext(3.0 * z) ==
          doctest::Approx(ltilde({1, 1.0}, 3.0 * z)).epsilon(1e-12));
  }

  SUBCASE("continuous at the knot") {
    const double z = ext.knot().to_double();
    const double below = ext(z * (1.0 - 1e-11));
    const double above = ext(z * (1.0 + 1e-11));
    CHECK(below == doctest::Approx(above).epsilon(1e-9));
  }

  SUBCASE("tangency: ltilde' at the knot does not exceed the slope") {
    const double z = ext.knot().to_double();
    const double h = z * 1e-6;
    const double derivative =
        (ltilde({1, 1.0}, z + h) - ltilde({1, 1.0}, z - h)) / (2.0 * h);
    CHECK(derivative <= ext.slope() + 1e-12);
  }

  SUBCASE("nondecreasing on a broad grid") {
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = -6; i <= 300; i += 3) {
      const double x = std::pow(10.0, i);
      const double v =
          ext(TowerReal::from_value(x)).log_as_double();
      CHECK(v >= prev);
      prev = v;
    }
  }

  SUBCASE("deeper parameters stay in tower range") {
    const ConcaveExtension deep({2, 0.5});
    CHECK(deep.slope() == doctest::Approx(1.0 / 16.0));
    CHECK(iterated_log(2, deep.knot()) ==
          doctest::Approx(std::pow(16.0, 2.0)).epsilon(1e-9));
    // far below the (tower-sized) knot the extension is linear
    CHECK(deep(1024.0) == doctest::Approx(64.0));
  }
}

TEST_CASE("concavity scans") {
  SUBCASE("ltilde is concave beyond the threshold") {
    const IterLogParams p{1, 1.0};
    const ScanReport report = concavity_scan(
        [p](const TowerReal& x) { return ltilde(p, x); },
        concavity_threshold(p), TowerReal::from_value(1e300), 2000);
    CHECK(report.violations == 0);
    CHECK(report.checked == 1998);
  }

  SUBCASE("x^2 is flagged as a negative control") {
    const ScanReport report = concavity_scan(
        [](const TowerReal& x) {
          const double v = x.to_double();
          return TowerReal::from_value(v * v);
        },
        TowerReal::from_value(1.0), TowerReal::from_value(10.0), 200);
    CHECK(report.violations > 0);
  }

  SUBCASE("the extension stays concave across its knot") {
    const ConcaveExtension ext({1, 1.0});
    const ScanReport report = concavity_scan(
        [&ext](const TowerReal& x) { return ext(x); },
        TowerReal::from_value(ext.knot().to_double() * 1e-4),
        TowerReal::from_value(1e300), 2000);
    CHECK(report.violations == 0);
  }

  SUBCASE("precondition errors") {
    CHECK_THROWS_AS(concavity_scan([](const TowerReal& x) { return x; },
                                   TowerReal::from_value(10.0),
                                   TowerReal::from_value(1.0), 100),
                    DomainError);
    CHECK_THROWS_AS(concavity_scan([](const TowerReal& x) { return x; },
                                   TowerReal::from_value(1.0),
                                   TowerReal::from_value(10.0), 2),
                    DomainError);
  }

  SUBCASE("tower ranges fall back to the ratio-monotonicity check") {
    const IterLogParams p{1, 1.0};
    const ScanReport ok = concavity_scan(
        [p](const TowerReal& x) { return ltilde(p, x); },
        TowerReal::tower(1, 800.0), TowerReal::tower(1, 50000.0), 300);
    CHECK(ok.violations == 0);
    CHECK(ok.rows.front().check == "ratio_monotonicity_logspace");
    // x^2 in log space: f/x grows, which the fallback must flag
    const ScanReport bad = concavity_scan(
        [](const TowerReal& x) {
          return TowerReal::from_log(2.0 * x.log_as_double());
        },
        TowerReal::tower(1, 800.0), TowerReal::tower(1, 5000.0), 100);
    CHECK(bad.violations > 0);
  }
}

TEST_CASE("closed-form derivative inequalities") {
  SUBCASE("hold at and beyond the threshold") {
    const ScanReport a =
        concavity_inequalities({1, 0.5}, TowerReal::from_value(std::exp(16.0)));
    CHECK(a.violations == 0);
    const ScanReport b =
        concavity_inequalities({2, 0.5}, TowerReal::tower(2, 70.0));
    CHECK(b.violations == 0);
  }

  SUBCASE("domain error below the threshold") {
    CHECK_THROWS_AS(
        concavity_inequalities({1, 1.0}, TowerReal::from_value(std::exp(1.0))),
        DomainError);
  }

  SUBCASE("sweeps pass for the full parameter block") {
    for (int k : {1, 2, 3}) {
      for (double alpha : {0.25, 0.5, 0.75}) {
        const ScanReport report =
            concavity_inequalities_sweep({k, alpha}, 100);
        CHECK(report.violations == 0);
        CHECK(report.checked == 200);
      }
    }
  }
}

TEST_CASE("reciprocal iterated-log concavity") {
  const double n = std::exp(100.0);

  SUBCASE("concave on the prescribed domain") {
    const double hi = n / std::exp(4.0);
    const ScanReport report =
        reciprocal_concavity_scan(1, 1.0, n, hi * 1e-12, hi, 1000);
    CHECK(report.violations == 0);
  }

  SUBCASE("boundary value of the iterated log is 4k") {
    const double t = concavity_threshold({1, 1.0}).to_double();
    CHECK(iterated_log(1, n / (n / t)) == doctest::Approx(4.0).epsilon(1e-9));
  }

  SUBCASE("negative control: domain extended past n/T shows violations") {
    const ScanReport report =
        reciprocal_concavity_scan(1, 1.0, n, n / std::exp(4.0), n / 2.0, 400);
    CHECK(report.violations > 0);
  }

  SUBCASE("empty domain errors out") {
    CHECK_THROWS_AS(reciprocal_concavity_scan(1, 1.0, 10.0, 10.0, 20.0, 100),
                    DomainError);
  }

  SUBCASE("tower-range n covers k = 2") {
    const ScanReport report =
        reciprocal_concavity_scan(2, 1.0, TowerReal::tower(2, 700.0), 200);
    CHECK(report.violations == 0);
    CHECK(report.checked == 400);
    CHECK_THROWS_AS(
        reciprocal_concavity_scan(2, 1.0, TowerReal::from_value(100.0), 10),
        DomainError);
  }
}

TEST_CASE("composition law: (n/ln n) ltilde_k(ln n) equals ltilde_{k+1}(n)") {
  for (double alpha : {0.5, 1.0}) {
    for (int k : {1, 2}) {
      for (double log_n : {30.0, 120.0, 400.0, 690.0}) {
        const TowerReal n = TowerReal::from_log(log_n);
        const double lnln = std::log(log_n);
        // numerator in log space: ln n - lnln n + ln ltilde_k(ln n)
        const double log_num =
            log_n - lnln +
            ltilde({k, alpha}, TowerReal::from_value(log_n)).log_as_double();
        const double log_den = ltilde({k + 1, alpha}, n).log_as_double();
        CHECK(std::exp(log_num - log_den) ==
              doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}
