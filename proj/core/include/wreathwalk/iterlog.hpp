#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "wreathwalk/tower_real.hpp"

namespace wreathwalk {

struct IterLogParams {
  int k = 1;
  double alpha = 1.0;  // in (0, 1]
};

void validate(const IterLogParams& p);

// ln applied k times. Throws DomainError if an intermediate log is
// nonpositive; the final value may be any real.
double iterated_log(int k, const TowerReal& x);
double iterated_log(int k, double x);

// ln applied k times, staying in tower representation. Every step must
// stay positive.
TowerReal iterated_log_tower(int k, const TowerReal& x);

// Left end of the concavity domain: k nested exponentials of (4k)^(1/alpha).
TowerReal concavity_threshold(const IterLogParams& p);

// x / (ln^(k) x)^alpha, evaluated in log space:
// ln result = ln x - alpha ln(ln^(k) x).
TowerReal ltilde(const IterLogParams& p, const TowerReal& x);
double ltilde(const IterLogParams& p, double x);

// The concave, continuous, increasing extension of ltilde to [0, inf):
// linear slope()*x on [0, knot()], ltilde beyond the knot. The slope is
// ltilde(T)/(2T) = 1/(8k) and the knot solves (ln^(k) z)^alpha = 8k, both
// in closed form.
class ConcaveExtension {
 public:
  explicit ConcaveExtension(IterLogParams p);

  double slope() const { return slope_; }
  const TowerReal& knot() const { return knot_; }
  const IterLogParams& params() const { return params_; }

  double operator()(double x) const;
  TowerReal operator()(const TowerReal& x) const;

 private:
  IterLogParams params_;
  double slope_;
  TowerReal knot_;
};

// One numeric check: pass iff lhs <= rhs within tolerance; slack = rhs - lhs.
struct CheckRow {
  std::string x_repr;
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = true;
};

struct ScanReport {
  std::vector<CheckRow> rows;
  std::size_t checked = 0;
  std::size_t violations = 0;            // beyond tolerance
  std::size_t indistinguishable = 0;     // positive but within tolerance

  bool passed() const { return violations == 0; }
  void add(CheckRow row, double tol_scale);
};

using TowerFunction = std::function<TowerReal(const TowerReal&)>;

// Second-difference concavity scan on a geometric grid over [lo, hi]:
// f(x-h) - 2 f(x) + f(x+h) <= tol |f(x)| with grid-adapted h. When hi is
// beyond double range, the scan runs in the working variable
// u = ln^(j) x at the deepest level where the grid fits in doubles.
ScanReport concavity_scan(const TowerFunction& f, const TowerReal& lo,
                          const TowerReal& hi, std::size_t points,
                          double tol = 1e-9);

// The two closed-form derivative inequalities behind the concavity of
// x / (ln^(k) x)^alpha, evaluated with all iterated-log products in log
// space. Requires x >= concavity_threshold(p).
//   product_bound:        ln(4 alpha) <= sum_j ln(ln^(j) x),   j = 1..k
//   log_derivative_bound: x r'(x)/r(x) - 1 <= 1/2
ScanReport concavity_inequalities(const IterLogParams& p, const TowerReal& x,
                                  double tol = 1e-9);

// Runs concavity_inequalities at `points` tower-sampled arguments spanning
// [threshold, far beyond double range].
ScanReport concavity_inequalities_sweep(const IterLogParams& p,
                                        std::size_t points, double tol = 1e-9);

// Concavity scan of x -> 1/(ln^(k)(n/x))^alpha on a geometric grid in
// [lo, hi] (the concavity domain is (0, n/T]), plus the closed-form check
// h'(x) > 1 at every grid point. Throws DomainError when lo already
// exceeds n/T.
ScanReport reciprocal_concavity_scan(int k, double alpha, double n, double lo,
                                     double hi, std::size_t points,
                                     double tol = 1e-9);

// Tower-range variant for n beyond double range (the k >= 2 domains start
// past any double). Second differences in x are below representable
// precision there, so the scan checks the closed-form sufficient
// conditions for concavity at grid points spanning the domain:
// ln^(k)(n/x) > 2 and h'(x) > 1.
ScanReport reciprocal_concavity_scan(int k, double alpha, const TowerReal& n,
                                     std::size_t points, double tol = 1e-9);

}  // namespace wreathwalk
