#include "wreathwalk/iterlog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wreathwalk/errors.hpp"

namespace wreathwalk {

void validate(const IterLogParams& p) {
  if (p.k < 1) {
    throw DomainError("iterated-log depth k must be >= 1");
  }
  if (!(p.alpha > 0.0) || p.alpha > 1.0) {
    throw DomainError("alpha must lie in (0, 1]");
  }
}

double iterated_log(int k, const TowerReal& x) {
  if (k < 0) {
    throw DomainError("iterated log depth must be nonnegative");
  }
  if (k <= x.depth()) {
    return TowerReal::tower(x.depth() - k, x.top()).to_double();
  }
  double v = x.top();
  for (int i = x.depth(); i < k; ++i) {
    if (!(v > 0.0)) {
      throw DomainError("iterated log hit a nonpositive intermediate value");
    }
    v = std::log(v);
  }
  return v;
}

double iterated_log(int k, double x) {
  return iterated_log(k, TowerReal::from_value(x));
}

TowerReal iterated_log_tower(int k, const TowerReal& x) {
  TowerReal v = x;
  for (int i = 0; i < k; ++i) {
    v = v.log_tower();
  }
  return v;
}

TowerReal concavity_threshold(const IterLogParams& p) {
  validate(p);
  return TowerReal::tower(p.k, std::pow(4.0 * p.k, 1.0 / p.alpha));
}

TowerReal ltilde(const IterLogParams& p, const TowerReal& x) {
  validate(p);
  const double v = iterated_log(p.k, x);
  if (!(v > 0.0)) {
    throw DomainError("ltilde requires ln^(k) x > 0");
  }
  const double log_x = x.log_as_double();
  if (std::isinf(log_x)) {
    // ln x exceeds double range, so the alpha*ln(ln^(k) x) correction is
    // below representable precision at every level: the result is x.
    return x;
  }
  return TowerReal::from_log(log_x - p.alpha * std::log(v));
}

double ltilde(const IterLogParams& p, double x) {
  return ltilde(p, TowerReal::from_value(x)).to_double();
}

ConcaveExtension::ConcaveExtension(IterLogParams p)
    : params_(p),
      slope_(1.0 / (8.0 * p.k)),
      knot_(TowerReal::tower(p.k, std::pow(8.0 * p.k, 1.0 / p.alpha))) {
  validate(p);
}

double ConcaveExtension::operator()(double x) const {
  if (x < 0.0) {
    throw DomainError("concave extension argument must be nonnegative");
  }
  if (x == 0.0) return 0.0;
  if (TowerReal::from_value(x) < knot_) {
    return slope_ * x;
  }
  return ltilde(params_, x);
}

TowerReal ConcaveExtension::operator()(const TowerReal& x) const {
  if (x < knot_) {
    const double log_x = x.log_as_double();
    if (std::isinf(log_x)) {
      return x;  // slope factor below representable precision
    }
    return TowerReal::from_log(std::log(slope_) + log_x);
  }
  return ltilde(params_, x);
}

void ScanReport::add(CheckRow row, double tol_scale) {
  ++checked;
  if (!row.pass) {
    ++violations;
  } else if (row.slack < 0.0 || (row.lhs > 0.0 && row.lhs <= tol_scale)) {
    // held only up to tolerance: numerically indistinguishable from flat
    ++indistinguishable;
  }
  rows.push_back(std::move(row));
}

namespace {

CheckRow second_difference_row(const std::string& x_repr, double d2,
                               double scale, double tol) {
  CheckRow row;
  row.x_repr = x_repr;
  row.check = "second_difference";
  row.lhs = d2;
  row.rhs = tol * scale;
  row.slack = row.rhs - row.lhs;
  row.pass = d2 <= row.rhs;
  return row;
}

ScanReport scan_double_range(const TowerFunction& f, double lo, double hi,
                             std::size_t points, double tol) {
  ScanReport report;
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / static_cast<double>(points - 1);
  // grid-adapted probe offset, capped so x-h stays well inside the domain
  const double half_gap = std::min(0.5 * (std::exp(step) - 1.0), 0.25);
  auto eval = [&f](double x) {
    return f(TowerReal::from_value(x)).to_double();
  };
  for (std::size_t i = 1; i + 1 < points; ++i) {
    const double x = std::exp(log_lo + step * static_cast<double>(i));
    const double h = x * half_gap;
    const double y0 = eval(x);
    const double d2 = eval(x - h) - 2.0 * y0 + eval(x + h);
    report.add(second_difference_row(TowerReal::from_value(x).to_string(), d2,
                                     std::abs(y0), tol),
               tol * std::abs(y0));
  }
  return report;
}

// Tower-range fallback. Past double range a second difference in x sits far
// below representable precision at every working level, so the scan checks
// the representable consequence of concavity with f(0) >= 0 instead: f(x)/x
// is nonincreasing, i.e. ln f(x) - ln x never rises along the grid. The
// grid runs in the working variable u = ln^(j) x at the deepest level where
// it fits in doubles.
ScanReport scan_tower_range(const TowerFunction& f, const TowerReal& lo,
                            const TowerReal& hi, std::size_t points,
                            double tol) {
  const int j = hi.depth();
  ScanReport report;
  const double u_lo = iterated_log(j, lo);
  const double u_hi = iterated_log(j, hi);
  if (!(u_lo > 0.0)) {
    throw DomainError("scan range collapses below the working level");
  }
  const double log_lo = std::log(u_lo);
  const double step = (std::log(u_hi) - log_lo) / static_cast<double>(points - 1);
  auto log_ratio = [&](double u) {
    const TowerReal x = TowerReal::tower(j, u);
    return f(x).log_as_double() - x.log_as_double();
  };
  double prev = log_ratio(std::exp(log_lo));
  for (std::size_t i = 1; i < points; ++i) {
    const double u = std::exp(log_lo + step * static_cast<double>(i));
    double current = log_ratio(u);
    if (!std::isfinite(current)) {
      current = prev;  // ratio not resolvable at this depth; no change seen
    }
    const double rhs = tol * std::max(1.0, std::abs(current));
    CheckRow row;
    row.x_repr = TowerReal::tower(j, u).to_string();
    row.check = "ratio_monotonicity_logspace";
    row.lhs = current - prev;
    row.rhs = rhs;
    row.slack = rhs - row.lhs;
    row.pass = row.lhs <= rhs;
    report.add(std::move(row), rhs);
    prev = current;
  }
  return report;
}

}  // namespace

ScanReport concavity_scan(const TowerFunction& f, const TowerReal& lo,
                          const TowerReal& hi, std::size_t points, double tol) {
  if (!(lo < hi)) {
    throw DomainError("concavity scan requires lo < hi");
  }
  if (points < 3) {
    throw DomainError("concavity scan requires at least 3 points");
  }
  if (hi.fits_double()) {
    return scan_double_range(f, lo.to_double(), hi.to_double(), points, tol);
  }
  return scan_tower_range(f, lo, hi, points, tol);
}

ScanReport concavity_inequalities(const IterLogParams& p, const TowerReal& x,
                                  double tol) {
  validate(p);
  if (x < concavity_threshold(p)) {
    throw DomainError("argument below the concavity threshold");
  }
  ScanReport report;

  // log of each iterated log; +inf where a factor exceeds double range.
  std::vector<double> log_factors;
  log_factors.reserve(static_cast<std::size_t>(p.k));
  TowerReal lambda = x;
  for (int j = 1; j <= p.k; ++j) {
    lambda = lambda.log_tower();
    log_factors.push_back(lambda.log_as_double());
  }

  {
    CheckRow row;
    row.x_repr = x.to_string();
    row.check = "product_bound";
    row.lhs = std::log(4.0 * p.alpha);
    double sum = 0.0;
    for (double lf : log_factors) sum += lf;
    row.rhs = sum;
    row.slack = row.rhs - row.lhs;
    row.pass = row.lhs <= row.rhs + tol * std::max(1.0, std::abs(row.rhs));
    report.add(std::move(row), tol);
  }

  {
    // x r'/r - 1 = sum_{i<k} 1/(l_1...l_i) + (1-alpha)/(l_1...l_k) <= 1/2
    CheckRow row;
    row.x_repr = x.to_string();
    row.check = "log_derivative_bound";
    double sum = 0.0;
    double log_prefix = 0.0;
    for (int i = 1; i <= p.k; ++i) {
      log_prefix += log_factors[static_cast<std::size_t>(i - 1)];
      const double term = std::exp(-log_prefix);  // 0 on overflowed prefixes
      sum += (i < p.k) ? term : (1.0 - p.alpha) * term;
    }
    row.lhs = sum;
    row.rhs = 0.5;
    row.slack = row.rhs - row.lhs;
    row.pass = row.lhs <= row.rhs + tol;
    report.add(std::move(row), tol);
  }
  return report;
}

ScanReport concavity_inequalities_sweep(const IterLogParams& p,
                                        std::size_t points, double tol) {
  validate(p);
  if (points < 1) {
    throw DomainError("sweep requires at least one point");
  }
  ScanReport report;
  // Geometric sweep of the depth-k top from the threshold value upward:
  // covers arguments from T itself out to towers far beyond double range.
  const double top0 = std::pow(4.0 * p.k, 1.0 / p.alpha);
  const double growth = 20.0 / static_cast<double>(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double top = top0 * std::exp(growth * static_cast<double>(i));
    const TowerReal x = TowerReal::tower(p.k, top);
    ScanReport one = concavity_inequalities(p, x, tol);
    for (CheckRow& row : one.rows) {
      report.add(std::move(row), tol);
    }
  }
  return report;
}

ScanReport reciprocal_concavity_scan(int k, double alpha, double n, double lo,
                                     double hi, std::size_t points, double tol) {
  validate(IterLogParams{k, alpha});
  if (!(n > 0.0) || !(lo > 0.0) || !(lo < hi)) {
    throw DomainError("reciprocal scan requires n > 0 and 0 < lo < hi");
  }
  if (points < 3) {
    throw DomainError("reciprocal scan requires at least 3 points");
  }
  const double threshold = concavity_threshold({k, alpha}).to_double();
  if (!(n / threshold >= lo)) {
    throw DomainError("empty domain: n < T * lo");
  }

  auto g_value = [&](double x) {
    const double v = iterated_log(k, n / x);
    if (!(v > 0.0)) {
      throw DomainError("reciprocal scan left the iterated-log domain");
    }
    return 1.0 / std::pow(v, alpha);
  };

  ScanReport report;
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / static_cast<double>(points - 1);
  const double half_gap = std::min(0.5 * (std::exp(step) - 1.0), 0.25);
  for (std::size_t i = 1; i + 1 < points; ++i) {
    const double x = std::exp(log_lo + step * static_cast<double>(i));
    const double h = x * half_gap;
    const double y0 = g_value(x);
    const double d2 = g_value(x - h) - 2.0 * y0 + g_value(x + h);
    report.add(second_difference_row(TowerReal::from_value(x).to_string(), d2,
                                     std::abs(y0), tol),
               tol * std::abs(y0));

    // h(x) = x * prod_{j<k} ln^(j)(n/x); concavity needs h'(x) > 1, and
    // h' = prod_{j<k} l_j * (1 - sum_{i<k} 1/(l_1...l_i)) in closed form.
    double log_prod = 0.0;
    double correction = 0.0;
    double log_prefix = 0.0;
    bool in_domain = true;
    for (int j = 1; j < k; ++j) {
      const double lj = iterated_log(j, n / x);
      if (!(lj > 0.0)) {
        in_domain = false;
        break;
      }
      log_prod += std::log(lj);
      log_prefix += std::log(lj);
      correction += std::exp(-log_prefix);
    }
    if (in_domain) {
      CheckRow row;
      row.x_repr = TowerReal::from_value(x).to_string();
      row.check = "derivative_lower_bound";
      row.lhs = 1.0;
      row.rhs = std::exp(log_prod) * (1.0 - correction);
      row.slack = row.rhs - row.lhs;
      row.pass = row.lhs <= row.rhs + tol;
      report.add(std::move(row), tol);
    }
  }
  return report;
}

ScanReport reciprocal_concavity_scan(int k, double alpha, const TowerReal& n,
                                     std::size_t points, double tol) {
  validate(IterLogParams{k, alpha});
  if (points < 1) {
    throw DomainError("reciprocal scan requires at least one point");
  }
  const TowerReal threshold = concavity_threshold({k, alpha});
  if (!(threshold < n)) {
    throw DomainError("empty domain: n < T * lo");
  }

  // Grid over w = n/x from T upward; x = n/w sweeps the domain (0, n/T]
  // from its right endpoint inward.
  ScanReport report;
  const double top0 = std::pow(4.0 * k, 1.0 / alpha);
  const double growth = 12.0 / static_cast<double>(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double top = top0 * std::exp(growth * static_cast<double>(i));
    const TowerReal w = TowerReal::tower(k, top);
    const std::string x_repr = "n/" + w.to_string();

    {
      CheckRow row;
      row.x_repr = x_repr;
      row.check = "iterlog_lower_bound";
      row.lhs = 2.0;
      row.rhs = iterated_log(k, w);
      row.slack = row.rhs - row.lhs;
      row.pass = row.lhs <= row.rhs + tol;
      report.add(std::move(row), tol);
    }
    {
      double log_prod = 0.0;
      double correction = 0.0;
      double log_prefix = 0.0;
      TowerReal lambda = w;
      for (int j = 1; j < k; ++j) {
        lambda = lambda.log_tower();
        const double lf = lambda.log_as_double();
        log_prod += lf;
        log_prefix += lf;
        correction += std::exp(-log_prefix);
      }
      CheckRow row;
      row.x_repr = x_repr;
      row.check = "derivative_lower_bound";
      row.lhs = 1.0;
      row.rhs = std::exp(log_prod) * (1.0 - correction);
      row.slack = row.rhs - row.lhs;
      row.pass = row.lhs <= row.rhs + tol;
      report.add(std::move(row), tol);
    }
  }
  return report;
}

}  // namespace wreathwalk
