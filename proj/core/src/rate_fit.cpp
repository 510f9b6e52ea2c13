#include "wreathwalk/rate_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wreathwalk/errors.hpp"

namespace wreathwalk {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c != ' ') out += c;
  }
  return out;
}

// "p", "(p)", "a/b", "(a/b)"
double parse_exponent(std::string s) {
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    s = s.substr(1, s.size() - 2);
  }
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(s.substr(0, slash));
      const double den = std::stod(s.substr(slash + 1));
      if (den == 0.0) throw Error("zero denominator in exponent");
      return num / den;
    }
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw Error("trailing characters in exponent");
    return v;
  } catch (const std::invalid_argument&) {
    throw Error("bad exponent \"" + s + "\"");
  }
}

double iterated_log_or_nan(int k, double n) {
  double v = n;
  for (int i = 0; i < k; ++i) {
    if (!(v > 0.0)) return kNaN;
    v = std::log(v);
  }
  return v;
}

}  // namespace

RateCandidate parse_rate(const std::string& name) {
  const std::string s = strip_spaces(name);
  if (s.empty()) {
    throw Error("empty rate name");
  }
  if (s == "n") {
    return {name, [](double n) { return n; }};
  }
  if (s == "sqrt(n)") {
    return {name, [](double n) { return std::sqrt(n); }};
  }
  if (s.rfind("n^", 0) == 0) {
    const double p = parse_exponent(s.substr(2));
    return {name, [p](double n) { return std::pow(n, p); }};
  }
  if (s.rfind("n/", 0) == 0) {
    std::string rest = s.substr(2);
    int logs = 0;
    while (rest.rfind("ln", 0) == 0) {
      ++logs;
      rest = rest.substr(2);
    }
    if (logs == 0 || rest.rfind("(n)", 0) != 0) {
      throw Error("unknown rate \"" + name + "\"");
    }
    rest = rest.substr(3);
    double p = 1.0;
    if (!rest.empty()) {
      if (rest.front() != '^') {
        throw Error("unknown rate \"" + name + "\"");
      }
      p = parse_exponent(rest.substr(1));
    }
    return {name, [logs, p](double n) {
              const double v = iterated_log_or_nan(logs, n);
              if (!(v > 0.0)) return kNaN;
              return n / std::pow(v, p);
            }};
  }
  throw Error("unknown rate \"" + name + "\"");
}

std::vector<RateCandidate> default_rate_catalog() {
  std::vector<RateCandidate> catalog;
  for (const char* name :
       {"n", "sqrt(n)", "n^(3/4)", "n^(7/8)", "n/ln(n)", "n/lnln(n)",
        "n/lnlnln(n)", "n/ln(n)^(1/2)", "n/ln(n)^(3/4)", "n/lnln(n)^(1/2)"}) {
    catalog.push_back(parse_rate(name));
  }
  return catalog;
}

std::vector<AsymptoticsReport> rate_fit(
    const std::vector<std::pair<double, double>>& series,
    const std::vector<RateCandidate>& catalog) {
  if (series.size() < 3) {
    throw Error("rate fit needs at least 3 points");
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!(series[i].second > 0.0)) {
      throw Error("rate fit needs positive series values");
    }
    if (i > 0 && !(series[i - 1].first < series[i].first)) {
      throw Error("rate fit needs strictly increasing n");
    }
  }

  // log-log regression slope of the series itself
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& [n, v] : series) {
    mean_x += std::log(n);
    mean_y += std::log(v);
  }
  mean_x /= static_cast<double>(series.size());
  mean_y /= static_cast<double>(series.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [n, v] : series) {
    const double dx = std::log(n) - mean_x;
    sxy += dx * (std::log(v) - mean_y);
    sxx += dx * dx;
  }
  const double slope = sxy / sxx;

  std::vector<AsymptoticsReport> reports;
  reports.reserve(catalog.size());
  for (const RateCandidate& rate : catalog) {
    AsymptoticsReport report;
    report.rate = rate.name;
    report.slope = slope;
    report.band_min = std::numeric_limits<double>::infinity();
    report.band_max = 0.0;
    bool valid = true;
    for (const auto& [n, v] : series) {
      const double denom = rate.value(n);
      if (!(denom > 0.0) || std::isnan(denom)) {
        valid = false;
        break;
      }
      const double ratio = v / denom;
      report.band_min = std::min(report.band_min, ratio);
      report.band_max = std::max(report.band_max, ratio);
    }
    if (!valid) {
      report.band_min = kNaN;
      report.band_max = kNaN;
    }
    reports.push_back(std::move(report));
  }

  std::sort(reports.begin(), reports.end(),
            [](const AsymptoticsReport& a, const AsymptoticsReport& b) {
              const double ra = a.band_ratio();
              const double rb = b.band_ratio();
              const bool va = !std::isnan(ra);
              const bool vb = !std::isnan(rb);
              if (va != vb) return va;
              if (va && ra != rb) return ra < rb;
              return a.rate < b.rate;
            });
  return reports;
}

}  // namespace wreathwalk
