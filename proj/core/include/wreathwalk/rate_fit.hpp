#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace wreathwalk {

// A candidate asymptotic rate, e.g. "n/ln(n)" or "n^(3/4)".
struct RateCandidate {
  std::string name;
  std::function<double(double)> value;
};

// Grammar: "n" | "sqrt(n)" | "n^(p)" | "n/ln...ln(n)" [ "^(p)" ]
// where p is a decimal or a fraction a/b and "lnln(n)" means ln applied
// twice. Throws Error on anything else.
RateCandidate parse_rate(const std::string& name);

// Representative catalog: polynomial rates and iterated-log quotients.
std::vector<RateCandidate> default_rate_catalog();

struct AsymptoticsReport {
  std::string rate;
  double band_min = 0.0;   // min over the grid of value / rate(n)
  double band_max = 0.0;
  double slope = 0.0;      // log-log regression slope of the series

  double band_ratio() const { return band_max / band_min; }
};

// Scores every candidate by the tightness of the ratio band value/rate(n)
// over the series and returns the reports ranked tightest first.
// Requires >= 3 points with strictly increasing n and positive values.
std::vector<AsymptoticsReport> rate_fit(
    const std::vector<std::pair<double, double>>& series,
    const std::vector<RateCandidate>& catalog);

}  // namespace wreathwalk
