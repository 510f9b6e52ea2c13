#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace wreathwalk {

// Neumaier-compensated accumulator; summation order still matters for
// bit-reproducibility, so callers feed it in a fixed order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct MeanStderr {
  double mean = 0.0;
  double std_error = 0.0;
};

// Sample mean and standard error of the mean (zero for a single sample).
inline MeanStderr mean_and_stderr(const std::vector<double>& samples) {
  MeanStderr out;
  const std::size_t n = samples.size();
  if (n == 0) return out;
  CompensatedSum total;
  for (double x : samples) total.add(x);
  out.mean = total.value() / static_cast<double>(n);
  if (n < 2) return out;
  CompensatedSum sq;
  for (double x : samples) {
    const double d = x - out.mean;
    sq.add(d * d);
  }
  const double var = sq.value() / static_cast<double>(n - 1);
  out.std_error = std::sqrt(var / static_cast<double>(n));
  return out;
}

// Unbiased sample variance.
inline double sample_variance(const std::vector<double>& samples) {
  if (samples.size() < 2) return 0.0;
  const double mean = mean_and_stderr(samples).mean;
  CompensatedSum sq;
  for (double x : samples) {
    const double d = x - mean;
    sq.add(d * d);
  }
  return sq.value() / static_cast<double>(samples.size() - 1);
}

}  // namespace wreathwalk
