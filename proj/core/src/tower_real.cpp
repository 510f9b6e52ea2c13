#include "wreathwalk/tower_real.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "wreathwalk/errors.hpp"

namespace wreathwalk {

namespace {

// exp(top) is collapsed while it stays below ~1e306, so any represented
// depth >= 1 value exceeds double range for practical purposes.
const double kMaxExpArg = std::log(1e306);

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

void TowerReal::normalize() {
  while (depth_ > 0 && top_ <= kMaxExpArg) {
    top_ = std::exp(top_);
    --depth_;
  }
}

TowerReal TowerReal::from_value(double value) {
  if (!(value > 0.0) || std::isinf(value)) {
    throw DomainError("TowerReal requires a positive finite value");
  }
  TowerReal x;
  x.depth_ = 0;
  x.top_ = value;
  return x;
}

TowerReal TowerReal::tower(int depth, double top) {
  if (depth < 0) {
    throw DomainError("TowerReal depth must be nonnegative");
  }
  if (!(top > 0.0) && depth > 0) {
    throw DomainError("TowerReal top must be positive under exponentials");
  }
  if (depth == 0) {
    return from_value(top);
  }
  TowerReal x;
  x.depth_ = depth;
  x.top_ = top;
  x.normalize();
  return x;
}

TowerReal TowerReal::from_log(double u) {
  if (u > kMaxExpArg) {
    return tower(1, u);
  }
  double v = std::exp(u);
  if (v <= 0.0) {
    v = std::numeric_limits<double>::min();
  }
  return from_value(v);
}

double TowerReal::to_double() const {
  double v = top_;
  for (int i = 0; i < depth_; ++i) {
    v = std::exp(v);  // saturates to +inf past double range
  }
  return v;
}

bool TowerReal::fits_double() const { return !std::isinf(to_double()); }

double TowerReal::log_as_double() const {
  if (depth_ == 0) {
    return std::log(top_);
  }
  return TowerReal::tower(depth_ - 1, top_).to_double();
}

TowerReal TowerReal::log_tower() const {
  if (depth_ > 0) {
    return tower(depth_ - 1, top_);
  }
  if (top_ <= 1.0) {
    throw DomainError("log of a TowerReal <= 1 is not positive");
  }
  return from_value(std::log(top_));
}

std::string TowerReal::to_string() const {
  if (depth_ == 0) {
    return format_double(top_);
  }
  return "exp^" + std::to_string(depth_) + "(" + format_double(top_) + ")";
}

bool operator==(const TowerReal& a, const TowerReal& b) {
  return (a <=> b) == std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const TowerReal& a, const TowerReal& b) {
  // Raise the shallower side to the deeper depth by taking logs; a top that
  // goes nonpositive on the way up stands for a value below every depth-d
  // tower, so it is replaced by -inf.
  const int depth = a.depth_ > b.depth_ ? a.depth_ : b.depth_;
  double ta = a.top_;
  for (int i = a.depth_; i < depth; ++i) {
    ta = ta > 0.0 ? std::log(ta) : -std::numeric_limits<double>::infinity();
  }
  double tb = b.top_;
  for (int i = b.depth_; i < depth; ++i) {
    tb = tb > 0.0 ? std::log(tb) : -std::numeric_limits<double>::infinity();
  }
  return ta <=> tb;
}

}  // namespace wreathwalk
