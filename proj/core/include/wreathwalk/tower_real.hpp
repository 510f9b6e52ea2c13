#pragma once

#include <compare>
#include <string>

namespace wreathwalk {

// A positive real in iterated-log space: the value is depth() nested
// exponentials over top(). Normalized to the minimal depth whose top stays
// inside double range, so ordinary magnitudes live at depth 0 and only
// genuinely tower-sized values carry depth. Comparisons are total; they
// descend to a common depth by taking logs, which is exact enough because
// any depth >= 1 top exceeds e^700.
class TowerReal {
 public:
  TowerReal() = default;  // the value 1

  // value must be positive and finite.
  static TowerReal from_value(double value);

  // depth nested exponentials applied to top (top > 0 when depth > 0).
  static TowerReal tower(int depth, double top);

  // The value e^u for any real u (clamped to the smallest positive double
  // when e^u underflows).
  static TowerReal from_log(double u);

  int depth() const { return depth_; }
  double top() const { return top_; }

  // Collapses to a double; +inf when the value exceeds double range.
  double to_double() const;
  bool fits_double() const;

  // ln of the value as a double; +inf when even the log is out of range.
  double log_as_double() const;

  // ln of the value as a TowerReal; DomainError when the log is <= 0.
  TowerReal log_tower() const;

  std::string to_string() const;  // "x" at depth 0, "exp^d(top)" otherwise

  friend bool operator==(const TowerReal& a, const TowerReal& b);
  friend std::partial_ordering operator<=>(const TowerReal& a, const TowerReal& b);

 private:
  int depth_ = 0;
  double top_ = 1.0;

  void normalize();
};

}  // namespace wreathwalk
