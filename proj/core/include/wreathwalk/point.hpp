#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <vector>

namespace wreathwalk {

// Base lattice of one wreath level: Z or Z^2.
enum class Lattice { Line, Square };

inline int dimension(Lattice lattice) {
  return lattice == Lattice::Square ? 2 : 1;
}

// Lattice point. A Line-lattice point keeps y == 0.
// Ordering is lexicographic (x, then y); this is the canonical key order.
struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr Point operator+(Point a, Point b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend constexpr Point operator-(Point a, Point b) {
    return {a.x - b.x, a.y - b.y};
  }
  constexpr Point operator-() const { return {-x, -y}; }
  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

inline constexpr Point kOrigin{0, 0};

inline std::int64_t l1_norm(Point p) {
  return std::llabs(p.x) + std::llabs(p.y);
}

inline std::int64_t l1_distance(Point a, Point b) { return l1_norm(a - b); }

// The +/- unit steps of a lattice, in a fixed enumeration order.
std::vector<Point> unit_steps(Lattice lattice);

}  // namespace wreathwalk
