#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wreathwalk/point.hpp"

namespace wreathwalk {

// An iterated wreath product: base lattices listed outermost first, over a
// leaf group that is either cyclic of order m >= 2 or Z (encoded as order 0).
// An empty level list denotes the leaf group alone.
struct GroupSpec {
  std::vector<Lattice> levels;
  std::int64_t leaf_order = 2;

  bool leaf_is_infinite() const { return leaf_order == 0; }
  std::size_t depth() const { return levels.size(); }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

// Throws Error on an invalid leaf order (1 or negative).
void validate(const GroupSpec& spec);

// Text form "Z2 wr Z2 wr C2": levels left to right outermost first, the last
// token is the leaf ("Cm" for cyclic of order m, "Z" for the integers).
GroupSpec parse_group_spec(const std::string& text);
std::string to_string(const GroupSpec& spec);

}  // namespace wreathwalk
