#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "wreathwalk/wreath_group.hpp"

namespace wreathwalk {

// Exact word-metric ball: every element of length <= radius with its length,
// keyed by canonical encoding, plus the cumulative growth counts v(0..radius).
struct Ball {
  int radius = 0;
  std::unordered_map<std::string, std::uint32_t> lengths;
  std::vector<std::uint64_t> counts;

  std::uint64_t growth(int n) const { return counts.at(static_cast<std::size_t>(n)); }
};

struct BfsOptions {
  std::size_t max_elements = 5'000'000;
  MeasureSemantics semantics = MeasureSemantics::Elements;
};

// Breadth-first closure of the generating set from the identity.
// Deterministic; throws ResourceError when the ball outgrows the cap.
Ball bfs_ball(const GroupSpec& spec, int radius, const BfsOptions& options = {});

}  // namespace wreathwalk
