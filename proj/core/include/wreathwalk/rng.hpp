#pragma once

#include <cstdint>

namespace wreathwalk {

// splitmix64: 64 bits of state, one multiply-xorshift chain per draw.
// Fast, passes BigCrush, and trivially splittable: a substream is seeded
// from a counter, so stream i depends only on (master seed, i).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound) by the multiply-shift reduction.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Uniform over {0,1,2,3} from the top bits.
  unsigned next_direction() { return static_cast<unsigned>(next() >> 62); }

 private:
  std::uint64_t state_;
};

// Deterministic per-trial seed: one splitmix64 output at counter `index`.
inline std::uint64_t substream_seed(std::uint64_t master_seed,
                                    std::uint64_t index) {
  SplitMix64 g(master_seed + 0x9E3779B97F4A7C15ULL * index);
  return g.next();
}

}  // namespace wreathwalk
