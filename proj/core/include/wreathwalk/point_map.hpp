#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "wreathwalk/point.hpp"

namespace wreathwalk {

// Open-addressed visit-count map keyed by lattice point. The walk occupies a
// sparse O(sqrt(n))-diameter region, so a packed linear-probing table beats
// a node-based map by a wide margin in the simulation hot loop.
// Coordinates must fit in 32 bits. A zero count marks an empty slot.
class PointCountMap {
 public:
  explicit PointCountMap(std::size_t expected = 64) {
    std::size_t cap = 16;
    while (cap < expected * 2) cap <<= 1;
    slots_.resize(cap);
    mask_ = cap - 1;
  }

  void increment(Point p) {
    if (3 * (size_ + 1) > 2 * slots_.size()) grow();
    const std::uint64_t key = pack(p);
    Slot& slot = find_slot(key);
    if (slot.count == 0) {
      slot.key = key;
      ++size_;
    }
    ++slot.count;
  }

  std::uint32_t count(Point p) const {
    const std::uint64_t key = pack(p);
    std::size_t i = mix(key) & mask_;
    for (;;) {
      const Slot& slot = slots_[i];
      if (slot.count == 0) return 0;
      if (slot.key == key) return slot.count;
      i = (i + 1) & mask_;
    }
  }

  // Number of distinct points seen.
  std::size_t distinct() const { return size_; }

  // Visits every (point, count) pair in slot order: deterministic for a
  // fixed insertion sequence.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const Slot& slot : slots_) {
      if (slot.count != 0) fn(unpack(slot.key), slot.count);
    }
  }

 private:
  struct Slot {
    std::uint64_t key = 0;
    std::uint32_t count = 0;
  };

  static std::uint64_t pack(Point p) {
    assert(p.x >= INT32_MIN && p.x <= INT32_MAX);
    assert(p.y >= INT32_MIN && p.y <= INT32_MAX);
    const auto hx = static_cast<std::uint32_t>(static_cast<std::int32_t>(p.x));
    const auto hy = static_cast<std::uint32_t>(static_cast<std::int32_t>(p.y));
    return (static_cast<std::uint64_t>(hx) << 32) | hy;
  }

  static Point unpack(std::uint64_t key) {
    return {static_cast<std::int32_t>(key >> 32),
            static_cast<std::int32_t>(key & 0xFFFFFFFFULL)};
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  Slot& find_slot(std::uint64_t key) {
    std::size_t i = mix(key) & mask_;
    for (;;) {
      Slot& slot = slots_[i];
      if (slot.count == 0 || slot.key == key) return slot;
      i = (i + 1) & mask_;
    }
  }

  void grow() {
    std::vector<Slot> old = std::move(slots_);
    slots_.assign(old.size() * 2, Slot{});
    mask_ = slots_.size() - 1;
    for (const Slot& slot : old) {
      if (slot.count == 0) continue;
      std::size_t i = mix(slot.key) & mask_;
      while (slots_[i].count != 0) i = (i + 1) & mask_;
      slots_[i] = slot;
    }
  }

  std::vector<Slot> slots_;
  std::size_t size_ = 0;
  std::size_t mask_ = 0;
};

}  // namespace wreathwalk
