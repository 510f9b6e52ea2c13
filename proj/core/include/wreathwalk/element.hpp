#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wreathwalk/group_spec.hpp"
#include "wreathwalk/point.hpp"

namespace wreathwalk {

// A wreath-product element: a base-lattice point plus a finite-support map
// from lattice points to inner elements (recursively; a plain integer at the
// leaf). Lamp entries are kept sorted by site and never store an inner
// identity, so equal group elements compare equal as values.
class Element {
 public:
  using Lamps = std::vector<std::pair<Point, Element>>;

  Element() = default;  // leaf identity

  static Element leaf(std::int64_t value) {
    Element e;
    e.value_ = value;
    return e;
  }

  // lamps must already be canonical: strictly sorted sites, no identities.
  static Element tower(Point base, Lamps lamps) {
    Element e;
    e.leaf_ = false;
    e.base_ = base;
    e.lamps_ = std::move(lamps);
    return e;
  }

  bool is_leaf() const { return leaf_; }
  std::int64_t leaf_value() const { return value_; }
  const Point& base() const { return base_; }
  const Lamps& lamps() const { return lamps_; }

  bool is_identity() const {
    return leaf_ ? value_ == 0 : (base_ == kOrigin && lamps_.empty());
  }

  friend bool operator==(const Element&, const Element&) = default;

 private:
  bool leaf_ = true;
  std::int64_t value_ = 0;
  Point base_{};
  Lamps lamps_;
};

// Canonical text encoding. Deterministic and injective on canonical
// elements: base point as "(x,y)" or "(x)", lamps in sorted key order as
// "{key↦value,...}", leaf values as decimal integers.
//   identity of Z2 wr C2:  "(0,0)|{}"
std::string encode(const Element& e, const GroupSpec& spec);

// Strict inverse of encode; throws ParseError (with byte offset) on
// malformed or non-canonical input.
Element decode(std::string_view text, const GroupSpec& spec);

}  // namespace wreathwalk
