#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wreathwalk/element.hpp"
#include "wreathwalk/group_spec.hpp"

namespace wreathwalk {

// Whether the step measure weights distinct group elements uniformly, or
// weights each element by the number of decorated generator words that
// reduce to it.
enum class MeasureSemantics { Elements, Words };

// Symmetric generating set with its step measure. Closed under inverse,
// identity-free, weights positive and summing to 1.
struct GeneratorSet {
  std::vector<Element> elements;
  std::vector<double> weights;
  MeasureSemantics semantics = MeasureSemantics::Elements;

  std::size_t size() const { return elements.size(); }
  bool uniform() const { return semantics == MeasureSemantics::Elements; }
};

struct LengthBracket {
  double lower = 0.0;
  double upper = 0.0;
};

// Exact arithmetic for one iterated wreath product.
//
// The pair product is fixed as (t1,f1)(t2,f2) = (t1+t2, x -> f1(x)f2(x-t1)),
// so right-multiplying by a lamp generator acts at the current base point.
// All operations are pure; Elements are immutable values.
class WreathGroup {
 public:
  explicit WreathGroup(GroupSpec spec);

  const GroupSpec& spec() const { return spec_; }

  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element invert(const Element& a) const;

  // Structural membership: shape matches the spec, lamp keys on Line levels
  // stay on the axis, leaf values in range, canonical support.
  bool contains(const Element& a) const;

  std::string encode(const Element& a) const { return wreathwalk::encode(a, spec_); }
  Element decode(std::string_view text) const { return wreathwalk::decode(text, spec_); }

  // Exact word length of a leaf value: |k| for Z, min(k, m-k) for C_m.
  std::int64_t leaf_length(std::int64_t value) const;

  // Sandwich bounds on the word length:
  //   lower = (1/2) sum of recursive lower brackets of the lamp values,
  //   upper = 2 * (sum of recursive upper brackets + tour), where tour walks
  //           from the origin through every lamp site to the base point
  //           (greedy nearest-neighbor order, L1 step counts).
  // Always lower <= upper; identity maps to (0, 0).
  LengthBracket word_length_bracket(const Element& a) const;

 private:
  Element multiply_at(const Element& a, const Element& b, std::size_t level) const;
  Element invert_at(const Element& a, std::size_t level) const;
  bool contains_at(const Element& a, std::size_t level) const;
  LengthBracket bracket_at(const Element& a, std::size_t level) const;

  GroupSpec spec_;
};

// Enumerates the decorated words g_0^p · d · g_1^q (d over the +/- unit
// steps of the top lattice, p,q in {-1,0,1}, g_i over the inner group's
// generators; the single generator at the leaf), reduces each to an
// element, deduplicates, and attaches the step measure.
// Requires at least one level.
GeneratorSet build_generators(const GroupSpec& spec,
                              MeasureSemantics semantics = MeasureSemantics::Elements);

// Length of the greedy nearest-neighbor tour: origin -> all sites -> base.
std::int64_t support_tour_length(const std::vector<Point>& sites, Point base);

}  // namespace wreathwalk
