#include "wreathwalk/wreath_group.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "wreathwalk/errors.hpp"

namespace wreathwalk {

WreathGroup::WreathGroup(GroupSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
}

Element WreathGroup::identity() const {
  return spec_.depth() == 0 ? Element::leaf(0) : Element::tower(kOrigin, {});
}

std::int64_t WreathGroup::leaf_length(std::int64_t value) const {
  if (spec_.leaf_is_infinite()) {
    return std::llabs(value);
  }
  const std::int64_t m = spec_.leaf_order;
  std::int64_t v = value % m;
  if (v < 0) v += m;
  return std::min(v, m - v);
}

Element WreathGroup::multiply_at(const Element& a, const Element& b,
                                 std::size_t level) const {
  if (level == spec_.depth()) {
    if (!a.is_leaf() || !b.is_leaf()) {
      throw SpecMismatchError("operand deeper than its group spec");
    }
    if (spec_.leaf_is_infinite()) {
      return Element::leaf(a.leaf_value() + b.leaf_value());
    }
    return Element::leaf((a.leaf_value() + b.leaf_value()) % spec_.leaf_order);
  }
  if (a.is_leaf() || b.is_leaf()) {
    throw SpecMismatchError("operand shallower than its group spec");
  }

  // (t1,f1)(t2,f2) = (t1+t2, x -> f1(x) f2(x-t1)): merge a's lamps with b's
  // lamps shifted by a's base. Shifting preserves the sorted key order.
  const Point shift = a.base();
  Element::Lamps lamps;
  lamps.reserve(a.lamps().size() + b.lamps().size());
  auto ia = a.lamps().begin();
  auto ib = b.lamps().begin();
  while (ia != a.lamps().end() || ib != b.lamps().end()) {
    if (ib == b.lamps().end() ||
        (ia != a.lamps().end() && ia->first < ib->first + shift)) {
      lamps.push_back(*ia);
      ++ia;
    } else if (ia == a.lamps().end() || ib->first + shift < ia->first) {
      lamps.emplace_back(ib->first + shift, ib->second);
      ++ib;
    } else {
      Element combined = multiply_at(ia->second, ib->second, level + 1);
      if (!combined.is_identity()) {
        lamps.emplace_back(ia->first, std::move(combined));
      }
      ++ia;
      ++ib;
    }
  }
  return Element::tower(a.base() + b.base(), std::move(lamps));
}

Element WreathGroup::invert_at(const Element& a, std::size_t level) const {
  if (level == spec_.depth()) {
    if (!a.is_leaf()) {
      throw SpecMismatchError("operand deeper than its group spec");
    }
    if (spec_.leaf_is_infinite()) {
      return Element::leaf(-a.leaf_value());
    }
    return Element::leaf((spec_.leaf_order - a.leaf_value()) % spec_.leaf_order);
  }
  if (a.is_leaf()) {
    throw SpecMismatchError("operand shallower than its group spec");
  }
  // (t,f)^-1 = (-t, x -> f(x+t)^-1); the shift keeps keys sorted.
  Element::Lamps lamps;
  lamps.reserve(a.lamps().size());
  for (const auto& [site, value] : a.lamps()) {
    lamps.emplace_back(site - a.base(), invert_at(value, level + 1));
  }
  return Element::tower(-a.base(), std::move(lamps));
}

Element WreathGroup::multiply(const Element& a, const Element& b) const {
  return multiply_at(a, b, 0);
}

Element WreathGroup::invert(const Element& a) const { return invert_at(a, 0); }

bool WreathGroup::contains_at(const Element& a, std::size_t level) const {
  if (level == spec_.depth()) {
    if (!a.is_leaf()) return false;
    if (spec_.leaf_is_infinite()) return true;
    return a.leaf_value() >= 0 && a.leaf_value() < spec_.leaf_order;
  }
  if (a.is_leaf()) return false;
  const bool line = spec_.levels[level] == Lattice::Line;
  if (line && a.base().y != 0) return false;
  const Point* prev = nullptr;
  for (const auto& [site, value] : a.lamps()) {
    if (line && site.y != 0) return false;
    if (prev != nullptr && !(*prev < site)) return false;
    prev = &site;
    if (value.is_identity()) return false;
    if (!contains_at(value, level + 1)) return false;
  }
  return true;
}

bool WreathGroup::contains(const Element& a) const { return contains_at(a, 0); }

std::int64_t support_tour_length(const std::vector<Point>& sites, Point base) {
  std::vector<Point> remaining = sites;
  Point current = kOrigin;
  std::int64_t total = 0;
  while (!remaining.empty()) {
    std::size_t best = 0;
    std::int64_t best_dist = l1_distance(current, remaining[0]);
    for (std::size_t i = 1; i < remaining.size(); ++i) {
      const std::int64_t d = l1_distance(current, remaining[i]);
      if (d < best_dist || (d == best_dist && remaining[i] < remaining[best])) {
        best = i;
        best_dist = d;
      }
    }
    total += best_dist;
    current = remaining[best];
    remaining.erase(remaining.begin() + best);
  }
  return total + l1_distance(current, base);
}

LengthBracket WreathGroup::bracket_at(const Element& a, std::size_t level) const {
  if (level == spec_.depth()) {
    const double exact = static_cast<double>(leaf_length(a.leaf_value()));
    return {exact, exact};
  }
  double sum_lower = 0.0;
  double sum_upper = 0.0;
  std::vector<Point> sites;
  sites.reserve(a.lamps().size());
  for (const auto& [site, value] : a.lamps()) {
    const LengthBracket inner = bracket_at(value, level + 1);
    sum_lower += inner.lower;
    sum_upper += inner.upper;
    sites.push_back(site);
  }
  const std::int64_t tour = support_tour_length(sites, a.base());
  return {0.5 * sum_lower, 2.0 * (sum_upper + static_cast<double>(tour))};
}

LengthBracket WreathGroup::word_length_bracket(const Element& a) const {
  return bracket_at(a, 0);
}

namespace {

// The lamp alphabet of one decoration slot: every g^p for p in {-1,0,1} with
// g over the inner generators, tagged with its word multiplicity.
struct AlphabetEntry {
  Element element;
  std::uint64_t multiplicity;
};

std::vector<AlphabetEntry> lamp_alphabet(const GroupSpec& inner,
                                         MeasureSemantics semantics) {
  std::map<std::string, AlphabetEntry> seen;
  auto add = [&](const Element& e, const std::string& key) {
    auto [it, fresh] = seen.try_emplace(key, AlphabetEntry{e, 0});
    it->second.multiplicity += 1;
  };
  if (inner.depth() == 0) {
    const WreathGroup leaf_group(inner);
    const Element g = Element::leaf(inner.leaf_is_infinite() ? 1
                                    : 1 % inner.leaf_order);
    add(leaf_group.identity(), encode(leaf_group.identity(), inner));
    add(g, encode(g, inner));
    const Element gi = leaf_group.invert(g);
    add(gi, encode(gi, inner));
  } else {
    const WreathGroup inner_group(inner);
    const GeneratorSet inner_gens = build_generators(inner, semantics);
    const Element e = inner_group.identity();
    for (std::size_t j = 0; j < inner_gens.size(); ++j) {
      add(e, encode(e, inner));  // p = 0, one word per inner generator index
      const Element& g = inner_gens.elements[j];
      add(g, encode(g, inner));
      const Element gi = inner_group.invert(g);
      add(gi, encode(gi, inner));
    }
  }
  std::vector<AlphabetEntry> out;
  out.reserve(seen.size());
  for (auto& [key, entry] : seen) {
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

GeneratorSet build_generators(const GroupSpec& spec, MeasureSemantics semantics) {
  validate(spec);
  if (spec.depth() == 0) {
    throw Error("generator construction requires at least one level");
  }
  GroupSpec inner;
  inner.levels.assign(spec.levels.begin() + 1, spec.levels.end());
  inner.leaf_order = spec.leaf_order;

  const std::vector<AlphabetEntry> alphabet = lamp_alphabet(inner, semantics);
  if (alphabet.empty()) {
    throw Error("empty inner generator list");
  }

  const WreathGroup group(spec);
  const std::vector<Point> steps = unit_steps(spec.levels.front());

  std::map<std::string, std::pair<Element, std::uint64_t>> distinct;
  for (const AlphabetEntry& head : alphabet) {
    for (const Point step : steps) {
      for (const AlphabetEntry& tail : alphabet) {
        Element::Lamps lamps;
        if (!head.element.is_identity()) {
          lamps.emplace_back(kOrigin, head.element);
        }
        if (!tail.element.is_identity()) {
          lamps.emplace_back(step, tail.element);
        }
        std::sort(lamps.begin(), lamps.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        Element g = Element::tower(step, std::move(lamps));
        if (g.is_identity()) continue;
        auto [it, fresh] =
            distinct.try_emplace(encode(g, spec), std::move(g), 0);
        it->second.second += head.multiplicity * tail.multiplicity;
      }
    }
  }

  std::uint64_t total_words = 0;
  for (const auto& [key, value] : distinct) {
    total_words += value.second;
  }

  GeneratorSet out;
  out.semantics = semantics;
  out.elements.reserve(distinct.size());
  out.weights.reserve(distinct.size());
  const double uniform_weight = 1.0 / static_cast<double>(distinct.size());
  for (auto& [key, value] : distinct) {
    out.elements.push_back(std::move(value.first));
    out.weights.push_back(semantics == MeasureSemantics::Elements
                              ? uniform_weight
                              : static_cast<double>(value.second) /
                                    static_cast<double>(total_words));
  }
  return out;
}

}  // namespace wreathwalk
