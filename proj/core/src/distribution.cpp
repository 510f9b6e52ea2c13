#include "wreathwalk/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "wreathwalk/errors.hpp"
#include "wreathwalk/summation.hpp"

namespace wreathwalk {

void Distribution::push(Element e, std::string encoding, double p) {
  encodings_.push_back(std::move(encoding));
  index_.emplace(encodings_.back(), elements_.size());
  elements_.push_back(std::move(e));
  mass_.push_back(p);
}

Distribution Distribution::point_mass(const GroupSpec& spec) {
  const WreathGroup group(spec);
  Distribution d;
  d.spec_ = spec;
  d.power_ = 0;
  Element e = group.identity();
  std::string enc = group.encode(e);
  d.push(std::move(e), std::move(enc), 1.0);
  return d;
}

std::optional<std::size_t> Distribution::index_of(std::string_view encoding) const {
  const auto it = index_.find(encoding);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double Distribution::total_mass() const {
  CompensatedSum sum;
  for (double p : mass_) sum.add(p);
  return sum.value();
}

Distribution convolve(const Distribution& d, const GeneratorSet& generators,
                      std::size_t support_cap) {
  if (generators.size() == 0) {
    throw Error("cannot convolve with an empty generator set");
  }
  const WreathGroup group(d.group_spec());
  Distribution out;
  out.spec_ = d.group_spec();
  out.power_ = d.power() + 1;

  for (std::size_t i = 0; i < d.elements_.size(); ++i) {
    const Element& source = d.elements_[i];
    const double p = d.mass_[i];
    for (std::size_t s = 0; s < generators.size(); ++s) {
      Element target = group.multiply(source, generators.elements[s]);
      std::string enc = group.encode(target);
      const double contribution = p * generators.weights[s];
      const auto it = out.index_.find(enc);
      if (it == out.index_.end()) {
        if (out.elements_.size() >= support_cap) {
          throw ResourceError("convolution support exceeds the cap",
                              out.elements_.size());
        }
        out.push(std::move(target), std::move(enc), contribution);
      } else {
        out.mass_[it->second] += contribution;
      }
    }
  }
  return out;
}

double entropy_of(const Distribution& d) {
  CompensatedSum sum;
  for (double p : d.mass()) {
    if (p > 0.0) {
      sum.add(-p * std::log(p));
    }
  }
  return sum.value();
}

double drift_of(const Distribution& d, const Ball& ball) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < d.support_size(); ++i) {
    const auto it = ball.lengths.find(d.encodings()[i]);
    if (it == ball.lengths.end()) {
      throw Error("distribution support escapes the ball at element " +
                  d.encodings()[i]);
    }
    sum.add(d.mass()[i] * static_cast<double>(it->second));
  }
  return sum.value();
}

double second_moment_of(const Distribution& d, const Ball& ball) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < d.support_size(); ++i) {
    const auto it = ball.lengths.find(d.encodings()[i]);
    if (it == ball.lengths.end()) {
      throw Error("distribution support escapes the ball at element " +
                  d.encodings()[i]);
    }
    const double l = static_cast<double>(it->second);
    sum.add(d.mass()[i] * l * l);
  }
  return sum.value();
}

double inverse_symmetry_gap(const Distribution& d) {
  const WreathGroup group(d.group_spec());
  double gap = 0.0;
  for (std::size_t i = 0; i < d.support_size(); ++i) {
    const std::string inv = group.encode(group.invert(d.elements()[i]));
    const auto j = d.index_of(inv);
    const double q = j ? d.mass()[*j] : 0.0;
    gap = std::max(gap, std::abs(d.mass()[i] - q));
  }
  return gap;
}

}  // namespace wreathwalk
