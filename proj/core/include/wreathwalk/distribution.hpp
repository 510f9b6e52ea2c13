#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wreathwalk/ball.hpp"
#include "wreathwalk/wreath_group.hpp"

namespace wreathwalk {

// Finite-support measure over canonically encoded elements, tracking its
// convolution power. Support order is insertion order, which is itself
// deterministic, so sums over the support are reproducible.
class Distribution {
 public:
  static Distribution point_mass(const GroupSpec& spec);

  const GroupSpec& group_spec() const { return spec_; }
  std::uint64_t power() const { return power_; }
  std::size_t support_size() const { return elements_.size(); }

  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<double>& mass() const { return mass_; }
  const std::deque<std::string>& encodings() const { return encodings_; }

  std::optional<std::size_t> index_of(std::string_view encoding) const;
  double total_mass() const;

 private:
  friend Distribution convolve(const Distribution&, const GeneratorSet&,
                               std::size_t);

  GroupSpec spec_;
  std::uint64_t power_ = 0;
  std::vector<Element> elements_;
  std::vector<double> mass_;
  // deque keeps string storage stable, so the index can key on views.
  std::deque<std::string> encodings_;
  std::unordered_map<std::string_view, std::size_t> index_;

  void push(Element e, std::string encoding, double p);
};

// Exact one-step convolution: pushes every mass forward along right
// multiplication by each generator. Throws ResourceError when the support
// would exceed support_cap.
Distribution convolve(const Distribution& d, const GeneratorSet& generators,
                      std::size_t support_cap = 5'000'000);

// Shannon entropy -sum p ln p (natural log, compensated summation).
double entropy_of(const Distribution& d);

// Expected word length under exact BFS lengths. Throws Error (naming the
// escaping element) if the support is not contained in the ball.
double drift_of(const Distribution& d, const Ball& ball);

// Expected squared word length.
double second_moment_of(const Distribution& d, const Ball& ball);

// Largest |mass(g) - mass(g^-1)| over the support.
double inverse_symmetry_gap(const Distribution& d);

}  // namespace wreathwalk
