#include "wreathwalk/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <unordered_map>
#include <utility>

#include "wreathwalk/ball.hpp"
#include "wreathwalk/errors.hpp"
#include "wreathwalk/parallel.hpp"
#include "wreathwalk/rng.hpp"
#include "wreathwalk/summation.hpp"

namespace wreathwalk {

namespace {

std::uint64_t pack_site(Point p) {
  const auto hx = static_cast<std::uint32_t>(static_cast<std::int32_t>(p.x));
  const auto hy = static_cast<std::uint32_t>(static_cast<std::int32_t>(p.y));
  return (static_cast<std::uint64_t>(hx) << 32) | hy;
}

Point unpack_site(std::uint64_t key) {
  return {static_cast<std::int32_t>(key >> 32),
          static_cast<std::int32_t>(key & 0xFFFFFFFFULL)};
}

// Mutable walk accumulator: right multiplication by a generator touches at
// most two lamp sites near the current position, so a trajectory of n steps
// costs O(n) instead of the O(n^2) of immutable element products.
class WalkState {
 public:
  WalkState(const GroupSpec& spec, std::size_t level)
      : spec_(&spec), level_(level) {}

  void apply(const Element& g) {
    for (const auto& [site, value] : g.lamps()) {
      apply_lamp(pos_ + site, value);
    }
    pos_ = pos_ + g.base();
  }

  Element to_element() const {
    Element::Lamps lamps;
    lamps.reserve(nodes_.size());
    for (const auto& [key, node] : nodes_) {
      Element value = node_element(node);
      if (!value.is_identity()) {
        lamps.emplace_back(unpack_site(key), std::move(value));
      }
    }
    std::sort(lamps.begin(), lamps.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return Element::tower(pos_, std::move(lamps));
  }

 private:
  struct Node {
    std::int64_t leaf = 0;
    std::unique_ptr<WalkState> inner;
  };

  bool lamp_is_leaf() const { return level_ + 1 == spec_->depth(); }

  void apply_lamp(Point site, const Element& value) {
    Node& node = nodes_[pack_site(site)];
    if (lamp_is_leaf()) {
      node.leaf += value.leaf_value();
      if (!spec_->leaf_is_infinite()) {
        node.leaf %= spec_->leaf_order;
        if (node.leaf < 0) node.leaf += spec_->leaf_order;
      }
    } else {
      if (!node.inner) {
        node.inner = std::make_unique<WalkState>(*spec_, level_ + 1);
      }
      node.inner->apply(value);
    }
  }

  Element node_element(const Node& node) const {
    if (lamp_is_leaf()) {
      return Element::leaf(node.leaf);
    }
    return node.inner->to_element();
  }

  const GroupSpec* spec_;
  std::size_t level_;
  Point pos_{};
  std::unordered_map<std::uint64_t, Node> nodes_;
};

std::size_t sample_index(SplitMix64& rng, const GeneratorSet& gens) {
  if (gens.uniform()) {
    return static_cast<std::size_t>(rng.next_below(gens.size()));
  }
  const double u = rng.next_unit();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < gens.size(); ++i) {
    acc += gens.weights[i];
    if (u < acc) return i;
  }
  return gens.size() - 1;
}

}  // namespace

Element sample_walk_endpoint(const WreathGroup& group, const GeneratorSet& gens,
                             std::uint64_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  WalkState state(group.spec(), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    state.apply(gens.elements[sample_index(rng, gens)]);
  }
  return state.to_element();
}

DriftBracket drift_mc_bracket(const GroupSpec& spec, std::uint64_t n,
                              std::uint64_t trials, std::uint64_t master_seed,
                              unsigned threads, MeasureSemantics semantics) {
  if (n < 1) {
    throw Error("drift bracket requires n >= 1");
  }
  if (trials < 1) {
    throw Error("drift bracket requires at least one trial");
  }
  const WreathGroup group(spec);
  const GeneratorSet gens = build_generators(spec, semantics);

  const auto brackets = parallel_map<LengthBracket>(
      trials, threads, [&](std::size_t trial) {
        const Element endpoint = sample_walk_endpoint(
            group, gens, n, substream_seed(master_seed, trial));
        return group.word_length_bracket(endpoint);
      });

  std::vector<double> lower(brackets.size());
  std::vector<double> upper(brackets.size());
  for (std::size_t i = 0; i < brackets.size(); ++i) {
    lower[i] = brackets[i].lower;
    upper[i] = brackets[i].upper;
  }
  const MeanStderr lo = mean_and_stderr(lower);
  const MeanStderr hi = mean_and_stderr(upper);
  return {n, lo.mean, hi.mean, lo.std_error, hi.std_error, trials, master_seed};
}

EstimateReport compose_drift(const RealFunction& inner_drift, std::uint64_t n,
                             std::uint64_t trials, std::uint64_t master_seed,
                             unsigned threads) {
  return functional_estimate(inner_drift, n, trials, master_seed, threads);
}

EntropyBoundsReport entropy_bounds_check(const GroupSpec& spec, int n_max,
                                         std::size_t support_cap) {
  if (n_max < 1) {
    throw Error("entropy bounds need n_max >= 1");
  }
  const Ball ball = bfs_ball(spec, n_max, {support_cap, MeasureSemantics::Elements});
  const GeneratorSet gens = build_generators(spec);

  EntropyBoundsReport report;
  report.rows.reserve(static_cast<std::size_t>(n_max) + 1);

  EntropyBoundsRow zero;
  zero.n = 0;
  zero.growth = ball.growth(0);
  report.rows.push_back(zero);

  Distribution d = Distribution::point_mass(spec);
  for (int n = 1; n <= n_max; ++n) {
    d = convolve(d, gens, support_cap);
    EntropyBoundsRow row;
    row.n = static_cast<std::uint64_t>(n);
    row.entropy = entropy_of(d);
    row.drift = drift_of(d, ball);
    row.second_moment = second_moment_of(d, ball);
    row.growth = ball.growth(n);
    row.log_growth = std::log(static_cast<double>(row.growth));
    row.h_hat = row.entropy / static_cast<double>(n);
    row.v_hat = row.log_growth / static_cast<double>(n);
    row.l_hat = row.drift / static_cast<double>(n);
    row.maxent_slack = row.log_growth - row.entropy;
    report.max_mass_defect =
        std::max(report.max_mass_defect, std::abs(1.0 - d.total_mass()));
    report.max_symmetry_gap =
        std::max(report.max_symmetry_gap, inverse_symmetry_gap(d));
    report.rows.push_back(row);
  }

  report.maxent_ok = true;
  report.entropy_monotone = true;
  report.v_hat_max = 0.0;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const EntropyBoundsRow& row = report.rows[i];
    report.v_hat_max = std::max(report.v_hat_max, row.v_hat);
    if (row.maxent_slack < -1e-12) report.maxent_ok = false;
    if (i >= 2 && row.entropy < report.rows[i - 1].entropy - 1e-12) {
      report.entropy_monotone = false;
    }
  }

  report.c_upper = 0.0;
  report.c_lower_el2 = std::numeric_limits<double>::infinity();
  report.c_lower_l2 = std::numeric_limits<double>::infinity();
  report.k_sqrt = 0.0;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const EntropyBoundsRow& row = report.rows[i];
    const double n = static_cast<double>(row.n);
    const double log_n = std::log(n);
    report.c_upper = std::max(
        report.c_upper, row.entropy - report.v_hat_max * row.drift - log_n);
    if (row.second_moment > 0.0) {
      report.c_lower_el2 = std::min(
          report.c_lower_el2, (row.entropy + log_n) * n / row.second_moment);
    }
    if (row.drift > 0.0) {
      report.c_lower_l2 = std::min(
          report.c_lower_l2, (row.entropy + log_n) * n / (row.drift * row.drift));
    }
    report.k_sqrt = std::max(
        report.k_sqrt, row.drift / std::sqrt(n * (row.log_growth + log_n)));
  }

  report.drift_subadditive = true;
  for (std::size_t a = 1; a < report.rows.size(); ++a) {
    for (std::size_t b = a; a + b < report.rows.size(); ++b) {
      if (report.rows[a + b].drift >
          report.rows[a].drift + report.rows[b].drift + 1e-9) {
        report.drift_subadditive = false;
      }
    }
  }
  return report;
}

}  // namespace wreathwalk
