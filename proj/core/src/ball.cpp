#include "wreathwalk/ball.hpp"

#include <utility>

#include "wreathwalk/errors.hpp"

namespace wreathwalk {

Ball bfs_ball(const GroupSpec& spec, int radius, const BfsOptions& options) {
  if (radius < 0) {
    throw Error("ball radius must be nonnegative");
  }
  const WreathGroup group(spec);
  const GeneratorSet gens = build_generators(spec, options.semantics);

  Ball ball;
  ball.radius = radius;
  ball.counts.reserve(static_cast<std::size_t>(radius) + 1);

  std::vector<Element> frontier{group.identity()};
  ball.lengths.emplace(group.encode(frontier.front()), 0);
  ball.counts.push_back(1);

  for (int len = 1; len <= radius; ++len) {
    std::vector<Element> next;
    for (const Element& e : frontier) {
      for (const Element& g : gens.elements) {
        Element product = group.multiply(e, g);
        std::string key = group.encode(product);
        auto [it, fresh] =
            ball.lengths.emplace(std::move(key), static_cast<std::uint32_t>(len));
        if (fresh) {
          if (ball.lengths.size() > options.max_elements) {
            throw ResourceError("word-metric ball exceeds the element cap",
                                ball.lengths.size());
          }
          next.push_back(std::move(product));
        }
      }
    }
    ball.counts.push_back(ball.lengths.size());
    frontier = std::move(next);
  }
  return ball;
}

}  // namespace wreathwalk
