#include "wreathwalk/group_spec.hpp"

#include <sstream>

#include "wreathwalk/errors.hpp"

namespace wreathwalk {

std::vector<Point> unit_steps(Lattice lattice) {
  if (lattice == Lattice::Square) {
    return {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  }
  return {{1, 0}, {-1, 0}};
}

void validate(const GroupSpec& spec) {
  if (spec.leaf_order < 0 || spec.leaf_order == 1) {
    throw Error("leaf order must be 0 (infinite cyclic) or >= 2, got " +
                std::to_string(spec.leaf_order));
  }
}

namespace {

std::vector<std::string> split_on_wr(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string word;
  std::string current;
  bool expect_wr = false;
  while (in >> word) {
    if (expect_wr) {
      if (word != "wr") {
        throw Error("expected 'wr' between group factors in \"" + text + "\"");
      }
      expect_wr = false;
    } else {
      tokens.push_back(word);
      expect_wr = true;
    }
  }
  if (!expect_wr && !tokens.empty()) {
    throw Error("trailing 'wr' in group spec \"" + text + "\"");
  }
  return tokens;
}

}  // namespace

GroupSpec parse_group_spec(const std::string& text) {
  const std::vector<std::string> tokens = split_on_wr(text);
  if (tokens.empty()) {
    throw Error("empty group spec");
  }
  GroupSpec spec;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (tok == "Z") {
      spec.levels.push_back(Lattice::Line);
    } else if (tok == "Z2") {
      spec.levels.push_back(Lattice::Square);
    } else {
      throw Error("unknown base lattice \"" + tok + "\" (expected Z or Z2)");
    }
  }
  const std::string& leaf = tokens.back();
  if (leaf == "Z") {
    spec.leaf_order = 0;
  } else if (leaf.size() >= 2 && leaf[0] == 'C') {
    std::int64_t order = 0;
    for (std::size_t i = 1; i < leaf.size(); ++i) {
      if (leaf[i] < '0' || leaf[i] > '9') {
        throw Error("bad cyclic order in \"" + leaf + "\"");
      }
      order = order * 10 + (leaf[i] - '0');
    }
    spec.leaf_order = order;
  } else {
    throw Error("unknown leaf group \"" + leaf + "\" (expected Cm or Z)");
  }
  validate(spec);
  return spec;
}

std::string to_string(const GroupSpec& spec) {
  std::string out;
  for (Lattice level : spec.levels) {
    out += (level == Lattice::Square) ? "Z2 wr " : "Z wr ";
  }
  if (spec.leaf_is_infinite()) {
    out += "Z";
  } else {
    out += "C" + std::to_string(spec.leaf_order);
  }
  return out;
}

}  // namespace wreathwalk
