#include "wreathwalk/element.hpp"

#include <charconv>

#include "wreathwalk/errors.hpp"

namespace wreathwalk {

namespace {

constexpr std::string_view kMapsTo = "↦";  // "↦"

void append_int(std::string& out, std::int64_t v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

void append_point(std::string& out, Point p, Lattice lattice) {
  out += '(';
  append_int(out, p.x);
  if (lattice == Lattice::Square) {
    out += ',';
    append_int(out, p.y);
  }
  out += ')';
}

void encode_at(std::string& out, const Element& e, const GroupSpec& spec,
               std::size_t level) {
  if (level == spec.depth()) {
    if (!e.is_leaf()) {
      throw SpecMismatchError("element deeper than its group spec");
    }
    append_int(out, e.leaf_value());
    return;
  }
  if (e.is_leaf()) {
    throw SpecMismatchError("element shallower than its group spec");
  }
  append_point(out, e.base(), spec.levels[level]);
  out += "|{";
  bool first = true;
  for (const auto& [site, value] : e.lamps()) {
    if (!first) out += ',';
    first = false;
    append_point(out, site, spec.levels[level]);
    out += kMapsTo;
    encode_at(out, value, spec, level + 1);
  }
  out += '}';
}

class Parser {
 public:
  Parser(std::string_view text, const GroupSpec& spec)
      : text_(text), spec_(spec) {}

  Element parse() {
    Element e = parse_element(0);
    if (pos_ != text_.size()) {
      fail("trailing characters after element");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, pos_);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  void expect_maps_to() {
    if (text_.substr(pos_, kMapsTo.size()) != kMapsTo) {
      fail("expected '↦' between key and value");
    }
    pos_ += kMapsTo.size();
  }

  std::int64_t parse_int() {
    const std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    const std::size_t digits_start = pos_;
    while (peek() >= '0' && peek() <= '9') ++pos_;
    if (pos_ == digits_start) fail("expected integer");
    std::string_view digits = text_.substr(digits_start, pos_ - digits_start);
    if (digits.size() > 1 && digits[0] == '0') {
      pos_ = digits_start;
      fail("non-canonical integer (leading zero)");
    }
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      pos_ = digits_start;
      fail("integer out of range");
    }
    if (start != digits_start) {
      if (value == 0) {
        pos_ = start;
        fail("non-canonical integer (-0)");
      }
      value = -value;
    }
    return value;
  }

  Point parse_point(Lattice lattice) {
    expect('(');
    Point p;
    p.x = parse_int();
    if (lattice == Lattice::Square) {
      expect(',');
      p.y = parse_int();
    }
    expect(')');
    return p;
  }

  Element parse_element(std::size_t level) {
    if (level == spec_.depth()) {
      std::int64_t v = parse_int();
      if (!spec_.leaf_is_infinite() &&
          (v < 0 || v >= spec_.leaf_order)) {
        fail("leaf value out of range [0, " +
             std::to_string(spec_.leaf_order) + ")");
      }
      return Element::leaf(v);
    }
    const Lattice lattice = spec_.levels[level];
    const Point base = parse_point(lattice);
    expect('|');
    expect('{');
    Element::Lamps lamps;
    if (peek() != '}') {
      while (true) {
        const std::size_t key_pos = pos_;
        Point site = parse_point(lattice);
        if (!lamps.empty() && !(lamps.back().first < site)) {
          pos_ = key_pos;
          fail("lamp keys not strictly sorted");
        }
        expect_maps_to();
        const std::size_t value_pos = pos_;
        Element value = parse_element(level + 1);
        if (value.is_identity()) {
          pos_ = value_pos;
          fail("lamp stores an inner identity");
        }
        lamps.emplace_back(site, std::move(value));
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect('}');
    return Element::tower(base, std::move(lamps));
  }

  std::string_view text_;
  const GroupSpec& spec_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode(const Element& e, const GroupSpec& spec) {
  std::string out;
  out.reserve(16 + 24 * e.lamps().size());
  encode_at(out, e, spec, 0);
  return out;
}

Element decode(std::string_view text, const GroupSpec& spec) {
  Parser parser(text, spec);
  return parser.parse();
}

}  // namespace wreathwalk
