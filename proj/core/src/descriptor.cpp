#include "qrmix/descriptor.hpp"

#include <charconv>
#include <string>

#include "qrmix/error.hpp"

namespace qrmix {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::cyclic: return "cyclic";
    case Family::dihedral: return "dihedral";
    case Family::symmetric: return "symmetric";
    case Family::sl2: return "sl2";
    case Family::psl2: return "psl2";
    case Family::product: return "product";
  }
  return "?";
}

namespace {

GroupDescriptor leaf(Family f, std::uint64_t n) {
  GroupDescriptor d;
  d.family = f;
  d.parameter = n;
  return d;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  GroupDescriptor parse_all() {
    GroupDescriptor d = parse_one();
    if (pos_ != text_.size()) fail("trailing characters");
    return d;
  }

 private:
  GroupDescriptor parse_one() {
    const std::size_t colon = text_.find(':', pos_);
    if (colon == std::string_view::npos) fail("expected '<family>:'");
    const std::string_view name = text_.substr(pos_, colon - pos_);
    pos_ = colon + 1;
    if (name == "product") {
      GroupDescriptor a = parse_one();
      if (pos_ >= text_.size() || text_[pos_] != ',') fail("expected ',' between product factors");
      ++pos_;
      GroupDescriptor b = parse_one();
      return GroupDescriptor::product(std::move(a), std::move(b));
    }
    Family f;
    if (name == "cyclic") {
      f = Family::cyclic;
    } else if (name == "dihedral") {
      f = Family::dihedral;
    } else if (name == "symmetric") {
      f = Family::symmetric;
    } else if (name == "sl2") {
      f = Family::sl2;
    } else if (name == "psl2") {
      f = Family::psl2;
    } else {
      fail("unsupported family '" + std::string(name) + "'");
    }
    return leaf(f, parse_number());
  }

  std::uint64_t parse_number() {
    std::uint64_t value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("expected a non-negative integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConstructionError("bad group descriptor '" + std::string(text_) + "' at offset " +
                            std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupDescriptor GroupDescriptor::cyclic(std::uint64_t n) { return leaf(Family::cyclic, n); }
GroupDescriptor GroupDescriptor::dihedral(std::uint64_t n) { return leaf(Family::dihedral, n); }
GroupDescriptor GroupDescriptor::symmetric(std::uint64_t n) { return leaf(Family::symmetric, n); }
GroupDescriptor GroupDescriptor::sl2(std::uint64_t p) { return leaf(Family::sl2, p); }
GroupDescriptor GroupDescriptor::psl2(std::uint64_t p) { return leaf(Family::psl2, p); }

GroupDescriptor GroupDescriptor::product(GroupDescriptor a, GroupDescriptor b) {
  GroupDescriptor d;
  d.family = Family::product;
  d.parameter = 0;
  d.left = std::make_shared<const GroupDescriptor>(std::move(a));
  d.right = std::make_shared<const GroupDescriptor>(std::move(b));
  return d;
}

GroupDescriptor GroupDescriptor::parse(std::string_view text) { return Parser(text).parse_all(); }

std::string GroupDescriptor::to_string() const {
  if (family == Family::product) {
    return "product:" + left->to_string() + "," + right->to_string();
  }
  return std::string(family_name(family)) + ":" + std::to_string(parameter);
}

}  // namespace qrmix
