#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace qrmix {

enum class Family { cyclic, dihedral, symmetric, sl2, psl2, product };

std::string_view family_name(Family f);

/// Parsed form of the family grammar
///   cyclic:<n> | dihedral:<n> | symmetric:<n> | sl2:<p> | psl2:<p>
///   | product:<desc>,<desc>
/// Products are written in prefix form, so nesting needs no brackets:
/// `product:product:cyclic:2,cyclic:2,cyclic:3` is (C2 x C2) x C3.
struct GroupDescriptor {
  Family family = Family::cyclic;
  std::uint64_t parameter = 1;  // unused for products
  std::shared_ptr<const GroupDescriptor> left;
  std::shared_ptr<const GroupDescriptor> right;

  static GroupDescriptor cyclic(std::uint64_t n);
  static GroupDescriptor dihedral(std::uint64_t n);
  static GroupDescriptor symmetric(std::uint64_t n);
  static GroupDescriptor sl2(std::uint64_t p);
  static GroupDescriptor psl2(std::uint64_t p);
  static GroupDescriptor product(GroupDescriptor a, GroupDescriptor b);

  /// Throws ConstructionError on malformed input.
  static GroupDescriptor parse(std::string_view text);

  /// Canonical text form; parse(to_string()) reproduces the descriptor.
  std::string to_string() const;
};

}  // namespace qrmix
