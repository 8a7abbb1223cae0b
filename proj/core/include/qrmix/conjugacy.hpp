#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qrmix/group.hpp"

namespace qrmix {

/// Partition of G into conjugacy classes. Classes are ordered by
/// (size, smallest member); the identity class is index 0.
struct ConjugacyData {
  std::vector<std::uint32_t> class_of;
  std::vector<std::size_t> class_sizes;
  std::vector<Element> representatives;  // smallest member of each class
  std::vector<std::vector<Element>> members;

  std::size_t class_count() const { return class_sizes.size(); }
};

/// O(|G| * k) orbit sweep.
ConjugacyData conjugacy_classes(const Group& g);

}  // namespace qrmix
