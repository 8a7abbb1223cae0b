#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrmix/descriptor.hpp"

namespace qrmix {

/// Dense element index in [0, |G|). The identity is always index 0 for groups
/// produced by build_group.
using Element = std::uint32_t;

/// Largest order build_group accepts.
inline constexpr std::uint64_t kMaxGroupOrder = 2'000'000;

/// Groups up to this order carry a full multiplication table.
inline constexpr std::uint64_t kTableMaxOrder = 4096;

namespace detail {
/// Multiplication backend for groups too large for a table.
class GroupKernel {
 public:
  virtual ~GroupKernel() = default;
  virtual Element mul(Element a, Element b) const = 0;
  virtual std::string label(Element a) const = 0;
};
}  // namespace detail

/// A finite group as an index-based multiplication structure, equipped with
/// the uniform probability measure. Immutable; copies share storage.
class Group {
 public:
  /// Wraps a raw multiplication table (row-major, table[a * order + b] = ab).
  /// No validation is performed, so broken tables can be fed to
  /// verify_group_axioms. Inverses are the first b with ab = identity; when
  /// none exists the identity is stored.
  static Group from_table(std::vector<Element> table, std::size_t order, Element identity,
                          std::vector<std::string> labels = {});

  std::size_t order() const { return impl_->order; }
  Element identity() const { return impl_->identity; }

  Element mul(Element a, Element b) const {
    const Impl& im = *impl_;
    if (!im.table.empty()) return im.table[static_cast<std::size_t>(a) * im.order + b];
    return im.kernel->mul(a, b);
  }
  Element inv(Element a) const { return impl_->inverse[a]; }

  /// g h g^{-1}
  Element conjugate(Element g, Element h) const { return mul(mul(g, h), inv(g)); }

  std::string label(Element a) const;
  const GroupDescriptor& descriptor() const { return impl_->descriptor; }
  std::string name() const { return impl_->descriptor.to_string(); }

  /// Present iff order() <= kTableMaxOrder or the group came from from_table.
  std::optional<std::span<const Element>> table() const;

  /// Order of a single element.
  std::uint64_t element_order(Element a) const;

 private:
  struct Impl {
    std::size_t order = 0;
    Element identity = 0;
    GroupDescriptor descriptor;
    std::vector<Element> table;
    std::vector<Element> inverse;
    std::vector<std::string> labels;
    std::shared_ptr<const detail::GroupKernel> kernel;
  };
  explicit Group(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;

  friend Group build_group(const GroupDescriptor&);
};

/// Builds one of the supported families. Throws ConstructionError for
/// unsupported families, non-prime moduli and orders above kMaxGroupOrder.
Group build_group(const GroupDescriptor& descriptor);
Group build_group(std::string_view descriptor);

/// Order the descriptor would produce, without building it.
std::uint64_t descriptor_order(const GroupDescriptor& descriptor);

struct AxiomResult {
  std::string axiom;  // identity | inverses | associativity | left_bijective | right_bijective
  bool passed = true;
  bool exhaustive = true;
  std::uint64_t checked = 0;
  std::vector<Element> witness;  // offending element(s) on failure
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool all_passed() const;
};

/// Checks identity, inverses, associativity and translation bijectivity.
/// Associativity is exhaustive up to order 512 and sampled with `budget`
/// seeded triples above. Bijectivity is exhaustive up to kTableMaxOrder and
/// checked on max(8, budget / order) seeded rows above.
AxiomReport verify_group_axioms(const Group& g, std::uint64_t budget = 100'000,
                                std::uint64_t seed = 0x5eed);

/// Order of the commutator subgroup [G, G]. Uses O(|G| log |G|) products.
std::size_t commutator_subgroup_order(const Group& g);

}  // namespace qrmix
