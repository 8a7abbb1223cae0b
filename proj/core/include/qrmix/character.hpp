#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "qrmix/conjugacy.hpp"
#include "qrmix/group.hpp"

namespace qrmix {

/// Class-algebra structure constants: a(i, j, l) counts pairs (x, y) with
/// x in C_i, y in C_j and xy = z for a fixed z in C_l.
struct ClassConstants {
  std::size_t k = 0;
  std::vector<std::uint32_t> a;  // k^3 entries, index (i * k + j) * k + l

  std::uint32_t operator()(std::size_t i, std::size_t j, std::size_t l) const {
    return a[(i * k + j) * k + l];
  }
};

ClassConstants class_constants(const Group& g, const ConjugacyData& classes);

/// Irreducible character degrees, sorted ascending.
struct DegreeMultiset {
  std::vector<std::uint64_t> degrees;
  std::uint64_t group_order = 0;

  std::uint64_t sum_of_squares() const;
};

/// Exponent of G: lcm of element orders (one representative per class).
std::uint64_t group_exponent(const Group& g, const ConjugacyData& classes);

/// Smallest prime q = 1 (mod exponent) with q > 2 sqrt(order) and q < 2^31.
/// Throws CharacterError when none exists below 2^31.
std::uint64_t dixon_prime(std::uint64_t exponent, std::uint64_t order);

/// Degrees via Dixon's modular method: common eigenvectors of the class-sum
/// matrices over F_q are split one class matrix at a time (class order), and
/// each degree is recovered from
///   d^2 * sum_j w(C_j) w(C_j^{-1}) / |C_j| = |G|   (mod q),
/// lifted to the unique integer in (0, sqrt|G|].
DegreeMultiset character_degrees(const Group& g);
DegreeMultiset character_degrees(const Group& g, const ConjugacyData& classes);

/// Sentinel for the trivial group, which is D-quasirandom for every D.
inline constexpr std::uint64_t kUnboundedDegree = std::numeric_limits<std::uint64_t>::max();

/// Minimal nontrivial irreducible degree, i.e. the largest D for which G is
/// D-quasirandom; kUnboundedDegree for the trivial group.
std::uint64_t quasirandom_degree(const DegreeMultiset& degrees);
std::uint64_t quasirandom_degree(const Group& g);

/// Mixing constant implied by D: D^{-1/2}, or 0 for kUnboundedDegree.
double mixing_epsilon(std::uint64_t D);

}  // namespace qrmix
