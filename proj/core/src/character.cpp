#include "qrmix/character.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fq_linalg.hpp"
#include "qrmix/error.hpp"
#include "qrmix/modular.hpp"
#include "qrmix/numeric.hpp"

namespace qrmix {

namespace m = qrmix::modular;
using fq::u64;

ClassConstants class_constants(const Group& g, const ConjugacyData& classes) {
  const std::size_t k = classes.class_count();
  const std::size_t n = g.order();
  ClassConstants cc;
  cc.k = k;
  cc.a.assign(k * k * k, 0);
  for (std::size_t l = 0; l < k; ++l) {
    const Element z = classes.representatives[l];
    for (Element x = 0; x < n; ++x) {
      const Element y = g.mul(g.inv(x), z);
      ++cc.a[(classes.class_of[x] * k + classes.class_of[y]) * k + l];
    }
  }
  return cc;
}

std::uint64_t DegreeMultiset::sum_of_squares() const {
  std::uint64_t s = 0;
  for (auto d : degrees) s += d * d;
  return s;
}

std::uint64_t group_exponent(const Group& g, const ConjugacyData& classes) {
  std::uint64_t e = 1;
  for (Element r : classes.representatives) e = std::lcm(e, g.element_order(r));
  return e;
}

std::uint64_t dixon_prime(std::uint64_t exponent, std::uint64_t order) {
  constexpr u64 kLimit = u64{1} << 31;
  for (u64 q = exponent + 1; q < kLimit; q += exponent) {
    if (q * q > 4 * order && m::is_prime(q)) return q;
  }
  throw CharacterError("no prime q = 1 mod " + std::to_string(exponent) + " below 2^31");
}

namespace {

// A common eigenspace of the class matrices seen so far, as RREF rows.
struct Subspace {
  fq::Matrix basis;
  std::vector<std::size_t> pivots;
  std::size_t dim() const { return basis.rows; }
};

// Splits `w` into eigenspaces of the class matrix M_i (entries a(i, j, l)),
// acting on column vectors.
std::vector<Subspace> split(const Subspace& w, const ClassConstants& cc, std::size_t i, u64 q,
                            Rng& rng) {
  const std::size_t k = cc.k;
  const std::size_t dim = w.dim();

  // Images M_i w_l, and the restriction A with M_i w_l = sum_r A(r, l) w_r.
  fq::Matrix image(dim, k);
  for (std::size_t l = 0; l < dim; ++l) {
    for (std::size_t j = 0; j < k; ++j) {
      u64 acc = 0;
      for (std::size_t t = 0; t < k; ++t) {
        const u64 c = cc(i, j, t);
        if (c != 0 && w.basis(l, t) != 0) acc = m::add(acc, m::mul(c % q, w.basis(l, t), q), q);
      }
      image(l, j) = acc;
    }
  }
  fq::Matrix restricted(dim, dim);
  for (std::size_t l = 0; l < dim; ++l) {
    for (std::size_t r = 0; r < dim; ++r) restricted(r, l) = image(l, w.pivots[r]);
  }
  for (std::size_t l = 0; l < dim; ++l) {
    for (std::size_t j = 0; j < k; ++j) {
      u64 acc = 0;
      for (std::size_t r = 0; r < dim; ++r) acc = m::add(acc, m::mul(restricted(r, l), w.basis(r, j), q), q);
      if (acc != image(l, j)) {
        throw CharacterError("subspace is not invariant under class matrix " + std::to_string(i));
      }
    }
  }

  const auto roots = fq::distinct_roots(fq::charpoly(restricted, q), q, rng);
  if (roots.size() <= 1) return {w};

  std::vector<Subspace> parts;
  std::size_t total = 0;
  for (u64 lambda : roots) {
    fq::Matrix shifted = restricted;
    for (std::size_t r = 0; r < dim; ++r) shifted(r, r) = m::sub(shifted(r, r), lambda, q);
    const fq::Matrix coords = fq::nullspace(shifted, q);
    Subspace part;
    part.basis = fq::Matrix(coords.rows, k);
    for (std::size_t s = 0; s < coords.rows; ++s) {
      for (std::size_t l = 0; l < dim; ++l) {
        const u64 c = coords(s, l);
        if (c == 0) continue;
        for (std::size_t j = 0; j < k; ++j) {
          part.basis(s, j) = m::add(part.basis(s, j), m::mul(c, w.basis(l, j), q), q);
        }
      }
    }
    part.pivots = fq::rref(part.basis, q);
    total += part.dim();
    parts.push_back(std::move(part));
  }
  if (total != dim) {
    throw CharacterError("class matrix " + std::to_string(i) + " is not diagonalizable mod " +
                         std::to_string(q));
  }
  return parts;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

DegreeMultiset character_degrees(const Group& g) { return character_degrees(g, conjugacy_classes(g)); }

DegreeMultiset character_degrees(const Group& g, const ConjugacyData& classes) {
  const std::size_t k = classes.class_count();
  const std::uint64_t n = g.order();
  if (k > 512) {
    throw PreconditionError("character_degrees supports at most 512 classes, got " + std::to_string(k));
  }
  if (n > kMaxGroupOrder) throw PreconditionError("group order above the supported cap");

  const u64 q = dixon_prime(group_exponent(g, classes), n);
  const ClassConstants cc = class_constants(g, classes);

  std::vector<Subspace> spaces(1);
  spaces[0].basis = fq::Matrix(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    spaces[0].basis(j, j) = 1;
    spaces[0].pivots.push_back(j);
  }

  // Fixed seed: the splitting tree depends only on the class order.
  Rng rng(0x6469786f6eULL);
  for (std::size_t i = 1; i < k; ++i) {
    if (std::all_of(spaces.begin(), spaces.end(), [](const Subspace& s) { return s.dim() == 1; })) break;
    std::vector<Subspace> next;
    for (const auto& s : spaces) {
      if (s.dim() == 1) {
        next.push_back(s);
        continue;
      }
      for (auto& part : split(s, cc, i, q, rng)) next.push_back(std::move(part));
    }
    spaces = std::move(next);
  }
  for (const auto& s : spaces) {
    if (s.dim() != 1) {
      throw CharacterError("eigenspace splitting left a subspace of dimension " +
                           std::to_string(s.dim()));
    }
  }

  std::vector<std::size_t> inverse_class(k);
  for (std::size_t j = 0; j < k; ++j) {
    inverse_class[j] = classes.class_of[g.inv(classes.representatives[j])];
  }
  std::vector<u64> inv_size(k);
  for (std::size_t j = 0; j < k; ++j) inv_size[j] = m::inv(classes.class_sizes[j] % q, q);

  const std::uint64_t root_n = isqrt(n);
  DegreeMultiset result;
  result.group_order = n;
  for (const auto& s : spaces) {
    const u64 lead = s.basis(0, 0);
    if (lead == 0) throw CharacterError("central character vanishes on the identity class");
    const u64 scale = m::inv(lead, q);
    u64 norm = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const u64 wj = m::mul(s.basis(0, j), scale, q);
      const u64 wj_inv = m::mul(s.basis(0, inverse_class[j]), scale, q);
      norm = m::add(norm, m::mul(m::mul(wj, wj_inv, q), inv_size[j], q), q);
    }
    if (norm == 0) throw CharacterError("degenerate central character norm");
    const u64 d_squared = m::mul(n % q, m::inv(norm, q), q);
    std::uint64_t degree = 0;
    for (std::uint64_t d = 1; d <= root_n; ++d) {
      if (d * d % q == d_squared) {
        degree = d;
        break;
      }
    }
    if (degree == 0) throw CharacterError("could not lift a degree from F_" + std::to_string(q));
    result.degrees.push_back(degree);
  }
  std::sort(result.degrees.begin(), result.degrees.end());

  if (result.degrees.size() != k || result.sum_of_squares() != n) {
    throw CharacterError("degree multiset fails sum-of-squares check for " + g.name());
  }
  return result;
}

std::uint64_t quasirandom_degree(const DegreeMultiset& degrees) {
  if (degrees.degrees.size() <= 1) return kUnboundedDegree;
  // degrees[0] is the trivial character.
  return degrees.degrees[1];
}

std::uint64_t quasirandom_degree(const Group& g) { return quasirandom_degree(character_degrees(g)); }

double mixing_epsilon(std::uint64_t D) {
  if (D == kUnboundedDegree) return 0.0;
  return 1.0 / std::sqrt(static_cast<double>(D));
}

}  // namespace qrmix
