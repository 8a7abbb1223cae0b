#include "qrmix/group.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "qrmix/error.hpp"
#include "qrmix/modular.hpp"
#include "qrmix/numeric.hpp"

namespace qrmix {

namespace {

constexpr std::uint64_t kMaxSymmetricDegree = 8;
constexpr std::uint64_t kMaxMatrixPrime = 101;

class CyclicKernel final : public detail::GroupKernel {
 public:
  explicit CyclicKernel(std::uint32_t n) : n_(n) {}
  Element mul(Element a, Element b) const override {
    const std::uint32_t s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  std::string label(Element a) const override { return std::to_string(a); }

 private:
  std::uint32_t n_;
};

// Index f * n + k stands for r^k s^f.
class DihedralKernel final : public detail::GroupKernel {
 public:
  explicit DihedralKernel(std::uint32_t n) : n_(n) {}
  Element mul(Element a, Element b) const override {
    const std::uint32_t fa = a / n_, ka = a % n_;
    const std::uint32_t fb = b / n_, kb = b % n_;
    const std::uint32_t k = fa ? (ka + n_ - kb) % n_ : (ka + kb) % n_;
    return (fa ^ fb) * n_ + k;
  }
  std::string label(Element a) const override {
    std::string s = "r^" + std::to_string(a % n_);
    if (a >= n_) s += " s";
    return s;
  }

 private:
  std::uint32_t n_;
};

// Permutations in Lehmer-code order; (ab)(i) = a(b(i)).
class SymmetricKernel final : public detail::GroupKernel {
 public:
  using Perm = std::array<std::uint8_t, kMaxSymmetricDegree>;

  explicit SymmetricKernel(std::uint32_t n) : n_(n) {
    factorial_[0] = 1;
    for (std::uint32_t i = 1; i <= kMaxSymmetricDegree; ++i) factorial_[i] = factorial_[i - 1] * i;
    perms_.resize(factorial_[n_]);
    for (std::uint32_t r = 0; r < perms_.size(); ++r) perms_[r] = unrank(r);
  }

  Element mul(Element a, Element b) const override {
    const Perm& pa = perms_[a];
    const Perm& pb = perms_[b];
    Perm c{};
    for (std::uint32_t i = 0; i < n_; ++i) c[i] = pa[pb[i]];
    return rank(c);
  }

  std::string label(Element a) const override {
    std::string s;
    for (std::uint32_t i = 0; i < n_; ++i) s += static_cast<char>('1' + perms_[a][i]);
    return s;
  }

 private:
  Element rank(const Perm& p) const {
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < n_; ++i) {
      std::uint32_t smaller = 0;
      for (std::uint32_t j = i + 1; j < n_; ++j) smaller += p[j] < p[i];
      r += smaller * factorial_[n_ - 1 - i];
    }
    return r;
  }

  Perm unrank(std::uint32_t r) const {
    std::array<std::uint8_t, kMaxSymmetricDegree> pool{};
    for (std::uint32_t i = 0; i < n_; ++i) pool[i] = static_cast<std::uint8_t>(i);
    std::uint32_t remaining = n_;
    Perm p{};
    for (std::uint32_t i = 0; i < n_; ++i) {
      const std::uint32_t f = factorial_[n_ - 1 - i];
      const std::uint32_t idx = r / f;
      r %= f;
      p[i] = pool[idx];
      std::copy(pool.begin() + idx + 1, pool.begin() + remaining, pool.begin() + idx);
      --remaining;
    }
    return p;
  }

  std::uint32_t n_;
  std::array<std::uint32_t, kMaxSymmetricDegree + 1> factorial_{};
  std::vector<Perm> perms_;
};

// SL(2, p). Matrices with c = 0 come first, index (a - 1) p + b, so the
// identity is 0; the rest follow at p(p - 1) + ((c - 1) p + a) p + d.
class Sl2Kernel final : public detail::GroupKernel {
 public:
  using Matrix = std::array<std::uint16_t, 4>;  // a, b, c, d

  explicit Sl2Kernel(std::uint32_t p) : p_(p), inverse_(p) {
    for (std::uint32_t x = 1; x < p; ++x) inverse_[x] = static_cast<std::uint16_t>(modular::inv(x, p));
    matrices_.reserve(static_cast<std::size_t>(p) * (p * p - 1));
    for (std::uint32_t a = 1; a < p; ++a) {
      for (std::uint32_t b = 0; b < p; ++b) {
        matrices_.push_back(make(a, b, 0, inverse_[a]));
      }
    }
    for (std::uint32_t c = 1; c < p; ++c) {
      for (std::uint32_t a = 0; a < p; ++a) {
        for (std::uint32_t d = 0; d < p; ++d) {
          const std::uint32_t b = (a * d + p - 1) % p * inverse_[c] % p;
          matrices_.push_back(make(a, b, c, d));
        }
      }
    }
  }

  std::size_t order() const { return matrices_.size(); }
  const Matrix& matrix(Element e) const { return matrices_[e]; }

  Element encode(const Matrix& m) const {
    if (m[2] == 0) return (m[0] - 1U) * p_ + m[1];
    return p_ * (p_ - 1) + ((m[2] - 1U) * p_ + m[0]) * p_ + m[3];
  }

  Matrix negate(const Matrix& m) const {
    Matrix n{};
    for (std::size_t i = 0; i < 4; ++i) n[i] = static_cast<std::uint16_t>((p_ - m[i]) % p_);
    return n;
  }

  Element mul(Element x, Element y) const override {
    const Matrix& u = matrices_[x];
    const Matrix& v = matrices_[y];
    const Matrix w = make((u[0] * v[0] + u[1] * v[2]) % p_, (u[0] * v[1] + u[1] * v[3]) % p_,
                          (u[2] * v[0] + u[3] * v[2]) % p_, (u[2] * v[1] + u[3] * v[3]) % p_);
    return encode(w);
  }

  std::string label(Element e) const override { return format(matrices_[e]); }

  static std::string format(const Matrix& m) {
    return "[[" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "],[" +
           std::to_string(m[2]) + "," + std::to_string(m[3]) + "]]";
  }

 private:
  static Matrix make(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
    return {static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b),
            static_cast<std::uint16_t>(c), static_cast<std::uint16_t>(d)};
  }

  std::uint32_t p_;
  std::vector<std::uint16_t> inverse_;
  std::vector<Matrix> matrices_;
};

// PSL(2, p) = SL(2, p) / {+-I}; each coset is represented by the
// lexicographically smaller of M and -M, in SL index order.
class Psl2Kernel final : public detail::GroupKernel {
 public:
  explicit Psl2Kernel(std::uint32_t p) : sl_(p), to_psl_(sl_.order()) {
    to_sl_.reserve(sl_.order() / 2);
    for (Element s = 0; s < sl_.order(); ++s) {
      const auto& m = sl_.matrix(s);
      const auto neg = sl_.negate(m);
      if (m < neg) {
        const auto idx = static_cast<Element>(to_sl_.size());
        to_sl_.push_back(s);
        to_psl_[s] = idx;
        to_psl_[sl_.encode(neg)] = idx;
      }
    }
  }

  std::size_t order() const { return to_sl_.size(); }

  Element mul(Element a, Element b) const override { return to_psl_[sl_.mul(to_sl_[a], to_sl_[b])]; }

  std::string label(Element a) const override {
    return "+-" + Sl2Kernel::format(sl_.matrix(to_sl_[a]));
  }

 private:
  Sl2Kernel sl_;
  std::vector<Element> to_psl_;
  std::vector<Element> to_sl_;
};

class ProductKernel final : public detail::GroupKernel {
 public:
  ProductKernel(Group a, Group b)
      : a_(std::move(a)), b_(std::move(b)), nb_(static_cast<Element>(b_.order())) {}

  Element mul(Element x, Element y) const override {
    return a_.mul(x / nb_, y / nb_) * nb_ + b_.mul(x % nb_, y % nb_);
  }
  std::string label(Element x) const override {
    return "(" + a_.label(x / nb_) + "," + b_.label(x % nb_) + ")";
  }

 private:
  Group a_;
  Group b_;
  Element nb_;
};

void require_matrix_prime(std::uint64_t p) {
  if (p < 3 || p > kMaxMatrixPrime || !modular::is_prime(p)) {
    throw ConstructionError("matrix groups need an odd prime p <= " +
                            std::to_string(kMaxMatrixPrime) + ", got " + std::to_string(p));
  }
}

}  // namespace

std::uint64_t descriptor_order(const GroupDescriptor& d) {
  const std::uint64_t n = d.parameter;
  switch (d.family) {
    case Family::cyclic:
      if (n < 1) throw ConstructionError("cyclic:<n> needs n >= 1");
      return n;
    case Family::dihedral:
      if (n < 1) throw ConstructionError("dihedral:<n> needs n >= 1");
      if (n > kMaxGroupOrder) return 2 * kMaxGroupOrder;
      return 2 * n;
    case Family::symmetric: {
      if (n < 1 || n > kMaxSymmetricDegree) {
        throw ConstructionError("symmetric:<n> needs 1 <= n <= " +
                                std::to_string(kMaxSymmetricDegree));
      }
      std::uint64_t f = 1;
      for (std::uint64_t i = 2; i <= n; ++i) f *= i;
      return f;
    }
    case Family::sl2:
      require_matrix_prime(n);
      return n * (n * n - 1);
    case Family::psl2:
      require_matrix_prime(n);
      return n * (n * n - 1) / 2;
    case Family::product: {
      const std::uint64_t a = descriptor_order(*d.left);
      const std::uint64_t b = descriptor_order(*d.right);
      if (a > kMaxGroupOrder || b > kMaxGroupOrder) return kMaxGroupOrder + 1;
      return a * b;
    }
  }
  throw ConstructionError("unsupported family");
}

Group build_group(std::string_view descriptor) {
  return build_group(GroupDescriptor::parse(descriptor));
}

Group build_group(const GroupDescriptor& d) {
  const std::uint64_t order = descriptor_order(d);
  if (order > kMaxGroupOrder) {
    throw ConstructionError("group " + d.to_string() + " has order " + std::to_string(order) +
                            ", above the cap of " + std::to_string(kMaxGroupOrder));
  }

  auto impl = std::make_shared<Group::Impl>();
  impl->order = order;
  impl->identity = 0;
  impl->descriptor = d;

  const auto n = static_cast<std::uint32_t>(order);
  switch (d.family) {
    case Family::cyclic:
      impl->kernel = std::make_shared<CyclicKernel>(n);
      break;
    case Family::dihedral:
      impl->kernel = std::make_shared<DihedralKernel>(static_cast<std::uint32_t>(d.parameter));
      break;
    case Family::symmetric:
      impl->kernel = std::make_shared<SymmetricKernel>(static_cast<std::uint32_t>(d.parameter));
      break;
    case Family::sl2:
      impl->kernel = std::make_shared<Sl2Kernel>(static_cast<std::uint32_t>(d.parameter));
      break;
    case Family::psl2:
      impl->kernel = std::make_shared<Psl2Kernel>(static_cast<std::uint32_t>(d.parameter));
      break;
    case Family::product:
      impl->kernel = std::make_shared<ProductKernel>(build_group(*d.left), build_group(*d.right));
      break;
  }

  const detail::GroupKernel& k = *impl->kernel;
  if (order <= kTableMaxOrder) {
    impl->table.resize(static_cast<std::size_t>(order) * order);
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) impl->table[static_cast<std::size_t>(a) * n + b] = k.mul(a, b);
    }
  }

  // Inverses from one power walk per cyclic subgroup: with powers a, ..., a^m = e,
  // the inverse of a^j is a^{m - j}.
  impl->inverse.assign(n, 0);
  std::vector<bool> known(n, false);
  known[0] = true;
  for (Element a = 1; a < n; ++a) {
    if (known[a]) continue;
    std::vector<Element> powers{a};
    while (powers.back() != 0) powers.push_back(k.mul(powers.back(), a));
    const std::size_t m = powers.size();
    for (std::size_t j = 0; j + 1 < m; ++j) {
      impl->inverse[powers[j]] = powers[m - 2 - j];
      known[powers[j]] = true;
    }
  }
  return Group(std::move(impl));
}

Group Group::from_table(std::vector<Element> table, std::size_t order, Element identity,
                        std::vector<std::string> labels) {
  if (order == 0 || table.size() != order * order) {
    throw ConstructionError("multiplication table must be order x order");
  }
  if (identity >= order) throw ConstructionError("identity index out of range");
  for (Element e : table) {
    if (e >= order) throw ConstructionError("multiplication table entry out of range");
  }
  if (!labels.empty() && labels.size() != order) {
    throw ConstructionError("label count does not match the order");
  }
  auto impl = std::make_shared<Impl>();
  impl->order = order;
  impl->identity = identity;
  impl->descriptor = GroupDescriptor::cyclic(order);
  impl->table = std::move(table);
  impl->labels = std::move(labels);
  impl->inverse.assign(order, identity);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      if (impl->table[a * order + b] == identity) {
        impl->inverse[a] = static_cast<Element>(b);
        break;
      }
    }
  }
  return Group(std::move(impl));
}

std::string Group::label(Element a) const {
  if (!impl_->labels.empty()) return impl_->labels[a];
  if (impl_->kernel) return impl_->kernel->label(a);
  return std::to_string(a);
}

std::optional<std::span<const Element>> Group::table() const {
  if (impl_->table.empty()) return std::nullopt;
  return std::span<const Element>(impl_->table);
}

std::uint64_t Group::element_order(Element a) const {
  std::uint64_t m = 1;
  Element x = a;
  while (x != identity()) {
    x = mul(x, a);
    ++m;
    if (m > order()) return 0;  // only reachable for broken tables
  }
  return m;
}

bool AxiomReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
}

namespace {

AxiomResult check_bijective(const Group& g, bool left, std::uint64_t budget, Rng& rng) {
  const std::size_t n = g.order();
  AxiomResult r;
  r.axiom = left ? "left_bijective" : "right_bijective";
  std::vector<Element> rows;
  if (n <= kTableMaxOrder) {
    rows.resize(n);
    std::iota(rows.begin(), rows.end(), Element{0});
  } else {
    r.exhaustive = false;
    const std::uint64_t count = std::min<std::uint64_t>(n, std::max<std::uint64_t>(8, budget / n));
    for (std::uint64_t i = 0; i < count; ++i) rows.push_back(static_cast<Element>(rng.below(n)));
  }
  std::vector<Element> seen_from(n);
  std::vector<bool> seen(n);
  for (Element a : rows) {
    std::fill(seen.begin(), seen.end(), false);
    for (Element b = 0; b < n; ++b) {
      const Element c = left ? g.mul(a, b) : g.mul(b, a);
      if (seen[c]) {
        r.passed = false;
        r.witness = {a, seen_from[c], b};
        return r;
      }
      seen[c] = true;
      seen_from[c] = b;
    }
    ++r.checked;
  }
  return r;
}

}  // namespace

AxiomReport verify_group_axioms(const Group& g, std::uint64_t budget, std::uint64_t seed) {
  const std::size_t n = g.order();
  const Element e = g.identity();
  Rng rng(seed);
  AxiomReport report;

  AxiomResult identity;
  identity.axiom = "identity";
  for (Element a = 0; a < n && identity.passed; ++a, ++identity.checked) {
    if (g.mul(e, a) != a || g.mul(a, e) != a) {
      identity.passed = false;
      identity.witness = {a};
    }
  }
  report.results.push_back(identity);

  AxiomResult inverses;
  inverses.axiom = "inverses";
  for (Element a = 0; a < n && inverses.passed; ++a, ++inverses.checked) {
    if (g.mul(a, g.inv(a)) != e || g.mul(g.inv(a), a) != e) {
      inverses.passed = false;
      inverses.witness = {a};
    }
  }
  report.results.push_back(inverses);

  AxiomResult assoc;
  assoc.axiom = "associativity";
  auto check_triple = [&](Element a, Element b, Element c) {
    ++assoc.checked;
    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
      assoc.passed = false;
      assoc.witness = {a, b, c};
    }
  };
  if (n <= 512) {
    for (Element a = 0; a < n && assoc.passed; ++a) {
      for (Element b = 0; b < n && assoc.passed; ++b) {
        for (Element c = 0; c < n && assoc.passed; ++c) check_triple(a, b, c);
      }
    }
  } else {
    assoc.exhaustive = false;
    for (std::uint64_t i = 0; i < budget && assoc.passed; ++i) {
      check_triple(static_cast<Element>(rng.below(n)), static_cast<Element>(rng.below(n)),
                   static_cast<Element>(rng.below(n)));
    }
  }
  report.results.push_back(assoc);

  report.results.push_back(check_bijective(g, true, budget, rng));
  report.results.push_back(check_bijective(g, false, budget, rng));
  return report;
}

namespace {

// Grows `member`/`elements` from a subgroup to the subgroup generated by it
// together with `gens`, by right multiplication.
void close_under(const Group& g, const std::vector<Element>& gens, std::vector<bool>& member,
                 std::vector<Element>& elements) {
  std::vector<Element> frontier = elements;
  while (!frontier.empty()) {
    const Element x = frontier.back();
    frontier.pop_back();
    for (Element s : gens) {
      const Element y = g.mul(x, s);
      if (!member[y]) {
        member[y] = true;
        elements.push_back(y);
        frontier.push_back(y);
      }
    }
  }
}

// Greedy generating set: each new generator lies outside the subgroup built
// so far, so at most log2 |G| elements are kept.
std::vector<Element> greedy_generators(const Group& g) {
  const std::size_t n = g.order();
  std::vector<bool> member(n, false);
  std::vector<Element> elements{g.identity()};
  member[g.identity()] = true;
  std::vector<Element> gens;
  for (Element a = 0; a < n; ++a) {
    if (member[a]) continue;
    gens.push_back(a);
    close_under(g, gens, member, elements);
  }
  return gens;
}

}  // namespace

std::size_t commutator_subgroup_order(const Group& g) {
  // The commutators [a, s] with a in G and s in a generating set form a
  // conjugation-closed set that generates [G, G].
  const std::size_t n = g.order();
  const std::vector<Element> gens = greedy_generators(g);
  std::vector<bool> member(n, false);
  std::vector<Element> elements{g.identity()};
  member[g.identity()] = true;
  std::vector<Element> commutator_gens;
  for (Element s : gens) {
    const Element sinv = g.inv(s);
    for (Element a = 0; a < n; ++a) {
      const Element c = g.mul(g.mul(a, s), g.mul(g.inv(a), sinv));
      if (member[c]) continue;
      commutator_gens.push_back(c);
      close_under(g, commutator_gens, member, elements);
    }
  }
  return elements.size();
}

}  // namespace qrmix
