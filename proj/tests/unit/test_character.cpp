#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qrmix/character.hpp"
#include "qrmix/conjugacy.hpp"
#include "qrmix/error.hpp"
#include "qrmix/group.hpp"
#include "qrmix/verify.hpp"

namespace qrmix {
namespace {

std::vector<std::uint64_t> degrees_of(const char* text) { return character_degrees(build_group(text)).degrees; }

TEST(Conjugacy, AbelianGroupsHaveSingletonClasses) {
  const ConjugacyData c = conjugacy_classes(build_group("cyclic:6"));
  EXPECT_EQ(c.class_count(), 6u);
  for (auto s : c.class_sizes) EXPECT_EQ(s, 1u);
}

TEST(Conjugacy, Symmetric3) {
  const ConjugacyData c = conjugacy_classes(build_group("symmetric:3"));
  EXPECT_EQ(c.class_sizes, (std::vector<std::size_t>{1, 2, 3}));
}

TEST(Conjugacy, ClassCounts) {
  EXPECT_EQ(conjugacy_classes(build_group("sl2:5")).class_count(), 9u);
  EXPECT_EQ(conjugacy_classes(build_group("symmetric:5")).class_count(), 7u);
  EXPECT_EQ(conjugacy_classes(build_group("psl2:7")).class_count(), 6u);
  EXPECT_EQ(conjugacy_classes(build_group("dihedral:5")).class_count(), 4u);
}

TEST(Conjugacy, InvariantsHold) {
  for (const char* text : {"symmetric:4", "sl2:5", "dihedral:6", "product:symmetric:3,cyclic:2"}) {
    const Group g = build_group(text);
    const ConjugacyData c = conjugacy_classes(g);
    std::size_t total = 0;
    for (auto s : c.class_sizes) total += s;
    EXPECT_EQ(total, g.order());
    EXPECT_EQ(c.class_of[g.identity()], 0u);
    EXPECT_EQ(c.class_sizes[0], 1u);
    for (std::size_t i = 0; i + 1 < c.class_count(); ++i) {
      const bool ordered = c.class_sizes[i] < c.class_sizes[i + 1] ||
                           (c.class_sizes[i] == c.class_sizes[i + 1] && c.representatives[i] < c.representatives[i + 1]);
      EXPECT_TRUE(ordered) << text;
    }
    for (Element h = 0; h < g.order(); ++h) {
      for (Element x = 0; x < g.order(); ++x) {
        ASSERT_EQ(c.class_of[g.conjugate(h, x)], c.class_of[x]);
      }
    }
    for (std::size_t i = 0; i < c.class_count(); ++i) {
      EXPECT_EQ(c.representatives[i], *std::min_element(c.members[i].begin(), c.members[i].end()));
    }
  }
}

TEST(Conjugacy, ProductClassCountMultiplies) {
  const auto a = conjugacy_classes(build_group("symmetric:4")).class_count();
  const auto b = conjugacy_classes(build_group("dihedral:5")).class_count();
  EXPECT_EQ(conjugacy_classes(build_group("product:symmetric:4,dihedral:5")).class_count(), a * b);
}

TEST(ClassConstants, CyclicIsTheGroupAlgebra) {
  const Group g = build_group("cyclic:7");
  const ConjugacyData c = conjugacy_classes(g);
  const ClassConstants cc = class_constants(g, c);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j)
      for (std::size_t l = 0; l < 7; ++l) {
        const Element xi = c.representatives[i], xj = c.representatives[j], xl = c.representatives[l];
        EXPECT_EQ(cc(i, j, l), g.mul(xi, xj) == xl ? 1u : 0u);
      }
}

TEST(ClassConstants, CountingIdentity) {
  for (const char* text : {"symmetric:3", "symmetric:4", "psl2:5"}) {
    const Group g = build_group(text);
    const ConjugacyData c = conjugacy_classes(g);
    const ClassConstants cc = class_constants(g, c);
    for (std::size_t i = 0; i < cc.k; ++i)
      for (std::size_t j = 0; j < cc.k; ++j) {
        std::uint64_t s = 0;
        for (std::size_t l = 0; l < cc.k; ++l) s += std::uint64_t{cc(i, j, l)} * c.class_sizes[l];
        EXPECT_EQ(s, c.class_sizes[i] * c.class_sizes[j]) << text;
      }
  }
}

TEST(ClassConstants, MatchesBruteForceOnSl2Five) {
  const Group g = build_group("sl2:5");
  const ConjugacyData c = conjugacy_classes(g);
  const ClassConstants cc = class_constants(g, c);
  const std::size_t k = c.class_count();
  // Count (x, y) with xy = z for every z, then check independence of the
  // representative z inside each class.
  std::vector<std::uint32_t> by_target(k * k * g.order(), 0);
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y) {
      ++by_target[(c.class_of[x] * k + c.class_of[y]) * g.order() + g.mul(x, y)];
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (Element z = 0; z < g.order(); ++z) {
        ASSERT_EQ(by_target[(i * k + j) * g.order() + z], cc(i, j, c.class_of[z]));
      }
}

TEST(CharacterDegrees, SmallExamples) {
  EXPECT_EQ(degrees_of("cyclic:9"), std::vector<std::uint64_t>(9, 1));
  EXPECT_EQ(degrees_of("symmetric:3"), (std::vector<std::uint64_t>{1, 1, 2}));
  EXPECT_EQ(degrees_of("symmetric:4"), (std::vector<std::uint64_t>{1, 1, 2, 3, 3}));
  EXPECT_EQ(degrees_of("symmetric:5"), (std::vector<std::uint64_t>{1, 1, 4, 4, 5, 5, 6}));
  EXPECT_EQ(degrees_of("psl2:5"), (std::vector<std::uint64_t>{1, 3, 3, 4, 5}));
  EXPECT_EQ(degrees_of("psl2:7"), (std::vector<std::uint64_t>{1, 3, 3, 6, 7, 8}));
  EXPECT_EQ(degrees_of("dihedral:5"), (std::vector<std::uint64_t>{1, 1, 2, 2}));
}

TEST(CharacterDegrees, Sl2Five) {
  const DegreeMultiset d = character_degrees(build_group("sl2:5"));
  EXPECT_EQ(d.degrees.size(), 9u);
  EXPECT_EQ(d.sum_of_squares(), 120u);
  EXPECT_EQ(quasirandom_degree(d), 2u);
}

TEST(CharacterDegrees, InvariantsAcrossFamilies) {
  for (const char* text : {"dihedral:12", "symmetric:6", "sl2:11", "psl2:13", "product:symmetric:3,psl2:5"}) {
    const Group g = build_group(text);
    const ConjugacyData c = conjugacy_classes(g);
    const DegreeMultiset d = character_degrees(g, c);
    EXPECT_EQ(d.sum_of_squares(), g.order()) << text;
    EXPECT_EQ(d.degrees.size(), c.class_count()) << text;
    EXPECT_EQ(d.degrees.front(), 1u);
    EXPECT_TRUE(std::is_sorted(d.degrees.begin(), d.degrees.end()));
    for (auto x : d.degrees) EXPECT_EQ(g.order() % x, 0u) << text;
  }
}

TEST(CharacterDegrees, Deterministic) {
  const Group g = build_group("sl2:13");
  EXPECT_EQ(character_degrees(g).degrees, character_degrees(g).degrees);
}

TEST(CharacterDegrees, AgreesWithNumericOracle) {
  for (const char* text : {"symmetric:5", "dihedral:8", "sl2:7", "psl2:11", "product:cyclic:3,symmetric:4"}) {
    const Group g = build_group(text);
    EXPECT_EQ(character_degrees(g).degrees, numeric_character_degrees(g)) << text;
  }
}

TEST(CharacterDegrees, ProductDegreesArePairwiseProducts) {
  const auto a = degrees_of("symmetric:3");
  const auto b = degrees_of("psl2:5");
  std::vector<std::uint64_t> expected;
  for (auto x : a)
    for (auto y : b) expected.push_back(x * y);
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(degrees_of("product:symmetric:3,psl2:5"), expected);
  EXPECT_EQ(quasirandom_degree(build_group("product:psl2:5,psl2:7")), 3u);
  EXPECT_EQ(quasirandom_degree(build_group("product:sl2:5,psl2:7")), 2u);
}

TEST(QuasirandomDegree, Examples) {
  EXPECT_EQ(quasirandom_degree(build_group("cyclic:2")), 1u);
  EXPECT_EQ(quasirandom_degree(build_group("cyclic:17")), 1u);
  EXPECT_EQ(quasirandom_degree(build_group("symmetric:2")), 1u);
  EXPECT_EQ(quasirandom_degree(build_group("symmetric:6")), 1u);
  EXPECT_EQ(quasirandom_degree(build_group("sl2:5")), 2u);
  EXPECT_EQ(quasirandom_degree(build_group("psl2:5")), 3u);
  EXPECT_EQ(quasirandom_degree(build_group("sl2:13")), 6u);
  EXPECT_EQ(quasirandom_degree(build_group("cyclic:1")), kUnboundedDegree);
  EXPECT_EQ(quasirandom_degree(build_group("symmetric:1")), kUnboundedDegree);
}

TEST(QuasirandomDegree, Sl2ThirtySeven) {
  EXPECT_EQ(quasirandom_degree(build_group("sl2:37")), 18u);
}

TEST(QuasirandomDegree, PerfectIffDegreeAtLeastTwo) {
  for (const char* text : {"cyclic:5", "symmetric:4", "dihedral:7", "sl2:3", "sl2:5", "psl2:7", "sl2:7",
                           "product:psl2:5,cyclic:2", "product:psl2:5,psl2:7"}) {
    const Group g = build_group(text);
    const bool perfect = commutator_subgroup_order(g) == g.order();
    EXPECT_EQ(quasirandom_degree(g) >= 2, perfect) << text;
  }
}

TEST(MixingEpsilon, Values) {
  EXPECT_DOUBLE_EQ(mixing_epsilon(1), 1.0);
  EXPECT_DOUBLE_EQ(mixing_epsilon(4), 0.5);
  EXPECT_DOUBLE_EQ(mixing_epsilon(kUnboundedDegree), 0.0);
}

TEST(DixonPrime, Requirements) {
  for (auto [e, n] : {std::pair<std::uint64_t, std::uint64_t>{6, 6}, {60, 120}, {84, 336}, {30, 50616}}) {
    const std::uint64_t q = dixon_prime(e, n);
    EXPECT_EQ(q % e, 1u);
    EXPECT_GT(static_cast<double>(q), 2.0 * std::sqrt(static_cast<double>(n)));
    for (std::uint64_t d = 2; d * d <= q; ++d) ASSERT_NE(q % d, 0u);
  }
}

TEST(CharacterDegrees, TooManyClassesIsRejected) {
  EXPECT_THROW(character_degrees(build_group("cyclic:600")), PreconditionError);
}

}  // namespace
}  // namespace qrmix
