#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "qrmix/descriptor.hpp"
#include "qrmix/error.hpp"
#include "qrmix/group.hpp"

namespace qrmix {
namespace {

bool passed(const AxiomReport& r, const std::string& axiom) {
  for (const auto& a : r.results) {
    if (a.axiom == axiom) return a.passed;
  }
  ADD_FAILURE() << "no axiom " << axiom;
  return false;
}

TEST(Descriptor, ParsesEveryFamily) {
  EXPECT_EQ(GroupDescriptor::parse("cyclic:6").family, Family::cyclic);
  EXPECT_EQ(GroupDescriptor::parse("dihedral:5").parameter, 5u);
  EXPECT_EQ(GroupDescriptor::parse("symmetric:4").family, Family::symmetric);
  EXPECT_EQ(GroupDescriptor::parse("sl2:13").family, Family::sl2);
  EXPECT_EQ(GroupDescriptor::parse("psl2:7").family, Family::psl2);
  const auto p = GroupDescriptor::parse("product:cyclic:2,cyclic:3");
  ASSERT_EQ(p.family, Family::product);
  EXPECT_EQ(p.left->parameter, 2u);
  EXPECT_EQ(p.right->parameter, 3u);
}

TEST(Descriptor, NestedProductsRoundTrip) {
  for (const char* text : {"product:product:cyclic:2,cyclic:2,cyclic:3", "product:cyclic:2,product:sl2:5,cyclic:3",
                           "symmetric:5", "psl2:11"}) {
    EXPECT_EQ(GroupDescriptor::parse(text).to_string(), text);
  }
}

TEST(Descriptor, RejectsMalformedText) {
  for (const char* text : {"", "cyclic", "cyclic:", "cyclic:x", "torus:3", "product:cyclic:2", "cyclic:3,",
                           "product:cyclic:2,cyclic:3,cyclic:4", "cyclic:-1"}) {
    EXPECT_THROW(GroupDescriptor::parse(text), ConstructionError) << text;
  }
}

TEST(BuildGroup, TrivialGroup) {
  const Group g = build_group("cyclic:1");
  EXPECT_EQ(g.order(), 1u);
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_EQ(g.mul(0, 0), 0u);
  EXPECT_TRUE(verify_group_axioms(g).all_passed());
}

TEST(BuildGroup, Orders) {
  EXPECT_EQ(build_group("cyclic:12").order(), 12u);
  EXPECT_EQ(build_group("dihedral:6").order(), 12u);
  EXPECT_EQ(build_group("symmetric:4").order(), 24u);
  EXPECT_EQ(build_group("symmetric:8").order(), 40320u);
  for (std::uint64_t p : {3u, 5u, 7u, 13u}) {
    EXPECT_EQ(build_group(GroupDescriptor::sl2(p)).order(), p * (p * p - 1)) << p;
  }
  EXPECT_EQ(build_group("product:sl2:5,cyclic:3").order(), 360u);
}

TEST(BuildGroup, Sl2FiveByEnumeration) {
  std::size_t count = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c)
        for (int d = 0; d < 5; ++d) count += ((a * d - b * c) % 5 + 5) % 5 == 1;
  EXPECT_EQ(build_group("sl2:5").order(), count);
  EXPECT_EQ(count, 120u);
}

TEST(BuildGroup, PslHasHalfTheOrder) {
  for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u, 37u}) {
    EXPECT_EQ(build_group(GroupDescriptor::psl2(p)).order() * 2, build_group(GroupDescriptor::sl2(p)).order());
  }
}

TEST(BuildGroup, AllConstructorsSatisfyAxioms) {
  for (const char* text : {"cyclic:1", "cyclic:7", "dihedral:1", "dihedral:2", "dihedral:9", "symmetric:1",
                           "symmetric:5", "sl2:3", "sl2:7", "psl2:5", "psl2:7", "product:cyclic:2,cyclic:2",
                           "product:symmetric:3,dihedral:4"}) {
    const auto report = verify_group_axioms(build_group(text));
    EXPECT_TRUE(report.all_passed()) << text;
    for (const auto& a : report.results) EXPECT_TRUE(a.exhaustive) << text << " " << a.axiom;
  }
}

TEST(BuildGroup, LargeKernelGroupsSatisfyAxioms) {
  for (const char* text : {"sl2:37", "psl2:41", "symmetric:7", "product:sl2:13,cyclic:5"}) {
    const Group g = build_group(text);
    EXPECT_FALSE(g.table().has_value()) << text;
    EXPECT_TRUE(verify_group_axioms(g, 20000).all_passed()) << text;
  }
}

TEST(BuildGroup, KleinFourGroup) {
  const Group g = build_group("product:cyclic:2,cyclic:2");
  EXPECT_EQ(g.order(), 4u);
  EXPECT_TRUE(verify_group_axioms(g).all_passed());
  for (Element a = 0; a < 4; ++a) EXPECT_EQ(g.mul(a, a), g.identity());
}

TEST(BuildGroup, ProductIsComponentwise) {
  const Group a = build_group("symmetric:3");
  const Group b = build_group("cyclic:4");
  const Group p = build_group("product:symmetric:3,cyclic:4");
  for (Element x = 0; x < p.order(); ++x) {
    for (Element y = 0; y < p.order(); ++y) {
      const Element expected = a.mul(x / 4, y / 4) * 4 + b.mul(x % 4, y % 4);
      ASSERT_EQ(p.mul(x, y), expected);
    }
  }
}

TEST(BuildGroup, CanonicalLabels) {
  const Group c = build_group("cyclic:6");
  EXPECT_EQ(c.label(5), "5");
  EXPECT_EQ(c.mul(2, 3), 5u);

  const Group s = build_group("symmetric:3");
  EXPECT_EQ(s.label(s.identity()), "123");
  std::set<std::string> perms;
  for (Element x = 0; x < s.order(); ++x) perms.insert(s.label(x));
  EXPECT_EQ(perms.size(), 6u);
  EXPECT_TRUE(perms.contains("321"));

  const Group m = build_group("sl2:5");
  EXPECT_EQ(m.label(m.identity()), "[[1,0],[0,1]]");

  const Group q = build_group("psl2:5");
  std::set<std::string> labels;
  for (Element x = 0; x < q.order(); ++x) labels.insert(q.label(x));
  EXPECT_EQ(labels.size(), 60u);
  EXPECT_EQ(q.label(q.identity()), "+-[[1,0],[0,1]]");
}

TEST(BuildGroup, PslIdentifiesNegatives) {
  // -I is central in SL(2,p) and becomes the identity in PSL(2,p).
  const Group q = build_group("psl2:7");
  for (Element x = 0; x < q.order(); ++x) ASSERT_NE(q.label(x), "+-[[6,0],[0,6]]");
}

TEST(BuildGroup, RejectsUnsupportedParameters) {
  for (const char* text : {"cyclic:0", "dihedral:0", "symmetric:0", "symmetric:9", "sl2:2", "sl2:9", "sl2:103",
                           "psl2:15", "cyclic:2000001", "product:sl2:101,sl2:101"}) {
    EXPECT_THROW(build_group(text), ConstructionError) << text;
  }
}

TEST(BuildGroup, DescriptorOrderMatchesBuild) {
  for (const char* text : {"dihedral:7", "psl2:13", "product:cyclic:3,symmetric:4"}) {
    EXPECT_EQ(descriptor_order(GroupDescriptor::parse(text)), build_group(text).order());
  }
}

TEST(Axioms, CorruptedEntryIsCaught) {
  const Group good = build_group("symmetric:3");
  std::vector<Element> table(good.table()->begin(), good.table()->end());
  // Overwrite one product with another row's value: row 1 loses bijectivity.
  const std::size_t n = good.order();
  table[1 * n + 2] = table[1 * n + 3];
  const Group bad = Group::from_table(table, n, good.identity());
  const AxiomReport report = verify_group_axioms(bad);
  EXPECT_FALSE(report.all_passed());
  EXPECT_FALSE(passed(report, "associativity") && passed(report, "left_bijective"));
  for (const auto& a : report.results) {
    if (!a.passed) EXPECT_FALSE(a.witness.empty()) << a.axiom;
  }
}

TEST(Axioms, NonAssociativeTableIsCaught) {
  // a*b = a - b mod 3 has identity issues and fails associativity.
  std::vector<Element> table(9);
  for (Element a = 0; a < 3; ++a)
    for (Element b = 0; b < 3; ++b) table[a * 3 + b] = (a + 3 - b) % 3;
  const AxiomReport report = verify_group_axioms(Group::from_table(table, 3, 0));
  EXPECT_FALSE(passed(report, "associativity"));
  EXPECT_FALSE(passed(report, "identity"));
}

TEST(Group, ElementOrdersAndInverses) {
  const Group g = build_group("dihedral:5");
  std::uint64_t max_order = 0;
  for (Element x = 0; x < g.order(); ++x) {
    EXPECT_EQ(g.mul(x, g.inv(x)), g.identity());
    max_order = std::max(max_order, g.element_order(x));
  }
  EXPECT_EQ(max_order, 5u);
  EXPECT_EQ(g.element_order(g.identity()), 1u);
}

TEST(Group, CommutatorSubgroup) {
  EXPECT_EQ(commutator_subgroup_order(build_group("cyclic:10")), 1u);
  EXPECT_EQ(commutator_subgroup_order(build_group("symmetric:4")), 12u);
  EXPECT_EQ(commutator_subgroup_order(build_group("psl2:5")), 60u);
  EXPECT_EQ(commutator_subgroup_order(build_group("sl2:5")), 120u);
}

}  // namespace
}  // namespace qrmix
