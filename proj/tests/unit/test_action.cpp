#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qrmix/action.hpp"
#include "qrmix/error.hpp"
#include "qrmix/group.hpp"

namespace qrmix {
namespace {

constexpr double kTol = 1e-10;

double sup_distance(const Observable& a, const Observable& b) {
  double d = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) d = std::max(d, std::abs(a[x] - b[x]));
  return d;
}

Observable character(const SpacePtr& space, std::size_t n, std::size_t k) {
  std::vector<Complex> v(n);
  for (std::size_t x = 0; x < n; ++x) {
    v[x] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k * x) / static_cast<double>(n));
  }
  return Observable(space, std::move(v));
}

TEST(ProbabilitySpace, Validation) {
  EXPECT_THROW(ProbabilitySpace::uniform(0), PreconditionError);
  EXPECT_THROW(ProbabilitySpace::weighted({0.5, 0.6}), PreconditionError);
  EXPECT_THROW(ProbabilitySpace::weighted({1.5, -0.5}), PreconditionError);
  EXPECT_NO_THROW(ProbabilitySpace::weighted({0.25, 0.75}));
  EXPECT_TRUE(ProbabilitySpace::uniform(4)->is_uniform());
}

TEST(Observable, NormsAndArithmetic) {
  const SpacePtr s = ProbabilitySpace::uniform(4);
  const Observable f(s, {1.0, Complex(0, 1), -1.0, 0.0});
  EXPECT_NEAR(f.l2_norm(), std::sqrt(0.75), 1e-15);
  EXPECT_DOUBLE_EQ(f.linf_norm(), 1.0);
  EXPECT_NEAR(std::abs(f.mean() - Complex(0, 0.25)), 0.0, 1e-15);
  const Observable g = f * f - Complex(2.0) * f + conj(f);
  EXPECT_NEAR(std::abs(g[1] - (Complex(-1, 0) - Complex(0, 2) + Complex(0, -1))), 0.0, 1e-15);
  EXPECT_THROW(Observable(s, {1.0, 2.0}), DimensionError);
  EXPECT_THROW(f + Observable::constant(ProbabilitySpace::uniform(3), 1.0), DimensionError);
}

TEST(Inner, Conventions) {
  const SpacePtr s = ProbabilitySpace::uniform(8);
  const Observable f = random_observable(s, 11);
  const Observable h = random_observable(s, 12);
  EXPECT_NEAR(std::abs(inner(f, f) - f.l2_norm() * f.l2_norm()), 0.0, 1e-14);
  EXPECT_GE(inner(f, f).real(), 0.0);
  EXPECT_NEAR(std::abs(inner(f, Observable::constant(s, 1.0)) - f.mean()), 0.0, 1e-14);
  // Conjugate-linear in the second slot.
  const Complex c(0.3, -0.7);
  EXPECT_NEAR(std::abs(inner(f, c * h) - std::conj(c) * inner(f, h)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(inner(c * f, h) - c * inner(f, h)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(bilinear(f, h) - bilinear(h, f)), 0.0, 1e-14);
}

TEST(Inner, CyclicCharactersAreOrthonormal) {
  const std::size_t n = 12;
  const SpacePtr s = ProbabilitySpace::uniform(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex ip = inner(character(s, n, i), character(s, n, j));
      EXPECT_NEAR(std::abs(ip - Complex(i == j ? 1.0 : 0.0)), 0.0, 1e-12);
    }
}

TEST(Inner, WeightedSpace) {
  const SpacePtr s = ProbabilitySpace::weighted({0.5, 0.25, 0.25});
  const Observable f(s, {2.0, 4.0, 0.0});
  EXPECT_NEAR(f.mean().real(), 2.0, 1e-15);
  EXPECT_NEAR(inner(f, f).real(), 0.5 * 4 + 0.25 * 16, 1e-15);
}

TEST(Action, BuiltinFormulas) {
  const Group c6 = build_group("cyclic:6");
  EXPECT_EQ(ActionTable::build(c6, ActionKind::left).act(2, 3), 5u);
  const ActionTable conj = ActionTable::build(c6, ActionKind::conjugation);
  for (Element g = 0; g < 6; ++g)
    for (Element x = 0; x < 6; ++x) EXPECT_EQ(conj.act(g, x), x);

  const Group s4 = build_group("symmetric:4");
  const ActionTable right = ActionTable::build(s4, ActionKind::right);
  const ActionTable left = ActionTable::build(s4, ActionKind::left);
  const ActionTable cj = ActionTable::build(s4, ActionKind::conjugation);
  for (Element g = 0; g < s4.order(); ++g)
    for (Element x = 0; x < s4.order(); ++x) {
      EXPECT_EQ(right.act(g, x), s4.mul(x, s4.inv(g)));
      EXPECT_EQ(left.act(g, x), s4.mul(g, x));
      EXPECT_EQ(cj.act(g, x), s4.mul(s4.mul(g, x), s4.inv(g)));
    }
}

TEST(Action, BuiltinsValidate) {
  for (const char* text : {"symmetric:4", "dihedral:5", "psl2:5"}) {
    const Group g = build_group(text);
    for (ActionKind k : {ActionKind::left, ActionKind::right, ActionKind::conjugation}) {
      EXPECT_TRUE(validate_action(ActionTable::build(g, k)).ok()) << text;
    }
  }
}

TEST(Action, CustomTableValidation) {
  const Group c2 = build_group("cyclic:2");
  const SpacePtr s = ProbabilitySpace::uniform(3);
  // Swap points 0 and 1, fix 2: a valid action.
  EXPECT_NO_THROW(ActionTable::custom(c2, s, {0, 1, 2, 1, 0, 2}));
  // Identity does not act trivially.
  EXPECT_THROW(ActionTable::custom(c2, s, {1, 0, 2, 1, 0, 2}), ConstructionError);
  // Not a bijection.
  EXPECT_THROW(ActionTable::custom(c2, s, {0, 1, 2, 0, 0, 2}), ConstructionError);
  // Does not preserve non-uniform weights.
  const SpacePtr w = ProbabilitySpace::weighted({0.5, 0.25, 0.25});
  EXPECT_THROW(ActionTable::custom(c2, w, {0, 1, 2, 1, 0, 2}), ConstructionError);
  EXPECT_NO_THROW(ActionTable::custom(c2, w, {0, 1, 2, 0, 2, 1}));
  // Incompatible with the group law: c3 generator acting as a transposition.
  const Group c3 = build_group("cyclic:3");
  EXPECT_THROW(ActionTable::custom(c3, ProbabilitySpace::uniform(2), {0, 1, 1, 0, 1, 0}), ConstructionError);
  EXPECT_THROW(ActionTable::custom(c2, s, {0, 1}), ConstructionError);
}

TEST(Action, ParseKind) {
  EXPECT_EQ(parse_action_kind("left"), ActionKind::left);
  EXPECT_EQ(parse_action_kind("right"), ActionKind::right);
  EXPECT_EQ(parse_action_kind("conjugation"), ActionKind::conjugation);
  EXPECT_THROW(parse_action_kind("diagonal"), ConfigError);
}

TEST(Koopman, Examples) {
  const Group g = build_group("cyclic:5");
  const ActionTable left = ActionTable::build(g, ActionKind::left);
  const Observable f = random_observable(left.space(), 5);
  EXPECT_EQ(sup_distance(koopman_apply(left, g.identity(), f), f), 0.0);
  const Observable moved = koopman_apply(left, 1, Observable::indicator(left.space(), 0));
  EXPECT_EQ(sup_distance(moved, Observable::indicator(left.space(), 1)), 0.0);

  const Group s4 = build_group("symmetric:4");
  const ConjugacyData classes = conjugacy_classes(s4);
  const ActionTable cj = ActionTable::build(s4, ActionKind::conjugation, classes);
  std::vector<Complex> cf(s4.order());
  for (Element x = 0; x < s4.order(); ++x) cf[x] = Complex(classes.class_of[x] * 0.3, -0.1);
  const Observable class_function(cj.space(), cf);
  for (Element h = 0; h < s4.order(); ++h) EXPECT_EQ(sup_distance(koopman_apply(cj, h, class_function), class_function), 0.0);
}

TEST(Koopman, Unitarity) {
  const Group g = build_group("sl2:5");
  for (ActionKind k : {ActionKind::left, ActionKind::right, ActionKind::conjugation}) {
    const ActionTable a = ActionTable::build(g, k);
    const Observable f1 = random_observable(a.space(), 1);
    const Observable f2 = random_observable(a.space(), 2);
    for (Element h = 0; h < g.order(); h += 7) {
      const Observable g1 = koopman_apply(a, h, f1);
      EXPECT_NEAR(std::abs(inner(g1, koopman_apply(a, h, f2)) - inner(f1, f2)), 0.0, 1e-14);
      EXPECT_NEAR(g1.l2_norm(), f1.l2_norm(), 1e-14);
    }
  }
}

TEST(Koopman, Composition) {
  const Group g = build_group("symmetric:4");
  const ActionTable a = ActionTable::build(g, ActionKind::right);
  const Observable f = random_observable(a.space(), 3);
  for (Element x = 0; x < g.order(); x += 5)
    for (Element y = 0; y < g.order(); y += 3) {
      EXPECT_EQ(sup_distance(koopman_apply(a, g.mul(x, y), f), koopman_apply(a, x, koopman_apply(a, y, f))), 0.0);
    }
}

TEST(Projection, TranslationGivesTheMean) {
  const Group g = build_group("dihedral:7");
  for (ActionKind k : {ActionKind::left, ActionKind::right}) {
    const ActionTable a = ActionTable::build(g, k);
    const Observable f = random_observable(a.space(), 9);
    EXPECT_LE(sup_distance(invariant_projection(a, f), Observable::constant(a.space(), f.mean())), kTol);
  }
}

TEST(Projection, ConjugationGivesClassAverages) {
  const Group g = build_group("symmetric:4");
  const ConjugacyData classes = conjugacy_classes(g);
  const ActionTable a = ActionTable::build(g, ActionKind::conjugation, classes);
  const Observable f = random_observable(a.space(), 4);
  const Observable p = invariant_projection(a, f);
  for (std::size_t c = 0; c < classes.class_count(); ++c) {
    Complex mean = 0.0;
    for (Element x : classes.members[c]) mean += f[x];
    mean /= static_cast<double>(classes.class_sizes[c]);
    for (Element x : classes.members[c]) EXPECT_NEAR(std::abs(p[x] - mean), 0.0, kTol);
  }
}

TEST(Projection, Properties) {
  for (const char* text : {"symmetric:4", "psl2:5", "product:cyclic:3,dihedral:4"}) {
    const Group g = build_group(text);
    for (ActionKind k : {ActionKind::left, ActionKind::right, ActionKind::conjugation}) {
      const ActionTable a = ActionTable::build(g, k);
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Observable f = random_observable(a.space(), seed);
        const Observable h = random_observable(a.space(), seed + 100);
        const Observable pf = invariant_projection(a, f);
        const Observable ph = invariant_projection(a, h);
        EXPECT_LE(sup_distance(invariant_projection(a, pf), pf), kTol);
        EXPECT_LE(std::abs(inner(pf, h) - inner(f, ph)), kTol);
        for (Element x = 0; x < g.order(); ++x) ASSERT_LE(sup_distance(koopman_apply(a, x, pf), pf), kTol);
        // f - Pf is orthogonal to every invariant function.
        EXPECT_LE(std::abs(inner(f - pf, ph)), kTol);
        EXPECT_LE(sup_distance(pf, orbit_projection(a, f)), kTol);
        // An invariant function is fixed.
        EXPECT_LE(sup_distance(invariant_projection(a, ph), ph), kTol);
      }
    }
  }
}

TEST(Projection, CustomActionOnWeightedSpace) {
  const Group c2 = build_group("cyclic:2");
  const SpacePtr w = ProbabilitySpace::weighted({0.5, 0.25, 0.25});
  const ActionTable a = ActionTable::custom(c2, w, {0, 1, 2, 0, 2, 1});
  const Observable f(w, {1.0, 2.0, 4.0});
  const Observable p = invariant_projection(a, f);
  EXPECT_NEAR(p[0].real(), 1.0, kTol);
  EXPECT_NEAR(p[1].real(), 3.0, kTol);
  EXPECT_NEAR(p[2].real(), 3.0, kTol);
  EXPECT_LE(sup_distance(p, orbit_projection(a, f)), kTol);
}

TEST(RandomObservable, Contract) {
  const SpacePtr s = ProbabilitySpace::uniform(257);
  const Observable a = random_observable(s, 42);
  const Observable b = random_observable(s, 42);
  EXPECT_EQ(sup_distance(a, b), 0.0);
  EXPECT_LE(a.linf_norm(), 1.0);
  EXPECT_GT(sup_distance(a, random_observable(s, 43)), 0.0);
  EXPECT_NEAR(random_observable(s, 7, NormMode::l2_unit).l2_norm(), 1.0, 1e-12);
  const Observable r = random_real_observable(s, 8);
  for (std::size_t x = 0; x < r.size(); ++x) EXPECT_EQ(r[x].imag(), 0.0);
  EXPECT_LE(r.linf_norm(), 1.0);
}

}  // namespace
}  // namespace qrmix
