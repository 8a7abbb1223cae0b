#include "qrmix/mixing.hpp"

#include <cmath>
#include <string>

#include "qrmix/character.hpp"
#include "qrmix/error.hpp"

namespace qrmix {

std::string_view eval_mode_name(EvalMode mode) {
  return mode == EvalMode::exact ? "exact" : "monte_carlo";
}

namespace {

void require_on_space(const ActionTable& a, const Observable& f) {
  if (!same_space(*a.space(), *f.space())) {
    throw DimensionError("observable does not live on the action's space");
  }
}

// |<f1, g.f2> - reference| for a single g.
class MixingIntegrand {
 public:
  MixingIntegrand(const ActionTable& a, const Observable& f1, const Observable& f2)
      : a_(a), f1_(f1), f2_(f2) {
    require_on_space(a, f1);
    require_on_space(a, f2);
    reference_ = inner(orbit_projection(a, f1), orbit_projection(a, f2));
  }

  double operator()(Element g) const {
    const Element ginv = a_.group().inv(g);
    const ProbabilitySpace& s = *a_.space();
    ComplexCompensatedSum acc;
    for (std::uint32_t x = 0; x < f1_.size(); ++x) {
      acc.add(f1_[x] * std::conj(f2_[a_.act(ginv, x)]) * s.weight(x));
    }
    return std::abs(acc.value() - reference_);
  }

 private:
  const ActionTable& a_;
  const Observable& f1_;
  const Observable& f2_;
  Complex reference_;
};

}  // namespace

double mixing_error(const ActionTable& a, const Observable& f1, const Observable& f2) {
  const MixingIntegrand integrand(a, f1, f2);
  const auto terms = parallel_terms<double>(a.group().order(),
                                            [&](std::size_t g) { return integrand(static_cast<Element>(g)); });
  return compensated_mean(terms);
}

MonteCarloEstimate monte_carlo_mixing_error(const ActionTable& a, const Observable& f1,
                                            const Observable& f2, std::size_t samples,
                                            std::uint64_t seed) {
  if (samples < 30) throw PreconditionError("Monte Carlo estimation needs at least 30 samples");
  const MixingIntegrand integrand(a, f1, f2);
  Rng rng(seed);
  std::vector<Element> draws(samples);
  for (auto& g : draws) g = static_cast<Element>(rng.below(a.group().order()));
  const auto terms = parallel_terms<double>(samples, [&](std::size_t i) { return integrand(draws[i]); });

  MonteCarloEstimate est;
  est.samples = samples;
  est.estimate = compensated_mean(terms);
  CompensatedSum sq;
  for (double t : terms) sq.add((t - est.estimate) * (t - est.estimate));
  const double variance = sq.value() / static_cast<double>(samples - 1);
  est.ci_halfwidth = 2.58 * std::sqrt(variance) / std::sqrt(static_cast<double>(samples));
  return est;
}

std::vector<MixingReport> mixing_bound_check(const Group& g, ActionKind kind,
                                             const MixingCheckOptions& options) {
  const ConjugacyData classes = conjugacy_classes(g);
  return mixing_bound_check(g, classes, quasirandom_degree(character_degrees(g, classes)), kind, options);
}

std::vector<MixingReport> mixing_bound_check(const Group& g, const ConjugacyData& classes,
                                             std::uint64_t D, ActionKind kind,
                                             const MixingCheckOptions& options) {
  const ActionTable a = ActionTable::build(g, kind, classes);
  const std::string name = g.name();
  const std::string experiment = "mixing:" + std::string(action_kind_name(kind));

  std::uint64_t effective = D;
  if (D != kUnboundedDegree && options.degree_offset != 0) {
    effective = static_cast<std::uint64_t>(std::max<std::int64_t>(1, static_cast<std::int64_t>(D) + options.degree_offset));
  }
  const double epsilon = mixing_epsilon(effective);
  const bool exact = g.order() <= options.exact_max_order;

  std::vector<MixingReport> reports;
  for (std::size_t t = 0; t < options.trials; ++t) {
    const std::uint64_t seed = derive_seed(options.seed, name, experiment, t);
    const Observable f1 = random_observable(a.space(), splitmix64(seed ^ 1));
    const Observable f2 = random_observable(a.space(), splitmix64(seed ^ 2));

    MixingReport r;
    r.group = name;
    r.order = g.order();
    r.action = kind;
    r.D = D;
    r.trial = t;
    r.seed = seed;
    r.bound = epsilon * f1.l2_norm() * f2.l2_norm();
    if (exact) {
      r.mode = EvalMode::exact;
      r.measured = mixing_error(a, f1, f2);
    } else {
      const auto est = monte_carlo_mixing_error(a, f1, f2, options.mc_samples, splitmix64(seed ^ 3));
      r.mode = EvalMode::monte_carlo;
      r.measured = est.estimate;
      r.samples = est.samples;
      r.ci_halfwidth = est.ci_halfwidth;
    }
    r.pass = r.measured <= r.bound + kBoundTolerance;
    reports.push_back(r);
  }
  return reports;
}

IdentityCheck reduction_identity_check(const ActionTable& a, const Observable& f1,
                                       const Observable& f2, Element g) {
  require_on_space(a, f1);
  require_on_space(a, f2);
  IdentityCheck check;
  check.lhs = inner(f1, koopman_apply(a, g, f2));

  const Group& grp = a.group();
  const std::size_t n = grp.order();
  const ActionTable right = ActionTable::build(grp, ActionKind::right);
  const ProbabilitySpace& xs = *a.space();

  auto fiber = [&](const Observable& f, std::uint32_t x) {
    std::vector<Complex> v(n);
    for (Element h = 0; h < n; ++h) v[h] = f[a.act(grp.inv(h), x)];
    return Observable(right.space(), std::move(v));
  };

  ComplexCompensatedSum acc;
  for (std::uint32_t x = 0; x < xs.size(); ++x) {
    const Observable fiber1 = fiber(f1, x);
    const Observable fiber2 = fiber(f2, x);
    acc.add(inner(fiber1, koopman_apply(right, g, fiber2)) * xs.weight(x));
  }
  check.rhs = acc.value();
  check.discrepancy = std::abs(check.lhs - check.rhs);
  return check;
}

}  // namespace qrmix
