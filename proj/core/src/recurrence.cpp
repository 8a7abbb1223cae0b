#include "qrmix/recurrence.hpp"

#include <array>
#include <cmath>
#include <string>

#include "qrmix/character.hpp"
#include "qrmix/error.hpp"

namespace qrmix {

double recurrence_bound(double epsilon) {
  return std::min(epsilon + std::sqrt(5.0 * epsilon), 4.0 * std::sqrt(epsilon));
}

bool bound_chain_holds(double epsilon) {
  return epsilon + std::sqrt(5.0 * epsilon) <= 4.0 * std::sqrt(epsilon);
}

namespace {

void require_on_group(const Group& g, const Observable& f, const char* name) {
  if (f.size() != g.order()) {
    throw DimensionError(std::string(name) + " has " + std::to_string(f.size()) +
                         " values, expected |G| = " + std::to_string(g.order()));
  }
}

void require_unit_sup(const Observable& f, const char* name) {
  if (f.linf_norm() > 1.0 + 1e-12) {
    throw PreconditionError(std::string(name) + " violates |f|_inf <= 1 (got " +
                            std::to_string(f.linf_norm()) + ")");
  }
}

// Shared pass over x for one g: the triple products with f3, P_c f3 and
// f3 - P_c f3 in the third slot.
struct TripleTerms {
  Complex total;
  Complex case_i;
  Complex case_ii;
};

TripleTerms triple_terms(const Group& grp, const Observable& f1, const Observable& f2,
                         const Observable& f3, const Observable& f3_inv, const Observable& f3_res,
                         Element g) {
  const std::size_t n = grp.order();
  const Element ginv = grp.inv(g);
  ComplexCompensatedSum total, case_i, case_ii;
  for (Element x = 0; x < n; ++x) {
    const Element y = grp.mul(ginv, x);
    const Element z = grp.mul(y, g);
    const Complex v = f1[x] * f2[y];
    total.add(v * f3[z]);
    case_i.add(v * f3_inv[z]);
    case_ii.add(v * f3_res[z]);
  }
  const double scale = 1.0 / static_cast<double>(n);
  return {total.value() * scale, case_i.value() * scale, case_ii.value() * scale};
}

Complex reference_term(const Observable& f1, const Observable& pl_f2, const Observable& pc_f3) {
  ComplexCompensatedSum acc;
  for (std::size_t x = 0; x < f1.size(); ++x) acc.add(f1[x] * pl_f2[x] * pc_f3[x]);
  return acc.value() / static_cast<double>(f1.size());
}

struct RecurrenceMeasurement {
  double total = 0.0;
  double case_i = 0.0;
  double case_ii = 0.0;
  std::size_t samples = 0;
  Observable pc_f3;
  Observable residual;
};

RecurrenceMeasurement measure(const Group& g, const ConjugacyData& classes, const Observable& f1,
                              const Observable& f2, const Observable& f3,
                              const RecurrenceOptions& options) {
  require_on_group(g, f1, "f1");
  require_on_group(g, f2, "f2");
  require_on_group(g, f3, "f3");
  require_unit_sup(f1, "f1");
  require_unit_sup(f2, "f2");
  require_unit_sup(f3, "f3");

  const ActionTable left = ActionTable::build(g, ActionKind::left);
  const ActionTable conj = ActionTable::build(g, ActionKind::conjugation, classes);
  const Observable pl_f2 = orbit_projection(left, f2);
  Observable pc_f3 = orbit_projection(conj, f3);
  Observable residual = f3 - pc_f3;

  const std::array<Complex, 3> refs = {
      reference_term(f1, pl_f2, pc_f3),
      reference_term(f1, pl_f2, orbit_projection(conj, pc_f3)),
      reference_term(f1, pl_f2, orbit_projection(conj, residual)),
  };

  std::vector<Element> elements;
  if (options.mode == EvalMode::exact) {
    elements.resize(g.order());
    for (Element h = 0; h < g.order(); ++h) elements[h] = h;
  } else {
    if (options.samples == 0) throw PreconditionError("sampled recurrence needs samples >= 1");
    Rng rng(options.seed);
    elements.resize(options.samples);
    for (auto& h : elements) h = static_cast<Element>(rng.below(g.order()));
  }

  const auto terms = parallel_terms<std::array<double, 3>>(elements.size(), [&](std::size_t i) {
    const TripleTerms t = triple_terms(g, f1, f2, f3, pc_f3, residual, elements[i]);
    return std::array<double, 3>{std::abs(t.total - refs[0]), std::abs(t.case_i - refs[1]),
                                 std::abs(t.case_ii - refs[2])};
  });
  std::array<CompensatedSum, 3> sums;
  for (const auto& t : terms) {
    for (std::size_t c = 0; c < 3; ++c) sums[c].add(t[c]);
  }
  const double count = static_cast<double>(elements.size());
  return {sums[0].value() / count, sums[1].value() / count, sums[2].value() / count,
          elements.size(), std::move(pc_f3), std::move(residual)};
}

}  // namespace

Complex triple_product_average(const Group& g, const Observable& f1, const Observable& f2,
                               const Observable& f3, Element h) {
  require_on_group(g, f1, "f1");
  require_on_group(g, f2, "f2");
  require_on_group(g, f3, "f3");
  const std::size_t n = g.order();
  const Element hinv = g.inv(h);
  ComplexCompensatedSum acc;
  for (Element x = 0; x < n; ++x) {
    const Element y = g.mul(hinv, x);
    acc.add(f1[x] * f2[y] * f3[g.mul(y, h)]);
  }
  return acc.value() / static_cast<double>(n);
}

RecurrenceReport triple_recurrence_error(const Group& g, const Observable& f1, const Observable& f2,
                                         const Observable& f3, const RecurrenceOptions& options) {
  const ConjugacyData classes = conjugacy_classes(g);
  const std::uint64_t D = quasirandom_degree(character_degrees(g, classes));
  return triple_recurrence_error(g, classes, D, f1, f2, f3, options);
}

RecurrenceReport triple_recurrence_error(const Group& g, const ConjugacyData& classes,
                                         std::uint64_t D, const Observable& f1,
                                         const Observable& f2, const Observable& f3,
                                         const RecurrenceOptions& options) {
  const RecurrenceMeasurement m = measure(g, classes, f1, f2, f3, options);
  RecurrenceReport r;
  r.group = g.name();
  r.order = g.order();
  r.D = D;
  r.epsilon = mixing_epsilon(D);
  r.bound_total = recurrence_bound(r.epsilon);
  r.bound_corollary = 4.0 * std::sqrt(r.epsilon);
  r.bound_case_i = r.epsilon;
  r.bound_case_ii = std::sqrt(5.0 * r.epsilon);
  r.measured_total = m.total;
  r.measured_case_i = m.case_i;
  r.measured_case_ii = m.case_ii;
  r.mode = options.mode;
  r.samples = m.samples;
  r.seed = options.seed;
  r.pass = r.measured_total <= r.bound_total + kBoundTolerance;
  return r;
}

CaseDecomposition case_decomposition(const Group& g, const ConjugacyData& classes,
                                     const Observable& f1, const Observable& f2,
                                     const Observable& f3, const RecurrenceOptions& options) {
  const RecurrenceMeasurement m = measure(g, classes, f1, f2, f3, options);
  CaseDecomposition d;
  d.case_i = m.case_i;
  d.case_ii = m.case_ii;
  d.projected_linf = m.pc_f3.linf_norm();
  d.f3_linf = f3.linf_norm();
  d.residual_l2 = m.residual.l2_norm();
  d.f3_l2 = f3.l2_norm();
  return d;
}

Observable correlation_member(const Group& g, const Observable& f2, const Observable& f3, Element h) {
  require_on_group(g, f2, "f2");
  require_on_group(g, f3, "f3");
  const std::size_t n = g.order();
  const Element hinv = g.inv(h);
  std::vector<Complex> v(n);
  for (Element x = 0; x < n; ++x) {
    const Element y = g.mul(hinv, x);
    v[x] = f2[y] * f3[g.mul(y, h)];
  }
  return Observable(f2.space(), std::move(v));
}

VectorFamily::VectorFamily(Group index, std::vector<Observable> members)
    : index_(std::move(index)), members_(std::move(members)) {
  if (members_.size() != index_.order()) {
    throw DimensionError("family needs one member per group element");
  }
  space_ = members_.front().space();
  for (const auto& e : members_) {
    if (!same_space(*e.space(), *space_)) throw DimensionError("family members live on different spaces");
    l2_bound_ = std::max(l2_bound_, e.l2_norm());
  }
}

VectorFamily VectorFamily::correlation(const Group& g, const Observable& f2, const Observable& f3) {
  require_on_group(g, f2, "f2");
  require_on_group(g, f3, "f3");
  VectorFamily family(g, f2.space());
  family.l2_bound_ = f2.linf_norm() * f3.linf_norm();
  if (g.order() <= 1024) {
    family.members_.reserve(g.order());
    for (Element h = 0; h < g.order(); ++h) family.members_.push_back(correlation_member(g, f2, f3, h));
  } else {
    family.f2_ = f2;
    family.f3_ = f3;
  }
  return family;
}

Observable VectorFamily::member(Element g) const {
  if (!members_.empty()) return members_[g];
  return correlation_member(index_, *f2_, *f3_, g);
}

std::string_view pairing_name(Pairing p) { return p == Pairing::bilinear ? "bilinear" : "sesquilinear"; }

GramCheck gram_identity_check(const Group& g, const Observable& f2, const Observable& f3,
                              Element a, Element h, Pairing pairing) {
  GramCheck check;
  check.pairing = pairing;
  const Observable e_a = correlation_member(g, f2, f3, a);
  const Observable e_ah = correlation_member(g, f2, f3, g.mul(a, h));

  const ActionTable left = ActionTable::build(g, ActionKind::left);
  const ActionTable conjugation = ActionTable::build(g, ActionKind::conjugation);
  const ActionTable right = ActionTable::build(g, ActionKind::right);
  const Observable h_f2 = koopman_apply(left, h, f2);
  const Observable h_f3 = koopman_apply(conjugation, h, f3);

  if (pairing == Pairing::bilinear) {
    check.lhs = bilinear(e_a, e_ah);
    const Observable big_f2 = f2 * h_f2;
    const Observable big_f3 = f3 * h_f3;
    check.rhs = bilinear(big_f2, koopman_apply(right, a, big_f3));
  } else {
    check.lhs = inner(e_a, e_ah);
    const Observable big_f2 = f2 * conj(h_f2);
    const Observable big_f3 = f3 * conj(h_f3);
    check.rhs = bilinear(big_f2, koopman_apply(right, a, big_f3));
  }
  check.discrepancy = std::abs(check.lhs - check.rhs);
  return check;
}

VdcReport vdc_check(const VectorFamily& family, const Observable& f, const VdcOptions& options) {
  if (!same_space(*family.space(), *f.space())) throw DimensionError("f and the family live on different spaces");
  const Group& g = family.index_group();
  const std::size_t n = g.order();
  VdcReport r;

  const auto rhs_terms = parallel_terms<double>(n, [&](std::size_t i) {
    return std::abs(inner(f, family.member(static_cast<Element>(i))));
  });
  r.rhs_integral = compensated_mean(rhs_terms);

  if (n <= options.exact_max_order) {
    std::vector<Observable> computed;
    if (!family.materialized()) {
      computed.reserve(n);
      for (Element h = 0; h < n; ++h) computed.push_back(family.member(h));
    }
    const std::span<const Observable> members = family.materialized() ? family.members() : computed;
    const auto row_terms = parallel_terms<double>(n, [&](std::size_t hi) {
      const auto h = static_cast<Element>(hi);
      CompensatedSum row;
      for (Element a = 0; a < n; ++a) row.add(std::abs(inner(members[a], members[g.mul(a, h)])));
      return row.value() / static_cast<double>(n);
    });
    r.epsilon_lhs = compensated_mean(row_terms);
    r.exact = true;
  } else {
    Rng rng(options.seed);
    std::vector<std::pair<Element, Element>> pairs(options.pair_samples);
    for (auto& p : pairs) {
      p.first = static_cast<Element>(rng.below(n));
      p.second = static_cast<Element>(rng.below(n));
    }
    const auto terms = parallel_terms<double>(pairs.size(), [&](std::size_t i) {
      const auto [a, h] = pairs[i];
      return std::abs(inner(family.member(a), family.member(g.mul(a, h))));
    });
    r.epsilon_lhs = compensated_mean(terms);
    r.exact = false;
    r.pair_samples = pairs.size();
  }
  r.bound = std::sqrt(r.epsilon_lhs) * f.l2_norm();
  r.pass = r.rhs_integral <= r.bound + kBoundTolerance;
  return r;
}

BesselReport bessel_check(std::span<const Observable> family, const Observable& f) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (std::abs(inner(family[i], family[j])) > 1e-10) {
        throw PreconditionError("family members " + std::to_string(i) + " and " + std::to_string(j) +
                                " are not orthogonal");
      }
    }
  }
  BesselReport r;
  CompensatedSum acc;
  for (const auto& e : family) {
    const double norm_sq = e.l2_norm() * e.l2_norm();
    if (norm_sq == 0.0) continue;
    acc.add(std::norm(inner(f, e)) / norm_sq);
  }
  r.sum_of_squares = acc.value();
  r.norm_sq = f.l2_norm() * f.l2_norm();
  r.pass = r.sum_of_squares <= r.norm_sq + kBoundTolerance;
  return r;
}

}  // namespace qrmix
