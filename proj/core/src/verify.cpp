#include "qrmix/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "qrmix/action.hpp"
#include "qrmix/conjugacy.hpp"
#include "qrmix/error.hpp"
#include "qrmix/experiment.hpp"
#include "qrmix/mixing.hpp"
#include "qrmix/recurrence.hpp"

namespace qrmix {

namespace {

constexpr double kIdentityTolerance = 1e-10;

const std::vector<std::string> kDegreeSuite = {"symmetric:3", "symmetric:4", "sl2:5", "sl2:7",
                                               "sl2:13",      "psl2:5",      "psl2:7"};

// Groups of order <= 360 used by the projection, identity and vdC checks.
const std::vector<std::string> kSmallSuite = {"cyclic:5",    "cyclic:8",    "cyclic:12", "cyclic:64",
                                              "dihedral:6",  "dihedral:10", "symmetric:3",
                                              "symmetric:4", "symmetric:5", "sl2:5",     "sl2:7",
                                              "psl2:5",      "psl2:7",      "product:cyclic:2,symmetric:3"};

const std::vector<ActionKind> kBuiltinActions = {ActionKind::right, ActionKind::left, ActionKind::conjugation};

std::uint64_t shifted_degree(std::uint64_t D, std::int64_t offset) {
  if (D == kUnboundedDegree || offset == 0) return D;
  return static_cast<std::uint64_t>(std::max<std::int64_t>(1, static_cast<std::int64_t>(D) + offset));
}

double sup_distance(const Observable& a, const Observable& b) {
  double d = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) d = std::max(d, std::abs(a[x] - b[x]));
  return d;
}

class Recorder {
 public:
  Recorder(int criterion, std::vector<CheckRecord>& out) : criterion_(criterion), out_(out) {}

  // Records measured <= bound.
  void at_most(std::string check, std::string group, std::string detail, double measured, double bound,
               double tolerance) {
    push(std::move(check), std::move(group), std::move(detail), measured, bound, measured <= bound + tolerance);
  }

  void exact(std::string check, std::string group, std::string detail, double measured, double expected) {
    push(std::move(check), std::move(group), std::move(detail), measured, expected, measured == expected);
  }

  void push(std::string check, std::string group, std::string detail, double measured, double bound, bool pass) {
    out_.push_back({criterion_, std::move(check), std::move(group), std::move(detail), measured, bound, pass});
  }

 private:
  int criterion_;
  std::vector<CheckRecord>& out_;
};

std::string degree_list(const std::vector<std::uint64_t>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(d[i]);
  }
  return s;
}

// Minimum nontrivial degree of SL(2, p) and PSL(2, p), p odd.
std::uint64_t closed_form_degree(const GroupDescriptor& d) {
  const std::uint64_t p = d.parameter;
  if (d.family == Family::sl2) return (p - 1) / 2;
  return p % 4 == 1 ? (p + 1) / 2 : (p - 1) / 2;
}

void criterion_degrees(const VerifyOptions& opt, Recorder& rec) {
  for (const auto& text : kDegreeSuite) {
    const GroupDescriptor desc = GroupDescriptor::parse(text);
    const GroupContext ctx = make_group_context(desc);
    const std::string name = ctx.group.name();
    const auto& degrees = ctx.degrees.degrees;
    const std::uint64_t D = shifted_degree(ctx.D, opt.degree_offset);

    rec.exact("sum_of_squares", name, degree_list(degrees), static_cast<double>(ctx.degrees.sum_of_squares()),
              static_cast<double>(ctx.group.order()));
    rec.exact("degree_count", name, "", static_cast<double>(degrees.size()),
              static_cast<double>(ctx.classes.class_count()));

    const auto oracle = numeric_character_degrees(ctx.group, derive_seed(opt.seed, name, "verify:degrees", 0));
    rec.push("numeric_oracle", name, degree_list(oracle), static_cast<double>(oracle.size()),
             static_cast<double>(degrees.size()), oracle == degrees);

    std::uint64_t oracle_min = kUnboundedDegree;
    for (std::size_t i = 1; i < oracle.size(); ++i) oracle_min = std::min(oracle_min, oracle[i]);
    rec.exact("oracle_minimum", name, "", static_cast<double>(D), static_cast<double>(oracle_min));

    if (desc.family == Family::sl2 || desc.family == Family::psl2) {
      rec.exact("closed_form_D", name, "", static_cast<double>(D), static_cast<double>(closed_form_degree(desc)));
    }
    if (desc.family == Family::psl2 && desc.parameter == 5) {
      // Perfect group: exactly one linear character.
      const std::size_t linear = static_cast<std::size_t>(std::count(degrees.begin(), degrees.end(), 1));
      rec.exact("linear_characters", name, "commutator subgroup order",
                static_cast<double>(ctx.group.order() / commutator_subgroup_order(ctx.group)),
                static_cast<double>(linear));
      std::size_t below_three = 0;
      for (std::size_t i = 1; i < oracle.size(); ++i) below_three += oracle[i] < 3;
      rec.exact("no_nontrivial_degree_below_3", name, "", static_cast<double>(below_three), 0.0);
    }
  }
}

void criterion_mixing(const VerifyOptions& opt, Recorder& rec) {
  for (const auto& text : kDegreeSuite) {
    const GroupContext ctx = make_group_context(GroupDescriptor::parse(text));
    for (ActionKind kind : kBuiltinActions) {
      MixingCheckOptions m;
      m.trials = 200;
      m.seed = opt.seed;
      m.exact_max_order = kExactMaxOrder;
      m.degree_offset = opt.degree_offset;
      for (const auto& r : mixing_bound_check(ctx.group, ctx.classes, ctx.D, kind, m)) {
        rec.at_most("mixing_bound", r.group,
                    std::string(action_kind_name(kind)) + " trial=" + std::to_string(r.trial), r.measured,
                    r.bound, kBoundTolerance);
      }
    }
  }
}

void criterion_sharpness(const VerifyOptions& opt, Recorder& rec) {
  for (std::size_t n : {5u, 8u, 12u}) {
    const GroupContext ctx = make_group_context(GroupDescriptor::cyclic(n));
    const std::string name = ctx.group.name();
    const ActionTable a = ActionTable::build(ctx.group, ActionKind::left, ctx.classes);
    std::vector<Complex> chi(n);
    for (std::size_t x = 0; x < n; ++x) {
      chi[x] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(x) / static_cast<double>(n));
    }
    const Observable f(a.space(), std::move(chi));
    const double err = mixing_error(a, f, f);
    rec.at_most("character_equality", name, "|mixing_error - 1|", std::abs(err - 1.0), 0.0, kIdentityTolerance);
    const double bound = mixing_epsilon(shifted_degree(ctx.D, opt.degree_offset)) * f.l2_norm() * f.l2_norm();
    rec.at_most("mixing_bound", name, "nontrivial character", err, bound, kBoundTolerance);
  }
}

void criterion_recurrence(const VerifyOptions& opt, Recorder& rec4, Recorder& rec5) {
  for (std::uint64_t p : {5u, 7u, 13u, 37u}) {
    GroupContext ctx = make_group_context(GroupDescriptor::sl2(p));
    ctx.D = shifted_degree(ctx.D, opt.degree_offset);
    const std::string name = ctx.group.name();
    for (const auto& r : recurrence_trials(ctx, 20, opt.seed, kExactMaxOrder, 2000)) {
      const std::string detail = std::string(eval_mode_name(r.mode)) + " seed=" + std::to_string(r.seed);
      rec4.at_most("corollary_bound", name, detail, r.measured_total, r.bound_corollary, kBoundTolerance);
      rec4.at_most("recurrence_bound", name, detail, r.measured_total, r.bound_total, kBoundTolerance);
      rec5.at_most("case_i", name, detail, r.measured_case_i, r.bound_case_i, kBoundTolerance);
      rec5.at_most("case_ii", name, detail, r.measured_case_ii, r.bound_case_ii, kBoundTolerance);
      rec5.at_most("triangle", name, detail, r.measured_total, r.measured_case_i + r.measured_case_ii,
                   kBoundTolerance);
    }
  }
}

void criterion_vdc(const VerifyOptions& opt, Recorder& rec) {
  for (const auto& text : kSmallSuite) {
    const Group g = build_group(text);
    const std::size_t n = g.order();
    const SpacePtr space = ProbabilitySpace::uniform(n);
    std::vector<Observable> members;
    members.reserve(n);
    const double scale = std::sqrt(static_cast<double>(n));
    for (Element x = 0; x < n; ++x) members.push_back(scale * Observable::indicator(space, x));
    const VectorFamily family(g, std::move(members));
    const VdcReport r = vdc_check(family, Observable::constant(space, 1.0), {.exact_max_order = 512});
    const double expected = 1.0 / static_cast<double>(n);
    rec.at_most("delta_epsilon", g.name(), "|epsilon_lhs - 1/|G||", std::abs(r.epsilon_lhs - expected), 0.0,
                kIdentityTolerance);
    rec.at_most("delta_equality", g.name(), "|rhs - bound|", std::abs(r.rhs_integral - r.bound), 0.0,
                kIdentityTolerance);
    rec.push("delta_exact_mode", g.name(), "", r.exact ? 1.0 : 0.0, 1.0, r.exact);
  }

  for (const char* text : {"symmetric:4", "sl2:5"}) {
    const GroupContext ctx = make_group_context(GroupDescriptor::parse(text));
    const std::string name = ctx.group.name();
    const SpacePtr space = ProbabilitySpace::uniform(ctx.group.order());
    const ActionTable conj = ActionTable::build(ctx.group, ActionKind::conjugation, ctx.classes);
    for (std::size_t t = 0; t < 100; ++t) {
      const std::uint64_t seed = derive_seed(opt.seed, name, "verify:vdc", t);
      const Observable f = random_observable(space, splitmix64(seed ^ 1));
      const Observable f2 = random_observable(space, splitmix64(seed ^ 2));
      const Observable f3 = random_observable(space, splitmix64(seed ^ 3));
      const Observable f3_mixing = f3 - orbit_projection(conj, f3);
      const std::string detail = "seed=" + std::to_string(seed);
      const VdcReport raw = vdc_check(correlation_family(ctx.group, f2, f3), f);
      rec.at_most("correlation_family", name, detail, raw.rhs_integral, raw.bound, kBoundTolerance);
      const VdcReport centred = vdc_check(correlation_family(ctx.group, f2, f3_mixing), f);
      rec.at_most("correlation_family_centred", name, detail, centred.rhs_integral, centred.bound,
                  kBoundTolerance);
    }
  }
}

void criterion_projection(const VerifyOptions& opt, Recorder& rec) {
  for (const auto& text : kSmallSuite) {
    const Group g = build_group(text);
    if (g.order() > 360) continue;
    const ConjugacyData classes = conjugacy_classes(g);
    const std::string name = g.name();
    for (ActionKind kind : kBuiltinActions) {
      const ActionTable a = ActionTable::build(g, kind, classes);
      double idempotent = 0.0, adjoint = 0.0, invariant = 0.0, constant = 0.0, routes = 0.0;
      for (std::size_t t = 0; t < 50; ++t) {
        const std::uint64_t seed = derive_seed(opt.seed, name, "verify:projection:" + std::string(action_kind_name(kind)), t);
        const Observable f = random_observable(a.space(), splitmix64(seed ^ 1));
        const Observable h = random_observable(a.space(), splitmix64(seed ^ 2));
        const Observable pf = invariant_projection(a, f);
        const Observable ph = invariant_projection(a, h);
        idempotent = std::max(idempotent, sup_distance(invariant_projection(a, pf), pf));
        adjoint = std::max(adjoint, std::abs(inner(pf, h) - inner(f, ph)));
        for (Element x = 0; x < g.order(); ++x) {
          invariant = std::max(invariant, sup_distance(koopman_apply(a, x, pf), pf));
        }
        if (kind != ActionKind::conjugation) {
          constant = std::max(constant, sup_distance(pf, Observable::constant(a.space(), f.mean())));
        }
        routes = std::max(routes, sup_distance(pf, orbit_projection(a, f)));
      }
      const std::string detail(action_kind_name(kind));
      rec.at_most("idempotent", name, detail, idempotent, 0.0, kIdentityTolerance);
      rec.at_most("self_adjoint", name, detail, adjoint, 0.0, kIdentityTolerance);
      rec.at_most("g_invariant", name, detail, invariant, 0.0, kIdentityTolerance);
      if (kind != ActionKind::conjugation) {
        rec.at_most("constant_mean", name, detail, constant, 0.0, kIdentityTolerance);
      }
      rec.at_most("orbit_route_agrees", name, detail, routes, 0.0, kIdentityTolerance);
    }
  }
}

void criterion_reduction(const VerifyOptions& opt, Recorder& rec) {
  for (const auto& text : kSmallSuite) {
    const Group g = build_group(text);
    if (g.order() > 60) continue;
    const ConjugacyData classes = conjugacy_classes(g);
    const std::string name = g.name();
    for (ActionKind kind : {ActionKind::conjugation, ActionKind::left}) {
      const ActionTable a = ActionTable::build(g, kind, classes);
      for (std::size_t t = 0; t < 3; ++t) {
        const std::uint64_t seed = derive_seed(opt.seed, name, "verify:reduction:" + std::string(action_kind_name(kind)), t);
        const Observable f1 = random_observable(a.space(), splitmix64(seed ^ 1));
        const Observable f2 = random_observable(a.space(), splitmix64(seed ^ 2));
        double worst = 0.0;
        for (Element x = 0; x < g.order(); ++x) {
          worst = std::max(worst, reduction_identity_check(a, f1, f2, x).discrepancy);
        }
        rec.at_most("reduction_identity", name,
                    std::string(action_kind_name(kind)) + " seed=" + std::to_string(seed), worst, 0.0,
                    kIdentityTolerance);
      }
    }
  }
}

void criterion_gram(const VerifyOptions& opt, Recorder& rec) {
  for (const auto& text : kSmallSuite) {
    const Group g = build_group(text);
    if (g.order() > 60) continue;
    const std::string name = g.name();
    const SpacePtr space = ProbabilitySpace::uniform(g.order());
    const std::uint64_t seed = derive_seed(opt.seed, name, "verify:gram", 0);
    const Observable f2 = random_real_observable(space, splitmix64(seed ^ 1));
    const Observable f3 = random_real_observable(space, splitmix64(seed ^ 2));
    for (Pairing pairing : {Pairing::bilinear, Pairing::sesquilinear}) {
      double worst = 0.0;
      for (Element a = 0; a < g.order(); ++a) {
        for (Element h = 0; h < g.order(); ++h) {
          worst = std::max(worst, gram_identity_check(g, f2, f3, a, h, pairing).discrepancy);
        }
      }
      rec.at_most("gram_identity", name, std::string(pairing_name(pairing)), worst, 0.0, kIdentityTolerance);
    }
  }
}

void criterion_estimator(const VerifyOptions& opt, Recorder& rec) {
  for (const char* text : {"cyclic:64", "symmetric:5"}) {
    const Group g = build_group(text);
    const std::string name = g.name();
    const ActionTable a = ActionTable::build(g, ActionKind::right);
    std::size_t within = 0;
    for (std::size_t t = 0; t < 100; ++t) {
      const std::uint64_t seed = derive_seed(opt.seed, name, "verify:estimator", t);
      const Observable f1 = random_observable(a.space(), splitmix64(seed ^ 1));
      const Observable f2 = random_observable(a.space(), splitmix64(seed ^ 2));
      const double exact = mixing_error(a, f1, f2);
      const auto est = monte_carlo_mixing_error(a, f1, f2, 200, splitmix64(seed ^ 3));
      within += std::abs(est.estimate - exact) <= 3.0 * est.ci_halfwidth;
    }
    rec.push("within_3ci", name, "of 100 seeds", static_cast<double>(within), 95.0, within >= 95);
  }
}

std::string records_csv(const std::vector<CheckRecord>& records) {
  std::string out = csv_line({"criterion", "check", "group", "detail", "measured", "bound", "pass"});
  for (const auto& r : records) {
    out += csv_line({std::to_string(r.criterion), r.check, r.group, r.detail, format_double(r.measured),
                     format_double(r.bound), r.pass ? "true" : "false"});
  }
  return out;
}

}  // namespace

std::string criterion_name(int id) {
  switch (id) {
    case 1: return "character degrees";
    case 2: return "mixing bound";
    case 3: return "sharpness witness";
    case 4: return "triple recurrence";
    case 5: return "case decomposition";
    case 6: return "van der Corput";
    case 7: return "mean ergodic projection";
    case 8: return "reduction identity";
    case 9: return "Gram identity";
    case 10: return "estimator consistency";
  }
  throw PreconditionError("no criterion " + std::to_string(id));
}

VerifyResult verify_paper_bounds(const VerifyOptions& options,
                                 const std::function<void(const CriterionResult&)>& progress) {
  for (int id : options.criteria) criterion_name(id);
  auto selected = [&](int id) { return options.criteria.empty() || options.criteria.contains(id); };

  VerifyResult result;
  std::vector<std::vector<CheckRecord>> per(kVerifyCriteria + 1);
  std::vector<double> seconds(kVerifyCriteria + 1, 0.0);

  auto timed = [&](auto&& fn, int first, int last) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (int id = first; id <= last; ++id) seconds[id] = s;
  };
  auto finish = [&](int id) {
    CriterionResult c;
    c.id = id;
    c.name = criterion_name(id);
    c.seconds = seconds[id];
    for (const auto& r : per[id]) {
      ++c.checks;
      if (!r.pass) ++c.failures;
    }
    c.pass = c.failures == 0 && c.checks > 0;
    result.all_pass = result.all_pass && c.pass;
    result.records.insert(result.records.end(), per[id].begin(), per[id].end());
    result.criteria.push_back(c);
    if (progress) progress(c);
  };

  for (int id = 1; id <= kVerifyCriteria; ++id) {
    if (!selected(id)) continue;
    Recorder rec(id, per[id]);
    switch (id) {
      case 1: timed([&] { criterion_degrees(options, rec); }, 1, 1); break;
      case 2: timed([&] { criterion_mixing(options, rec); }, 2, 2); break;
      case 3: timed([&] { criterion_sharpness(options, rec); }, 3, 3); break;
      case 4: {
        // Criteria 4 and 5 share one set of trials.
        Recorder rec5(5, per[5]);
        timed([&] { criterion_recurrence(options, rec, rec5); }, 4, 5);
        break;
      }
      case 5:
        if (!selected(4)) {
          std::vector<CheckRecord> discard;
          Recorder rec4(4, discard);
          timed([&] { criterion_recurrence(options, rec4, rec); }, 5, 5);
        }
        break;
      case 6: timed([&] { criterion_vdc(options, rec); }, 6, 6); break;
      case 7: timed([&] { criterion_projection(options, rec); }, 7, 7); break;
      case 8: timed([&] { criterion_reduction(options, rec); }, 8, 8); break;
      case 9: timed([&] { criterion_gram(options, rec); }, 9, 9); break;
      case 10: timed([&] { criterion_estimator(options, rec); }, 10, 10); break;
    }
    finish(id);
  }

  result.csv = records_csv(result.records);

  nlohmann::ordered_json doc;
  doc["master_seed"] = options.seed;
  doc["degree_offset"] = options.degree_offset;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& c : result.criteria) {
    nlohmann::ordered_json j;
    j["id"] = c.id;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["checks"] = c.checks;
    j["failures"] = c.failures;
    list.push_back(j);
  }
  doc["criteria"] = list;
  doc["all_pass"] = result.all_pass;
  result.json = doc.dump(2) + "\n";
  return result;
}

std::vector<std::uint64_t> numeric_character_degrees(const Group& g, std::uint64_t seed) {
  const ConjugacyData classes = conjugacy_classes(g);
  const ClassConstants cc = class_constants(g, classes);
  const std::size_t k = cc.k;
  const double order = static_cast<double>(g.order());

  Rng rng(seed);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const double c = rng.uniform() * 2.0 - 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < k; ++l) m(j, l) += c * cc(i, j, l);
    }
  }
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw CharacterError("eigen-decomposition did not converge");

  std::vector<std::size_t> inverse_class(k);
  for (std::size_t j = 0; j < k; ++j) inverse_class[j] = classes.class_of[g.inv(classes.representatives[j])];

  std::vector<std::uint64_t> degrees;
  const auto vectors = solver.eigenvectors();
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    const Complex lead = vectors(0, c);
    if (std::abs(lead) < 1e-12) throw CharacterError("eigenvector with vanishing identity entry");
    Complex s = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const Complex wj = vectors(static_cast<Eigen::Index>(j), c) / lead;
      const Complex wjs = vectors(static_cast<Eigen::Index>(inverse_class[j]), c) / lead;
      s += wj * wjs / static_cast<double>(classes.class_sizes[j]);
    }
    const double d = std::sqrt(order / s.real());
    degrees.push_back(static_cast<std::uint64_t>(std::llround(d)));
  }
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

}  // namespace qrmix
