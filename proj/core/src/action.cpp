#include "qrmix/action.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qrmix/error.hpp"

namespace qrmix {

std::shared_ptr<const ProbabilitySpace> ProbabilitySpace::uniform(std::size_t n) {
  if (n == 0) throw PreconditionError("probability space must be non-empty");
  return std::shared_ptr<const ProbabilitySpace>(
      new ProbabilitySpace(std::vector<double>(n, 1.0 / static_cast<double>(n)), true));
}

std::shared_ptr<const ProbabilitySpace> ProbabilitySpace::weighted(std::vector<double> weights) {
  if (weights.empty()) throw PreconditionError("probability space must be non-empty");
  CompensatedSum total;
  for (double w : weights) {
    if (!(w >= 0.0)) throw PreconditionError("probability weights must be non-negative");
    total.add(w);
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    throw PreconditionError("probability weights sum to " + std::to_string(total.value()));
  }
  const bool uniform = std::all_of(weights.begin(), weights.end(),
                                   [&](double w) { return w == weights.front(); });
  return std::shared_ptr<const ProbabilitySpace>(new ProbabilitySpace(std::move(weights), uniform));
}

bool same_space(const ProbabilitySpace& a, const ProbabilitySpace& b) {
  if (&a == &b) return true;
  if (a.size() != b.size()) return false;
  if (a.is_uniform() && b.is_uniform()) return true;
  return std::equal(a.weights().begin(), a.weights().end(), b.weights().begin());
}

namespace {

void require_same_space(const Observable& a, const Observable& b) {
  if (!same_space(*a.space(), *b.space())) {
    throw DimensionError("observables live on different spaces (sizes " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()) + ")");
  }
}

template <typename Op>
Observable pointwise(const Observable& a, const Observable& b, Op op) {
  require_same_space(a, b);
  std::vector<Complex> v(a.size());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = op(a[x], b[x]);
  return Observable(a.space(), std::move(v));
}

}  // namespace

Observable::Observable(SpacePtr space, std::vector<Complex> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_ || space_->size() != values_.size()) {
    throw DimensionError("observable has " + std::to_string(values_.size()) +
                         " values for a space of size " + std::to_string(space_ ? space_->size() : 0));
  }
  CompensatedSum sq;
  for (std::size_t x = 0; x < values_.size(); ++x) {
    sq.add(std::norm(values_[x]) * space_->weight(x));
    linf_ = std::max(linf_, std::abs(values_[x]));
  }
  l2_ = std::sqrt(std::max(0.0, sq.value()));
}

Observable Observable::constant(SpacePtr space, Complex c) {
  const std::size_t n = space->size();
  return Observable(std::move(space), std::vector<Complex>(n, c));
}

Observable Observable::indicator(SpacePtr space, std::size_t x) {
  std::vector<Complex> v(space->size(), 0.0);
  v.at(x) = 1.0;
  return Observable(std::move(space), std::move(v));
}

Complex Observable::mean() const {
  ComplexCompensatedSum acc;
  for (std::size_t x = 0; x < values_.size(); ++x) acc.add(values_[x] * space_->weight(x));
  return acc.value();
}

Observable operator+(const Observable& a, const Observable& b) {
  return pointwise(a, b, [](Complex u, Complex v) { return u + v; });
}
Observable operator-(const Observable& a, const Observable& b) {
  return pointwise(a, b, [](Complex u, Complex v) { return u - v; });
}
Observable operator*(const Observable& a, const Observable& b) {
  return pointwise(a, b, [](Complex u, Complex v) { return u * v; });
}
Observable operator*(Complex c, const Observable& f) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (auto& z : v) z *= c;
  return Observable(f.space(), std::move(v));
}
Observable conj(const Observable& f) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (auto& z : v) z = std::conj(z);
  return Observable(f.space(), std::move(v));
}

Complex inner(const Observable& f1, const Observable& f2) {
  require_same_space(f1, f2);
  const ProbabilitySpace& s = *f1.space();
  ComplexCompensatedSum acc;
  for (std::size_t x = 0; x < f1.size(); ++x) acc.add(f1[x] * std::conj(f2[x]) * s.weight(x));
  return acc.value();
}

Complex bilinear(const Observable& f1, const Observable& f2) {
  require_same_space(f1, f2);
  const ProbabilitySpace& s = *f1.space();
  ComplexCompensatedSum acc;
  for (std::size_t x = 0; x < f1.size(); ++x) acc.add(f1[x] * f2[x] * s.weight(x));
  return acc.value();
}

std::string_view action_kind_name(ActionKind kind) {
  switch (kind) {
    case ActionKind::left: return "left";
    case ActionKind::right: return "right";
    case ActionKind::conjugation: return "conjugation";
    case ActionKind::custom: return "custom";
  }
  return "?";
}

ActionKind parse_action_kind(std::string_view text) {
  if (text == "left" || text == "l") return ActionKind::left;
  if (text == "right" || text == "r") return ActionKind::right;
  if (text == "conjugation" || text == "conj" || text == "c") return ActionKind::conjugation;
  throw ConfigError("unknown action kind '" + std::string(text) + "'");
}

namespace {

std::shared_ptr<const OrbitData> single_orbit(std::size_t n) {
  auto data = std::make_shared<OrbitData>();
  data->orbit_of.assign(n, 0);
  data->orbits.emplace_back(n);
  for (std::uint32_t x = 0; x < n; ++x) data->orbits[0][x] = x;
  return data;
}

std::shared_ptr<const OrbitData> orbits_from_classes(const ConjugacyData& classes) {
  auto data = std::make_shared<OrbitData>();
  data->orbit_of = classes.class_of;
  data->orbits.assign(classes.members.begin(), classes.members.end());
  return data;
}

std::shared_ptr<const OrbitData> sweep_orbits(const ActionTable& a) {
  const std::size_t n = a.space()->size();
  const std::size_t order = a.group().order();
  constexpr auto kUnassigned = std::numeric_limits<std::uint32_t>::max();
  auto data = std::make_shared<OrbitData>();
  data->orbit_of.assign(n, kUnassigned);
  for (std::uint32_t x = 0; x < n; ++x) {
    if (data->orbit_of[x] != kUnassigned) continue;
    const auto id = static_cast<std::uint32_t>(data->orbits.size());
    std::vector<std::uint32_t> orbit;
    for (Element g = 0; g < order; ++g) {
      const std::uint32_t y = a.act(g, x);
      if (data->orbit_of[y] == kUnassigned) {
        data->orbit_of[y] = id;
        orbit.push_back(y);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    data->orbits.push_back(std::move(orbit));
  }
  return data;
}

}  // namespace

ActionTable ActionTable::build(const Group& g, ActionKind kind) {
  if (kind == ActionKind::conjugation) return build(g, kind, conjugacy_classes(g));
  if (kind == ActionKind::custom) throw ConstructionError("custom actions need an explicit table");
  ActionTable a(g, ProbabilitySpace::uniform(g.order()), kind);
  a.orbits_ = single_orbit(g.order());
  return a;
}

ActionTable ActionTable::build(const Group& g, ActionKind kind, const ConjugacyData& classes) {
  if (kind != ActionKind::conjugation) return build(g, kind);
  ActionTable a(g, ProbabilitySpace::uniform(g.order()), kind);
  a.orbits_ = orbits_from_classes(classes);
  return a;
}

ActionTable ActionTable::custom(const Group& g, SpacePtr space, std::vector<std::uint32_t> table) {
  const std::size_t nx = space->size();
  if (table.size() != g.order() * nx) throw ConstructionError("action table must be |G| x |X|");
  for (auto y : table) {
    if (y >= nx) throw ConstructionError("action table entry out of range");
  }
  ActionTable a(g, std::move(space), ActionKind::custom);
  a.table_ = std::move(table);
  const ActionValidation v = validate_action(a);
  if (!v.ok()) {
    std::string what = !v.identity ? "identity" : !v.compatible ? "compatibility"
                     : !v.bijective ? "bijectivity" : "measure preservation";
    throw ConstructionError("custom action fails " + what);
  }
  a.orbits_ = sweep_orbits(a);
  return a;
}

ActionTable ActionTable::trivial(const Group& g, SpacePtr space) {
  const std::size_t nx = space->size();
  std::vector<std::uint32_t> table(g.order() * nx);
  for (std::size_t h = 0; h < g.order(); ++h) {
    for (std::uint32_t x = 0; x < nx; ++x) table[h * nx + x] = x;
  }
  return custom(g, std::move(space), std::move(table));
}

ActionValidation validate_action(const ActionTable& a) {
  const Group& g = a.group();
  const ProbabilitySpace& s = *a.space();
  const std::size_t n = g.order();
  const std::size_t nx = s.size();
  ActionValidation v;
  for (std::uint32_t x = 0; x < nx && v.identity; ++x) {
    if (a.act(g.identity(), x) != x) {
      v.identity = false;
      v.witness = {x};
    }
  }
  std::vector<bool> hit(nx);
  for (Element h = 0; h < n && v.bijective && v.measure_preserving; ++h) {
    std::fill(hit.begin(), hit.end(), false);
    for (std::uint32_t x = 0; x < nx; ++x) {
      const std::uint32_t y = a.act(h, x);
      if (hit[y]) {
        v.bijective = false;
        v.witness = {h, x};
        break;
      }
      hit[y] = true;
      if (std::abs(s.weight(x) - s.weight(y)) > 1e-12) {
        v.measure_preserving = false;
        v.witness = {h, x};
        break;
      }
    }
  }
  for (Element h = 0; h < n && v.compatible; ++h) {
    for (Element k = 0; k < n && v.compatible; ++k) {
      const Element hk = g.mul(h, k);
      for (std::uint32_t x = 0; x < nx; ++x) {
        if (a.act(hk, x) != a.act(h, a.act(k, x))) {
          v.compatible = false;
          v.witness = {h, k, x};
          break;
        }
      }
    }
  }
  return v;
}

Observable koopman_apply(const ActionTable& a, Element g, const Observable& f) {
  if (f.size() != a.space()->size()) throw DimensionError("observable does not live on the action's space");
  const Element ginv = a.group().inv(g);
  std::vector<Complex> v(f.size());
  for (std::uint32_t x = 0; x < v.size(); ++x) v[x] = f[a.act(ginv, x)];
  return Observable(a.space(), std::move(v));
}

Observable invariant_projection(const ActionTable& a, const Observable& f) {
  if (f.size() != a.space()->size()) throw DimensionError("observable does not live on the action's space");
  const Group& g = a.group();
  const std::size_t n = g.order();
  std::vector<Element> inverses(n);
  for (Element h = 0; h < n; ++h) inverses[h] = g.inv(h);
  auto values = parallel_terms<Complex>(f.size(), [&](std::size_t x) {
    ComplexCompensatedSum acc;
    for (Element h = 0; h < n; ++h) acc.add(f[a.act(inverses[h], static_cast<std::uint32_t>(x))]);
    return acc.value() / static_cast<double>(n);
  });
  return Observable(a.space(), std::move(values));
}

Observable orbit_projection(const ActionTable& a, const Observable& f) {
  if (f.size() != a.space()->size()) throw DimensionError("observable does not live on the action's space");
  const OrbitData& o = a.orbits();
  std::vector<Complex> means(o.orbits.size());
  for (std::size_t i = 0; i < o.orbits.size(); ++i) {
    ComplexCompensatedSum acc;
    for (auto x : o.orbits[i]) acc.add(f[x]);
    means[i] = acc.value() / static_cast<double>(o.orbits[i].size());
  }
  std::vector<Complex> v(f.size());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = means[o.orbit_of[x]];
  return Observable(a.space(), std::move(v));
}

Observable random_observable(const SpacePtr& space, std::uint64_t seed, NormMode mode) {
  Rng rng(seed);
  std::vector<Complex> v(space->size());
  for (auto& z : v) {
    const double r = std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    z = std::polar(r, theta);
  }
  Observable f(space, std::move(v));
  if (mode == NormMode::l2_unit && f.l2_norm() > 0.0) return Complex(1.0 / f.l2_norm()) * f;
  return f;
}

Observable random_real_observable(const SpacePtr& space, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> v(space->size());
  for (auto& z : v) z = 2.0 * rng.uniform() - 1.0;
  return Observable(space, std::move(v));
}

}  // namespace qrmix
