#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qrmix/conjugacy.hpp"
#include "qrmix/group.hpp"
#include "qrmix/numeric.hpp"

namespace qrmix {

/// Finite probability space (X, nu) with the power set as sigma-algebra.
class ProbabilitySpace {
 public:
  static std::shared_ptr<const ProbabilitySpace> uniform(std::size_t n);
  /// Throws PreconditionError unless weights are non-negative and sum to 1
  /// within 1e-12.
  static std::shared_ptr<const ProbabilitySpace> weighted(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t x) const { return weights_[x]; }
  std::span<const double> weights() const { return weights_; }
  bool is_uniform() const { return uniform_; }

 private:
  ProbabilitySpace(std::vector<double> weights, bool uniform)
      : weights_(std::move(weights)), uniform_(uniform) {}
  std::vector<double> weights_;
  bool uniform_ = false;
};

using SpacePtr = std::shared_ptr<const ProbabilitySpace>;

bool same_space(const ProbabilitySpace& a, const ProbabilitySpace& b);

/// Complex-valued function on X. Values are immutable, so the L2 (w.r.t. nu)
/// and sup norms are computed once at construction.
class Observable {
 public:
  Observable(SpacePtr space, std::vector<Complex> values);

  static Observable constant(SpacePtr space, Complex c);
  static Observable indicator(SpacePtr space, std::size_t x);

  std::size_t size() const { return values_.size(); }
  Complex operator[](std::size_t x) const { return values_[x]; }
  std::span<const Complex> values() const { return values_; }
  const SpacePtr& space() const { return space_; }

  double l2_norm() const { return l2_; }
  double linf_norm() const { return linf_; }
  /// Integral of f against nu.
  Complex mean() const;

 private:
  SpacePtr space_;
  std::vector<Complex> values_;
  double l2_ = 0.0;
  double linf_ = 0.0;
};

Observable operator+(const Observable& a, const Observable& b);
Observable operator-(const Observable& a, const Observable& b);
/// Pointwise product.
Observable operator*(const Observable& a, const Observable& b);
Observable operator*(Complex c, const Observable& f);
Observable conj(const Observable& f);

/// <f1, f2> = sum_x f1(x) conj(f2(x)) nu(x), compensated, in point order.
/// Throws DimensionError when the spaces differ.
Complex inner(const Observable& f1, const Observable& f2);

/// sum_x f1(x) f2(x) nu(x): the unconjugated pairing (integral of a product).
Complex bilinear(const Observable& f1, const Observable& f2);

enum class ActionKind { left, right, conjugation, custom };

std::string_view action_kind_name(ActionKind kind);
/// Accepts left | right | conjugation (also l, r, c, conj).
ActionKind parse_action_kind(std::string_view text);

/// Orbit decomposition of X under an action.
struct OrbitData {
  std::vector<std::uint32_t> orbit_of;
  std::vector<std::vector<std::uint32_t>> orbits;
};

/// Measure-preserving action G x X -> X.
///   left:        g . x = g x
///   right:       g . x = x g^{-1}
///   conjugation: g . x = g x g^{-1}
/// The three built-in kinds act on X = G with uniform measure and are
/// evaluated through group multiplication; custom actions carry a table.
class ActionTable {
 public:
  static ActionTable build(const Group& g, ActionKind kind);
  /// Reuses precomputed conjugacy classes as the orbits of the conjugation
  /// action.
  static ActionTable build(const Group& g, ActionKind kind, const ConjugacyData& classes);
  /// `table[g * |X| + x]` = g . x. Throws ConstructionError unless the table
  /// is a measure-preserving action (identity, compatibility, bijectivity,
  /// nu(x) = nu(g . x)).
  static ActionTable custom(const Group& g, SpacePtr space, std::vector<std::uint32_t> table);
  /// act(g, x) = x on the given space.
  static ActionTable trivial(const Group& g, SpacePtr space);

  std::uint32_t act(Element g, std::uint32_t x) const {
    switch (kind_) {
      case ActionKind::left: return group_.mul(g, x);
      case ActionKind::right: return group_.mul(x, group_.inv(g));
      case ActionKind::conjugation: return group_.conjugate(g, x);
      case ActionKind::custom: break;
    }
    return table_[static_cast<std::size_t>(g) * space_->size() + x];
  }

  const Group& group() const { return group_; }
  const SpacePtr& space() const { return space_; }
  ActionKind kind() const { return kind_; }
  const OrbitData& orbits() const { return *orbits_; }

 private:
  ActionTable(Group g, SpacePtr space, ActionKind kind)
      : group_(std::move(g)), space_(std::move(space)), kind_(kind) {}

  Group group_;
  SpacePtr space_;
  ActionKind kind_;
  std::vector<std::uint32_t> table_;
  std::shared_ptr<const OrbitData> orbits_;
};

inline ActionTable build_action(const Group& g, ActionKind kind) { return ActionTable::build(g, kind); }

struct ActionValidation {
  bool identity = true;
  bool compatible = true;
  bool bijective = true;
  bool measure_preserving = true;
  std::vector<std::uint32_t> witness;
  bool ok() const { return identity && compatible && bijective && measure_preserving; }
};

/// Exhaustive invariant check, O(|G|^2 |X|).
ActionValidation validate_action(const ActionTable& a);

/// (g . f)(x) = f(g^{-1} . x).
Observable koopman_apply(const ActionTable& a, Element g, const Observable& f);

/// P_a f(x) = (1/|G|) sum_g f(g^{-1} . x): the mean ergodic average, summed
/// over all g in index order. O(|G| |X|).
Observable invariant_projection(const ActionTable& a, const Observable& f);

/// Same projection computed as orbit means, O(|X|).
Observable orbit_projection(const ActionTable& a, const Observable& f);

enum class NormMode { linf_unit, l2_unit };

/// Values uniform in the closed unit disc (linf_unit); l2_unit rescales the
/// draw to unit L2 norm. Deterministic in the seed.
Observable random_observable(const SpacePtr& space, std::uint64_t seed, NormMode mode = NormMode::linf_unit);

/// Real values uniform in [-1, 1].
Observable random_real_observable(const SpacePtr& space, std::uint64_t seed);

}  // namespace qrmix
