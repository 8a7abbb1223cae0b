#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrmix/action.hpp"
#include "qrmix/conjugacy.hpp"
#include "qrmix/group.hpp"

namespace qrmix {

enum class EvalMode { exact, monte_carlo };

std::string_view eval_mode_name(EvalMode mode);

/// Tolerance added to every bound comparison.
inline constexpr double kBoundTolerance = 1e-9;

/// Groups up to this order are always evaluated exactly.
inline constexpr std::size_t kExactMaxOrder = 3000;

/// One trial of the D^{-1/2} mixing check.
struct MixingReport {
  std::string group;
  std::size_t order = 0;
  ActionKind action = ActionKind::left;
  std::uint64_t D = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double bound = 0.0;     // D^{-1/2} |f1|_2 |f2|_2
  double measured = 0.0;  // exact value or Monte Carlo estimate
  EvalMode mode = EvalMode::exact;
  std::size_t samples = 0;              // Monte Carlo only
  std::optional<double> ci_halfwidth;   // Monte Carlo only
  bool pass = false;                    // measured <= bound + kBoundTolerance
};

/// (1/|G|) sum_g |<f1, g.f2> - <P f1, P f2>|, all g in index order.
double mixing_error(const ActionTable& a, const Observable& f1, const Observable& f2);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double ci_halfwidth = 0.0;  // 2.58 * sample stddev / sqrt(samples)
  std::size_t samples = 0;
};

/// Sample mean of the mixing integrand over `samples` uniform draws of g.
/// Throws PreconditionError for samples < 30.
MonteCarloEstimate monte_carlo_mixing_error(const ActionTable& a, const Observable& f1,
                                            const Observable& f2, std::size_t samples,
                                            std::uint64_t seed);

struct MixingCheckOptions {
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::size_t exact_max_order = kExactMaxOrder;
  std::size_t mc_samples = 2000;
  /// Added to D before forming the bound; nonzero only for planted-fault runs.
  std::int64_t degree_offset = 0;
};

/// Runs `trials` seeded pairs of linf_unit observables through the action.
/// Exact mode up to exact_max_order, Monte Carlo above.
std::vector<MixingReport> mixing_bound_check(const Group& g, ActionKind kind,
                                             const MixingCheckOptions& options);
std::vector<MixingReport> mixing_bound_check(const Group& g, const ConjugacyData& classes,
                                             std::uint64_t D, ActionKind kind,
                                             const MixingCheckOptions& options);

struct IdentityCheck {
  Complex lhs;
  Complex rhs;
  double discrepancy = 0.0;
};

/// <f1, g.f2>_X against sum_x nu(x) <f1^(x), g ._r f2^(x)>_G, where
/// f^(x)(h) = (h . f)(x). The right side builds every fiber explicitly.
IdentityCheck reduction_identity_check(const ActionTable& a, const Observable& f1,
                                       const Observable& f2, Element g);

}  // namespace qrmix
