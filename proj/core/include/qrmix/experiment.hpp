#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrmix/action.hpp"
#include "qrmix/character.hpp"
#include "qrmix/mixing.hpp"
#include "qrmix/recurrence.hpp"

namespace qrmix {

enum class Experiment { degrees, mixing, recurrence, vdc };

std::string_view experiment_name(Experiment e);
Experiment parse_experiment(std::string_view text);

/// Sweep configuration. JSON keys (all but "groups" optional):
///   groups           array of family descriptors
///   experiments      subset of ["degrees","mixing","recurrence","vdc"]
///   actions          actions for the mixing experiment (default ["right"])
///   trials           >= 1 (default 5)
///   seed             master seed (default 0)
///   exact_max_order  >= 1 (default 3000)
///   mc_samples       sampled g (or (g, h) pairs) above exact_max_order (default 2000)
///   output_dir       where results.csv and summary.json go (default ".")
/// Unknown keys are rejected.
struct ExperimentConfig {
  std::vector<std::string> groups;
  std::vector<Experiment> experiments{Experiment::degrees, Experiment::mixing, Experiment::recurrence};
  std::vector<ActionKind> actions{ActionKind::right};
  std::size_t trials = 5;
  std::uint64_t seed = 0;
  std::size_t exact_max_order = kExactMaxOrder;
  std::size_t mc_samples = 2000;
  std::string output_dir = ".";

  /// Throws ConfigError.
  static ExperimentConfig from_json(std::string_view text);
  static ExperimentConfig load(const std::filesystem::path& path);
  void validate() const;
};

/// One flattened record per (group, experiment, trial). Fields that do not
/// apply to an experiment stay empty.
struct SweepRow {
  std::string group;
  std::size_t order = 0;
  Experiment experiment = Experiment::degrees;
  std::optional<ActionKind> action;
  std::uint64_t D = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  EvalMode mode = EvalMode::exact;
  std::size_t samples = 0;
  std::optional<double> epsilon;
  std::optional<double> bound;
  std::optional<double> measured;
  std::optional<double> ci;
  std::optional<double> bound_case_i;
  std::optional<double> measured_case_i;
  std::optional<double> bound_case_ii;
  std::optional<double> measured_case_ii;
  std::optional<double> epsilon_lhs;
  bool pass = true;
};

/// Header of results.csv.
extern const std::vector<std::string> kResultsColumns;

struct GroupFailure {
  std::string group;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<GroupFailure> failures;
  std::string results_csv;
  std::string summary_json;
  bool all_pass = true;
};

/// Deterministic in (config, seed): trial seeds come from
/// derive_seed(seed, descriptor, experiment, trial). Writes results.csv and
/// summary.json into config.output_dir unless it is empty.
SweepResult run_sweep(const ExperimentConfig& config);

/// Per (group, experiment) aggregation of a results.csv:
/// group,order,D,bound,measured_max,measured_mean,experiment, sorted by D.
/// `bound` is the smallest per-row bound. Throws ConfigError on a missing or
/// malformed file.
std::string emit_plot_data(const std::filesystem::path& results_csv);
std::string plot_data_from_csv(std::string_view results_csv);

// Per-experiment trial runners shared by the CLI subcommands and the sweep.

struct GroupContext {
  Group group;
  ConjugacyData classes;
  DegreeMultiset degrees;
  std::uint64_t D = 0;
};

GroupContext make_group_context(const GroupDescriptor& descriptor);

std::vector<RecurrenceReport> recurrence_trials(const GroupContext& ctx, std::size_t trials,
                                                std::uint64_t seed, std::size_t exact_max_order,
                                                std::size_t mc_samples);

struct VdcTrial {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  VdcReport report;
  double five_epsilon = 0.0;  // 5 D^{-1/2}, the budget for epsilon_lhs when P_c f3 = 0
};

/// Correlation families from random f2 and f3 - P_c f3, tested against a
/// random f.
std::vector<VdcTrial> vdc_trials(const GroupContext& ctx, std::size_t trials, std::uint64_t seed,
                                 std::size_t exact_max_order, std::size_t pair_samples);

// Formatting helpers (17 significant digits, "inf" for the unbounded degree).
std::string format_double(double x);
std::string format_degree(std::uint64_t D);

/// Joins fields into one CSV line, quoting fields that contain ',' or '"'.
std::string csv_line(const std::vector<std::string>& fields);
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

std::string observable_to_json(const Observable& f);
Observable observable_from_json(const SpacePtr& space, std::string_view text);

}  // namespace qrmix
