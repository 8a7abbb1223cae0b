#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qrmix/error.hpp"
#include "qrmix/experiment.hpp"
#include "qrmix/numeric.hpp"

namespace qrmix {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qrmix_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Seeds, DerivationIsStableAndSeparating) {
  EXPECT_EQ(derive_seed(1, "sl2:5", "mixing", 0), derive_seed(1, "sl2:5", "mixing", 0));
  EXPECT_NE(derive_seed(1, "sl2:5", "mixing", 0), derive_seed(2, "sl2:5", "mixing", 0));
  EXPECT_NE(derive_seed(1, "sl2:5", "mixing", 0), derive_seed(1, "sl2:7", "mixing", 0));
  EXPECT_NE(derive_seed(1, "sl2:5", "mixing", 0), derive_seed(1, "sl2:5", "recurrence", 0));
  EXPECT_NE(derive_seed(1, "sl2:5", "mixing", 0), derive_seed(1, "sl2:5", "mixing", 1));
  // Field boundaries matter: ("ab", "c") differs from ("a", "bc").
  EXPECT_NE(derive_seed(0, "ab", "c", 0), derive_seed(0, "a", "bc", 0));
}

TEST(Numeric, RngBelowIsInRange) {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) ASSERT_LT(rng.below(7), 7u);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Numeric, CompensatedSum) {
  std::vector<double> v{1.0, 1e100, 1.0, -1e100};
  EXPECT_EQ(compensated_sum(v), 2.0);
  EXPECT_EQ(compensated_mean(v), 0.5);
}

TEST(Numeric, ParallelTermsIndependentOfWorkers) {
  const std::size_t saved = worker_count();
  auto run = [] { return parallel_terms<double>(1000, [](std::size_t i) { return std::sin(static_cast<double>(i)); }); };
  set_worker_count(1);
  const auto one = run();
  set_worker_count(4);
  const auto four = run();
  set_worker_count(saved);
  EXPECT_EQ(one, four);
}

TEST(Config, ParsesDocumentedKeys) {
  const ExperimentConfig c = ExperimentConfig::from_json(R"({
    "groups": ["cyclic:8", "sl2:5"], "experiments": ["mixing", "vdc"], "actions": ["left", "conjugation"],
    "trials": 3, "seed": 42, "exact_max_order": 100, "mc_samples": 50, "output_dir": "out"})");
  EXPECT_EQ(c.groups.size(), 2u);
  EXPECT_EQ(c.experiments, (std::vector<Experiment>{Experiment::mixing, Experiment::vdc}));
  EXPECT_EQ(c.actions, (std::vector<ActionKind>{ActionKind::left, ActionKind::conjugation}));
  EXPECT_EQ(c.trials, 3u);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.exact_max_order, 100u);
  EXPECT_EQ(c.mc_samples, 50u);
  EXPECT_EQ(c.output_dir, "out");
}

TEST(Config, RejectsBadInput) {
  for (const char* text : {"not json", "[]", R"({"experiments": ["mixing"]})", R"({"groups": ["cyclic:8"], "bogus": 1})",
                           R"({"groups": ["cyclic:8"], "trials": 0})", R"({"groups": ["cyclic:8"], "trials": "3"})",
                           R"({"groups": ["cyclic:"]})", R"({"groups": ["cyclic:8"], "experiments": ["spectral"]})",
                           R"({"groups": ["cyclic:8"], "exact_max_order": 0})", R"({"groups": []})",
                           R"({"groups": ["cyclic:8"], "actions": ["custom"]})"}) {
    EXPECT_THROW(ExperimentConfig::from_json(text), ConfigError) << text;
  }
  EXPECT_THROW(ExperimentConfig::load("/nonexistent/config.json"), ConfigError);
}

TEST(Sweep, CyclicMixingThreeRows) {
  ExperimentConfig c;
  c.groups = {"cyclic:8"};
  c.experiments = {Experiment::mixing};
  c.trials = 3;
  c.output_dir = scratch_dir("cyclic").string();
  const SweepResult r = run_sweep(c);
  EXPECT_EQ(r.rows.size(), 3u);
  EXPECT_TRUE(r.all_pass);
  for (const auto& row : r.rows) {
    EXPECT_TRUE(row.pass);
    EXPECT_EQ(row.D, 1u);
    EXPECT_EQ(row.group, "cyclic:8");
  }
  const auto lines = parse_csv(read_file(fs::path(c.output_dir) / "results.csv"));
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], kResultsColumns);
  EXPECT_EQ(read_file(fs::path(c.output_dir) / "summary.json"), r.summary_json);
}

TEST(Sweep, ByteIdenticalReruns) {
  ExperimentConfig c;
  c.groups = {"symmetric:4", "sl2:5", "cyclic:1"};
  c.experiments = {Experiment::degrees, Experiment::mixing, Experiment::recurrence, Experiment::vdc};
  c.actions = {ActionKind::right, ActionKind::conjugation};
  c.trials = 2;
  c.seed = 9;
  c.output_dir = scratch_dir("rerun_a").string();
  const SweepResult a = run_sweep(c);
  const std::string csv_a = read_file(fs::path(c.output_dir) / "results.csv");
  c.output_dir = scratch_dir("rerun_b").string();
  const SweepResult b = run_sweep(c);
  EXPECT_EQ(csv_a, read_file(fs::path(c.output_dir) / "results.csv"));
  EXPECT_EQ(a.summary_json, b.summary_json);
  EXPECT_TRUE(a.all_pass);
  c.seed = 10;
  c.output_dir.clear();
  EXPECT_NE(run_sweep(c).results_csv, a.results_csv);
}

TEST(Sweep, EveryRowCarriesIdentity) {
  ExperimentConfig c;
  c.groups = {"psl2:5"};
  c.experiments = {Experiment::degrees, Experiment::mixing, Experiment::recurrence, Experiment::vdc};
  c.trials = 2;
  c.output_dir.clear();
  const SweepResult r = run_sweep(c);
  const auto rows = parse_csv(r.results_csv);
  ASSERT_EQ(rows.size(), 1u + 1 + 2 + 2 + 2);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), kResultsColumns.size());
    EXPECT_EQ(rows[i][0], "psl2:5");
    EXPECT_EQ(rows[i][1], "60");
    EXPECT_EQ(rows[i][4], "3");
    EXPECT_FALSE(rows[i][6].empty());
  }
}

TEST(Sweep, GroupFailureDoesNotStopTheSweep) {
  ExperimentConfig c;
  c.groups = {"sl2:103", "cyclic:5"};
  c.experiments = {Experiment::mixing};
  c.trials = 1;
  c.output_dir.clear();
  const SweepResult r = run_sweep(c);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].group, "sl2:103");
  EXPECT_EQ(r.rows.size(), 1u);
  EXPECT_NE(r.summary_json.find("\"status\": \"error\""), std::string::npos);
}

TEST(Sweep, RecurrenceAcrossSl2Family) {
  ExperimentConfig c;
  c.groups = {"sl2:5", "sl2:7", "sl2:13"};
  c.experiments = {Experiment::recurrence};
  c.trials = 2;
  c.output_dir.clear();
  const SweepResult r = run_sweep(c);
  EXPECT_TRUE(r.all_pass);
  for (const auto& row : r.rows) EXPECT_LE(*row.measured, *row.bound + 1e-9);
}

TEST(PlotData, HeaderOnlyForEmptyResults) {
  const std::string header = "group,order,D,bound,measured_max,measured_mean,experiment\n";
  EXPECT_EQ(plot_data_from_csv(""), header);
  EXPECT_EQ(plot_data_from_csv(csv_line(kResultsColumns)), header);
}

TEST(PlotData, OneTrialGivesEqualMaxAndMean) {
  ExperimentConfig c;
  c.groups = {"symmetric:3"};
  c.experiments = {Experiment::mixing};
  c.trials = 1;
  c.output_dir.clear();
  const auto rows = parse_csv(plot_data_from_csv(run_sweep(c).results_csv));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][4], rows[1][5]);
}

TEST(PlotData, SortedByDegree) {
  ExperimentConfig c;
  c.groups = {"sl2:7", "cyclic:6", "psl2:5", "cyclic:1"};
  c.experiments = {Experiment::mixing};
  c.trials = 2;
  c.output_dir = scratch_dir("plot").string();
  run_sweep(c);
  const auto rows = parse_csv(emit_plot_data(fs::path(c.output_dir) / "results.csv"));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[1][0], "cyclic:6");
  EXPECT_EQ(rows[2][2], "3");
  EXPECT_EQ(rows[3][2], "3");
  EXPECT_EQ(rows[4][0], "cyclic:1");
  EXPECT_EQ(rows[4][2], "inf");
  EXPECT_THROW(emit_plot_data("/nonexistent/results.csv"), ConfigError);
  EXPECT_THROW(plot_data_from_csv("group,order\ncyclic:2,2\n"), ConfigError);
}

TEST(Formatting, RoundTrips) {
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
  EXPECT_EQ(format_degree(kUnboundedDegree), "inf");
  EXPECT_EQ(csv_line({"a", "b,c", "d\"e"}), "a,\"b,c\",\"d\"\"e\"\n");
  const auto rows = parse_csv(csv_line({"a", "b,c", "d\"e"}));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"a", "b,c", "d\"e"}));
}

TEST(Formatting, ObservableJsonRoundTrip) {
  const SpacePtr s = ProbabilitySpace::uniform(5);
  const Observable f = random_observable(s, 3);
  const Observable g = observable_from_json(s, observable_to_json(f));
  for (std::size_t x = 0; x < 5; ++x) EXPECT_EQ(f[x], g[x]);
  EXPECT_THROW(observable_from_json(s, "[[1, 2, 3]]"), ConfigError);
  EXPECT_THROW(observable_from_json(s, "[[1, 0]]"), DimensionError);
}

}  // namespace
}  // namespace qrmix
