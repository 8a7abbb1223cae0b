// qrmix: command-line front end for the quasirandom mixing library.
//
// Exit status: 0 when every check passes, 1 when a bound is violated,
// 2 on usage, config or construction errors, 3 on internal failures.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qrmix/character.hpp"
#include "qrmix/error.hpp"
#include "qrmix/experiment.hpp"
#include "qrmix/mixing.hpp"
#include "qrmix/recurrence.hpp"
#include "qrmix/verify.hpp"

namespace {

using qrmix::format_degree;
using qrmix::format_double;
using json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct CommonFlags {
  std::vector<std::string> groups;
  std::uint64_t seed = 0;
  std::size_t trials = 5;
  std::size_t mc_samples = 2000;
  std::size_t exact_max_order = qrmix::kExactMaxOrder;
  std::string out;
  bool json = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_groups = true) {
  if (with_groups) cmd->add_option("-g,--group", f.groups, "Group descriptor, e.g. sl2:13 (repeatable)")->required();
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--trials", f.trials, "Trials per group")->check(CLI::PositiveNumber);
  cmd->add_option("--mc", f.mc_samples, "Monte Carlo samples used above --exact-max-order")
      ->check(CLI::Range(std::size_t{30}, std::size_t{100'000'000}));
  cmd->add_option("--exact-max-order", f.exact_max_order, "Largest order evaluated exactly")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Write output into this directory instead of stdout");
  cmd->add_flag("--json", f.json, "Emit JSON instead of CSV");
}

// A table of string cells rendered either as CSV or as a JSON array of
// objects. Cells listed in `numeric` are emitted as JSON numbers.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::string s = qrmix::csv_line(columns);
    for (const auto& r : rows) s += qrmix::csv_line(r);
    return s;
  }

  std::string to_json() const {
    json arr = json::array();
    for (const auto& r : rows) {
      json obj;
      for (std::size_t i = 0; i < columns.size(); ++i) {
        const std::string& cell = r[i];
        if (cell == "true" || cell == "false") {
          obj[columns[i]] = cell == "true";
        } else if (cell.empty()) {
          obj[columns[i]] = nullptr;
        } else {
          const json parsed = json::parse(cell, nullptr, false);
          obj[columns[i]] = parsed.is_number() ? parsed : json(cell);
        }
      }
      arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
  }
};

void emit(const std::string& text, const std::string& out_dir, const std::string& file) {
  if (out_dir.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(out_dir);
  const auto path = std::filesystem::path(out_dir) / file;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw qrmix::ConfigError("cannot write " + path.string());
  os << text;
  std::cerr << "wrote " << path.string() << "\n";
}

void emit_table(const Table& t, const CommonFlags& f, const std::string& stem) {
  if (f.json) {
    emit(t.to_json(), f.out, stem + ".json");
  } else {
    emit(t.csv(), f.out, stem + ".csv");
  }
}

std::string flag(bool b) { return b ? "true" : "false"; }

int run_degrees(const CommonFlags& f) {
  json arr = json::array();
  Table t{{"group", "order", "classes", "degrees", "D"}, {}};
  for (const auto& text : f.groups) {
    const auto ctx = qrmix::make_group_context(qrmix::GroupDescriptor::parse(text));
    json obj;
    obj["group"] = ctx.group.name();
    obj["order"] = ctx.group.order();
    obj["classes"] = ctx.classes.class_count();
    obj["degrees"] = ctx.degrees.degrees;
    obj["D"] = ctx.D == qrmix::kUnboundedDegree ? json("inf") : json(ctx.D);
    arr.push_back(obj);
    std::string degrees;
    for (std::size_t i = 0; i < ctx.degrees.degrees.size(); ++i) {
      if (i) degrees += ' ';
      degrees += std::to_string(ctx.degrees.degrees[i]);
    }
    t.rows.push_back({ctx.group.name(), std::to_string(ctx.group.order()),
                      std::to_string(ctx.classes.class_count()), degrees, format_degree(ctx.D)});
  }
  if (f.json) {
    emit(arr.dump(2) + "\n", f.out, "degrees.json");
  } else {
    emit(t.csv(), f.out, "degrees.csv");
  }
  return kExitPass;
}

int run_mixing(const CommonFlags& f, const std::vector<std::string>& actions) {
  Table t{{"group", "order", "action", "D", "trial", "seed", "mode", "bound", "measured", "ci", "pass"}, {}};
  bool all_pass = true;
  for (const auto& text : f.groups) {
    const auto ctx = qrmix::make_group_context(qrmix::GroupDescriptor::parse(text));
    for (const auto& name : actions) {
      const qrmix::ActionKind kind = qrmix::parse_action_kind(name);
      if (kind == qrmix::ActionKind::custom) throw qrmix::ConfigError("custom actions need an explicit table");
      qrmix::MixingCheckOptions options;
      options.trials = f.trials;
      options.seed = f.seed;
      options.exact_max_order = f.exact_max_order;
      options.mc_samples = f.mc_samples;
      for (const auto& r : qrmix::mixing_bound_check(ctx.group, ctx.classes, ctx.D, kind, options)) {
        all_pass = all_pass && r.pass;
        t.rows.push_back({r.group, std::to_string(r.order), std::string(qrmix::action_kind_name(r.action)),
                          format_degree(r.D), std::to_string(r.trial), std::to_string(r.seed),
                          std::string(qrmix::eval_mode_name(r.mode)), format_double(r.bound),
                          format_double(r.measured), r.ci_halfwidth ? format_double(*r.ci_halfwidth) : "",
                          flag(r.pass)});
      }
    }
  }
  emit_table(t, f, "mixing");
  return all_pass ? kExitPass : kExitViolation;
}

int run_recurrence(const CommonFlags& f) {
  Table t{{"group", "order", "D", "epsilon", "bound_case_i", "measured_case_i", "bound_case_ii",
           "measured_case_ii", "bound_total", "measured_total", "pass"},
          {}};
  bool all_pass = true;
  for (const auto& text : f.groups) {
    const auto ctx = qrmix::make_group_context(qrmix::GroupDescriptor::parse(text));
    for (const auto& r : qrmix::recurrence_trials(ctx, f.trials, f.seed, f.exact_max_order, f.mc_samples)) {
      const bool pass = r.pass && r.decomposition_consistent() &&
                        r.measured_case_i <= r.bound_case_i + qrmix::kBoundTolerance &&
                        r.measured_case_ii <= r.bound_case_ii + qrmix::kBoundTolerance;
      all_pass = all_pass && pass;
      t.rows.push_back({r.group, std::to_string(r.order), format_degree(r.D), format_double(r.epsilon),
                        format_double(r.bound_case_i), format_double(r.measured_case_i),
                        format_double(r.bound_case_ii), format_double(r.measured_case_ii),
                        format_double(r.bound_total), format_double(r.measured_total), flag(pass)});
    }
  }
  emit_table(t, f, "recurrence");
  return all_pass ? kExitPass : kExitViolation;
}

int run_vdc(const CommonFlags& f) {
  Table t{{"group", "order", "D", "trial", "epsilon_lhs", "rhs_integral", "bound", "five_epsilon", "pass"}, {}};
  bool all_pass = true;
  for (const auto& text : f.groups) {
    const auto ctx = qrmix::make_group_context(qrmix::GroupDescriptor::parse(text));
    const std::size_t exact_limit = std::min<std::size_t>(512, f.exact_max_order);
    for (const auto& v : qrmix::vdc_trials(ctx, f.trials, f.seed, exact_limit, f.mc_samples)) {
      all_pass = all_pass && v.report.pass;
      t.rows.push_back({ctx.group.name(), std::to_string(ctx.group.order()), format_degree(ctx.D),
                        std::to_string(v.trial), format_double(v.report.epsilon_lhs),
                        format_double(v.report.rhs_integral), format_double(v.report.bound),
                        format_double(v.five_epsilon), flag(v.report.pass)});
    }
  }
  emit_table(t, f, "vdc");
  return all_pass ? kExitPass : kExitViolation;
}

int run_sweep(const std::string& config_path, const std::string& out_override) {
  qrmix::ExperimentConfig config = qrmix::ExperimentConfig::load(config_path);
  if (!out_override.empty()) config.output_dir = out_override;
  const qrmix::SweepResult result = qrmix::run_sweep(config);
  for (const auto& failure : result.failures) {
    std::cerr << "group " << failure.group << " failed: " << failure.error << "\n";
  }
  std::cout << "sweep: " << result.rows.size() << " rows, " << result.failures.size() << " group errors, "
            << (result.all_pass ? "all pass" : "bound violations") << "\n";
  std::cout << "wrote " << (std::filesystem::path(config.output_dir) / "results.csv").string() << " and "
            << (std::filesystem::path(config.output_dir) / "summary.json").string() << "\n";
  if (!result.all_pass) return kExitViolation;
  return result.failures.empty() ? kExitPass : kExitUsage;
}

int run_plotdata(const std::string& results, const std::string& out) {
  emit(qrmix::emit_plot_data(results), out, "plot.csv");
  return kExitPass;
}

struct VerifyFlags {
  std::uint64_t seed = 0;
  std::int64_t inflate_d = 0;
  std::vector<int> only;
  std::string out = ".";
  bool skip_determinism = false;
};

void print_criterion(int id, const std::string& name, bool pass, const std::string& detail) {
  std::cout << "criterion " << id << " (" << name << "): " << (pass ? "PASS" : "FAIL") << "  " << detail
            << std::endl;
}

int run_verify(const VerifyFlags& f) {
  qrmix::VerifyOptions options;
  options.seed = f.seed;
  options.degree_offset = f.inflate_d;
  options.criteria.insert(f.only.begin(), f.only.end());

  const auto first = qrmix::verify_paper_bounds(options, [](const qrmix::CriterionResult& c) {
    std::ostringstream detail;
    detail << c.checks << " checks, " << c.failures << " failures, " << c.seconds << " s";
    print_criterion(c.id, c.name, c.pass, detail.str());
  });
  for (const auto& r : first.records) {
    if (!r.pass) {
      std::cout << "  failed: criterion " << r.criterion << " " << r.check << " " << r.group << " " << r.detail
                << " measured=" << format_double(r.measured) << " bound=" << format_double(r.bound) << "\n";
    }
  }

  bool all_pass = first.all_pass;
  if (!f.skip_determinism) {
    const auto second = qrmix::verify_paper_bounds(options);
    const bool same = first.csv == second.csv && first.json == second.json;
    print_criterion(11, "determinism", same, same ? "CSV and JSON byte-identical" : "outputs differ");
    all_pass = all_pass && same;
  }
  emit(first.csv, f.out, "verify.csv");
  emit(first.json, f.out, "verify.json");
  std::cout << (all_pass ? "all criteria pass" : "some criteria FAILED") << "\n";
  return all_pass ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasirandom group mixing and triple recurrence checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qrmix 0.1.0");

  CommonFlags common;
  std::vector<std::string> actions{"right"};
  std::string config_path, results_path;
  VerifyFlags verify;

  auto* degrees = app.add_subcommand("degrees", "Character degrees and D of each group");
  add_common(degrees, common);

  auto* mixing = app.add_subcommand("mixing", "Mixing error against D^{-1/2} |f1| |f2|");
  add_common(mixing, common);
  mixing->add_option("--action", actions, "left, right or conjugation (repeatable)");

  auto* recurrence = app.add_subcommand("recurrence", "Triple recurrence error against 4 D^{-1/4}");
  add_common(recurrence, common);

  auto* vdc = app.add_subcommand("vdc", "Quantitative van der Corput check on correlation families");
  add_common(vdc, common);

  auto* sweep = app.add_subcommand("sweep", "Run a JSON-configured sweep");
  sweep->add_option("--config", config_path, "Config file")->required();
  sweep->add_option("--out", common.out, "Override the config's output_dir");

  auto* plotdata = app.add_subcommand("plotdata", "Aggregate results.csv into plot-ready rows");
  plotdata->add_option("--results", results_path, "results.csv from a sweep")->required();
  plotdata->add_option("--out", common.out, "Write plot.csv into this directory instead of stdout");

  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance suite");
  verify_cmd->add_option("--seed", verify.seed, "Master seed");
  verify_cmd->add_option("--out", verify.out, "Directory for verify.csv and verify.json");
  verify_cmd->add_option("--only", verify.only, "Run only these criteria (1-10)")
      ->delimiter(',')
      ->check(CLI::Range(1, qrmix::kVerifyCriteria));
  verify_cmd->add_option("--inflate-d", verify.inflate_d, "Debug: add this to every D (planted fault)");
  verify_cmd->add_flag("--no-determinism", verify.skip_determinism, "Skip the second run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*degrees) return run_degrees(common);
    if (*mixing) return run_mixing(common, actions);
    if (*recurrence) return run_recurrence(common);
    if (*vdc) return run_vdc(common);
    if (*sweep) return run_sweep(config_path, common.out);
    if (*plotdata) return run_plotdata(results_path, common.out);
    if (*verify_cmd) return run_verify(verify);
  } catch (const qrmix::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qrmix::ConstructionError& e) {
    std::cerr << "cannot build group: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qrmix::PreconditionError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qrmix::DimensionError& e) {
    std::cerr << "dimension mismatch: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
