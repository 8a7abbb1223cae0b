#include "qrmix/experiment.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qrmix/error.hpp"

namespace qrmix {

using json = nlohmann::ordered_json;

std::string_view experiment_name(Experiment e) {
  switch (e) {
    case Experiment::degrees: return "degrees";
    case Experiment::mixing: return "mixing";
    case Experiment::recurrence: return "recurrence";
    case Experiment::vdc: return "vdc";
  }
  return "?";
}

Experiment parse_experiment(std::string_view text) {
  if (text == "degrees") return Experiment::degrees;
  if (text == "mixing") return Experiment::mixing;
  if (text == "recurrence") return Experiment::recurrence;
  if (text == "vdc") return Experiment::vdc;
  throw ConfigError("unknown experiment '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Config

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
  static const std::set<std::string> kKeys = {"groups",          "experiments", "actions",
                                              "trials",          "seed",        "exact_max_order",
                                              "mc_samples",      "output_dir"};
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  ExperimentConfig c;
  try {
    if (!doc.contains("groups")) throw ConfigError("config needs a 'groups' array");
    c.groups = doc.at("groups").get<std::vector<std::string>>();
    if (doc.contains("experiments")) {
      c.experiments.clear();
      for (const auto& e : doc.at("experiments")) c.experiments.push_back(parse_experiment(e.get<std::string>()));
    }
    if (doc.contains("actions")) {
      c.actions.clear();
      for (const auto& a : doc.at("actions")) c.actions.push_back(parse_action_kind(a.get<std::string>()));
    }
    if (doc.contains("trials")) c.trials = doc.at("trials").get<std::size_t>();
    if (doc.contains("seed")) c.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("exact_max_order")) c.exact_max_order = doc.at("exact_max_order").get<std::size_t>();
    if (doc.contains("mc_samples")) c.mc_samples = doc.at("mc_samples").get<std::size_t>();
    if (doc.contains("output_dir")) c.output_dir = doc.at("output_dir").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

void ExperimentConfig::validate() const {
  if (groups.empty()) throw ConfigError("config lists no groups");
  if (experiments.empty()) throw ConfigError("config lists no experiments");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (exact_max_order < 1) throw ConfigError("exact_max_order must be >= 1");
  if (mc_samples < 30) throw ConfigError("mc_samples must be >= 30");
  for (const auto& g : groups) {
    try {
      GroupDescriptor::parse(g);
    } catch (const ConstructionError& e) {
      throw ConfigError(e.what());
    }
  }
  for (auto a : actions) {
    if (a == ActionKind::custom) throw ConfigError("custom actions cannot be swept");
  }
}

// ---------------------------------------------------------------------------
// Formatting

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_degree(std::uint64_t D) {
  return D == kUnboundedDegree ? std::string("inf") : std::to_string(D);
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") == std::string::npos) {
      line += f;
    } else {
      line += '"';
      for (char c : f) {
        if (c == '"') line += '"';
        line += c;
      }
      line += '"';
    }
  }
  line += '\n';
  return line;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      field_started = false;
    } else if (c != '\r') {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw ConfigError("unterminated quoted CSV field");
  if (field_started || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string opt(const std::optional<double>& x) { return x ? format_double(*x) : std::string(); }

std::string row_line(const SweepRow& r) {
  return csv_line({r.group,
                   std::to_string(r.order),
                   std::string(experiment_name(r.experiment)),
                   r.action ? std::string(action_kind_name(*r.action)) : std::string(),
                   format_degree(r.D),
                   std::to_string(r.trial),
                   std::to_string(r.seed),
                   std::string(eval_mode_name(r.mode)),
                   std::to_string(r.samples),
                   opt(r.epsilon),
                   opt(r.bound),
                   opt(r.measured),
                   opt(r.ci),
                   opt(r.bound_case_i),
                   opt(r.measured_case_i),
                   opt(r.bound_case_ii),
                   opt(r.measured_case_ii),
                   opt(r.epsilon_lhs),
                   r.pass ? "true" : "false"});
}

json degree_json(std::uint64_t D) {
  if (D == kUnboundedDegree) return "inf";
  return D;
}

}  // namespace

const std::vector<std::string> kResultsColumns = {
    "group",           "order",         "experiment",       "action",          "D",
    "trial",           "seed",          "mode",             "samples",         "epsilon",
    "bound",           "measured",      "ci",               "bound_case_i",    "measured_case_i",
    "bound_case_ii",   "measured_case_ii", "epsilon_lhs",   "pass"};

// ---------------------------------------------------------------------------
// Trial runners

GroupContext make_group_context(const GroupDescriptor& descriptor) {
  Group g = build_group(descriptor);
  ConjugacyData classes = conjugacy_classes(g);
  DegreeMultiset degrees = character_degrees(g, classes);
  const std::uint64_t D = quasirandom_degree(degrees);
  return {std::move(g), std::move(classes), std::move(degrees), D};
}

std::vector<RecurrenceReport> recurrence_trials(const GroupContext& ctx, std::size_t trials,
                                                std::uint64_t seed, std::size_t exact_max_order,
                                                std::size_t mc_samples) {
  const Group& g = ctx.group;
  const SpacePtr space = ProbabilitySpace::uniform(g.order());
  const std::string name = g.name();
  std::vector<RecurrenceReport> out;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, name, "recurrence", t);
    const Observable f1 = random_observable(space, splitmix64(trial_seed ^ 1));
    const Observable f2 = random_observable(space, splitmix64(trial_seed ^ 2));
    const Observable f3 = random_observable(space, splitmix64(trial_seed ^ 3));
    RecurrenceOptions options;
    if (g.order() > exact_max_order) {
      options.mode = EvalMode::monte_carlo;
      options.samples = mc_samples;
      options.seed = splitmix64(trial_seed ^ 4);
    }
    RecurrenceReport r = triple_recurrence_error(g, ctx.classes, ctx.D, f1, f2, f3, options);
    r.seed = trial_seed;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<VdcTrial> vdc_trials(const GroupContext& ctx, std::size_t trials, std::uint64_t seed,
                                 std::size_t exact_max_order, std::size_t pair_samples) {
  const Group& g = ctx.group;
  const SpacePtr space = ProbabilitySpace::uniform(g.order());
  const ActionTable conj = ActionTable::build(g, ActionKind::conjugation, ctx.classes);
  const std::string name = g.name();
  std::vector<VdcTrial> out;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, name, "vdc", t);
    const Observable f = random_observable(space, splitmix64(trial_seed ^ 1));
    const Observable f2 = random_observable(space, splitmix64(trial_seed ^ 2));
    const Observable f3_raw = random_observable(space, splitmix64(trial_seed ^ 3));
    const Observable f3 = f3_raw - orbit_projection(conj, f3_raw);
    VdcOptions options;
    options.exact_max_order = exact_max_order;
    options.pair_samples = pair_samples;
    options.seed = splitmix64(trial_seed ^ 4);
    VdcTrial trial;
    trial.trial = t;
    trial.seed = trial_seed;
    trial.report = vdc_check(correlation_family(g, f2, f3), f, options);
    trial.five_epsilon = 5.0 * mixing_epsilon(ctx.D);
    out.push_back(trial);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweep

SweepResult run_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult result;
  json groups_json = json::array();

  for (const auto& text : config.groups) {
    json gj;
    gj["group"] = text;
    std::optional<GroupContext> ctx;
    try {
      ctx = make_group_context(GroupDescriptor::parse(text));
    } catch (const Error& e) {
      result.failures.push_back({text, e.what()});
      gj["status"] = "error";
      gj["error"] = e.what();
      groups_json.push_back(gj);
      continue;
    }
    const Group& g = ctx->group;
    const std::string name = g.name();
    gj["group"] = name;
    gj["status"] = "ok";
    gj["order"] = g.order();
    gj["D"] = degree_json(ctx->D);
    json experiments = json::object();

    for (Experiment e : config.experiments) {
      std::vector<SweepRow> rows;
      auto base_row = [&](std::size_t trial, std::uint64_t seed) {
        SweepRow r;
        r.group = name;
        r.order = g.order();
        r.experiment = e;
        r.D = ctx->D;
        r.trial = trial;
        r.seed = seed;
        return r;
      };
      switch (e) {
        case Experiment::degrees: {
          SweepRow r = base_row(0, config.seed);
          r.epsilon = mixing_epsilon(ctx->D);
          r.pass = ctx->degrees.sum_of_squares() == g.order() &&
                   ctx->degrees.degrees.size() == ctx->classes.class_count();
          rows.push_back(r);
          break;
        }
        case Experiment::mixing: {
          for (ActionKind kind : config.actions) {
            MixingCheckOptions options;
            options.trials = config.trials;
            options.seed = config.seed;
            options.exact_max_order = config.exact_max_order;
            options.mc_samples = config.mc_samples;
            for (const auto& m : mixing_bound_check(g, ctx->classes, ctx->D, kind, options)) {
              SweepRow r = base_row(m.trial, m.seed);
              r.action = kind;
              r.mode = m.mode;
              r.samples = m.samples;
              r.epsilon = mixing_epsilon(ctx->D);
              r.bound = m.bound;
              r.measured = m.measured;
              r.ci = m.ci_halfwidth;
              r.pass = m.pass;
              rows.push_back(r);
            }
          }
          break;
        }
        case Experiment::recurrence: {
          for (const auto& rep : recurrence_trials(*ctx, config.trials, config.seed,
                                                   config.exact_max_order, config.mc_samples)) {
            SweepRow r = base_row(rows.size(), rep.seed);
            r.mode = rep.mode;
            r.samples = rep.samples;
            r.epsilon = rep.epsilon;
            r.bound = rep.bound_total;
            r.measured = rep.measured_total;
            r.bound_case_i = rep.bound_case_i;
            r.measured_case_i = rep.measured_case_i;
            r.bound_case_ii = rep.bound_case_ii;
            r.measured_case_ii = rep.measured_case_ii;
            r.pass = rep.pass && rep.decomposition_consistent() &&
                     rep.measured_case_i <= rep.bound_case_i + kBoundTolerance &&
                     rep.measured_case_ii <= rep.bound_case_ii + kBoundTolerance;
            rows.push_back(r);
          }
          break;
        }
        case Experiment::vdc: {
          const std::size_t exact_limit = std::min<std::size_t>(512, config.exact_max_order);
          for (const auto& v : vdc_trials(*ctx, config.trials, config.seed, exact_limit, config.mc_samples)) {
            SweepRow r = base_row(v.trial, v.seed);
            r.mode = v.report.exact ? EvalMode::exact : EvalMode::monte_carlo;
            r.samples = v.report.pair_samples;
            r.epsilon = mixing_epsilon(ctx->D);
            r.bound = v.report.bound;
            r.measured = v.report.rhs_integral;
            r.epsilon_lhs = v.report.epsilon_lhs;
            r.pass = v.report.pass;
            rows.push_back(r);
          }
          break;
        }
      }

      json ej;
      std::size_t passes = 0;
      double max_measured = 0.0;
      std::optional<double> min_bound;
      for (const auto& r : rows) {
        passes += r.pass;
        if (r.measured) max_measured = std::max(max_measured, *r.measured);
        if (r.bound) min_bound = min_bound ? std::min(*min_bound, *r.bound) : *r.bound;
        result.all_pass = result.all_pass && r.pass;
      }
      ej["rows"] = rows.size();
      ej["pass_count"] = passes;
      ej["max_measured"] = max_measured;
      ej["bound"] = min_bound ? json(*min_bound) : json(nullptr);
      experiments[std::string(experiment_name(e))] = ej;
      result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
    gj["experiments"] = experiments;
    groups_json.push_back(gj);
  }

  result.results_csv = csv_line(kResultsColumns);
  for (const auto& r : result.rows) result.results_csv += row_line(r);

  json summary;
  summary["master_seed"] = config.seed;
  summary["trials"] = config.trials;
  summary["all_pass"] = result.all_pass;
  summary["group_errors"] = result.failures.size();
  summary["groups"] = groups_json;
  result.summary_json = summary.dump(2) + "\n";

  if (!config.output_dir.empty()) {
    const std::filesystem::path dir(config.output_dir);
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "results.csv", std::ios::binary) << result.results_csv;
    std::ofstream(dir / "summary.json", std::ios::binary) << result.summary_json;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Plot data

std::string emit_plot_data(const std::filesystem::path& results_csv) {
  std::ifstream in(results_csv, std::ios::binary);
  if (!in) throw ConfigError("cannot read results file " + results_csv.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return plot_data_from_csv(buf.str());
}

std::string plot_data_from_csv(std::string_view text) {
  const std::string header = csv_line({"group", "order", "D", "bound", "measured_max", "measured_mean", "experiment"});
  const auto rows = parse_csv(text);
  if (rows.empty()) return header;
  const auto& head = rows.front();
  auto column = [&](const std::string& name) {
    const auto it = std::find(head.begin(), head.end(), name);
    if (it == head.end()) throw ConfigError("results file lacks column '" + name + "'");
    return static_cast<std::size_t>(it - head.begin());
  };
  const std::size_t c_group = column("group"), c_order = column("order"), c_exp = column("experiment"),
                    c_d = column("D"), c_bound = column("bound"), c_measured = column("measured");

  struct Aggregate {
    std::string group, order, D, experiment;
    double bound = INFINITY;
    double max = 0.0;
    CompensatedSum sum;
    std::size_t count = 0;
  };
  std::map<std::pair<std::string, std::string>, Aggregate> groups;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != head.size()) throw ConfigError("results row " + std::to_string(i) + " has the wrong width");
    if (r[c_measured].empty()) continue;
    auto& a = groups[{r[c_group], r[c_exp]}];
    a.group = r[c_group];
    a.order = r[c_order];
    a.D = r[c_d];
    a.experiment = r[c_exp];
    try {
      const double m = std::stod(r[c_measured]);
      if (!r[c_bound].empty()) a.bound = std::min(a.bound, std::stod(r[c_bound]));
      a.max = a.count == 0 ? m : std::max(a.max, m);
      a.sum.add(m);
      ++a.count;
    } catch (const std::exception&) {
      throw ConfigError("results row " + std::to_string(i) + " has a non-numeric value");
    }
  }

  std::vector<const Aggregate*> ordered;
  for (const auto& [key, a] : groups) ordered.push_back(&a);
  auto degree_key = [](const std::string& d) {
    return d == "inf" ? kUnboundedDegree : static_cast<std::uint64_t>(std::stoull(d));
  };
  std::stable_sort(ordered.begin(), ordered.end(), [&](const Aggregate* x, const Aggregate* y) {
    return degree_key(x->D) < degree_key(y->D);
  });

  std::string out = header;
  for (const Aggregate* a : ordered) {
    out += csv_line({a->group, a->order, a->D, std::isinf(a->bound) ? std::string() : format_double(a->bound),
                     format_double(a->max), format_double(a->sum.value() / static_cast<double>(a->count)),
                     a->experiment});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Observable serialization

std::string observable_to_json(const Observable& f) {
  json arr = json::array();
  for (const auto& z : f.values()) arr.push_back({z.real(), z.imag()});
  return arr.dump();
}

Observable observable_from_json(const SpacePtr& space, std::string_view text) {
  try {
    const json arr = json::parse(text);
    std::vector<Complex> v;
    for (const auto& z : arr) {
      if (!z.is_array() || z.size() != 2) throw ConfigError("observable entries must be [re, im] pairs");
      v.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
    return Observable(space, std::move(v));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad observable JSON: ") + e.what());
  }
}

}  // namespace qrmix
