// bbsplit: place baseband processing functions across cell sites and a
// central office by clustering a weighted processing graph.
//
// Subcommands: solve, sweep-alpha, sweep-delay, compare-comp, oracle,
// gen-scenario. Exit codes: 0 success, 2 flag/validation error,
// 3 runtime/computation error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbsplit/errors.hpp"
#include "bbsplit/experiments.hpp"
#include "bbsplit/ga.hpp"
#include "bbsplit/oracle.hpp"
#include "bbsplit/scenario.hpp"
#include "bbsplit/scenario_io.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace bbsplit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

// Errors caused by what the user handed us map to the usage exit code.
bool is_input_error(const Error& e) {
  return dynamic_cast<const ValidationError*>(&e) != nullptr ||
         dynamic_cast<const ScenarioParseError*>(&e) != nullptr ||
         dynamic_cast<const SelfCycleError*>(&e) != nullptr ||
         dynamic_cast<const DanglingReferenceError*>(&e) != nullptr ||
         dynamic_cast<const UnseededTerminalError*>(&e) != nullptr;
}

struct CommonOptions {
  std::string scenario_path;
  double alpha = 0.05;
  double delay_bound = 30.0;
  double beta = 10.0;
  int runs = 10;
  std::uint64_t master_seed = 1;
  int population = 20;
  int generations = 500;
  int stall = 100;
  double mutation_prob = 0.4;
  int threads = 0;
  std::string out_path;
};

void add_ga_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--beta", opt.beta, "Delay penalty factor (> 1)")
      ->check(CLI::Range(1.0 + 1e-9, 1e9));
  cmd->add_option("--population", opt.population, "GA population size")
      ->check(CLI::Range(2, 100000));
  cmd->add_option("--generations", opt.generations, "GA generation cap")
      ->check(CLI::Range(1, 1000000));
  cmd->add_option("--stall", opt.stall,
                  "Stop after this many generations without improvement")
      ->check(CLI::Range(1, 1000000));
  cmd->add_option("--mutation-prob", opt.mutation_prob,
                  "Per-gene mutation probability")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--master-seed", opt.master_seed, "Master random seed");
  cmd->add_option("--threads", opt.threads,
                  "Worker threads (0 = hardware concurrency)")
      ->check(CLI::Range(0, 1024));
}

ExperimentConfig make_experiment_config(const CommonOptions& opt) {
  ExperimentConfig config;
  config.ga.population_size = opt.population;
  config.ga.max_generations = opt.generations;
  config.ga.stall_generations = opt.stall;
  config.ga.mutation_prob = opt.mutation_prob;
  config.beta = opt.beta;
  config.master_seed = opt.master_seed;
  config.runs = opt.runs;
  config.threads = opt.threads;
  return config;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot open output file: " + path);
  }
  out << content;
  if (!out) {
    throw Error("failed while writing: " + path);
  }
}

// Writes to the file when a path is set, otherwise to stdout.
void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file(out_path, content);
  }
}

json breakdown_to_json(const CostBreakdown& breakdown) {
  json j;
  j["comp_total"] = breakdown.comp_total;
  j["fh_total"] = breakdown.fh_total;
  j["comp_scaled"] = breakdown.comp_scaled;
  j["fh_scaled"] = breakdown.fh_scaled;
  j["penalty"] = breakdown.penalty;
  j["fitness"] = breakdown.fitness;
  j["path_delays"] = breakdown.path_delays;
  return j;
}

int cmd_solve(const CommonOptions& opt) {
  auto graph = load_scenario_file(opt.scenario_path);
  CostProfile profile;
  FitnessParams params =
      make_fitness_params(graph, profile, opt.alpha, opt.beta, opt.delay_bound);
  GaConfig ga;
  ga.population_size = opt.population;
  ga.max_generations = opt.generations;
  ga.stall_generations = opt.stall;
  ga.mutation_prob = opt.mutation_prob;
  ga.rng_seed = derive_run_seed(opt.master_seed, "solve", 0, 0);
  auto result = run_ga(graph, profile, params, ga);

  json doc;
  doc["alpha"] = opt.alpha;
  doc["delay_bound"] = opt.delay_bound;
  doc["beta"] = opt.beta;
  doc["rng_seed"] = ga.rng_seed;
  doc["generations_run"] = result.generations_run;
  doc["converged"] = result.converged;
  doc["breakdown"] = breakdown_to_json(result.best.breakdown);
  doc["assignment"] = result.best.scheme.assignment;
  emit(opt.out_path, doc.dump(2) + "\n");
  return kExitOk;
}

int cmd_oracle(const CommonOptions& opt, bool restrict_candidates,
               std::uint64_t cap) {
  auto graph = load_scenario_file(opt.scenario_path);
  CostProfile profile;
  FitnessParams params =
      make_fitness_params(graph, profile, opt.alpha, opt.beta, opt.delay_bound);
  OracleOptions options;
  options.restrict_to_reachable_seed_clusters = restrict_candidates;
  options.search_cap = cap;
  auto result = exhaustive_optimum(graph, profile, params, options);

  json doc;
  doc["alpha"] = opt.alpha;
  doc["delay_bound"] = opt.delay_bound;
  doc["schemes_evaluated"] = result.schemes_evaluated;
  doc["breakdown"] = breakdown_to_json(result.breakdown);
  doc["assignment"] = result.scheme.assignment;
  emit(opt.out_path, doc.dump(2) + "\n");
  return kExitOk;
}

// Output prefix helpers: "<prefix>_rows.csv" and friends.
std::string with_suffix(const std::string& prefix, const std::string& name) {
  return prefix.empty() ? name : prefix + "_" + name;
}

bool has_comp_links(const ProcessingGraph& graph) {
  for (const FlowEdge& e : graph.edges()) {
    if (e.comp_link) {
      return true;
    }
  }
  return false;
}

std::vector<std::pair<std::string, std::vector<NodeStat>>> stats_per_key(
    const ProcessingGraph& graph, const std::vector<SweepRow>& rows,
    double SweepRow::* key_of) {
  std::vector<std::pair<std::string, std::vector<NodeStat>>> groups;
  std::vector<double> keys;
  for (const SweepRow& row : rows) {
    if (std::find(keys.begin(), keys.end(), row.*key_of) == keys.end()) {
      keys.push_back(row.*key_of);
    }
  }
  for (double key : keys) {
    std::vector<SweepRow> group;
    for (const SweepRow& row : rows) {
      if (row.*key_of == key) {
        group.push_back(row);
      }
    }
    groups.emplace_back(format_double(key), centralization_stats(graph, group));
  }
  return groups;
}

int cmd_sweep_alpha(const CommonOptions& opt,
                    const std::vector<double>& alphas) {
  auto graph = load_scenario_file(opt.scenario_path);
  auto config = make_experiment_config(opt);
  const auto grid = alphas.empty() ? default_alpha_grid() : alphas;
  for (double a : grid) {
    if (a < 0.0 || a > 1.0) {
      throw ValidationError("alpha values must lie in [0, 1]");
    }
  }
  auto rows = sweep_alpha(graph, "sweep_alpha", grid, opt.delay_bound,
                          has_comp_links(graph), config);
  write_file(with_suffix(opt.out_path, "rows.csv"), rows_csv(rows));
  write_file(with_suffix(opt.out_path, "means.csv"),
             means_csv("alpha", mean_costs_by_key(rows, &SweepRow::alpha)));
  write_file(
      with_suffix(opt.out_path, "stats.csv"),
      stats_csv("alpha", stats_per_key(graph, rows, &SweepRow::alpha)));

  json summary;
  summary["experiment"] = "sweep_alpha";
  summary["scenario"] = opt.scenario_path;
  summary["alphas"] = grid;
  summary["delay_bound"] = opt.delay_bound;
  summary["runs"] = opt.runs;
  summary["master_seed"] = opt.master_seed;
  summary["rows"] = rows.size();
  write_file(with_suffix(opt.out_path, "summary.json"), summary.dump(2) + "\n");
  return kExitOk;
}

int cmd_sweep_delay(const CommonOptions& opt,
                    const std::vector<double>& delays) {
  auto graph = load_scenario_file(opt.scenario_path);
  auto config = make_experiment_config(opt);
  const auto grid = delays.empty() ? default_delay_grid() : delays;
  for (double d : grid) {
    if (!(d > 0.0)) {
      throw ValidationError("delay bounds must be positive");
    }
  }
  auto rows = sweep_delay(graph, "sweep_delay", grid, opt.alpha,
                          has_comp_links(graph), config);
  write_file(with_suffix(opt.out_path, "rows.csv"), rows_csv(rows));
  write_file(
      with_suffix(opt.out_path, "means.csv"),
      means_csv("delay_bound", mean_costs_by_key(rows, &SweepRow::delay_bound)));
  write_file(with_suffix(opt.out_path, "stats.csv"),
             stats_csv("delay_bound",
                       stats_per_key(graph, rows, &SweepRow::delay_bound)));

  json summary;
  summary["experiment"] = "sweep_delay";
  summary["scenario"] = opt.scenario_path;
  summary["alpha"] = opt.alpha;
  summary["delay_bounds"] = grid;
  summary["runs"] = opt.runs;
  summary["master_seed"] = opt.master_seed;
  summary["rows"] = rows.size();
  write_file(with_suffix(opt.out_path, "summary.json"), summary.dump(2) + "\n");
  return kExitOk;
}

int cmd_compare_comp(const CommonOptions& opt, int cells, int chains,
                     double link_scale) {
  ScenarioSpec spec;
  spec.n_cells = cells;
  spec.chains_per_direction = chains;
  spec.link_scale = link_scale;

  spec.comp_enabled = false;
  auto plain = build_scenario(spec);
  spec.comp_enabled = true;
  auto comp = build_scenario(spec);

  auto config = make_experiment_config(opt);
  // Same experiment id on both variants: paired randomness run by run.
  auto plain_rows = sweep_alpha(plain, "compare_comp", {opt.alpha},
                                opt.delay_bound, false, config);
  auto comp_rows = sweep_alpha(comp, "compare_comp", {opt.alpha},
                               opt.delay_bound, true, config);

  std::vector<SweepRow> all_rows = plain_rows;
  all_rows.insert(all_rows.end(), comp_rows.begin(), comp_rows.end());
  write_file(with_suffix(opt.out_path, "rows.csv"), rows_csv(all_rows));
  write_file(with_suffix(opt.out_path, "stats.csv"),
             stats_csv("variant",
                       {{"without_comp", centralization_stats(plain, plain_rows)},
                        {"with_comp", centralization_stats(comp, comp_rows)}}));

  json summary;
  summary["alpha"] = opt.alpha;
  summary["delay_bound"] = opt.delay_bound;
  summary["runs"] = opt.runs;
  summary["without_comp"]["mean_central_fraction"] =
      mean_central_fraction(plain, plain_rows);
  summary["with_comp"]["mean_central_fraction"] =
      mean_central_fraction(comp, comp_rows);
  write_file(with_suffix(opt.out_path, "summary.json"),
             summary.dump(2) + "\n");
  return kExitOk;
}

int cmd_gen_scenario(const std::string& out_path, int cells, int chains,
                     bool comp, double link_scale) {
  ScenarioSpec spec;
  spec.n_cells = cells;
  spec.chains_per_direction = chains;
  spec.comp_enabled = comp;
  spec.link_scale = link_scale;
  auto graph = build_scenario(spec);
  emit(out_path, write_scenario(graph));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Baseband function splitting and placement via graph "
               "clustering"};
  app.require_subcommand(1);

  CommonOptions opt;

  auto* solve = app.add_subcommand("solve", "Run one GA optimization");
  solve->add_option("--scenario", opt.scenario_path, "Scenario file")
      ->required();
  solve->add_option("--alpha", opt.alpha, "Tradeoff coefficient in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  solve->add_option("--delay-bound", opt.delay_bound,
                    "Uniform per-path delay bound")
      ->check(CLI::Range(1e-9, 1e12));
  solve->add_option("--out", opt.out_path, "Output path (default: stdout)");
  add_ga_flags(solve, opt);

  std::vector<double> alphas;
  auto* sweep_a = app.add_subcommand(
      "sweep-alpha", "GA sweep over alpha (default 30 points in [0.01, 0.3])");
  sweep_a->add_option("--scenario", opt.scenario_path, "Scenario file")
      ->required();
  sweep_a->add_option("--alphas", alphas,
                      "Explicit alpha grid (comma separated)")
      ->delimiter(',');
  sweep_a->add_option("--delay-bound", opt.delay_bound,
                      "Uniform per-path delay bound")
      ->check(CLI::Range(1e-9, 1e12));
  sweep_a->add_option("--runs", opt.runs, "Runs per grid point")
      ->check(CLI::Range(1, 100000));
  sweep_a
      ->add_option("--out", opt.out_path,
                   "Output prefix for _rows/_means/_stats.csv")
      ->required();
  add_ga_flags(sweep_a, opt);

  std::vector<double> delays;
  auto* sweep_d = app.add_subcommand(
      "sweep-delay", "GA sweep over delay bounds (default 1..20)");
  sweep_d->add_option("--scenario", opt.scenario_path, "Scenario file")
      ->required();
  sweep_d->add_option("--delays", delays,
                      "Explicit delay grid (comma separated)")
      ->delimiter(',');
  sweep_d->add_option("--alpha", opt.alpha, "Tradeoff coefficient in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  sweep_d->add_option("--runs", opt.runs, "Runs per grid point")
      ->check(CLI::Range(1, 100000));
  sweep_d
      ->add_option("--out", opt.out_path,
                   "Output prefix for _rows/_means/_stats.csv")
      ->required();
  add_ga_flags(sweep_d, opt);

  int cells = 2, chains = 2;
  double link_scale = 1.0;
  auto* compare = app.add_subcommand(
      "compare-comp", "Paired runs with and without cooperation links");
  compare->add_option("--cells", cells, "Number of cells")
      ->check(CLI::Range(1, 64));
  compare->add_option("--chains", chains, "Chains per direction")
      ->check(CLI::Range(1, 64));
  compare->add_option("--link-scale", link_scale, "Base link weight scale")
      ->check(CLI::Range(1e-12, 1e12));
  compare->add_option("--alpha", opt.alpha, "Tradeoff coefficient in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  compare->add_option("--delay-bound", opt.delay_bound,
                      "Uniform per-path delay bound")
      ->check(CLI::Range(1e-9, 1e12));
  compare->add_option("--runs", opt.runs, "Paired runs")
      ->check(CLI::Range(1, 100000));
  compare
      ->add_option("--out", opt.out_path,
                   "Output prefix for _rows/_stats.csv and _summary.json")
      ->required();
  add_ga_flags(compare, opt);

  bool restrict_candidates = false;
  std::uint64_t oracle_cap = 10'000'000;
  auto* oracle = app.add_subcommand(
      "oracle", "Exhaustive optimum on a small scenario");
  oracle->add_option("--scenario", opt.scenario_path, "Scenario file")
      ->required();
  oracle->add_option("--alpha", opt.alpha, "Tradeoff coefficient in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  oracle->add_option("--delay-bound", opt.delay_bound,
                     "Uniform per-path delay bound")
      ->check(CLI::Range(1e-9, 1e12));
  oracle->add_option("--beta", opt.beta, "Delay penalty factor (> 1)")
      ->check(CLI::Range(1.0 + 1e-9, 1e9));
  oracle->add_flag("--restrict", restrict_candidates,
                   "Limit candidates to reachable seed clusters");
  oracle->add_option("--cap", oracle_cap, "Assignment count cap");
  oracle->add_option("--out", opt.out_path, "Output path (default: stdout)");

  bool gen_comp = false;
  auto* gen = app.add_subcommand("gen-scenario",
                                 "Write a generated scenario file");
  gen->add_option("--cells", cells, "Number of cells")
      ->check(CLI::Range(1, 64));
  gen->add_option("--chains", chains, "Chains per direction")
      ->check(CLI::Range(1, 64));
  gen->add_flag("--comp", gen_comp, "Add cooperation cross-links");
  gen->add_option("--link-scale", link_scale, "Base link weight scale")
      ->check(CLI::Range(1e-12, 1e12));
  gen->add_option("--out", opt.out_path, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(opt);
    }
    if (sweep_a->parsed()) {
      return cmd_sweep_alpha(opt, alphas);
    }
    if (sweep_d->parsed()) {
      return cmd_sweep_delay(opt, delays);
    }
    if (compare->parsed()) {
      return cmd_compare_comp(opt, cells, chains, link_scale);
    }
    if (oracle->parsed()) {
      return cmd_oracle(opt, restrict_candidates, oracle_cap);
    }
    if (gen->parsed()) {
      return cmd_gen_scenario(opt.out_path, cells, chains, gen_comp,
                              link_scale);
    }
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e) ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
