#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbsplit/cost_model.hpp"
#include "bbsplit/ga.hpp"
#include "bbsplit/graph.hpp"

namespace bbsplit {

// Shared knobs for experiment drivers.
struct ExperimentConfig {
  GaConfig ga;  // rng_seed is ignored; per-run seeds are derived
  CostProfile profile;
  double beta = 10.0;
  std::uint64_t master_seed = 1;
  int runs = 10;
  int threads = 0;  // 0 = hardware concurrency
};

// One optimization outcome: a parameter point times a run index.
struct SweepRow {
  std::string experiment_id;
  double alpha = 0.0;
  double delay_bound = 0.0;
  bool comp_enabled = false;
  int run_index = 0;
  std::uint64_t rng_seed = 0;
  double comp_total = 0.0;
  double fh_total = 0.0;
  double comp_scaled = 0.0;
  double fh_scaled = 0.0;
  double penalty = 0.0;
  double fitness = 0.0;
  double max_path_delay = 0.0;
  std::vector<ClusterId> assignment;
};

// Per-node probability of being hosted at a cell site, over a set of rows.
// Seed nodes are skipped: their location is fixed.
struct NodeStat {
  NodeId node_id = 0;
  std::string kind;
  double p_cell_site = 0.0;
};

// Seed for (experiment, grid point, run). Identical inputs give identical
// seeds, so paired experiments that share an experiment id also share
// randomness run by run.
std::uint64_t derive_run_seed(std::uint64_t master_seed,
                              const std::string& experiment_id,
                              std::size_t grid_index, int run_index);

// 30 evenly spaced points covering [0.01, 0.3].
std::vector<double> default_alpha_grid();

// Integer thresholds 1..20.
std::vector<double> default_delay_grid();

// One GA optimization per (alpha, run). Rows come back ordered by
// (grid index, run index) regardless of execution interleaving.
std::vector<SweepRow> sweep_alpha(const ProcessingGraph& graph,
                                  const std::string& experiment_id,
                                  const std::vector<double>& alphas,
                                  double delay_bound, bool comp_enabled,
                                  const ExperimentConfig& config);

// One GA optimization per (delay bound, run) at fixed alpha.
std::vector<SweepRow> sweep_delay(const ProcessingGraph& graph,
                                  const std::string& experiment_id,
                                  const std::vector<double>& delays,
                                  double alpha, bool comp_enabled,
                                  const ExperimentConfig& config);

// Centralization statistics over a row group (callers group by alpha,
// delay bound, or scenario variant).
std::vector<NodeStat> centralization_stats(const ProcessingGraph& graph,
                                           const std::vector<SweepRow>& rows);

// Mean over rows of the fraction of non-seed nodes at the central office.
double mean_central_fraction(const ProcessingGraph& graph,
                             const std::vector<SweepRow>& rows);

// Mean over rows of the count of non-seed nodes at the central office.
double mean_central_count(const ProcessingGraph& graph,
                          const std::vector<SweepRow>& rows);

// Shortest round-trip decimal representation, '.' decimal point.
std::string format_double(double value);

// CSV emission. Fixed column order, header row, UTF-8, deterministic bytes.
std::string rows_csv(const std::vector<SweepRow>& rows);

struct MeanCosts {
  double key = 0.0;
  double mean_comp_total = 0.0;
  double mean_fh_total = 0.0;
};

// Group rows by grid key in first-appearance order and average the raw
// costs per group. key_of selects alpha or delay_bound.
std::vector<MeanCosts> mean_costs_by_key(const std::vector<SweepRow>& rows,
                                         double SweepRow::* key_of);

std::string means_csv(const std::string& key_name,
                      const std::vector<MeanCosts>& means);

// Stats CSV: one block of node rows per group label.
std::string stats_csv(
    const std::string& key_name,
    const std::vector<std::pair<std::string, std::vector<NodeStat>>>& groups);

}  // namespace bbsplit
