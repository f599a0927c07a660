#include "bbsplit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "bbsplit/errors.hpp"
#include "bbsplit/rng.hpp"

namespace bbsplit {

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

struct GridPoint {
  double alpha = 0.0;
  double delay_bound = 0.0;
};

// Runs the GA once per (grid point, run) pair, in parallel, and returns rows
// in (grid index, run index) order.
std::vector<SweepRow> run_grid(const ProcessingGraph& graph,
                               const std::string& experiment_id,
                               const std::vector<GridPoint>& grid,
                               bool comp_enabled,
                               const ExperimentConfig& config) {
  if (config.runs < 1) {
    throw ValidationError("runs must be >= 1");
  }
  if (grid.empty()) {
    throw ValidationError("parameter grid must not be empty");
  }
  const Norms norms = compute_norms(graph, config.profile);

  const std::size_t total = grid.size() * static_cast<std::size_t>(config.runs);
  std::vector<SweepRow> rows(total);

  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t index = cursor.fetch_add(1);
      if (index >= total) {
        return;
      }
      try {
        const std::size_t grid_index = index / config.runs;
        const int run_index = static_cast<int>(index % config.runs);
        const GridPoint& point = grid[grid_index];

        FitnessParams params;
        params.alpha = point.alpha;
        params.beta = config.beta;
        params.delay_bounds.assign(graph.paths().size(), point.delay_bound);
        params.comp_norm = norms.comp_norm;
        params.fh_norm = norms.fh_norm;

        GaConfig ga = config.ga;
        ga.rng_seed = derive_run_seed(config.master_seed, experiment_id,
                                      grid_index, run_index);
        const GaResult result = run_ga(graph, config.profile, params, ga);

        SweepRow& row = rows[index];
        row.experiment_id = experiment_id;
        row.alpha = point.alpha;
        row.delay_bound = point.delay_bound;
        row.comp_enabled = comp_enabled;
        row.run_index = run_index;
        row.rng_seed = ga.rng_seed;
        row.comp_total = result.best.breakdown.comp_total;
        row.fh_total = result.best.breakdown.fh_total;
        row.comp_scaled = result.best.breakdown.comp_scaled;
        row.fh_scaled = result.best.breakdown.fh_scaled;
        row.penalty = result.best.breakdown.penalty;
        row.fitness = result.best.breakdown.fitness;
        const auto& delays = result.best.breakdown.path_delays;
        row.max_path_delay =
            delays.empty() ? 0.0 : *std::max_element(delays.begin(), delays.end());
        row.assignment = result.best.scheme.assignment;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        cursor.store(total);  // drain remaining work
        return;
      }
    }
  };

  unsigned thread_count = config.threads > 0
                              ? static_cast<unsigned>(config.threads)
                              : std::thread::hardware_concurrency();
  thread_count = std::max(1u, std::min<unsigned>(thread_count, total));
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) {
      pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return rows;
}

}  // namespace

std::uint64_t derive_run_seed(std::uint64_t master_seed,
                              const std::string& experiment_id,
                              std::size_t grid_index, int run_index) {
  std::uint64_t state = splitmix64(master_seed);
  state = splitmix64(state ^ fnv1a(experiment_id));
  state = splitmix64(state ^ static_cast<std::uint64_t>(grid_index));
  state = splitmix64(state ^ static_cast<std::uint64_t>(run_index));
  return state;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  grid.reserve(30);
  for (int i = 1; i <= 30; ++i) {
    grid.push_back(static_cast<double>(i) / 100.0);
  }
  return grid;
}

std::vector<double> default_delay_grid() {
  std::vector<double> grid;
  grid.reserve(20);
  for (int d = 1; d <= 20; ++d) {
    grid.push_back(static_cast<double>(d));
  }
  return grid;
}

std::vector<SweepRow> sweep_alpha(const ProcessingGraph& graph,
                                  const std::string& experiment_id,
                                  const std::vector<double>& alphas,
                                  double delay_bound, bool comp_enabled,
                                  const ExperimentConfig& config) {
  std::vector<GridPoint> grid;
  grid.reserve(alphas.size());
  for (double alpha : alphas) {
    grid.push_back(GridPoint{alpha, delay_bound});
  }
  return run_grid(graph, experiment_id, grid, comp_enabled, config);
}

std::vector<SweepRow> sweep_delay(const ProcessingGraph& graph,
                                  const std::string& experiment_id,
                                  const std::vector<double>& delays,
                                  double alpha, bool comp_enabled,
                                  const ExperimentConfig& config) {
  std::vector<GridPoint> grid;
  grid.reserve(delays.size());
  for (double delay : delays) {
    grid.push_back(GridPoint{alpha, delay});
  }
  return run_grid(graph, experiment_id, grid, comp_enabled, config);
}

std::vector<NodeStat> centralization_stats(const ProcessingGraph& graph,
                                           const std::vector<SweepRow>& rows) {
  if (rows.empty()) {
    throw ValidationError("centralization_stats needs at least one row");
  }
  std::vector<NodeStat> stats;
  for (const FunctionNode& node : graph.nodes()) {
    if (node.seed_cluster) {
      continue;
    }
    std::size_t at_site = 0;
    for (const SweepRow& row : rows) {
      ClusterId c = row.assignment[node.id];
      if (graph.clusters()[c].kind == ClusterKind::CellSite) {
        ++at_site;
      }
    }
    stats.push_back(NodeStat{node.id, node.kind,
                             static_cast<double>(at_site) /
                                 static_cast<double>(rows.size())});
  }
  return stats;
}

double mean_central_fraction(const ProcessingGraph& graph,
                             const std::vector<SweepRow>& rows) {
  std::size_t free_count = 0;
  for (const FunctionNode& node : graph.nodes()) {
    if (!node.seed_cluster) {
      ++free_count;
    }
  }
  if (free_count == 0 || rows.empty()) {
    return 0.0;
  }
  return mean_central_count(graph, rows) / static_cast<double>(free_count);
}

double mean_central_count(const ProcessingGraph& graph,
                          const std::vector<SweepRow>& rows) {
  if (rows.empty()) {
    return 0.0;
  }
  double total = 0.0;
  for (const SweepRow& row : rows) {
    for (const FunctionNode& node : graph.nodes()) {
      if (node.seed_cluster) {
        continue;
      }
      if (graph.clusters()[row.assignment[node.id]].kind ==
          ClusterKind::CentralOffice) {
        total += 1.0;
      }
    }
  }
  return total / static_cast<double>(rows.size());
}

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) {
    throw Error("failed to format double");
  }
  return std::string(buffer, ptr);
}

std::string rows_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "experiment_id,alpha,delay_bound,comp_enabled,run_index,rng_seed,"
         "comp_total,fh_total,comp_scaled,fh_scaled,penalty,fitness,"
         "max_path_delay,assignment\n";
  for (const SweepRow& row : rows) {
    out << row.experiment_id << ',' << format_double(row.alpha) << ','
        << format_double(row.delay_bound) << ',' << (row.comp_enabled ? 1 : 0)
        << ',' << row.run_index << ',' << row.rng_seed << ','
        << format_double(row.comp_total) << ',' << format_double(row.fh_total)
        << ',' << format_double(row.comp_scaled) << ','
        << format_double(row.fh_scaled) << ',' << format_double(row.penalty)
        << ',' << format_double(row.fitness) << ','
        << format_double(row.max_path_delay) << ',';
    for (std::size_t i = 0; i < row.assignment.size(); ++i) {
      if (i > 0) {
        out << ';';
      }
      out << row.assignment[i];
    }
    out << '\n';
  }
  return out.str();
}

std::vector<MeanCosts> mean_costs_by_key(const std::vector<SweepRow>& rows,
                                         double SweepRow::* key_of) {
  std::vector<MeanCosts> means;
  std::vector<std::size_t> counts;
  for (const SweepRow& row : rows) {
    const double key = row.*key_of;
    std::size_t slot = means.size();
    for (std::size_t i = 0; i < means.size(); ++i) {
      if (means[i].key == key) {
        slot = i;
        break;
      }
    }
    if (slot == means.size()) {
      means.push_back(MeanCosts{key, 0.0, 0.0});
      counts.push_back(0);
    }
    means[slot].mean_comp_total += row.comp_total;
    means[slot].mean_fh_total += row.fh_total;
    counts[slot]++;
  }
  for (std::size_t i = 0; i < means.size(); ++i) {
    means[i].mean_comp_total /= static_cast<double>(counts[i]);
    means[i].mean_fh_total /= static_cast<double>(counts[i]);
  }
  return means;
}

std::string means_csv(const std::string& key_name,
                      const std::vector<MeanCosts>& means) {
  std::ostringstream out;
  out << key_name << ",mean_comp_total,mean_fh_total\n";
  for (const MeanCosts& m : means) {
    out << format_double(m.key) << ',' << format_double(m.mean_comp_total)
        << ',' << format_double(m.mean_fh_total) << '\n';
  }
  return out.str();
}

std::string stats_csv(
    const std::string& key_name,
    const std::vector<std::pair<std::string, std::vector<NodeStat>>>& groups) {
  std::ostringstream out;
  out << key_name << ",node_id,kind,p_cell_site\n";
  for (const auto& [label, stats] : groups) {
    for (const NodeStat& stat : stats) {
      out << label << ',' << stat.node_id << ',' << stat.kind << ','
          << format_double(stat.p_cell_site) << '\n';
    }
  }
  return out.str();
}

}  // namespace bbsplit
