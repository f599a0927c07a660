#pragma once

#include <cstdint>
#include <vector>

#include "bbsplit/cost_model.hpp"
#include "bbsplit/graph.hpp"
#include "bbsplit/rng.hpp"

namespace bbsplit {

struct GaConfig {
  int population_size = 20;
  double mutation_prob = 0.4;   // per free gene
  int max_generations = 500;
  int stall_generations = 100;  // stop after this many without improvement
  int elitism = 1;
  std::uint64_t rng_seed = 0;
};

struct Individual {
  ClusteringScheme scheme;
  CostBreakdown breakdown;
};

struct GenerationStats {
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
};

struct GaResult {
  Individual best;
  std::vector<GenerationStats> history;  // one entry per generation
  int generations_run = 0;
  bool converged = false;  // stopped on stall rather than generation cap
};

// Clusters a node may mutate into: the clusters currently hosting any of its
// neighbors (either edge direction). Sorted, duplicate-free.
// Throws SeedMutationError when `node` is a seed.
std::vector<ClusterId> allowed_mutation_set(const ProcessingGraph& graph,
                                            const ClusteringScheme& scheme,
                                            NodeId node);

// Random initial scheme grown from the seeds: nodes are discovered breadth
// first from the seed set and adopt a cluster drawn uniformly from their
// already-assigned neighbors. Throws UnreachableNodeError when some node has
// no path to any seed.
ClusteringScheme graph_based_init(const ProcessingGraph& graph, Rng& rng);

// Fitness-proportionate selection adapted to minimization: individual i is
// drawn with weight (worst - fitness_i + eps), eps = 1e-9 * (worst-best+1).
const Individual& roulette_select(const std::vector<Individual>& population,
                                  Rng& rng);

// Uniform crossover: every free gene copied from either parent with equal
// probability; seed genes come from the seed table.
ClusteringScheme dispersive_crossover(const ProcessingGraph& graph,
                                      const ClusteringScheme& parent_a,
                                      const ClusteringScheme& parent_b,
                                      Rng& rng);

// Each free gene mutates independently with probability mutation_prob to a
// uniform draw from its allowed mutation set, all sets taken against the
// pre-mutation scheme. Seeds never move.
ClusteringScheme graph_based_mutation(const ProcessingGraph& graph,
                                      const ClusteringScheme& scheme,
                                      double mutation_prob, Rng& rng);

// Generational GA loop: evaluate, carry the elite, refill by
// select -> crossover -> mutate. Deterministic given config.rng_seed.
GaResult run_ga(const ProcessingGraph& graph, const CostProfile& profile,
                const FitnessParams& params, const GaConfig& config);

}  // namespace bbsplit
