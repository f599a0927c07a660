#include "bbsplit/ga.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "bbsplit/errors.hpp"

namespace bbsplit {

std::vector<ClusterId> allowed_mutation_set(const ProcessingGraph& graph,
                                            const ClusteringScheme& scheme,
                                            NodeId node) {
  if (graph.is_seed(node)) {
    throw SeedMutationError("node " + std::to_string(node) +
                            " is a seed and cannot mutate");
  }
  std::vector<ClusterId> out;
  for (NodeId j : graph.neighbors(node)) {
    out.push_back(scheme.assignment[j]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ClusteringScheme graph_based_init(const ProcessingGraph& graph, Rng& rng) {
  const std::size_t n = graph.node_count();
  constexpr ClusterId kUnassigned = std::numeric_limits<ClusterId>::max();
  ClusteringScheme scheme;
  scheme.assignment.assign(n, kUnassigned);

  std::deque<NodeId> queue;
  for (NodeId v = 0; v < n; ++v) {
    if (graph.is_seed(v)) {
      scheme.assignment[v] = *graph.nodes()[v].seed_cluster;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : graph.neighbors(u)) {
      if (scheme.assignment[v] != kUnassigned) {
        continue;
      }
      // Sample among the clusters of the neighbors assigned so far.
      std::vector<ClusterId> choices;
      for (NodeId w : graph.neighbors(v)) {
        if (scheme.assignment[w] != kUnassigned) {
          choices.push_back(scheme.assignment[w]);
        }
      }
      std::sort(choices.begin(), choices.end());
      choices.erase(std::unique(choices.begin(), choices.end()),
                    choices.end());
      scheme.assignment[v] = choices[rng.next_below(choices.size())];
      queue.push_back(v);
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (scheme.assignment[v] == kUnassigned) {
      throw UnreachableNodeError("node " + std::to_string(v) +
                                 " has no path to any seed");
    }
  }
  return scheme;
}

const Individual& roulette_select(const std::vector<Individual>& population,
                                  Rng& rng) {
  if (population.empty()) {
    throw ValidationError("roulette_select on empty population");
  }
  double worst = -std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (const Individual& ind : population) {
    worst = std::max(worst, ind.breakdown.fitness);
    best = std::min(best, ind.breakdown.fitness);
  }
  const double eps = 1e-9 * (worst - best + 1.0);
  double total = 0.0;
  for (const Individual& ind : population) {
    total += worst - ind.breakdown.fitness + eps;
  }
  const double ticket = rng.next_unit() * total;
  double cumulative = 0.0;
  for (const Individual& ind : population) {
    cumulative += worst - ind.breakdown.fitness + eps;
    if (ticket < cumulative) {
      return ind;
    }
  }
  return population.back();  // guard against rounding at the top end
}

ClusteringScheme dispersive_crossover(const ProcessingGraph& graph,
                                      const ClusteringScheme& parent_a,
                                      const ClusteringScheme& parent_b,
                                      Rng& rng) {
  const std::size_t n = graph.node_count();
  ClusteringScheme child;
  child.assignment.resize(n);
  for (NodeId k = 0; k < n; ++k) {
    if (graph.is_seed(k)) {
      child.assignment[k] = *graph.nodes()[k].seed_cluster;
    } else {
      child.assignment[k] =
          rng.next_bool() ? parent_a.assignment[k] : parent_b.assignment[k];
    }
  }
  return child;
}

ClusteringScheme graph_based_mutation(const ProcessingGraph& graph,
                                      const ClusteringScheme& scheme,
                                      double mutation_prob, Rng& rng) {
  ClusteringScheme out = scheme;
  for (NodeId k = 0; k < graph.node_count(); ++k) {
    if (graph.is_seed(k)) {
      continue;
    }
    if (rng.next_unit() >= mutation_prob) {
      continue;
    }
    // Allowed set against the pre-mutation scheme.
    std::vector<ClusterId> allowed = allowed_mutation_set(graph, scheme, k);
    if (allowed.empty()) {
      continue;  // isolated node, nothing to adopt
    }
    out.assignment[k] = allowed[rng.next_below(allowed.size())];
  }
  return out;
}

GaResult run_ga(const ProcessingGraph& graph, const CostProfile& profile,
                const FitnessParams& params, const GaConfig& config) {
  if (config.population_size < 2) {
    throw ValidationError("population_size must be >= 2");
  }
  if (config.elitism < 0 || config.elitism >= config.population_size) {
    throw ValidationError("elitism must lie in [0, population_size)");
  }
  if (config.mutation_prob < 0.0 || config.mutation_prob > 1.0) {
    throw ValidationError("mutation_prob must lie in [0, 1]");
  }
  if (config.max_generations < 1 || config.stall_generations < 1) {
    throw ValidationError("generation limits must be positive");
  }

  Rng rng(config.rng_seed);
  auto make_individual = [&](ClusteringScheme scheme) {
    CostBreakdown breakdown = evaluate(graph, scheme, profile, params);
    return Individual{std::move(scheme), std::move(breakdown)};
  };

  std::vector<Individual> population;
  population.reserve(config.population_size);
  for (int i = 0; i < config.population_size; ++i) {
    population.push_back(make_individual(graph_based_init(graph, rng)));
  }

  GaResult result;
  auto generation_best = [&]() -> const Individual& {
    const Individual* best = &population.front();
    for (const Individual& ind : population) {
      if (ind.breakdown.fitness < best->breakdown.fitness) {
        best = &ind;
      }
    }
    return *best;
  };
  auto record_generation = [&]() {
    double sum = 0.0;
    for (const Individual& ind : population) {
      sum += ind.breakdown.fitness;
    }
    result.history.push_back(GenerationStats{
        generation_best().breakdown.fitness,
        sum / static_cast<double>(population.size())});
  };

  result.best = generation_best();
  record_generation();

  int stall = 0;
  for (int gen = 1; gen < config.max_generations; ++gen) {
    if (stall >= config.stall_generations) {
      result.converged = true;
      break;
    }

    // Elite carries over unchanged; stable sort keeps ties deterministic.
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return population[a].breakdown.fitness <
                              population[b].breakdown.fitness;
                     });
    std::vector<Individual> next;
    next.reserve(config.population_size);
    for (int e = 0; e < config.elitism; ++e) {
      next.push_back(population[order[e]]);
    }
    while (static_cast<int>(next.size()) < config.population_size) {
      const Individual& parent_a = roulette_select(population, rng);
      const Individual& parent_b = roulette_select(population, rng);
      ClusteringScheme child =
          dispersive_crossover(graph, parent_a.scheme, parent_b.scheme, rng);
      child = graph_based_mutation(graph, child, config.mutation_prob, rng);
      next.push_back(make_individual(std::move(child)));
    }
    population = std::move(next);

    const double previous_best = result.best.breakdown.fitness;
    const Individual& now_best = generation_best();
    if (now_best.breakdown.fitness < previous_best) {
      result.best = now_best;
    }
    if (previous_best - now_best.breakdown.fitness > 1e-12) {
      stall = 0;
    } else {
      ++stall;
    }
    record_generation();
  }

  result.generations_run = static_cast<int>(result.history.size());
  return result;
}

}  // namespace bbsplit
