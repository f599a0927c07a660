#include "bbsplit/oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "bbsplit/errors.hpp"

namespace bbsplit {

namespace {

// Seed clusters reachable from each node through the connection graph.
std::vector<std::vector<ClusterId>> reachable_seed_clusters(
    const ProcessingGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<int> component(n, -1);
  std::vector<std::vector<ClusterId>> component_seeds;
  for (NodeId start = 0; start < n; ++start) {
    if (component[start] != -1) {
      continue;
    }
    const int id = static_cast<int>(component_seeds.size());
    component_seeds.emplace_back();
    std::deque<NodeId> queue{start};
    component[start] = id;
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      if (graph.is_seed(u)) {
        component_seeds[id].push_back(*graph.nodes()[u].seed_cluster);
      }
      for (NodeId v : graph.neighbors(u)) {
        if (component[v] == -1) {
          component[v] = id;
          queue.push_back(v);
        }
      }
    }
  }
  for (auto& seeds : component_seeds) {
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  }
  std::vector<std::vector<ClusterId>> per_node(n);
  for (NodeId v = 0; v < n; ++v) {
    per_node[v] = component_seeds[component[v]];
  }
  return per_node;
}

}  // namespace

OracleResult exhaustive_optimum(const ProcessingGraph& graph,
                                const CostProfile& profile,
                                const FitnessParams& params,
                                const OracleOptions& options) {
  const std::size_t n = graph.node_count();
  std::vector<NodeId> free_nodes;
  for (NodeId v = 0; v < n; ++v) {
    if (!graph.is_seed(v)) {
      free_nodes.push_back(v);
    }
  }

  std::vector<std::vector<ClusterId>> candidates(free_nodes.size());
  if (options.restrict_to_reachable_seed_clusters) {
    const auto reachable = reachable_seed_clusters(graph);
    for (std::size_t i = 0; i < free_nodes.size(); ++i) {
      candidates[i] = reachable[free_nodes[i]];
      if (candidates[i].empty()) {
        throw UnreachableNodeError(
            "node " + std::to_string(free_nodes[i]) +
            " reaches no seed cluster; cannot restrict search");
      }
    }
  } else {
    std::vector<ClusterId> all(graph.cluster_count());
    for (ClusterId c = 0; c < graph.cluster_count(); ++c) {
      all[c] = c;
    }
    candidates.assign(free_nodes.size(), all);
  }

  if (!free_nodes.empty() && graph.cluster_count() == 0) {
    throw ValidationError("graph has free nodes but no clusters");
  }
  unsigned __int128 space = 1;
  for (const auto& cand : candidates) {
    space *= cand.size();
    if (space > options.search_cap) {
      throw SearchSpaceTooLargeError(
          "assignment space exceeds cap of " +
          std::to_string(options.search_cap) + " schemes");
    }
  }

  ClusteringScheme scheme;
  scheme.assignment.assign(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (graph.is_seed(v)) {
      scheme.assignment[v] = *graph.nodes()[v].seed_cluster;
    }
  }

  OracleResult result;
  bool have_best = false;
  std::vector<std::size_t> odometer(free_nodes.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < free_nodes.size(); ++i) {
      scheme.assignment[free_nodes[i]] = candidates[i][odometer[i]];
    }
    CostBreakdown breakdown = evaluate(graph, scheme, profile, params);
    ++result.schemes_evaluated;
    // Enumeration is lexicographically ascending, so keeping only strict
    // improvements makes ties resolve to the smallest assignment vector.
    if (!have_best || breakdown.fitness < result.breakdown.fitness) {
      result.scheme = scheme;
      result.breakdown = std::move(breakdown);
      have_best = true;
    }

    // Advance the odometer, last free node fastest.
    std::size_t pos = free_nodes.size();
    while (pos > 0) {
      --pos;
      if (++odometer[pos] < candidates[pos].size()) {
        break;
      }
      odometer[pos] = 0;
      if (pos == 0) {
        return result;
      }
    }
    if (free_nodes.empty()) {
      return result;  // everything seeded: single scheme
    }
  }
}

std::vector<ParetoPoint> pareto_sweep(const ProcessingGraph& graph,
                                      const CostProfile& profile,
                                      const FitnessParams& params_base,
                                      const std::vector<double>& alphas,
                                      const OracleOptions& options) {
  std::vector<ParetoPoint> points;
  points.reserve(alphas.size());
  for (double alpha : alphas) {
    FitnessParams params = params_base;
    params.alpha = alpha;
    points.push_back(
        ParetoPoint{alpha, exhaustive_optimum(graph, profile, params, options)});
  }
  return points;
}

}  // namespace bbsplit
