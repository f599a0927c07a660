#include "bbsplit/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "bbsplit/errors.hpp"

namespace bbsplit {

namespace {

void validate_profile(const CostProfile& profile) {
  if (profile.cell_site_comp_base <= 1.0 || profile.site_to_site_fh_base <= 1.0 ||
      profile.site_to_co_fh_base <= 1.0) {
    throw ValidationError("cost bases must be > 1");
  }
}

void validate_params(const ProcessingGraph& graph, const FitnessParams& params) {
  if (params.alpha < 0.0 || params.alpha > 1.0) {
    throw ValidationError("alpha must lie in [0, 1]");
  }
  if (params.beta <= 1.0) {
    throw ValidationError("beta must be > 1");
  }
  if (params.comp_norm <= 0.0 || params.fh_norm <= 0.0) {
    throw ValidationError("norms must be positive; call compute_norms first");
  }
  if (params.delay_bounds.size() != graph.paths().size()) {
    throw ValidationError("delay_bounds must have one entry per path");
  }
  for (double bound : params.delay_bounds) {
    if (!(bound > 0.0)) {
      throw ValidationError("delay bounds must be positive");
    }
  }
}

std::vector<double> cluster_weights(const ProcessingGraph& graph,
                                    const ClusteringScheme& scheme) {
  std::vector<double> weights(graph.cluster_count(), 0.0);
  for (const FunctionNode& node : graph.nodes()) {
    weights[scheme.assignment[node.id]] += node.complexity;
  }
  return weights;
}

}  // namespace

void validate_scheme(const ProcessingGraph& graph,
                     const ClusteringScheme& scheme) {
  if (scheme.assignment.size() != graph.node_count()) {
    throw ValidationError("scheme length does not match node count");
  }
  for (const FunctionNode& node : graph.nodes()) {
    ClusterId c = scheme.assignment[node.id];
    if (c >= graph.cluster_count()) {
      throw ValidationError("node " + std::to_string(node.id) +
                            " assigned to unknown cluster " +
                            std::to_string(c));
    }
    if (node.seed_cluster && *node.seed_cluster != c) {
      throw ValidationError("seed node " + std::to_string(node.id) +
                            " moved away from its seed cluster");
    }
  }
}

double computational_cost(const ProcessingGraph& graph,
                          const ClusteringScheme& scheme,
                          const CostProfile& profile, ClusterId cluster) {
  if (graph.clusters()[cluster].kind == ClusterKind::CentralOffice) {
    return profile.co_comp_cost;
  }
  double total = 0.0;
  for (const FunctionNode& node : graph.nodes()) {
    if (scheme.assignment[node.id] == cluster) {
      total += node.complexity;
    }
  }
  return std::pow(profile.cell_site_comp_base, total);
}

double fronthauling_cost(const ProcessingGraph& graph,
                         const ClusteringScheme& scheme,
                         const CostProfile& profile, ClusterId cluster_i,
                         ClusterId cluster_j) {
  if (cluster_i == cluster_j) {
    return profile.intra_cluster_fh_cost;
  }
  double pooled = 0.0;
  for (const FlowEdge& e : graph.edges()) {
    ClusterId a = scheme.assignment[e.src];
    ClusterId b = scheme.assignment[e.dst];
    if ((a == cluster_i && b == cluster_j) ||
        (a == cluster_j && b == cluster_i)) {
      pooled += e.bandwidth;
    }
  }
  if (pooled <= 0.0) {
    return 0.0;  // unused fronthaul link costs nothing
  }
  const bool both_sites =
      graph.clusters()[cluster_i].kind == ClusterKind::CellSite &&
      graph.clusters()[cluster_j].kind == ClusterKind::CellSite;
  const double base =
      both_sites ? profile.site_to_site_fh_base : profile.site_to_co_fh_base;
  return std::pow(base, pooled);
}

double path_delay(const ProcessingGraph& graph, const ClusteringScheme& scheme,
                  const CostProfile& profile, const Path& path) {
  std::vector<double> weights = cluster_weights(graph, scheme);
  double delay = 0.0;
  for (NodeId v : path) {
    ClusterId c = scheme.assignment[v];
    if (graph.clusters()[c].kind == ClusterKind::CentralOffice) {
      delay += profile.co_delay;
    } else {
      delay += graph.nodes()[v].complexity * weights[c];
    }
  }
  return delay;
}

CostBreakdown evaluate(const ProcessingGraph& graph,
                       const ClusteringScheme& scheme,
                       const CostProfile& profile,
                       const FitnessParams& params) {
  validate_profile(profile);
  validate_params(graph, params);
  validate_scheme(graph, scheme);

  const std::size_t k = graph.cluster_count();
  const std::vector<double> weights = cluster_weights(graph, scheme);

  CostBreakdown out;
  for (ClusterId c = 0; c < k; ++c) {
    if (graph.clusters()[c].kind == ClusterKind::CentralOffice) {
      out.comp_total += profile.co_comp_cost;
    } else {
      out.comp_total += std::pow(profile.cell_site_comp_base, weights[c]);
    }
  }

  // Pool crossing bandwidth per unordered cluster pair, then price each
  // pair once.
  std::vector<double> pooled(k * k, 0.0);
  for (const FlowEdge& e : graph.edges()) {
    ClusterId a = scheme.assignment[e.src];
    ClusterId b = scheme.assignment[e.dst];
    if (a == b) {
      continue;
    }
    ClusterId lo = std::min(a, b), hi = std::max(a, b);
    pooled[static_cast<std::size_t>(lo) * k + hi] += e.bandwidth;
  }
  for (ClusterId i = 0; i < k; ++i) {
    for (ClusterId j = i + 1; j < k; ++j) {
      double b = pooled[static_cast<std::size_t>(i) * k + j];
      if (b <= 0.0) {
        continue;
      }
      const bool both_sites =
          graph.clusters()[i].kind == ClusterKind::CellSite &&
          graph.clusters()[j].kind == ClusterKind::CellSite;
      out.fh_total += std::pow(both_sites ? profile.site_to_site_fh_base
                                          : profile.site_to_co_fh_base,
                               b);
    }
  }

  out.path_delays.reserve(graph.paths().size());
  for (std::size_t p = 0; p < graph.paths().size(); ++p) {
    double delay = 0.0;
    for (NodeId v : graph.paths()[p]) {
      ClusterId c = scheme.assignment[v];
      if (graph.clusters()[c].kind == ClusterKind::CentralOffice) {
        delay += profile.co_delay;
      } else {
        delay += graph.nodes()[v].complexity * weights[c];
      }
    }
    out.path_delays.push_back(delay);
    out.penalty += std::max(0.0, delay - params.delay_bounds[p]);
  }

  out.comp_scaled = out.comp_total / params.comp_norm;
  out.fh_scaled = out.fh_total / params.fh_norm;
  out.fitness = params.alpha * out.comp_scaled +
                (1.0 - params.alpha) * out.fh_scaled +
                params.beta * out.penalty;
  return out;
}

ClusteringScheme reference_distributed_scheme(const ProcessingGraph& graph) {
  const std::size_t n = graph.node_count();
  constexpr ClusterId kUnassigned = std::numeric_limits<ClusterId>::max();
  ClusteringScheme scheme;
  scheme.assignment.assign(n, kUnassigned);

  // Multi-source BFS from cell-site seeds; each node adopts the cluster of
  // the nearest one. Ties resolve to the first reached in id order.
  std::deque<NodeId> queue;
  for (NodeId v = 0; v < n; ++v) {
    const auto& seed = graph.nodes()[v].seed_cluster;
    if (seed && graph.clusters()[*seed].kind == ClusterKind::CellSite) {
      scheme.assignment[v] = *seed;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : graph.neighbors(u)) {
      if (scheme.assignment[v] == kUnassigned && !graph.is_seed(v)) {
        scheme.assignment[v] = scheme.assignment[u];
        queue.push_back(v);
      }
    }
  }

  // Seeds keep their pinned cluster; anything out of reach of a cell-site
  // seed falls back to the central office.
  ClusterId co = kUnassigned;
  for (const Cluster& c : graph.clusters()) {
    if (c.kind == ClusterKind::CentralOffice) {
      co = c.id;
      break;
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    const auto& seed = graph.nodes()[v].seed_cluster;
    if (seed) {
      scheme.assignment[v] = *seed;
    } else if (scheme.assignment[v] == kUnassigned) {
      if (co == kUnassigned) {
        throw DegenerateNormError(
            "node " + std::to_string(v) +
            " reaches no cell-site seed and no central office exists");
      }
      scheme.assignment[v] = co;
    }
  }
  return scheme;
}

ClusteringScheme reference_centralized_scheme(const ProcessingGraph& graph) {
  ClusterId co = std::numeric_limits<ClusterId>::max();
  for (const Cluster& c : graph.clusters()) {
    if (c.kind == ClusterKind::CentralOffice) {
      co = c.id;
      break;
    }
  }
  if (co == std::numeric_limits<ClusterId>::max()) {
    return reference_distributed_scheme(graph);
  }
  ClusteringScheme scheme;
  scheme.assignment.assign(graph.node_count(), co);
  for (const FunctionNode& node : graph.nodes()) {
    if (node.seed_cluster) {
      scheme.assignment[node.id] = *node.seed_cluster;
    }
  }
  return scheme;
}

Norms compute_norms(const ProcessingGraph& graph, const CostProfile& profile) {
  validate_profile(profile);
  const ClusteringScheme distributed = reference_distributed_scheme(graph);
  const ClusteringScheme centralized = reference_centralized_scheme(graph);

  auto raw_costs = [&](const ClusteringScheme& scheme) {
    double comp = 0.0, fh = 0.0;
    for (ClusterId c = 0; c < graph.cluster_count(); ++c) {
      comp += computational_cost(graph, scheme, profile, c);
    }
    for (ClusterId i = 0; i < graph.cluster_count(); ++i) {
      for (ClusterId j = i + 1; j < graph.cluster_count(); ++j) {
        fh += fronthauling_cost(graph, scheme, profile, i, j);
      }
    }
    return std::pair<double, double>{comp, fh};
  };

  const auto [comp_dist, fh_dist] = raw_costs(distributed);
  const auto [comp_cent, fh_cent] = raw_costs(centralized);
  (void)comp_cent;
  const double comp_ref = comp_dist;
  const double fh_ref = std::max(fh_dist, fh_cent);
  if (comp_ref <= 0.0) {
    throw DegenerateNormError("computational reference cost is zero");
  }
  if (fh_ref <= 0.0) {
    throw DegenerateNormError("fronthauling reference cost is zero");
  }
  // One shared scale keeps the two cost terms commensurate, so alpha trades
  // raw cost against raw cost.
  const double joint = std::max(comp_ref, fh_ref);
  return Norms{joint, joint};
}

FitnessParams make_fitness_params(const ProcessingGraph& graph,
                                  const CostProfile& profile, double alpha,
                                  double beta, double uniform_delay_bound) {
  const Norms norms = compute_norms(graph, profile);
  FitnessParams params;
  params.alpha = alpha;
  params.beta = beta;
  params.delay_bounds.assign(graph.paths().size(), uniform_delay_bound);
  params.comp_norm = norms.comp_norm;
  params.fh_norm = norms.fh_norm;
  return params;
}

}  // namespace bbsplit
