#pragma once

#include <vector>

#include "bbsplit/graph.hpp"

namespace bbsplit {

// Assignment of every node to a cluster; entry k is the cluster of node k.
// This is also the chromosome of the genetic optimizer.
struct ClusteringScheme {
  std::vector<ClusterId> assignment;

  bool operator==(const ClusteringScheme&) const = default;
};

// Cost rules for locations and location pairs. Defaults reproduce the
// exponential cost tables used throughout: hosting total complexity W at a
// cell site costs 2^W (a central office hosts for free), and moving total
// bandwidth B between locations costs 4^B site-to-site or 2^B site-to-office.
struct CostProfile {
  double cell_site_comp_base = 2.0;
  double co_comp_cost = 0.0;
  double site_to_site_fh_base = 4.0;
  double site_to_co_fh_base = 2.0;
  double intra_cluster_fh_cost = 0.0;
  double co_delay = 0.0;
};

// Scalarization and penalty parameters of the fitness function.
struct FitnessParams {
  double alpha = 0.05;  // tradeoff between computational and fronthaul cost
  double beta = 10.0;   // delay penalty factor
  std::vector<double> delay_bounds;  // per path, indexed by PathId
  double comp_norm = 1.0;
  double fh_norm = 1.0;
};

struct CostBreakdown {
  double comp_total = 0.0;
  double fh_total = 0.0;
  double comp_scaled = 0.0;
  double fh_scaled = 0.0;
  std::vector<double> path_delays;
  double penalty = 0.0;
  double fitness = 0.0;
};

// Checks assignment length, cluster ids, and seed pinning.
// Throws ValidationError on violation.
void validate_scheme(const ProcessingGraph& graph,
                     const ClusteringScheme& scheme);

// Cost of hosting the nodes assigned to `cluster`. A cell site costs
// base^(sum of complexities), so an empty site costs base^0 = 1; a central
// office costs the flat co_comp_cost.
double computational_cost(const ProcessingGraph& graph,
                          const ClusteringScheme& scheme,
                          const CostProfile& profile, ClusterId cluster);

// Cost of the fronthaul link between two clusters: base^(pooled bandwidth of
// all edges crossing the pair, both directions), or 0 when nothing crosses.
// Symmetric in (cluster_i, cluster_j).
double fronthauling_cost(const ProcessingGraph& graph,
                         const ClusteringScheme& scheme,
                         const CostProfile& profile, ClusterId cluster_i,
                         ClusterId cluster_j);

// Total delay of one path: each node hosted at a cell site contributes its
// complexity times the total complexity co-located in its cluster; central
// office nodes contribute co_delay.
double path_delay(const ProcessingGraph& graph, const ClusteringScheme& scheme,
                  const CostProfile& profile, const Path& path);

// Full evaluation:
//   fitness = alpha * comp_total/comp_norm + (1-alpha) * fh_total/fh_norm
//           + beta * sum_p max(0, d(p) - D(p))
// Lower is better. Pure function of its arguments.
CostBreakdown evaluate(const ProcessingGraph& graph,
                       const ClusteringScheme& scheme,
                       const CostProfile& profile,
                       const FitnessParams& params);

// Reference placements used for normalization. Distributed: every non-seed
// node joins the cluster of the nearest cell-site seed (breadth-first over
// the connection graph, smallest cluster id on ties); centralized: every
// non-seed node at the central office. Both keep seeds pinned.
ClusteringScheme reference_distributed_scheme(const ProcessingGraph& graph);
ClusteringScheme reference_centralized_scheme(const ProcessingGraph& graph);

struct Norms {
  double comp_norm = 1.0;
  double fh_norm = 1.0;
};

// Scheme-independent normalization constants. Both scaled costs share one
// scale, max(comp of the distributed reference, fh of the costlier
// reference), so that alpha trades the raw costs against each other.
// Throws DegenerateNormError when either reference cost is zero.
Norms compute_norms(const ProcessingGraph& graph, const CostProfile& profile);

// Convenience: params with computed norms and a uniform delay bound.
FitnessParams make_fitness_params(const ProcessingGraph& graph,
                                  const CostProfile& profile, double alpha,
                                  double beta = 10.0,
                                  double uniform_delay_bound = 30.0);

}  // namespace bbsplit
