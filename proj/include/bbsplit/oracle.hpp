#pragma once

#include <cstdint>
#include <vector>

#include "bbsplit/cost_model.hpp"
#include "bbsplit/graph.hpp"

namespace bbsplit {

struct OracleOptions {
  // Largest permitted number of enumerated assignments.
  std::uint64_t search_cap = 10'000'000;
  // When set, each free node only considers the seed clusters reachable in
  // its connected component instead of every cluster.
  bool restrict_to_reachable_seed_clusters = false;
};

struct OracleResult {
  ClusteringScheme scheme;
  CostBreakdown breakdown;
  std::uint64_t schemes_evaluated = 0;
};

// Exhaustive minimum-fitness search over all assignments with seeds fixed.
// Enumeration is row-major over free nodes in id order; ties resolve to the
// lexicographically smallest assignment vector. Deliberately unoptimized so
// it can serve as ground truth for the genetic optimizer.
// Throws SearchSpaceTooLargeError when the assignment count exceeds the cap.
OracleResult exhaustive_optimum(const ProcessingGraph& graph,
                                const CostProfile& profile,
                                const FitnessParams& params,
                                const OracleOptions& options = {});

struct ParetoPoint {
  double alpha = 0.0;
  OracleResult optimum;
};

// Exact tradeoff curve: exhaustive optimum per alpha, in input order.
std::vector<ParetoPoint> pareto_sweep(const ProcessingGraph& graph,
                                      const CostProfile& profile,
                                      const FitnessParams& params_base,
                                      const std::vector<double>& alphas,
                                      const OracleOptions& options = {});

}  // namespace bbsplit
