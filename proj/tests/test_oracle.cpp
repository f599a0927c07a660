#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "bbsplit/errors.hpp"
#include "bbsplit/oracle.hpp"
#include "bbsplit/scenario.hpp"

using namespace bbsplit;

namespace {

Cluster site(ClusterId id) {
  return Cluster{id, ClusterKind::CellSite, "site" + std::to_string(id)};
}
Cluster office(ClusterId id) {
  return Cluster{id, ClusterKind::CentralOffice, "co"};
}

FunctionNode node(NodeId id, double weight,
                  std::optional<ClusterId> seed = std::nullopt) {
  return FunctionNode{id, "custom", weight, seed};
}

FlowEdge edge(EdgeId id, NodeId src, NodeId dst, double w = 1.0) {
  return FlowEdge{id, src, dst, w, false};
}

// Independent re-enumeration used to cross-check the oracle: recursive
// descent instead of the odometer, tracking the minimum fitness only.
double recursive_min_fitness(const ProcessingGraph& g,
                             const CostProfile& profile,
                             const FitnessParams& params,
                             ClusteringScheme& scheme,
                             const std::vector<NodeId>& free_nodes,
                             std::size_t depth) {
  if (depth == free_nodes.size()) {
    return evaluate(g, scheme, profile, params).fitness;
  }
  double best = std::numeric_limits<double>::infinity();
  for (ClusterId c = 0; c < g.cluster_count(); ++c) {
    scheme.assignment[free_nodes[depth]] = c;
    best = std::min(best, recursive_min_fitness(g, profile, params, scheme,
                                                free_nodes, depth + 1));
  }
  return best;
}

}  // namespace

TEST_CASE("oracle agrees with an independent enumeration") {
  auto g = small_oracle_scenario();
  CostProfile profile;
  FitnessParams params = make_fitness_params(g, profile, 0.1);
  auto result = exhaustive_optimum(g, profile, params);
  CHECK(result.schemes_evaluated == 256);

  std::vector<NodeId> free_nodes;
  ClusteringScheme scheme;
  scheme.assignment.assign(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.is_seed(v)) {
      scheme.assignment[v] = *g.nodes()[v].seed_cluster;
    } else {
      free_nodes.push_back(v);
    }
  }
  const double expected = recursive_min_fitness(g, profile, params, scheme,
                                                free_nodes, 0);
  CHECK(result.breakdown.fitness == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("oracle optimum is no worse than any other scheme") {
  auto g = small_oracle_scenario();
  CostProfile profile;
  FitnessParams params = make_fitness_params(g, profile, 0.3);
  auto result = exhaustive_optimum(g, profile, params);
  auto check = [&](const ClusteringScheme& scheme) {
    CHECK(result.breakdown.fitness <=
          evaluate(g, scheme, profile, params).fitness + 1e-15);
  };
  check(reference_distributed_scheme(g));
  check(reference_centralized_scheme(g));
}

TEST_CASE("fully seeded graph yields the single fixed scheme") {
  auto g = build_graph({node(0, 1.0, 0), node(1, 1.0, 1)},
                       {edge(0, 0, 1, 0.5)}, {site(0), office(1)});
  CostProfile profile;
  FitnessParams params = make_fitness_params(g, profile, 0.5);
  auto result = exhaustive_optimum(g, profile, params);
  CHECK(result.schemes_evaluated == 1);
  CHECK(result.scheme.assignment == std::vector<ClusterId>{0, 1});
}

TEST_CASE("search cap rejects the full two-cell scenario") {
  ScenarioSpec spec;
  spec.n_cells = 2;
  auto g = build_scenario(spec);
  CostProfile profile;
  FitnessParams params = make_fitness_params(g, profile, 0.1);
  // 28 free nodes over 3 clusters.
  CHECK_THROWS_AS(exhaustive_optimum(g, profile, params),
                  SearchSpaceTooLargeError);
}

TEST_CASE("ties break to the lexicographically smallest assignment") {
  // Zero weights everywhere: every scheme has identical fitness, except that
  // norms need nonzero references, so give the seeds tiny complexity and one
  // crossing edge.
  auto g = build_graph(
      {node(0, 0.1, 0), node(1, 0.0), node(2, 0.0), node(3, 0.1, 1)},
      {edge(0, 0, 1, 0.2), edge(1, 1, 3, 0.2), edge(2, 0, 2, 0.2),
       edge(3, 2, 3, 0.2)},
      {site(0), office(1)});
  CostProfile profile;
  FitnessParams params = make_fitness_params(g, profile, 0.5);
  auto result = exhaustive_optimum(g, profile, params);
  // Nodes 1 and 2 are weightless; all placements cost the same fronthaul?
  // Not quite: crossing depends on placement, so just assert the reported
  // optimum is the first one in enumeration order among equals.
  ClusteringScheme probe = result.scheme;
  for (ClusterId c1 = 0; c1 < 2; ++c1) {
    for (ClusterId c2 = 0; c2 < 2; ++c2) {
      probe.assignment[1] = c1;
      probe.assignment[2] = c2;
      const double fitness = evaluate(g, probe, profile, params).fitness;
      if (fitness < result.breakdown.fitness - 1e-15) {
        FAIL("found better scheme than oracle");
      }
      if (std::abs(fitness - result.breakdown.fitness) <= 1e-15) {
        // The oracle's pick must not be lexicographically larger.
        CHECK(result.scheme.assignment <= probe.assignment);
      }
    }
  }
}

TEST_CASE("restriction limits candidates to reachable seed clusters") {
  auto g = small_oracle_scenario();
  CostProfile profile;
  FitnessParams params = make_fitness_params(g, profile, 0.1);
  OracleOptions restricted;
  restricted.restrict_to_reachable_seed_clusters = true;
  auto full = exhaustive_optimum(g, profile, params);
  auto lean = exhaustive_optimum(g, profile, params, restricted);
  // Both clusters are seed clusters here, so the outcome is identical.
  CHECK(full.breakdown.fitness == lean.breakdown.fitness);
  CHECK(full.scheme == lean.scheme);
}

TEST_CASE("pareto sweep returns one optimum per alpha in order") {
  auto g = small_oracle_scenario();
  CostProfile profile;
  FitnessParams params = make_fitness_params(g, profile, 0.0);
  std::vector<double> alphas{0.0, 0.05, 0.1, 0.2, 0.3};
  auto points = pareto_sweep(g, profile, params, alphas);
  REQUIRE(points.size() == 5);
  for (std::size_t i = 0; i < points.size(); ++i) {
    CHECK(points[i].alpha == alphas[i]);
  }
  // Scalarization monotonicity: computational cost of the optimum cannot
  // rise with alpha, fronthauling cost cannot fall.
  for (std::size_t i = 1; i < points.size(); ++i) {
    CHECK(points[i].optimum.breakdown.comp_scaled <=
          points[i - 1].optimum.breakdown.comp_scaled + 1e-12);
    CHECK(points[i].optimum.breakdown.fh_scaled >=
          points[i - 1].optimum.breakdown.fh_scaled - 1e-12);
  }
}

TEST_CASE("alpha zero optimum ignores the computational term") {
  auto g = small_oracle_scenario();
  CostProfile profile;
  FitnessParams params = make_fitness_params(g, profile, 0.0);
  auto result = exhaustive_optimum(g, profile, params);
  CHECK(result.breakdown.fitness ==
        doctest::Approx(result.breakdown.fh_scaled +
                        params.beta * result.breakdown.penalty)
            .epsilon(1e-12));
}
