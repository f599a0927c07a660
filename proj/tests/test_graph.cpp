#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bbsplit/errors.hpp"
#include "bbsplit/graph.hpp"
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

FlowEdge edge(EdgeId id, NodeId src, NodeId dst, double w = 1.0,
              bool comp = false) {
  return FlowEdge{id, src, dst, w, comp};
}

}  // namespace

TEST_CASE("smallest legal graph has one path") {
  auto g = build_graph({node(0, 0.0, 0), node(1, 0.0, 1)},
                       {edge(0, 0, 1, 1.0)}, {site(0), site(1)});
  REQUIRE(g.paths().size() == 1);
  CHECK(g.paths()[0] == Path{0, 1});
  CHECK(g.sources() == std::vector<NodeId>{0});
  CHECK(g.sinks() == std::vector<NodeId>{1});
}

TEST_CASE("self-cycle edges are rejected") {
  CHECK_THROWS_AS(build_graph({node(0, 0.0, 0)}, {edge(0, 0, 0)}, {site(0)}),
                  SelfCycleError);
}

TEST_CASE("dangling references are rejected") {
  CHECK_THROWS_AS(build_graph({node(0, 0.0, 0), node(1, 0.0, 1)},
                              {edge(0, 0, 7)}, {site(0), site(1)}),
                  DanglingReferenceError);
  CHECK_THROWS_AS(
      build_graph({node(0, 0.0, 9), node(1, 0.0, 1)}, {edge(0, 0, 1)},
                  {site(0), site(1)}),
      DanglingReferenceError);
}

TEST_CASE("unseeded sources and sinks are rejected") {
  CHECK_THROWS_AS(build_graph({node(0, 0.0), node(1, 0.0, 1)},
                              {edge(0, 0, 1)}, {site(0), site(1)}),
                  UnseededTerminalError);
  CHECK_THROWS_AS(build_graph({node(0, 0.0, 0), node(1, 0.0)},
                              {edge(0, 0, 1)}, {site(0), site(1)}),
                  UnseededTerminalError);
}

TEST_CASE("negative weights are rejected") {
  CHECK_THROWS_AS(build_graph({node(0, -1.0, 0), node(1, 0.0, 1)},
                              {edge(0, 0, 1)}, {site(0), site(1)}),
                  ValidationError);
  CHECK_THROWS_AS(build_graph({node(0, 0.0, 0), node(1, 0.0, 1)},
                              {edge(0, 0, 1, -0.5)}, {site(0), site(1)}),
                  ValidationError);
}

TEST_CASE("single chain enumerates one path") {
  auto g = build_graph({node(0, 0.0, 0), node(1, 1.0), node(2, 0.0, 1)},
                       {edge(0, 0, 1), edge(1, 1, 2)}, {site(0), site(1)});
  REQUIRE(g.paths().size() == 1);
  CHECK(g.paths()[0] == Path{0, 1, 2});
}

TEST_CASE("diamond enumerates two paths in lexicographic order") {
  auto g = build_graph(
      {node(0, 0.0, 0), node(1, 1.0), node(2, 1.0), node(3, 0.0, 1)},
      {edge(0, 0, 1), edge(1, 0, 2), edge(2, 1, 3), edge(3, 2, 3)},
      {site(0), site(1)});
  REQUIRE(g.paths().size() == 2);
  CHECK(g.paths()[0] == Path{0, 1, 3});
  CHECK(g.paths()[1] == Path{0, 2, 3});
}

TEST_CASE("two-cell scenario has eight paths with or without comp links") {
  ScenarioSpec spec;
  spec.n_cells = 2;
  spec.chains_per_direction = 2;

  spec.comp_enabled = false;
  auto plain = build_scenario(spec);
  CHECK(plain.paths().size() == 8);

  spec.comp_enabled = true;
  auto comp = build_scenario(spec);
  CHECK(comp.paths().size() == 8);
  CHECK(comp.paths() == plain.paths());
}

TEST_CASE("every path respects edge direction and has length >= 2") {
  ScenarioSpec spec;
  spec.n_cells = 3;
  spec.chains_per_direction = 2;
  spec.comp_enabled = true;
  auto g = build_scenario(spec);
  REQUIRE(!g.paths().empty());
  for (const Path& p : g.paths()) {
    CHECK(p.size() >= 2);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      bool found = false;
      for (const FlowEdge& e : g.edges()) {
        if (!e.comp_link && e.src == p[i] && e.dst == p[i + 1]) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("path enumeration is deterministic") {
  ScenarioSpec spec;
  spec.n_cells = 2;
  auto a = build_scenario(spec);
  auto b = build_scenario(spec);
  CHECK(a.paths() == b.paths());
  CHECK(std::is_sorted(a.paths().begin(), a.paths().end()));
}

TEST_CASE("path cap triggers PathExplosionError") {
  // Two stacked diamonds give four paths; cap at three.
  std::vector<FunctionNode> nodes;
  nodes.push_back(node(0, 0.0, 0));
  for (NodeId i = 1; i <= 5; ++i) {
    nodes.push_back(node(i, 1.0));
  }
  nodes.push_back(node(6, 0.0, 1));
  std::vector<FlowEdge> edges{
      edge(0, 0, 1), edge(1, 0, 2), edge(2, 1, 3), edge(3, 2, 3),
      edge(4, 3, 4), edge(5, 3, 5), edge(6, 4, 6), edge(7, 5, 6),
  };
  BuildOptions opts;
  opts.path_cap = 3;
  CHECK_THROWS_AS(build_graph(nodes, edges, {site(0), site(1)}, opts),
                  PathExplosionError);
  opts.path_cap = 4;
  CHECK(build_graph(nodes, edges, {site(0), site(1)}, opts).paths().size() ==
        4);
}

TEST_CASE("neighbors ignore direction") {
  auto g = build_graph({node(0, 0.0, 0), node(1, 1.0), node(2, 0.0, 1)},
                       {edge(0, 0, 1), edge(1, 1, 2)}, {site(0), site(1)});
  CHECK(g.neighbors(1) == std::vector<NodeId>{0, 2});
  CHECK(g.neighbors(0) == std::vector<NodeId>{1});
}

TEST_CASE("isolated seeded node has no neighbors") {
  auto g = build_graph({node(0, 0.0, 0), node(1, 0.0, 1), node(2, 0.0, 0)},
                       {edge(0, 0, 1)}, {site(0), site(1)});
  CHECK(g.neighbors(2).empty());
  // An isolated node is both source and sink but yields no path.
  CHECK(g.paths().size() == 1);
}

TEST_CASE("fft neighbors in the scenario are radioRX and the MIMOrx nodes") {
  ScenarioSpec spec;
  spec.n_cells = 1;
  spec.chains_per_direction = 2;
  auto g = build_scenario(spec);
  NodeId fft = 0, radio_rx = 0;
  std::vector<NodeId> mimo_rx;
  for (const FunctionNode& n : g.nodes()) {
    if (n.kind == "fft") fft = n.id;
    if (n.kind == "radioRX") radio_rx = n.id;
    if (n.kind == "MIMOrx") mimo_rx.push_back(n.id);
  }
  std::vector<NodeId> expected{radio_rx};
  expected.insert(expected.end(), mimo_rx.begin(), mimo_rx.end());
  std::sort(expected.begin(), expected.end());
  CHECK(g.neighbors(fft) == expected);
}

TEST_CASE("connection matrix is symmetric with a false diagonal") {
  ScenarioSpec spec;
  spec.n_cells = 2;
  spec.comp_enabled = true;
  auto g = build_scenario(spec);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    CHECK_FALSE(g.connected(i, i));
    for (NodeId j = 0; j < g.node_count(); ++j) {
      CHECK(g.connected(i, j) == g.connected(j, i));
    }
  }
  // Matrix agrees with the edge list.
  for (const FlowEdge& e : g.edges()) {
    CHECK(g.connected(e.src, e.dst));
  }
}

TEST_CASE("non-dense ids are rejected") {
  CHECK_THROWS_AS(build_graph({node(1, 0.0, 0)}, {}, {site(0)}),
                  ValidationError);
}
