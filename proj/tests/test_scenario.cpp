#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "bbsplit/errors.hpp"
#include "bbsplit/scenario.hpp"

using namespace bbsplit;

namespace {

const FunctionNode& find_node(const ProcessingGraph& g, const std::string& kind,
                              std::size_t occurrence = 0) {
  std::size_t seen = 0;
  for (const FunctionNode& n : g.nodes()) {
    if (n.kind == kind) {
      if (seen == occurrence) {
        return n;
      }
      ++seen;
    }
  }
  throw std::runtime_error("node kind not found: " + kind);
}

double edge_weight(const ProcessingGraph& g, const std::string& src_kind,
                   const std::string& dst_kind) {
  for (const FlowEdge& e : g.edges()) {
    if (g.nodes()[e.src].kind == src_kind && g.nodes()[e.dst].kind == dst_kind) {
      return e.bandwidth;
    }
  }
  throw std::runtime_error("edge not found: " + src_kind + "->" + dst_kind);
}

}  // namespace

TEST_CASE("node type defaults match the reference weights") {
  auto table = default_node_type_table();
  CHECK(table.at("radioTX") == 0.0);
  CHECK(table.at("radioRX") == 0.0);
  CHECK(table.at("fft") == 1.0);
  CHECK(table.at("ifft") == 1.0);
  CHECK(table.at("MIMOtx") == 0.5);
  CHECK(table.at("MIMOrx") == 0.5);
  CHECK(table.at("mod") == 0.1);
  CHECK(table.at("demod") == 0.1);
  CHECK(table.at("code") == 0.1);
  CHECK(table.at("decode") == 2.0);
  CHECK(table.at("sourceDL") == 0.0);
  CHECK(table.at("sinkUL") == 0.0);
}

TEST_CASE("two-cell scenario shape") {
  ScenarioSpec spec;
  spec.n_cells = 2;
  spec.chains_per_direction = 2;
  auto g = build_scenario(spec);

  // 18 nodes per cell: 4 seeds, fft/ifft, and 3 per chain per direction.
  CHECK(g.node_count() == 36);
  CHECK(g.paths().size() == 8);
  CHECK(g.cluster_count() == 3);

  std::size_t offices = 0;
  for (const Cluster& c : g.clusters()) {
    if (c.kind == ClusterKind::CentralOffice) {
      ++offices;
    }
  }
  CHECK(offices == 1);

  // Per-cell complexity adds up to 8.6.
  double total = 0.0;
  for (const FunctionNode& n : g.nodes()) {
    total += n.complexity;
  }
  CHECK(total == doctest::Approx(2 * 8.6).epsilon(1e-12));
}

TEST_CASE("seed placement follows the reference setup") {
  ScenarioSpec spec;
  spec.n_cells = 2;
  auto g = build_scenario(spec);
  ClusterId co = 2;
  for (const FunctionNode& n : g.nodes()) {
    if (n.kind == "radioTX" || n.kind == "radioRX") {
      REQUIRE(n.seed_cluster.has_value());
      CHECK(g.clusters()[*n.seed_cluster].kind == ClusterKind::CellSite);
    } else if (n.kind == "sourceDL" || n.kind == "sinkUL") {
      REQUIRE(n.seed_cluster.has_value());
      CHECK(*n.seed_cluster == co);
    } else {
      CHECK_FALSE(n.seed_cluster.has_value());
    }
  }
  // The two cells' radio front-ends sit at different sites.
  CHECK(*find_node(g, "radioTX", 0).seed_cluster == 0);
  CHECK(*find_node(g, "radioTX", 1).seed_cluster == 1);
}

TEST_CASE("link weights match the reference figure") {
  ScenarioSpec spec;
  spec.n_cells = 1;
  auto g = build_scenario(spec);
  CHECK(edge_weight(g, "radioRX", "fft") == doctest::Approx(1.0));
  CHECK(edge_weight(g, "ifft", "radioTX") == doctest::Approx(1.0));
  CHECK(edge_weight(g, "fft", "MIMOrx") == doctest::Approx(0.45));
  CHECK(edge_weight(g, "MIMOrx", "demod") == doctest::Approx(0.45));
  CHECK(edge_weight(g, "mod", "MIMOtx") == doctest::Approx(0.45));
  CHECK(edge_weight(g, "MIMOtx", "ifft") == doctest::Approx(0.45));
  // 30-bit samples to 4-bit codewords: 0.45 * 4/30.
  CHECK(edge_weight(g, "demod", "decode") ==
        doctest::Approx(0.45 * 4.0 / 30.0).epsilon(1e-12));
  CHECK(edge_weight(g, "code", "mod") == doctest::Approx(0.06));
  CHECK(edge_weight(g, "sourceDL", "code") == doctest::Approx(0.03));
  CHECK(edge_weight(g, "decode", "sinkUL") == doctest::Approx(0.03));
}

TEST_CASE("link_scale scales every edge weight") {
  ScenarioSpec plain;
  plain.n_cells = 2;
  ScenarioSpec scaled = plain;
  scaled.link_scale = 2.0;
  auto a = build_scenario(plain);
  auto b = build_scenario(scaled);
  REQUIRE(a.edges().size() == b.edges().size());
  for (std::size_t i = 0; i < a.edges().size(); ++i) {
    CHECK(b.edges()[i].bandwidth ==
          doctest::Approx(2.0 * a.edges()[i].bandwidth));
  }
}

TEST_CASE("comp links form mutual pairs for two cells") {
  ScenarioSpec spec;
  spec.n_cells = 2;
  spec.comp_enabled = true;
  auto g = build_scenario(spec);

  std::vector<const FlowEdge*> comp_edges;
  for (const FlowEdge& e : g.edges()) {
    if (e.comp_link) {
      comp_edges.push_back(&e);
    }
  }
  REQUIRE(comp_edges.size() == 4);  // 2 * n_cells
  for (const FlowEdge* e : comp_edges) {
    CHECK(e->bandwidth == doctest::Approx(0.45));
    const std::string kind = g.nodes()[e->src].kind;
    CHECK(g.nodes()[e->dst].kind == kind);
    CHECK((kind == "MIMOtx" || kind == "MIMOrx"));
    // Every comp edge has its mirror.
    bool mirrored = false;
    for (const FlowEdge* other : comp_edges) {
      if (other->src == e->dst && other->dst == e->src) {
        mirrored = true;
        break;
      }
    }
    CHECK(mirrored);
  }
}

TEST_CASE("comp links form a cycle for three cells") {
  ScenarioSpec spec;
  spec.n_cells = 3;
  spec.comp_enabled = true;
  auto g = build_scenario(spec);
  std::size_t comp_count = 0;
  for (const FlowEdge& e : g.edges()) {
    if (e.comp_link) {
      ++comp_count;
    }
  }
  CHECK(comp_count == 6);  // 2 * n_cells
}

TEST_CASE("comp flag with a single cell produces no comp edges") {
  ScenarioSpec spec;
  spec.n_cells = 1;
  spec.comp_enabled = true;
  auto g = build_scenario(spec);
  for (const FlowEdge& e : g.edges()) {
    CHECK_FALSE(e.comp_link);
  }
}

TEST_CASE("small oracle scenario shape") {
  auto g = small_oracle_scenario();
  CHECK(g.node_count() == 12);
  CHECK(g.paths().size() == 2);
  CHECK(g.cluster_count() == 2);
  std::size_t free_nodes = 0;
  for (const FunctionNode& n : g.nodes()) {
    if (!n.seed_cluster) {
      ++free_nodes;
    }
  }
  CHECK(free_nodes == 8);  // 2^8 = 256 assignments
}

TEST_CASE("invalid specs are rejected") {
  ScenarioSpec spec;
  spec.n_cells = 0;
  CHECK_THROWS_AS(build_scenario(spec), ValidationError);
  spec.n_cells = 1;
  spec.chains_per_direction = 0;
  CHECK_THROWS_AS(build_scenario(spec), ValidationError);
  spec.chains_per_direction = 1;
  spec.link_scale = 0.0;
  CHECK_THROWS_AS(build_scenario(spec), ValidationError);
}

TEST_CASE("missing node type entry is reported") {
  NodeTypeTable table = default_node_type_table();
  table.erase("decode");
  ScenarioSpec spec;
  spec.n_cells = 1;
  CHECK_THROWS_AS(build_scenario(spec, table), ValidationError);
}
