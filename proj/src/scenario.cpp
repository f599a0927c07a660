#include "bbsplit/scenario.hpp"

#include <string>

#include "bbsplit/errors.hpp"

namespace bbsplit {

NodeTypeTable default_node_type_table() {
  return NodeTypeTable{
      {"radioTX", 0.0}, {"radioRX", 0.0},  {"fft", 1.0},
      {"ifft", 1.0},    {"MIMOtx", 0.5},   {"MIMOrx", 0.5},
      {"mod", 0.1},     {"demod", 0.1},    {"code", 0.1},
      {"decode", 2.0},  {"sourceDL", 0.0}, {"sinkUL", 0.0},
  };
}

namespace {

double lookup_weight(const NodeTypeTable& table, const std::string& kind) {
  auto it = table.find(kind);
  if (it == table.end()) {
    throw ValidationError("node type table has no entry for '" + kind + "'");
  }
  return it->second;
}

}  // namespace

ProcessingGraph build_scenario(const ScenarioSpec& spec,
                               const NodeTypeTable& node_table) {
  if (spec.n_cells < 1) {
    throw ValidationError("n_cells must be >= 1");
  }
  if (spec.chains_per_direction < 1) {
    throw ValidationError("chains_per_direction must be >= 1");
  }
  if (!(spec.link_scale > 0.0)) {
    throw ValidationError("link_scale must be positive");
  }

  const int cells = spec.n_cells;
  const int chains = spec.chains_per_direction;
  const double s = spec.link_scale;

  std::vector<Cluster> clusters;
  for (int c = 0; c < cells; ++c) {
    clusters.push_back(Cluster{static_cast<ClusterId>(c), ClusterKind::CellSite,
                               "site" + std::to_string(c + 1)});
  }
  const ClusterId co = static_cast<ClusterId>(cells);
  clusters.push_back(Cluster{co, ClusterKind::CentralOffice, "central_office"});

  std::vector<FunctionNode> nodes;
  std::vector<FlowEdge> edges;
  auto add_node = [&](const std::string& kind,
                      std::optional<ClusterId> seed) -> NodeId {
    NodeId id = static_cast<NodeId>(nodes.size());
    nodes.push_back(FunctionNode{id, kind, lookup_weight(node_table, kind), seed});
    return id;
  };
  auto add_edge = [&](NodeId src, NodeId dst, double w, bool comp = false) {
    EdgeId id = static_cast<EdgeId>(edges.size());
    edges.push_back(FlowEdge{id, src, dst, w * s, comp});
  };

  // Link weights: radio samples carry 1.0; after CP and control overhead
  // removal (10%) each chain carries 0.45; (de)modulation maps 30-bit
  // samples to 4-bit codewords, 0.45 * 4/30 = 0.06; information bits at the
  // source/sink side carry 0.03.
  const double w_radio = 1.0;
  const double w_chain = 0.45;
  const double w_coded = 0.06;
  const double w_info = 0.03;

  std::vector<std::vector<NodeId>> mimo_tx(cells), mimo_rx(cells);
  for (int c = 0; c < cells; ++c) {
    const ClusterId site = static_cast<ClusterId>(c);

    // Downlink
    NodeId source_dl = add_node("sourceDL", co);
    std::vector<NodeId> code_n(chains), mod_n(chains), tx_n(chains);
    for (int k = 0; k < chains; ++k) {
      code_n[k] = add_node("code", std::nullopt);
    }
    for (int k = 0; k < chains; ++k) {
      mod_n[k] = add_node("mod", std::nullopt);
    }
    for (int k = 0; k < chains; ++k) {
      tx_n[k] = add_node("MIMOtx", std::nullopt);
    }
    NodeId ifft = add_node("ifft", std::nullopt);
    NodeId radio_tx = add_node("radioTX", site);

    // Uplink
    NodeId radio_rx = add_node("radioRX", site);
    NodeId fft = add_node("fft", std::nullopt);
    std::vector<NodeId> rx_n(chains), demod_n(chains), decode_n(chains);
    for (int k = 0; k < chains; ++k) {
      rx_n[k] = add_node("MIMOrx", std::nullopt);
    }
    for (int k = 0; k < chains; ++k) {
      demod_n[k] = add_node("demod", std::nullopt);
    }
    for (int k = 0; k < chains; ++k) {
      decode_n[k] = add_node("decode", std::nullopt);
    }
    NodeId sink_ul = add_node("sinkUL", co);

    for (int k = 0; k < chains; ++k) {
      add_edge(source_dl, code_n[k], w_info);
      add_edge(code_n[k], mod_n[k], w_coded);
      add_edge(mod_n[k], tx_n[k], w_chain);
      add_edge(tx_n[k], ifft, w_chain);
    }
    add_edge(ifft, radio_tx, w_radio);
    add_edge(radio_rx, fft, w_radio);
    for (int k = 0; k < chains; ++k) {
      add_edge(fft, rx_n[k], w_chain);
      add_edge(rx_n[k], demod_n[k], w_chain);
      add_edge(demod_n[k], decode_n[k], w_coded);
      add_edge(decode_n[k], sink_ul, w_info);
    }

    mimo_tx[c] = tx_n;
    mimo_rx[c] = rx_n;
  }

  if (spec.comp_enabled && cells >= 2) {
    // Cyclic cooperation links: downlink on the second chain (or the only
    // one), uplink on the first; same weight as the MIMO-FFT links.
    const int dl_chain = chains >= 2 ? 1 : 0;
    const int ul_chain = 0;
    for (int c = 0; c < cells; ++c) {
      const int next = (c + 1) % cells;
      add_edge(mimo_tx[c][dl_chain], mimo_tx[next][dl_chain], w_chain, true);
      add_edge(mimo_rx[c][ul_chain], mimo_rx[next][ul_chain], w_chain, true);
    }
  }

  return build_graph(std::move(nodes), std::move(edges), std::move(clusters));
}

ProcessingGraph build_scenario(const ScenarioSpec& spec) {
  return build_scenario(spec, default_node_type_table());
}

ProcessingGraph small_oracle_scenario() {
  ScenarioSpec spec;
  spec.n_cells = 1;
  spec.chains_per_direction = 1;
  spec.comp_enabled = false;
  spec.link_scale = 1.0;
  return build_scenario(spec);
}

}  // namespace bbsplit
