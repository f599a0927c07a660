#include "bbsplit/graph.hpp"

#include <algorithm>
#include <cmath>

#include "bbsplit/errors.hpp"

namespace bbsplit {

const std::vector<NodeId>& ProcessingGraph::neighbors(NodeId node) const {
  if (node >= nodes_.size()) {
    throw DanglingReferenceError("neighbors: unknown node id " +
                                 std::to_string(node));
  }
  return adjacency_[node];
}

namespace {

void check_weight(double w, const std::string& what) {
  if (!std::isfinite(w) || w < 0.0) {
    throw ValidationError(what + " must be a finite non-negative number");
  }
}

// Depth-first enumeration of simple paths over the non-comp edge subgraph.
// A path is recorded only when it reaches a true sink (no outbound edges of
// any kind); a dead end caused by skipping comp links records nothing.
// Out-neighbors are visited in ascending node-id order, which together with
// ascending source order yields the lexicographic path ordering.
void walk_paths(NodeId node, const std::vector<std::vector<NodeId>>& out,
                const std::vector<char>& is_sink, std::vector<char>& on_path,
                Path& current, std::vector<Path>& result,
                std::size_t path_cap) {
  if (is_sink[node]) {
    if (current.size() >= 2) {
      if (result.size() >= path_cap) {
        throw PathExplosionError("path enumeration exceeded cap of " +
                                 std::to_string(path_cap));
      }
      result.push_back(current);
    }
    return;
  }
  for (NodeId next : out[node]) {
    if (on_path[next]) {
      continue;  // simple paths only
    }
    on_path[next] = 1;
    current.push_back(next);
    walk_paths(next, out, is_sink, on_path, current, result, path_cap);
    current.pop_back();
    on_path[next] = 0;
  }
}

}  // namespace

std::vector<Path> enumerate_paths(const std::vector<FunctionNode>& nodes,
                                  const std::vector<FlowEdge>& edges,
                                  std::size_t path_cap) {
  const std::size_t n = nodes.size();
  std::vector<std::vector<NodeId>> out(n);
  std::vector<std::size_t> in_degree(n, 0), out_degree(n, 0);
  for (const FlowEdge& e : edges) {
    out_degree[e.src]++;
    in_degree[e.dst]++;
    if (!e.comp_link) {
      out[e.src].push_back(e.dst);
    }
  }
  for (auto& adj : out) {
    std::sort(adj.begin(), adj.end());
  }
  std::vector<char> is_sink(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    is_sink[v] = out_degree[v] == 0 ? 1 : 0;
  }

  std::vector<Path> result;
  std::vector<char> on_path(n, 0);
  for (NodeId s = 0; s < n; ++s) {
    if (in_degree[s] != 0) {
      continue;
    }
    Path current{s};
    on_path[s] = 1;
    walk_paths(s, out, is_sink, on_path, current, result, path_cap);
    on_path[s] = 0;
  }
  std::sort(result.begin(), result.end());
  return result;
}

ProcessingGraph build_graph(std::vector<FunctionNode> nodes,
                            std::vector<FlowEdge> edges,
                            std::vector<Cluster> clusters,
                            const BuildOptions& options) {
  const std::size_t n = nodes.size();
  const std::size_t k = clusters.size();

  // Ids must be dense and positional.
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes[i].id != i) {
      throw ValidationError("node ids must be dense 0..N-1 in list order");
    }
    check_weight(nodes[i].complexity, "node complexity");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (clusters[i].id != i) {
      throw ValidationError("cluster ids must be dense 0..K-1 in list order");
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].id != i) {
      throw ValidationError("edge ids must be dense 0..M-1 in list order");
    }
    check_weight(edges[i].bandwidth, "edge bandwidth");
  }

  for (const FunctionNode& node : nodes) {
    if (node.seed_cluster && *node.seed_cluster >= k) {
      throw DanglingReferenceError("node " + std::to_string(node.id) +
                                   " seeded to unknown cluster " +
                                   std::to_string(*node.seed_cluster));
    }
  }
  for (const FlowEdge& e : edges) {
    if (e.src >= n || e.dst >= n) {
      throw DanglingReferenceError("edge " + std::to_string(e.id) +
                                   " references unknown node");
    }
    if (e.src == e.dst) {
      throw SelfCycleError("edge " + std::to_string(e.id) +
                           " is a self-cycle on node " +
                           std::to_string(e.src));
    }
  }

  ProcessingGraph g;
  g.connection_.assign(n * n, 0);
  g.adjacency_.assign(n, {});
  std::vector<std::size_t> in_degree(n, 0), out_degree(n, 0);
  for (const FlowEdge& e : edges) {
    out_degree[e.src]++;
    in_degree[e.dst]++;
    g.connection_[static_cast<std::size_t>(e.src) * n + e.dst] = 1;
    g.connection_[static_cast<std::size_t>(e.dst) * n + e.src] = 1;
  }
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i != j && g.connection_[static_cast<std::size_t>(i) * n + j]) {
        g.adjacency_[i].push_back(j);
      }
    }
  }

  for (NodeId v = 0; v < n; ++v) {
    const bool is_source = in_degree[v] == 0;
    const bool is_sink = out_degree[v] == 0;
    if ((is_source || is_sink) && !nodes[v].seed_cluster) {
      throw UnseededTerminalError("node " + std::to_string(v) +
                                  " is a source or sink without a seed "
                                  "cluster");
    }
    if (is_source) {
      g.sources_.push_back(v);
    }
    if (is_sink) {
      g.sinks_.push_back(v);
    }
  }

  g.paths_ = enumerate_paths(nodes, edges, options.path_cap);
  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(edges);
  g.clusters_ = std::move(clusters);
  return g;
}

}  // namespace bbsplit
