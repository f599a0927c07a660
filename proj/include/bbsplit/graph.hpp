#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bbsplit {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using ClusterId = std::uint32_t;
using PathId = std::uint32_t;

// An atomic processing function. complexity is the abstract compute weight;
// nodes with a seed_cluster are pinned to that cluster in every scheme.
struct FunctionNode {
  NodeId id = 0;
  std::string kind;
  double complexity = 0.0;
  std::optional<ClusterId> seed_cluster;
};

// A directed information flow between two functions. comp_link marks
// cooperative cross-links, which carry fronthaul cost but are not part of
// any processing chain.
struct FlowEdge {
  EdgeId id = 0;
  NodeId src = 0;
  NodeId dst = 0;
  double bandwidth = 0.0;
  bool comp_link = false;
};

enum class ClusterKind { CellSite, CentralOffice };

// A physical location that can host processing functions.
struct Cluster {
  ClusterId id = 0;
  ClusterKind kind = ClusterKind::CellSite;
  std::string label;
};

using Path = std::vector<NodeId>;

struct BuildOptions {
  // Hard cap on the number of enumerated source-to-sink paths.
  std::size_t path_cap = 10000;
};

// Immutable weighted directed graph of processing functions, with the
// undirected connection structure and all simple source-to-sink paths
// precomputed. Safe to share across threads after construction.
class ProcessingGraph {
public:
  const std::vector<FunctionNode>& nodes() const { return nodes_; }
  const std::vector<FlowEdge>& edges() const { return edges_; }
  const std::vector<Cluster>& clusters() const { return clusters_; }
  const std::vector<Path>& paths() const { return paths_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t cluster_count() const { return clusters_.size(); }

  // Undirected adjacency: true iff some edge links i and j in either
  // direction. The diagonal is always false.
  bool connected(NodeId i, NodeId j) const {
    return connection_[static_cast<std::size_t>(i) * nodes_.size() + j] != 0;
  }

  // Nodes adjacent to `node` via any edge, ignoring direction. Sorted by id.
  const std::vector<NodeId>& neighbors(NodeId node) const;

  bool is_seed(NodeId node) const {
    return nodes_[node].seed_cluster.has_value();
  }

  // Source/sink nodes over the full edge set (comp links included).
  const std::vector<NodeId>& sources() const { return sources_; }
  const std::vector<NodeId>& sinks() const { return sinks_; }

private:
  friend ProcessingGraph build_graph(std::vector<FunctionNode>,
                                     std::vector<FlowEdge>,
                                     std::vector<Cluster>,
                                     const BuildOptions&);

  std::vector<FunctionNode> nodes_;
  std::vector<FlowEdge> edges_;
  std::vector<Cluster> clusters_;
  std::vector<Path> paths_;
  std::vector<std::uint8_t> connection_;       // N x N, row-major
  std::vector<std::vector<NodeId>> adjacency_; // undirected, sorted
  std::vector<NodeId> sources_;
  std::vector<NodeId> sinks_;
};

// Validates the node/edge/cluster lists, computes the connection matrix and
// enumerates all simple source-to-sink paths.
//
// Throws SelfCycleError for src == dst edges, DanglingReferenceError for
// unknown ids, UnseededTerminalError when a source or sink has no seed
// cluster, ValidationError for negative weights or non-dense ids, and
// PathExplosionError when enumeration exceeds options.path_cap.
ProcessingGraph build_graph(std::vector<FunctionNode> nodes,
                            std::vector<FlowEdge> edges,
                            std::vector<Cluster> clusters,
                            const BuildOptions& options = {});

// All simple directed paths from every source to every sink, ordered
// lexicographically by node ids. Comp links are excluded from traversal;
// every returned path has at least two nodes.
std::vector<Path> enumerate_paths(const std::vector<FunctionNode>& nodes,
                                  const std::vector<FlowEdge>& edges,
                                  std::size_t path_cap = 10000);

}  // namespace bbsplit
