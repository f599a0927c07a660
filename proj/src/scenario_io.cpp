#include "bbsplit/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bbsplit/errors.hpp"

namespace bbsplit {

namespace {

using json = nlohmann::ordered_json;

void require_keys(const json& obj, const char* where,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
  if (!obj.is_object()) {
    throw ScenarioParseError(std::string(where) + " must be an object");
  }
  for (const char* key : required) {
    if (!obj.contains(key)) {
      throw ScenarioParseError(std::string(where) + " is missing key '" +
                               key + "'");
    }
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string& key = it.key();
    auto known = [&](std::initializer_list<const char*> list) {
      for (const char* k : list) {
        if (key == k) {
          return true;
        }
      }
      return false;
    };
    if (!known(required) && !known(optional)) {
      throw ScenarioParseError(std::string(where) + " has unknown key '" +
                               key + "'");
    }
  }
}

double read_number(const json& v, const char* where) {
  if (!v.is_number()) {
    throw ScenarioParseError(std::string(where) + " must be a number");
  }
  return v.get<double>();
}

std::uint32_t read_index(const json& v, const char* where) {
  if (!v.is_number_unsigned()) {
    throw ScenarioParseError(std::string(where) +
                             " must be a non-negative integer");
  }
  return v.get<std::uint32_t>();
}

}  // namespace

ProcessingGraph parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioParseError(std::string("invalid JSON: ") + e.what());
  }
  require_keys(doc, "scenario document", {"clusters", "nodes", "edges"});
  if (!doc["clusters"].is_array() || !doc["nodes"].is_array() ||
      !doc["edges"].is_array()) {
    throw ScenarioParseError("clusters, nodes, and edges must be arrays");
  }

  std::vector<Cluster> clusters;
  for (const json& c : doc["clusters"]) {
    require_keys(c, "cluster", {"id", "kind", "label"});
    Cluster cluster;
    cluster.id = read_index(c["id"], "cluster id");
    if (!c["kind"].is_string()) {
      throw ScenarioParseError("cluster kind must be a string");
    }
    const std::string kind = c["kind"].get<std::string>();
    if (kind == "cell_site") {
      cluster.kind = ClusterKind::CellSite;
    } else if (kind == "central_office") {
      cluster.kind = ClusterKind::CentralOffice;
    } else {
      throw ScenarioParseError("unknown cluster kind '" + kind + "'");
    }
    if (!c["label"].is_string()) {
      throw ScenarioParseError("cluster label must be a string");
    }
    cluster.label = c["label"].get<std::string>();
    clusters.push_back(std::move(cluster));
  }

  std::vector<FunctionNode> nodes;
  for (const json& nj : doc["nodes"]) {
    require_keys(nj, "node", {"id", "kind", "weight"}, {"seed_cluster"});
    FunctionNode node;
    node.id = read_index(nj["id"], "node id");
    if (!nj["kind"].is_string()) {
      throw ScenarioParseError("node kind must be a string");
    }
    node.kind = nj["kind"].get<std::string>();
    node.complexity = read_number(nj["weight"], "node weight");
    if (nj.contains("seed_cluster")) {
      node.seed_cluster = read_index(nj["seed_cluster"], "node seed_cluster");
    }
    nodes.push_back(std::move(node));
  }

  std::vector<FlowEdge> edges;
  for (const json& ej : doc["edges"]) {
    require_keys(ej, "edge", {"src", "dst", "weight"}, {"comp_link"});
    FlowEdge edge;
    edge.id = static_cast<EdgeId>(edges.size());
    edge.src = read_index(ej["src"], "edge src");
    edge.dst = read_index(ej["dst"], "edge dst");
    edge.bandwidth = read_number(ej["weight"], "edge weight");
    if (ej.contains("comp_link")) {
      if (!ej["comp_link"].is_boolean()) {
        throw ScenarioParseError("edge comp_link must be a boolean");
      }
      edge.comp_link = ej["comp_link"].get<bool>();
    }
    edges.push_back(edge);
  }

  return build_graph(std::move(nodes), std::move(edges), std::move(clusters));
}

ProcessingGraph load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ScenarioParseError("cannot open scenario file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string write_scenario(const ProcessingGraph& graph) {
  json doc;
  doc["clusters"] = json::array();
  for (const Cluster& c : graph.clusters()) {
    json cj;
    cj["id"] = c.id;
    cj["kind"] =
        c.kind == ClusterKind::CellSite ? "cell_site" : "central_office";
    cj["label"] = c.label;
    doc["clusters"].push_back(std::move(cj));
  }
  doc["nodes"] = json::array();
  for (const FunctionNode& node : graph.nodes()) {
    json nj;
    nj["id"] = node.id;
    nj["kind"] = node.kind;
    nj["weight"] = node.complexity;
    if (node.seed_cluster) {
      nj["seed_cluster"] = *node.seed_cluster;
    }
    doc["nodes"].push_back(std::move(nj));
  }
  doc["edges"] = json::array();
  for (const FlowEdge& e : graph.edges()) {
    json ej;
    ej["src"] = e.src;
    ej["dst"] = e.dst;
    ej["weight"] = e.bandwidth;
    if (e.comp_link) {
      ej["comp_link"] = true;
    }
    doc["edges"].push_back(std::move(ej));
  }
  return doc.dump(2) + "\n";
}

}  // namespace bbsplit
