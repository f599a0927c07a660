#pragma once

#include <string>

#include "bbsplit/graph.hpp"

namespace bbsplit {

// Scenario document format, JSON with exactly these keys:
//   clusters: [{id, kind, label}]          kind: "cell_site"|"central_office"
//   nodes:    [{id, kind, weight, seed_cluster?}]
//   edges:    [{src, dst, weight, comp_link?}]
// Ids are dense and positional; edge ids follow list order. Unknown keys are
// rejected at every level.

// Parses and validates a scenario document. Throws ScenarioParseError on
// malformed input; structural violations surface as the build_graph errors.
ProcessingGraph parse_scenario(const std::string& text);

// Reads a scenario file from disk. Throws ScenarioParseError when the file
// cannot be opened.
ProcessingGraph load_scenario_file(const std::string& path);

// Serializes a graph back to the scenario format. parse_scenario of the
// output reconstructs an identical graph.
std::string write_scenario(const ProcessingGraph& graph);

}  // namespace bbsplit
