#pragma once

#include <map>
#include <string>

#include "bbsplit/graph.hpp"

namespace bbsplit {

// Shape of the generated baseband processing structure. The reference setup
// is two cells with two chains per direction.
struct ScenarioSpec {
  int n_cells = 2;
  int chains_per_direction = 2;
  bool comp_enabled = false;
  double link_scale = 1.0;
};

// Complexity weight per node type.
using NodeTypeTable = std::map<std::string, double>;

// Default weights: radioTX 0, radioRX 0, fft 1, ifft 1, MIMOtx 0.5,
// MIMOrx 0.5, mod 0.1, demod 0.1, code 0.1, decode 2, sourceDL 0, sinkUL 0.
NodeTypeTable default_node_type_table();

// Builds the processing graph for `spec`: per cell, K downlink chains
// sourceDL -> code -> mod -> MIMOtx -> ifft -> radioTX and K uplink chains
// radioRX -> fft -> MIMOrx -> demod -> decode -> sinkUL. Radio front-ends
// are seeded to their cell site; the data source and sink are seeded to the
// central office. With comp_enabled, cyclic cross-links join neighbouring
// cells' MIMOtx (last chain) and MIMOrx (first chain) nodes.
ProcessingGraph build_scenario(const ScenarioSpec& spec,
                               const NodeTypeTable& node_table);

ProcessingGraph build_scenario(const ScenarioSpec& spec);

// One cell, one chain per direction, no cross-links: 12 nodes of which 8
// are free, so the whole assignment space has 2^8 = 256 schemes. Small
// enough to validate the optimizer against exhaustive search.
ProcessingGraph small_oracle_scenario();

}  // namespace bbsplit
