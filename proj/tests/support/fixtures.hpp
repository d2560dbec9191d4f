#pragma once

#include <string>

#include "pcineq/graph.hpp"
#include "pcineq/graph_io.hpp"

namespace fx {

inline std::string data_path(const std::string& rel) { return std::string(PCINEQ_DATA_DIR) + "/" + rel; }

inline pcineq::MixedGraph graph(const std::string& name) {
  return pcineq::load_graph(data_path("graphs/" + name + ".graph"));
}

}  // namespace fx
