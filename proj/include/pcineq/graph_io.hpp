#pragma once

#include <string>
#include <string_view>

#include "pcineq/graph.hpp"

namespace pcineq {

// Text format: first nonblank line is `ug`, `dag` or `mag`; then one item per
// line, `A -- B`, `A -> B`, `A <-> B` or `node A`. `#` starts a comment.
// Edge kinds must be admissible for the declared class.
MixedGraph parse_graph(std::string_view text);
MixedGraph load_graph(const std::string& path);

// Inverse of parse_graph. The class hint is derived from the edge kinds.
std::string serialize_graph(const MixedGraph& g);

}  // namespace pcineq
