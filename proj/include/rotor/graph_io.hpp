#pragma once

// JSON form of a weighted transition graph:
//   {"states": p, "s0": s0, "rho": rho,
//    "edges": [{"from": i, "to": j, "weight": k}, ...]}
// Edges are written in (from, to) order; s0 and rho are informational and
// checked on reading.

#include "rotor/symbolic_graph.hpp"

#include <string>
#include <string_view>

namespace rotor {

std::string graph_to_json(const WeightedGraph& graph);
/// Throws SyntaxError, MissingKey, InvalidArgument.
WeightedGraph graph_from_json(std::string_view text);

} // namespace rotor
