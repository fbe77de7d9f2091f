#pragma once

#include <span>
#include <vector>

#include "chpot/graph.hpp"

namespace chpot {

/// Plain one-to-all Dijkstra. Returns per-node distances (kInfWeight if
/// unreachable); if parent_edge is given it receives the tree edge per node.
std::vector<Weight> dijkstra_all(const Graph& g, NodeId source, std::vector<EdgeId>* parent_edge = nullptr);

/// Same, with weights taken from a per-edge array instead of g's own.
std::vector<Weight> dijkstra_all(const Graph& g, std::span<const Weight> weights, NodeId source,
                                 std::vector<EdgeId>* parent_edge = nullptr);

}  // namespace chpot
