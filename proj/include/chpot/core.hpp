#pragma once

#include <cstdint>
#include <vector>

#include "chpot/graph.hpp"

namespace chpot {

inline constexpr std::uint32_t kCoreComponent = UINT32_MAX;

/// Largest biconnected component of the underlying undirected graph (the
/// core) plus, for every other node, the piece it hangs in and the cut node
/// through which that piece touches the core.
///
/// Pieces are the connected components of the graph with the core removed.
/// A piece touches the core in at most one node; otherwise it would be part
/// of the core. Pieces of other connected components have no attachment.
struct CoreDecomposition {
  std::vector<bool> in_core;
  /// a_v: v itself for core nodes, the attaching cut node otherwise
  /// (kInvalidNode if the piece is not connected to the core).
  std::vector<NodeId> attachment;
  /// Piece id per node, kCoreComponent for core nodes.
  std::vector<std::uint32_t> component;
  std::uint32_t piece_count = 0;
  std::uint32_t core_size = 0;

  /// Undirected degree as seen by a search that stays inside the core:
  /// neighbours in pieces are not counted for core nodes.
  std::vector<std::uint32_t> restricted_degree;

  NodeId node_count() const noexcept { return static_cast<NodeId>(in_core.size()); }
};

/// Tarjan's biconnected components; ties between equally large components go
/// to the one completed first by a DFS that starts at the lowest node id.
CoreDecomposition compute_bcc_core(const Graph& g);

/// Biconnected components (as node lists, in completion order) of the
/// underlying undirected simple graph. Isolated nodes belong to none.
std::vector<std::vector<NodeId>> biconnected_components(const Graph& g);

}  // namespace chpot
