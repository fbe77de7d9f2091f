#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chpot/types.hpp"

namespace chpot {

struct Arc {
  NodeId tail = 0;
  NodeId head = 0;
  Weight weight = 0;
  std::uint8_t tags = kTagNone;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Static directed graph in adjacency-array form. Out-edges of node x are the
/// edge ids in [first_out[x], first_out[x+1]).
class Graph {
 public:
  Graph() : first_out_{0} {}
  Graph(std::vector<EdgeId> first_out, std::vector<NodeId> head, std::vector<Weight> weight,
        std::vector<std::uint8_t> tags = {});

  NodeId node_count() const noexcept { return static_cast<NodeId>(first_out_.size() - 1); }
  EdgeId edge_count() const noexcept { return static_cast<EdgeId>(head_.size()); }

  EdgeId begin_edge(NodeId x) const noexcept { return first_out_[x]; }
  EdgeId end_edge(NodeId x) const noexcept { return first_out_[x + 1]; }
  NodeId head(EdgeId e) const noexcept { return head_[e]; }
  NodeId tail(EdgeId e) const noexcept { return tail_[e]; }
  Weight weight(EdgeId e) const noexcept { return weight_[e]; }
  std::uint8_t tags(EdgeId e) const noexcept { return tags_[e]; }

  std::span<const EdgeId> first_out() const noexcept { return first_out_; }
  std::span<const NodeId> heads() const noexcept { return head_; }
  std::span<const NodeId> tails() const noexcept { return tail_; }
  std::span<const Weight> weights() const noexcept { return weight_; }
  std::span<const std::uint8_t> edge_tags() const noexcept { return tags_; }

  /// All edges in edge-id order.
  std::vector<Arc> arcs() const;

  /// Same topology and tags, different weights (one per edge).
  Graph with_weights(std::vector<Weight> weight) const;

 private:
  std::vector<EdgeId> first_out_;
  std::vector<NodeId> head_;
  std::vector<NodeId> tail_;
  std::vector<Weight> weight_;
  std::vector<std::uint8_t> tags_;
};

/// Groups arcs by tail with a stable counting sort; parallel edges and
/// self-loops are kept. Throws MalformedInput on an endpoint >= node_count.
Graph build_graph(NodeId node_count, std::span<const Arc> arcs);

/// Reversed graph, (u,v,w) -> (v,u,w). If edge_map is given it receives, per
/// reversed edge, the id of the original edge.
Graph reverse(const Graph& g, std::vector<EdgeId>* edge_map = nullptr);

/// Number of distinct neighbours of x over in- and out-edges, self-loops excluded.
std::uint32_t undirected_degree(const Graph& g, NodeId x);

/// undirected_degree for every node in O(n + m).
std::vector<std::uint32_t> undirected_degrees(const Graph& g);

/// Neighbour lists of the underlying simple undirected graph, sorted and deduplicated.
std::vector<std::vector<NodeId>> undirected_adjacency(const Graph& g);

}  // namespace chpot
