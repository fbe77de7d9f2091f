#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "chpot/graph.hpp"
#include "chpot/heap.hpp"

namespace chpot {

using ArcId = std::uint32_t;
inline constexpr ArcId kNoArc = UINT32_MAX;

/// One edge of the augmented graph. Original edges carry the id of the
/// (lightest) input edge they stand for; shortcuts carry the two arcs they replace.
struct ChArc {
  NodeId tail = 0;
  NodeId head = 0;
  Weight weight = 0;
  ArcId first = kNoArc;
  ArcId second = kNoArc;
  EdgeId original = kInvalidEdge;

  bool is_shortcut() const noexcept { return first != kNoArc; }
};

struct ContractionHierarchy {
  /// rank[x] is the contraction position of x; order is its inverse.
  std::vector<std::uint32_t> rank;
  std::vector<NodeId> order;
  /// No edge of the augmented graph joins two nodes of the same level.
  std::vector<std::uint32_t> level;

  /// Edges x->y with rank[x] < rank[y], grouped by x.
  Graph up;
  /// Edges x->y with rank[x] > rank[y], stored reversed: grouped by y, head() is x.
  Graph down_reversed;
  std::vector<ArcId> up_arc;
  std::vector<ArcId> down_arc;
  std::vector<ChArc> arcs;

  /// Nodes sorted by level, highest level first.
  std::vector<NodeId> level_sweep;

  NodeId node_count() const noexcept { return static_cast<NodeId>(rank.size()); }

  /// Down edges as (x, y, w) with rank[x] > rank[y].
  std::vector<Arc> down_edges() const;
  std::vector<Arc> up_edges() const { return up.arcs(); }
};

struct ContractionConfig {
  /// Witness searches give up after settling this many nodes and keep the shortcut.
  std::uint32_t witness_settle_limit = 500;
  std::uint32_t witness_hop_limit = 16;
};

/// Contracts nodes by a lazily updated edge-difference + contracted-neighbours
/// priority, ties broken by node id.
ContractionHierarchy build_ch(const Graph& g, const ContractionConfig& config = {});

/// Contracts nodes in the given order (a permutation of the node ids).
ContractionHierarchy build_ch(const Graph& g, std::span<const NodeId> order,
                              const ContractionConfig& config = {});

/// Original edge ids of g along the path an arc stands for.
std::vector<EdgeId> unpack_arc(const ContractionHierarchy& ch, ArcId arc);

/// Binary dump with magic number and version; load throws ParseError on mismatch.
void save_ch(const ContractionHierarchy& ch, std::ostream& out);
ContractionHierarchy load_ch(std::istream& in);
void save_ch(const ContractionHierarchy& ch, const std::string& path);
ContractionHierarchy load_ch(const std::string& path);

/// Bidirectional up-down query with caller-owned scratch state.
class ChQuery {
 public:
  explicit ChQuery(const ContractionHierarchy& ch);

  Weight distance(NodeId s, NodeId t);

 private:
  struct Side {
    std::vector<Weight> dist;
    std::vector<NodeId> touched;
    MinIdHeap queue;
  };
  void reset(Side& side);

  const ContractionHierarchy* ch_;
  Side forward_;
  Side backward_;
};

Weight ch_query(const ContractionHierarchy& ch, NodeId s, NodeId t);

}  // namespace chpot
