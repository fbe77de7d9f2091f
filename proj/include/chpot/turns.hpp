#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "chpot/graph.hpp"

namespace chpot {

/// Sparse turn costs keyed by (in-edge, out-edge) at their shared node.
/// Unlisted turns are free, except U-turns (out-edge reverses the in-edge),
/// which are forbidden unless listed.
class TurnModel {
 public:
  static constexpr Weight kForbidden = kInfWeight;

  void set(EdgeId in, EdgeId out, Weight cost) { table_[key(in, out)] = cost; }

  /// Cost of turning from `in` into `out`; kForbidden for forbidden turns.
  Weight cost(const Graph& g, EdgeId in, EdgeId out) const;

  /// Throws MalformedInput if some entry pairs edges that do not meet head to tail.
  void validate(const Graph& g) const;

  std::size_t size() const noexcept { return table_.size(); }

  struct Entry {
    EdgeId in;
    EdgeId out;
    Weight cost;
  };
  /// Entries sorted by (in, out).
  std::vector<Entry> entries() const;

 private:
  static std::uint64_t key(EdgeId in, EdgeId out) noexcept { return (std::uint64_t{in} << 32) | out; }
  std::unordered_map<std::uint64_t, Weight> table_;
};

bool is_u_turn(const Graph& g, EdgeId in, EdgeId out) noexcept;

/// Graph whose nodes are the edges of the input graph. Expanded edge
/// (x,y) -> (y,z) exists for every permitted turn and weighs
/// turn_cost + w(y,z). Expanded node ids equal input edge ids.
struct TurnExpandedGraph {
  Graph graph;
  /// Turn cost per expanded edge.
  std::vector<Weight> turn_cost;
  /// phi: expanded node (x,y) -> y.
  std::vector<NodeId> phi;

  /// Input edge represented by an expanded node (the identity, kept explicit).
  EdgeId original_edge(NodeId expanded) const noexcept { return expanded; }
};

TurnExpandedGraph expand_turns(const Graph& g, const TurnModel& turns);

/// Heuristic on expanded nodes through the node mapping.
template <class Inner>
struct MappedHeuristic {
  Inner* inner;
  const std::vector<NodeId>* phi;
  Weight operator()(NodeId x) const { return (*inner)((*phi)[x]); }
};

}  // namespace chpot
