#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chpot/graph.hpp"

namespace chpot {

/// Landmarks with exact distance tables in both directions.
struct LandmarkSet {
  std::vector<NodeId> landmarks;
  /// dist_from[i][x] = dist(landmarks[i], x)
  std::vector<std::vector<Weight>> dist_from;
  /// dist_to[i][x] = dist(x, landmarks[i])
  std::vector<std::vector<Weight>> dist_to;

  std::size_t size() const noexcept { return landmarks.size(); }
};

/// Computes both distance tables for a fixed landmark list.
LandmarkSet make_landmark_set(const Graph& g, std::vector<NodeId> landmarks);

/// One round of the avoid strategy from the given root: grow the shortest path
/// tree, weight each node by how badly the current landmarks bound its distance
/// from the root, sum weights over subtrees that contain no landmark, and walk
/// from the root into the heaviest subtree down to a leaf. Returns kInvalidNode
/// if every subtree already holds a landmark.
NodeId avoid_landmark_from_root(const Graph& g, const LandmarkSet& current, NodeId root);

/// k landmarks by the avoid strategy with roots drawn from a seeded RNG.
/// k is clamped to the node count.
LandmarkSet select_landmarks_avoid(const Graph& g, std::uint32_t k = 16, std::uint64_t seed = 1);

/// Triangle inequality lower bound on dist(x, t) over all landmarks.
Weight alt_potential(const LandmarkSet& ls, NodeId x, NodeId t);

/// A* heuristic object for a fixed target.
class AltHeuristic {
 public:
  explicit AltHeuristic(const LandmarkSet& ls) : ls_(&ls) {}
  void init_target(NodeId t) { target_ = t; }
  Weight operator()(NodeId x) const { return alt_potential(*ls_, x, target_); }

 private:
  const LandmarkSet* ls_;
  NodeId target_ = 0;
};

/// dist(x, t) for every x by one reverse Dijkstra.
std::vector<Weight> oracle_context(const Graph& g, NodeId t);

/// Reuses the reversed graph across targets.
class OracleHeuristic {
 public:
  explicit OracleHeuristic(const Graph& g);
  void init_target(NodeId t);
  Weight operator()(NodeId x) const noexcept { return table_[x]; }
  std::span<const Weight> table() const noexcept { return table_; }

 private:
  Graph reversed_;
  std::vector<Weight> table_;
};

}  // namespace chpot
