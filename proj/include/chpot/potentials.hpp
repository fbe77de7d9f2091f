#pragma once

#include <cstdint>
#include <vector>

#include "chpot/ch.hpp"
#include "chpot/heap.hpp"

namespace chpot {

/// Exact lower-bound distances to a fixed target, extracted lazily from a
/// contraction hierarchy.
///
/// init_target() runs the backward search over reversed down edges and
/// records B[x], the shortest down path distance from x to t. potential(x)
/// then takes the minimum of B[x] and w(x,y) + potential(y) over up edges
/// x->y, memoizing every value it computes. Only nodes the caller asks about
/// (and their up-edge closure) are ever evaluated.
///
/// Both per-node arrays are generation stamped, so retargeting costs time
/// proportional to the backward search, not to the node count.
///
/// One instance serves one query at a time; instances over the same
/// hierarchy are independent.
class CHPotentials {
 public:
  explicit CHPotentials(const ContractionHierarchy& ch);

  void init_target(NodeId t);
  NodeId target() const noexcept { return target_; }

  /// dist(x, target) in the preprocessing graph; kInfWeight if unreachable.
  Weight potential(NodeId x);
  Weight operator()(NodeId x) { return potential(x); }

  /// B[x] from the backward search, kInfWeight if x was never reached.
  Weight backward_distance(NodeId x) const noexcept {
    return backward_stamp_[x] == generation_ ? backward_[x] : kInfWeight;
  }
  bool is_memoized(NodeId x) const noexcept { return memo_stamp_[x] == generation_; }

  /// Nodes with a memoized value since the last init_target.
  std::size_t memoized_count() const noexcept { return memoized_count_; }
  /// Nodes settled by the last backward search.
  std::size_t backward_settled() const noexcept { return backward_settled_; }

  const ContractionHierarchy& hierarchy() const noexcept { return *ch_; }

 private:
  void bump_generation();

  const ContractionHierarchy* ch_;
  NodeId target_ = kInvalidNode;
  std::uint32_t generation_ = 0;
  std::vector<Weight> backward_;
  std::vector<std::uint32_t> backward_stamp_;
  std::vector<Weight> memo_;
  std::vector<std::uint32_t> memo_stamp_;
  std::size_t memoized_count_ = 0;
  std::size_t backward_settled_ = 0;
  MinIdHeap queue_;
  std::vector<std::pair<NodeId, EdgeId>> stack_;
};

/// All-to-one distances: backward search followed by a top-down level sweep
/// over reversed up edges. result[x] = dist(x, t).
std::vector<Weight> phast_all_to_one(const ContractionHierarchy& ch, NodeId t);

}  // namespace chpot
