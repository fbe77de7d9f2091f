#include "chpot/potentials.hpp"

#include <algorithm>

namespace chpot {

CHPotentials::CHPotentials(const ContractionHierarchy& ch)
    : ch_(&ch),
      backward_(ch.node_count(), kInfWeight),
      backward_stamp_(ch.node_count(), 0),
      memo_(ch.node_count(), kInfWeight),
      memo_stamp_(ch.node_count(), 0),
      queue_(ch.node_count()) {}

void CHPotentials::bump_generation() {
  if (++generation_ == 0) {
    std::fill(backward_stamp_.begin(), backward_stamp_.end(), 0);
    std::fill(memo_stamp_.begin(), memo_stamp_.end(), 0);
    generation_ = 1;
  }
  memoized_count_ = 0;
  backward_settled_ = 0;
}

void CHPotentials::init_target(NodeId t) {
  if (t >= ch_->node_count()) throw MalformedInput("target out of range");
  bump_generation();
  target_ = t;

  const Graph& down = ch_->down_reversed;
  queue_.clear();
  backward_[t] = 0;
  backward_stamp_[t] = generation_;
  queue_.push(t, 0);
  while (!queue_.empty()) {
    const auto [y, dy] = queue_.pop();
    ++backward_settled_;
    for (EdgeId e = down.begin_edge(y); e < down.end_edge(y); ++e) {
      const NodeId x = down.head(e);
      const Weight nd = sat_add(dy, down.weight(e));
      if (nd < backward_distance(x)) {
        backward_[x] = nd;
        backward_stamp_[x] = generation_;
        queue_.push_or_decrease(x, nd);
      }
    }
  }
}

Weight CHPotentials::potential(NodeId x) {
  if (is_memoized(x)) return memo_[x];

  // Post-order walk over up edges; ranks strictly increase along them, so the
  // stack depth is bounded by the hierarchy height.
  const Graph& up = ch_->up;
  stack_.clear();
  stack_.emplace_back(x, up.begin_edge(x));
  while (!stack_.empty()) {
    auto& [v, next] = stack_.back();
    bool descended = false;
    while (next < up.end_edge(v)) {
      const NodeId y = up.head(next);
      if (!is_memoized(y)) {
        stack_.emplace_back(y, up.begin_edge(y));
        descended = true;
        break;
      }
      ++next;
    }
    if (descended) continue;

    Weight best = backward_distance(v);
    for (EdgeId e = up.begin_edge(v); e < up.end_edge(v); ++e)
      best = std::min(best, sat_add(up.weight(e), memo_[up.head(e)]));
    memo_[v] = best;
    memo_stamp_[v] = generation_;
    ++memoized_count_;
    stack_.pop_back();
  }
  return memo_[x];
}

std::vector<Weight> phast_all_to_one(const ContractionHierarchy& ch, NodeId t) {
  CHPotentials backward(ch);
  backward.init_target(t);
  std::vector<Weight> dist(ch.node_count());
  for (NodeId x = 0; x < ch.node_count(); ++x) dist[x] = backward.backward_distance(x);

  // Heads of up edges lie on strictly higher levels, so they are final when
  // their level has been swept.
  const Graph& up = ch.up;
  for (NodeId x : ch.level_sweep)
    for (EdgeId e = up.begin_edge(x); e < up.end_edge(x); ++e)
      dist[x] = std::min(dist[x], sat_add(dist[up.head(e)], up.weight(e)));
  return dist;
}

}  // namespace chpot
