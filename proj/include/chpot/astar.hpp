#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chpot/core.hpp"
#include "chpot/graph.hpp"
#include "chpot/heap.hpp"

namespace chpot {

struct AStarOptions {
  /// Walk degree <= 2 chains without touching the queue.
  bool deg2 = false;
  /// Also pass through degree 3 chain ends that are not queued. Needs deg2.
  bool deg3 = false;
  /// Evaluate the heuristic on both ends of every relaxed edge and throw
  /// ContractViolation on a negative reduced cost.
  bool check_feasibility = false;
};

struct SearchStats {
  /// Queue insertions plus key decreases.
  std::uint64_t queue_pushes = 0;
  std::uint64_t settled = 0;
  std::uint64_t heuristic_evaluations = 0;
};

struct PathResult {
  Weight distance = kInfWeight;
  std::vector<EdgeId> path;
  SearchStats stats;
};

/// Undirected degree as seen by one search. no_skip marks a node whose
/// degree in the view is not known exactly; it is never skipped.
struct DegreeView {
  std::span<const std::uint32_t> degree;
  NodeId no_skip = kInvalidNode;

  std::uint32_t operator()(NodeId x) const noexcept { return x == no_skip ? UINT32_MAX : degree[x]; }
};

struct AllNodes {
  constexpr bool operator()(NodeId) const noexcept { return true; }
};

struct ZeroHeuristic {
  constexpr Weight operator()(NodeId) const noexcept { return 0; }
};

/// Mutable per-query A* state: tentative distances, parent links, cached
/// heuristic values, and the queue. Reset is O(1) via generation stamps.
///
/// Weight functions are called as w(edge, distance_at_tail) so that time
/// dependent weights can evaluate at the entry time; heuristics as h(node).
class QueryContext {
 public:
  explicit QueryContext(NodeId node_count)
      : dist_(node_count, kInfWeight),
        parent_node_(node_count, kInvalidNode),
        parent_edge_(node_count, kInvalidEdge),
        label_stamp_(node_count, 0),
        heuristic_(node_count, 0),
        heuristic_stamp_(node_count, 0),
        queue_(node_count) {}

  NodeId node_count() const noexcept { return static_cast<NodeId>(dist_.size()); }

  Weight distance(NodeId x) const noexcept { return label_stamp_[x] == generation_ ? dist_[x] : kInfWeight; }
  NodeId parent_node(NodeId x) const noexcept { return label_stamp_[x] == generation_ ? parent_node_[x] : kInvalidNode; }
  EdgeId parent_edge(NodeId x) const noexcept { return label_stamp_[x] == generation_ ? parent_edge_[x] : kInvalidEdge; }
  const SearchStats& stats() const noexcept { return stats_; }
  bool queued(NodeId x) const noexcept { return queue_.contains(x); }

  /// Forgets all labels and seeds the search with source at distance d0.
  void begin(NodeId source, Weight d0 = 0) {
    if (++generation_ == 0) {
      std::fill(label_stamp_.begin(), label_stamp_.end(), 0);
      std::fill(heuristic_stamp_.begin(), heuristic_stamp_.end(), 0);
      generation_ = 1;
    }
    queue_.clear();
    stats_ = {};
    set_label(source, d0, kInvalidNode, kInvalidEdge);
    seed_ = source;
  }

  /// Keeps all labels but empties the queue and continues from x.
  void reseed(NodeId x) {
    queue_.clear();
    seed_ = x;
  }

  /// Runs until the label of stop is final or the queue empties.
  template <class WeightFn, class Heuristic, class Allow = AllNodes>
  void search(const Graph& g, const DegreeView& degree, WeightFn&& weight, Heuristic&& h, NodeId stop,
              const AStarOptions& opts, Allow&& allow = {}) {
    Search<std::remove_reference_t<WeightFn>, std::remove_reference_t<Heuristic>, std::remove_reference_t<Allow>>
        run{*this, g, degree, weight, h, opts, allow};
    run.go(stop);
  }

  /// Edges from the search seed to x, following parent links.
  std::vector<EdgeId> path_to(NodeId x) const {
    std::vector<EdgeId> path;
    if (!is_finite(distance(x))) throw std::logic_error("path_to: node not reached");
    NodeId v = x;
    for (NodeId steps = 0; parent_edge(v) != kInvalidEdge; ++steps) {
      if (steps > node_count()) throw std::logic_error("path_to: parent links form a cycle");
      path.push_back(parent_edge(v));
      v = parent_node(v);
      if (v == kInvalidNode) throw std::logic_error("path_to: broken parent chain");
    }
    return {path.rbegin(), path.rend()};
  }

 private:
  void set_label(NodeId x, Weight d, NodeId parent, EdgeId edge) {
    dist_[x] = d;
    parent_node_[x] = parent;
    parent_edge_[x] = edge;
    label_stamp_[x] = generation_;
  }

  template <class WeightFn, class Heuristic, class Allow>
  struct Search {
    QueryContext& ctx;
    const Graph& g;
    const DegreeView& degree;
    WeightFn& weight;
    Heuristic& h;
    const AStarOptions& opts;
    Allow& allow;

    Weight heuristic(NodeId x) {
      if (ctx.heuristic_stamp_[x] != ctx.generation_) {
        ctx.heuristic_[x] = h(x);
        ctx.heuristic_stamp_[x] = ctx.generation_;
        ++ctx.stats_.heuristic_evaluations;
      }
      return ctx.heuristic_[x];
    }

    void check(NodeId x, EdgeId e, NodeId y, Weight w) {
      if (!opts.check_feasibility) return;
      const Weight hx = heuristic(x), hy = heuristic(y);
      if (!is_finite(hx)) return;
      if (std::uint64_t{w} + hy < hx)
        throw ContractViolation(e, "infeasible heuristic: w=" + std::to_string(w) + " h(tail)=" +
                                       std::to_string(hx) + " h(head)=" + std::to_string(hy) + " on " +
                                       std::to_string(x) + "->" + std::to_string(y));
    }

    void enqueue(NodeId y) {
      const Weight hy = heuristic(y);
      if (!is_finite(hy)) return;
      if (ctx.queue_.push_or_decrease(y, sat_add(ctx.dist_[y], hy))) ++ctx.stats_.queue_pushes;
    }

    bool skippable(NodeId y) const { return opts.deg2 && degree(y) <= 2 && !ctx.queue_.contains(y); }

    void relax(NodeId x, EdgeId e, NodeId y, Weight d) {
      if (skippable(y)) {
        walk_chain(x, e, y, d, opts.deg3);
      } else {
        ctx.set_label(y, d, x, e);
        enqueue(y);
      }
    }

    // Follows x, y1, ..., yk, z through degree <= 2 nodes. Only the chain end
    // z may enter the queue, and only if its label improved.
    void walk_chain(NodeId prev, EdgeId e, NodeId cur, Weight d, bool allow_deg3) {
      const NodeId n = ctx.node_count();
      for (NodeId steps = 0;; ++steps) {
        ctx.set_label(cur, d, prev, e);
        const std::uint32_t deg = degree(cur);
        if (deg > 2 || ctx.queue_.contains(cur)) {
          if (allow_deg3 && deg == 3 && !ctx.queue_.contains(cur))
            pass_degree3(prev, cur);
          else
            enqueue(cur);
          return;
        }
        if (steps >= n) return;

        NodeId next = kInvalidNode;
        EdgeId next_edge = kInvalidEdge;
        Weight next_d = kInfWeight;
        for (EdgeId f = g.begin_edge(cur); f < g.end_edge(cur); ++f) {
          const NodeId z = g.head(f);
          if (z == cur || z == prev || !allow(z)) continue;
          const Weight nd = sat_add(d, weight(f, d));
          if (nd < next_d) {
            next = z;
            next_edge = f;
            next_d = nd;
          }
        }
        if (next == kInvalidNode || next_d >= ctx.distance(next)) return;
        check(cur, next_edge, next, next_d - d);
        prev = cur;
        cur = next;
        e = next_edge;
        d = next_d;
      }
    }

    // z has degree 3, is not queued, and its label just improved coming from
    // prev. Continue along the two other chains; only their ends are queued.
    void pass_degree3(NodeId prev, NodeId z) {
      const Weight dz = ctx.dist_[z];
      for (EdgeId f = g.begin_edge(z); f < g.end_edge(z); ++f) {
        const NodeId a = g.head(f);
        if (a == z || a == prev || !allow(a)) continue;
        const Weight nd = sat_add(dz, weight(f, dz));
        if (!is_finite(nd) || nd >= ctx.distance(a)) continue;
        check(z, f, a, nd - dz);
        if (skippable(a)) {
          walk_chain(z, f, a, nd, false);
        } else {
          ctx.set_label(a, nd, z, f);
          enqueue(a);
        }
      }
    }

    void go(NodeId stop) {
      if (ctx.seed_ != kInvalidNode) {
        enqueue(ctx.seed_);
        ctx.seed_ = kInvalidNode;
      }
      const Weight h_stop = heuristic(stop);
      while (!ctx.queue_.empty()) {
        if (sat_add(ctx.distance(stop), h_stop) <= ctx.queue_.top_key()) break;
        const NodeId x = ctx.queue_.pop().first;
        ++ctx.stats_.settled;
        const Weight dx = ctx.dist_[x];
        for (EdgeId e = g.begin_edge(x); e < g.end_edge(x); ++e) {
          const NodeId y = g.head(e);
          if (y == x || !allow(y)) continue;
          const Weight w = weight(e, dx);
          const Weight d = sat_add(dx, w);
          if (!is_finite(d) || d >= ctx.distance(y)) continue;
          check(x, e, y, w);
          relax(x, e, y, d);
        }
      }
    }
  };

  std::vector<Weight> dist_;
  std::vector<NodeId> parent_node_;
  std::vector<EdgeId> parent_edge_;
  std::vector<std::uint32_t> label_stamp_;
  std::vector<Weight> heuristic_;
  std::vector<std::uint32_t> heuristic_stamp_;
  std::uint32_t generation_ = 0;
  NodeId seed_ = kInvalidNode;
  MinIdHeap queue_;
  SearchStats stats_;
};

/// Plain A* (optionally with chain skipping) from s to t.
template <class WeightFn, class Heuristic>
PathResult astar_query(QueryContext& ctx, const Graph& g, const DegreeView& degree, WeightFn&& weight,
                       Heuristic&& h, NodeId s, NodeId t, const AStarOptions& opts = {}) {
  if (opts.deg3 && !opts.deg2) throw std::invalid_argument("deg3 requires deg2");
  ctx.begin(s);
  PathResult result;
  if (s != t) ctx.search(g, degree, weight, h, t, opts);
  result.distance = ctx.distance(t);
  if (is_finite(result.distance)) result.path = ctx.path_to(t);
  result.stats = ctx.stats();
  return result;
}

/// A* restricted to the core plus the source's piece; if t hangs in another
/// piece, a second search continues from its attachment node inside t's piece.
template <class WeightFn, class Heuristic>
PathResult two_step_query(QueryContext& ctx, const Graph& g, const CoreDecomposition& core, WeightFn&& weight,
                          Heuristic&& h, NodeId s, NodeId t, const AStarOptions& opts = {}) {
  if (opts.deg3 && !opts.deg2) throw std::invalid_argument("deg3 requires deg2");
  ctx.begin(s);
  PathResult result;
  if (s == t) {
    result.distance = 0;
    return result;
  }
  const std::uint32_t source_piece = core.component[s];
  const std::uint32_t target_piece = core.component[t];
  const NodeId source_attach = core.in_core[s] ? kInvalidNode : core.attachment[s];
  DegreeView degree{core.restricted_degree, source_attach};
  auto in_first_step = [&](NodeId y) { return core.in_core[y] || core.component[y] == source_piece; };

  const bool one_step = core.in_core[t] || target_piece == source_piece;
  if (one_step) {
    ctx.search(g, degree, weight, h, t, opts, in_first_step);
  } else {
    const NodeId target_attach = core.attachment[t];
    const bool source_reaches_core = core.in_core[s] || source_attach != kInvalidNode;
    if (target_attach != kInvalidNode && source_reaches_core) {
      ctx.search(g, degree, weight, h, target_attach, opts, in_first_step);
      if (is_finite(ctx.distance(target_attach))) {
        ctx.reseed(target_attach);
        auto in_second_step = [&](NodeId y) { return core.component[y] == target_piece; };
        ctx.search(g, DegreeView{core.restricted_degree, target_attach}, weight, h, t, opts, in_second_step);
      }
    }
  }
  result.distance = ctx.distance(t);
  if (is_finite(result.distance)) result.path = ctx.path_to(t);
  result.stats = ctx.stats();
  return result;
}

}  // namespace chpot
