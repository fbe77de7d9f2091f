#include "chpot/baselines.hpp"

#include <algorithm>
#include <iostream>
#include <random>

#include "chpot/dijkstra.hpp"

namespace chpot {

namespace {

void add_landmark(LandmarkSet& ls, const Graph& g, const Graph& reversed, NodeId landmark) {
  ls.landmarks.push_back(landmark);
  ls.dist_from.push_back(dijkstra_all(g, landmark));
  ls.dist_to.push_back(dijkstra_all(reversed, landmark));
}

}  // namespace

LandmarkSet make_landmark_set(const Graph& g, std::vector<NodeId> landmarks) {
  const Graph reversed = reverse(g);
  LandmarkSet ls;
  for (NodeId l : landmarks) {
    if (l >= g.node_count()) throw MalformedInput("landmark out of range");
    add_landmark(ls, g, reversed, l);
  }
  return ls;
}

NodeId avoid_landmark_from_root(const Graph& g, const LandmarkSet& current, NodeId root) {
  const NodeId n = g.node_count();
  std::vector<EdgeId> parent_edge;
  const std::vector<Weight> dist = dijkstra_all(g, root, &parent_edge);

  std::vector<std::vector<NodeId>> children(n);
  for (NodeId v = 0; v < n; ++v)
    if (parent_edge[v] != kInvalidEdge) children[g.tail(parent_edge[v])].push_back(v);

  std::vector<bool> is_landmark(n, false);
  for (NodeId l : current.landmarks) is_landmark[l] = true;

  // Post-order over the tree: size = summed bound slack, zeroed below landmarks.
  std::vector<std::uint64_t> size(n, 0);
  std::vector<bool> covered(n, false);
  std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < children[v].size()) {
      const NodeId c = children[v][next++];
      stack.emplace_back(c, 0);
      continue;
    }
    const NodeId u = v;
    stack.pop_back();
    bool has_landmark = is_landmark[u];
    std::uint64_t total = dist[u] - std::min(dist[u], alt_potential(current, root, u));
    for (NodeId c : children[u]) {
      has_landmark = has_landmark || covered[c];
      total += size[c];
    }
    covered[u] = has_landmark;
    size[u] = has_landmark ? 0 : total;
  }

  NodeId cur = root;
  for (;;) {
    NodeId best = kInvalidNode;
    for (NodeId c : children[cur])
      if (size[c] > 0 && (best == kInvalidNode || size[c] > size[best] || (size[c] == size[best] && c < best)))
        best = c;
    if (best == kInvalidNode) break;
    cur = best;
  }
  if (cur == root && (!children[root].empty() || is_landmark[root])) return kInvalidNode;
  return cur;
}

LandmarkSet select_landmarks_avoid(const Graph& g, std::uint32_t k, std::uint64_t seed) {
  const NodeId n = g.node_count();
  if (k > n) {
    std::cerr << "warning: " << k << " landmarks requested but graph has " << n << " nodes; using " << n << '\n';
    k = n;
  }
  const Graph reversed = reverse(g);
  LandmarkSet ls;
  if (k == 0) return ls;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  std::vector<bool> is_landmark(n, false);
  for (std::uint32_t attempt = 0; ls.size() < k && attempt < 8 * k + 64; ++attempt) {
    const NodeId l = avoid_landmark_from_root(g, ls, pick(rng));
    if (l == kInvalidNode || is_landmark[l]) continue;
    is_landmark[l] = true;
    add_landmark(ls, g, reversed, l);
  }
  // Degenerate graphs (many tiny components) can starve the avoid rounds.
  for (NodeId x = 0; ls.size() < k && x < n; ++x) {
    if (is_landmark[x]) continue;
    is_landmark[x] = true;
    add_landmark(ls, g, reversed, x);
  }
  return ls;
}

Weight alt_potential(const LandmarkSet& ls, NodeId x, NodeId t) {
  if (x == t) return 0;
  Weight best = 0;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    // dist(x,t) >= dist(x,L) - dist(t,L)
    const Weight x_to = ls.dist_to[i][x], t_to = ls.dist_to[i][t];
    if (is_finite(t_to)) {
      if (!is_finite(x_to)) return kInfWeight;
      if (x_to > t_to) best = std::max(best, x_to - t_to);
    }
    // dist(x,t) >= dist(L,t) - dist(L,x)
    const Weight from_x = ls.dist_from[i][x], from_t = ls.dist_from[i][t];
    if (is_finite(from_x)) {
      if (!is_finite(from_t)) return kInfWeight;
      if (from_t > from_x) best = std::max(best, from_t - from_x);
    }
  }
  return best;
}

std::vector<Weight> oracle_context(const Graph& g, NodeId t) { return dijkstra_all(reverse(g), t); }

OracleHeuristic::OracleHeuristic(const Graph& g) : reversed_(reverse(g)), table_(g.node_count(), kInfWeight) {}

void OracleHeuristic::init_target(NodeId t) { table_ = dijkstra_all(reversed_, t); }

}  // namespace chpot
