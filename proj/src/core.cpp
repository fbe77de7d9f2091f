#include "chpot/core.hpp"

#include <algorithm>

namespace chpot {

std::vector<std::vector<NodeId>> biconnected_components(const Graph& g) {
  const auto adj = undirected_adjacency(g);
  const NodeId n = g.node_count();
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> disc(n, kUnvisited), low(n, 0);
  std::vector<NodeId> node_stack;
  std::vector<std::vector<NodeId>> components;

  struct Frame {
    NodeId node;
    NodeId parent;
    std::size_t next;
  };
  std::vector<Frame> dfs;
  std::uint32_t time = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (disc[root] != kUnvisited) continue;
    disc[root] = low[root] = time++;
    node_stack.push_back(root);
    dfs.push_back({root, kInvalidNode, 0});
    while (!dfs.empty()) {
      Frame& f = dfs.back();
      const NodeId u = f.node;
      if (f.next < adj[u].size()) {
        const NodeId v = adj[u][f.next++];
        if (disc[v] == kUnvisited) {
          disc[v] = low[v] = time++;
          node_stack.push_back(v);
          dfs.push_back({v, u, 0});
        } else if (v != f.parent) {
          low[u] = std::min(low[u], disc[v]);
        }
        continue;
      }
      const NodeId parent = f.parent;
      dfs.pop_back();
      if (parent == kInvalidNode) {
        node_stack.pop_back();
        continue;
      }
      low[parent] = std::min(low[parent], low[u]);
      if (low[u] >= disc[parent]) {
        std::vector<NodeId> component;
        NodeId w;
        do {
          w = node_stack.back();
          node_stack.pop_back();
          component.push_back(w);
        } while (w != u);
        component.push_back(parent);
        components.push_back(std::move(component));
      }
    }
  }
  return components;
}

CoreDecomposition compute_bcc_core(const Graph& g) {
  const NodeId n = g.node_count();
  CoreDecomposition core;
  core.in_core.assign(n, false);
  core.attachment.assign(n, kInvalidNode);
  core.component.assign(n, kCoreComponent);

  const auto components = biconnected_components(g);
  const std::vector<NodeId>* largest = nullptr;
  for (const auto& c : components)
    if (!largest || c.size() > largest->size()) largest = &c;
  if (largest) {
    for (NodeId x : *largest) {
      core.in_core[x] = true;
      core.attachment[x] = x;
    }
    core.core_size = static_cast<std::uint32_t>(largest->size());
  }

  const auto adj = undirected_adjacency(g);
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < n; ++start) {
    if (core.in_core[start] || core.component[start] != kCoreComponent) continue;
    const std::uint32_t piece = core.piece_count++;
    NodeId attach = kInvalidNode;
    core.component[start] = piece;
    stack.assign(1, start);
    std::vector<NodeId> members;
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      members.push_back(x);
      for (NodeId y : adj[x]) {
        if (core.in_core[y]) {
          attach = y;
        } else if (core.component[y] == kCoreComponent) {
          core.component[y] = piece;
          stack.push_back(y);
        }
      }
    }
    for (NodeId x : members) core.attachment[x] = attach;
  }

  core.restricted_degree.assign(n, 0);
  for (NodeId x = 0; x < n; ++x) {
    std::uint32_t d = 0;
    for (NodeId y : adj[x])
      if (!core.in_core[x] || core.in_core[y]) ++d;
    core.restricted_degree[x] = d;
  }
  return core;
}

}  // namespace chpot
