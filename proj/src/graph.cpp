#include "chpot/graph.hpp"

#include <algorithm>
#include <string>

namespace chpot {

Graph::Graph(std::vector<EdgeId> first_out, std::vector<NodeId> head, std::vector<Weight> weight,
             std::vector<std::uint8_t> tags)
    : first_out_(std::move(first_out)),
      head_(std::move(head)),
      weight_(std::move(weight)),
      tags_(std::move(tags)) {
  if (first_out_.empty() || first_out_.front() != 0 || first_out_.back() != head_.size())
    throw MalformedInput("first_out must start at 0 and end at the edge count");
  if (!std::is_sorted(first_out_.begin(), first_out_.end()))
    throw MalformedInput("first_out must be non-decreasing");
  if (weight_.size() != head_.size()) throw MalformedInput("one weight per edge required");
  if (tags_.empty()) tags_.assign(head_.size(), kTagNone);
  if (tags_.size() != head_.size()) throw MalformedInput("one tag entry per edge required");

  const NodeId n = node_count();
  tail_.resize(head_.size());
  for (NodeId x = 0; x < n; ++x)
    for (EdgeId e = first_out_[x]; e < first_out_[x + 1]; ++e) tail_[e] = x;
  for (NodeId y : head_)
    if (y >= n) throw MalformedInput("edge head " + std::to_string(y) + " out of range");
}

std::vector<Arc> Graph::arcs() const {
  std::vector<Arc> out;
  out.reserve(edge_count());
  for (EdgeId e = 0; e < edge_count(); ++e) out.push_back({tail_[e], head_[e], weight_[e], tags_[e]});
  return out;
}

Graph Graph::with_weights(std::vector<Weight> weight) const {
  return Graph(first_out_, head_, std::move(weight), tags_);
}

Graph build_graph(NodeId node_count, std::span<const Arc> arcs) {
  std::vector<EdgeId> first_out(std::size_t{node_count} + 1, 0);
  for (const Arc& a : arcs) {
    if (a.tail >= node_count || a.head >= node_count)
      throw MalformedInput("arc " + std::to_string(a.tail) + "->" + std::to_string(a.head) +
                           " references a node >= " + std::to_string(node_count));
    ++first_out[a.tail + 1];
  }
  for (NodeId x = 0; x < node_count; ++x) first_out[x + 1] += first_out[x];

  std::vector<NodeId> head(arcs.size());
  std::vector<Weight> weight(arcs.size());
  std::vector<std::uint8_t> tags(arcs.size());
  std::vector<EdgeId> next(first_out.begin(), first_out.end() - 1);
  for (const Arc& a : arcs) {
    const EdgeId e = next[a.tail]++;
    head[e] = a.head;
    weight[e] = a.weight;
    tags[e] = a.tags;
  }
  return Graph(std::move(first_out), std::move(head), std::move(weight), std::move(tags));
}

Graph reverse(const Graph& g, std::vector<EdgeId>* edge_map) {
  const NodeId n = g.node_count();
  std::vector<EdgeId> first_out(std::size_t{n} + 1, 0);
  for (NodeId y : g.heads()) ++first_out[y + 1];
  for (NodeId x = 0; x < n; ++x) first_out[x + 1] += first_out[x];

  const EdgeId m = g.edge_count();
  std::vector<NodeId> head(m);
  std::vector<Weight> weight(m);
  std::vector<std::uint8_t> tags(m);
  if (edge_map) edge_map->assign(m, kInvalidEdge);
  std::vector<EdgeId> next(first_out.begin(), first_out.end() - 1);
  for (EdgeId e = 0; e < m; ++e) {
    const EdgeId r = next[g.head(e)]++;
    head[r] = g.tail(e);
    weight[r] = g.weight(e);
    tags[r] = g.tags(e);
    if (edge_map) (*edge_map)[r] = e;
  }
  return Graph(std::move(first_out), std::move(head), std::move(weight), std::move(tags));
}

std::uint32_t undirected_degree(const Graph& g, NodeId x) {
  std::vector<NodeId> neighbours;
  for (EdgeId e = g.begin_edge(x); e < g.end_edge(x); ++e)
    if (g.head(e) != x) neighbours.push_back(g.head(e));
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.head(e) == x && g.tail(e) != x) neighbours.push_back(g.tail(e));
  std::sort(neighbours.begin(), neighbours.end());
  return static_cast<std::uint32_t>(std::unique(neighbours.begin(), neighbours.end()) - neighbours.begin());
}

std::vector<std::vector<NodeId>> undirected_adjacency(const Graph& g) {
  std::vector<std::vector<NodeId>> adj(g.node_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const NodeId u = g.tail(e), v = g.head(e);
    if (u == v) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

std::vector<std::uint32_t> undirected_degrees(const Graph& g) {
  const auto adj = undirected_adjacency(g);
  std::vector<std::uint32_t> degree(adj.size());
  for (std::size_t x = 0; x < adj.size(); ++x) degree[x] = static_cast<std::uint32_t>(adj[x].size());
  return degree;
}

}  // namespace chpot
