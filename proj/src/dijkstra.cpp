#include "chpot/dijkstra.hpp"

#include "chpot/heap.hpp"

namespace chpot {

std::vector<Weight> dijkstra_all(const Graph& g, NodeId source, std::vector<EdgeId>* parent_edge) {
  return dijkstra_all(g, g.weights(), source, parent_edge);
}

std::vector<Weight> dijkstra_all(const Graph& g, std::span<const Weight> weights, NodeId source,
                                 std::vector<EdgeId>* parent_edge) {
  if (weights.size() != g.edge_count()) throw MalformedInput("one weight per edge required");
  std::vector<Weight> dist(g.node_count(), kInfWeight);
  if (parent_edge) parent_edge->assign(g.node_count(), kInvalidEdge);
  MinIdHeap queue(g.node_count());
  dist[source] = 0;
  queue.push(source, 0);
  while (!queue.empty()) {
    const auto [x, d] = queue.pop();
    for (EdgeId e = g.begin_edge(x); e < g.end_edge(x); ++e) {
      const NodeId y = g.head(e);
      const Weight nd = sat_add(d, weights[e]);
      if (nd < dist[y]) {
        dist[y] = nd;
        if (parent_edge) (*parent_edge)[y] = e;
        queue.push_or_decrease(y, nd);
      }
    }
  }
  return dist;
}

}  // namespace chpot
