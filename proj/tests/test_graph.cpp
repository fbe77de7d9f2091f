#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "chpot/dijkstra.hpp"
#include "chpot/graph.hpp"
#include "chpot/heap.hpp"
#include "support/oracles.hpp"

using namespace chpot;

namespace {

std::multiset<std::tuple<NodeId, NodeId, Weight>> edge_multiset(const Graph& g) {
  std::multiset<std::tuple<NodeId, NodeId, Weight>> out;
  for (const Arc& a : g.arcs()) out.insert({a.tail, a.head, a.weight});
  return out;
}

}  // namespace

TEST(BuildGraph, SingleEdge) {
  const std::vector<Arc> arcs{{0, 1, 5}};
  const Graph g = build_graph(2, arcs);
  EXPECT_EQ(std::vector<EdgeId>(g.first_out().begin(), g.first_out().end()), (std::vector<EdgeId>{0, 1, 1}));
  EXPECT_EQ(std::vector<NodeId>(g.heads().begin(), g.heads().end()), std::vector<NodeId>{1});
  EXPECT_EQ(std::vector<Weight>(g.weights().begin(), g.weights().end()), std::vector<Weight>{5});
}

TEST(BuildGraph, EmptyGraph) {
  const Graph g = build_graph(1, {});
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_EQ(std::vector<EdgeId>(g.first_out().begin(), g.first_out().end()), (std::vector<EdgeId>{0, 0}));
}

TEST(BuildGraph, TwoRoutesShorterWins) {
  const std::vector<Arc> arcs{{0, 1, 1}, {1, 2, 2}, {0, 2, 9}};
  const Graph g = build_graph(3, arcs);
  EXPECT_EQ(dijkstra_all(g, 0)[2], 3u);
}

TEST(BuildGraph, RejectsNodeOutOfRange) {
  const std::vector<Arc> arcs{{0, 2, 1}};
  EXPECT_THROW(build_graph(2, arcs), MalformedInput);
}

TEST(BuildGraph, StableWithinTailAndKeepsParallelEdges) {
  const std::vector<Arc> arcs{{1, 0, 4}, {0, 1, 7}, {1, 0, 2}, {0, 1, 3}};
  const Graph g = build_graph(2, arcs);
  const std::vector<Arc> expected{{0, 1, 7}, {0, 1, 3}, {1, 0, 4}, {1, 0, 2}};
  EXPECT_EQ(g.arcs(), expected);
}

TEST(BuildGraph, RoundTripProperty) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    const NodeId n = 1 + rng() % 30;
    const auto arcs = oracle::random_digraph(rng, n, rng() % 80, 50);
    const Graph g = build_graph(n, arcs);
    auto sorted = arcs;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Arc& a, const Arc& b) { return a.tail < b.tail; });
    EXPECT_EQ(g.arcs(), sorted);
    for (NodeId x = 0; x < n; ++x)
      for (EdgeId e = g.begin_edge(x); e < g.end_edge(x); ++e) EXPECT_EQ(g.tail(e), x);
  }
}

TEST(Reverse, SingleEdge) {
  const std::vector<Arc> arcs{{0, 1, 5}};
  const Graph r = reverse(build_graph(2, arcs));
  EXPECT_EQ(r.arcs(), (std::vector<Arc>{{1, 0, 5}}));
}

TEST(Reverse, ThreeCycle) {
  const std::vector<Arc> arcs{{0, 1, 1}, {1, 2, 1}, {2, 0, 1}};
  const Graph r = reverse(build_graph(3, arcs));
  const std::vector<Arc> expected{{0, 2, 1}, {1, 0, 1}, {2, 1, 1}};
  EXPECT_EQ(r.arcs(), expected);
}

TEST(Reverse, InvolutionAndEdgeMap) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    const NodeId n = 1 + rng() % 25;
    const Graph g = build_graph(n, oracle::random_digraph(rng, n, rng() % 60, 20));
    std::vector<EdgeId> map;
    const Graph r = reverse(g, &map);
    EXPECT_EQ(r.node_count(), g.node_count());
    for (EdgeId e = 0; e < r.edge_count(); ++e) {
      EXPECT_EQ(r.tail(e), g.head(map[e]));
      EXPECT_EQ(r.head(e), g.tail(map[e]));
      EXPECT_EQ(r.weight(e), g.weight(map[e]));
    }
    EXPECT_EQ(edge_multiset(reverse(r)), edge_multiset(g));
  }
}

TEST(UndirectedDegree, PathMiddle) {
  const std::vector<Arc> arcs{{0, 1, 1}, {1, 0, 1}, {1, 2, 1}, {2, 1, 1}};
  EXPECT_EQ(undirected_degree(build_graph(3, arcs), 1), 2u);
}

TEST(UndirectedDegree, AntiparallelPairCountsOnce) {
  const std::vector<Arc> arcs{{0, 1, 1}, {1, 0, 1}};
  EXPECT_EQ(undirected_degree(build_graph(2, arcs), 0), 1u);
}

TEST(UndirectedDegree, Star) {
  std::vector<Arc> arcs;
  for (NodeId v = 1; v <= 4; ++v) {
    arcs.push_back({0, v, 1});
    arcs.push_back({v, 0, 1});
  }
  EXPECT_EQ(undirected_degree(build_graph(5, arcs), 0), 4u);
}

TEST(UndirectedDegree, SelfLoopIgnored) {
  const std::vector<Arc> arcs{{0, 0, 1}, {0, 1, 1}};
  EXPECT_EQ(undirected_degree(build_graph(2, arcs), 0), 1u);
}

TEST(UndirectedDegree, SumBoundAndEqualityCase) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 100; ++round) {
    const NodeId n = 1 + rng() % 20;
    const auto arcs = oracle::random_digraph(rng, n, rng() % 40, 9);
    const Graph g = build_graph(n, arcs);
    const auto all = undirected_degrees(g);
    std::uint64_t sum = 0;
    for (NodeId x = 0; x < n; ++x) {
      EXPECT_EQ(all[x], undirected_degree(g, x));
      sum += all[x];
    }
    std::set<std::pair<NodeId, NodeId>> simple;
    bool plain = true;
    for (const Arc& a : arcs) {
      if (a.tail == a.head) plain = false;
      if (!simple.insert({std::min(a.tail, a.head), std::max(a.tail, a.head)}).second) plain = false;
    }
    EXPECT_LE(sum, 2 * arcs.size());
    EXPECT_EQ(sum == 2 * arcs.size(), plain);
  }
}

TEST(Weights, InfinityAbsorbsAddition) {
  EXPECT_EQ(sat_add(kInfWeight, 5), kInfWeight);
  EXPECT_EQ(sat_add(kInfWeight, kInfWeight), kInfWeight);
  EXPECT_EQ(sat_add(kInfWeight - 3, 2), kInfWeight - 1);
  EXPECT_EQ(sat_add(kInfWeight - 3, 3), kInfWeight);
}

TEST(MinIdHeap, OrdersByKeyThenId) {
  MinIdHeap heap(10);
  heap.push(5, 3);
  heap.push(2, 3);
  heap.push(7, 1);
  heap.push(9, 8);
  EXPECT_TRUE(heap.push_or_decrease(9, 0));
  EXPECT_FALSE(heap.push_or_decrease(5, 4));
  std::vector<NodeId> order;
  while (!heap.empty()) order.push_back(heap.pop().first);
  EXPECT_EQ(order, (std::vector<NodeId>{9, 7, 2, 5}));
}

TEST(MinIdHeap, MatchesSortedOrderUnderRandomOperations) {
  std::mt19937_64 rng(5);
  MinIdHeap heap(200);
  std::map<NodeId, Weight> keys;
  for (int op = 0; op < 5000; ++op) {
    const NodeId id = rng() % 200;
    const Weight key = rng() % 1000;
    if (rng() % 3 == 0 && !keys.empty()) {
      const auto [top, k] = heap.pop();
      const auto best = std::min_element(keys.begin(), keys.end(), [](auto& a, auto& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
      });
      EXPECT_EQ(top, best->first);
      EXPECT_EQ(k, best->second);
      keys.erase(best);
    } else if (heap.push_or_decrease(id, key)) {
      keys[id] = key;
    }
  }
}
