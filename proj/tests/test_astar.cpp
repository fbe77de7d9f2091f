#include <gtest/gtest.h>

#include <random>

#include "chpot/astar.hpp"
#include "chpot/baselines.hpp"
#include "chpot/potentials.hpp"
#include "support/oracles.hpp"

using namespace chpot;

namespace {

Graph undirected(NodeId n, const std::vector<std::tuple<NodeId, NodeId, Weight>>& edges) {
  std::vector<Arc> arcs;
  for (auto [a, b, w] : edges) {
    arcs.push_back({a, b, w});
    arcs.push_back({b, a, w});
  }
  return build_graph(n, arcs);
}

struct GraphWeights {
  const Graph* g;
  Weight operator()(EdgeId e, Weight) const { return g->weight(e); }
};

const std::vector<AStarOptions> kOptionSets{{false, false}, {true, false}, {true, true}};

PathResult run(const Graph& g, NodeId s, NodeId t, const AStarOptions& opts) {
  QueryContext ctx(g.node_count());
  const auto degree = undirected_degrees(g);
  return astar_query(ctx, g, DegreeView{degree}, GraphWeights{&g}, ZeroHeuristic{}, s, t, opts);
}

Weight path_sum(const Graph& g, const std::vector<EdgeId>& path, NodeId s, NodeId t) {
  Weight sum = 0;
  NodeId at = s;
  for (EdgeId e : path) {
    EXPECT_EQ(g.tail(e), at);
    at = g.head(e);
    sum = sat_add(sum, g.weight(e));
  }
  EXPECT_EQ(at, t);
  return sum;
}

}  // namespace

TEST(AStar, SourceEqualsTarget) {
  const Graph g = undirected(3, {{0, 1, 4}, {1, 2, 4}});
  const PathResult r = run(g, 1, 1, {});
  EXPECT_EQ(r.distance, 0u);
  EXPECT_TRUE(r.path.empty());
}

TEST(AStar, SingleEdgePath) {
  const Graph g = build_graph(2, std::vector<Arc>{{0, 1, 7}});
  const PathResult r = run(g, 0, 1, {});
  EXPECT_EQ(r.distance, 7u);
  EXPECT_EQ(r.path, std::vector<EdgeId>{0});
}

TEST(AStar, Unreachable) {
  const Graph g = build_graph(3, std::vector<Arc>{{0, 1, 7}, {2, 1, 1}});
  for (const auto& opts : kOptionSets) EXPECT_EQ(run(g, 0, 2, opts).distance, kInfWeight);
}

TEST(AStar, ZeroHeuristicMatchesDijkstra) {
  std::mt19937_64 rng(51);
  for (int round = 0; round < 100; ++round) {
    const NodeId n = 1 + rng() % 60;
    const auto arcs = round % 2 ? oracle::random_road_graph(rng, n) : oracle::random_digraph(rng, n, 3 * n, 40);
    const Graph g = build_graph(n, arcs);
    QueryContext ctx(n);
    const auto degree = undirected_degrees(g);
    for (int q = 0; q < 5; ++q) {
      const NodeId s = rng() % n, t = rng() % n;
      const Weight expected = oracle::distances_from(n, arcs, s)[t];
      for (const auto& opts : kOptionSets) {
        const PathResult r = astar_query(ctx, g, DegreeView{degree}, GraphWeights{&g}, ZeroHeuristic{}, s, t, opts);
        ASSERT_EQ(r.distance, expected);
        if (is_finite(expected)) EXPECT_EQ(path_sum(g, r.path, s, t), expected);
      }
    }
  }
}

TEST(Degree2, PathIsWalkedWithoutQueue) {
  // s - a - b - t, all interior nodes of degree two.
  const Graph g = undirected(4, {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}});
  const PathResult r = run(g, 0, 3, {true, false});
  EXPECT_EQ(r.distance, 12u);
  EXPECT_LE(r.stats.queue_pushes, 2u);
  EXPECT_EQ(r.stats.settled, 1u);  // t is never popped, the stopping rule ends the search
  EXPECT_EQ(r.path.size(), 3u);
}

TEST(Degree2, ChainTerminalIsTheOnlyPush) {
  // s - y1 - y2 - y3 - z, z has two leaves.
  const Graph g = undirected(7, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {4, 6, 1}});
  const PathResult on = run(g, 0, 6, {true, false});
  const PathResult off = run(g, 0, 6, {});
  EXPECT_EQ(on.distance, 5u);
  EXPECT_EQ(off.distance, 5u);
  EXPECT_EQ(on.stats.queue_pushes, 2u);  // s and z
  EXPECT_EQ(off.stats.queue_pushes, 7u);
}

TEST(Degree2, NonImprovingChainStopsAndRingTerminates) {
  // A ring of degree two nodes around the source; the first walk is beaten later.
  const Graph g = undirected(4, {{0, 1, 10}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
  const PathResult r = run(g, 0, 1, {true, false});
  EXPECT_EQ(r.distance, 3u);
  EXPECT_EQ(r.stats.queue_pushes, 1u);
  EXPECT_EQ(path_sum(g, r.path, 0, 1), 3u);
}

TEST(Degree3, YJunctionPushesOnlyBranchEnds) {
  // s - y - z, z - a - b and z - c - d; b and d are degree three (two leaves each).
  const Graph g = undirected(11, {{0, 1, 1},
                                  {1, 2, 1},
                                  {2, 3, 1},
                                  {3, 4, 1},
                                  {2, 5, 1},
                                  {5, 6, 1},
                                  {4, 7, 1},
                                  {4, 8, 1},
                                  {6, 9, 1},
                                  {6, 10, 1}});
  const PathResult deg3 = run(g, 0, 10, {true, true});
  const PathResult deg2 = run(g, 0, 10, {true, false});
  EXPECT_EQ(deg3.distance, 5u);
  EXPECT_EQ(deg2.distance, 5u);
  EXPECT_EQ(deg3.stats.queue_pushes, 3u);  // s, b, d
  EXPECT_EQ(deg2.stats.queue_pushes, 4u);  // s, z, b, d
}

TEST(Degree3, RequiresDegree2) {
  const Graph g = undirected(2, {{0, 1, 1}});
  EXPECT_THROW(run(g, 0, 1, {false, true}), std::invalid_argument);
}

TEST(AStar, ExactPotentialsSettleOnlyShortestPathNodes) {
  std::mt19937_64 rng(52);
  for (int round = 0; round < 40; ++round) {
    const NodeId n = 2 + rng() % 60;
    const auto arcs = oracle::random_road_graph(rng, n);
    const Graph g = build_graph(n, arcs);
    const ContractionHierarchy ch = build_ch(g);
    CHPotentials pot(ch);
    QueryContext ctx(n);
    const auto degree = undirected_degrees(g);
    const NodeId s = rng() % n, t = rng() % n;
    const Weight dist = oracle::distances_from(n, arcs, s)[t];
    if (!is_finite(dist) || s == t) continue;
    pot.init_target(t);
    // Without chain skipping, weights are only read while scanning settled nodes.
    auto probe = [&](EdgeId e, Weight d) {
      EXPECT_EQ(sat_add(d, pot.potential(g.tail(e))), dist);
      return g.weight(e);
    };
    const PathResult r = astar_query(ctx, g, DegreeView{degree}, probe, pot, s, t, {});
    EXPECT_EQ(r.distance, dist);
  }
}

TEST(AStar, ChPotentialsPushNoMoreThanZeroAndMatchOracle) {
  std::mt19937_64 rng(53);
  double zero_pushes = 0, chpot_pushes = 0;
  for (int round = 0; round < 20; ++round) {
    const NodeId n = 50 + rng() % 150;
    const auto arcs = oracle::random_road_graph(rng, n);
    const Graph g = build_graph(n, arcs);
    const ContractionHierarchy ch = build_ch(g);
    CHPotentials pot(ch);
    OracleHeuristic oracle_h(g);
    QueryContext ctx(n);
    const auto degree = undirected_degrees(g);
    for (int q = 0; q < 10; ++q) {
      const NodeId s = rng() % n, t = rng() % n;
      for (const auto& opts : kOptionSets) {
        const PathResult z = astar_query(ctx, g, DegreeView{degree}, GraphWeights{&g}, ZeroHeuristic{}, s, t, opts);
        pot.init_target(t);
        const PathResult c = astar_query(ctx, g, DegreeView{degree}, GraphWeights{&g}, pot, s, t, opts);
        oracle_h.init_target(t);
        const PathResult o = astar_query(ctx, g, DegreeView{degree}, GraphWeights{&g}, oracle_h, s, t, opts);
        ASSERT_EQ(c.distance, z.distance);
        ASSERT_EQ(o.distance, z.distance);
        EXPECT_EQ(c.stats.queue_pushes, o.stats.queue_pushes);
        EXPECT_EQ(c.stats.settled, o.stats.settled);
        zero_pushes += z.stats.queue_pushes;
        chpot_pushes += c.stats.queue_pushes;
      }
    }
  }
  EXPECT_LE(chpot_pushes, zero_pushes);
}

TEST(AStar, InfeasibleHeuristicIsReported) {
  const Graph g = undirected(3, {{0, 1, 1}, {1, 2, 1}});
  QueryContext ctx(3);
  const auto degree = undirected_degrees(g);
  auto bad = [](NodeId x) -> Weight { return x == 0 ? 100 : 0; };
  AStarOptions opts;
  opts.check_feasibility = true;
  try {
    astar_query(ctx, g, DegreeView{degree}, GraphWeights{&g}, bad, 0, 2, opts);
    FAIL() << "no violation reported";
  } catch (const ContractViolation& e) {
    EXPECT_EQ(g.tail(e.edge()), 0u);
  }
}

TEST(TwoStep, MatchesDijkstraWithPendantTrees) {
  std::mt19937_64 rng(54);
  int cross_piece = 0, same_piece = 0;
  for (int round = 0; round < 100; ++round) {
    const NodeId n = 2 + rng() % 80;
    const auto arcs = oracle::random_road_graph(rng, n);
    const Graph g = build_graph(n, arcs);
    const CoreDecomposition core = compute_bcc_core(g);
    const ContractionHierarchy ch = build_ch(g);
    CHPotentials pot(ch);
    QueryContext ctx(n);
    for (int q = 0; q < 8; ++q) {
      const NodeId s = rng() % n, t = rng() % n;
      const Weight expected = oracle::distances_from(n, arcs, s)[t];
      if (!core.in_core[t] && core.component[t] != core.component[s]) ++cross_piece;
      if (!core.in_core[t] && core.component[t] == core.component[s]) ++same_piece;
      pot.init_target(t);
      for (const auto& opts : kOptionSets) {
        const PathResult z = two_step_query(ctx, g, core, GraphWeights{&g}, ZeroHeuristic{}, s, t, opts);
        ASSERT_EQ(z.distance, expected) << "round " << round;
        const PathResult c = two_step_query(ctx, g, core, GraphWeights{&g}, pot, s, t, opts);
        ASSERT_EQ(c.distance, expected) << "round " << round;
        if (is_finite(expected)) EXPECT_EQ(path_sum(g, c.path, s, t), expected);
      }
    }
  }
  EXPECT_GT(cross_piece, 50);
  EXPECT_GT(same_piece, 10);
}

TEST(TwoStep, SameDeadEndPieceFoundInFirstStep) {
  // Triangle core 0-1-2, dead end path 2-3-4-5.
  const Graph g = undirected(6, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {2, 3, 2}, {3, 4, 2}, {4, 5, 2}});
  const CoreDecomposition core = compute_bcc_core(g);
  QueryContext ctx(6);
  const PathResult r = two_step_query(ctx, g, core, GraphWeights{&g}, ZeroHeuristic{}, 5, 3, {});
  EXPECT_EQ(r.distance, 4u);
  EXPECT_EQ(path_sum(g, r.path, 5, 3), 4u);
  const PathResult across = two_step_query(ctx, g, core, GraphWeights{&g}, ZeroHeuristic{}, 0, 5, {});
  EXPECT_EQ(across.distance, 7u);
  EXPECT_EQ(path_sum(g, across.path, 0, 5), 7u);
}

TEST(QueryContext, PathToReportsUnreachedNode) {
  QueryContext ctx(3);
  ctx.begin(0);
  EXPECT_THROW(ctx.path_to(2), std::logic_error);
}
