#include <gtest/gtest.h>

#include <random>

#include "chpot/applications.hpp"
#include "support/oracles.hpp"

using namespace chpot;

namespace {

constexpr Time kHour = 3'600'000;

InstanceBundle bundle_of(NodeId n, const std::vector<Arc>& arcs) {
  InstanceBundle b;
  b.graph = build_graph(n, arcs);
  return b;
}

const std::vector<EngineOptions> kToggles{{false, false, false}, {true, false, false}, {false, true, false},
                                          {true, true, false},   {false, true, true},  {true, true, true}};

std::vector<Weight> tagged_filter_distances(const Graph& g, NodeId s, std::uint8_t banned) {
  std::vector<Arc> kept;
  for (const Arc& a : g.arcs())
    if (!(a.tags & banned)) kept.push_back(a);
  return oracle::distances_from(g.node_count(), kept, s);
}

}  // namespace

TEST(ScenarioScaled, Examples) {
  const Graph g = build_graph(3, std::vector<Arc>{{0, 1, 100}, {1, 2, 7}});
  EXPECT_EQ(scenario_scaled(g, 1.0), (std::vector<Weight>{g.weight(0), g.weight(1)}));
  const auto scaled = scenario_scaled(g, 1.05);
  for (EdgeId e = 0; e < 2; ++e)
    if (g.weight(e) == 100) EXPECT_EQ(scaled[e], 105u);
    else EXPECT_EQ(scaled[e], 8u);  // 7.35 rounds up
  EXPECT_THROW(scenario_scaled(g, 0.99), std::invalid_argument);
}

TEST(ScenarioScaled, SaturatesAtInfinity) {
  const Graph g = build_graph(2, std::vector<Arc>{{0, 1, kInfWeight - 1}});
  EXPECT_EQ(scenario_scaled(g, 2.0)[0], kInfWeight);
}

TEST(ScenarioScaled, DoubledDistancesThroughRouter) {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 20; ++round) {
    const NodeId n = 2 + rng() % 60;
    const auto arcs = oracle::random_road_graph(rng, n);
    const InstanceBundle bundle = bundle_of(n, arcs);
    const ContractionHierarchy ch = build_ch(bundle.graph);
    Scenario sc;
    sc.kind = ScenarioKind::kScaled;
    sc.alpha = 2.0;
    const ScenarioInstance inst(bundle, sc);
    Router router(inst, ch);
    for (int q = 0; q < 10; ++q) {
      const NodeId s = rng() % n, t = rng() % n;
      const Weight base = oracle::distances_from(n, arcs, s)[t];
      const Weight expected = is_finite(base) ? 2 * base : kInfWeight;
      for (const auto& opts : kToggles) ASSERT_EQ(router.run(Algorithm::kChPot, s, t, 0, opts).distance, expected);
    }
  }
}

TEST(ScenarioAvoid, NoTagsIsBase) {
  const Graph g = build_graph(3, std::vector<Arc>{{0, 1, 4}, {1, 2, 5}});
  EXPECT_EQ(scenario_avoid(g, {true, true}), (std::vector<Weight>{g.weight(0), g.weight(1)}));
}

TEST(ScenarioAvoid, OnlyRouteThroughTunnel) {
  const std::vector<Arc> arcs{{0, 1, 4}, {1, 2, 5, kTagTunnel}};
  const InstanceBundle bundle = bundle_of(3, arcs);
  const ContractionHierarchy ch = build_ch(bundle.graph);
  const ScenarioInstance inst(bundle, Scenario::parse("avoid:t"));
  Router router(inst, ch);
  EXPECT_EQ(router.run(Algorithm::kChPot, 0, 2, 0, {}).distance, kInfWeight);
  EXPECT_EQ(router.run(Algorithm::kZero, 0, 1, 0, {}).distance, 4u);
  const ScenarioInstance highways(bundle, Scenario::parse("avoid:h"));
  Router router_h(highways, ch);
  EXPECT_EQ(router_h.run(Algorithm::kChPot, 0, 2, 0, {}).distance, 9u);
}

TEST(ScenarioAvoid, EqualsFilteredGraphDijkstra) {
  std::mt19937_64 rng(62);
  const char* names[] = {"avoid:t", "avoid:h", "avoid:t,h"};
  const std::uint8_t banned[] = {kTagTunnel, kTagHighway, kTagTunnel | kTagHighway};
  for (int round = 0; round < 100; ++round) {
    const NodeId n = 2 + rng() % 50;
    auto arcs = oracle::random_road_graph(rng, n);
    for (Arc& a : arcs) a.tags = rng() % 4 == 0 ? static_cast<std::uint8_t>(1 + rng() % 3) : kTagNone;
    const InstanceBundle bundle = bundle_of(n, arcs);
    const ContractionHierarchy ch = build_ch(bundle.graph);
    const int k = round % 3;
    const ScenarioInstance inst(bundle, Scenario::parse(names[k]));
    Router router(inst, ch);
    for (int q = 0; q < 5; ++q) {
      const NodeId s = rng() % n, t = rng() % n;
      const Weight expected = tagged_filter_distances(bundle.graph, s, banned[k])[t];
      for (const auto& opts : kToggles) ASSERT_EQ(router.run(Algorithm::kChPot, s, t, 0, opts).distance, expected);
    }
  }
}

TEST(ExpandTurns, FourNodeExample) {
  // a=0, b=1, c=2, d=3
  const Graph g = build_graph(4, std::vector<Arc>{{0, 1, 2}, {1, 2, 3}, {1, 3, 4}});
  const auto find = [&](NodeId x, NodeId y) {
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (g.tail(e) == x && g.head(e) == y) return e;
    return kInvalidEdge;
  };
  const EdgeId ab = find(0, 1), bc = find(1, 2), bd = find(1, 3);
  TurnModel turns;
  turns.set(ab, bc, TurnModel::kForbidden);
  turns.set(ab, bd, 5);
  const TurnExpandedGraph x = expand_turns(g, turns);
  ASSERT_EQ(x.graph.node_count(), 3u);
  ASSERT_EQ(x.graph.edge_count(), 1u);
  EXPECT_EQ(x.graph.tail(0), ab);
  EXPECT_EQ(x.graph.head(0), bd);
  EXPECT_EQ(x.graph.weight(0), 5u + 4u);
  EXPECT_EQ(x.turn_cost[0], 5u);
  EXPECT_EQ(x.phi[ab], 1u);
  EXPECT_EQ(x.phi[bd], 3u);
}

TEST(ExpandTurns, NonIncidentPairIsRejected) {
  const Graph g = build_graph(4, std::vector<Arc>{{0, 1, 2}, {2, 3, 3}});
  TurnModel turns;
  turns.set(0, 1, 1);
  EXPECT_THROW(turns.validate(g), MalformedInput);
}

TEST(ExpandTurns, ZeroTurnCostsReduceToPlainDistance) {
  std::mt19937_64 rng(63);
  for (int round = 0; round < 40; ++round) {
    const NodeId n = 2 + rng() % 30;
    const auto input = oracle::random_road_graph(rng, n);
    InstanceBundle bundle = bundle_of(n, input);
    const auto arcs = bundle.graph.arcs();
    TurnModel turns;
    // Allow every U-turn for free so the expanded graph mirrors the plain one.
    for (EdgeId e = 0; e < arcs.size(); ++e)
      for (EdgeId f = bundle.graph.begin_edge(arcs[e].head); f < bundle.graph.end_edge(arcs[e].head); ++f)
        if (is_u_turn(bundle.graph, e, f)) turns.set(e, f, 0);
    bundle.turns = turns;
    const ContractionHierarchy ch = build_ch(bundle.graph);
    const ScenarioInstance inst(bundle, Scenario::parse("base+turns"));
    Router router(inst, ch);
    if (arcs.empty()) continue;
    for (int q = 0; q < 10; ++q) {
      const EdgeId s = rng() % arcs.size(), t = rng() % arcs.size();
      const Weight plain = oracle::distances_from(n, arcs, arcs[s].head)[arcs[t].tail];
      const Weight expected = s == t ? 0 : oracle::add(plain, arcs[t].weight);
      ASSERT_EQ(router.run(Algorithm::kChPot, s, t, 0, {}).distance, expected);
    }
  }
}

TEST(ExpandTurns, MatchesExhaustiveEnumerationOnSmallGraphs) {
  std::mt19937_64 rng(64);
  int finite = 0;
  for (int round = 0; round < 300; ++round) {
    const NodeId n = 2 + rng() % 4;
    const auto input = oracle::random_digraph(rng, n, 1 + rng() % 8, 20);
    InstanceBundle bundle = bundle_of(n, input);
    const auto arcs = bundle.graph.arcs();
    const oracle::Turns table = oracle::random_turns(rng, arcs, 0.5);
    TurnModel turns;
    for (const auto& [key, cost] : table.table) turns.set(key.first, key.second, cost);
    bundle.turns = turns;
    const ContractionHierarchy ch = build_ch(bundle.graph);
    const ScenarioInstance inst(bundle, Scenario::parse("base+turns"));
    Router router(inst, ch);
    for (EdgeId s = 0; s < arcs.size(); ++s)
      for (EdgeId t = 0; t < arcs.size(); ++t) {
        if (s == t) continue;
        const Weight brute = oracle::enumerate_turn_paths(arcs, table, s, t);
        const Weight expected = is_finite(brute) ? brute - arcs[s].weight : kInfWeight;
        for (Algorithm algo : {Algorithm::kZero, Algorithm::kChPot}) {
          const PathResult r = router.run(algo, s, t, 0, {});
          ASSERT_EQ(r.distance, expected) << "round " << round << " s " << s << " t " << t;
          if (is_finite(expected)) EXPECT_EQ(path_weight(inst, r.path, 0), expected);
        }
        finite += is_finite(expected);
      }
  }
  EXPECT_GT(finite, 200);
}

TEST(TimeDependent, ConstantFunctionsEqualStatic) {
  std::mt19937_64 rng(65);
  const NodeId n = 60;
  const auto arcs = oracle::random_road_graph(rng, n);
  InstanceBundle bundle = bundle_of(n, arcs);
  for (EdgeId e = 0; e < bundle.graph.edge_count(); ++e)
    bundle.ttf.push_back(TravelTimeFunction::constant(bundle.graph.weight(e)));
  const ContractionHierarchy ch = build_ch(bundle.graph);
  const ScenarioInstance inst(bundle, Scenario::parse("td"));
  Router router(inst, ch);
  for (int q = 0; q < 30; ++q) {
    const NodeId s = rng() % n, t = rng() % n;
    const Time departure = rng() % kDayMs;
    EXPECT_EQ(router.run(Algorithm::kChPot, s, t, departure, {}).distance, oracle::distances_from(n, arcs, s)[t]);
  }
}

TEST(TimeDependent, MorningCongestionSwitchesRoute) {
  // s=0 -> a=1 -> t=3 is congested from 7:00 to 9:00 on its first edge; s -> b=2 -> t is constant.
  const std::vector<Arc> arcs{{0, 1, 1000}, {1, 3, 1000}, {0, 2, 3000}, {2, 3, 3000}};
  InstanceBundle bundle = bundle_of(4, arcs);
  const Graph& g = bundle.graph;
  const TravelTimeFunction rush({{0, 1000}, {7 * kHour, 1000}, {8 * kHour, 50'000}, {9 * kHour, 1000}});
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    bundle.ttf.push_back(g.tail(e) == 0 && g.head(e) == 1 ? rush : TravelTimeFunction::constant(g.weight(e)));
  const ContractionHierarchy ch = build_ch(g);
  const ScenarioInstance inst(bundle, Scenario::parse("td"));
  Router router(inst, ch);

  auto route = [&](NodeId via, Time dep) {
    Weight d = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (g.tail(e) == 0 && g.head(e) == via) d += bundle.ttf[e].eval(dep);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (g.tail(e) == via && g.head(e) == 3) d += bundle.ttf[e].eval(dep + d);
    return d;
  };
  const PathResult noon = router.run(Algorithm::kChPot, 0, 3, 12 * kHour, {});
  EXPECT_EQ(noon.distance, std::min(route(1, 12 * kHour), route(2, 12 * kHour)));
  EXPECT_EQ(noon.distance, 2000u);
  EXPECT_EQ(g.head(noon.path.front()), 1u);
  const PathResult morning = router.run(Algorithm::kChPot, 0, 3, 8 * kHour, {});
  EXPECT_EQ(morning.distance, std::min(route(1, 8 * kHour), route(2, 8 * kHour)));
  EXPECT_EQ(morning.distance, 6000u);
  EXPECT_EQ(g.head(morning.path.front()), 2u);
}

TEST(TimeDependent, MatchesTdDijkstraAndRecursion) {
  std::mt19937_64 rng(66);
  for (int round = 0; round < 100; ++round) {
    const NodeId n = 2 + rng() % 50;
    InstanceBundle bundle = bundle_of(n, oracle::random_road_graph(rng, n, 20'000));
    const auto arcs = bundle.graph.arcs();
    for (const Arc& a : arcs) bundle.ttf.push_back(oracle::random_ttf(rng, a.weight));
    const ContractionHierarchy ch = build_ch(bundle.graph);
    const ScenarioInstance inst(bundle, Scenario::parse("td"));
    Router router(inst, ch);
    for (int q = 0; q < 10; ++q) {
      const NodeId s = rng() % n, t = rng() % n;
      const Time dep = rng() % kDayMs;
      const Weight expected = oracle::td_distance(n, arcs, bundle.ttf, s, t, dep);
      for (const auto& opts : kToggles) {
        const PathResult r = router.run(Algorithm::kChPot, s, t, dep, opts);
        ASSERT_EQ(r.distance, expected) << "round " << round;
        if (is_finite(expected)) ASSERT_EQ(path_weight(inst, r.path, dep), expected);
      }
    }
  }
}

TEST(Blend, Examples) {
  const TravelTimeFunction faster = TravelTimeFunction::constant(60'000);
  EXPECT_EQ(blend_live_predicted(100'000, faster, 3'600'000, 3'600'000), 100'000u);
  EXPECT_EQ(blend_live_predicted(100'000, faster, 3'600'000, 3'620'000), 80'000u);
  EXPECT_EQ(blend_live_predicted(100'000, faster, 3'600'000, 3'700'000), 60'000u);
  EXPECT_EQ(blend_live_predicted(100'000, faster, 3'600'000, 1'000), 100'000u);
  const TravelTimeFunction slower = TravelTimeFunction::constant(90'000);
  EXPECT_EQ(blend_live_predicted(50'000, slower, 3'600'000, 3'620'000), 70'000u);
  EXPECT_EQ(blend_live_predicted(50'000, slower, 3'600'000, 3'700'000), 90'000u);
}

TEST(Blend, FifoUnderDenseSampling) {
  std::mt19937_64 rng(67);
  for (int round = 0; round < 200; ++round) {
    const Weight floor = 1000 + rng() % 50'000;
    const TravelTimeFunction predicted = oracle::random_ttf(rng, floor);
    const Weight live = floor + rng() % 200'000;
    const Time tau_soon = rng() % kDayMs;
    const Time start = tau_soon > 300'000 ? tau_soon - 300'000 : 0;
    Time prev_arrival = 0;
    for (Time tau = start; tau < tau_soon + 600'000; tau += 997) {
      const Time arrival = tau + blend_live_predicted(live, predicted, tau_soon, tau);
      ASSERT_GE(arrival, prev_arrival) << "round " << round;
      prev_arrival = arrival;
    }
  }
}

TEST(LowerBoundWeights, Examples) {
  InstanceBundle bundle = bundle_of(3, {{0, 1, 10'000}, {1, 2, 10'000}});
  bundle.ttf = {TravelTimeFunction::constant(10'000),
                TravelTimeFunction({{0, 10'000}, {static_cast<Weight>(12 * kHour), 30'000}})};
  EXPECT_EQ(lower_bound_weights(bundle, Scenario::parse("td")), (std::vector<Weight>{10'000, 10'000}));
  EXPECT_EQ(lower_bound_weights(bundle, Scenario::parse("scaled:1.5")), (std::vector<Weight>{10'000, 10'000}));
  bundle.live = {10'000, 12'000};
  EXPECT_EQ(lower_bound_weights(bundle, Scenario::parse("td-live")), (std::vector<Weight>{10'000, 10'000}));
}

TEST(LowerBoundWeights, SampledMinimumNeverBelowBound) {
  std::mt19937_64 rng(68);
  for (int round = 0; round < 200; ++round) {
    const TravelTimeFunction f = oracle::random_ttf(rng, 1 + rng() % 100'000);
    const Weight lb = f.lower_bound();
    Weight sampled = kInfWeight;
    for (Time tau = 0; tau < kDayMs; tau += 10'007) sampled = std::min(sampled, f.eval(tau));
    for (const Breakpoint& p : f.breakpoints()) sampled = std::min(sampled, f.eval(p.time));
    EXPECT_GE(sampled, lb);
    EXPECT_EQ(sampled, lb);  // the minimum sits on a breakpoint
  }
}

TEST(Contract, TtfBelowGraphWeightIsReported) {
  InstanceBundle bundle = bundle_of(3, {{0, 1, 10'000}, {1, 2, 10'000}});
  bundle.ttf = {TravelTimeFunction::constant(10'000), TravelTimeFunction({{0, 9'000}, {1000, 20'000}})};
  try {
    check_lower_bound_contract(bundle, Scenario::parse("td"));
    FAIL() << "no violation";
  } catch (const ContractViolation& e) {
    EXPECT_EQ(e.edge(), 1u);
  }
  EXPECT_THROW(ScenarioInstance(bundle, Scenario::parse("td")), ContractViolation);
  bundle.ttf[1] = TravelTimeFunction::constant(10'000);
  bundle.live = {10'000, 9'999};
  EXPECT_THROW(ScenarioInstance(bundle, Scenario::parse("td-live")), ContractViolation);
}

TEST(Contract, MissingTablesAreMalformed) {
  const InstanceBundle bundle = bundle_of(2, {{0, 1, 5}});
  EXPECT_THROW(ScenarioInstance(bundle, Scenario::parse("td")), MalformedInput);
  EXPECT_THROW(ScenarioInstance(bundle, Scenario::parse("base+turns")), MalformedInput);
}

TEST(ScenarioText, ParseAndName) {
  for (const char* text : {"base", "scaled:1.05", "avoid:t", "avoid:h", "avoid:t,h", "td", "td-live", "td-live+turns",
                           "scaled:2+turns"})
    EXPECT_EQ(Scenario::parse(text).name(), text);
  EXPECT_EQ(Scenario::parse("avoid:tunnels,highways").name(), "avoid:t,h");
  EXPECT_EQ(Scenario::parse("live").name(), "td-live");
  for (const char* bad : {"", "fast", "td:3", "avoid:x", "scaled:abc"})
    EXPECT_THROW(Scenario::parse(bad), std::invalid_argument) << bad;
}

TEST(Algorithms, ParseAndPrint) {
  for (Algorithm a : {Algorithm::kZero, Algorithm::kAlt, Algorithm::kChPot, Algorithm::kOracle})
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  EXPECT_EQ(parse_algorithm("dijkstra"), Algorithm::kZero);
  EXPECT_THROW(parse_algorithm("bfs"), std::invalid_argument);
}

TEST(Router, AllHeuristicsAgreeAcrossScenarios) {
  std::mt19937_64 rng(69);
  for (int round = 0; round < 30; ++round) {
    const NodeId n = 2 + rng() % 80;
    InstanceBundle bundle = bundle_of(n, oracle::random_road_graph(rng, n));
    const auto arcs = bundle.graph.arcs();
    for (const Arc& a : arcs) bundle.ttf.push_back(oracle::random_ttf(rng, a.weight));
    for (const Arc& a : arcs) bundle.live.push_back(a.weight + rng() % 5000);
    const ContractionHierarchy ch = build_ch(bundle.graph);
    const LandmarkSet landmarks = select_landmarks_avoid(bundle.graph, 4, round);
    for (const char* name : {"base", "scaled:1.1", "avoid:t,h", "td", "td-live"}) {
      const ScenarioInstance inst(bundle, Scenario::parse(name));
      Router router(inst, ch, &landmarks);
      for (int q = 0; q < 5; ++q) {
        const NodeId s = rng() % n, t = rng() % n;
        const Time dep = rng() % kDayMs;
        router.prepare(Algorithm::kOracle, t);
        const Weight ref = router.run(Algorithm::kZero, s, t, dep, {false, false, false}).distance;
        for (Algorithm algo : {Algorithm::kZero, Algorithm::kAlt, Algorithm::kChPot, Algorithm::kOracle}) {
          EngineOptions opts;
          opts.check_feasibility = true;
          const PathResult r = router.run(algo, s, t, dep, opts);
          ASSERT_EQ(r.distance, ref) << name << " " << to_string(algo);
          if (is_finite(ref)) ASSERT_EQ(path_weight(inst, r.path, dep), ref);
        }
      }
    }
  }
}
