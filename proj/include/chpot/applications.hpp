#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chpot/astar.hpp"
#include "chpot/baselines.hpp"
#include "chpot/ch.hpp"
#include "chpot/core.hpp"
#include "chpot/io.hpp"
#include "chpot/potentials.hpp"
#include "chpot/ttf.hpp"
#include "chpot/turns.hpp"

namespace chpot {

// Weight functors, called as w(edge, distance_at_tail) like the A* engine expects.

struct StaticWeights {
  std::span<const Weight> weight;
  Weight operator()(EdgeId e, Weight) const noexcept { return weight[e]; }
};

/// Entry time at the tail is departure + distance so far.
struct TimeDependentWeights {
  std::span<const TravelTimeFunction> ttf;
  Time departure = 0;
  Weight operator()(EdgeId e, Weight d) const noexcept { return ttf[e].eval(departure + d); }
};

struct BlendedWeights {
  std::span<const Weight> live;
  std::span<const TravelTimeFunction> predicted;
  Time tau_soon = 0;
  Time departure = 0;
  Weight operator()(EdgeId e, Weight d) const noexcept {
    return blend_live_predicted(live[e], predicted[e], tau_soon, departure + d);
  }
};

/// Weights on a turn expanded graph: the turn is taken first, then the
/// original out-edge is entered (and evaluated) at distance + turn cost.
template <class Inner>
struct TurnAwareWeights {
  const TurnExpandedGraph* expanded;
  Inner inner;
  Weight operator()(EdgeId e, Weight d) const {
    const Weight c = expanded->turn_cost[e];
    return sat_add(c, inner(expanded->graph.head(e), sat_add(d, c)));
  }
};

/// w_q = ceil(alpha * w) with alpha taken as a multiple of 1e-6. Throws
/// std::invalid_argument for alpha < 1. Weights that would reach
/// kInfWeight saturate there.
std::vector<Weight> scenario_scaled(const Graph& g, double alpha);

struct AvoidFlags {
  bool tunnels = false;
  bool highways = false;
};

/// Tagged edges get kInfWeight, all others keep their weight.
std::vector<Weight> scenario_avoid(const Graph& g, AvoidFlags avoid);

enum class ScenarioKind { kBase, kScaled, kAvoid, kTimeDependent, kLive };

struct Scenario {
  ScenarioKind kind = ScenarioKind::kBase;
  double alpha = 1.0;
  AvoidFlags avoid;
  bool turns = false;
  /// Live values hold until departure + tau_soon_offset.
  Time tau_soon_offset = 3'600'000;

  bool time_dependent() const noexcept {
    return kind == ScenarioKind::kTimeDependent || kind == ScenarioKind::kLive;
  }

  /// base, scaled:<alpha>, avoid:<t|h|t,h>, td, td-live; "+turns" suffix.
  std::string name() const;
  /// Inverse of name(); throws std::invalid_argument.
  static Scenario parse(std::string_view text);
};

/// Per-edge lower bound of w_q over all times: the graph weight for static
/// and blended scenarios, the function minimum for time dependent ones.
std::vector<Weight> lower_bound_weights(const InstanceBundle& bundle, const Scenario& scenario);

/// Throws ContractViolation naming the first edge whose query weight may
/// drop below the weight the hierarchy was built on (the graph weight).
void check_lower_bound_contract(const InstanceBundle& bundle, const Scenario& scenario);

/// A scenario bound to an instance: validated tables, materialized static
/// weights, and the turn expanded graph if turns are on.
class ScenarioInstance {
 public:
  /// Throws MalformedInput if the scenario needs a table the bundle lacks,
  /// ContractViolation if the lower bound contract fails.
  ScenarioInstance(const InstanceBundle& bundle, const Scenario& scenario);

  const InstanceBundle& bundle() const noexcept { return *bundle_; }
  const Graph& graph() const noexcept { return bundle_->graph; }
  const Scenario& scenario() const noexcept { return scenario_; }
  const TurnExpandedGraph* expanded() const noexcept { return expanded_ ? &*expanded_ : nullptr; }

  /// Node count of the graph queries run on (edge count under turns).
  NodeId query_node_count() const noexcept;
  /// Lower bound graph node a query node maps to.
  NodeId phi(NodeId x) const noexcept { return expanded_ ? expanded_->phi[x] : x; }

  /// Calls f with the weight functor of the original graph for a departure.
  template <class F>
  decltype(auto) visit_weights(Time departure, F&& f) const {
    switch (scenario_.kind) {
      case ScenarioKind::kTimeDependent:
        return f(TimeDependentWeights{bundle_->ttf, departure});
      case ScenarioKind::kLive:
        return f(BlendedWeights{bundle_->live, bundle_->ttf, departure + scenario_.tau_soon_offset, departure});
      default:
        return f(StaticWeights{static_weights_});
    }
  }

 private:
  const InstanceBundle* bundle_;
  Scenario scenario_;
  std::vector<Weight> static_weights_;
  std::optional<TurnExpandedGraph> expanded_;
};

enum class Algorithm { kZero, kAlt, kChPot, kOracle };

std::string_view to_string(Algorithm algo) noexcept;
/// zero, alt, chpot, oracle; throws std::invalid_argument.
Algorithm parse_algorithm(std::string_view text);

struct EngineOptions {
  bool bcc = true;
  bool deg2 = true;
  bool deg3 = true;
  bool check_feasibility = false;
};

/// Answers queries of one scenario with any of the four heuristics. Under
/// turns, s and t are edge ids of the input graph (expanded nodes) and the
/// distance excludes the source edge; BCC restriction is skipped there.
class Router {
 public:
  /// landmarks may be null if Algorithm::kAlt is never used.
  Router(const ScenarioInstance& instance, const ContractionHierarchy& ch, const LandmarkSet* landmarks = nullptr);

  /// Work that is not charged to a query: the Oracle table fill.
  void prepare(Algorithm algo, NodeId t);

  /// One query. For kOracle, prepare(kOracle, t) must have run for this t.
  PathResult run(Algorithm algo, NodeId s, NodeId t, Time departure, const EngineOptions& opts);

  const ScenarioInstance& instance() const noexcept { return *instance_; }
  CHPotentials& potentials() noexcept { return potentials_; }
  const CoreDecomposition& core() const noexcept { return core_; }

 private:
  template <class H>
  PathResult run_with(H& h, NodeId s, NodeId t, Time departure, const EngineOptions& opts);

  const ScenarioInstance* instance_;
  const LandmarkSet* landmarks_;
  CoreDecomposition core_;
  std::vector<std::uint32_t> degree_;
  CHPotentials potentials_;
  std::optional<AltHeuristic> alt_;
  OracleHeuristic oracle_;
  NodeId oracle_target_ = kInvalidNode;
  QueryContext ctx_;
};

/// Arrival minus departure along a fixed path, recomputed edge by edge.
/// Under turns the path is over expanded edges.
Weight path_weight(const ScenarioInstance& instance, std::span<const EdgeId> path, Time departure);

}  // namespace chpot
