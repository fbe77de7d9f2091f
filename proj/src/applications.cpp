#include "chpot/applications.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace chpot {

std::vector<Weight> scenario_scaled(const Graph& g, double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be a finite value >= 1");
  const auto num = static_cast<std::uint64_t>(std::llround(alpha * 1e6));
  constexpr std::uint64_t den = 1'000'000;
  std::vector<Weight> out(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Weight w = g.weight(e);
    if (!is_finite(w)) {
      out[e] = kInfWeight;
      continue;
    }
    const std::uint64_t scaled = (std::uint64_t{w} * num + den - 1) / den;
    out[e] = scaled >= kInfWeight ? kInfWeight : static_cast<Weight>(scaled);
  }
  return out;
}

std::vector<Weight> scenario_avoid(const Graph& g, AvoidFlags avoid) {
  std::uint8_t mask = kTagNone;
  if (avoid.tunnels) mask |= kTagTunnel;
  if (avoid.highways) mask |= kTagHighway;
  std::vector<Weight> out(g.weights().begin(), g.weights().end());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.tags(e) & mask) out[e] = kInfWeight;
  return out;
}

std::string Scenario::name() const {
  std::string s;
  switch (kind) {
    case ScenarioKind::kBase:
      s = "base";
      break;
    case ScenarioKind::kScaled: {
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, alpha);
      s = "scaled:" + std::string(buf, res.ptr);
      break;
    }
    case ScenarioKind::kAvoid:
      s = "avoid:";
      if (avoid.tunnels) s += 't';
      if (avoid.tunnels && avoid.highways) s += ',';
      if (avoid.highways) s += 'h';
      break;
    case ScenarioKind::kTimeDependent:
      s = "td";
      break;
    case ScenarioKind::kLive:
      s = "td-live";
      break;
  }
  if (turns) s += "+turns";
  return s;
}

Scenario Scenario::parse(std::string_view text) {
  Scenario sc;
  constexpr std::string_view kTurns = "+turns";
  if (text.size() >= kTurns.size() && text.substr(text.size() - kTurns.size()) == kTurns) {
    sc.turns = true;
    text.remove_suffix(kTurns.size());
  }
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto bad = [&] { return std::invalid_argument("unknown scenario '" + std::string(text) + "'"); };
  if (head == "base") {
    sc.kind = ScenarioKind::kBase;
  } else if (head == "scaled") {
    sc.kind = ScenarioKind::kScaled;
    if (!arg.empty()) {
      const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), sc.alpha);
      if (res.ec != std::errc{} || res.ptr != arg.data() + arg.size()) throw bad();
    }
  } else if (head == "avoid") {
    sc.kind = ScenarioKind::kAvoid;
    std::size_t i = 0;
    while (i < arg.size()) {
      const auto comma = std::min(arg.find(',', i), arg.size());
      const std::string_view flag = arg.substr(i, comma - i);
      if (flag == "t" || flag == "tunnels") sc.avoid.tunnels = true;
      else if (flag == "h" || flag == "highways") sc.avoid.highways = true;
      else throw bad();
      i = comma + 1;
    }
  } else if (head == "td") {
    sc.kind = ScenarioKind::kTimeDependent;
  } else if (head == "td-live" || head == "live") {
    sc.kind = ScenarioKind::kLive;
  } else {
    throw bad();
  }
  if (colon != std::string_view::npos && sc.kind != ScenarioKind::kScaled && sc.kind != ScenarioKind::kAvoid)
    throw bad();
  return sc;
}

namespace {

void require_tables(const InstanceBundle& bundle, const Scenario& scenario) {
  const EdgeId m = bundle.graph.edge_count();
  if (scenario.time_dependent() && bundle.ttf.size() != m)
    throw MalformedInput("scenario " + scenario.name() + " needs a travel time function per edge");
  if (scenario.kind == ScenarioKind::kLive && bundle.live.size() != m)
    throw MalformedInput("scenario " + scenario.name() + " needs a live weight per edge");
  if (scenario.turns && !bundle.turns) throw MalformedInput("scenario " + scenario.name() + " needs a turn table");
}

}  // namespace

std::vector<Weight> lower_bound_weights(const InstanceBundle& bundle, const Scenario& scenario) {
  require_tables(bundle, scenario);
  const Graph& g = bundle.graph;
  if (scenario.kind != ScenarioKind::kTimeDependent) return {g.weights().begin(), g.weights().end()};
  std::vector<Weight> out(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) out[e] = bundle.ttf[e].lower_bound();
  return out;
}

void check_lower_bound_contract(const InstanceBundle& bundle, const Scenario& scenario) {
  require_tables(bundle, scenario);
  const Graph& g = bundle.graph;
  auto fail = [&](EdgeId e, const char* what, Weight value) {
    throw ContractViolation(e, std::string(what) + " " + std::to_string(value) + " is below the lower bound " +
                                   std::to_string(g.weight(e)));
  };
  if (!scenario.time_dependent()) return;  // scaled and avoided weights never drop below w
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (bundle.ttf[e].lower_bound() < g.weight(e)) fail(e, "travel time", bundle.ttf[e].lower_bound());
    if (scenario.kind == ScenarioKind::kLive && bundle.live[e] < g.weight(e)) fail(e, "live weight", bundle.live[e]);
  }
}

ScenarioInstance::ScenarioInstance(const InstanceBundle& bundle, const Scenario& scenario)
    : bundle_(&bundle), scenario_(scenario) {
  bundle.validate();
  check_lower_bound_contract(bundle, scenario);
  switch (scenario.kind) {
    case ScenarioKind::kScaled:
      static_weights_ = scenario_scaled(bundle.graph, scenario.alpha);
      break;
    case ScenarioKind::kAvoid:
      static_weights_ = scenario_avoid(bundle.graph, scenario.avoid);
      break;
    default:
      static_weights_.assign(bundle.graph.weights().begin(), bundle.graph.weights().end());
  }
  if (scenario.turns) expanded_ = expand_turns(bundle.graph, *bundle.turns);
}

NodeId ScenarioInstance::query_node_count() const noexcept {
  return expanded_ ? expanded_->graph.node_count() : bundle_->graph.node_count();
}

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::kZero:
      return "zero";
    case Algorithm::kAlt:
      return "alt";
    case Algorithm::kChPot:
      return "chpot";
    case Algorithm::kOracle:
      return "oracle";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "zero" || text == "dijkstra") return Algorithm::kZero;
  if (text == "alt") return Algorithm::kAlt;
  if (text == "chpot") return Algorithm::kChPot;
  if (text == "oracle") return Algorithm::kOracle;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
}

Router::Router(const ScenarioInstance& instance, const ContractionHierarchy& ch, const LandmarkSet* landmarks)
    : instance_(&instance),
      landmarks_(landmarks),
      potentials_(ch),
      oracle_(instance.graph()),
      ctx_(instance.query_node_count()) {
  if (ch.node_count() != instance.graph().node_count())
    throw MalformedInput("hierarchy and graph differ in node count");
  if (landmarks) alt_.emplace(*landmarks);
  if (const TurnExpandedGraph* x = instance.expanded()) {
    degree_ = undirected_degrees(x->graph);
  } else {
    core_ = compute_bcc_core(instance.graph());
    degree_ = undirected_degrees(instance.graph());
  }
}

void Router::prepare(Algorithm algo, NodeId t) {
  if (algo != Algorithm::kOracle) return;
  const NodeId target = instance_->phi(t);
  if (target != oracle_target_) {
    oracle_.init_target(target);
    oracle_target_ = target;
  }
}

template <class H>
PathResult Router::run_with(H& h, NodeId s, NodeId t, Time departure, const EngineOptions& opts) {
  const AStarOptions ao{opts.deg2, opts.deg3, opts.check_feasibility};
  return instance_->visit_weights(departure, [&](auto w) {
    if (const TurnExpandedGraph* x = instance_->expanded()) {
      TurnAwareWeights<decltype(w)> tw{x, w};
      MappedHeuristic<H> mh{&h, &x->phi};
      return astar_query(ctx_, x->graph, DegreeView{degree_}, tw, mh, s, t, ao);
    }
    if (opts.bcc) return two_step_query(ctx_, instance_->graph(), core_, w, h, s, t, ao);
    return astar_query(ctx_, instance_->graph(), DegreeView{degree_}, w, h, s, t, ao);
  });
}

PathResult Router::run(Algorithm algo, NodeId s, NodeId t, Time departure, const EngineOptions& opts) {
  const NodeId n = instance_->query_node_count();
  if (s >= n || t >= n) throw std::out_of_range("query node out of range");
  const NodeId target = instance_->phi(t);
  switch (algo) {
    case Algorithm::kZero: {
      ZeroHeuristic h;
      return run_with(h, s, t, departure, opts);
    }
    case Algorithm::kAlt: {
      if (!alt_) throw std::logic_error("router has no landmarks");
      alt_->init_target(target);
      return run_with(*alt_, s, t, departure, opts);
    }
    case Algorithm::kChPot: {
      potentials_.init_target(target);
      return run_with(potentials_, s, t, departure, opts);
    }
    case Algorithm::kOracle: {
      if (oracle_target_ != target) throw std::logic_error("oracle table not prepared for this target");
      return run_with(oracle_, s, t, departure, opts);
    }
  }
  throw std::logic_error("unknown algorithm");
}

Weight path_weight(const ScenarioInstance& instance, std::span<const EdgeId> path, Time departure) {
  return instance.visit_weights(departure, [&](auto w) {
    Weight d = 0;
    if (const TurnExpandedGraph* x = instance.expanded()) {
      TurnAwareWeights<decltype(w)> tw{x, w};
      for (EdgeId e : path) d = sat_add(d, tw(e, d));
    } else {
      for (EdgeId e : path) d = sat_add(d, w(e, d));
    }
    return d;
  });
}

}  // namespace chpot
