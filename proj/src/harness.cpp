#include "chpot/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <optional>
#include <queue>
#include <random>
#include <set>

namespace chpot {

void ExperimentPlan::validate() const {
  if (algorithms.empty()) throw std::invalid_argument("no algorithm selected");
  if (options.deg3 && !options.deg2) throw std::invalid_argument("deg3 requires deg2");
}

BoxStats box_stats(std::vector<double> samples) {
  BoxStats b;
  if (samples.empty()) return b;
  std::sort(samples.begin(), samples.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(samples.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, samples.size() - 1);
    return samples[lo] + (pos - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
  };
  b.min = samples.front();
  b.max = samples.back();
  b.q1 = quantile(0.25);
  b.median = quantile(0.5);
  b.q3 = quantile(0.75);
  b.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  const double iqr = b.q3 - b.q1;
  b.whisker_low = *std::lower_bound(samples.begin(), samples.end(), b.q1 - 1.5 * iqr);
  b.whisker_high = *std::prev(std::upper_bound(samples.begin(), samples.end(), b.q3 + 1.5 * iqr));
  return b;
}

Weight reference_distance(const ScenarioInstance& instance, NodeId s, NodeId t, Time departure) {
  const TurnExpandedGraph* x = instance.expanded();
  const Graph& g = x ? x->graph : instance.graph();
  return instance.visit_weights(departure, [&](auto w) {
    auto weight = [&](EdgeId e, Weight d) {
      if (x) return TurnAwareWeights<decltype(w)>{x, w}(e, d);
      return w(e, d);
    };
    std::vector<Weight> dist(g.node_count(), kInfWeight);
    using Item = std::pair<Weight, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[s] = 0;
    queue.push({0, s});
    while (!queue.empty()) {
      const auto [d, v] = queue.top();
      queue.pop();
      if (d != dist[v]) continue;
      if (v == t) break;
      for (EdgeId e = g.begin_edge(v); e < g.end_edge(v); ++e) {
        const Weight nd = sat_add(d, weight(e, d));
        if (nd < dist[g.head(e)]) {
          dist[g.head(e)] = nd;
          queue.push({nd, g.head(e)});
        }
      }
    }
    return dist[t];
  });
}

ExperimentResult run_experiment(const InstanceBundle& bundle, const ContractionHierarchy& ch,
                                const ExperimentPlan& plan) {
  plan.validate();
  const ScenarioInstance instance(bundle, plan.scenario);
  std::optional<LandmarkSet> landmarks;
  if (std::find(plan.algorithms.begin(), plan.algorithms.end(), Algorithm::kAlt) != plan.algorithms.end())
    landmarks = select_landmarks_avoid(bundle.graph, plan.landmark_count, plan.seed);
  Router router(instance, ch, landmarks ? &*landmarks : nullptr);
  ChQuery lower_bound(ch);
  EngineOptions opts = plan.options;
  if (plan.scenario.turns) opts.bcc = false;

  const NodeId n = instance.query_node_count();
  ExperimentResult result;
  if (n == 0) return result;
  std::mt19937_64 rng(plan.seed);
  std::uniform_int_distribution<NodeId> node(0, n - 1);
  std::uniform_int_distribution<Time> departure_time(0, kDayMs - 1);
  const std::string scenario_name = plan.scenario.name();

  for (std::uint64_t q = 0; q < plan.queries; ++q) {
    const NodeId s = node(rng);
    const NodeId t = node(rng);
    const Time departure = plan.scenario.time_dependent() ? departure_time(rng) : 0;
    const Weight lb = lower_bound.distance(instance.phi(s), instance.phi(t));
    const Weight reference = plan.verify ? reference_distance(instance, s, t, departure) : kInfWeight;
    for (Algorithm algo : plan.algorithms) {
      router.prepare(algo, t);
      const auto start = std::chrono::steady_clock::now();
      const PathResult r = router.run(algo, s, t, departure, opts);
      const auto stop = std::chrono::steady_clock::now();
      if (plan.verify && r.distance != reference)
        throw VerificationFailure("query " + std::to_string(q) + " (" + std::to_string(s) + " -> " +
                                  std::to_string(t) + "): " + std::string(to_string(algo)) + " returned " +
                                  std::to_string(r.distance) + ", Dijkstra " + std::to_string(reference));
      QueryRecord rec;
      rec.query_id = q;
      rec.source = s;
      rec.target = t;
      rec.algorithm = to_string(algo);
      rec.scenario = scenario_name;
      rec.distance = r.distance;
      rec.queue_pushes = r.stats.queue_pushes;
      rec.settled_nodes = r.stats.settled;
      rec.running_time_ns =
          static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
      rec.lower_bound_distance = lb;
      result.records.push_back(std::move(rec));
    }
  }
  result.summary = summarize(result.records);
  return result;
}

std::vector<AlgorithmSummary> summarize(std::span<const QueryRecord> records) {
  struct Acc {
    std::string scenario;
    std::vector<double> times;
    double pushes = 0;
    double settled = 0;
    double increase = 0;
    std::uint64_t increase_count = 0;
  };
  std::vector<std::string> order;
  std::map<std::string, Acc> acc;
  for (const QueryRecord& r : records) {
    auto [it, fresh] = acc.try_emplace(r.algorithm);
    if (fresh) {
      order.push_back(r.algorithm);
      it->second.scenario = r.scenario;
    }
    Acc& a = it->second;
    a.times.push_back(static_cast<double>(r.running_time_ns));
    a.pushes += static_cast<double>(r.queue_pushes);
    a.settled += static_cast<double>(r.settled_nodes);
    const double inc = r.length_increase();
    if (std::isfinite(inc)) {
      a.increase += inc;
      ++a.increase_count;
    }
  }
  std::vector<AlgorithmSummary> out;
  for (const std::string& name : order) {
    Acc& a = acc[name];
    AlgorithmSummary s;
    s.algorithm = name;
    s.scenario = a.scenario;
    s.queries = a.times.size();
    s.mean_queue_pushes = a.pushes / static_cast<double>(s.queries);
    s.mean_settled = a.settled / static_cast<double>(s.queries);
    s.mean_length_increase = a.increase_count ? a.increase / static_cast<double>(a.increase_count) : 0.0;
    s.running_time_ns = box_stats(std::move(a.times));
    out.push_back(std::move(s));
  }
  const auto zero = std::find_if(out.begin(), out.end(), [](const auto& s) { return s.algorithm == "zero"; });
  if (zero != out.end())
    for (AlgorithmSummary& s : out)
      s.speedup = s.running_time_ns.mean > 0 ? zero->running_time_ns.mean / s.running_time_ns.mean : 0.0;
  return out;
}

void write_summary_csv(std::ostream& out, std::span<const AlgorithmSummary> summary) {
  out << "algorithm,scenario,queries,mean_time_ns,min_time_ns,whisker_low_ns,q1_time_ns,median_time_ns,"
         "q3_time_ns,whisker_high_ns,max_time_ns,mean_queue_pushes,mean_settled_nodes,mean_length_increase,"
         "speedup\n";
  out << std::setprecision(10);
  for (const AlgorithmSummary& s : summary) {
    const BoxStats& b = s.running_time_ns;
    out << csv_field(s.algorithm) << ',' << csv_field(s.scenario) << ',' << s.queries << ',' << b.mean << ',' << b.min << ','
        << b.whisker_low << ',' << b.q1 << ',' << b.median << ',' << b.q3 << ',' << b.whisker_high << ',' << b.max
        << ',' << s.mean_queue_pushes << ',' << s.mean_settled << ',' << s.mean_length_increase << ','
        << s.speedup << '\n';
  }
}

InstanceKind parse_instance_kind(const std::string& text) {
  if (text == "grid") return InstanceKind::kGrid;
  if (text == "random-geometric") return InstanceKind::kRandomGeometric;
  throw std::invalid_argument("unknown instance kind '" + text + "'");
}

namespace {

struct Point {
  double x = 0;  // metres
  double y = 0;
};

struct Road {
  NodeId a;
  NodeId b;
  double speed;  // metres per second
  std::uint8_t tags;
};

class UnionFind {
 public:
  explicit UnionFind(NodeId n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), NodeId{0}); }
  NodeId find(NodeId x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<NodeId> parent_;
};

constexpr double kCitySpeed = 50.0 / 3.6;
constexpr double kHighwaySpeed = 100.0 / 3.6;
constexpr double kResidentialSpeed = 30.0 / 3.6;

double uniform01(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

// Intersection lattice with some streets removed, streets subdivided by
// degree two nodes, and dead-end trees hanging off everywhere.
void grid_roads(NodeId n, std::mt19937_64& rng, std::vector<Point>& pts, std::vector<Road>& roads) {
  constexpr double kSpacing = 200.0;
  const auto side = static_cast<NodeId>(std::max(1.0, std::floor(std::sqrt(n / 4.0))));
  for (NodeId r = 0; r < side; ++r)
    for (NodeId c = 0; c < side; ++c)
      pts.push_back({c * kSpacing + (uniform01(rng) - 0.5) * 40.0, r * kSpacing + (uniform01(rng) - 0.5) * 40.0});

  struct Street {
    NodeId a, b;
    bool highway;
  };
  std::vector<Street> streets;
  for (NodeId r = 0; r < side; ++r)
    for (NodeId c = 0; c < side; ++c) {
      const NodeId v = r * side + c;
      if (c + 1 < side) streets.push_back({v, v + 1, r % 8 == 0});
      if (r + 1 < side) streets.push_back({v, v + side, c % 8 == 0});
    }
  std::vector<std::size_t> perm(streets.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  UnionFind uf(side * side);
  std::vector<bool> keep(streets.size(), false);
  for (std::size_t i : perm) keep[i] = uf.unite(streets[i].a, streets[i].b) || uniform01(rng) >= 0.12;

  NodeId budget = n - static_cast<NodeId>(pts.size());
  NodeId subdivide_budget = static_cast<NodeId>(budget * 0.6);
  budget -= subdivide_budget;
  for (std::size_t i = 0; i < streets.size(); ++i) {
    if (!keep[i]) continue;
    const Street& s = streets[i];
    const double speed = s.highway ? kHighwaySpeed : kCitySpeed;
    const std::uint8_t tags = s.highway ? kTagHighway : kTagNone;
    const auto k = static_cast<NodeId>(std::min<std::uint64_t>(below(rng, 3), subdivide_budget));
    subdivide_budget -= k;
    NodeId prev = s.a;
    for (NodeId j = 1; j <= k; ++j) {
      const double f = static_cast<double>(j) / (k + 1);
      const Point& pa = pts[s.a];
      const Point& pb = pts[s.b];
      const double bend = (uniform01(rng) - 0.5) * 30.0;
      pts.push_back({pa.x + f * (pb.x - pa.x) + bend, pa.y + f * (pb.y - pa.y) - bend});
      const NodeId v = static_cast<NodeId>(pts.size() - 1);
      roads.push_back({prev, v, speed, tags});
      prev = v;
    }
    roads.push_back({prev, s.b, speed, tags});
  }
  budget += subdivide_budget;

  while (budget > 0) {
    NodeId at = static_cast<NodeId>(below(rng, pts.size()));
    const auto len = static_cast<NodeId>(std::min<std::uint64_t>(1 + below(rng, 4), budget));
    const double angle = uniform01(rng) * 6.283185307179586;
    for (NodeId j = 0; j < len; ++j) {
      const double step = 40.0 + uniform01(rng) * 60.0;
      pts.push_back({pts[at].x + step * std::cos(angle), pts[at].y + step * std::sin(angle)});
      const NodeId v = static_cast<NodeId>(pts.size() - 1);
      roads.push_back({at, v, kResidentialSpeed, kTagNone});
      at = v;
    }
    budget -= len;
  }
}

// Uniform points joined to their nearest neighbours, then stitched together.
void geometric_roads(NodeId n, std::mt19937_64& rng, std::vector<Point>& pts, std::vector<Road>& roads) {
  constexpr NodeId kNeighbours = 3;
  const double side = std::sqrt(static_cast<double>(n)) * 150.0;
  for (NodeId i = 0; i < n; ++i) pts.push_back({uniform01(rng) * side, uniform01(rng) * side});
  const auto cells = static_cast<NodeId>(std::max(1.0, std::floor(std::sqrt(n / 2.0))));
  const double cell = side / cells;
  auto cell_of = [&](double c) { return std::min<NodeId>(cells - 1, static_cast<NodeId>(c / cell)); };
  std::vector<std::vector<NodeId>> bucket(std::size_t{cells} * cells);
  for (NodeId i = 0; i < n; ++i) bucket[cell_of(pts[i].y) * cells + cell_of(pts[i].x)].push_back(i);
  auto dist2 = [&](NodeId a, NodeId b) {
    const double dx = pts[a].x - pts[b].x, dy = pts[a].y - pts[b].y;
    return dx * dx + dy * dy;
  };

  std::set<std::pair<NodeId, NodeId>> links;
  auto link = [&](NodeId a, NodeId b) {
    if (links.insert({std::min(a, b), std::max(a, b)}).second) {
      const std::uint8_t tags = uniform01(rng) < 0.1 ? kTagHighway : kTagNone;
      roads.push_back({a, b, tags ? kHighwaySpeed : kCitySpeed, tags});
    }
  };
  for (NodeId i = 0; i < n; ++i) {
    std::vector<std::pair<double, NodeId>> near;
    const NodeId cx = cell_of(pts[i].x), cy = cell_of(pts[i].y);
    for (NodeId radius = 1; near.size() < kNeighbours + 1 && radius <= cells; ++radius) {
      near.clear();
      const NodeId x0 = cx >= radius ? cx - radius : 0, y0 = cy >= radius ? cy - radius : 0;
      const NodeId x1 = std::min(cells - 1, cx + radius), y1 = std::min(cells - 1, cy + radius);
      for (NodeId y = y0; y <= y1; ++y)
        for (NodeId x = x0; x <= x1; ++x)
          for (NodeId j : bucket[y * cells + x])
            if (j != i) near.push_back({dist2(i, j), j});
    }
    std::sort(near.begin(), near.end());
    for (std::size_t k = 0; k < std::min<std::size_t>(kNeighbours, near.size()); ++k) link(i, near[k].second);
  }

  UnionFind uf(n);
  for (const auto& [a, b] : links) uf.unite(a, b);
  for (NodeId i = 0; i < n; ++i) {
    if (uf.find(i) == uf.find(0)) continue;
    NodeId best = kInvalidNode;
    for (NodeId j = 0; j < n; ++j)
      if (uf.find(j) != uf.find(i) && (best == kInvalidNode || dist2(i, j) < dist2(i, best))) best = j;
    link(i, best);
    uf.unite(i, best);
  }
}

Weight travel_ms(const Point& a, const Point& b, double speed) {
  const double metres = std::hypot(a.x - b.x, a.y - b.y);
  return static_cast<Weight>(std::max(1.0, std::ceil(metres / speed * 1000.0)));
}

TravelTimeFunction rush_hour_profile(Weight freeflow, std::mt19937_64& rng) {
  constexpr Weight kStep = 7'200'000;  // 12 breakpoints, one every two hours
  const double morning = 0.2 + uniform01(rng) * 1.0;
  const double evening = 0.2 + uniform01(rng) * 0.8;
  std::vector<Breakpoint> points;
  Weight lowest = kInfWeight;
  for (Weight time = 0; time < kDayMs; time += kStep) {
    const double hour = time / 3'600'000.0;
    const double load = morning * std::exp(-std::pow((hour - 8.0) / 1.5, 2)) +
                        evening * std::exp(-std::pow((hour - 17.0) / 2.0, 2)) + 0.05 * std::sin(hour);
    const auto value = static_cast<Weight>(std::llround(freeflow * (1.0 + std::max(0.0, load))));
    points.push_back({time, value});
    lowest = std::min(lowest, value);
  }
  for (Breakpoint& p : points) p.value = p.value - lowest + freeflow;
  return TravelTimeFunction(std::move(points));
}

}  // namespace

InstanceBundle generate_synthetic_instance(const GeneratorOptions& options) {
  if (options.n == 0) throw std::invalid_argument("instance needs at least one node");
  std::mt19937_64 rng(options.seed);
  std::vector<Point> pts;
  std::vector<Road> roads;
  if (options.kind == InstanceKind::kGrid)
    grid_roads(options.n, rng, pts, roads);
  else
    geometric_roads(options.n, rng, pts, roads);

  for (Road& r : roads)
    if (uniform01(rng) < 0.02) r.tags |= kTagTunnel;

  std::vector<Arc> arcs;
  arcs.reserve(2 * roads.size());
  for (const Road& r : roads) {
    const Weight w = travel_ms(pts[r.a], pts[r.b], r.speed);
    arcs.push_back({r.a, r.b, w, r.tags});
    arcs.push_back({r.b, r.a, w, r.tags});
  }

  InstanceBundle bundle;
  bundle.graph = build_graph(options.n, arcs);
  const Graph& g = bundle.graph;
  for (const Point& p : pts) bundle.coordinates.push_back({49.0 + p.y / 111'000.0, 8.0 + p.x / 73'000.0});

  if (options.td || options.live) {
    bundle.ttf.reserve(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      bundle.ttf.push_back(uniform01(rng) < 0.4 ? rush_hour_profile(g.weight(e), rng)
                                                 : TravelTimeFunction::constant(g.weight(e)));
  }
  if (options.live) {
    constexpr Time kSnapshot = 55'800'000;  // 15:30
    bundle.live.reserve(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const double noise = 0.8 + uniform01(rng) * 0.5;
      const auto value = static_cast<Weight>(std::llround(bundle.ttf[e].eval(kSnapshot) * noise));
      bundle.live.push_back(std::max(value, g.weight(e)));
    }
  }
  if (options.turns) {
    TurnModel turns;
    const auto degree = undirected_degrees(g);
    for (EdgeId in = 0; in < g.edge_count(); ++in) {
      const NodeId y = g.head(in);
      for (EdgeId out = g.begin_edge(y); out < g.end_edge(y); ++out) {
        if (is_u_turn(g, in, out)) {
          if (degree[y] == 1) turns.set(in, out, 20'000);  // turning around at a dead end
          continue;
        }
        const double roll = uniform01(rng);
        if (roll < 0.03)
          turns.set(in, out, TurnModel::kForbidden);
        else if (roll < 0.13)
          turns.set(in, out, static_cast<Weight>(1'000 + below(rng, 14'000)));
      }
    }
    bundle.turns = std::move(turns);
  }
  bundle.validate();
  return bundle;
}

}  // namespace chpot
