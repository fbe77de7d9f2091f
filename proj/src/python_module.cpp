#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

#include "chpot/harness.hpp"

namespace py = pybind11;
using namespace chpot;

namespace {

std::optional<Weight> finite_or_none(Weight w) {
  if (!is_finite(w)) return std::nullopt;
  return w;
}

struct QueryResult {
  std::optional<Weight> distance;
  std::vector<EdgeId> path;
  std::uint64_t queue_pushes = 0;
  std::uint64_t settled = 0;
};

// Keeps the bundle and hierarchy alive for as long as the router exists.
class PyRouter {
 public:
  PyRouter(std::shared_ptr<InstanceBundle> bundle, std::shared_ptr<ContractionHierarchy> ch, const std::string& scenario,
           std::uint32_t landmarks, std::uint64_t seed)
      : bundle_(std::move(bundle)), ch_(std::move(ch)) {
    instance_ = std::make_unique<ScenarioInstance>(*bundle_, Scenario::parse(scenario));
    if (landmarks > 0)
      landmarks_ = std::make_unique<LandmarkSet>(select_landmarks_avoid(bundle_->graph, landmarks, seed));
    router_ = std::make_unique<Router>(*instance_, *ch_, landmarks_.get());
  }

  QueryResult query(NodeId s, NodeId t, const std::string& algorithm, Time departure, bool bcc, bool deg2, bool deg3,
                    bool check) {
    const NodeId count = instance_->query_node_count();
    if (s >= count || t >= count) throw py::index_error("query endpoint out of range");
    const Algorithm algo = parse_algorithm(algorithm);
    if (algo == Algorithm::kAlt && !landmarks_) throw std::invalid_argument("router was built without landmarks");
    router_->prepare(algo, t);
    const PathResult r = router_->run(algo, s, t, departure, EngineOptions{bcc, deg2, deg3, check});
    return {finite_or_none(r.distance), r.path, r.stats.queue_pushes, r.stats.settled};
  }

  std::string scenario() const { return instance_->scenario().name(); }
  NodeId query_node_count() const { return instance_->query_node_count(); }

 private:
  std::shared_ptr<InstanceBundle> bundle_;
  std::shared_ptr<ContractionHierarchy> ch_;
  std::unique_ptr<ScenarioInstance> instance_;
  std::unique_ptr<LandmarkSet> landmarks_;
  std::unique_ptr<Router> router_;
};

py::dict summary_dict(const AlgorithmSummary& s) {
  py::dict d;
  d["algorithm"] = s.algorithm;
  d["scenario"] = s.scenario;
  d["queries"] = s.queries;
  d["mean_running_time_ns"] = s.running_time_ns.mean;
  d["median_running_time_ns"] = s.running_time_ns.median;
  d["mean_queue_pushes"] = s.mean_queue_pushes;
  d["mean_settled"] = s.mean_settled;
  d["mean_length_increase"] = s.mean_length_increase;
  d["speedup"] = s.speedup;
  return d;
}

py::dict record_dict(const QueryRecord& r) {
  py::dict d;
  d["query_id"] = r.query_id;
  d["source"] = r.source;
  d["target"] = r.target;
  d["algorithm"] = r.algorithm;
  d["distance"] = finite_or_none(r.distance);
  d["queue_pushes"] = r.queue_pushes;
  d["settled_nodes"] = r.settled_nodes;
  d["running_time_ns"] = r.running_time_ns;
  d["lower_bound_distance"] = finite_or_none(r.lower_bound_distance);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "A* with lazily evaluated contraction hierarchy potentials";

  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);
  py::register_exception<VerificationFailure>(m, "VerificationFailure", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<MalformedInput>(m, "MalformedInput", PyExc_ValueError);

  m.attr("DAY_MS") = kDayMs;

  py::class_<InstanceBundle, std::shared_ptr<InstanceBundle>>(m, "Instance")
      .def_static(
          "load", [](const std::string& path) { return std::make_shared<InstanceBundle>(load_instance(path)); },
          py::arg("gr_path"), "Reads a DIMACS .gr file and the sibling tables next to it.")
      .def("save", &save_instance, py::arg("directory"), py::arg("name") = "graph")
      .def_property_readonly("node_count", [](const InstanceBundle& b) { return b.graph.node_count(); })
      .def_property_readonly("edge_count", [](const InstanceBundle& b) { return b.graph.edge_count(); })
      .def_property_readonly("has_ttf", [](const InstanceBundle& b) { return !b.ttf.empty(); })
      .def_property_readonly("has_live", [](const InstanceBundle& b) { return !b.live.empty(); })
      .def_property_readonly("has_turns", [](const InstanceBundle& b) { return b.turns.has_value(); })
      .def("arcs",
           [](const InstanceBundle& b) {
             std::vector<std::tuple<NodeId, NodeId, Weight>> out;
             for (const Arc& a : b.graph.arcs()) out.emplace_back(a.tail, a.head, a.weight);
             return out;
           },
           "(tail, head, weight) per edge id.");

  m.def(
      "generate",
      [](const std::string& kind, NodeId n, std::uint64_t seed, bool td, bool live, bool turns) {
        GeneratorOptions opts;
        opts.kind = parse_instance_kind(kind);
        opts.n = n;
        opts.seed = seed;
        opts.td = td;
        opts.live = live;
        opts.turns = turns;
        return std::make_shared<InstanceBundle>(generate_synthetic_instance(opts));
      },
      py::arg("kind") = "grid", py::arg("n") = 1000, py::arg("seed") = 1, py::arg("td") = false,
      py::arg("live") = false, py::arg("turns") = false);

  py::class_<ContractionHierarchy, std::shared_ptr<ContractionHierarchy>>(m, "Hierarchy")
      .def_static(
          "build",
          [](const InstanceBundle& b) {
            py::gil_scoped_release release;
            return std::make_shared<ContractionHierarchy>(build_ch(b.graph));
          },
          py::arg("instance"))
      .def_static(
          "load", [](const std::string& path) { return std::make_shared<ContractionHierarchy>(load_ch(path)); },
          py::arg("path"))
      .def("save", [](const ContractionHierarchy& ch, const std::string& path) { save_ch(ch, path); }, py::arg("path"))
      .def_property_readonly("node_count", [](const ContractionHierarchy& ch) { return ch.up.node_count(); })
      .def_property_readonly("up_edge_count", [](const ContractionHierarchy& ch) { return ch.up.edge_count(); })
      .def_property_readonly("down_edge_count",
                             [](const ContractionHierarchy& ch) { return ch.down_reversed.edge_count(); })
      .def(
          "distance",
          [](const ContractionHierarchy& ch, NodeId s, NodeId t) {
            if (s >= ch.up.node_count() || t >= ch.up.node_count()) throw py::index_error("node out of range");
            return finite_or_none(ch_query(ch, s, t));
          },
          py::arg("s"), py::arg("t"))
      .def(
          "potentials_to",
          [](const ContractionHierarchy& ch, NodeId t) {
            if (t >= ch.up.node_count()) throw py::index_error("node out of range");
            std::vector<std::optional<Weight>> out;
            for (Weight w : phast_all_to_one(ch, t)) out.push_back(finite_or_none(w));
            return out;
          },
          py::arg("t"), "Exact distance from every node to t.");

  py::class_<QueryResult>(m, "QueryResult")
      .def_readonly("distance", &QueryResult::distance)
      .def_readonly("path", &QueryResult::path)
      .def_readonly("queue_pushes", &QueryResult::queue_pushes)
      .def_readonly("settled", &QueryResult::settled)
      .def("__repr__", [](const QueryResult& r) {
        return "QueryResult(distance=" + (r.distance ? std::to_string(*r.distance) : std::string("None")) +
               ", edges=" + std::to_string(r.path.size()) + ", queue_pushes=" + std::to_string(r.queue_pushes) + ")";
      });

  py::class_<PyRouter>(m, "Router")
      .def(py::init<std::shared_ptr<InstanceBundle>, std::shared_ptr<ContractionHierarchy>, const std::string&,
                    std::uint32_t, std::uint64_t>(),
           py::arg("instance"), py::arg("hierarchy"), py::arg("scenario") = "base", py::arg("landmarks") = 0,
           py::arg("seed") = 1)
      .def("query", &PyRouter::query, py::arg("s"), py::arg("t"), py::arg("algorithm") = "chpot",
           py::arg("departure") = 0, py::arg("bcc") = true, py::arg("deg2") = true, py::arg("deg3") = true,
           py::arg("check_feasibility") = false,
           "Under a +turns scenario s and t are edge ids and the distance excludes the first edge.")
      .def_property_readonly("scenario", &PyRouter::scenario)
      .def_property_readonly("query_node_count", &PyRouter::query_node_count);

  m.def(
      "run_experiment",
      [](const InstanceBundle& b, const ContractionHierarchy& ch, const std::string& scenario,
         const std::vector<std::string>& algorithms, std::uint32_t queries, std::uint64_t seed, bool bcc, bool deg2,
         bool deg3, bool verify, std::uint32_t landmarks) {
        ExperimentPlan plan;
        plan.scenario = Scenario::parse(scenario);
        plan.algorithms.clear();
        for (const auto& a : algorithms) plan.algorithms.push_back(parse_algorithm(a));
        plan.options = EngineOptions{bcc, deg2, deg3, false};
        plan.queries = queries;
        plan.seed = seed;
        plan.verify = verify;
        plan.landmark_count = landmarks;
        ExperimentResult result;
        {
          py::gil_scoped_release release;
          result = run_experiment(b, ch, plan);
        }
        py::list summary, records;
        for (const auto& s : result.summary) summary.append(summary_dict(s));
        for (const auto& r : result.records) records.append(record_dict(r));
        py::dict out;
        out["summary"] = summary;
        out["records"] = records;
        return out;
      },
      py::arg("instance"), py::arg("hierarchy"), py::arg("scenario") = "base",
      py::arg("algorithms") = std::vector<std::string>{"zero", "chpot"}, py::arg("queries") = 100,
      py::arg("seed") = 1, py::arg("bcc") = true, py::arg("deg2") = true, py::arg("deg3") = true,
      py::arg("verify") = false, py::arg("landmarks") = 16);
}
