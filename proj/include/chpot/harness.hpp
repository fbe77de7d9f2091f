#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "chpot/applications.hpp"
#include "chpot/io.hpp"

namespace chpot {

struct ExperimentPlan {
  Scenario scenario;
  std::vector<Algorithm> algorithms{Algorithm::kChPot};
  EngineOptions options;
  std::uint32_t queries = 10'000;
  std::uint64_t seed = 1;
  std::uint32_t landmark_count = 16;
  /// Compare every distance against a plain Dijkstra on the query weights.
  bool verify = false;

  /// Throws std::invalid_argument on deg3 without deg2 or an empty algorithm list.
  void validate() const;
};

/// Quartiles with whiskers at the most extreme samples within 1.5 IQR.
struct BoxStats {
  double min = 0;
  double q1 = 0;
  double median = 0;
  double q3 = 0;
  double max = 0;
  double mean = 0;
  double whisker_low = 0;
  double whisker_high = 0;
};

/// Linear interpolation between order statistics; empty input gives all zeros.
BoxStats box_stats(std::vector<double> samples);

struct AlgorithmSummary {
  std::string algorithm;
  std::string scenario;
  std::uint64_t queries = 0;
  BoxStats running_time_ns;
  double mean_queue_pushes = 0;
  double mean_settled = 0;
  /// Over queries with a finite length increase.
  double mean_length_increase = 0;
  /// Mean Zero running time over mean running time; 0 if Zero did not run.
  double speedup = 0;
};

struct ExperimentResult {
  /// Ordered by query id, then by algorithm in plan order.
  std::vector<QueryRecord> records;
  std::vector<AlgorithmSummary> summary;
};

/// A --verify mismatch: an algorithm returned a distance other than Dijkstra's.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs the plan's query batch against a hierarchy built on bundle.graph.
/// Throws ContractViolation before any query if the scenario breaks the
/// lower bound contract, VerificationFailure on a --verify mismatch.
ExperimentResult run_experiment(const InstanceBundle& bundle, const ContractionHierarchy& ch,
                                const ExperimentPlan& plan);

std::vector<AlgorithmSummary> summarize(std::span<const QueryRecord> records);

void write_summary_csv(std::ostream& out, std::span<const AlgorithmSummary> summary);

/// Reference distance by plain (time dependent) Dijkstra over the query graph.
Weight reference_distance(const ScenarioInstance& instance, NodeId s, NodeId t, Time departure);

enum class InstanceKind { kGrid, kRandomGeometric };

/// grid, random-geometric; throws std::invalid_argument.
InstanceKind parse_instance_kind(const std::string& text);

struct GeneratorOptions {
  InstanceKind kind = InstanceKind::kGrid;
  NodeId n = 1000;
  std::uint64_t seed = 1;
  /// Predicted travel time functions on a share of the edges.
  bool td = false;
  /// Live snapshot; implies td.
  bool live = false;
  bool turns = false;
};

/// Connected bidirected road-like graph with exactly n nodes, travel time
/// weights proportional to length, tunnel and highway tags, coordinates, and
/// the requested tables. Travel time functions and live values never drop
/// below the graph weight. Same options, same instance.
InstanceBundle generate_synthetic_instance(const GeneratorOptions& options);

}  // namespace chpot
