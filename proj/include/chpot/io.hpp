#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chpot/graph.hpp"
#include "chpot/ttf.hpp"
#include "chpot/turns.hpp"

namespace chpot {

struct Coordinate {
  double latitude = 0;
  double longitude = 0;
};

/// Everything a query scenario may need besides the graph itself. Per-edge
/// tables are either empty (absent) or have one entry per edge.
struct InstanceBundle {
  Graph graph;
  std::vector<Coordinate> coordinates;
  std::optional<TurnModel> turns;
  std::vector<TravelTimeFunction> ttf;
  std::vector<Weight> live;

  /// Throws MalformedInput if a table has the wrong length.
  void validate() const;
};

// 9th DIMACS challenge shortest path formats. Node ids are 1-based on disk.
Graph read_dimacs_gr(std::istream& in);
void write_dimacs_gr(std::ostream& out, const Graph& g);
std::vector<Coordinate> read_dimacs_co(std::istream& in, NodeId node_count);
void write_dimacs_co(std::ostream& out, std::span<const Coordinate> coordinates);

// Line oriented tables keyed by edge id (position in the graph's edge array).
// An optional "<kind> v1" first line names the format; '#' starts a comment line.

/// "edge k t1 v1 ... tk vk"; unlisted edges get the constant function of their weight.
std::vector<TravelTimeFunction> read_ttf_file(std::istream& in, const Graph& g);
/// Writes records for edges whose function is not the constant of their weight.
void write_ttf_file(std::ostream& out, const Graph& g, std::span<const TravelTimeFunction> ttf);

/// "edge letters", t = tunnel, h = highway. Returns g with those tags.
Graph read_tags_file(std::istream& in, const Graph& g);
void write_tags_file(std::ostream& out, const Graph& g);

/// "edge weight"; unlisted edges keep their scalar weight.
std::vector<Weight> read_live_file(std::istream& in, const Graph& g);
void write_live_file(std::ostream& out, const Graph& g, std::span<const Weight> live);

/// "in_edge out_edge cost", cost 'x' marks a forbidden turn.
TurnModel read_turns_file(std::istream& in, const Graph& g);
void write_turns_file(std::ostream& out, const TurnModel& turns);

/// One measured query, one CSV row.
struct QueryRecord {
  std::uint64_t query_id = 0;
  NodeId source = 0;
  NodeId target = 0;
  std::string algorithm;
  std::string scenario;
  Weight distance = kInfWeight;
  std::uint64_t queue_pushes = 0;
  std::uint64_t settled_nodes = 0;
  std::uint64_t running_time_ns = 0;
  Weight lower_bound_distance = kInfWeight;

  /// distance / lower_bound - 1; infinite if unreachable or the bound is 0 < distance.
  double length_increase() const noexcept;
};

inline constexpr const char* kResultsCsvHeader =
    "query_id,source,target,algorithm,scenario,distance,queue_pushes,settled_nodes,running_time_ns,"
    "lower_bound_distance,length_increase";

void write_results_csv(std::ostream& out, std::span<const QueryRecord> rows);

/// Quotes a CSV field if it contains a comma, quote, or line break.
std::string csv_field(std::string_view text);

// File path conveniences; I/O failures throw ParseError.
Graph read_dimacs_gr_file(const std::string& path);
std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

/// Loads <base>.gr and whichever of <base>.co/.tags/.ttf/.live/.turns exist.
InstanceBundle load_instance(const std::string& gr_path);
/// Writes <dir>/<name>.gr plus one file per present table.
void save_instance(const InstanceBundle& bundle, const std::string& dir, const std::string& name = "graph");

}  // namespace chpot
