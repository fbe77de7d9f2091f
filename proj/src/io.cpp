#include "chpot/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>

namespace chpot {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

template <class Int>
Int parse_int(std::string_view token, std::size_t line, const char* what) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(token) + "'");
  return value;
}

Weight parse_weight(std::string_view token, std::size_t line) {
  const auto w = parse_int<std::uint64_t>(token, line, "weight");
  if (w >= kInfWeight) throw ParseError(line, "weight " + std::string(token) + " too large");
  return static_cast<Weight>(w);
}

EdgeId parse_edge(std::string_view token, std::size_t line, const Graph& g) {
  const auto e = parse_int<std::uint64_t>(token, line, "edge index");
  if (e >= g.edge_count()) throw ParseError(line, "unknown edge index " + std::string(token));
  return static_cast<EdgeId>(e);
}

// Reads a table with an optional "<kind> v1" header line: calls
// on_record(tokens, line_number) per data line.
template <class OnRecord>
void read_table(std::istream& in, std::string_view kind, OnRecord&& on_record) {
  std::string line;
  std::size_t number = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++number;
    const auto tokens = split(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (std::exchange(first, false) && tokens[0] == kind) {
      if (tokens.size() != 2 || tokens[1] != "v1")
        throw ParseError(number, "unsupported " + std::string(kind) + " format version");
      continue;
    }
    on_record(tokens, number);
  }
}

}  // namespace

void InstanceBundle::validate() const {
  const EdgeId m = graph.edge_count();
  if (!coordinates.empty() && coordinates.size() != graph.node_count())
    throw MalformedInput("coordinate table must have one entry per node");
  if (!ttf.empty() && ttf.size() != m) throw MalformedInput("travel time table must have one entry per edge");
  if (!live.empty() && live.size() != m) throw MalformedInput("live table must have one entry per edge");
  if (turns) turns->validate(graph);
}

Graph read_dimacs_gr(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  bool header = false;
  NodeId n = 0;
  std::uint64_t m = 0;
  std::vector<Arc> arcs;
  while (std::getline(in, line)) {
    ++number;
    const auto tokens = split(line);
    if (tokens.empty() || tokens[0] == "c") continue;
    if (tokens[0] == "p") {
      if (header) throw ParseError(number, "duplicate problem line");
      if (tokens.size() != 4 || tokens[1] != "sp") throw ParseError(number, "expected 'p sp <nodes> <arcs>'");
      n = parse_int<NodeId>(tokens[2], number, "node count");
      m = parse_int<std::uint64_t>(tokens[3], number, "arc count");
      if (n == kInvalidNode) throw ParseError(number, "node count too large");
      arcs.reserve(m);
      header = true;
    } else if (tokens[0] == "a") {
      if (!header) throw ParseError(number, "arc before problem line");
      if (tokens.size() != 4) throw ParseError(number, "expected 'a <tail> <head> <weight>'");
      const auto u = parse_int<std::uint64_t>(tokens[1], number, "tail");
      const auto v = parse_int<std::uint64_t>(tokens[2], number, "head");
      if (u < 1 || u > n || v < 1 || v > n) throw ParseError(number, "node id out of range 1.." + std::to_string(n));
      arcs.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1), parse_weight(tokens[3], number)});
    } else {
      throw ParseError(number, "unknown line type '" + std::string(tokens[0]) + "'");
    }
  }
  if (!header) throw ParseError(number, "missing problem line 'p sp <nodes> <arcs>'");
  if (arcs.size() != m)
    throw ParseError(number, "problem line announces " + std::to_string(m) + " arcs, found " +
                                 std::to_string(arcs.size()));
  return build_graph(n, arcs);
}

void write_dimacs_gr(std::ostream& out, const Graph& g) {
  out << "p sp " << g.node_count() << ' ' << g.edge_count() << '\n';
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    out << "a " << g.tail(e) + 1 << ' ' << g.head(e) + 1 << ' ' << g.weight(e) << '\n';
}

std::vector<Coordinate> read_dimacs_co(std::istream& in, NodeId node_count) {
  std::vector<Coordinate> coords(node_count);
  std::vector<bool> seen(node_count, false);
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    const auto tokens = split(line);
    if (tokens.empty() || tokens[0] == "c") continue;
    if (tokens[0] == "p") {
      if (tokens.size() != 5 || tokens[1] != "aux" || tokens[2] != "sp" || tokens[3] != "co")
        throw ParseError(number, "expected 'p aux sp co <nodes>'");
      if (parse_int<NodeId>(tokens[4], number, "node count") != node_count)
        throw ParseError(number, "coordinate file node count does not match the graph");
      header = true;
    } else if (tokens[0] == "v") {
      if (!header) throw ParseError(number, "coordinate before problem line");
      if (tokens.size() != 4) throw ParseError(number, "expected 'v <id> <x> <y>'");
      const auto id = parse_int<std::uint64_t>(tokens[1], number, "node id");
      if (id < 1 || id > node_count) throw ParseError(number, "node id out of range");
      const auto x = parse_int<std::int64_t>(tokens[2], number, "x");
      const auto y = parse_int<std::int64_t>(tokens[3], number, "y");
      coords[id - 1] = {static_cast<double>(y) / 1e6, static_cast<double>(x) / 1e6};
      seen[id - 1] = true;
    } else {
      throw ParseError(number, "unknown line type '" + std::string(tokens[0]) + "'");
    }
  }
  if (!header) throw ParseError(number, "missing problem line 'p aux sp co <nodes>'");
  for (NodeId x = 0; x < node_count; ++x)
    if (!seen[x]) throw ParseError(number, "no coordinate for node " + std::to_string(x + 1));
  return coords;
}

void write_dimacs_co(std::ostream& out, std::span<const Coordinate> coordinates) {
  out << "p aux sp co " << coordinates.size() << '\n';
  for (std::size_t i = 0; i < coordinates.size(); ++i)
    out << "v " << i + 1 << ' ' << std::llround(coordinates[i].longitude * 1e6) << ' '
        << std::llround(coordinates[i].latitude * 1e6) << '\n';
}

std::vector<TravelTimeFunction> read_ttf_file(std::istream& in, const Graph& g) {
  std::vector<TravelTimeFunction> ttf;
  ttf.reserve(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) ttf.push_back(TravelTimeFunction::constant(g.weight(e)));
  std::vector<bool> seen(g.edge_count(), false);
  read_table(in, "ttf", [&](const std::vector<std::string_view>& tokens, std::size_t line) {
    if (tokens.size() < 2) throw ParseError(line, "expected 'edge k t1 v1 ... tk vk'");
    const EdgeId e = parse_edge(tokens[0], line, g);
    const auto k = parse_int<std::uint64_t>(tokens[1], line, "breakpoint count");
    if (k == 0 || tokens.size() != 2 + 2 * k)
      throw ParseError(line, "edge " + std::to_string(e) + ": expected " + std::to_string(k) + " breakpoints");
    if (seen[e]) throw ParseError(line, "edge " + std::to_string(e) + ": duplicate record");
    seen[e] = true;
    std::vector<Breakpoint> points(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto t = parse_int<std::uint64_t>(tokens[2 + 2 * i], line, "time");
      if (t >= kDayMs) throw ParseError(line, "edge " + std::to_string(e) + ": time outside one day");
      points[i] = {static_cast<Weight>(t), parse_weight(tokens[3 + 2 * i], line)};
    }
    try {
      ttf[e] = TravelTimeFunction(std::move(points));
    } catch (const MalformedInput& err) {
      throw ParseError(line, "edge " + std::to_string(e) + ": " + err.what());
    }
  });
  return ttf;
}

void write_ttf_file(std::ostream& out, const Graph& g, std::span<const TravelTimeFunction> ttf) {
  out << "ttf v1\n";
  for (EdgeId e = 0; e < ttf.size(); ++e) {
    const auto points = ttf[e].breakpoints();
    if (points.size() == 1 && points[0].value == g.weight(e)) continue;
    out << e << ' ' << points.size();
    for (const Breakpoint& p : points) out << ' ' << p.time << ' ' << p.value;
    out << '\n';
  }
}

Graph read_tags_file(std::istream& in, const Graph& g) {
  std::vector<std::uint8_t> tags(g.edge_tags().begin(), g.edge_tags().end());
  read_table(in, "tags", [&](const std::vector<std::string_view>& tokens, std::size_t line) {
    if (tokens.size() != 2) throw ParseError(line, "expected 'edge letters'");
    const EdgeId e = parse_edge(tokens[0], line, g);
    std::uint8_t t = kTagNone;
    for (char c : tokens[1]) {
      if (c == 't') t |= kTagTunnel;
      else if (c == 'h') t |= kTagHighway;
      else if (c != '-') throw ParseError(line, std::string("unknown tag letter '") + c + "'");
    }
    tags[e] = t;
  });
  return Graph({g.first_out().begin(), g.first_out().end()}, {g.heads().begin(), g.heads().end()},
               {g.weights().begin(), g.weights().end()}, std::move(tags));
}

void write_tags_file(std::ostream& out, const Graph& g) {
  out << "tags v1\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.tags(e) == kTagNone) continue;
    out << e << ' ';
    if (g.tags(e) & kTagTunnel) out << 't';
    if (g.tags(e) & kTagHighway) out << 'h';
    out << '\n';
  }
}

std::vector<Weight> read_live_file(std::istream& in, const Graph& g) {
  std::vector<Weight> live(g.weights().begin(), g.weights().end());
  read_table(in, "live", [&](const std::vector<std::string_view>& tokens, std::size_t line) {
    if (tokens.size() != 2) throw ParseError(line, "expected 'edge weight'");
    live[parse_edge(tokens[0], line, g)] = parse_weight(tokens[1], line);
  });
  return live;
}

void write_live_file(std::ostream& out, const Graph& g, std::span<const Weight> live) {
  out << "live v1\n";
  for (EdgeId e = 0; e < live.size(); ++e)
    if (live[e] != g.weight(e)) out << e << ' ' << live[e] << '\n';
}

TurnModel read_turns_file(std::istream& in, const Graph& g) {
  TurnModel turns;
  read_table(in, "turns", [&](const std::vector<std::string_view>& tokens, std::size_t line) {
    if (tokens.size() != 3) throw ParseError(line, "expected 'in_edge out_edge cost'");
    const EdgeId a = parse_edge(tokens[0], line, g);
    const EdgeId b = parse_edge(tokens[1], line, g);
    if (g.head(a) != g.tail(b))
      throw ParseError(line, "turn " + std::to_string(a) + "->" + std::to_string(b) + " joins non-incident edges");
    turns.set(a, b, tokens[2] == "x" ? TurnModel::kForbidden : parse_weight(tokens[2], line));
  });
  return turns;
}

void write_turns_file(std::ostream& out, const TurnModel& turns) {
  out << "turns v1\n";
  for (const auto& entry : turns.entries()) {
    out << entry.in << ' ' << entry.out << ' ';
    if (entry.cost == TurnModel::kForbidden) out << 'x';
    else out << entry.cost;
    out << '\n';
  }
}

double QueryRecord::length_increase() const noexcept {
  if (!is_finite(distance)) return std::numeric_limits<double>::infinity();
  if (lower_bound_distance == 0) return distance == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return static_cast<double>(distance) / lower_bound_distance - 1.0;
}

void write_results_csv(std::ostream& out, std::span<const QueryRecord> rows) {
  auto weight = [&](Weight w) -> std::ostream& { return is_finite(w) ? out << w : out << "inf"; };
  out << kResultsCsvHeader << '\n';
  for (const QueryRecord& r : rows) {
    out << r.query_id << ',' << r.source << ',' << r.target << ',' << csv_field(r.algorithm) << ','
        << csv_field(r.scenario) << ',';
    weight(r.distance) << ',' << r.queue_pushes << ',' << r.settled_nodes << ',' << r.running_time_ns << ',';
    weight(r.lower_bound_distance) << ',';
    const double inc = r.length_increase();
    if (std::isinf(inc)) out << "inf";
    else out << std::setprecision(12) << inc;
    out << '\n';
  }
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(0, "cannot open " + path + " for writing");
  return out;
}

Graph read_dimacs_gr_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_dimacs_gr(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

InstanceBundle load_instance(const std::string& gr_path) {
  namespace fs = std::filesystem;
  InstanceBundle bundle;
  bundle.graph = read_dimacs_gr_file(gr_path);
  const fs::path base = fs::path(gr_path).replace_extension();
  auto sibling = [&](const char* ext) { return fs::path(base).concat(ext).string(); };
  auto with = [&](const char* ext, auto&& reader) {
    const std::string path = sibling(ext);
    if (!fs::exists(path)) return;
    auto in = open_input(path);
    try {
      reader(in);
    } catch (const ParseError& e) {
      throw ParseError(e.line(), path + ": " + e.what());
    }
  };
  with(".co", [&](std::istream& in) { bundle.coordinates = read_dimacs_co(in, bundle.graph.node_count()); });
  with(".tags", [&](std::istream& in) { bundle.graph = read_tags_file(in, bundle.graph); });
  with(".ttf", [&](std::istream& in) { bundle.ttf = read_ttf_file(in, bundle.graph); });
  with(".live", [&](std::istream& in) { bundle.live = read_live_file(in, bundle.graph); });
  with(".turns", [&](std::istream& in) { bundle.turns = read_turns_file(in, bundle.graph); });
  return bundle;
}

void save_instance(const InstanceBundle& bundle, const std::string& dir, const std::string& name) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path base = fs::path(dir) / name;
  auto path = [&](const char* ext) { return fs::path(base).concat(ext).string(); };
  {
    auto out = open_output(path(".gr"));
    write_dimacs_gr(out, bundle.graph);
  }
  {
    auto out = open_output(path(".tags"));
    write_tags_file(out, bundle.graph);
  }
  if (!bundle.coordinates.empty()) {
    auto out = open_output(path(".co"));
    write_dimacs_co(out, bundle.coordinates);
  }
  if (!bundle.ttf.empty()) {
    auto out = open_output(path(".ttf"));
    write_ttf_file(out, bundle.graph, bundle.ttf);
  }
  if (!bundle.live.empty()) {
    auto out = open_output(path(".live"));
    write_live_file(out, bundle.graph, bundle.live);
  }
  if (bundle.turns) {
    auto out = open_output(path(".turns"));
    write_turns_file(out, *bundle.turns);
  }
}

}  // namespace chpot
