// Command line front end: preprocess, query, gen.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chpot/harness.hpp"

namespace {

using namespace chpot;

struct QueryArgs {
  std::string instance;
  std::string scenario = "base";
  double alpha = 0;
  std::string avoid;
  std::string turns;
  std::string ttf;
  std::string live;
  std::string tags;
  std::string ch;
  Time tau_soon = 3'600'000;
  std::string algo = "chpot";
  bool no_bcc = false;
  bool no_deg2 = false;
  bool no_deg3 = false;
  std::uint32_t queries = 100;
  std::uint64_t seed = 1;
  std::string csv;
  std::string summary;
  bool verify = false;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ContractionHierarchy build_logged(const Graph& g) {
  const auto start = std::chrono::steady_clock::now();
  ContractionHierarchy ch = build_ch(g);
  std::size_t shortcuts = 0;
  for (const ChArc& a : ch.arcs) shortcuts += a.is_shortcut();
  std::cerr << "hierarchy: " << g.node_count() << " nodes, " << g.edge_count() << " edges, " << shortcuts
            << " shortcuts, " << seconds_since(start) << " s\n";
  return ch;
}

int run_preprocess(const std::string& graph_path, std::string out) {
  const Graph g = read_dimacs_gr_file(graph_path);
  const ContractionHierarchy ch = build_logged(g);
  if (out.empty()) out = std::filesystem::path(graph_path).replace_extension(".ch").string();
  save_ch(ch, out);
  std::cerr << "wrote " << out << '\n';
  return 0;
}

std::vector<Algorithm> parse_algorithms(const std::string& list) {
  std::vector<Algorithm> out;
  std::stringstream in(list);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(parse_algorithm(item));
  return out;
}

int run_query(const QueryArgs& a) {
  InstanceBundle bundle = load_instance(a.instance);
  auto load = [](const std::string& path, auto&& reader) {
    auto in = open_input(path);
    try {
      reader(in);
    } catch (const ParseError& e) {
      throw ParseError(e.line(), path + ": " + e.what());
    }
  };
  if (!a.tags.empty()) load(a.tags, [&](std::istream& in) { bundle.graph = read_tags_file(in, bundle.graph); });
  if (!a.ttf.empty()) load(a.ttf, [&](std::istream& in) { bundle.ttf = read_ttf_file(in, bundle.graph); });
  if (!a.live.empty()) load(a.live, [&](std::istream& in) { bundle.live = read_live_file(in, bundle.graph); });
  if (!a.turns.empty()) load(a.turns, [&](std::istream& in) { bundle.turns = read_turns_file(in, bundle.graph); });

  ExperimentPlan plan;
  plan.scenario = Scenario::parse(a.scenario);
  if (a.alpha != 0) {
    if (plan.scenario.kind == ScenarioKind::kBase) plan.scenario.kind = ScenarioKind::kScaled;
    plan.scenario.alpha = a.alpha;
  }
  if (!a.avoid.empty()) {
    const Scenario avoid = Scenario::parse("avoid:" + a.avoid);
    plan.scenario.kind = ScenarioKind::kAvoid;
    plan.scenario.avoid = avoid.avoid;
  }
  if (!a.turns.empty()) plan.scenario.turns = true;
  plan.scenario.tau_soon_offset = a.tau_soon;
  plan.algorithms = parse_algorithms(a.algo);
  plan.options.bcc = !a.no_bcc;
  plan.options.deg2 = !a.no_deg2;
  plan.options.deg3 = !a.no_deg3 && !a.no_deg2;
  plan.queries = a.queries;
  plan.seed = a.seed;
  plan.verify = a.verify;

  const ContractionHierarchy ch = a.ch.empty() ? build_logged(bundle.graph) : load_ch(a.ch);
  const ExperimentResult result = run_experiment(bundle, ch, plan);

  if (!a.csv.empty()) {
    auto out = open_output(a.csv);
    write_results_csv(out, result.records);
  }
  if (!a.summary.empty()) {
    auto out = open_output(a.summary);
    write_summary_csv(out, result.summary);
  }
  write_summary_csv(std::cout, result.summary);
  if (plan.verify) std::cerr << "verified " << result.records.size() << " answers against Dijkstra\n";
  return 0;
}

int run_gen(const GeneratorOptions& options, const std::string& out, const std::string& name) {
  const InstanceBundle bundle = generate_synthetic_instance(options);
  save_instance(bundle, out, name);
  std::cerr << "generated " << bundle.graph.node_count() << " nodes, " << bundle.graph.edge_count() << " edges in "
            << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact A* route planning with CH-Potentials"};
  app.require_subcommand(1);

  std::string graph_path, ch_out;
  auto* pre = app.add_subcommand("preprocess", "Build a contraction hierarchy for a DIMACS graph");
  pre->add_option("graph", graph_path, ".gr file")->required();
  pre->add_option("--out", ch_out, "Output file (default: <graph>.ch)");

  QueryArgs q;
  auto* query = app.add_subcommand("query", "Run a random query batch");
  query->add_option("instance", q.instance, ".gr file; sibling .co/.tags/.ttf/.live/.turns files are loaded")
      ->required();
  query->add_option("--scenario", q.scenario, "base | scaled[:alpha] | avoid:t,h | td | td-live, optional +turns");
  query->add_option("--alpha", q.alpha, "Scale factor >= 1 (implies scaled)");
  query->add_option("--avoid", q.avoid, "t, h or t,h");
  query->add_option("--turns", q.turns, "Turn table (enables turns)");
  query->add_option("--ttf", q.ttf, "Travel time functions");
  query->add_option("--live", q.live, "Live snapshot");
  query->add_option("--tags", q.tags, "Edge tags");
  query->add_option("--tau-soon", q.tau_soon, "Milliseconds after departure until which live values hold");
  query->add_option("--ch", q.ch, "Hierarchy from preprocess (built on the fly otherwise)");
  query->add_option("--algo", q.algo, "Comma list of zero, alt, chpot, oracle");
  query->add_flag("--no-bcc", q.no_bcc, "Disable the biconnected core restriction");
  query->add_flag("--no-deg2", q.no_deg2, "Disable degree two chain skipping (and degree three)");
  query->add_flag("--no-deg3", q.no_deg3, "Disable degree three skipping");
  query->add_option("--queries", q.queries, "Number of random queries");
  query->add_option("--seed", q.seed, "Query RNG seed");
  query->add_option("--csv", q.csv, "Per query CSV output");
  query->add_option("--summary", q.summary, "Per algorithm summary CSV output");
  query->add_flag("--verify", q.verify, "Check every distance against Dijkstra");

  GeneratorOptions gen_opts;
  std::string kind = "grid", gen_out, gen_name = "graph";
  auto* gen = app.add_subcommand("gen", "Generate a synthetic instance");
  gen->add_option("--kind", kind, "grid | random-geometric");
  gen->add_option("--n", gen_opts.n, "Node count")->required();
  gen->add_option("--seed", gen_opts.seed, "Generator seed");
  gen->add_flag("--td", gen_opts.td, "Travel time functions");
  gen->add_flag("--live", gen_opts.live, "Live snapshot (implies --td)");
  gen->add_flag("--turns", gen_opts.turns, "Turn table");
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--name", gen_name, "File base name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*pre) return run_preprocess(graph_path, ch_out);
    if (*query) return run_query(q);
    gen_opts.kind = parse_instance_kind(kind);
    return run_gen(gen_opts, gen_out, gen_name);
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return 2;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
