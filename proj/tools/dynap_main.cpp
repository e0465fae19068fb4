#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dynap/engine.hpp"
#include "dynap/oracle.hpp"
#include "dynap/scenario_io.hpp"
#include "dynap/scenarios.hpp"

namespace {

constexpr int kExitUnreadable = 2;
constexpr int kExitSchedule = 3;

std::string join_ids(const std::set<dynap::NodeId>& ids) {
  std::string out = "{";
  for (dynap::NodeId i : ids) {
    if (out.size() > 1) out += ',';
    out += std::to_string(i);
  }
  return out + "}";
}

// First round from which the trace stays converged, if any.
std::optional<int> converged_at(const std::vector<dynap::TraceRecord>& trace) {
  std::optional<int> since;
  for (const dynap::TraceRecord& r : trace) {
    if (r.converged) {
      if (!since) since = r.t;
    } else {
      since.reset();
    }
  }
  return since;
}

int cmd_run(const std::string& scenario_path, const std::string& builtin,
            const std::string& out_path, const std::string& format,
            unsigned seed, std::optional<int> horizon, bool keep_connected,
            const std::string& dump_scenario) {
  dynap::Scenario scenario;
  try {
    scenario = builtin.empty()
                   ? dynap::load_scenario(scenario_path)
                   : dynap::builtin_scenario(builtin, seed, keep_connected);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnreadable;
  }
  if (horizon) scenario.horizon = *horizon;

  if (!dump_scenario.empty()) {
    try {
      dynap::save_scenario(scenario, dump_scenario);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUnreadable;
    }
  }

  std::vector<dynap::TraceRecord> trace;
  dynap::World world;
  try {
    world = dynap::init_world(scenario);
    for (int t = 1; t <= scenario.horizon; ++t) dynap::run_round(world, t);
    trace = world.trace;
  } catch (const dynap::ScheduleError& e) {
    std::cerr << "schedule error: " << e.what() << "\n";
    return kExitSchedule;
  }

  const std::string body =
      format == "json" ? dynap::trace_json(trace) : dynap::trace_csv(trace);
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kExitUnreadable;
    }
    out << body;
  }

  // One-line summary. The distributed biconnectivity verdict is only defined
  // once every node has re-evaluated under a valid trigger.
  const int n = scenario.initial.node_count();
  std::string biconn = "unstable";
  std::map<dynap::NodeId, bool> verdicts;
  bool all_fresh = true;
  for (const auto& [i, node] : world.nodes) {
    if (node.ap_verdict && node.ap_verdict->decided_at == world.t) {
      verdicts[i] = node.ap_verdict->is_ap;
    } else {
      all_fresh = false;
    }
  }
  if (all_fresh) {
    biconn = dynap::biconnectivity_consensus(verdicts, world.graph, n)
                 ? "true"
                 : "false";
  }
  auto conv = converged_at(trace);
  std::ostream& summary = out_path.empty() ? std::cerr : std::cout;
  summary << (scenario.name.empty() ? std::string("scenario") : scenario.name)
          << ": horizon=" << scenario.horizon << " converged_at="
          << (conv ? std::to_string(*conv) : std::string("never"))
          << " ap_set=" << join_ids(dynap::current_ap_set(world))
          << " biconnected=" << biconn << "\n";
  return 0;
}

int cmd_oracle(const std::string& path) {
  dynap::Graph g;
  try {
    g = dynap::load_graph(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnreadable;
  }
  dynap::GroundTruth truth = dynap::ground_truth(g);
  std::cout << "nodes: " << g.node_count() << "\n"
            << "edges: " << g.edge_count() << "\n"
            << "components: " << truth.component_count << "\n"
            << "articulation_points: " << join_ids(truth.ap_set) << "\n";
  std::cout << "bridges: {";
  bool first = true;
  for (const dynap::EdgeKey& e : dynap::brute_force_bridges(g)) {
    if (!first) std::cout << ",";
    first = false;
    std::cout << "(" << e.u << "," << e.v << ")";
  }
  std::cout << "}\n"
            << "biconnected: " << (truth.biconnected ? "true" : "false")
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed articulation-point protocol simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string builtin;
  std::string out_path;
  std::string format = "csv";
  std::string dump_scenario;
  unsigned seed = 0;
  std::optional<int> horizon;
  bool keep_connected = false;

  CLI::App* run = app.add_subcommand("run", "Simulate a scenario");
  auto* opt_scenario =
      run->add_option("--scenario", scenario_path, "Scenario JSON file");
  auto* opt_builtin =
      run->add_option("--builtin", builtin, "Builtin scenario name");
  opt_scenario->excludes(opt_builtin);
  opt_builtin->excludes(opt_scenario);
  run->add_option("--out", out_path, "Trace output path (default: stdout)");
  run->add_option("--format", format, "Trace format")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--seed", seed, "Seed for randomized builtins");
  run->add_option("--horizon", horizon, "Override scenario horizon");
  run->add_flag("--keep-connected", keep_connected,
                "ba-storm only: redraw deletions that would disconnect");
  run->add_option("--dump-scenario", dump_scenario,
                  "Write the scenario actually run to this path");

  std::string graph_path;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Print centralized ground truth for a graph file");
  oracle->add_option("graph", graph_path, "Graph JSON file")->required();

  CLI::App* list =
      app.add_subcommand("list-builtins", "List builtin scenario names");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    if (scenario_path.empty() && builtin.empty()) {
      std::cerr << "error: one of --scenario or --builtin is required\n";
      return kExitUnreadable;
    }
    return cmd_run(scenario_path, builtin, out_path, format, seed, horizon,
                   keep_connected, dump_scenario);
  }
  if (oracle->parsed()) return cmd_oracle(graph_path);
  if (list->parsed()) {
    for (const auto& [name, s] : dynap::builtin_scenarios()) {
      std::cout << name << ": " << s.events.size() << " events, horizon "
                << s.horizon << "\n";
    }
  }
  return 0;
}
