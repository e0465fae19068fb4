#include "dynap/scenarios.hpp"

#include <random>
#include <vector>

#include "dynap/oracle.hpp"

namespace dynap {

namespace {

int default_horizon(int last_event, int n) { return 2 * last_event + 2 * n; }

Scenario fig1_scenario(std::string name, std::vector<EdgeEvent> events) {
  Scenario s;
  s.name = std::move(name);
  s.initial = fig1_topology();
  s.events = std::move(events);
  s.horizon = default_horizon(s.last_event_time(), 10);
  return s;
}

Scenario ba_storm(unsigned seed, bool keep_connected) {
  constexpr int kNodes = 20;
  constexpr int kStormStart = 5;
  constexpr int kStormEnd = 12;
  Scenario s;
  s.name = "ba-storm";
  s.seed = seed;
  s.initial = ba_generate(kNodes, 2, seed);
  std::mt19937 rng(seed ^ 0x9e3779b9u);
  Graph g = s.initial;
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> pick_node(1, kNodes);
  const long max_edges = static_cast<long>(kNodes) * (kNodes - 1) / 2;
  for (int t = kStormStart; t <= kStormEnd; ++t) {
    for (;;) {
      bool do_delete = coin(rng);
      if (do_delete && g.edge_count() == 0) do_delete = false;
      if (!do_delete && g.edge_count() == max_edges) do_delete = true;
      if (do_delete) {
        std::vector<EdgeKey> edges(g.edges().begin(), g.edges().end());
        const EdgeKey e = edges[std::uniform_int_distribution<std::size_t>(
            0, edges.size() - 1)(rng)];
        if (keep_connected) {
          Graph probe = g;
          probe.remove_edge(e.u, e.v);
          if (component_count(probe) > component_count(g)) continue;
        }
        g.remove_edge(e.u, e.v);
        s.events.push_back({t, EdgeOp::Delete, e});
      } else {
        NodeId u = pick_node(rng);
        NodeId v = pick_node(rng);
        if (u == v || g.has_edge(u, v)) continue;
        g.add_edge(u, v);
        s.events.push_back({t, EdgeOp::Add, canonical_edge(u, v)});
      }
      break;
    }
  }
  s.horizon = default_horizon(kStormEnd, kNodes);
  return s;
}

}  // namespace

std::map<std::string, Scenario> builtin_scenarios(unsigned seed,
                                                  bool keep_connected) {
  std::map<std::string, Scenario> out;
  out["fig1-static"] = fig1_scenario("fig1-static", {});
  out["del-2-4"] =
      fig1_scenario("del-2-4", {{5, EdgeOp::Delete, canonical_edge(2, 4)}});
  out["add-9-10"] =
      fig1_scenario("add-9-10", {{5, EdgeOp::Add, canonical_edge(9, 10)}});
  out["concurrent"] =
      fig1_scenario("concurrent", {{5, EdgeOp::Delete, canonical_edge(2, 4)},
                                   {5, EdgeOp::Delete, canonical_edge(7, 8)},
                                   {8, EdgeOp::Add, canonical_edge(9, 10)},
                                   {8, EdgeOp::Add, canonical_edge(1, 10)},
                                   {10, EdgeOp::Delete, canonical_edge(6, 7)},
                                   {10, EdgeOp::Delete, canonical_edge(3, 4)}});
  out["ba-storm"] = ba_storm(seed, keep_connected);
  return out;
}

Scenario builtin_scenario(const std::string& name, unsigned seed,
                          bool keep_connected) {
  auto all = builtin_scenarios(seed, keep_connected);
  auto it = all.find(name);
  if (it == all.end()) {
    throw std::invalid_argument("unknown builtin scenario '" + name + "'");
  }
  return it->second;
}

}  // namespace dynap
