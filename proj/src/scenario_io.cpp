#include "dynap/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dynap {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Graph graph_from(const json& doc) {
  if (!doc.contains("nodes") || !doc["nodes"].is_number_integer()) {
    throw ParseError("missing integer key 'nodes'");
  }
  const int n = doc["nodes"].get<int>();
  if (n < 1) throw ParseError("'nodes' must be >= 1");
  Graph g(n);
  if (doc.contains("edges")) {
    for (const json& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2) {
        throw ParseError("edge entries must be [u, v] pairs");
      }
      try {
        if (!g.add_edge(e[0].get<int>(), e[1].get<int>())) {
          throw ParseError("duplicate edge in 'edges'");
        }
      } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
      }
    }
  }
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  json doc = parse(text);
  Scenario s;
  s.initial = graph_from(doc);
  if (!doc.contains("horizon") || !doc["horizon"].is_number_integer()) {
    throw ParseError("missing integer key 'horizon'");
  }
  s.horizon = doc["horizon"].get<int>();
  if (doc.contains("seed")) s.seed = doc["seed"].get<unsigned>();
  if (doc.contains("name")) s.name = doc["name"].get<std::string>();
  if (doc.contains("events")) {
    for (const json& ev : doc["events"]) {
      for (const char* key : {"t", "op", "u", "v"}) {
        if (!ev.contains(key)) {
          throw ParseError(std::string("event missing key '") + key + "'");
        }
      }
      const std::string op = ev["op"].get<std::string>();
      if (op != "add" && op != "del") {
        throw ParseError("event op must be \"add\" or \"del\"");
      }
      try {
        s.events.push_back({ev["t"].get<int>(),
                            op == "add" ? EdgeOp::Add : EdgeOp::Delete,
                            canonical_edge(ev["u"].get<int>(), ev["v"].get<int>())});
      } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
      }
    }
    std::stable_sort(s.events.begin(), s.events.end(),
                     [](const EdgeEvent& a, const EdgeEvent& b) {
                       return std::tie(a.t, a.edge) < std::tie(b.t, b.edge);
                     });
  }
  return s;
}

std::string scenario_to_json(const Scenario& scenario) {
  json doc;
  if (!scenario.name.empty()) doc["name"] = scenario.name;
  doc["nodes"] = scenario.initial.node_count();
  json edges = json::array();
  for (const EdgeKey& e : scenario.initial.edges()) {
    edges.push_back({e.u, e.v});
  }
  doc["edges"] = std::move(edges);
  json events = json::array();
  for (const EdgeEvent& ev : scenario.events) {
    events.push_back({{"t", ev.t},
                      {"op", ev.op == EdgeOp::Add ? "add" : "del"},
                      {"u", ev.edge.u},
                      {"v", ev.edge.v}});
  }
  doc["events"] = std::move(events);
  doc["horizon"] = scenario.horizon;
  doc["seed"] = scenario.seed;
  return doc.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
  Scenario s = scenario_from_json(read_file(path));
  if (s.name.empty()) s.name = path;
  return s;
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << scenario_to_json(scenario);
}

Graph load_graph(const std::string& path) {
  return graph_from(parse(read_file(path)));
}

}  // namespace dynap
