#pragma once

#include <string>

#include "dynap/graph.hpp"

namespace dynap {

/// Parse failure (bad JSON, missing keys, out-of-range values).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scenario file schema: {"nodes": N, "edges": [[u,v],...],
/// "events": [{"t":T,"op":"add"|"del","u":U,"v":V},...],
/// "horizon": H, "seed": S?}. events/seed are optional on input.
Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& scenario);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

/// Graph-only reader for oracle queries: accepts the scenario schema and
/// ignores everything but "nodes" and "edges".
Graph load_graph(const std::string& path);

}  // namespace dynap
