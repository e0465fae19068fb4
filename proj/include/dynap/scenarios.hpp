#pragma once

#include <map>
#include <string>

#include "dynap/graph.hpp"

namespace dynap {

/// Named ready-to-run scenarios: fig1-static, del-2-4, add-9-10, concurrent,
/// and the seeded ba-storm (20-node BA graph, one random event per round in
/// [5, 12]). Horizons follow 2 * last_event + 2n.
std::map<std::string, Scenario> builtin_scenarios(unsigned seed = 0,
                                                  bool keep_connected = false);

/// Lookup by name; throws std::invalid_argument for unknown names.
Scenario builtin_scenario(const std::string& name, unsigned seed = 0,
                          bool keep_connected = false);

}  // namespace dynap
