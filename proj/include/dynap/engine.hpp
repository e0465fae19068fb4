#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dynap/ap.hpp"
#include "dynap/graph.hpp"
#include "dynap/oracle.hpp"
#include "dynap/protocol.hpp"

namespace dynap {

/// Per-round observables recorded by the engine.
struct TraceRecord {
  int t = 0;
  long x_error = 0;
  long d_error = 0;
  long active_flag_total = 0;
  std::set<NodeId> ap_set;        // nodes with a currently valid AP verdict
  std::set<NodeId> truth_ap_set;  // oracle
  bool biconnected_truth = false;
  bool converged = false;  // both errors zero

  bool operator==(const TraceRecord&) const = default;
};

struct EngineOptions {
  /// When set, node evaluation order is shuffled every round. The trace must
  /// not depend on it; exists to exercise snapshot purity.
  std::optional<unsigned> shuffle_seed;
};

/// Mutable simulation state owned by the engine between rounds.
struct World {
  int t = 0;
  Graph graph;
  std::map<NodeId, NodeState> nodes;
  std::vector<EdgeEvent> schedule;  // not yet applied
  std::vector<TraceRecord> trace;
};

World init_world(const Scenario& scenario);

/// Executes one synchronous round: applies due events, delivers the previous
/// round's messages plus add handshakes, steps every node against that
/// snapshot, then scores against the oracle and evaluates AP triggers.
void run_round(World& world, int t, const EngineOptions& options = {});

/// Runs the whole scenario. Throws ScheduleError before round 1 if the
/// schedule is inconsistent. Deterministic for a fixed scenario.
std::vector<TraceRecord> run(const Scenario& scenario,
                             const EngineOptions& options = {});

/// Nodes whose latest AP verdict was produced this round (trigger still
/// valid) with a positive outcome.
std::set<NodeId> current_ap_set(const World& world);

/// CSV serialization: header plus one row per record.
std::string trace_csv(const std::vector<TraceRecord>& trace);

/// JSON array of record objects, same keys as the CSV columns.
std::string trace_json(const std::vector<TraceRecord>& trace);

}  // namespace dynap
