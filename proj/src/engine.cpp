#include "dynap/engine.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"

namespace dynap {

World init_world(const Scenario& scenario) {
  validate_scenario(scenario);
  World world;
  world.graph = scenario.initial;
  world.schedule = scenario.events;
  const int n = scenario.initial.node_count();
  for (NodeId i = 1; i <= n; ++i) world.nodes.emplace(i, init_node(i, n));
  return world;
}

namespace {

std::vector<EdgeEvent> take_due_events(std::vector<EdgeEvent>& schedule, int t) {
  std::vector<EdgeEvent> due;
  auto it = schedule.begin();
  while (it != schedule.end() && it->t == t) {
    due.push_back(*it);
    ++it;
  }
  schedule.erase(schedule.begin(), it);
  return due;
}

}  // namespace

void run_round(World& world, int t, const EngineOptions& options) {
  const int n = world.graph.node_count();
  const Graph before = world.graph;

  std::vector<EdgeEvent> due = take_due_events(world.schedule, t);
  auto [after, local_changes] = apply_events(before, due);

  // Inboxes carry the previous round's snapshot over the pre-event edges;
  // endpoints of added edges additionally exchange distance vectors now.
  std::map<NodeId, Inbox> inboxes;
  for (NodeId i = 1; i <= n; ++i) {
    Inbox& inbox = inboxes[i];
    for (NodeId j : before.neighbors(i)) {
      const NodeState& peer = world.nodes.at(j);
      inbox.msgs.emplace(j, Message{peer.x, peer.d, peer.active});
    }
  }
  for (const EdgeEvent& ev : due) {
    if (ev.op != EdgeOp::Add) continue;
    inboxes[ev.edge.u].handshakes[ev.edge.v] = world.nodes.at(ev.edge.v).d;
    inboxes[ev.edge.v].handshakes[ev.edge.u] = world.nodes.at(ev.edge.u).d;
  }

  std::vector<NodeId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  if (options.shuffle_seed) {
    std::mt19937 rng(*options.shuffle_seed + static_cast<unsigned>(t));
    std::shuffle(order.begin(), order.end(), rng);
  }

  static const std::vector<LocalChange> kNoChanges;
  std::map<NodeId, NodeState> next;
  for (NodeId i : order) {
    auto it = local_changes.find(i);
    const auto& changes = it == local_changes.end() ? kNoChanges : it->second;
    next.emplace(i, step(world.nodes.at(i), inboxes.at(i), changes, t).state);
  }

  world.nodes = std::move(next);
  world.graph = after;
  world.t = t;

  GroundTruth truth = ground_truth(after);

  // Stable nodes re-evaluate their AP status from purely local data.
  for (NodeId i = 1; i <= n; ++i) {
    NodeState& node = world.nodes.at(i);
    if (!stability_trigger(node, inboxes.at(i))) continue;
    std::map<NodeId, DistVec> neighbor_ds;
    for (const auto& [j, msg] : node.neighbor_cache) neighbor_ds[j] = msg.d;
    PairSet pairs = build_pair_set(i, node.d, neighbor_ds,
                                   after.neighbors(i), node.x);
    ApVerdict verdict = union_find_verdict(i, after.neighbors(i), pairs, t);
    node.ap_verdict = ApDecision{verdict.is_ap, t};
  }

  std::vector<ReachVec> x_rows;
  std::vector<DistVec> d_rows;
  long active_total = 0;
  for (NodeId i = 1; i <= n; ++i) {
    const NodeState& node = world.nodes.at(i);
    x_rows.push_back(node.x);
    d_rows.push_back(node.d);
    active_total += static_cast<long>(node.active.size());
  }

  TraceRecord rec;
  rec.t = t;
  rec.x_error = state_error(x_rows, truth.x_star);
  rec.d_error = distance_error(d_rows, truth.d_star);
  rec.active_flag_total = active_total;
  rec.ap_set = current_ap_set(world);
  rec.truth_ap_set = truth.ap_set;
  rec.biconnected_truth = truth.biconnected;
  rec.converged = rec.x_error == 0 && rec.d_error == 0;
  world.trace.push_back(std::move(rec));
}

std::vector<TraceRecord> run(const Scenario& scenario,
                             const EngineOptions& options) {
  World world = init_world(scenario);
  for (int t = 1; t <= scenario.horizon; ++t) run_round(world, t, options);
  return world.trace;
}

std::set<NodeId> current_ap_set(const World& world) {
  std::set<NodeId> aps;
  for (const auto& [i, node] : world.nodes) {
    if (node.ap_verdict && node.ap_verdict->decided_at == world.t &&
        node.ap_verdict->is_ap) {
      aps.insert(i);
    }
  }
  return aps;
}

namespace {

std::string join_ids(const std::set<NodeId>& ids) {
  std::string out;
  for (NodeId i : ids) {
    if (!out.empty()) out += ';';
    out += std::to_string(i);
  }
  return out;
}

}  // namespace

std::string trace_csv(const std::vector<TraceRecord>& trace) {
  std::ostringstream out;
  out << "t,x_error,d_error,active_flags,ap_set,truth_ap_set,biconnected,"
         "converged\n";
  for (const TraceRecord& r : trace) {
    out << r.t << ',' << r.x_error << ',' << r.d_error << ','
        << r.active_flag_total << ',' << join_ids(r.ap_set) << ','
        << join_ids(r.truth_ap_set) << ','
        << (r.biconnected_truth ? "true" : "false") << ','
        << (r.converged ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string trace_json(const std::vector<TraceRecord>& trace) {
  nlohmann::json arr = nlohmann::json::array();
  for (const TraceRecord& r : trace) {
    arr.push_back({{"t", r.t},
                   {"x_error", r.x_error},
                   {"d_error", r.d_error},
                   {"active_flags", r.active_flag_total},
                   {"ap_set", r.ap_set},
                   {"truth_ap_set", r.truth_ap_set},
                   {"biconnected", r.biconnected_truth},
                   {"converged", r.converged}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace dynap
