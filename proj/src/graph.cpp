#include "dynap/graph.hpp"

#include <algorithm>
#include <random>

namespace dynap {

EdgeKey canonical_edge(NodeId u, NodeId v) {
  if (u == v) {
    throw std::invalid_argument("self-loop edge (" + std::to_string(u) + "," +
                                std::to_string(v) + ")");
  }
  return u < v ? EdgeKey{u, v} : EdgeKey{v, u};
}

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n > 0 ? n : 0)) {
  if (n < 1) throw std::invalid_argument("graph needs at least one node");
}

void Graph::check_node(NodeId i) const {
  if (i < 1 || i > n_) {
    throw std::invalid_argument("node " + std::to_string(i) +
                                " outside 1.." + std::to_string(n_));
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  return edges_.count(canonical_edge(u, v)) > 0;
}

bool Graph::add_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  EdgeKey e = canonical_edge(u, v);
  if (!edges_.insert(e).second) return false;
  adj_[e.u - 1].insert(e.v);
  adj_[e.v - 1].insert(e.u);
  return true;
}

bool Graph::remove_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  EdgeKey e = canonical_edge(u, v);
  if (edges_.erase(e) == 0) return false;
  adj_[e.u - 1].erase(e.v);
  adj_[e.v - 1].erase(e.u);
  return true;
}

const std::set<NodeId>& Graph::neighbors(NodeId i) const {
  check_node(i);
  return adj_[i - 1];
}

int Scenario::last_event_time() const {
  return events.empty() ? 0 : events.back().t;
}

std::pair<Graph, std::map<NodeId, std::vector<LocalChange>>> apply_events(
    const Graph& graph, const std::vector<EdgeEvent>& events) {
  Graph g = graph;
  std::map<NodeId, std::vector<LocalChange>> changes;
  // Canonical-edge order keeps per-node change lists deterministic.
  std::vector<EdgeEvent> ordered = events;
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return a.edge < b.edge;
  });
  for (const EdgeEvent& ev : ordered) {
    const auto [u, v] = ev.edge;
    if (ev.op == EdgeOp::Add) {
      if (!g.add_edge(u, v)) {
        throw ScheduleError("add of present edge (" + std::to_string(u) + "," +
                            std::to_string(v) + ") at t=" + std::to_string(ev.t));
      }
    } else {
      if (!g.remove_edge(u, v)) {
        throw ScheduleError("delete of absent edge (" + std::to_string(u) + "," +
                            std::to_string(v) + ") at t=" + std::to_string(ev.t));
      }
    }
    changes[u].push_back({ev.op, u, v});
    changes[v].push_back({ev.op, v, u});
  }
  return {std::move(g), std::move(changes)};
}

void validate_scenario(const Scenario& scenario) {
  if (scenario.horizon < 1) throw ScheduleError("horizon must be positive");
  std::set<std::pair<int, EdgeKey>> seen;
  int prev_t = 0;
  for (const EdgeEvent& ev : scenario.events) {
    if (ev.t <= 0 || ev.t >= scenario.horizon) {
      throw ScheduleError("event time " + std::to_string(ev.t) +
                          " outside (0, horizon)");
    }
    if (ev.t < prev_t) throw ScheduleError("events not sorted by time");
    prev_t = ev.t;
    if (!seen.insert({ev.t, ev.edge}).second) {
      throw ScheduleError("duplicate event on edge (" +
                          std::to_string(ev.edge.u) + "," +
                          std::to_string(ev.edge.v) + ") at t=" +
                          std::to_string(ev.t));
    }
  }
  // Replay to verify every add/delete precondition.
  Graph g = scenario.initial;
  std::size_t i = 0;
  while (i < scenario.events.size()) {
    std::size_t j = i;
    while (j < scenario.events.size() &&
           scenario.events[j].t == scenario.events[i].t) {
      ++j;
    }
    std::vector<EdgeEvent> batch(scenario.events.begin() + i,
                                 scenario.events.begin() + j);
    g = apply_events(g, batch).first;
    i = j;
  }
}

Graph fig1_topology() {
  Graph g(10);
  for (auto [u, v] : std::initializer_list<std::pair<int, int>>{
           {1, 2}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {4, 5}, {4, 10},
           {5, 6}, {5, 7}, {6, 7}, {7, 8}, {7, 9}, {8, 9}}) {
    g.add_edge(u, v);
  }
  return g;
}

Graph ba_generate(int n, int m, unsigned seed) {
  if (m < 1 || n <= m) throw std::invalid_argument("ba_generate needs n > m >= 1");
  std::mt19937 rng(seed);
  Graph g(n);
  // Endpoint pool: each node appears once per incident edge, so sampling
  // from it is degree-proportional.
  std::vector<NodeId> pool;
  for (NodeId u = 1; u <= m; ++u) {
    for (NodeId v = u + 1; v <= m; ++v) {
      g.add_edge(u, v);
      pool.push_back(u);
      pool.push_back(v);
    }
  }
  for (NodeId v = m + 1; v <= n; ++v) {
    std::set<NodeId> targets;
    while (static_cast<int>(targets.size()) < std::min(m, v - 1)) {
      NodeId candidate;
      if (pool.empty()) {
        candidate = std::uniform_int_distribution<NodeId>(1, v - 1)(rng);
      } else {
        candidate = pool[std::uniform_int_distribution<std::size_t>(
            0, pool.size() - 1)(rng)];
      }
      if (candidate != v) targets.insert(candidate);
    }
    for (NodeId u : targets) {
      g.add_edge(u, v);
      pool.push_back(u);
      pool.push_back(v);
    }
  }
  return g;
}

Graph random_connected(int n, int extra_edges, unsigned seed) {
  if (n < 1) throw std::invalid_argument("random_connected needs n >= 1");
  std::mt19937 rng(seed);
  Graph g(n);
  for (NodeId v = 2; v <= n; ++v) {
    NodeId u = std::uniform_int_distribution<NodeId>(1, v - 1)(rng);
    g.add_edge(u, v);
  }
  const long max_edges = static_cast<long>(n) * (n - 1) / 2;
  int added = 0;
  while (added < extra_edges && g.edge_count() < max_edges) {
    NodeId u = std::uniform_int_distribution<NodeId>(1, n)(rng);
    NodeId v = std::uniform_int_distribution<NodeId>(1, n)(rng);
    if (u == v || g.has_edge(u, v)) continue;
    g.add_edge(u, v);
    ++added;
  }
  return g;
}

}  // namespace dynap
