#include "dynap/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

namespace dynap {

DistVec bfs_distances(const Graph& graph, NodeId i) {
  const int n = graph.node_count();
  if (i < 1 || i > n) throw std::invalid_argument("bfs source outside 1..n");
  DistVec dist(static_cast<std::size_t>(n), kUnreachable);
  dist[i - 1] = 0;
  std::deque<NodeId> queue{i};
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : graph.neighbors(u)) {
      if (dist[v - 1] == kUnreachable) {
        dist[v - 1] = dist[u - 1] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

namespace {

// Component count over an arbitrary subset of nodes, ignoring one removed
// node when `removed` is nonzero.
int components_excluding(const Graph& graph, NodeId removed) {
  const int n = graph.node_count();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  if (removed != 0) seen[removed - 1] = 1;
  int comps = 0;
  for (NodeId s = 1; s <= n; ++s) {
    if (seen[s - 1]) continue;
    ++comps;
    std::deque<NodeId> queue{s};
    seen[s - 1] = 1;
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      for (NodeId v : graph.neighbors(u)) {
        if (!seen[v - 1]) {
          seen[v - 1] = 1;
          queue.push_back(v);
        }
      }
    }
  }
  return comps;
}

}  // namespace

int component_count(const Graph& graph) { return components_excluding(graph, 0); }

int diameter(const Graph& graph) {
  int best = 0;
  for (NodeId i = 1; i <= graph.node_count(); ++i) {
    for (Dist d : bfs_distances(graph, i)) {
      if (is_reachable(d)) best = std::max(best, d);
    }
  }
  return best;
}

std::set<NodeId> brute_force_aps(const Graph& graph) {
  const int n = graph.node_count();
  std::set<NodeId> aps;
  if (n < 2) return aps;
  const int base = component_count(graph);
  for (NodeId i = 1; i <= n; ++i) {
    // An isolated node only loses its own singleton component, so the
    // strict-increase test never marks it.
    if (components_excluding(graph, i) > base) aps.insert(i);
  }
  return aps;
}

std::set<EdgeKey> brute_force_bridges(const Graph& graph) {
  std::set<EdgeKey> bridges;
  const int base = component_count(graph);
  for (const EdgeKey& e : graph.edges()) {
    Graph g = graph;
    g.remove_edge(e.u, e.v);
    if (component_count(g) > base) bridges.insert(e);
  }
  return bridges;
}

GroundTruth ground_truth(const Graph& graph) {
  const int n = graph.node_count();
  GroundTruth truth;
  truth.d_star.reserve(static_cast<std::size_t>(n));
  truth.x_star.reserve(static_cast<std::size_t>(n));
  for (NodeId i = 1; i <= n; ++i) {
    DistVec d = bfs_distances(graph, i);
    ReachVec x(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k) x[k] = is_reachable(d[k]) ? 1 : 0;
    truth.d_star.push_back(std::move(d));
    truth.x_star.push_back(std::move(x));
  }
  truth.ap_set = brute_force_aps(graph);
  truth.component_count = component_count(graph);
  truth.biconnected = truth.component_count == 1 && truth.ap_set.empty();
  return truth;
}

long state_error(const std::vector<ReachVec>& x,
                 const std::vector<ReachVec>& x_star) {
  if (x.size() != x_star.size()) {
    throw std::invalid_argument("state_error: row count mismatch");
  }
  long err = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != x_star[i].size()) {
      throw std::invalid_argument("state_error: row length mismatch");
    }
    for (std::size_t k = 0; k < x[i].size(); ++k) {
      err += std::abs(static_cast<int>(x[i][k]) - static_cast<int>(x_star[i][k]));
    }
  }
  return err;
}

long distance_error(const std::vector<DistVec>& d,
                    const std::vector<DistVec>& d_star) {
  if (d.size() != d_star.size()) {
    throw std::invalid_argument("distance_error: row count mismatch");
  }
  long err = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i].size() != d_star[i].size()) {
      throw std::invalid_argument("distance_error: row length mismatch");
    }
    for (std::size_t k = 0; k < d[i].size(); ++k) {
      const bool fa = is_reachable(d[i][k]);
      const bool fb = is_reachable(d_star[i][k]);
      if (fa != fb) {
        err += 1;
      } else if (fa) {
        err += std::abs(d[i][k] - d_star[i][k]);
      }
    }
  }
  return err;
}

}  // namespace dynap
