#pragma once

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynap/types.hpp"

namespace dynap {

/// Violation of an event's precondition against the graph it is applied to
/// (adding a present edge, deleting an absent edge, duplicate events).
struct ScheduleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Undirected edge stored in canonical (min, max) order.
struct EdgeKey {
  NodeId u = 0;
  NodeId v = 0;
  auto operator<=>(const EdgeKey&) const = default;
};

/// Canonicalizes an endpoint pair. Throws std::invalid_argument on u == v.
EdgeKey canonical_edge(NodeId u, NodeId v);

enum class EdgeOp { Add, Delete };

/// One scheduled topology change, effective at the start of round t.
struct EdgeEvent {
  int t = 0;
  EdgeOp op = EdgeOp::Add;
  EdgeKey edge;
};

/// Change record seen by one endpoint of a modified edge.
struct LocalChange {
  EdgeOp op = EdgeOp::Add;
  NodeId self = 0;
  NodeId other = 0;
};

/// Undirected simple graph over the fixed node set {1, ..., n}.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  bool has_edge(NodeId u, NodeId v) const;
  /// Inserts the edge; returns false if it was already present.
  bool add_edge(NodeId u, NodeId v);
  /// Removes the edge; returns false if it was absent.
  bool remove_edge(NodeId u, NodeId v);

  const std::set<NodeId>& neighbors(NodeId i) const;
  int degree(NodeId i) const { return static_cast<int>(neighbors(i).size()); }
  const std::set<EdgeKey>& edges() const { return edges_; }

  bool operator==(const Graph&) const = default;

 private:
  void check_node(NodeId i) const;

  int n_ = 0;
  std::set<EdgeKey> edges_;
  std::vector<std::set<NodeId>> adj_;  // adj_[i-1]
};

/// Initial topology plus a time-ordered schedule of edge events.
struct Scenario {
  std::string name;
  Graph initial;
  std::vector<EdgeEvent> events;  // sorted by (t, edge)
  int horizon = 0;
  unsigned seed = 0;

  int last_event_time() const;
};

/// Applies all events scheduled for one round and reports, per incident
/// endpoint, the local changes it observes. Throws ScheduleError when an
/// event's precondition fails.
std::pair<Graph, std::map<NodeId, std::vector<LocalChange>>> apply_events(
    const Graph& graph, const std::vector<EdgeEvent>& events);

/// Checks event ordering, uniqueness per (t, edge), bounds against the
/// horizon, and replays the schedule to verify every precondition.
void validate_scenario(const Scenario& scenario);

/// The 10-node fixture used throughout: APs {4,5,7}, bridges (4,5) and (4,10).
Graph fig1_topology();

/// Seeded Barabasi-Albert preferential attachment graph: m-clique start,
/// each later node attaches m edges. Requires n > m >= 1.
Graph ba_generate(int n, int m, unsigned seed);

/// Seeded random connected graph: random recursive tree plus extra_edges
/// uniformly chosen absent pairs.
Graph random_connected(int n, int extra_edges, unsigned seed);

}  // namespace dynap
