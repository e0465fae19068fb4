#pragma once

#include <set>
#include <vector>

#include "dynap/graph.hpp"
#include "dynap/types.hpp"

namespace dynap {

/// Centralized per-round truth snapshot the protocol is scored against.
struct GroundTruth {
  std::vector<ReachVec> x_star;  // row i-1: reachability of node i
  std::vector<DistVec> d_star;   // row i-1: hop counts to node i
  std::set<NodeId> ap_set;
  int component_count = 0;
  bool biconnected = false;
};

/// Hop counts from node i to every node; kUnreachable where no path exists.
DistVec bfs_distances(const Graph& graph, NodeId i);

/// Number of connected components.
int component_count(const Graph& graph);

/// Largest finite pairwise distance (0 for a single node or edgeless graph).
int diameter(const Graph& graph);

/// Nodes whose removal strictly increases the component count among the
/// remaining nodes.
std::set<NodeId> brute_force_aps(const Graph& graph);

/// Edges whose removal strictly increases the component count.
std::set<EdgeKey> brute_force_bridges(const Graph& graph);

GroundTruth ground_truth(const Graph& graph);

/// Element-wise L1 distance between two binary matrices.
long state_error(const std::vector<ReachVec>& x,
                 const std::vector<ReachVec>& x_star);

/// Finiteness-class mismatches count 1 each; finite-finite pairs contribute
/// their absolute difference.
long distance_error(const std::vector<DistVec>& d,
                    const std::vector<DistVec>& d_star);

}  // namespace dynap
