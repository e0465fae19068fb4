#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "dynap/graph.hpp"
#include "dynap/protocol.hpp"
#include "dynap/types.hpp"

namespace dynap {

/// Neighbor pairs of one node with local distance evidence of a common cycle.
struct PairSet {
  NodeId owner = 0;
  std::set<std::pair<NodeId, NodeId>> pairs;  // stored (min, max)
};

/// Outcome of the union-find test over a node's neighborhood.
struct ApVerdict {
  NodeId node = 0;
  bool is_ap = false;
  int decided_at = 0;
  std::vector<std::vector<NodeId>> components;  // partition of the neighbors
};

/// True iff the node holds no flags, received none this round, and both
/// state vectors are unchanged from the previous round.
bool stability_trigger(const NodeState& state, const Inbox& inbox);

/// Pair {j,k} qualifies if j and k close a triangle with the owner (both
/// deltas exactly zero), or some witness p outside the closed neighborhood is
/// reachable, has finite distance in all three vectors, and is at least as
/// far from the owner as from both j and k.
PairSet build_pair_set(NodeId owner, const DistVec& d_self,
                       const std::map<NodeId, DistVec>& neighbor_ds,
                       const std::set<NodeId>& neighbors,
                       const ReachVec& x_self);

/// Union-find over the neighbors seeded with the pair set; more than one
/// surviving block means the node is an articulation point. Degree <= 1 is
/// never an AP.
ApVerdict union_find_verdict(NodeId node, const std::set<NodeId>& neighbors,
                             const PairSet& pairs, int decided_at = 0);

/// OR max-consensus of the per-node verdicts over the graph for `rounds`
/// rounds; the network is biconnected iff no node raised the bit and the
/// graph is connected.
bool biconnectivity_consensus(const std::map<NodeId, bool>& verdicts,
                              const Graph& graph, int rounds);

}  // namespace dynap
