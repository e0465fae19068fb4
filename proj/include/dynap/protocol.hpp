#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dynap/graph.hpp"
#include "dynap/types.hpp"

namespace dynap {

/// Record of one topological event, propagated hop by hop. Two flags are the
/// same event iff (type, canonical edge, timestamp) all match, so both
/// endpoints of an edge generate the identical flag.
struct ChangeFlag {
  EdgeOp change_type = EdgeOp::Add;
  EdgeKey edge;
  int timestamp = 0;
  auto operator<=>(const ChangeFlag&) const = default;
};

using FlagSet = std::set<ChangeFlag>;

/// State broadcast to neighbors at the end of a round.
struct Message {
  ReachVec x;
  DistVec d;
  FlagSet flags;
  bool operator==(const Message&) const = default;
};

/// Everything a node can read in one round: the previous-round message of
/// every previous-round neighbor, plus the distance vectors handed over by
/// endpoints of edges added this round.
struct Inbox {
  std::map<NodeId, Message> msgs;
  std::map<NodeId, DistVec> handshakes;
};

enum class UpdateCase { NewFlags, Hold, Standard };

/// Cached articulation-point self-assessment with its decision round.
struct ApDecision {
  bool is_ap = false;
  int decided_at = 0;
  bool operator==(const ApDecision&) const = default;
};

/// Full per-node protocol state.
struct NodeState {
  NodeId id = 0;
  ReachVec x;
  DistVec d;
  ReachVec x_prev;  // x at t-1, for the stability trigger
  DistVec d_prev;
  FlagSet active;       // Phi[t]
  FlagSet prev_active;  // Phi[t-1]
  FlagSet history;
  std::map<NodeId, Message> neighbor_cache;  // last inbox, keyed by sender
  std::optional<ApDecision> ap_verdict;

  // Concurrency bookkeeping. When this node invalidates a destination it
  // records the flags that justified the reset; reachability (and distance
  // offers) for that destination are then accepted only from neighbors this
  // node has seen transmit every one of those flags. Without the guard, the
  // new-flags aggregation for one event can re-import a destination from a
  // neighbor that has not yet processed a concurrent event that killed it,
  // and the revived entry re-floods unchecked. Both maps age out with the
  // same margin as the history set.
  std::map<NodeId, FlagSet> entry_barriers;         // destination -> blockers
  std::map<ChangeFlag, std::set<NodeId>> flag_echoes;  // flag -> seen senders

  int n() const { return static_cast<int>(x.size()); }
};

/// Per-round view of which neighbor entries are admissible under the
/// invalidation barriers. Default-constructed it admits everything.
class NeighborTrust {
 public:
  NeighborTrust() = default;
  NeighborTrust(const NodeState& state, const Inbox& inbox);

  bool allows(NodeId from, std::size_t k_index) const;
  bool empty() const { return blocked_.empty(); }

 private:
  std::map<NodeId, std::set<std::size_t>> blocked_;
};

struct StepResult {
  NodeState state;
  Message outbound;
  FlagSet new_flags;  // accepted this round (post history filter)
};

/// Fresh node: reaches only itself.
NodeState init_node(NodeId id, int n);

/// Union of neighbors' transmitted flag sets minus already-processed history.
FlagSet filter_new_flags(const Inbox& inbox, const FlagSet& history);

UpdateCase select_case(const FlagSet& new_flags, const FlagSet& prev_active);

/// Plain max-consensus: element-wise OR of self and all inbox vectors.
ReachVec consensus_standard(const ReachVec& self_x, const Inbox& inbox,
                            const NeighborTrust& trust = {});

/// Per-flag OR over carriers, then AND across flags. The constraint side of
/// the new-flags update; exposed separately for property checks.
ReachVec flag_constraint_vector(const Inbox& inbox, const FlagSet& new_flags,
                                const NeighborTrust& trust = {});

/// New-flags consensus: historical OR (self plus neighbors whose transmitted
/// flags intersect history) intersected with the flag constraint vector, self
/// entry forced to 1. Throws std::logic_error if a flag has no carrier.
ReachVec consensus_new_flags(NodeId id, const ReachVec& self_x,
                             const Inbox& inbox, const FlagSet& new_flags,
                             const FlagSet& history,
                             const NeighborTrust& trust = {});

/// Distance synchronization against the intermediate reachability: keep on
/// equal, reset to unreachable on 1->0, relax 1 + min over inbox on 0->1.
/// With steady_relax set (flag-quiet nodes), an entry that stays reachable
/// also shrinks to any better neighbor offer. Freezing such entries instead
/// pins detour distances picked up while a reset wave was still in flight:
/// reachability recovers through whichever neighbor reports first, and with
/// no further x transition the distance would never be revisited.
DistVec update_distance_intermediate(const ReachVec& x_hat,
                                     const ReachVec& x_prev,
                                     const DistVec& d_prev, const Inbox& inbox,
                                     bool steady_relax = false,
                                     const NeighborTrust& trust = {});

/// Entrywise d_self - d_other; kDeltaInf wherever either side is unreachable.
DeltaVec compute_delta(const DistVec& d_self_prev, const DistVec& d_other_prev);

/// Keeps entries with delta <= 0, zeroes entries with delta > 0; the self
/// entry is exempt and forced to 1.
ReachVec apply_correction(NodeId id, const ReachVec& x_hat,
                          const DeltaVec& delta);

struct CorrectionResult {
  ReachVec x;
  DistVec d;
  FlagSet generated;
  std::map<NodeId, FlagSet> reset_blame;  // destination -> flags that zeroed it
};

/// Local correction for this round's incident edge changes: one delta-based
/// reset per change (handshake distances for adds, cached ones for deletes),
/// one generated flag per change, then distance/reachability reconciliation.
CorrectionResult on_edge_change(NodeId id,
                                const std::vector<LocalChange>& changes,
                                const ReachVec& x_hat, const DistVec& d_hat,
                                const DistVec& d_prev, const Inbox& inbox,
                                int t);

/// One full protocol round for one node. Pure in its inputs; the caller owns
/// delivery and commit.
StepResult step(const NodeState& state, const Inbox& inbox,
                const std::vector<LocalChange>& local_changes, int t);

/// Drops flags with timestamp < t - n.
FlagSet gc_history(const FlagSet& history, int t, int n);

}  // namespace dynap
