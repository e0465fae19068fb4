#include "dynap/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynap {

NodeState init_node(NodeId id, int n) {
  if (id < 1 || id > n) throw std::invalid_argument("node id outside 1..n");
  NodeState s;
  s.id = id;
  s.x.assign(static_cast<std::size_t>(n), 0);
  s.d.assign(static_cast<std::size_t>(n), kUnreachable);
  s.x[id - 1] = 1;
  s.d[id - 1] = 0;
  s.x_prev = s.x;
  s.d_prev = s.d;
  return s;
}

NeighborTrust::NeighborTrust(const NodeState& state, const Inbox& inbox) {
  for (const auto& [k, blockers] : state.entry_barriers) {
    for (const auto& [from, msg] : inbox.msgs) {
      for (const ChangeFlag& flag : blockers) {
        if (msg.flags.count(flag)) continue;  // echoing it right now
        auto it = state.flag_echoes.find(flag);
        if (it != state.flag_echoes.end() && it->second.count(from)) continue;
        blocked_[from].insert(static_cast<std::size_t>(k - 1));
        break;
      }
    }
  }
}

bool NeighborTrust::allows(NodeId from, std::size_t k_index) const {
  auto it = blocked_.find(from);
  return it == blocked_.end() || it->second.count(k_index) == 0;
}

FlagSet filter_new_flags(const Inbox& inbox, const FlagSet& history) {
  FlagSet fresh;
  for (const auto& [from, msg] : inbox.msgs) {
    for (const ChangeFlag& flag : msg.flags) {
      if (!history.count(flag)) fresh.insert(flag);
    }
  }
  return fresh;
}

UpdateCase select_case(const FlagSet& new_flags, const FlagSet& prev_active) {
  if (!new_flags.empty()) return UpdateCase::NewFlags;
  if (!prev_active.empty()) return UpdateCase::Hold;
  return UpdateCase::Standard;
}

ReachVec consensus_standard(const ReachVec& self_x, const Inbox& inbox,
                            const NeighborTrust& trust) {
  ReachVec out = self_x;
  for (const auto& [from, msg] : inbox.msgs) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (msg.x[k] && trust.allows(from, k)) out[k] = 1;
    }
  }
  return out;
}

ReachVec flag_constraint_vector(const Inbox& inbox, const FlagSet& new_flags,
                                const NeighborTrust& trust) {
  if (new_flags.empty()) throw std::logic_error("constraint needs flags");
  const std::size_t n = inbox.msgs.empty()
                            ? 0
                            : inbox.msgs.begin()->second.x.size();
  ReachVec constraint(n, 1);
  for (const ChangeFlag& flag : new_flags) {
    ReachVec carried(n, 0);
    bool any_carrier = false;
    for (const auto& [from, msg] : inbox.msgs) {
      if (!msg.flags.count(flag)) continue;
      any_carrier = true;
      for (std::size_t k = 0; k < n; ++k) {
        if (msg.x[k] && trust.allows(from, k)) carried[k] = 1;
      }
    }
    if (!any_carrier) {
      throw std::logic_error("flag accepted with no carrying neighbor");
    }
    for (std::size_t k = 0; k < n; ++k) constraint[k] &= carried[k];
  }
  return constraint;
}

ReachVec consensus_new_flags(NodeId id, const ReachVec& self_x,
                             const Inbox& inbox, const FlagSet& new_flags,
                             const FlagSet& history,
                             const NeighborTrust& trust) {
  if (new_flags.empty()) throw std::logic_error("new-flags update needs flags");
  // Historical OR: self plus neighbors already past these events.
  ReachVec historical = self_x;
  for (const auto& [from, msg] : inbox.msgs) {
    bool seen_before = std::any_of(
        msg.flags.begin(), msg.flags.end(),
        [&history](const ChangeFlag& f) { return history.count(f) > 0; });
    if (!seen_before) continue;
    for (std::size_t k = 0; k < historical.size(); ++k) {
      if (msg.x[k] && trust.allows(from, k)) historical[k] = 1;
    }
  }
  ReachVec constraint = flag_constraint_vector(inbox, new_flags, trust);
  ReachVec out(self_x.size(), 0);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = historical[k] & constraint[k];
  }
  out[id - 1] = 1;
  return out;
}

DistVec update_distance_intermediate(const ReachVec& x_hat,
                                     const ReachVec& x_prev,
                                     const DistVec& d_prev, const Inbox& inbox,
                                     bool steady_relax,
                                     const NeighborTrust& trust) {
  const std::size_t n = x_hat.size();
  DistVec d(n, kUnreachable);
  for (std::size_t k = 0; k < n; ++k) {
    if (x_hat[k] == x_prev[k]) {
      d[k] = d_prev[k];
      if (steady_relax && x_hat[k] && is_reachable(d[k])) {
        for (const auto& [from, msg] : inbox.msgs) {
          if (is_reachable(msg.d[k]) && trust.allows(from, k)) {
            d[k] = std::min(d[k], msg.d[k] + 1);
          }
        }
      }
    } else if (x_hat[k] == 0) {
      d[k] = kUnreachable;
    } else {
      Dist best = kUnreachable;
      for (const auto& [from, msg] : inbox.msgs) {
        if (is_reachable(msg.d[k]) && trust.allows(from, k)) {
          best = std::min(best, msg.d[k]);
        }
      }
      d[k] = is_reachable(best) ? best + 1 : kUnreachable;
    }
  }
  return d;
}

DeltaVec compute_delta(const DistVec& d_self_prev,
                       const DistVec& d_other_prev) {
  if (d_self_prev.size() != d_other_prev.size()) {
    throw std::invalid_argument("compute_delta: length mismatch");
  }
  DeltaVec delta(d_self_prev.size(), kDeltaInf);
  for (std::size_t k = 0; k < delta.size(); ++k) {
    if (is_reachable(d_self_prev[k]) && is_reachable(d_other_prev[k])) {
      delta[k] = d_self_prev[k] - d_other_prev[k];
    }
  }
  return delta;
}

ReachVec apply_correction(NodeId id, const ReachVec& x_hat,
                          const DeltaVec& delta) {
  if (x_hat.size() != delta.size()) {
    throw std::invalid_argument("apply_correction: length mismatch");
  }
  ReachVec out = x_hat;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (delta[k] > 0) out[k] = 0;
  }
  out[id - 1] = 1;
  return out;
}

namespace {

// Reconciles reachability and distance after the consensus/correction
// pipeline: x == 0 forces the distance unreachable, a failed 0->1 relaxation
// forces x back to 0, and the self entry stays (1, 0).
void finalize_state(NodeId id, ReachVec& x, DistVec& d, const DistVec& d_hat) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    d[k] = x[k] ? d_hat[k] : kUnreachable;
    if (x[k] && !is_reachable(d[k])) x[k] = 0;
  }
  x[id - 1] = 1;
  d[id - 1] = 0;
}

}  // namespace

CorrectionResult on_edge_change(NodeId id,
                                const std::vector<LocalChange>& changes,
                                const ReachVec& x_hat, const DistVec& d_hat,
                                const DistVec& d_prev, const Inbox& inbox,
                                int t) {
  if (changes.empty()) throw std::logic_error("on_edge_change without changes");
  std::vector<LocalChange> ordered = changes;
  std::sort(ordered.begin(), ordered.end(),
            [](const LocalChange& a, const LocalChange& b) {
              return canonical_edge(a.self, a.other) <
                     canonical_edge(b.self, b.other);
            });
  CorrectionResult result;
  result.x = x_hat;
  for (const LocalChange& change : ordered) {
    const DistVec* d_other = nullptr;
    if (change.op == EdgeOp::Add) {
      auto it = inbox.handshakes.find(change.other);
      if (it == inbox.handshakes.end()) {
        throw std::logic_error("missing handshake from added neighbor " +
                               std::to_string(change.other));
      }
      d_other = &it->second;
    } else {
      auto it = inbox.msgs.find(change.other);
      if (it == inbox.msgs.end()) {
        throw std::logic_error("missing cached state for deleted neighbor " +
                               std::to_string(change.other));
      }
      d_other = &it->second.d;
    }
    const ChangeFlag flag{change.op, canonical_edge(change.self, change.other),
                          t};
    DeltaVec delta = compute_delta(d_prev, *d_other);
    ReachVec corrected = apply_correction(id, result.x, delta);
    for (std::size_t k = 0; k < corrected.size(); ++k) {
      if (result.x[k] && !corrected[k]) {
        result.reset_blame[static_cast<NodeId>(k) + 1].insert(flag);
      }
    }
    result.x = std::move(corrected);
    result.generated.insert(flag);
  }
  result.d.assign(result.x.size(), kUnreachable);
  finalize_state(id, result.x, result.d, d_hat);
  return result;
}

StepResult step(const NodeState& state, const Inbox& inbox,
                const std::vector<LocalChange>& local_changes, int t) {
  const int n = state.n();
  const NeighborTrust trust(state, inbox);
  FlagSet fresh = filter_new_flags(inbox, state.history);

  const UpdateCase kase = select_case(fresh, state.active);
  ReachVec x_hat;
  switch (kase) {
    case UpdateCase::NewFlags:
      x_hat = consensus_new_flags(state.id, state.x, inbox, fresh,
                                  state.history, trust);
      break;
    case UpdateCase::Hold:
      x_hat = state.x;
      break;
    case UpdateCase::Standard:
      x_hat = consensus_standard(state.x, inbox, trust);
      break;
  }
  DistVec d_hat =
      update_distance_intermediate(x_hat, state.x, state.d, inbox,
                                   kase == UpdateCase::Standard, trust);

  StepResult res;
  NodeState& next = res.state;
  next.id = state.id;
  next.ap_verdict = state.ap_verdict;
  next.entry_barriers = state.entry_barriers;

  // Entries the inter-flag aggregation shot down are chargeable to the flags
  // whose carriers lost them; re-raising waits for those flags' echoes.
  if (kase == UpdateCase::NewFlags) {
    for (int k = 0; k < n; ++k) {
      if (x_hat[k]) continue;
      const NodeId dest = k + 1;
      if (!state.x[k] && !next.entry_barriers.count(dest)) continue;
      for (const ChangeFlag& flag : fresh) {
        bool retained = false;
        for (const auto& [from, msg] : inbox.msgs) {
          if (msg.flags.count(flag) && msg.x[k] && trust.allows(from, k)) {
            retained = true;
            break;
          }
        }
        if (!retained) next.entry_barriers[dest].insert(flag);
      }
    }
  }

  if (!local_changes.empty()) {
    CorrectionResult corr =
        on_edge_change(state.id, local_changes, x_hat, d_hat, state.d, inbox, t);
    next.x = std::move(corr.x);
    next.d = std::move(corr.d);
    next.active = fresh;
    next.active.insert(corr.generated.begin(), corr.generated.end());
    next.history = state.history;
    next.history.insert(corr.generated.begin(), corr.generated.end());
    for (const auto& [dest, flags] : corr.reset_blame) {
      next.entry_barriers[dest].insert(flags.begin(), flags.end());
    }
  } else {
    next.x = std::move(x_hat);
    next.d.assign(static_cast<std::size_t>(n), kUnreachable);
    finalize_state(state.id, next.x, next.d, d_hat);
    next.active = fresh;
    next.history = state.history;
  }
  next.history.insert(fresh.begin(), fresh.end());
  next.history = gc_history(next.history, t, n);
  next.prev_active = state.active;
  next.x_prev = state.x;
  next.d_prev = state.d;
  next.neighbor_cache = inbox.msgs;

  // Re-raised destinations start a fresh epoch; stale blockers age out with
  // the history margin so a missed echo can only defer recovery, not veto it.
  for (auto it = next.entry_barriers.begin();
       it != next.entry_barriers.end();) {
    if (next.x[it->first - 1]) {
      it = next.entry_barriers.erase(it);
      continue;
    }
    it->second = gc_history(it->second, t, n);
    if (it->second.empty()) {
      it = next.entry_barriers.erase(it);
    } else {
      ++it;
    }
  }
  next.flag_echoes = state.flag_echoes;
  for (const auto& [from, msg] : inbox.msgs) {
    for (const ChangeFlag& flag : msg.flags) {
      next.flag_echoes[flag].insert(from);
    }
  }
  for (auto it = next.flag_echoes.begin(); it != next.flag_echoes.end();) {
    if (it->first.timestamp < t - n) {
      it = next.flag_echoes.erase(it);
    } else {
      ++it;
    }
  }

  res.outbound = {next.x, next.d, next.active};
  res.new_flags = std::move(fresh);
  return res;
}

FlagSet gc_history(const FlagSet& history, int t, int n) {
  FlagSet kept;
  for (const ChangeFlag& flag : history) {
    if (flag.timestamp >= t - n) kept.insert(flag);
  }
  return kept;
}

}  // namespace dynap
