#include "dynap/ap.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace dynap {

bool stability_trigger(const NodeState& state, const Inbox& inbox) {
  if (!state.active.empty()) return false;
  for (const auto& [from, msg] : inbox.msgs) {
    if (!msg.flags.empty()) return false;
  }
  return state.x == state.x_prev && state.d == state.d_prev;
}

PairSet build_pair_set(NodeId owner, const DistVec& d_self,
                       const std::map<NodeId, DistVec>& neighbor_ds,
                       const std::set<NodeId>& neighbors,
                       const ReachVec& x_self) {
  PairSet out;
  out.owner = owner;
  const int n = static_cast<int>(d_self.size());
  for (NodeId j : neighbors) {
    if (!neighbor_ds.count(j)) {
      throw std::invalid_argument("no distance vector for neighbor " +
                                  std::to_string(j));
    }
  }
  std::vector<NodeId> nb(neighbors.begin(), neighbors.end());
  for (std::size_t a = 0; a < nb.size(); ++a) {
    for (std::size_t b = a + 1; b < nb.size(); ++b) {
      const NodeId j = nb[a];
      const NodeId k = nb[b];
      const DistVec& dj = neighbor_ds.at(j);
      const DistVec& dk = neighbor_ds.at(k);

      // Triangle evidence: both deltas exactly zero (infinite deltas never
      // count as zero).
      bool triangle = is_reachable(d_self[k - 1]) && is_reachable(dj[k - 1]) &&
                      d_self[k - 1] == dj[k - 1] &&
                      is_reachable(d_self[j - 1]) && is_reachable(dk[j - 1]) &&
                      d_self[j - 1] == dk[j - 1];

      bool witness = false;
      if (!triangle) {
        for (NodeId p = 1; p <= n && !witness; ++p) {
          if (p == owner || p == j || p == k || neighbors.count(p)) continue;
          if (!x_self[p - 1]) continue;
          if (!is_reachable(d_self[p - 1]) || !is_reachable(dj[p - 1]) ||
              !is_reachable(dk[p - 1])) {
            continue;
          }
          witness = d_self[p - 1] >= dj[p - 1] && d_self[p - 1] >= dk[p - 1];
        }
      }
      if (triangle || witness) out.pairs.insert({j, k});
    }
  }
  return out;
}

namespace {

struct UnionFind {
  std::map<NodeId, NodeId> parent;

  explicit UnionFind(const std::set<NodeId>& items) {
    for (NodeId i : items) parent[i] = i;
  }
  NodeId find(NodeId i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void unite(NodeId a, NodeId b) { parent[find(a)] = find(b); }
};

}  // namespace

ApVerdict union_find_verdict(NodeId node, const std::set<NodeId>& neighbors,
                             const PairSet& pairs, int decided_at) {
  ApVerdict verdict;
  verdict.node = node;
  verdict.decided_at = decided_at;
  if (neighbors.size() <= 1) {
    // A leaf or isolated node can never disconnect anything.
    verdict.is_ap = false;
    if (!neighbors.empty()) verdict.components.push_back({*neighbors.begin()});
    return verdict;
  }
  UnionFind uf(neighbors);
  for (const auto& [j, k] : pairs.pairs) uf.unite(j, k);
  std::map<NodeId, std::vector<NodeId>> blocks;
  for (NodeId i : neighbors) blocks[uf.find(i)].push_back(i);
  for (auto& [root, members] : blocks) {
    verdict.components.push_back(std::move(members));
  }
  verdict.is_ap = verdict.components.size() > 1;
  return verdict;
}

bool biconnectivity_consensus(const std::map<NodeId, bool>& verdicts,
                              const Graph& graph, int rounds) {
  const int n = graph.node_count();
  std::vector<std::uint8_t> bit(static_cast<std::size_t>(n), 0);
  for (NodeId i = 1; i <= n; ++i) {
    auto it = verdicts.find(i);
    if (it == verdicts.end()) {
      throw std::invalid_argument("missing verdict for node " +
                                  std::to_string(i));
    }
    bit[i - 1] = it->second ? 1 : 0;
  }
  for (int r = 0; r < rounds; ++r) {
    std::vector<std::uint8_t> next = bit;
    for (NodeId i = 1; i <= n; ++i) {
      for (NodeId j : graph.neighbors(i)) next[i - 1] |= bit[j - 1];
    }
    bit = std::move(next);
  }
  bool any_ap = std::any_of(bit.begin(), bit.end(),
                            [](std::uint8_t b) { return b != 0; });
  if (any_ap) return false;

  // All-zero consensus only certifies biconnectivity on a connected graph;
  // at stability this matches every node holding an all-ones x vector.
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::deque<NodeId> queue{1};
  seen[0] = 1;
  int visited = 1;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : graph.neighbors(u)) {
      if (!seen[v - 1]) {
        seen[v - 1] = 1;
        ++visited;
        queue.push_back(v);
      }
    }
  }
  return visited == n;
}

}  // namespace dynap
