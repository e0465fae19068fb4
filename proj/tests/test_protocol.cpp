#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dynap/engine.hpp"
#include "dynap/graph.hpp"
#include "dynap/oracle.hpp"
#include "dynap/protocol.hpp"
#include "test_util.hpp"

using namespace dynap;
using testutil::bits;
using testutil::dists;
using testutil::make_inbox;

namespace {

const ChangeFlag kFlagA{EdgeOp::Delete, {1, 2}, 1};
const ChangeFlag kFlagB{EdgeOp::Delete, {3, 4}, 2};
const ChangeFlag kFlagC{EdgeOp::Add, {5, 6}, 2};

ReachVec converged_x(int n) { return ReachVec(static_cast<std::size_t>(n), 1); }

// Fully converged state for one fig1 node.
NodeState converged_node(const Graph& g, NodeId id) {
  NodeState s = init_node(id, g.node_count());
  s.x = converged_x(g.node_count());
  s.d = bfs_distances(g, id);
  s.x_prev = s.x;
  s.d_prev = s.d;
  return s;
}

Inbox converged_inbox(const Graph& g, NodeId id) {
  Inbox inbox;
  for (NodeId j : g.neighbors(id)) {
    inbox.msgs.emplace(
        j, Message{converged_x(g.node_count()), bfs_distances(g, j), {}});
  }
  return inbox;
}

}  // namespace

TEST_CASE("init_node") {
  NodeState s = init_node(2, 10);
  CHECK(s.x == bits({0, 1, 0, 0, 0, 0, 0, 0, 0, 0}));
  for (int k = 0; k < 10; ++k) {
    CHECK(s.d[k] == (k == 1 ? 0 : kUnreachable));
  }
  CHECK(s.active.empty());
  CHECK(s.history.empty());

  NodeState single = init_node(1, 1);
  CHECK(single.x == bits({1}));
  CHECK(single.d == dists({0}));

  CHECK_THROWS_AS(init_node(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(init_node(6, 5), std::invalid_argument);
}

TEST_CASE("filter_new_flags unions neighbor sets minus history") {
  Inbox inbox = make_inbox({
      {1, {bits({1}), dists({0}), {kFlagA, kFlagB}}},
      {2, {bits({1}), dists({0}), {kFlagB}}},
      {3, {bits({1}), dists({0}), {kFlagC}}},
  });
  CHECK(filter_new_flags(inbox, {kFlagA}) == FlagSet{kFlagB, kFlagC});
  CHECK(filter_new_flags(make_inbox({}), {}).empty());
  Inbox only_known = make_inbox({{1, {bits({1}), dists({0}), {kFlagA}}}});
  CHECK(filter_new_flags(only_known, {kFlagA}).empty());
}

TEST_CASE("select_case") {
  CHECK(select_case({kFlagA}, {}) == UpdateCase::NewFlags);
  CHECK(select_case({}, {kFlagA}) == UpdateCase::Hold);
  CHECK(select_case({}, {}) == UpdateCase::Standard);
  CHECK(select_case({kFlagA}, {kFlagB}) == UpdateCase::NewFlags);
}

TEST_CASE("consensus_standard ORs self with the inbox") {
  Inbox inbox = make_inbox({
      {1, {bits({1, 0, 0, 0}), dists({0, -1, -1, -1}), {}}},
      {3, {bits({0, 0, 1, 0}), dists({-1, -1, 0, -1}), {}}},
      {4, {bits({0, 0, 0, 1}), dists({-1, -1, -1, 0}), {}}},
  });
  CHECK(consensus_standard(bits({0, 1, 0, 0}), inbox) == bits({1, 1, 1, 1}));
  CHECK(consensus_standard(bits({0, 1, 0, 0}), make_inbox({})) ==
        bits({0, 1, 0, 0}));
}

TEST_CASE("consensus_new_flags reproduces the worked three-neighbor case") {
  // Node 1 with neighbors {2,3,4}; destination is entry 5. Neighbor 2 also
  // carries a flag already in the history, so it is a historical source.
  Inbox inbox = make_inbox({
      {2, {bits({1, 1, 0, 0, 1}), dists({1, 0, -1, -1, 2}), {kFlagA, kFlagB}}},
      {3, {bits({1, 0, 1, 0, 0}), dists({1, -1, 0, -1, -1}), {kFlagB}}},
      {4, {bits({1, 0, 0, 1, 1}), dists({1, -1, -1, 0, 3}), {kFlagC}}},
  });
  const ReachVec self = bits({1, 0, 0, 0, 0});
  const FlagSet fresh{kFlagB, kFlagC};
  const FlagSet history{kFlagA};

  ReachVec got = consensus_new_flags(1, self, inbox, fresh, history);
  // Entry 5: historical OR raises it via neighbor 2; flag B's carriers {2,3}
  // OR to 1; flag C's carrier {4} has it; survives the conjunction.
  CHECK(got[4] == 1);
  // Entry 3: only neighbor 3 reaches it, but the historical side (self, 2)
  // does not, so the conjunction kills it.
  CHECK(got[2] == 0);
  CHECK(got[0] == 1);  // self forced

  CHECK_THROWS_AS(
      consensus_new_flags(1, self, inbox, FlagSet{}, history),
      std::logic_error);
  const ChangeFlag unknown{EdgeOp::Add, {7, 8}, 9};
  CHECK_THROWS_AS(
      consensus_new_flags(1, self, inbox, FlagSet{unknown}, history),
      std::logic_error);
}

TEST_CASE("single flag with zero-carrier forces conjunction to zero") {
  Inbox inbox = make_inbox({
      {2, {bits({0, 1, 0}), dists({-1, 0, -1}), {kFlagA}}},
  });
  ReachVec got = consensus_new_flags(1, bits({1, 0, 1}), inbox, {kFlagA}, {});
  // Entry 3: self reaches it but the only carrier does not, 1 AND 0. Entry 2:
  // the carrier is not a historical source, so nothing raises it.
  CHECK(got == bits({1, 0, 0}));
}

TEST_CASE("flag constraint matches the quantifier oracle on random instances") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 10)(rng);
    const int neighbors = std::uniform_int_distribution<int>(1, 6)(rng);
    const int flag_count = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<ChangeFlag> flags;
    for (int f = 0; f < flag_count; ++f) {
      flags.push_back({EdgeOp::Delete, {100 + f, 101 + f}, f});
    }
    Inbox inbox;
    FlagSet fresh;
    for (int j = 1; j <= neighbors; ++j) {
      Message msg;
      msg.x.resize(static_cast<std::size_t>(n));
      msg.d.resize(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        msg.x[k] = std::uniform_int_distribution<int>(0, 1)(rng);
        msg.d[k] = msg.x[k] ? std::uniform_int_distribution<int>(0, n)(rng)
                            : kUnreachable;
      }
      for (const ChangeFlag& f : flags) {
        if (std::bernoulli_distribution(0.5)(rng)) msg.flags.insert(f);
      }
      inbox.msgs.emplace(j, std::move(msg));
    }
    // keep only flags that ended up carried by someone
    for (const ChangeFlag& f : flags) {
      for (const auto& [from, msg] : inbox.msgs) {
        if (msg.flags.count(f)) {
          fresh.insert(f);
          break;
        }
      }
    }
    if (fresh.empty()) continue;
    CHECK(flag_constraint_vector(inbox, fresh) ==
          testutil::quantifier_constraint(inbox, fresh, n));
  }
}

TEST_CASE("update_distance_intermediate branches") {
  Inbox inbox = make_inbox({
      {2, {bits({1, 1, 1}), dists({2, 0, -1}), {}}},
      {3, {bits({1, 1, 1}), dists({-1, 1, 4}), {}}},
  });

  SUBCASE("persistence") {
    DistVec d = update_distance_intermediate(bits({1, 1, 0}), bits({1, 1, 0}),
                                             dists({0, 3, -1}), inbox);
    CHECK(d == dists({0, 3, -1}));
  }
  SUBCASE("loss resets to unreachable") {
    DistVec d = update_distance_intermediate(bits({1, 0, 0}), bits({1, 1, 0}),
                                             dists({0, 3, -1}), inbox);
    CHECK(d == dists({0, -1, -1}));
  }
  SUBCASE("gain relaxes over finite offers only") {
    DistVec d = update_distance_intermediate(bits({1, 1, 1}), bits({1, 1, 0}),
                                             dists({0, 3, -1}), inbox);
    CHECK(d[2] == 5);  // 1 + min(inf, 4)
  }
  SUBCASE("gain with no finite offer stays unreachable") {
    Inbox empty_d = make_inbox({{2, {bits({0, 0, 1}), dists({-1, -1, -1}), {}}}});
    DistVec d = update_distance_intermediate(bits({1, 0, 1}), bits({1, 0, 0}),
                                             dists({0, -1, -1}), empty_d);
    CHECK(d[2] == kUnreachable);
  }
  SUBCASE("steady relax adopts better routes only when enabled") {
    DistVec frozen = update_distance_intermediate(
        bits({1, 1, 1}), bits({1, 1, 1}), dists({0, 4, 9}), inbox, false);
    CHECK(frozen == dists({0, 4, 9}));
    DistVec relaxed = update_distance_intermediate(
        bits({1, 1, 1}), bits({1, 1, 1}), dists({0, 4, 9}), inbox, true);
    CHECK(relaxed == dists({0, 1, 5}));  // via 2 (0+1), via 3 (4+1)
  }
}

TEST_CASE("compute_delta handles the unreachable convention") {
  Graph g = fig1_topology();
  DistVec d2 = bfs_distances(g, 2);
  DistVec d4 = bfs_distances(g, 4);
  DeltaVec delta = compute_delta(d2, d4);
  CHECK(delta == DeltaVec{0, -1, 0, 1, 1, 1, 1, 1, 1, 1});

  CHECK(compute_delta(d2, d2) == DeltaVec(10, 0));

  DeltaVec with_inf = compute_delta(dists({3, 1}), dists({-1, 1}));
  CHECK(with_inf[0] == kDeltaInf);
  CHECK(with_inf[1] == 0);
  CHECK_THROWS_AS(compute_delta(dists({1}), dists({1, 2})),
                  std::invalid_argument);
}

TEST_CASE("apply_correction resets positive-delta entries, keeps self") {
  Graph g = fig1_topology();
  ReachVec all = converged_x(10);

  ReachVec node2 =
      apply_correction(2, all, compute_delta(bfs_distances(g, 2),
                                             bfs_distances(g, 4)));
  CHECK(node2 == bits({1, 1, 1, 0, 0, 0, 0, 0, 0, 0}));

  ReachVec node4 =
      apply_correction(4, all, compute_delta(bfs_distances(g, 4),
                                             bfs_distances(g, 2)));
  CHECK(node4 == bits({1, 0, 1, 1, 1, 1, 1, 1, 1, 1}));

  DeltaVec none(10, -1);
  CHECK(apply_correction(2, all, none) == all);

  // Self entry exempt even under an infinite delta.
  DeltaVec hostile(10, kDeltaInf);
  CHECK(apply_correction(2, all, hostile)[1] == 1);
}

TEST_CASE("on_edge_change: converged deletion at node 2") {
  Graph g = fig1_topology();
  NodeState s = converged_node(g, 2);
  Inbox inbox = converged_inbox(g, 2);
  CorrectionResult r = on_edge_change(
      2, {{EdgeOp::Delete, 2, 4}}, s.x, s.d, s.d, inbox, 5);
  CHECK(r.x == bits({1, 1, 1, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(r.d == dists({1, 0, 1, -1, -1, -1, -1, -1, -1, -1}));
  CHECK(r.generated == FlagSet{{EdgeOp::Delete, {2, 4}, 5}});
}

TEST_CASE("on_edge_change: converged addition at node 9") {
  Graph g = fig1_topology();
  NodeState s = converged_node(g, 9);
  Inbox inbox = converged_inbox(g, 9);
  inbox.handshakes[10] = bfs_distances(g, 10);
  CorrectionResult r = on_edge_change(
      9, {{EdgeOp::Add, 9, 10}}, s.x, s.d, s.d, inbox, 5);
  // d_9 - d_10 is positive exactly at destinations {1,2,3,4,10}.
  CHECK(r.x == bits({0, 0, 0, 0, 1, 1, 1, 1, 1, 0}));
  for (NodeId k : {1, 2, 3, 4, 10}) CHECK(r.d[k - 1] == kUnreachable);
  CHECK(r.d[8] == 0);
  CHECK(r.generated == FlagSet{{EdgeOp::Add, {9, 10}, 5}});
  CHECK(r.reset_blame.count(10) == 1);
}

TEST_CASE("on_edge_change: simultaneous resets compose") {
  Graph g = fig1_topology();
  NodeState s = converged_node(g, 4);
  Inbox inbox = converged_inbox(g, 4);
  CorrectionResult both = on_edge_change(
      4, {{EdgeOp::Delete, 4, 2}, {EdgeOp::Delete, 4, 10}}, s.x, s.d, s.d,
      inbox, 5);
  CorrectionResult first = on_edge_change(
      4, {{EdgeOp::Delete, 4, 2}}, s.x, s.d, s.d, inbox, 5);
  CorrectionResult second = on_edge_change(
      4, {{EdgeOp::Delete, 4, 10}}, s.x, s.d, s.d, inbox, 5);
  for (int k = 0; k < 10; ++k) {
    CHECK(int(both.x[k]) == (first.x[k] & second.x[k]));
  }
  CHECK(both.generated.size() == 2);

  CHECK_THROWS_AS(on_edge_change(4, {}, s.x, s.d, s.d, inbox, 5),
                  std::logic_error);
  // deleting an edge with no cached message is a delivery-contract bug
  CHECK_THROWS_AS(on_edge_change(4, {{EdgeOp::Delete, 4, 7}}, s.x, s.d, s.d,
                                 inbox, 5),
                  std::logic_error);
  CHECK_THROWS_AS(on_edge_change(4, {{EdgeOp::Add, 4, 7}}, s.x, s.d, s.d,
                                 inbox, 5),
                  std::logic_error);
}

TEST_CASE("step holds state while its own flag drains") {
  Graph g = fig1_topology();
  NodeState s = converged_node(g, 2);
  s.active = {kFlagA};
  s.history = {kFlagA};
  Inbox inbox = converged_inbox(g, 2);
  StepResult r = step(s, inbox, {}, 7);
  CHECK(r.state.x == s.x);
  CHECK(r.state.d == s.d);
  CHECK(r.state.active.empty());
  CHECK(r.state.prev_active == FlagSet{kFlagA});
  CHECK(r.new_flags.empty());
}

TEST_CASE("step keeps self-consistency and coupling invariants") {
  std::mt19937 rng(21);
  for (unsigned seed = 0; seed < 30; ++seed) {
    Scenario s = testutil::random_scenario(seed, 5, 10, 4, 8);
    World w;  // run by hand to inspect every node every round
    w = init_world(s);
    for (int t = 1; t <= s.horizon; ++t) {
      run_round(w, t);
      for (const auto& [id, node] : w.nodes) {
        CHECK(node.x[id - 1] == 1);
        CHECK(node.d[id - 1] == 0);
        for (int k = 0; k < node.n(); ++k) {
          CHECK((node.x[k] == 1) == is_reachable(node.d[k]));
        }
      }
    }
  }
}

TEST_CASE("gc_history purges strictly older than t - n") {
  const ChangeFlag old_flag{EdgeOp::Delete, {1, 2}, 3};
  const ChangeFlag edge_flag{EdgeOp::Delete, {1, 3}, 4};
  FlagSet history{old_flag, edge_flag};
  CHECK(gc_history(history, 14, 10) == FlagSet{edge_flag});
  CHECK(gc_history({}, 14, 10).empty());
  CHECK(gc_history(history, 5, 10) == history);
}

TEST_CASE("static run reduces to plain max-consensus flooding") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    Graph g = random_connected(9, 4, seed);
    Scenario s;
    s.initial = g;
    s.horizon = 12;
    World w = init_world(s);
    testutil::FloodingReference ref(g);
    for (int t = 1; t <= s.horizon; ++t) {
      run_round(w, t);
      ref.sweep(g);
      for (NodeId i = 1; i <= 9; ++i) {
        CHECK(w.nodes.at(i).x == ref.x[i - 1]);
        CHECK(w.nodes.at(i).d == ref.d[i - 1]);
      }
    }
  }
}

TEST_CASE("a flag is accepted by each node at most once") {
  Scenario s;
  s.name = "del-2-4";
  s.initial = fig1_topology();
  s.events = {{5, EdgeOp::Delete, canonical_edge(2, 4)}};
  s.horizon = 30;
  World w = init_world(s);
  std::map<std::pair<NodeId, ChangeFlag>, int> accepted;
  for (int t = 1; t <= s.horizon; ++t) {
    // Recompute each node's step against the same inboxes the engine builds,
    // tracking filter_new_flags output via StepResult.
    const Graph before = w.graph;
    std::map<NodeId, FlagSet> outputs;
    {
      // capture the accepted flags by re-running the filter on the snapshot
      for (NodeId i = 1; i <= 10; ++i) {
        Inbox inbox;
        for (NodeId j : before.neighbors(i)) {
          const NodeState& peer = w.nodes.at(j);
          inbox.msgs.emplace(j, Message{peer.x, peer.d, peer.active});
        }
        outputs[i] = filter_new_flags(inbox, w.nodes.at(i).history);
      }
    }
    run_round(w, t);
    for (const auto& [i, flags] : outputs) {
      for (const ChangeFlag& f : flags) {
        accepted[{i, f}] += 1;
        CHECK(accepted[{i, f}] == 1);
      }
    }
  }
}
