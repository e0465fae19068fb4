"""Distributed articulation-point identification on time-varying networks.

Thin wrapper around the C++ core: a per-node max-consensus protocol with
incremental flag-based repair, a centralized oracle, and a deterministic
round-based simulator.
"""

from ._core import (
    EdgeEvent,
    EdgeKey,
    EdgeOp,
    Graph,
    GroundTruth,
    Scenario,
    TraceRecord,
    ba_generate,
    bfs_distances,
    brute_force_aps,
    brute_force_bridges,
    builtin_scenario,
    builtin_scenarios,
    canonical_edge,
    component_count,
    diameter,
    fig1_topology,
    ground_truth,
    load_scenario,
    random_connected,
    run,
    scenario_from_json,
    scenario_to_json,
    state_error,
    trace_csv,
    trace_json,
)

__all__ = [
    "EdgeEvent",
    "EdgeKey",
    "EdgeOp",
    "Graph",
    "GroundTruth",
    "Scenario",
    "TraceRecord",
    "ba_generate",
    "bfs_distances",
    "brute_force_aps",
    "brute_force_bridges",
    "builtin_scenario",
    "builtin_scenarios",
    "canonical_edge",
    "component_count",
    "diameter",
    "fig1_topology",
    "ground_truth",
    "load_scenario",
    "random_connected",
    "run",
    "scenario_from_json",
    "scenario_to_json",
    "state_error",
    "trace_csv",
    "trace_json",
]
