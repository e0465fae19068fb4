"""Smoke tests for the python bindings and the CLI binary."""

import json
import math
import os
import subprocess

import pytest

import dynap


def test_fig1_oracle():
    g = dynap.fig1_topology()
    assert g.n == 10
    assert g.edge_count() == 13
    assert sorted(dynap.brute_force_aps(g)) == [4, 5, 7]
    assert sorted(dynap.brute_force_bridges(g)) == [(4, 5), (4, 10)]
    assert dynap.diameter(g) == 4
    assert dynap.bfs_distances(g, 2) == [1, 0, 1, 1, 2, 3, 3, 4, 4, 2]
    truth = dynap.ground_truth(g)
    assert truth.component_count == 1
    assert not truth.biconnected


def test_unreachable_maps_to_inf():
    g = dynap.Graph(3)
    g.add_edge(1, 2)
    d = dynap.bfs_distances(g, 1)
    assert d[:2] == [0, 1]
    assert math.isinf(d[2])


def test_run_builtin_deletion():
    scenario = dynap.builtin_scenario("del-2-4")
    trace = dynap.run(scenario)
    assert len(trace) == scenario.horizon
    by_t = {r.t: r for r in trace}
    assert by_t[5].x_error > 0
    assert all(by_t[t].x_error == 0 for t in range(11, scenario.horizon + 1))
    assert sorted(trace[-1].ap_set) == [4, 5, 7]
    assert trace[-1].converged


def test_scenario_json_roundtrip():
    scenario = dynap.builtin_scenario("concurrent")
    text = dynap.scenario_to_json(scenario)
    back = dynap.scenario_from_json(text)
    assert back.horizon == scenario.horizon
    assert len(back.events) == 6
    assert dynap.trace_csv(dynap.run(back)) == dynap.trace_csv(
        dynap.run(scenario)
    )


def test_storm_is_seeded():
    a = dynap.builtin_scenario("ba-storm", seed=7)
    b = dynap.builtin_scenario("ba-storm", seed=7)
    c = dynap.builtin_scenario("ba-storm", seed=8)
    assert a.initial == b.initial
    assert dynap.trace_csv(dynap.run(a)) == dynap.trace_csv(dynap.run(b))
    assert c.initial != a.initial or dynap.trace_csv(
        dynap.run(c)
    ) != dynap.trace_csv(dynap.run(a))


CLI = os.environ.get("DYNAP_CLI")
DATA = os.environ.get("DYNAP_DATA", os.path.join(os.path.dirname(__file__), "..", "data"))

cli = pytest.mark.skipif(not CLI, reason="DYNAP_CLI not set")


@cli
def test_cli_run_builtin(tmp_path):
    out = tmp_path / "trace.csv"
    proc = subprocess.run(
        [CLI, "run", "--builtin", "del-2-4", "--format", "csv", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("t,x_error,d_error,active_flags")
    rows = {int(l.split(",")[0]): l.split(",") for l in lines[1:]}
    assert all(rows[t][1] == "0" for t in range(11, len(rows) + 1))
    assert "converged_at=" in proc.stdout


@cli
def test_cli_missing_scenario_exits_2():
    proc = subprocess.run(
        [CLI, "run", "--scenario", "does-not-exist.json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2


@cli
def test_cli_bad_schedule_exits_3(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(
        json.dumps(
            {
                "nodes": 3,
                "edges": [[1, 2]],
                "events": [{"t": 2, "op": "del", "u": 1, "v": 3}],
                "horizon": 10,
            }
        )
    )
    proc = subprocess.run(
        [CLI, "run", "--scenario", str(bad)], capture_output=True, text=True
    )
    assert proc.returncode == 3


@cli
def test_cli_oracle_report():
    proc = subprocess.run(
        [CLI, "oracle", os.path.join(DATA, "fig1_graph.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "articulation_points: {4,5,7}" in proc.stdout
    assert "biconnected: false" in proc.stdout
    assert "(4,5)" in proc.stdout and "(4,10)" in proc.stdout


@cli
def test_cli_list_builtins():
    proc = subprocess.run([CLI, "list-builtins"], capture_output=True, text=True)
    assert proc.returncode == 0
    for name in ["fig1-static", "del-2-4", "add-9-10", "concurrent", "ba-storm"]:
        assert name in proc.stdout


@cli
def test_cli_scenario_roundtrip(tmp_path):
    dumped = tmp_path / "storm.json"
    first = subprocess.run(
        [CLI, "run", "--builtin", "ba-storm", "--seed", "7",
         "--dump-scenario", str(dumped), "--format", "csv",
         "--out", str(tmp_path / "a.csv")],
        capture_output=True,
        text=True,
    )
    assert first.returncode == 0, first.stderr
    second = subprocess.run(
        [CLI, "run", "--scenario", str(dumped), "--format", "csv",
         "--out", str(tmp_path / "b.csv")],
        capture_output=True,
        text=True,
    )
    assert second.returncode == 0, second.stderr
    assert (tmp_path / "a.csv").read_text() == (tmp_path / "b.csv").read_text()
