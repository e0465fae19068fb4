#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "dynap/engine.hpp"
#include "dynap/oracle.hpp"
#include "dynap/scenario_io.hpp"
#include "dynap/scenarios.hpp"

namespace py = pybind11;
using namespace dynap;

namespace {

// Distance vectors cross the boundary as floats so unreachable maps to inf.
py::list dist_to_py(const DistVec& d) {
  py::list out;
  for (Dist v : d) {
    out.append(is_reachable(v) ? static_cast<double>(v)
                               : std::numeric_limits<double>::infinity());
  }
  return out;
}

py::list dist_rows_to_py(const std::vector<DistVec>& rows) {
  py::list out;
  for (const DistVec& row : rows) out.append(dist_to_py(row));
  return out;
}

std::vector<ReachVec> reach_rows_from_py(const std::vector<std::vector<int>>& rows) {
  std::vector<ReachVec> out;
  for (const auto& row : rows) {
    ReachVec r(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) r[k] = row[k] ? 1 : 0;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distributed articulation-point identification on time-varying "
            "networks: protocol simulator, centralized oracle, scenarios.";

  py::enum_<EdgeOp>(m, "EdgeOp")
      .value("ADD", EdgeOp::Add)
      .value("DELETE", EdgeOp::Delete);

  py::class_<EdgeKey>(m, "EdgeKey")
      .def(py::init([](NodeId u, NodeId v) { return canonical_edge(u, v); }))
      .def_readonly("u", &EdgeKey::u)
      .def_readonly("v", &EdgeKey::v)
      .def("__iter__",
           [](const EdgeKey& e) {
             return py::iter(py::make_tuple(e.u, e.v));
           })
      .def("__repr__", [](const EdgeKey& e) {
        return "EdgeKey(" + std::to_string(e.u) + ", " + std::to_string(e.v) +
               ")";
      });

  py::class_<EdgeEvent>(m, "EdgeEvent")
      .def(py::init([](int t, EdgeOp op, NodeId u, NodeId v) {
             return EdgeEvent{t, op, canonical_edge(u, v)};
           }),
           py::arg("t"), py::arg("op"), py::arg("u"), py::arg("v"))
      .def_readonly("t", &EdgeEvent::t)
      .def_readonly("op", &EdgeEvent::op)
      .def_readonly("edge", &EdgeEvent::edge);

  py::class_<Graph>(m, "Graph")
      .def(py::init<int>(), py::arg("n"))
      .def_property_readonly("n", &Graph::node_count)
      .def("edge_count", &Graph::edge_count)
      .def("has_edge", &Graph::has_edge)
      .def("add_edge", &Graph::add_edge)
      .def("remove_edge", &Graph::remove_edge)
      .def("neighbors",
           [](const Graph& g, NodeId i) {
             return std::vector<NodeId>(g.neighbors(i).begin(),
                                        g.neighbors(i).end());
           })
      .def("edges",
           [](const Graph& g) {
             std::vector<std::pair<NodeId, NodeId>> out;
             for (const EdgeKey& e : g.edges()) out.emplace_back(e.u, e.v);
             return out;
           })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.node_count()) + ", edges=" +
               std::to_string(g.edge_count()) + ")";
      });

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("name", &Scenario::name)
      .def_readwrite("initial", &Scenario::initial)
      .def_readwrite("events", &Scenario::events)
      .def_readwrite("horizon", &Scenario::horizon)
      .def_readwrite("seed", &Scenario::seed)
      .def("last_event_time", &Scenario::last_event_time);

  py::class_<GroundTruth>(m, "GroundTruth")
      .def_readonly("ap_set", &GroundTruth::ap_set)
      .def_readonly("component_count", &GroundTruth::component_count)
      .def_readonly("biconnected", &GroundTruth::biconnected)
      .def_property_readonly(
          "x_star", [](const GroundTruth& g) { return g.x_star; })
      .def_property_readonly("d_star", [](const GroundTruth& g) {
        return dist_rows_to_py(g.d_star);
      });

  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("t", &TraceRecord::t)
      .def_readonly("x_error", &TraceRecord::x_error)
      .def_readonly("d_error", &TraceRecord::d_error)
      .def_readonly("active_flags", &TraceRecord::active_flag_total)
      .def_readonly("ap_set", &TraceRecord::ap_set)
      .def_readonly("truth_ap_set", &TraceRecord::truth_ap_set)
      .def_readonly("biconnected", &TraceRecord::biconnected_truth)
      .def_readonly("converged", &TraceRecord::converged)
      .def("__repr__", [](const TraceRecord& r) {
        return "TraceRecord(t=" + std::to_string(r.t) + ", x_error=" +
               std::to_string(r.x_error) + ", d_error=" +
               std::to_string(r.d_error) + ")";
      });

  m.def("canonical_edge", &canonical_edge, py::arg("u"), py::arg("v"));
  m.def("fig1_topology", &fig1_topology);
  m.def("ba_generate", &ba_generate, py::arg("n"), py::arg("m"),
        py::arg("seed"));
  m.def("random_connected", &random_connected, py::arg("n"),
        py::arg("extra_edges"), py::arg("seed"));

  m.def("bfs_distances",
        [](const Graph& g, NodeId i) { return dist_to_py(bfs_distances(g, i)); },
        py::arg("graph"), py::arg("i"));
  m.def("ground_truth", &ground_truth, py::arg("graph"));
  m.def("brute_force_aps", &brute_force_aps, py::arg("graph"));
  m.def("brute_force_bridges",
        [](const Graph& g) {
          std::vector<std::pair<NodeId, NodeId>> out;
          for (const EdgeKey& e : brute_force_bridges(g)) {
            out.emplace_back(e.u, e.v);
          }
          return out;
        },
        py::arg("graph"));
  m.def("component_count", &component_count, py::arg("graph"));
  m.def("diameter", &diameter, py::arg("graph"));
  m.def("state_error",
        [](const std::vector<std::vector<int>>& a,
           const std::vector<std::vector<int>>& b) {
          return state_error(reach_rows_from_py(a), reach_rows_from_py(b));
        },
        py::arg("x"), py::arg("x_star"));

  m.def("run",
        [](const Scenario& s) { return run(s); },
        py::arg("scenario"),
        "Run the distributed protocol round by round; returns the trace.");
  m.def("builtin_scenarios", &builtin_scenarios, py::arg("seed") = 0,
        py::arg("keep_connected") = false);
  m.def("builtin_scenario", &builtin_scenario, py::arg("name"),
        py::arg("seed") = 0, py::arg("keep_connected") = false);
  m.def("scenario_from_json", &scenario_from_json, py::arg("text"));
  m.def("scenario_to_json", &scenario_to_json, py::arg("scenario"));
  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def("trace_csv", &trace_csv, py::arg("trace"));
  m.def("trace_json", &trace_json, py::arg("trace"));
}
