#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <climits>
#include <optional>

#include "degseq/cost_model.hpp"
#include "degseq/errors.hpp"
#include "degseq/formats.hpp"
#include "degseq/generators.hpp"
#include "degseq/graph.hpp"
#include "degseq/nice_decomposition.hpp"
#include "degseq/oracle.hpp"
#include "degseq/pipeline.hpp"
#include "degseq/tree_decomposition.hpp"

namespace py = pybind11;
using namespace degseq;

namespace {

using PyEdge = std::pair<int, int>;

std::vector<PyEdge> one_based(const std::vector<Edge>& edges) {
  std::vector<PyEdge> out;
  out.reserve(edges.size());
  for (const Edge& e : edges) out.emplace_back(e.u + 1, e.v + 1);
  return out;
}

std::vector<std::vector<int>> one_based_bags(const TreeDecomposition& td) {
  std::vector<std::vector<int>> out;
  for (const auto& bag : td.bags) {
    std::vector<int> b;
    for (Vertex v : bag) b.push_back(v + 1);
    out.push_back(std::move(b));
  }
  return out;
}

TreeDecomposition from_python(const std::vector<std::vector<int>>& bags, const std::vector<PyEdge>& tree_edges) {
  TreeDecomposition td;
  for (const auto& bag : bags) {
    std::vector<Vertex> b;
    for (int v : bag) b.push_back(v - 1);
    std::sort(b.begin(), b.end());
    td.bags.push_back(std::move(b));
  }
  for (auto [a, b] : tree_edges) td.tree_edges.emplace_back(a - 1, b - 1);
  return td;
}

std::vector<std::string> messages(const std::vector<Violation>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.to_string());
  return out;
}

py::object to_python(const ExtendedCost& c) {
  if (c.is_finite()) return py::int_(c.value());
  return py::float_(std::numeric_limits<double>::infinity());
}

}  // namespace

PYBIND11_MODULE(_degseq, m) {
  m.doc() = "Exact degree sequence optimization over tree decompositions";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<WidthExceeded>(m, "WidthExceeded", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](int n, const std::vector<PyEdge>& edges) { return Graph::from_one_based(n, edges); }),
           py::arg("n"), py::arg("edges") = std::vector<PyEdge>{})
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("edges", [](const Graph& g) { return one_based(g.edges()); })
      .def("degree", [](const Graph& g, int v) { return g.degree(v - 1); })
      .def("__len__", &Graph::edge_count)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.n()) + ", m=" + std::to_string(g.edge_count()) + ")";
      });

  py::class_<CostModel>(m, "CostModel")
      .def(py::init<std::vector<std::vector<std::int64_t>>>(), py::arg("tables"))
      .def_property_readonly("n", &CostModel::n)
      .def_property_readonly("tables", &CostModel::tables)
      .def("__call__", [](const CostModel& c, int v, int x) { return c(v - 1, x); });

  m.def("from_factor", &from_factor, py::arg("sets"), py::arg("n"));
  m.def("from_interval", &from_interval, py::arg("lower"), py::arg("upper"), py::arg("n"));
  m.def("from_b_matching", &from_b_matching, py::arg("targets"), py::arg("n"));
  m.def(
      "cubic_gadget", [](int special, int n) { return cubic_gadget(special - 1, n); }, py::arg("special"),
      py::arg("n"));

  m.def(
      "evaluate",
      [](const CostModel& model, const Graph& g, const std::vector<PyEdge>& edges) {
        std::vector<Edge> chosen;
        for (auto [a, b] : edges) chosen.push_back(Edge::canonical(a - 1, b - 1));
        return evaluate(model, SubgraphSolution(g, std::move(chosen))).value();
      },
      py::arg("model"), py::arg("graph"), py::arg("edges"));

  py::class_<TreeDecomposition>(m, "TreeDecomposition")
      .def(py::init(&from_python), py::arg("bags"), py::arg("tree_edges"))
      .def_property_readonly("bags", &one_based_bags)
      .def_property_readonly("tree_edges",
                             [](const TreeDecomposition& td) {
                               std::vector<PyEdge> out;
                               for (auto [a, b] : td.tree_edges) out.emplace_back(a + 1, b + 1);
                               return out;
                             })
      .def_property_readonly("width", &TreeDecomposition::width);

  py::class_<NiceDecomposition>(m, "NiceDecomposition")
      .def("__len__", &NiceDecomposition::size)
      .def_property_readonly("width", &NiceDecomposition::width)
      .def_property_readonly("kinds",
                             [](const NiceDecomposition& ntd) {
                               std::vector<std::string> out;
                               for (const auto& nd : ntd.nodes()) out.emplace_back(to_string(nd.kind));
                               return out;
                             })
      .def("as_tree_decomposition", &NiceDecomposition::as_tree_decomposition);

  m.def("min_fill_decompose", [](const Graph& g) { return min_fill_decompose(g).td; }, py::arg("graph"));
  m.def("to_nice", &to_nice, py::arg("td"), py::arg("graph"));
  m.def(
      "validate_td", [](const Graph& g, const TreeDecomposition& td) { return messages(validate_td(g, td)); },
      py::arg("graph"), py::arg("td"));
  m.def(
      "validate_nice",
      [](const Graph& g, const NiceDecomposition& ntd, int max_width) {
        return messages(validate_nice(g, ntd, max_width));
      },
      py::arg("graph"), py::arg("ntd"), py::arg("max_width") = INT_MAX);

  py::class_<RunReport>(m, "SolveReport")
      .def_property_readonly("optimum", [](const RunReport& r) { return to_python(r.optimum); })
      .def_property_readonly("edges", [](const RunReport& r) { return one_based(r.solution); })
      .def_readonly("degrees", &RunReport::degrees)
      .def_readonly("width", &RunReport::width)
      .def_readonly("nice_nodes", &RunReport::nice_nodes)
      .def_property_readonly("states", [](const RunReport& r) { return r.states.total_stored; })
      .def_property_readonly("state_bound", [](const RunReport& r) { return r.states.total_bound; })
      .def("report", [](const RunReport& r) { return format_report(r, false); });

  m.def(
      "solve",
      [](const Graph& g, const CostModel& model, std::optional<TreeDecomposition> td, std::optional<int> max_width) {
        PipelineOptions options;
        options.td = std::move(td);
        if (max_width) options.max_width = *max_width;
        py::gil_scoped_release release;
        return run_pipeline(g, model, options);
      },
      py::arg("graph"), py::arg("model"), py::arg("td") = py::none(), py::arg("max_width") = py::none());

  m.def(
      "brute_force_solve",
      [](const Graph& g, const CostModel& model) {
        auto r = oracle::brute_force_solve(g, model);
        return py::make_tuple(to_python(r.optimum), one_based(r.witness));
      },
      py::arg("graph"), py::arg("model"));
  m.def("cubic_subgraph_exists", &oracle::cubic_subgraph_exists, py::arg("graph"));

  m.def(
      "generate",
      [](const std::string& kind, int n, int k, std::uint64_t seed, double p) {
        return generate(GenerateParams{parse_graph_kind(kind), n, k, seed, p});
      },
      py::arg("kind"), py::arg("n"), py::arg("k") = 1, py::arg("seed") = 1, py::arg("p") = 0.5);

  m.def("parse_graph_file", &parse_graph_file, py::arg("text"));
  m.def("emit_graph_file", &emit_graph_file, py::arg("graph"));
  m.def("parse_costs_file", &parse_costs_file, py::arg("text"), py::arg("n"));
  m.def(
      "parse_td_file",
      [](const std::string& text) {
        auto parsed = parse_td_file(text);
        return py::make_tuple(parsed.n, parsed.td);
      },
      py::arg("text"));
  m.def("emit_td_file", &emit_td_file, py::arg("td"), py::arg("n"));
}
