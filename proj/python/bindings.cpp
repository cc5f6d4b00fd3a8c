// Thin pybind11 layer. Rationals cross the boundary as "p/q" strings; the package wraps them in Fraction.
#include "thetasat/bounds.hpp"
#include "thetasat/exact.hpp"
#include "thetasat/graph.hpp"
#include "thetasat/io.hpp"
#include "thetasat/oracle.hpp"
#include "thetasat/theta.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace thetasat;

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

Graph make_graph(int n, const EdgeList& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

EdgeList to_pairs(const std::vector<Edge>& edges) {
  EdgeList out;
  out.reserve(edges.size());
  for (const Edge& e : edges) out.emplace_back(e.u, e.v);
  return out;
}

py::dict exponent_dict(const oracle::ExponentRow& r) {
  py::dict d;
  d["a"] = r.a;
  d["b"] = r.b;
  d["m2"] = to_string(r.m2);
  d["m2_measured"] = r.m2_measured ? py::object(py::str(to_string(*r.m2_measured))) : py::object(py::none());
  d["sparse_exponent"] = to_string(r.sparse_exponent);
  d["upper_exponent"] = to_string(r.upper_exponent);
  d["log_power"] = r.log_power;
  d["dense_p_exponent"] = to_string(r.dense_p_exponent);
  d["dense_n_exponent"] = to_string(r.dense_n_exponent);
  d["middle_exponent"] = to_string(r.middle_exponent);
  return d;
}

}  // namespace

PYBIND11_MODULE(_thetasat, m) {
  m.doc() = "Theta-graph counting, extremal and container tools";

  m.def("theta_edges", [](int a, int b) {
    ThetaPattern t(a, b);
    return py::make_tuple(t.order(), to_pairs({t.graph().edges().begin(), t.graph().edges().end()}));
  }, py::arg("a"), py::arg("b"), "Vertex count and edge list of the theta graph with a paths of length b.");

  m.def("two_density", [](int n, const EdgeList& edges, bool proper_only) {
    return to_string(two_density(make_graph(n, edges), proper_only).value);
  }, py::arg("n"), py::arg("edges"), py::arg("proper_only") = false);

  m.def("count_theta", [](int n, const EdgeList& edges, int a, int b) {
    return oracle::enumerate_theta(make_graph(n, edges), a, b).copies.size();
  }, py::arg("n"), py::arg("edges"), py::arg("a"), py::arg("b"));

  m.def("extremal", [](int n, const EdgeList& edges, int a, int b, std::uint64_t budget) {
    oracle::ExactSolver solver(budget);
    auto r = solver.solve(make_graph(n, edges), a, b);
    py::dict d;
    d["value"] = r.value;
    d["optimal"] = r.optimal;
    d["witness"] = to_pairs(r.witness);
    return d;
  }, py::arg("n"), py::arg("edges"), py::arg("a"), py::arg("b"), py::arg("budget") = 50'000'000ULL,
     "Largest theta-free subgraph of the host.");

  m.def("gnp", [](int n, const std::string& p, std::uint64_t seed) {
    Graph g = sample_gnp(n, parse_rational(p), seed);
    return to_pairs({g.edges().begin(), g.edges().end()});
  }, py::arg("n"), py::arg("p"), py::arg("seed"));

  m.def("exponent_row", [](int a, int b) { return exponent_dict(oracle::exponent_row(a, b)); },
        py::arg("a"), py::arg("b"));

  m.def("bounds_feasible", [](int a, int b, const std::string& delta) {
    return simplified_bound_check(a, b, parse_rational(delta)).feasible();
  }, py::arg("a"), py::arg("b"), py::arg("delta") = "1");

  m.def("phase_experiment", [](int a, int b, int n, const std::vector<std::string>& p_grid, int trials,
                               std::uint64_t seed, int exact_cap) {
    io::PhaseSpec spec;
    spec.a = a;
    spec.b = b;
    spec.n = n;
    spec.trials = trials;
    for (const auto& p : p_grid) spec.p_grid.push_back(parse_rational(p));
    oracle::ExactSolver solver(spec.exact_budget);
    py::list rows;
    for (const auto& r : io::run_phase_experiment(spec, seed, exact_cap, solver)) {
      py::dict d;
      d["n"] = r.n;
      d["p"] = to_string(r.p);
      d["trial"] = r.trial;
      d["edges"] = r.edges;
      d["greedy"] = r.greedy;
      d["exact"] = r.exact ? py::object(py::int_(*r.exact)) : py::object(py::none());
      d["exact_optimal"] = r.exact_optimal;
      d["deletion_bound"] = r.deletion_bound;
      rows.append(d);
    }
    return rows;
  }, py::arg("a"), py::arg("b"), py::arg("n"), py::arg("p_grid"), py::arg("trials"), py::arg("seed"),
     py::arg("exact_cap") = 12);
}
