#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cyclefree/constructions.hpp"
#include "cyclefree/containers.hpp"
#include "cyclefree/cycles.hpp"
#include "cyclefree/errors.hpp"
#include "cyclefree/graph.hpp"
#include "cyclefree/kst.hpp"
#include "cyclefree/random_turan.hpp"
#include "cyclefree/supersat.hpp"

namespace py = pybind11;
using namespace cyclefree;

namespace {

using Pairs = std::vector<std::pair<int, int>>;

Graph make_graph(int n, const Pairs& pairs) {
  std::vector<Edge> es;
  es.reserve(pairs.size());
  for (auto [u, v] : pairs) es.push_back({u, v});
  return Graph::from_edges(n, es);
}

Pairs edge_pairs(const Graph& g) {
  Pairs out;
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

StepParams step_params(int ell, double delta, std::optional<double> tau,
                       std::optional<size_t> budget) {
  StepParams p;
  p.ell = ell;
  p.delta = delta;
  p.tau = tau;
  p.budget = budget;
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Even-cycle supersaturation, graph containers and random Turan experiments";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_AssertionError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("m", &Graph::m)
      .def("edges", &edge_pairs)
      .def("adjacent", &Graph::adjacent)
      .def("degree", &Graph::degree)
      .def("contains", &Graph::contains)
      .def("digest", &graph_digest)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.n()) + ", m=" + std::to_string(g.m()) + ")";
      });

  m.def("complete_graph", &complete_graph);
  m.def("complete_bipartite", &complete_bipartite);
  m.def("cycle_graph", &cycle_graph);
  m.def("petersen_graph", &petersen_graph);
  m.def("gnp", [](int n, double p, uint64_t seed) { return gnp(n, p, Rng(seed, "gnp")); },
        py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("gnm", [](int n, int64_t edges, uint64_t seed) { return gnm(n, edges, Rng(seed, "gnm")); },
        py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("load_edge_list", &load_edge_list);
  m.def("girth", &girth);

  m.def("enumerate_cycles", [](const Graph& g, int ell) {
    std::vector<std::vector<int>> out;
    for_each_cycle(g, 2 * ell, [&](std::span<const Vertex> c) {
      out.emplace_back(c.begin(), c.end());
      return true;
    });
    return out;
  }, py::arg("g"), py::arg("ell"));
  m.def("count_cycles", &count_cycles, py::arg("g"), py::arg("length"));
  m.def("count_four_cycles", &count_four_cycles);
  m.def("free_count", [](int n, int ell) {
    return enumerate_free_graphs(n, ell, [](uint64_t) {}, 8);
  }, py::arg("n"), py::arg("ell"));
  m.def("max_free_subgraph", [](const Graph& g, int ell, bool exact) {
    FreeSubgraph r = max_free_subgraph(g, ell, exact ? SolveMode::exact : SolveMode::greedy);
    return py::dict(py::arg("edges") = r.edges, py::arg("kept") = r.kept, py::arg("exact") = r.exact);
  }, py::arg("g"), py::arg("ell"), py::arg("exact") = true);

  m.def("build_supersat", [](const Graph& g, int ell, bool generous, double target) {
    const double k = std::max(edge_density_k(g, ell), 1e-12);
    SupersatParams params = generous ? SupersatParams::generous(ell, k, g.n())
                                     : SupersatParams::from(NbhdParams::paper(ell, k, g.n()));
    BuildResult b = build_good_hypergraph(g, params, target, Strategy::exhaustive);
    return py::dict(py::arg("hyperedges") = b.h.hyperedges(), py::arg("audit_ok") = b.h.audit().ok(),
                    py::arg("target_met") = b.report.target_met);
  }, py::arg("g"), py::arg("ell"), py::arg("generous") = true, py::arg("target") = 1e18);

  m.def("codegree", [](int r, int n, const std::vector<std::vector<int>>& edges, double tau) {
    return codegree(UniformHypergraph(r, n, edges), tau);
  }, py::arg("r"), py::arg("n"), py::arg("edges"), py::arg("tau"));

  m.def("container_step", [](const Graph& g, int ell, double delta, std::optional<double> tau,
                             std::optional<size_t> budget) {
    GraphStep s = graph_container_step(g, step_params(ell, delta, tau, budget));
    return py::dict(py::arg("containers") = s.containers, py::arg("hyperedges") = s.hyperedges,
                    py::arg("all_strict") = s.all_strict, py::arg("budget_ok") = s.run.budget_ok);
  }, py::arg("g"), py::arg("ell") = 2, py::arg("delta") = 0.25, py::arg("tau") = py::none(),
     py::arg("budget") = py::none());

  m.def("iterate_containers", [](int n, int ell, double k, double delta, double schedule_eps) {
    IterParams p;
    p.step = step_params(ell, delta, std::nullopt, std::nullopt);
    p.schedule_eps = schedule_eps;
    ContainerTree t = iterate_containers(n, ell, k, p);
    std::vector<Graph> leaves;
    for (int id : t.leaves) leaves.push_back(t.nodes[id].g);
    return py::dict(py::arg("nodes") = t.nodes.size(), py::arg("leaves") = leaves,
                    py::arg("bound_violations") = t.bound_violations.size());
  }, py::arg("n"), py::arg("ell") = 2, py::arg("k") = 1.0, py::arg("delta") = 0.25,
     py::arg("schedule_eps") = 0.5);

  m.def("encode", [](const Graph& g, int ell, double k, double delta) {
    EncodeParams p;
    p.step = step_params(ell, delta, std::nullopt, std::nullopt);
    p.k = k;
    ColouredEncoding e = encode_coloured(g, p);
    const bool replay = replay_encoding(g.n(), e.fingerprints, p) == e.final;
    return py::dict(py::arg("fingerprints") = e.fingerprints, py::arg("final") = e.final,
                    py::arg("sandwich") = e.sandwich, py::arg("replay_ok") = replay);
  }, py::arg("g"), py::arg("ell") = 2, py::arg("k") = 1.0, py::arg("delta") = 0.25);

  m.def("count_matchings", &count_matchings);
  m.def("blow_up", [](const Graph& base, int b, const std::vector<uint64_t>& choice) {
    return blow_up(base, b, choice);
  }, py::arg("base"), py::arg("b"), py::arg("choice"));
  m.def("family_free", [](const Graph& g, const std::vector<int>& lengths) {
    return verify_family_free(g, lengths).free;
  });

  m.def("sweep", [](int ell, const std::vector<int>& ns, const std::vector<double>& ps, int trials,
                    uint64_t seed, bool exact) {
    SweepPlan plan;
    plan.ell = ell;
    plan.ns = ns;
    plan.ps = ps;
    plan.trials = trials;
    plan.seed = seed;
    plan.mode = exact ? SolveMode::exact : SolveMode::greedy;
    SweepResult r = run_sweep(plan);
    py::list rows;
    for (const SweepRow& row : r.rows)
      rows.append(py::dict(py::arg("n") = row.n, py::arg("p") = row.p, py::arg("trial") = row.trial,
                           py::arg("best") = row.best(), py::arg("witness") = row.witness,
                           py::arg("heuristic") = row.heuristic_only()));
    return py::dict(py::arg("rows") = rows, py::arg("monotone") = r.monotone,
                    py::arg("witness_ok") = r.witness_ok);
  }, py::arg("ell"), py::arg("ns"), py::arg("ps"), py::arg("trials"), py::arg("seed"),
     py::arg("exact") = true);

  m.def("enumerate_kst", [](const Graph& g, int s, int t) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    for (const VertexPair& p : enumerate_kst(g, s, t)) out.emplace_back(p.S, p.T);
    return out;
  }, py::arg("g"), py::arg("s"), py::arg("t"));
  m.def("build_kst", [](const Graph& g, int s, int t, bool generous, double delta) {
    KstParams params = generous ? KstParams::generous(g, s, t) : KstParams::for_graph(g, s, t, delta);
    KstBuild b = build_good_kst(g, params, 1e18, KstStrategy::exhaustive);
    return py::dict(py::arg("pairs") = b.report.pairs, py::arg("audit_ok") = b.report.audit.ok());
  }, py::arg("g"), py::arg("s"), py::arg("t"), py::arg("generous") = true, py::arg("delta") = 1.0);
}
