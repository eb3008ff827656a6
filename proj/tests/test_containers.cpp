#include <doctest.h>

#include <cmath>
#include <set>

#include "cyclefree/containers.hpp"
#include "cyclefree/errors.hpp"
#include "oracles.hpp"

using namespace cyclefree;

namespace {

std::vector<char> mask_of(uint64_t bitsv, int n) {
  std::vector<char> m(n);
  for (int i = 0; i < n; ++i) m[i] = bitsv >> i & 1;
  return m;
}

bool covered(const ContainerRun& run, const std::vector<char>& ind) {
  for (const auto& c : run.containers) {
    std::vector<char> in(ind.size(), 0);
    for (int v : c) in[v] = 1;
    bool ok = true;
    for (size_t v = 0; v < ind.size(); ++v) ok = ok && (!ind[v] || in[v]);
    if (ok) return true;
  }
  return false;
}

UniformHypergraph random_hypergraph(int r, int n, int m, uint64_t seed) {
  Rng rng(seed, "hyper");
  std::set<std::vector<int>> es;
  while (static_cast<int>(es.size()) < m) {
    std::set<int> e;
    while (static_cast<int>(e.size()) < r) e.insert(static_cast<int>(rng.below(n)));
    es.insert({e.begin(), e.end()});
  }
  return UniformHypergraph(r, n, {es.begin(), es.end()});
}

}  // namespace

TEST_CASE("uniform hypergraph validation") {
  CHECK_THROWS_AS(UniformHypergraph(3, 4, {{0, 1}}), InputError);
  CHECK_THROWS_AS(UniformHypergraph(2, 4, {{0, 4}}), InputError);
  CHECK_THROWS_AS(UniformHypergraph(2, 4, {{0, 1}, {1, 0}}), InputError);
  CHECK_THROWS_AS(UniformHypergraph(2, 4, {{1, 1}}), InputError);
  UniformHypergraph h(2, 4, {{1, 0}, {2, 3}});
  CHECK(h.edges()[0] == std::vector<int>{0, 1});
  CHECK(h.independent(mask_of(0b0101, 4)));
  CHECK(!h.independent(mask_of(0b0011, 4)));
}

TEST_CASE("codegree examples") {
  UniformHypergraph one(4, 4, {{0, 1, 2, 3}});
  CHECK(codegree(one, 0.5) == doctest::Approx(56));
  UniformHypergraph two(4, 8, {{0, 1, 2, 3}, {4, 5, 6, 7}});
  CHECK(codegree(two, 0.5) == doctest::Approx(56));
  CHECK(codegree(two, 0.3) == doctest::Approx(codegree(one, 0.3)));
  CHECK_THROWS_AS(codegree(UniformHypergraph(4, 4, {}), 0.5), InputError);
  CHECK_THROWS_AS(codegree(one, 0.0), InputError);
}

TEST_CASE("codegree strictly decreases in tau") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    UniformHypergraph h = random_hypergraph(4, 10, 25, seed);
    double prev = codegree(h, 0.05);
    for (double tau : {0.1, 0.2, 0.5, 1.0, 3.0}) {
      double cur = codegree(h, tau);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("tau_for_cycles") {
  TauChoice c = tau_for_cycles(2, 100, std::pow(2.0, 30), 0.1);
  CHECK(c.tau == doctest::Approx(3.125));
  CHECK(!c.feasible);
  // boundary: k^{1/(l-1)} = n^{(l-1)/(l(2l-1))} with l = 2 means k = n^{1/6}
  const double n = 1e12, k = std::pow(n, 1.0 / 6);
  CHECK(1 / tau_for_cycles(2, k * 0.9, n, 0.5).tau ==
        doctest::Approx(std::pow(0.5, 4) * k * 0.9 * k * 0.9));
  CHECK(1 / tau_for_cycles(2, k * 1.1, n, 0.5).tau ==
        doctest::Approx(std::pow(0.5, 4) * k * 1.1 * std::pow(n, 1.0 / 6)));
  double prev = tau_for_cycles(3, 2, 1e6, 0.5).tau;
  for (double kk : {4.0, 8.0, 16.0, 32.0}) {
    double cur = tau_for_cycles(3, kk, 1e6, 0.5).tau;
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(tau_for_cycles(2, 1e6, 1e60, 0.5).feasible);
}

TEST_CASE("codegree chain audit holds at paper-feasible points") {
  for (int ell : {2, 3})
    for (double delta : {0.05, 0.02})
      for (double k : {1e8, 1e12}) {
        const double n = std::pow(k, ell * (2.0 * ell - 1) / ((ell - 1.0) * (ell - 1.0))) * 1e3;
        CodegreeAudit a = codegree_chain_audit(ell, k, n, delta);
        CHECK(a.holds());
      }
}

TEST_CASE("single hyperedge: containers are V minus one vertex") {
  const int n = 7;
  UniformHypergraph h(3, n, {{1, 3, 5}});
  ContainerRun run = build_containers(h, 0.5, 0.5, 3);
  std::set<std::vector<int>> got(run.containers.begin(), run.containers.end());
  std::set<std::vector<int>> want;
  for (int v : {1, 3, 5}) {
    std::vector<int> c;
    for (int u = 0; u < n; ++u)
      if (u != v) c.push_back(u);
    want.insert(c);
  }
  CHECK(got == want);
  for (size_t i = 0; i < run.containers.size(); ++i) CHECK(run.inside[i] == 0);
  for (uint64_t s = 0; s < (1u << n); ++s) {
    auto m = mask_of(s, n);
    if (h.independent(m)) CHECK(covered(run, m));
  }
}

TEST_CASE("container coverage is exhaustive on random hypergraphs") {
  for (uint64_t seed = 0; seed < 15; ++seed) {
    const int n = 10 + seed % 3;
    UniformHypergraph h = random_hypergraph(3 + seed % 2, n, 12, seed);
    ContainerRun run = build_containers(h, 0.3, 0.25);
    Scythe sc(h, 0.25, run.budget);
    for (uint64_t s = 0; s < (uint64_t{1} << n); ++s) {
      auto m = mask_of(s, n);
      if (!h.independent(m)) continue;
      CHECK(covered(run, m));
      ScytheRun q = sc.query(m);
      for (int v : q.fingerprint) CHECK(m[v]);
      std::vector<char> in(n, 0);
      for (int v : q.container) in[v] = 1;
      for (int v = 0; v < n; ++v) CHECK((!m[v] || in[v]));
      ScytheRun rep = sc.replay(q.fingerprint);
      CHECK(rep.container == q.container);
    }
  }
}

TEST_CASE("K4 cycle hypergraph: every C4-free subgraph lies in a container") {
  Graph k4 = complete_graph(4);
  CycleSet cs = enumerate_cycles(k4, 2);
  std::vector<std::vector<int>> es;
  for (size_t i = 0; i < cs.size(); ++i) es.emplace_back(cs[i].begin(), cs[i].end());
  UniformHypergraph h = cycle_hypergraph(k4, es, 4);
  CHECK(h.n() == 6);
  ContainerRun run = build_containers(h, 0.5, 0.25);
  int indep = 0;
  for (uint64_t s = 0; s < 64; ++s) {
    auto m = mask_of(s, 6);
    if (!h.independent(m)) continue;
    ++indep;
    CHECK(covered(run, m));
  }
  CHECK(indep == 54);

  GraphStep step = graph_container_step(k4, StepParams{});
  for (uint64_t s : oracle::free_edge_subsets(k4, 2)) {
    Graph sub = k4.edge_subgraph([&] {
      std::vector<EdgeId> ids;
      for (int e = 0; e < 6; ++e)
        if (s >> e & 1) ids.push_back(e);
      return ids;
    }());
    bool in_some = false;
    for (const Graph& c : step.containers) in_some = in_some || c.contains(sub);
    CHECK(in_some);
  }
}

TEST_CASE("graph step on a cycle-free graph returns the graph itself") {
  Graph g = petersen_graph();
  GraphStep step = graph_container_step(g, StepParams{});
  CHECK(step.no_supersaturation);
  REQUIRE(step.containers.size() == 1);
  CHECK(step.containers[0] == g);
}

TEST_CASE("graph step containers are subgraphs on a 20-vertex instance") {
  Graph g = gnm(20, 60, Rng(2, "step"));
  StepParams p;
  p.delta = 0.5;
  p.budget = 3;
  GraphStep step = graph_container_step(g, p);
  CHECK(step.hyperedges > 0);
  bool strict = true, some_strict = false;
  for (const Graph& c : step.containers) {
    CHECK(g.contains(c));
    strict &= c.m() < g.m();
    some_strict |= c.m() < g.m();
  }
  CHECK(step.all_strict == strict);
  CHECK(some_strict);
}

TEST_CASE("iterate_containers trivial root") {
  const int n = 6;
  const double k = 15.0 / std::pow(n, 1.5);
  ContainerTree t = iterate_containers(n, 2, k, IterParams{});
  CHECK(t.nodes.size() == 1);
  CHECK(t.leaves == std::vector<int>{0});
  CHECK(t.nodes[0].g == complete_graph(n));
}

TEST_CASE("iterate_containers: children nest, leaves obey the edge bound or are free") {
  const int n = 5;
  IterParams ip;
  ip.step.delta = 0.5;
  ContainerTree t = iterate_containers(n, 2, 1.0, ip);
  const double bound = std::pow(n, 1.5);
  for (const TreeNode& node : t.nodes) {
    if (node.parent >= 0) CHECK(t.nodes[node.parent].g.contains(node.g));
    if (node.leaf) CHECK((node.g.m() <= bound + 1e-9 || !has_cycle(node.g, 4)));
  }
  CHECK(t.max_leaf_edges <= static_cast<size_t>(bound) + 2);
}

TEST_CASE("encode_coloured: empty graph, sandwich and replay") {
  const int n = 5;
  EncodeParams p;
  p.step.delta = 0.5;
  ColouredEncoding e0 = encode_coloured(Graph(n), p);
  for (const Graph& t : e0.fingerprints) CHECK(t.m() == 0);
  CHECK(e0.sandwich);
  ColouredEncoding e1 = encode_coloured(Graph(n), p);
  CHECK(e1.final == e0.final);

  Graph c5 = cycle_graph(5);
  ColouredEncoding e = encode_coloured(c5, p);
  CHECK(e.sandwich);
  CHECK(replay_encoding(n, e.fingerprints, p) == e.final);
  std::vector<char> seen(num_pairs(n), 0);
  for (const Graph& t : e.fingerprints)
    for (const Edge& x : t.edges()) {
      CHECK(c5.adjacent(x.u, x.v));
      seen[pair_rank(n, x.u, x.v)] = 1;
    }
  for (const Edge& x : c5.edges()) CHECK((seen[pair_rank(n, x.u, x.v)] || e.final.adjacent(x.u, x.v)));
  CHECK_THROWS_AS(encode_coloured(complete_graph(4), p), InputError);
}
