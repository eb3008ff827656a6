#include <doctest.h>

#include <algorithm>

#include "cyclefree/cycles.hpp"
#include "cyclefree/errors.hpp"
#include "oracles.hpp"

using namespace cyclefree;

TEST_CASE("enumerate_cycles examples") {
  CHECK(enumerate_cycles(complete_graph(4), 2).size() == 3);
  CHECK(enumerate_cycles(complete_bipartite(3, 3), 3).size() == 6);
  CHECK(enumerate_cycles(cycle_graph(4), 2).size() == 1);
  CHECK(enumerate_cycles(complete_bipartite(3, 3), 2).size() == 9);
}

TEST_CASE("enumerate_cycles matches tuple oracle in canonical order") {
  for (uint64_t seed = 0; seed < 12; ++seed)
    for (int ell : {2, 3}) {
      Graph g = gnm(8, 14, Rng(seed, "cyc"));
      CycleSet cs = enumerate_cycles(g, ell);
      auto brute = oracle::cycles_by_tuples(g, 2 * ell);
      REQUIRE(cs.size() == brute.size());
      size_t i = 0;
      for (const auto& c : brute) {
        CHECK(std::equal(c.begin(), c.end(), cs[i].begin()));
        CHECK(is_cycle(g, cs[i], 2 * ell));
        ++i;
      }
      CHECK(count_cycles(g, 2 * ell) == brute.size());
    }
}

TEST_CASE("enumerate_cycles cap flags truncation") {
  CycleSet cs = enumerate_cycles(complete_graph(6), 2, 5);
  CHECK(cs.size() == 5);
  CHECK(cs.truncated());
  CHECK(!enumerate_cycles(complete_graph(4), 2, 5).truncated());
}

TEST_CASE("count_four_cycles agrees with enumeration") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = gnm(12, 30, Rng(seed, "c4"));
    CHECK(count_four_cycles(g) == oracle::cycle_count(g, 4));
  }
}

TEST_CASE("count_cycles_through examples") {
  Graph k4 = complete_graph(4);
  const EdgeId one[] = {k4.edge_id(0, 1)};
  CHECK(count_cycles_through(k4, 2, one) == 2);
  std::vector<EdgeId> disjoint{k4.edge_id(0, 1), k4.edge_id(2, 3)};
  CHECK(count_cycles_through(k4, 2, disjoint) == 2);
  Graph tri = cycle_graph(3);
  const EdgeId e0[] = {0};
  CHECK(count_cycles_through(tri, 2, e0) == 0);
}

TEST_CASE("double counting identity") {
  for (uint64_t seed = 0; seed < 8; ++seed)
    for (int ell : {2, 3}) {
      Graph g = gnm(9, 18, Rng(seed, "dc"));
      uint64_t sum = 0;
      for (EdgeId e = 0; e < g.m(); ++e) {
        const EdgeId s[] = {e};
        sum += count_cycles_through(g, ell, s);
      }
      CHECK(sum == 2 * ell * enumerate_cycles(g, ell).size());
    }
}

TEST_CASE("find_cycle returns a genuine cycle") {
  Graph g = petersen_graph();
  CHECK(!has_cycle(g, 4));
  auto c = find_cycle(g, 5);
  REQUIRE(c);
  CHECK(is_cycle(g, cycle_edge_ids(g, *c), 5));
}

TEST_CASE("enumerate_free_graphs counts") {
  auto count = [](int n, int ell) { return enumerate_free_graphs(n, ell, [](uint64_t) {}); };
  CHECK(count(3, 2) == 8);
  CHECK(count(4, 2) == 54);
  CHECK(count(4, 3) == 64);
  CHECK(count(5, 2) == oracle::free_graph_count(5, 2));
  CHECK(count(5, 3) == oracle::free_graph_count(5, 3));
  CHECK_THROWS_AS(count(8, 2), BudgetExceeded);
}

TEST_CASE("enumerate_free_graphs is canonical and duplicate free") {
  std::vector<uint64_t> seen;
  enumerate_free_graphs(5, 2, [&](uint64_t m) { seen.push_back(m); });
  CHECK(std::is_sorted(seen.begin(), seen.end()));
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("max_free_subgraph examples") {
  CHECK(max_free_subgraph(complete_graph(4), 2, SolveMode::exact).edges == 4);
  CHECK(max_free_subgraph(cycle_graph(6), 3, SolveMode::exact).edges == 5);
  CHECK(max_free_subgraph(petersen_graph(), 2, SolveMode::exact).edges == 15);
}

TEST_CASE("max_free_subgraph exact agrees with subset exhaustion; greedy below") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = gnm(8, 14, Rng(seed, "mf"));
    for (int ell : {2, 3}) {
      FreeSubgraph ex = max_free_subgraph(g, ell, SolveMode::exact);
      FreeSubgraph gr = max_free_subgraph(g, ell, SolveMode::greedy);
      CHECK(ex.exact);
      CHECK(ex.edges == oracle::max_free_by_subsets(g, ell));
      CHECK(gr.edges <= ex.edges);
      CHECK(!has_cycle(g.edge_subgraph(ex.kept), 2 * ell));
      CHECK(!has_cycle(g.edge_subgraph(gr.kept), 2 * ell));
    }
  }
}

TEST_CASE("exact value is monotone under edge addition") {
  Graph g = gnm(8, 10, Rng(9, "mono"));
  int prev = max_free_subgraph(g, 2, SolveMode::exact).edges;
  std::vector<Edge> es = g.edges();
  for (int64_t r = 0; r < num_pairs(8) && es.size() < 18; ++r) {
    Edge e = pair_unrank(8, r);
    if (g.adjacent(e.u, e.v)) continue;
    es.push_back(e);
    int cur = max_free_subgraph(build_graph(8, es), 2, SolveMode::exact).edges;
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("exact solver refuses over budget") {
  ExactBudget tight;
  tight.max_nodes = 10;
  CHECK_THROWS_AS(max_free_subgraph(complete_graph(9), 2, SolveMode::exact, tight), BudgetExceeded);
}

TEST_CASE("greedy keeps seed edges") {
  Graph g = complete_graph(6);
  std::vector<EdgeId> seed{g.edge_id(0, 1), g.edge_id(2, 3)};
  FreeSubgraph r = greedy_free_subgraph(g, 2, degree_order(g), seed);
  for (EdgeId e : seed) CHECK(std::find(r.kept.begin(), r.kept.end(), e) != r.kept.end());
}
