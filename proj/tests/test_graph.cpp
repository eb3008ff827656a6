#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cyclefree/errors.hpp"
#include "cyclefree/graph.hpp"

using namespace cyclefree;

TEST_CASE("build_graph assigns lexicographic edge ids") {
  Graph g = build_graph(3, {{1, 2}, {0, 1}, {0, 2}});
  REQUIRE(g.m() == 3);
  CHECK(g.edge(0) == Edge{0, 1});
  CHECK(g.edge(1) == Edge{0, 2});
  CHECK(g.edge(2) == Edge{1, 2});
  CHECK(g.edge_id(2, 1) == 2);
  CHECK(g.consistent());
}

TEST_CASE("build_graph rejects bad pairs") {
  CHECK_THROWS_AS(build_graph(2, {{0, 0}}), InputError);
  CHECK_THROWS_AS(build_graph(2, {{0, 2}}), InputError);
  CHECK_THROWS_AS(build_graph(3, {{0, 1}, {1, 0}}), InputError);
  CHECK_THROWS_WITH(build_graph(2, {{0, 0}}), doctest::Contains("(0,0)"));
}

TEST_CASE("generators") {
  CHECK(complete_graph(4).m() == 6);
  Graph b = complete_bipartite(3, 3);
  CHECK(b.m() == 9);
  for (const Edge& e : b.edges()) CHECK((e.u < 3 && e.v >= 3));
  CHECK(cycle_graph(5).m() == 5);
  CHECK(petersen_graph().m() == 15);
  CHECK(girth(petersen_graph()) == 5);
  CHECK(girth(path_graph(5)) == 0);
  CHECK(gnp(10, 0.0, Rng(1, "g")).m() == 0);
  CHECK(gnp(10, 1.0, Rng(1, "g")) == complete_graph(10));
  CHECK(gnm(8, 11, Rng(3, "m")).m() == 11);
  CHECK_THROWS_AS(gnm(4, 7, Rng(3, "m")), InputError);
}

TEST_CASE("gnp is reproducible and nested across p") {
  Rng r(42, "pairs");
  CHECK(gnp(30, 0.3, r) == gnp(30, 0.3, r));
  CHECK(gnp(30, 0.5, r).contains(gnp(30, 0.3, r)));
  CHECK(!(gnp(30, 0.3, r) == gnp(30, 0.3, Rng(43, "pairs"))));
}

TEST_CASE("gnp edge count mean within three standard errors") {
  const int n = 12, trials = 1000;
  const double p = 0.3, pairs = 66;
  double sum = 0;
  for (int i = 0; i < trials; ++i) sum += gnp(n, p, Rng(7, "mean").split(std::to_string(i))).m();
  const double se = std::sqrt(pairs * p * (1 - p) / trials);
  CHECK(std::abs(sum / trials - p * pairs) < 3 * se);
}

TEST_CASE("rng streams depend only on seed, label and index") {
  Rng a(5, "x"), b(5, "x"), c(5, "y");
  CHECK(a.at(17) == b.at(17));
  CHECK(a.at(17) != c.at(17));
  CHECK(a.next() == b.at(0));
  for (int i = 0; i < 100; ++i) {
    double u = a.uniform_at(i);
    CHECK((u >= 0 && u < 1));
    CHECK(a.below(7) < 7);
  }
}

TEST_CASE("min_degree_prune") {
  CHECK(min_degree_prune(path_graph(3), 2).graph.n() == 0);
  CHECK(min_degree_prune(complete_graph(4), 3).graph == complete_graph(4));
  std::vector<Edge> es(complete_graph(4).edges());
  es.push_back({3, 4});
  Pruned p = min_degree_prune(build_graph(5, es), 2);
  CHECK(p.graph == complete_graph(4));
  CHECK(p.original == std::vector<Vertex>{0, 1, 2, 3});
  Pruned twice = min_degree_prune(p.graph, 2);
  CHECK(twice.graph == p.graph);
}

TEST_CASE("pair rank round trip and masks") {
  for (int n : {2, 5, 9}) {
    int64_t r = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v, ++r) {
        CHECK(pair_rank(n, u, v) == r);
        CHECK(pair_unrank(n, r) == Edge{u, v});
      }
    CHECK(num_pairs(n) == r);
  }
  Graph g = build_graph(5, {{0, 1}, {2, 4}});
  CHECK(graph_from_mask(5, pair_mask(g)) == g);
}

TEST_CASE("edge list round trip and reader errors") {
  Graph g = petersen_graph();
  std::stringstream s(to_edge_list(g));
  CHECK(read_edge_list(s) == g);
  CHECK(graph_digest(g) == graph_digest(petersen_graph()));
  auto bad = [](const char* text) {
    std::stringstream in(text);
    return read_edge_list(in);
  };
  CHECK_THROWS_AS(bad("3 1\n1 0\n"), InputError);
  CHECK_THROWS_AS(bad("3 2\n1 2\n0 1\n"), InputError);
  CHECK_THROWS_AS(bad("3 2\n0 1\n"), InputError);
  CHECK_THROWS_AS(bad("3 1\n0 3\n"), InputError);
  CHECK_THROWS_AS(bad("3 1\n0 1\n5"), InputError);
}
