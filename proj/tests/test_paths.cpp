#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cyclefree/errors.hpp"
#include "cyclefree/paths.hpp"
#include "oracles.hpp"

using namespace cyclefree;

namespace {

Graph star3() { return build_graph(4, {{0, 1}, {0, 2}, {0, 3}}); }

// Root 0, A_1 = {1}, A_2 = {2,3,4}, A_3 = {5,6}; 5 is reached from 1 three ways.
Graph fan() {
  return build_graph(12, {{0, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 5}, {4, 5}, {2, 6}, {7, 8}});
}

}  // namespace

TEST_CASE("branching factor") {
  Graph s = star3();
  PathFamily f(s, LevelFamily{0, 1, {{0}, {1, 2, 3}}}, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(f.branching_factor(0, 0) == 3);
  Graph p = path_graph(4);
  PathFamily one(p, LevelFamily{0, 2, {{0}, {1}, {2}}}, {{0, 1, 2}});
  CHECK(one.branching_factor(1, 1) == 1);
  Graph y = build_graph(4, {{0, 1}, {1, 2}, {1, 3}});
  PathFamily two(y, LevelFamily{0, 2, {{0}, {1}, {2, 3}}}, {{0, 1, 2}, {0, 1, 3}});
  CHECK(two.branching_factor(1, 1) == 2);
  CHECK(two.branching_factor(2, 1) == 0);
  CHECK(two.count(0, 2, 0, 3) == 1);
  CHECK(two.paths_to(3) == 1);
  CHECK(two.valid());
}

TEST_CASE("pair counts equal brute filtering") {
  Graph g = fan();
  PathFamily f(g, LevelFamily{0, 3, {{0}, {1}, {2, 3, 4}, {5, 6}}},
               {{0, 1, 2, 5}, {0, 1, 2, 6}, {0, 1, 3, 5}, {0, 1, 4, 5}});
  CHECK(f.count(1, 3, 1, 5) == 3);
  CHECK(f.count(1, 3, 1, 6) == 1);
  CHECK(f.count(2, 3, 2, 5) == 1);
  const Vertex ends[] = {5, 6};
  CHECK(f.count_to_set(1, 3, 1, ends) == 4);
  auto pc = f.pair_counts(1, 3);
  CHECK(pc[{1, 5}] == 3);
  std::ostringstream out;
  f.dump(out);
  CHECK(out.str().rfind("0 3 4\n", 0) == 0);
}

TEST_CASE("concentrated search on K_n with relaxed params") {
  const int n = 7;
  Graph g = complete_graph(n);
  const double k = edge_density_k(g, 2);
  NbhdParams p = NbhdParams::uniform(2, k, n, 1.0, 1.0 / (k * std::sqrt(n)), 0.5);
  auto a = concentrated_search(g, 3, p);
  REQUIRE(a);
  CHECK(a->t == 2);
  CHECK(a->levels[1] == std::vector<Vertex>{0, 1, 2, 4, 5, 6});
  CHECK(a->levels[2].size() == static_cast<size_t>(n));
  CHECK(is_concentrated(g, *a, p));
}

TEST_CASE("concentrated search fails on a path with paper params") {
  Graph g = path_graph(10);
  NbhdParams p = NbhdParams::paper(2, 100.0, 10);
  CHECK(!concentrated_search(g, 0, p));
  CHECK(!t_of_graph(g, p).t);
}

TEST_CASE("t = 2 concentrated search agrees with subset oracle") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = gnm(10, 22 + seed % 8, Rng(seed, "conc"));
    NbhdParams p = NbhdParams::uniform(2, edge_density_k(g, 2), 10, 1.0, 0.6, 0.5);
    const double thr = forward_threshold(p, 2);
    for (Vertex x = 0; x < g.n(); ++x) {
      auto a = concentrated_at(g, x, 2, p);
      CHECK(a.has_value() == oracle::concentrated_t2(g, x, thr, level_cap(p, 2)));
      if (a) CHECK(is_concentrated(g, *a, p));
    }
  }
}

TEST_CASE("build_balanced on a star") {
  Graph g = star3();
  NbhdParams p = NbhdParams::uniform(2, 2.0, 4, 1.0, 0.75, 0.5);
  PathFamily f = build_balanced(g, LevelFamily{0, 1, {{0}, {1, 2, 3}}}, NoForbidden{}, p);
  CHECK(f.size() == 3);
  CHECK(check_balanced(f, p).ok());
}

TEST_CASE("build_balanced removes the first offending path in lexicographic order") {
  Graph g = fan();
  NbhdParams p = NbhdParams::uniform(3, std::pow(2.0, 2.0 / 3.0), 12, 1.0, 1.0, 0.5);
  CHECK(pair_cap(p, 1, 3) == doctest::Approx(2.0));
  LevelFamily a{0, 3, {{0}, {1}, {2, 3, 4}, {5, 6}}};
  PathFamily f = build_balanced(g, a, NoForbidden{}, p);
  CHECK(f.paths() == std::vector<Path>{{0, 1, 2, 6}, {0, 1, 3, 5}, {0, 1, 4, 5}});
  CHECK(check_balanced(f, p).ok());
}

TEST_CASE("build_balanced avoids a forbidden pair") {
  Graph g = fan();
  NbhdParams p = NbhdParams::uniform(3, 3.0, 12, 1.0, 1.0, 0.5);
  LevelFamily a{0, 3, {{0}, {1}, {2, 3, 4}, {5, 6}}};
  const EdgeId e1 = g.edge_id(1, 2), e2 = g.edge_id(2, 5);
  PathFamily f = build_balanced(g, a, ListForbidden({{std::min(e1, e2), std::max(e1, e2)}}), p);
  REQUIRE(!f.empty());
  for (const Path& path : f.paths()) {
    auto e = f.path_edges(path);
    CHECK(!(std::count(e.begin(), e.end(), e1) && std::count(e.begin(), e.end(), e2)));
  }
  CHECK(f.size() == 3);
}

TEST_CASE("refine_balanced: vacuous thresholds, fixpoint, single-path endpoint") {
  Graph g = fan();
  NbhdParams p = NbhdParams::uniform(3, 3.0, 12, 1.0, 1.0, 0.5);
  LevelFamily a{0, 3, {{0}, {1}, {2, 3, 4}, {5, 6}}};
  PathFamily f = build_balanced(g, a, NoForbidden{}, p);
  NbhdParams zero = NbhdParams::uniform(3, 3.0, 12, 1.0, 1e-12, 0.5);
  PathFamily same = refine_balanced(f, zero);
  CHECK(same.paths() == f.paths());
  CHECK(same.base().levels == f.base().levels);

  // eps^3 k^3 = 2 puts the endpoint threshold at 2: vertex 6 has one path and goes.
  NbhdParams two = NbhdParams::uniform(3, 3.0, 12, 1.0, std::cbrt(2.0) / 3.0, 0.5);
  CHECK(refined_path_threshold(two, 3) == doctest::Approx(2.0));
  PathFamily r = refine_balanced(f, two);
  for (const Path& path : r.paths()) CHECK(path.back() != 6);
  CHECK(!r.base().in_level(3, 6));
  PathFamily again = refine_balanced(r, two);
  CHECK(again.paths() == r.paths());
  CHECK(again.base().levels == r.base().levels);
}

TEST_CASE("paths through vertex and set") {
  Graph g = path_graph(4);
  PathFamily f(g, LevelFamily{0, 3, {{0}, {1}, {2}, {3}}}, {{0, 1, 2, 3}});
  NbhdParams p = NbhdParams::uniform(3, 2.0, 4, 1.0, 1.0, 0.5);
  CHECK(paths_through_vertex_bound(f, 3, 1, p).observed == 1);
  CHECK(paths_through_vertex_bound(f, 2, 1, p).observed == 0);
  const EdgeId s[] = {g.edge_id(1, 2)};
  CHECK(paths_through_set_bound(f, 3, s, p).observed == 1);
  CHECK(paths_through_set_bound(f, 3, s, p).holds());
  CHECK_THROWS_AS(paths_through_vertex_bound(f, 3, 0, p), InputError);
}

TEST_CASE("paper params follow the eps schedule") {
  NbhdParams p = NbhdParams::paper(3, 10, 1000);
  CHECK(p.C == 30);
  CHECK(p.eps_at(3) == doctest::Approx(1.0 / 900));
  CHECK(p.eps_at(2) == doctest::Approx(std::pow(p.eps_at(3), 3)));
  CHECK(p.eps_at(1) == doctest::Approx(std::pow(p.eps_at(2), 2)));
  CHECK(p.delta == doctest::Approx(std::pow(p.eps_at(1), 6)));
}
