#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cyclefree/errors.hpp"
#include "cyclefree/supersat.hpp"
#include "oracles.hpp"

using namespace cyclefree;

namespace {

SupersatParams capped(const Graph& g, int ell, std::vector<double> caps) {
  SupersatParams p = SupersatParams::generous(ell, std::max(edge_density_k(g, ell), 1e-9), g.n());
  p.cap_override = std::move(caps);
  return p;
}

std::vector<EdgeId> cycle_ids(const Graph& g, std::vector<Vertex> c) {
  auto ids = cycle_edge_ids(g, c);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

TEST_CASE("delta_cap examples") {
  NbhdParams p = NbhdParams::uniform(2, 4, 16, 1, 1, 0.5);
  CHECK(delta_cap(1, p) == doctest::Approx(64 * 4));
  CHECK(delta_cap(2, p) == doctest::Approx(32));
  NbhdParams q = p;
  q.delta = 0.01;
  CHECK(delta_cap(1, q) == doctest::Approx(delta_cap(1, p)));
  CHECK_THROWS_AS(delta_cap(0, p), InputError);
  CHECK_THROWS_AS(delta_cap(4, p), InputError);
}

TEST_CASE("delta_cap is at least one when k <= n^{(l-1)/l}") {
  for (int ell : {2, 3, 4})
    for (double n : {16.0, 100.0, 1e4})
      for (double frac : {0.0, 0.3, 0.7, 1.0})
        for (double delta : {1.0, 0.5, 0.01}) {
          const double k = std::pow(std::pow(n, (ell - 1.0) / ell), frac);
          NbhdParams p = NbhdParams::uniform(ell, k, n, 1, 1, delta);
          for (int j = 1; j <= 2 * ell - 1; ++j) CHECK(delta_cap(j, p) >= 1 - 1e-9);
        }
}

TEST_CASE("rescaled cap bounds delta cap for delta <= 1") {
  for (double delta : {1.0, 0.5, 0.1}) {
    NbhdParams p = NbhdParams::uniform(3, 5, 200, 1, 1, delta);
    for (int j = 1; j <= 5; ++j) CHECK(delta_cap(j, p) <= rescaled_cap(j, p) * (1 + 1e-12));
  }
}

TEST_CASE("add_cycle bookkeeping and errors") {
  Graph k4 = complete_graph(4);
  CycleHypergraph h(k4, SupersatParams::generous(2, 1, 4));
  auto c = cycle_ids(k4, {0, 1, 2, 3});
  h.add_cycle(c);
  for (EdgeId e : c) {
    const EdgeId s[] = {e};
    CHECK(h.degree(s) == 1);
  }
  CHECK_THROWS_AS(h.add_cycle(c), InputError);
  CHECK_THROWS_AS(h.add_cycle(std::vector<EdgeId>{0, 1, 2, 5}), InputError);
  CHECK(h.size() == 1);
  CHECK(h.audit().ok());
}

TEST_CASE("single-edge cap refuses a second cycle through the shared edge") {
  Graph k4 = complete_graph(4);
  CycleHypergraph h(k4, capped(k4, 2, {1, 1e18, 1e18}));
  auto a = cycle_ids(k4, {0, 1, 2, 3});
  auto b = cycle_ids(k4, {0, 1, 3, 2});
  h.add_cycle(a);
  try {
    h.add_cycle(b);
    FAIL("second cycle accepted");
  } catch (const GoodnessViolation& v) {
    std::vector<EdgeId> shared;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
    REQUIRE(v.sigma().size() == 1);
    CHECK(std::count(shared.begin(), shared.end(), v.sigma()[0]) == 1);
  }
  CHECK(h.size() == 1);
}

TEST_CASE("links") {
  Graph k4 = complete_graph(4);
  CycleHypergraph empty(k4, capped(k4, 2, {5, 5, 5}));
  const EdgeId s0[] = {0};
  for (int j = 1; j <= 3; ++j) CHECK(empty.link(s0, j).empty());

  ListForbidden f({{1, 4}});
  const EdgeId s1[] = {1};
  CHECK(f.in_link1(s1, 4));
  CHECK(!f.in_link1(s1, 2));

  CycleHypergraph h(k4, capped(k4, 2, {5, 1, 5}));
  auto c = cycle_ids(k4, {0, 1, 2, 3});
  h.add_cycle(c);
  const EdgeId s[] = {c[0]};
  auto l1 = h.link(s, 1);
  CHECK(l1 == std::vector<std::vector<EdgeId>>{{c[1]}, {c[2]}, {c[3]}});
  CHECK(h.link(s, 2).empty());
  CHECK(h.in_link1(s, c[2]));
  CycleHypergraph zero(k4, capped(k4, 2, {5, 0.5, 5}));
  CHECK_THROWS_AS(zero.link(s, 1), InputError);
}

TEST_CASE("find_addable_cycle exhaustive") {
  Graph k4 = complete_graph(4);
  CycleHypergraph h(k4, SupersatParams::generous(2, 1, 4));
  CycleSet cs = enumerate_cycles(k4, 2);
  auto first = find_addable_cycle_exhaustive(h, cs);
  REQUIRE(first);
  CHECK(std::equal(first->begin(), first->end(), cs[0].begin()));
  for (size_t i = 0; i < cs.size(); ++i) h.add_cycle(cs[i]);
  CHECK(!find_addable_cycle_exhaustive(h, cs));
  CHECK(!find_addable_cycle(h, Strategy::exhaustive).cycle);
}

TEST_CASE("paper strategy emits a valid cycle on a dense 16-vertex instance") {
  Graph g = gnm(16, 80, Rng(11, "paper"));
  SupersatParams p = SupersatParams::from(NbhdParams::for_graph(g, 2, 2.0, 0.5, 0.5));
  CycleHypergraph h(g, p);
  for (int round = 0; round < 5; ++round) {
    FindResult r = find_addable_cycle_paper(h);
    REQUIRE(r.cycle);
    CHECK(is_cycle(g, *r.cycle, 4));
    CHECK(!h.contains(*r.cycle));
    CHECK(h.addable(*r.cycle));
    h.add_cycle(*r.cycle);
  }
  CHECK(h.audit().ok());
}

TEST_CASE("build_good_hypergraph examples") {
  Graph k33 = complete_bipartite(3, 3);
  auto r0 = build_good_hypergraph(k33, SupersatParams::generous(2, 1, 6), 0, Strategy::exhaustive);
  CHECK(r0.h.size() == 0);
  CHECK(r0.report.target_met);
  auto r9 = build_good_hypergraph(k33, SupersatParams::generous(2, 1, 6), 9, Strategy::exhaustive);
  CHECK(r9.h.size() == 9);
  CHECK(r9.h.size() == oracle::cycle_count(k33, 4));

  const int n = 40;
  Graph g = gnm(n, static_cast<int64_t>(std::ceil(2 * std::pow(n, 1.5))), Rng(1, "build"));
  SupersatParams p = SupersatParams::from(NbhdParams::for_graph(g, 2, 1.0, 1.0, 0.5));
  auto r = build_good_hypergraph(g, p, 1e18, Strategy::exhaustive);
  CHECK(r.h.size() > 0);
  DegreeAudit a = r.h.audit();
  CHECK(a.ok());
  for (double ratio : a.max_ratio) CHECK(ratio <= 1.0);
  CHECK(audit_hyperedges(g, p, r.h.hyperedges()).ok());
}

TEST_CASE("dump and read round trip; audit catches a non-cycle") {
  Graph k4 = complete_graph(4);
  auto r = build_good_hypergraph(k4, SupersatParams::generous(2, 1, 4), 9, Strategy::exhaustive);
  std::stringstream s;
  r.h.dump(s);
  CHECK(s.str().rfind("4 2 3\n", 0) == 0);
  int n = 0, ell = 0;
  auto edges = read_hyperedges(s, &n, &ell);
  CHECK(edges == r.h.hyperedges());
  edges.push_back({0, 1, 2, 5});
  CHECK(!audit_hyperedges(k4, SupersatParams::generous(2, 1, 4), edges).ok());
}

TEST_CASE("claim bounds") {
  NbhdParams p = NbhdParams::uniform(2, 10, 100, 1, 1, 0.01);
  CHECK(cycle_family_target(p) == doctest::Approx(80000));
  NbhdParams q = NbhdParams::uniform(4, 8, 1e6, 2, 0.3, 0.01);
  MjBranches b = m_of_j_branches(q, 2, 2);
  CHECK(m_of_j(q, 2, 2) == doctest::Approx(b.small_j));
  CHECK(m_of_j(q, 2, 3) == doctest::Approx(m_of_j_branches(q, 2, 3).large_j));
  CHECK_THROWS_AS(m_of_j(q, 2, 6), InputError);
  for (double k : {4.0, 16.0, 64.0})
    for (int t = 2; t <= 4; ++t)
      for (int j = 1; j < 8 - t; ++j) {
        NbhdParams r = NbhdParams::uniform(4, k, 1e8, 2, 0.3, 1e-6);
        Inequality in = mj_inequality(r, t, j);
        const double kl = 4.0 / 3.0;
        const double rhs = std::pow(0.3 * k * std::pow(1e8, 0.25), 3) * std::pow(0.3 * std::pow(k, kl), 4 - t);
        CHECK(in.rhs == doctest::Approx(rhs));
        CHECK(in.lhs == doctest::Approx(1e-6 * m_of_j(r, t, j) * std::pow(k, j * kl)));
      }
}

TEST_CASE("saturation log respects event order") {
  Graph g = gnm(14, 45, Rng(4, "sat"));
  SupersatParams p = capped(g, 2, {3, 2, 1});
  auto r = build_good_hypergraph(g, p, 1e18, Strategy::exhaustive);
  CHECK(r.h.audit().events_ok);
  for (const SaturationEvent& ev : r.h.saturation_log())
    for (size_t i = ev.after_edges; i < r.h.size(); ++i) {
      const auto& c = r.h.hyperedges()[i];
      CHECK(!std::includes(c.begin(), c.end(), ev.sigma.begin(), ev.sigma.end()));
    }
}
