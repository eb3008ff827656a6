#include <doctest.h>

#include <cmath>

#include "cyclefree/constructions.hpp"
#include "cyclefree/cycles.hpp"
#include "cyclefree/errors.hpp"
#include "oracles.hpp"

using namespace cyclefree;

TEST_CASE("count_matchings") {
  CHECK(count_matchings(3, 3) == 34);
  CHECK(count_matchings(1, 1) == 2);
  CHECK(count_matchings(2, 2) == 7);
  CHECK(count_matchings(0, 4) == 1);
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b) {
      CHECK(count_matchings(a, b) == oracle::matchings(a, b));
      if (a * b <= 25) CHECK(count_matchings_brute(a, b) == count_matchings(a, b));
    }
}

TEST_CASE("canonical matchings order") {
  auto ms = canonical_matchings(3, 3);
  REQUIRE(ms.size() == 34);
  CHECK(ms[0].empty());
  CHECK(ms[1] == Matching{{0, 0}});
  CHECK(ms.back().size() == 3);
  for (size_t i = 1; i < ms.size(); ++i)
    CHECK((ms[i - 1].size() < ms[i].size() || (ms[i - 1].size() == ms[i].size() && ms[i - 1] < ms[i])));
}

TEST_CASE("blow_up examples") {
  Graph edge = build_graph(2, {{0, 1}});
  Graph empty = blow_up(edge, 3, {0});
  CHECK(empty.n() == 6);
  CHECK(empty.m() == 0);
  Graph perfect = blow_up(edge, 3, {33});
  CHECK(perfect.m() == 3);
  for (int v = 0; v < 6; ++v) CHECK(perfect.degree(v) == 1);
  CHECK_THROWS_AS(blow_up(edge, 3, {34}), InputError);

  Graph c5 = cycle_graph(5);
  Graph b = blow_up(c5, 3, std::vector<uint64_t>(5, 33));
  CHECK(b.n() == 15);
  CHECK(b.m() == 15);
  for (int v = 0; v < 15; ++v) CHECK(b.degree(v) == 2);
  for (const Edge& e : b.edges()) CHECK(e.u / 3 != e.v / 3);
}

TEST_CASE("blow-up counts and spec choices") {
  Graph c5 = cycle_graph(5);
  BlowupSpec spec;
  spec.base = c5;
  spec.mode = MatchingMode::enumerate_all;
  CHECK(spec.log2_choices() == doctest::Approx(5 * std::log2(34.0)));
  CHECK(spec.choice(0) == std::vector<uint64_t>(5, 0));
  CHECK(spec.choice(1) == std::vector<uint64_t>{0, 0, 0, 0, 1});
  CHECK(spec.choice(34) == std::vector<uint64_t>{0, 0, 0, 1, 0});
  spec.mode = MatchingMode::sample;
  spec.seed = 9;
  CHECK(spec.choice() == spec.choice());
  auto ms = canonical_matchings(3, 3);
  Graph g = blow_up(spec);
  size_t expect = 0;
  for (uint64_t i : spec.choice()) expect += ms[i].size();
  CHECK(static_cast<size_t>(g.m()) == expect);
}

TEST_CASE("verify_family_free") {
  Graph c5 = cycle_graph(5);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    BlowupSpec spec{c5, 3, MatchingMode::sample, {}, seed};
    CHECK(verify_family_free(blow_up(spec), {3, 6}).free);
  }
  Graph k4 = complete_graph(4);
  FamilyCheck c = verify_family_free(k4, {3});
  CHECK(!c.free);
  CHECK(c.length == 3);
  CHECK(c.witness.size() == 3);
  CHECK(blowup_family(3) == std::vector<int>{3, 6});
  CHECK(blowup_family(4) == std::vector<int>{3, 4, 8});
}

TEST_CASE("random family-free bases avoid every listed length") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = random_family_free(14, {3, 4, 5, 6}, Rng(seed, "base"));
    for (int len : {3, 4, 5, 6}) CHECK(!has_cycle(g, len));
    CHECK(g.m() > 0);
  }
}

TEST_CASE("random_intersect_blowup") {
  Graph pet = petersen_graph();
  for (uint64_t seed = 0; seed < 100; ++seed) {
    IntersectBlowup r = random_intersect_blowup(pet, 2, 0.3, 0.9, Rng(seed, "ib"));
    CHECK(r.free);
    CHECK(!has_cycle(r.graph, 4));
    CHECK(r.sampled.contains(r.graph));
  }
  IntersectBlowup full = random_intersect_blowup(pet, 2, 1.0, 1.0, Rng(1, "ib"));
  CHECK(full.a == 1);
  CHECK(full.graph == pet);
  IntersectBlowup none = random_intersect_blowup(pet, 2, 1e-9, 1e-9, Rng(1, "ib"));
  CHECK(none.graph.m() == 0);
  CHECK(none.shortfall);
  CHECK_THROWS_AS(random_intersect_blowup(complete_graph(4), 2, 0.5, 0.5, Rng(1, "ib")), InputError);
}
