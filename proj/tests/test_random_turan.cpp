#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cyclefree/errors.hpp"
#include "cyclefree/random_turan.hpp"

using namespace cyclefree;

TEST_CASE("regime threshold") {
  const double n = std::exp(std::exp(1.0));
  CHECK(regime_threshold(2, n) == doctest::Approx(std::pow(n, -1.0 / 3) * std::pow(std::exp(1.0), 4)));
  double prev = regime_threshold(2, 1e6);
  for (double m : {1e7, 1e8, 1e9}) {
    double cur = regime_threshold(2, m);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(regime_threshold(3, 1e6) ==
        doctest::Approx(std::pow(1e6, -2.0 / 5) * std::pow(std::log(1e6), 6)));
  CHECK_THROWS_AS(regime_threshold(2, 2), InputError);
}

TEST_CASE("sweep corner cells") {
  SweepPlan plan;
  plan.ell = 2;
  plan.ns = {6};
  plan.ps = {0.0, 1.0};
  plan.seed = 3;
  SweepResult r = run_sweep(plan);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].best() == 0);
  CHECK(r.rows[1].ex_exact);
  CHECK(*r.rows[1].ex_exact == 7);
  CHECK(r.monotone);
}

TEST_CASE("sweep is deterministic and independent of worker count") {
  SweepPlan plan;
  plan.ns = {10, 12};
  plan.ps = {0.2, 0.4, 0.6};
  plan.trials = 2;
  plan.seed = 17;
  plan.mode = SolveMode::greedy;
  std::ostringstream a, b;
  write_sweep(a, run_sweep(plan));
  plan.workers = 3;
  write_sweep(b, run_sweep(plan));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("n\tp\tell\ttrial\tedges_sampled\tex_exact\tex_greedy\tbound_regime\tbound_value\tfitted_C\n", 0) == 0);
}

TEST_CASE("sweep invariants") {
  SweepPlan plan;
  plan.ns = {10};
  plan.ps = {0.1, 0.3, 0.5, 0.7};
  plan.trials = 3;
  plan.seed = 5;
  SweepResult r = run_sweep(plan);
  CHECK(r.monotone);
  CHECK(r.witness_ok);
  CHECK(r.greedy_ok);
  for (const SweepRow& row : r.rows) {
    CHECK(row.witness <= row.best());
    if (row.ex_exact) CHECK(row.ex_greedy <= *row.ex_exact);
    CHECK(row.edges_sampled >= row.best());
  }
}

TEST_CASE("plan validation and k grid") {
  SweepPlan plan;
  CHECK_THROWS_AS(plan.validate(), InputError);
  auto ps = SweepPlan::ps_from_ks(2, {4.0});
  CHECK(ps[0] == doctest::Approx(std::pow(4.0, -2.0) * std::log(4.0)));
  CHECK_THROWS_AS(SweepPlan::ps_from_ks(2, {1.0}), InputError);
}

TEST_CASE("supersat grid clamps and is reproducible") {
  auto a = supersat_grid({10}, {2.0, 4.0}, 1);
  auto b = supersat_grid({10}, {2.0, 4.0}, 1);
  CHECK(a[0].c4 == b[0].c4);
  CHECK(a[1].clamped);
  CHECK(a[1].m == 45);
  CHECK(a[1].c4 == 630);
}
