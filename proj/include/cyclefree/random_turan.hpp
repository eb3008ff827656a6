#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyclefree/cycles.hpp"

namespace cyclefree {

// n^{-(l-1)/(2l-1)} (ln n)^{2l}
double regime_threshold(int ell, double n);
double sparse_bound(int ell, double n);           // n^{1+1/(2l-1)} (ln n)^2
double dense_bound(int ell, double n, double p);  // p^{1/l} n^{1+1/l}
double weak_bound(int ell, double n, double p);   // p^{1/l} n^{1+1/l} ln n

struct SweepPlan {
  int ell = 2;
  std::vector<int> ns;
  std::vector<double> ps;  // any order; cells run in increasing p
  int trials = 1;
  uint64_t seed = 0;
  SolveMode mode = SolveMode::exact;  // exact falls back to greedy when over budget
  ExactBudget budget{256, 2'000'000, 200'000};
  double witness_eps = 0.5;  // block size a = round(eps / p)
  int workers = 1;

  void validate() const;
  // p = k^{-l/(l-1)} log k per k
  static std::vector<double> ps_from_ks(int ell, const std::vector<double>& ks);
};

struct SweepRow {
  int n = 0;
  double p = 0.0;
  int ell = 2;
  int trial = 0;
  int edges_sampled = 0;
  std::optional<int> ex_exact;
  int ex_greedy = 0;
  int witness = 0;           // intersected blow-up on the same sample
  bool dense = false;        // p above the regime threshold
  double bound_value = 0.0;  // formula of the cell's regime, constant 1
  double fitted_C = 0.0;     // best / bound_value
  double dense_fit = 0.0;    // best / (p^{1/l} n^{1+1/l})
  double weak = 0.0;

  int best() const { return ex_exact ? *ex_exact : ex_greedy; }
  bool heuristic_only() const { return !ex_exact; }
};

struct SweepCell {
  int n = 0;
  double p = 0.0;
  double mean = 0.0;
  int max = 0;
  double fitted_C = 0.0;
  double dense_fit = 0.0;
  bool dense = false;
  bool heuristic = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ordered by (n, trial, p)
  std::vector<SweepCell> cells;
  bool monotone = true;        // per (n, trial), best is non-decreasing in p
  bool witness_ok = true;      // witness <= best everywhere
  bool greedy_ok = true;       // greedy <= exact wherever both exist
};

SweepResult run_sweep(const SweepPlan& plan);
void write_sweep(std::ostream& out, const SweepResult& r);

// Supersaturation grid for l = 2: exact C4 counts of G(n, m), m = k n^{3/2}
// clamped to C(n,2).
struct SupersatCell {
  int n = 0;
  double k = 0.0;     // requested
  int64_t m = 0;
  double k_actual = 0.0;
  bool clamped = false;
  uint64_t c4 = 0;
  double ratio = 0.0;  // c4 / (k_actual^4 n^2)
};
std::vector<SupersatCell> supersat_grid(const std::vector<int>& ns, const std::vector<double>& ks,
                                        uint64_t seed);
void write_supersat_grid(std::ostream& out, const std::vector<SupersatCell>& cells);

}  // namespace cyclefree
