#include "cyclefree/random_turan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <ostream>
#include <thread>

#include "cyclefree/constructions.hpp"
#include "cyclefree/errors.hpp"
#include "cyclefree/graph.hpp"

namespace cyclefree {

double regime_threshold(int ell, double n) {
  if (ell < 2) throw InputError("ell must be at least 2");
  if (!(n >= 3)) throw InputError("n must be at least 3");
  return std::pow(n, -(ell - 1.0) / (2.0 * ell - 1)) * std::pow(std::log(n), 2.0 * ell);
}

double sparse_bound(int ell, double n) {
  return std::pow(n, 1.0 + 1.0 / (2.0 * ell - 1)) * std::pow(std::log(n), 2);
}

double dense_bound(int ell, double n, double p) {
  return std::pow(p, 1.0 / ell) * std::pow(n, 1.0 + 1.0 / ell);
}

double weak_bound(int ell, double n, double p) { return dense_bound(ell, n, p) * std::log(n); }

void SweepPlan::validate() const {
  if (ell < 2) throw InputError("ell must be at least 2");
  if (ns.empty() || ps.empty()) throw InputError("sweep grids must be nonempty");
  if (trials < 1) throw InputError("trials must be positive");
  if (workers < 1) throw InputError("workers must be positive");
  for (int n : ns)
    if (n < 3) throw InputError("every n must be at least 3");
  for (double p : ps)
    if (!(p >= 0 && p <= 1)) throw InputError("every p must lie in [0,1]");
}

std::vector<double> SweepPlan::ps_from_ks(int ell, const std::vector<double>& ks) {
  std::vector<double> out;
  for (double k : ks) {
    if (!(k > 1)) throw InputError("k must exceed 1");
    out.push_back(std::min(1.0, std::pow(k, -static_cast<double>(ell) / (ell - 1)) * std::log(k)));
  }
  return out;
}

namespace {

std::vector<EdgeId> ids_in(const Graph& g, const std::vector<Edge>& edges) {
  std::vector<EdgeId> out;
  for (const Edge& e : edges) {
    const EdgeId id = g.edge_id(e.u, e.v);
    if (id < 0) throw InvariantViolation("coupled samples are not nested");
    out.push_back(id);
  }
  return out;
}

std::vector<Edge> edges_of(const Graph& g, const std::vector<EdgeId>& ids) {
  std::vector<Edge> out;
  for (EdgeId id : ids) out.push_back(g.edge(id));
  return out;
}

std::vector<SweepRow> run_chain(const SweepPlan& plan, int n, int trial,
                                const std::vector<double>& ps) {
  const Rng root = Rng(plan.seed, "sweep").split("n" + std::to_string(n)).split(
      "trial" + std::to_string(trial));
  const Rng pairs = root.split("pairs");
  std::vector<int> family;
  for (int len = 3; len <= 2 * plan.ell; ++len) family.push_back(len);
  std::vector<Edge> best_edges;
  std::vector<SweepRow> rows;
  for (double p : ps) {
    SweepRow row;
    row.n = n;
    row.p = p;
    row.ell = plan.ell;
    row.trial = trial;
    const Graph g = gnp(n, p, pairs);
    row.edges_sampled = g.m();

    std::vector<Edge> witness;
    if (p > 0) {
      const int a = std::max(1, static_cast<int>(std::lround(plan.witness_eps / p)));
      const int blocks = n / a;
      if (blocks >= 2) {
        const Graph base = random_family_free(blocks, family, root.split("base" + std::to_string(a)));
        witness = intersect_blowup_on(g, base, a).edges();
      }
    }
    row.witness = static_cast<int>(witness.size());

    const std::vector<Edge>& seed_edges = witness.size() > best_edges.size() ? witness : best_edges;
    FreeSubgraph greedy =
        greedy_free_subgraph(g, plan.ell, degree_order(g), ids_in(g, seed_edges));
    row.ex_greedy = greedy.edges;
    std::vector<EdgeId> best = greedy.kept;
    if (plan.mode == SolveMode::exact) {
      try {
        FreeSubgraph exact = max_free_subgraph(g, plan.ell, SolveMode::exact, plan.budget);
        row.ex_exact = exact.edges;
        if (exact.edges >= greedy.edges) best = exact.kept;
      } catch (const BudgetExceeded&) {
      }
    }
    best_edges = edges_of(g, best);

    row.dense = p > regime_threshold(plan.ell, n);
    row.bound_value = row.dense ? dense_bound(plan.ell, n, p) : sparse_bound(plan.ell, n);
    row.fitted_C = row.best() / row.bound_value;
    const double db = dense_bound(plan.ell, n, p);
    row.dense_fit = db > 0 ? row.best() / db : 0.0;
    row.weak = weak_bound(plan.ell, n, p);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

SweepResult run_sweep(const SweepPlan& plan) {
  plan.validate();
  std::vector<double> ps = plan.ps;
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

  std::vector<std::pair<int, int>> tasks;
  for (int n : plan.ns)
    for (int t = 0; t < plan.trials; ++t) tasks.emplace_back(n, t);
  std::vector<std::vector<SweepRow>> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i; (i = next++) < tasks.size();) {
      try {
        out[i] = run_chain(plan, tasks[i].first, tasks[i].second, ps);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::min<int>(plan.workers, static_cast<int>(tasks.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  SweepResult r;
  for (auto& chain : out) {
    for (size_t i = 0; i < chain.size(); ++i) {
      const SweepRow& row = chain[i];
      if (i > 0 && row.best() < chain[i - 1].best()) r.monotone = false;
      if (row.witness > row.best()) r.witness_ok = false;
      if (row.ex_exact && row.ex_greedy > *row.ex_exact) r.greedy_ok = false;
      r.rows.push_back(row);
    }
  }
  std::map<std::pair<int, double>, std::vector<const SweepRow*>> by_cell;
  for (const SweepRow& row : r.rows) by_cell[{row.n, row.p}].push_back(&row);
  for (const auto& [key, rows] : by_cell) {
    SweepCell c;
    c.n = key.first;
    c.p = key.second;
    double sum = 0;
    for (const SweepRow* row : rows) {
      sum += row->best();
      c.max = std::max(c.max, row->best());
      c.heuristic = c.heuristic || row->heuristic_only();
    }
    c.mean = sum / rows.size();
    c.dense = rows.front()->dense;
    c.fitted_C = c.mean / rows.front()->bound_value;
    const double db = dense_bound(plan.ell, c.n, c.p);
    c.dense_fit = db > 0 ? c.mean / db : 0.0;
    r.cells.push_back(c);
  }
  return r;
}

void write_sweep(std::ostream& out, const SweepResult& r) {
  out << "n\tp\tell\ttrial\tedges_sampled\tex_exact\tex_greedy\tbound_regime\tbound_value\tfitted_C\n";
  char buf[256];
  for (const SweepRow& row : r.rows) {
    const std::string exact = row.ex_exact ? std::to_string(*row.ex_exact) : "NA";
    std::snprintf(buf, sizeof buf, "%d\t%.6g\t%d\t%d\t%d\t%s\t%d\t%s\t%.6g\t%.6g\n", row.n, row.p,
                  row.ell, row.trial, row.edges_sampled, exact.c_str(), row.ex_greedy,
                  row.dense ? "dense" : "sparse", row.bound_value, row.fitted_C);
    out << buf;
  }
}

std::vector<SupersatCell> supersat_grid(const std::vector<int>& ns, const std::vector<double>& ks,
                                        uint64_t seed) {
  std::vector<SupersatCell> out;
  for (int n : ns)
    for (double k : ks) {
      SupersatCell c;
      c.n = n;
      c.k = k;
      const int64_t want = std::llround(k * std::pow(n, 1.5));
      c.m = std::min(want, num_pairs(n));
      c.clamped = c.m < want;
      c.k_actual = c.m / std::pow(n, 1.5);
      Rng rng = Rng(seed, "supersat").split("n" + std::to_string(n)).split(
          "m" + std::to_string(c.m));
      const Graph g = gnm(n, c.m, rng);
      c.c4 = count_four_cycles(g);
      c.ratio = c.c4 / (std::pow(c.k_actual, 4) * n * static_cast<double>(n));
      out.push_back(c);
    }
  return out;
}

void write_supersat_grid(std::ostream& out, const std::vector<SupersatCell>& cells) {
  out << "n\tk\tm\tk_actual\tclamped\tc4\tratio\n";
  char buf[256];
  for (const SupersatCell& c : cells) {
    std::snprintf(buf, sizeof buf, "%d\t%.6g\t%lld\t%.6g\t%d\t%llu\t%.6g\n", c.n, c.k,
                  static_cast<long long>(c.m), c.k_actual, c.clamped ? 1 : 0,
                  static_cast<unsigned long long>(c.c4), c.ratio);
    out << buf;
  }
}

}  // namespace cyclefree
