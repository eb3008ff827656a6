#include "cyclefree/containers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "cyclefree/cycles.hpp"
#include "cyclefree/errors.hpp"

namespace cyclefree {

UniformHypergraph::UniformHypergraph(int r, int n_vertices, std::vector<std::vector<int>> edges)
    : r_(r), n_(n_vertices), edges_(std::move(edges)), incidence_(n_vertices) {
  if (r < 1 || r > 8) throw InputError("uniformity must be in 1..8");
  if (n_vertices < 0) throw InputError("negative vertex count");
  for (auto& e : edges_) {
    if (static_cast<int>(e.size()) != r) throw InputError("hyperedge of wrong size");
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw InputError("hyperedge with a repeated vertex");
    if (e.front() < 0 || e.back() >= n_vertices) throw InputError("hyperedge vertex out of range");
  }
  std::vector<std::vector<int>> sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("duplicate hyperedge");
  for (size_t i = 0; i < edges_.size(); ++i)
    for (int v : edges_[i]) incidence_[v].push_back(static_cast<int>(i));
}

size_t UniformHypergraph::edges_inside(const std::vector<char>& mask) const {
  size_t c = 0;
  for (const auto& e : edges_)
    if (std::all_of(e.begin(), e.end(), [&](int v) { return mask[v] != 0; })) ++c;
  return c;
}

uint64_t UniformHypergraph::digest() const {
  uint64_t h = mix64(static_cast<uint64_t>(r_) * 1000003u + static_cast<uint64_t>(n_));
  std::vector<std::vector<int>> sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& e : sorted)
    for (int v : e) h = mix64(h ^ static_cast<uint64_t>(v + 1));
  return h;
}

UniformHypergraph cycle_hypergraph(const Graph& g, const std::vector<std::vector<EdgeId>>& cycles,
                                   int r) {
  return UniformHypergraph(r, g.m(), cycles);
}

double codegree(const UniformHypergraph& h, double tau) {
  if (h.size() == 0) throw InputError("codegree of an empty hypergraph");
  if (!(tau > 0)) throw InputError("tau must be positive");
  const int r = h.r();
  std::unordered_map<EdgeSetKey, int64_t, EdgeSetKeyHash> deg;
  std::vector<int> sub;
  for (const auto& e : h.edges())
    for (uint32_t mask = 1; mask < (1u << r); ++mask) {
      if (std::popcount(mask) < 2) continue;
      sub.clear();
      for (int b = 0; b < r; ++b)
        if (mask >> b & 1) sub.push_back(e[b]);
      ++deg[EdgeSetKey(sub)];
    }
  // dmax[j][v] = d^{(j)}(v)
  std::vector<std::vector<int64_t>> dmax(r + 1, std::vector<int64_t>(h.n(), 0));
  for (const auto& [key, d] : deg)
    for (int v : key.view()) dmax[key.size][v] = std::max(dmax[key.size][v], d);
  double total = 0.0;
  for (int j = 2; j <= r; ++j) {
    double s = 0.0;
    for (int64_t d : dmax[j]) s += static_cast<double>(d);
    total += std::pow(tau, -(j - 1)) * s;
  }
  return total / static_cast<double>(h.size());
}

TauChoice tau_for_cycles(int ell, double k, double n, double delta) {
  if (ell < 2) throw InputError("ell must be at least 2");
  if (!(k > 0) || !(n > 0) || !(delta > 0)) throw InputError("parameters must be positive");
  const double kb = std::pow(k, 1.0 / (ell - 1));
  const double nb = std::pow(n, (ell - 1.0) / (ell * (2.0 * ell - 1)));
  const double inv = std::pow(delta, 4) * k * std::min(kb, nb);
  const double tau = 1.0 / inv;
  return {tau, tau < delta};
}

CodegreeAudit codegree_chain_audit(int ell, double k, double n, double delta) {
  const double tau = tau_for_cycles(ell, k, n, delta).tau;
  const double lk = std::log(k), ln = std::log(n), ld = std::log(delta);
  const double lv = lk + (1.0 + 1.0 / ell) * ln;                  // v(H) = e(G) = k n^{1+1/l}
  const double le = ld + 2.0 * ell * lk + 2.0 * ln;               // e(H) = delta k^{2l} n^2
  const double kl = static_cast<double>(ell) / (ell - 1);
  double bound = 0.0;
  for (int j = 2; j <= 2 * ell - 1; ++j) {
    // Delta^{(j)} = k^{2l-1} n^{1-1/l} / (delta k^{l/(l-1)})^{j-1}
    const double lcap = (2.0 * ell - 1) * lk + (1.0 - 1.0 / ell) * ln - (j - 1) * (ld + kl * lk);
    bound += std::exp(lv - le - (j - 1) * std::log(tau) + lcap);
  }
  bound += std::exp(lv - le - (2.0 * ell - 1) * std::log(tau));
  return {bound, delta};
}

namespace {

struct ScytheState {
  std::vector<char> status;  // 0 undecided, 1 in T, 2 deleted
  std::vector<char> alive;
  std::vector<int> tcount;
  std::vector<int64_t> deg;
  size_t alive_count = 0;
  size_t t_size = 0;
};

class Machine {
 public:
  Machine(const UniformHypergraph& h, double delta, size_t budget)
      : h_(h), budget_(budget),
        floor_(std::floor((1.0 - delta) * static_cast<double>(h.size()) + 1e-9)) {}

  ScytheState initial() const {
    ScytheState s;
    s.status.assign(h_.n(), 0);
    s.alive.assign(h_.size(), 1);
    s.tcount.assign(h_.size(), 0);
    s.deg.assign(h_.n(), 0);
    for (int v = 0; v < h_.n(); ++v) s.deg[v] = static_cast<int64_t>(h_.incident(v).size());
    s.alive_count = h_.size();
    return s;
  }

  // Next vertex to scan, or -1 when the run stops.
  int next(const ScytheState& s, bool* budget_hit) const {
    *budget_hit = false;
    if (static_cast<double>(s.alive_count) <= floor_) return -1;
    if (s.t_size >= budget_) {
      *budget_hit = true;
      return -1;
    }
    int best = -1;
    for (int v = 0; v < h_.n(); ++v)
      if (s.status[v] == 0 && s.deg[v] > 0 && (best < 0 || s.deg[v] > s.deg[best])) best = v;
    return best;
  }

  void remove(ScytheState& s, int v) const {
    s.status[v] = 2;
    for (int e : h_.incident(v)) {
      if (!s.alive[e]) continue;
      s.alive[e] = 0;
      --s.alive_count;
      for (int u : h_.edges()[e]) --s.deg[u];
    }
  }

  void take(ScytheState& s, int v) const {
    s.status[v] = 1;
    ++s.t_size;
    std::vector<int> forced;
    for (int e : h_.incident(v)) {
      if (!s.alive[e]) continue;
      if (++s.tcount[e] == h_.r() - 1)
        for (int u : h_.edges()[e])
          if (s.status[u] == 0) forced.push_back(u);
    }
    for (int u : forced)
      if (s.status[u] == 0) remove(s, u);
  }

  ScytheRun finish(const ScytheState& s, bool budget_hit) const {
    ScytheRun run;
    for (int v = 0; v < h_.n(); ++v) {
      if (s.status[v] == 1) run.fingerprint.push_back(v);
      if (s.status[v] != 2) run.container.push_back(v);
    }
    run.inside = s.alive_count;
    run.reduced = static_cast<double>(s.alive_count) <= floor_;
    run.budget_hit = budget_hit;
    return run;
  }

  ScytheRun run(const std::function<bool(int)>& in_set) const {
    ScytheState s = initial();
    bool hit = false;
    for (int v; (v = next(s, &hit)) >= 0;) {
      if (in_set(v))
        take(s, v);
      else
        remove(s, v);
    }
    return finish(s, hit);
  }

  void enumerate(ScytheState s, size_t limit, std::vector<ScytheRun>& out) const {
    bool hit = false;
    const int v = next(s, &hit);
    if (v < 0) {
      if (out.size() >= limit) throw BudgetExceeded("container leaf limit exceeded");
      out.push_back(finish(s, hit));
      return;
    }
    ScytheState yes = s;
    take(yes, v);
    enumerate(std::move(yes), limit, out);
    remove(s, v);
    enumerate(std::move(s), limit, out);
  }

 private:
  const UniformHypergraph& h_;
  size_t budget_;
  double floor_;
};

}  // namespace

Scythe::Scythe(const UniformHypergraph& h, double delta, size_t budget)
    : h_(&h), delta_(delta), budget_(budget) {
  if (!(delta > 0) || delta > 1) throw InputError("delta must lie in (0, 1]");
}

ScytheRun Scythe::query(const std::function<bool(int)>& in_set) const {
  return Machine(*h_, delta_, budget_).run(in_set);
}

ScytheRun Scythe::query(const std::vector<char>& mask) const {
  if (static_cast<int>(mask.size()) != h_->n()) throw InputError("mask size mismatch");
  return query([&](int v) { return mask[v] != 0; });
}

ScytheRun Scythe::replay(std::span<const int> fingerprint) const {
  std::vector<char> mask(h_->n(), 0);
  for (int v : fingerprint) {
    if (v < 0 || v >= h_->n()) throw InputError("fingerprint vertex out of range");
    mask[v] = 1;
  }
  return query(mask);
}

std::vector<ScytheRun> Scythe::enumerate(size_t leaf_limit) const {
  Machine m(*h_, delta_, budget_);
  std::vector<ScytheRun> out;
  m.enumerate(m.initial(), leaf_limit, out);
  return out;
}

bool ContainerRun::all_reduced() const {
  return std::all_of(reduced.begin(), reduced.end(), [](bool b) { return b; });
}

namespace {

size_t default_budget(double tau, double delta, int n) {
  const double b = std::floor(tau * n / delta + 1e-9);
  if (!(b < static_cast<double>(n))) return static_cast<size_t>(n);
  return static_cast<size_t>(std::max(0.0, b));
}

}  // namespace

ContainerRun build_containers(const UniformHypergraph& h, double tau, double delta,
                              std::optional<size_t> budget, size_t leaf_limit) {
  if (h.size() == 0) throw InputError("container algorithm needs at least one hyperedge");
  if (!(tau > 0)) throw InputError("tau must be positive");
  ContainerRun run;
  run.input_digest = h.digest();
  run.tau = tau;
  run.delta = delta;
  run.budget = budget ? *budget : default_budget(tau, delta, h.n());
  Scythe scythe(h, delta, run.budget);
  const double cap = tau * h.n() / delta;
  std::map<std::vector<int>, size_t> index;
  for (ScytheRun& leaf : scythe.enumerate(leaf_limit)) {
    auto [it, fresh] = index.emplace(leaf.container, run.containers.size());
    if (fresh) {
      run.containers.push_back(leaf.container);
      run.inside.push_back(leaf.inside);
      run.reduced.push_back(leaf.reduced);
    }
    if (static_cast<double>(leaf.fingerprint.size()) > cap + 1e-9) run.budget_ok = false;
    run.fingerprints.push_back(std::move(leaf.fingerprint));
    run.which.push_back(it->second);
  }
  return run;
}

double StepParams::delta0() const {
  const double r = 2.0 * ell;
  return std::pow(r, -2.0 * r);
}

SupersatParams supersat_for(const Graph& g, const StepParams& p) {
  const double k = std::max(edge_density_k(g, p.ell), 1e-12);
  if (p.generous) return SupersatParams::generous(p.ell, k, g.n());
  return SupersatParams::from(NbhdParams::uniform(p.ell, k, g.n(), p.C, p.eps, p.supersat_delta));
}

namespace {

UniformHypergraph hypergraph_of(const Graph& g, const StepParams& p) {
  std::vector<std::vector<int>> edges;
  if (p.generous && p.strategy == Strategy::exhaustive) {
    CycleSet cycles = enumerate_cycles(g, p.ell);
    edges.reserve(cycles.size());
    for (size_t i = 0; i < cycles.size(); ++i)
      edges.emplace_back(cycles[i].begin(), cycles[i].end());
  } else {
    BuildResult b = build_good_hypergraph(g, supersat_for(g, p),
                                          std::numeric_limits<double>::infinity(), p.strategy);
    edges = b.h.hyperedges();
  }
  return UniformHypergraph(2 * p.ell, g.m(), std::move(edges));
}

double tau_of(const Graph& g, const StepParams& p, bool* feasible) {
  if (p.tau) {
    *feasible = *p.tau < p.delta;
    return *p.tau;
  }
  const double k = std::max(edge_density_k(g, p.ell), 1e-12);
  TauChoice c = tau_for_cycles(p.ell, k, std::max(g.n(), 1), p.delta);
  *feasible = c.feasible;
  return c.tau;
}

Graph as_subgraph(const Graph& g, const std::vector<int>& ids) { return g.edge_subgraph(ids); }

std::vector<char> edge_mask(const Graph& host, const Graph& sub) {
  std::vector<char> mask(host.m(), 0);
  for (const Edge& e : sub.edges()) {
    const EdgeId id = host.edge_id(e.u, e.v);
    if (id >= 0) mask[id] = 1;
  }
  return mask;
}

}  // namespace

StepContext::StepContext(const Graph& graph, const StepParams& p)
    : g(graph), h(hypergraph_of(g, p)), scythe(h, p.delta, 0), tau(0), tau_feasible(false) {
  tau = tau_of(g, p, &tau_feasible);
  scythe = Scythe(h, p.delta, p.budget ? *p.budget : default_budget(tau, p.delta, g.m()));
}

GraphStep graph_container_step(const Graph& g, const StepParams& p) {
  if (g.m() < 1) throw InputError("container step needs at least one edge");
  GraphStep out;
  out.eps = p.reduction_eps >= 0 ? p.reduction_eps : std::pow(p.delta, 6);
  StepContext ctx(g, p);
  out.hyperedges = ctx.h.size();
  if (ctx.h.size() == 0) {
    out.no_supersaturation = true;
    out.all_strict = false;
    out.eps_reduction = false;
    out.containers.push_back(g);
    out.reduction.push_back(0.0);
    return out;
  }
  out.run = build_containers(ctx.h, ctx.tau, p.delta, ctx.scythe.budget(), p.leaf_limit);
  std::unordered_set<uint64_t> seen;
  for (const auto& c : out.run.containers) {
    Graph sub = as_subgraph(g, c);
    if (!seen.insert(graph_digest(sub)).second) continue;
    const double red = 1.0 - static_cast<double>(sub.m()) / g.m();
    if (sub.m() >= g.m()) out.all_strict = false;
    if (red < out.eps) out.eps_reduction = false;
    out.reduction.push_back(red);
    out.containers.push_back(std::move(sub));
  }
  return out;
}

double ContainerTree::log2_leaves() const {
  return leaves.empty() ? 0.0 : std::log2(static_cast<double>(leaves.size()));
}

double ContainerTree::log2_bound_trend() const {
  const double k = std::max(k_target, 1.0 + 1e-9);
  return std::pow(k, -1.0 / (ell - 1)) * std::pow(n, 1.0 + 1.0 / ell) * std::log(k) / std::log(2.0);
}

ContainerTree iterate_containers(int n, int ell, double k_target, const IterParams& p) {
  if (n < 1) throw InputError("n must be positive");
  if (ell < 2) throw InputError("ell must be at least 2");
  if (!(k_target > 0)) throw InputError("k_target must be positive");
  if (!(p.schedule_eps > 0) || p.schedule_eps >= 1) throw InputError("schedule eps must lie in (0,1)");
  StepParams step = p.step;
  step.ell = ell;
  ContainerTree tree;
  tree.n = n;
  tree.ell = ell;
  tree.k_target = k_target;
  const double scale = std::pow(n, 1.0 + 1.0 / ell);
  const double leaf_bound = k_target * scale;
  const int guard = p.max_depth ? *p.max_depth : static_cast<int>(std::ceil(10.0 * std::log(std::max(n, 2))));
  auto k_at = [&](int i) {
    return std::max(std::pow(1.0 - p.schedule_eps, i) * std::pow(n, 1.0 - 1.0 / ell), k_target);
  };

  auto add_node = [&](Graph g, int parent, int depth) {
    TreeNode node;
    node.id = static_cast<int>(tree.nodes.size());
    node.parent = parent;
    node.depth = depth;
    node.free = !has_cycle(g, 2 * ell);
    node.g = std::move(g);
    tree.nodes.push_back(std::move(node));
    if (parent >= 0) tree.nodes[parent].children.push_back(tree.nodes.back().id);
    return tree.nodes.back().id;
  };
  auto finalize = [&](int id) {
    TreeNode& node = tree.nodes[id];
    node.leaf = true;
    tree.leaves.push_back(id);
    tree.max_leaf_edges = std::max(tree.max_leaf_edges, static_cast<size_t>(node.g.m()));
    if (node.g.m() > leaf_bound + 1e-9) tree.bound_violations.push_back(id);
  };

  tree.levels.push_back({add_node(complete_graph(n), -1, 0)});
  tree.k_schedule.push_back(k_at(0));
  for (int depth = 0;; ++depth) {
    const std::vector<int>& frontier = tree.levels.back();
    bool open = false;
    for (int id : frontier)
      if (!tree.nodes[id].leaf) open = true;
    if (!open) break;
    if (depth >= guard) throw BudgetExceeded("container iteration exceeded its depth guard");
    const double next_thr = k_at(depth + 1) * scale;
    tree.k_schedule.push_back(k_at(depth + 1));
    std::vector<int> next;
    std::unordered_map<uint64_t, int> seen;
    auto place = [&](Graph g, int parent) {
      const uint64_t d = graph_digest(g);
      auto it = seen.find(d);
      if (it != seen.end()) return;
      const int id = add_node(std::move(g), parent, depth + 1);
      seen.emplace(d, id);
      next.push_back(id);
    };
    for (int id : frontier) {
      if (tree.nodes[id].leaf) {
        next.push_back(id);
        continue;
      }
      const double m = tree.nodes[id].g.m();
      if (m <= leaf_bound + 1e-9 || tree.nodes[id].free) {
        finalize(id);
        next.push_back(id);
        continue;
      }
      if (m <= next_thr + 1e-9) {
        place(tree.nodes[id].g, id);
        continue;
      }
      GraphStep s = graph_container_step(tree.nodes[id].g, step);
      for (Graph& c : s.containers) {
        if (c.m() >= tree.nodes[id].g.m()) {
          const int child = add_node(std::move(c), id, depth + 1);
          tree.nodes[child].stalled = true;
          finalize(child);
          next.push_back(child);
          continue;
        }
        place(std::move(c), id);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    tree.levels.push_back(std::move(next));
  }
  std::sort(tree.leaves.begin(), tree.leaves.end());
  return tree;
}

size_t ColouredEncoding::total_edges() const {
  size_t s = 0;
  for (const Graph& t : fingerprints) s += t.m();
  return s;
}

double mu_of(int ell, double k, double n, double eps) {
  return (1.0 / eps) * std::max(std::pow(k, -1.0 / (ell - 1)),
                                std::pow(n, -(ell - 1.0) / (ell * (2.0 * ell - 1))));
}

namespace {

bool stop_here(const Graph& g, const EncodeParams& p) {
  const double bound = p.k * std::pow(g.n(), 1.0 + 1.0 / p.step.ell);
  return g.m() <= bound + 1e-9;
}

// G_{i+1} = f_{G_i}(T) \ T, with T given as EdgeIds of G_i.
Graph advance(const StepContext& ctx, const ScytheRun& run) {
  std::vector<char> in_t(ctx.g.m(), 0);
  for (int e : run.fingerprint) in_t[e] = 1;
  std::vector<EdgeId> keep;
  for (int e : run.container)
    if (!in_t[e]) keep.push_back(e);
  return ctx.g.edge_subgraph(keep);
}

}  // namespace

ColouredEncoding encode_coloured(const Graph& free_graph, const EncodeParams& p) {
  const int n = free_graph.n();
  if (has_cycle(free_graph, 2 * p.step.ell)) throw InputError("input graph contains a 2l-cycle");
  ColouredEncoding out;
  Graph g = complete_graph(n);
  for (int step = 0; !stop_here(g, p); ++step) {
    if (step >= p.max_steps) throw BudgetExceeded("encoding exceeded its step limit");
    StepContext ctx(g, p.step);
    if (ctx.h.size() == 0) break;
    ScytheRun run = ctx.scythe.query(edge_mask(g, free_graph));
    Graph next = advance(ctx, run);
    out.fingerprints.push_back(g.edge_subgraph(run.fingerprint));
    if (next.m() >= g.m()) break;
    g = std::move(next);
  }
  out.final = g;

  std::vector<char> covered(num_pairs(n), 0);
  bool ok = true;
  for (const Graph& t : out.fingerprints)
    for (const Edge& e : t.edges()) {
      if (!free_graph.adjacent(e.u, e.v)) ok = false;
      covered[pair_rank(n, e.u, e.v)] = 1;
    }
  for (const Edge& e : free_graph.edges())
    if (!covered[pair_rank(n, e.u, e.v)] && !out.final.adjacent(e.u, e.v)) ok = false;
  out.sandwich = ok;
  if (!ok) throw InvariantViolation("coloured encoding violates the sandwich property");

  const size_t m = out.fingerprints.size();
  for (size_t j = 0; j < m; ++j) {
    const double kj = std::pow(1.0 - p.eps, -static_cast<double>(j)) * p.k;
    const double cap = mu_of(p.step.ell, kj, n, p.eps) * std::pow(n, 1.0 + 1.0 / p.step.ell);
    out.mu_caps.push_back(cap);
    out.mu_ok.push_back(out.fingerprints[m - 1 - j].m() <= cap + 1e-9);
  }
  return out;
}

Graph replay_encoding(int n, const std::vector<Graph>& fingerprints, const EncodeParams& p) {
  Graph g = complete_graph(n);
  for (const Graph& t : fingerprints) {
    if (t.n() != n) throw InputError("fingerprint on the wrong vertex set");
    StepContext ctx(g, p.step);
    std::vector<int> ids;
    for (const Edge& e : t.edges()) {
      const EdgeId id = g.edge_id(e.u, e.v);
      if (id < 0) throw InputError("fingerprint edge missing from the current container");
      ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    g = advance(ctx, ctx.scythe.replay(ids));
  }
  return g;
}

}  // namespace cyclefree
