#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclefree/graph.hpp"
#include "cyclefree/supersat.hpp"

namespace cyclefree {

class UniformHypergraph {
 public:
  UniformHypergraph(int r, int n_vertices, std::vector<std::vector<int>> edges);

  int r() const { return r_; }
  int n() const { return n_; }
  size_t size() const { return edges_.size(); }
  const std::vector<std::vector<int>>& edges() const { return edges_; }
  const std::vector<int>& incident(int v) const { return incidence_[v]; }
  // Hyperedges lying entirely inside the vertex mask.
  size_t edges_inside(const std::vector<char>& mask) const;
  bool independent(const std::vector<char>& mask) const { return edges_inside(mask) == 0; }
  uint64_t digest() const;

 private:
  int r_;
  int n_;
  std::vector<std::vector<int>> edges_;
  std::vector<std::vector<int>> incidence_;
};

UniformHypergraph cycle_hypergraph(const Graph& g, const std::vector<std::vector<EdgeId>>& cycles,
                                   int r);

// (1/e) sum_{j=2}^r tau^{-(j-1)} sum_v d^{(j)}(v)
double codegree(const UniformHypergraph& h, double tau);

struct TauChoice {
  double tau;
  bool feasible;  // tau < delta
};
// 1/tau = delta^4 k min{k^{1/(l-1)}, n^{(l-1)/(l(2l-1))}}
TauChoice tau_for_cycles(int ell, double k, double n, double delta);

struct CodegreeAudit {
  double bound;  // v(H)/e(H) [sum_j tau^{-(j-1)} Delta^{(j)} + tau^{-(2l-1)}]
  double delta;
  bool holds() const { return bound <= delta; }
};
// Re-evaluates the inequality chain behind the co-degree estimate for a good
// hypergraph with delta k^{2l} n^2 edges.
CodegreeAudit codegree_chain_audit(int ell, double k, double n, double delta);

struct ScytheRun {
  std::vector<int> fingerprint;  // T, sorted
  std::vector<int> container;    // T plus undecided vertices, sorted
  size_t inside = 0;             // e(H[C])
  bool reduced = false;          // e(H[C]) <= (1 - delta) e(H)
  bool budget_hit = false;
};

// Deterministic degree-greedy fingerprint algorithm: scan the undecided vertex of
// largest live degree (ties to the smallest id). A vertex of I joins T, and any
// hyperedge left with one undecided vertex forces that vertex out; any other
// scanned vertex is deleted. Stops once e(H[C]) <= (1 - delta) e(H), at the
// fingerprint budget, or when no undecided vertex has live degree.
class Scythe {
 public:
  Scythe(const UniformHypergraph& h, double delta, size_t budget);

  ScytheRun query(const std::function<bool(int)>& in_set) const;
  ScytheRun query(const std::vector<char>& mask) const;
  ScytheRun replay(std::span<const int> fingerprint) const;  // f(T)
  size_t budget() const { return budget_; }
  double delta() const { return delta_; }
  const UniformHypergraph& hypergraph() const { return *h_; }

  // Every leaf of the decision tree, in depth-first order with "yes" first.
  std::vector<ScytheRun> enumerate(size_t leaf_limit) const;

 private:
  const UniformHypergraph* h_;
  double delta_;
  size_t budget_;
};

struct ContainerRun {
  uint64_t input_digest = 0;
  double tau = 0.0;
  double delta = 0.0;
  size_t budget = 0;
  std::vector<std::vector<int>> containers;   // distinct, in discovery order
  std::vector<std::vector<int>> fingerprints;  // fingerprints[i] -> containers[which[i]]
  std::vector<size_t> which;
  std::vector<size_t> inside;       // e(H[C]) per container
  std::vector<bool> reduced;        // property (b) per container
  bool budget_ok = true;            // every |T| <= tau N / delta
  bool all_reduced() const;
};

ContainerRun build_containers(const UniformHypergraph& h, double tau, double delta,
                              std::optional<size_t> budget = std::nullopt,
                              size_t leaf_limit = 1'000'000);

struct StepParams {
  int ell = 2;
  bool generous = true;  // every cap infinite, so H holds every 2l-cycle
  double C = 1.0;
  double eps = 1.0;
  double supersat_delta = 1.0;
  Strategy strategy = Strategy::exhaustive;
  double delta = 0.25;  // container-theorem delta
  std::optional<double> tau;
  std::optional<size_t> budget;
  size_t leaf_limit = 1'000'000;
  double reduction_eps = -1.0;  // negative: delta^6
  double delta0() const;         // r^{-2r}, informational only
};

SupersatParams supersat_for(const Graph& g, const StepParams& p);

struct GraphStep {
  std::vector<Graph> containers;   // deduplicated subgraphs of G
  ContainerRun run;                // over EdgeIds of G
  size_t hyperedges = 0;
  bool no_supersaturation = false;  // G has no 2l-cycle
  bool all_strict = true;
  bool eps_reduction = true;       // e(C) <= (1 - eps) e(G) for every container
  double eps = 0.0;
  std::vector<double> reduction;   // 1 - e(C)/e(G)
};

// Hypergraph plus scythe for one graph; shared by the tree and the encoding.
struct StepContext {
  Graph g;
  UniformHypergraph h;
  Scythe scythe;
  double tau;
  bool tau_feasible;

  StepContext(const Graph& graph, const StepParams& p);
  StepContext(const StepContext&) = delete;
  StepContext& operator=(const StepContext&) = delete;
};

GraphStep graph_container_step(const Graph& g, const StepParams& p);

struct TreeNode {
  int id = 0;
  int parent = -1;
  int depth = 0;
  Graph g;
  bool leaf = false;
  bool free = false;      // no 2l-cycle
  bool stalled = false;   // a container step made no progress
  std::vector<int> children;
};

struct ContainerTree {
  int n = 0;
  int ell = 2;
  double k_target = 0.0;
  std::vector<TreeNode> nodes;
  std::vector<std::vector<int>> levels;  // frontier after each round
  std::vector<double> k_schedule;        // k(i)
  std::vector<int> leaves;
  size_t max_leaf_edges = 0;
  std::vector<int> bound_violations;     // leaves above k_target n^{1+1/l}
  double log2_leaves() const;
  double log2_bound_trend() const;       // k^{-1/(l-1)} n^{1+1/l} log k / ln 2
};

struct IterParams {
  StepParams step;
  double schedule_eps = 0.5;            // k(i) = max{(1-eps)^i n^{1-1/l}, k_target}
  std::optional<int> max_depth;         // default ceil(10 ln n)
};

ContainerTree iterate_containers(int n, int ell, double k_target, const IterParams& p);

struct EncodeParams {
  StepParams step;
  double k = 1.0;    // stop once e(G_m) <= k n^{1+1/l}
  double eps = 0.5;  // for the soft mu(j) check
  int max_steps = 1000;
};

struct ColouredEncoding {
  std::vector<Graph> fingerprints;  // (T_1, ..., T_m)
  Graph final;                      // h(g(I)) = G_m
  bool sandwich = false;
  std::vector<double> mu_caps;      // mu(j) n^{1+1/l} for T_{m-j}
  std::vector<bool> mu_ok;
  size_t total_edges() const;
};

ColouredEncoding encode_coloured(const Graph& free_graph, const EncodeParams& p);
Graph replay_encoding(int n, const std::vector<Graph>& fingerprints, const EncodeParams& p);
double mu_of(int ell, double k, double n, double eps);

}  // namespace cyclefree
