#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cyclefree/graph.hpp"

namespace cyclefree {

// Scale parameters shared by the neighbourhood and supersaturation machinery.
// eps[t-1] holds eps(t) for t = 1..ell.
struct NbhdParams {
  int ell = 2;
  double k = 1.0;
  double n = 1.0;
  double C = 20.0;
  double delta = 1e-3;
  std::vector<double> eps;

  double eps_at(int t) const;
  void validate() const;  // throws InputError

  // C = 10 ell, eps(ell) = 1/C^2, eps(t-1) = eps(t)^t, delta = eps(1)^{2 ell}
  static NbhdParams paper(int ell, double k, double n);
  // Same eps value at every level.
  static NbhdParams uniform(int ell, double k, double n, double C, double eps, double delta);
  static NbhdParams for_graph(const Graph& g, int ell, double C, double eps, double delta);
};

double forward_threshold(const NbhdParams& p, int t);  // C eps(t) k n^{1/ell}
double level_cap(const NbhdParams& p, int t);          // k^{(ell-t)/(ell-1)} n^{t/ell}
double first_level_cap(const NbhdParams& p);           // k n^{1/ell}
double pair_cap(const NbhdParams& p, int i, int j);    // k^{(j-i-1) ell/(ell-1)}
double refined_forward_threshold(const NbhdParams& p, int t);  // eps(t) k n^{1/ell}
double refined_back_threshold(const NbhdParams& p, int t);     // eps(t) k^{ell/(ell-1)}
double refined_path_threshold(const NbhdParams& p, int t);     // eps(t)^t k^{(t-1) ell/(ell-1)}

// levels[0] = {x}; levels[i] = A_i for i = 1..t, each sorted.
struct LevelFamily {
  Vertex x = 0;
  int t = 0;
  std::vector<std::vector<Vertex>> levels;

  bool in_level(int i, Vertex v) const;
  bool consistent(const Graph& g) const;  // A_i within N(A_{i-1})
};

// Saturated-set queries needed while growing paths.
class ForbiddenView {
 public:
  virtual ~ForbiddenView() = default;
  // {e} in L^{(1)}(S): e not in S and tau + e saturated for some nonempty tau in S.
  virtual bool in_link1(std::span<const EdgeId> s, EdgeId e) const = 0;
  virtual bool saturated(std::span<const EdgeId> sorted_set) const = 0;
  // True iff some saturated set lies inside the given edges.
  bool contains_saturated(std::span<const EdgeId> edges) const;
};

class NoForbidden final : public ForbiddenView {
 public:
  bool in_link1(std::span<const EdgeId>, EdgeId) const override { return false; }
  bool saturated(std::span<const EdgeId>) const override { return false; }
};

// Explicit list of saturated edge sets.
class ListForbidden final : public ForbiddenView {
 public:
  explicit ListForbidden(std::vector<std::vector<EdgeId>> sets);
  bool in_link1(std::span<const EdgeId> s, EdgeId e) const override;
  bool saturated(std::span<const EdgeId> sorted_set) const override;

 private:
  std::vector<std::vector<EdgeId>> sets_;
};

using Path = std::vector<Vertex>;  // (x, u_1, ..., u_t)

class PathFamily {
 public:
  PathFamily() = default;
  PathFamily(const Graph& host, LevelFamily base, std::vector<Path> paths);

  const Graph& host() const { return *host_; }
  const LevelFamily& base() const { return base_; }
  Vertex x() const { return base_.x; }
  int t() const { return base_.t; }
  const std::vector<Path>& paths() const { return paths_; }
  size_t size() const { return paths_.size(); }
  bool empty() const { return paths_.empty(); }

  // |P_{i,j}[u -> v]|: distinct subpaths (u_i..u_j) with u_i = u, u_j = v.
  int64_t count(int i, int j, Vertex u, Vertex v) const;
  int64_t count_to_set(int i, int j, Vertex u, std::span<const Vertex> targets) const;
  // All nonzero |P_{i,j}[u -> v]| at once.
  std::map<std::pair<Vertex, Vertex>, int64_t> pair_counts(int i, int j) const;
  // Distinct successors at level r+1 of paths whose r-th vertex is v.
  int branching_factor(Vertex v, int r) const;
  int max_branching_factor() const;
  int64_t paths_to(Vertex w) const;  // |P[x -> w]|
  std::vector<EdgeId> path_edges(const Path& p) const;  // sorted

  // Genuine paths of host respecting the levels.
  bool valid() const;
  void dump(std::ostream& out) const;

  bool infeasible = false;   // a size had to be floored at 1
  bool root_short = false;   // refined condition (i) fails at the root

 private:
  const Graph* host_ = nullptr;
  LevelFamily base_;
  std::vector<Path> paths_;
};

// Concentrated t-neighbourhood for a fixed t, if the peeling search finds one.
std::optional<LevelFamily> concentrated_at(const Graph& g, Vertex x, int t, const NbhdParams& p);
std::optional<LevelFamily> concentrated_search(const Graph& g, Vertex x, const NbhdParams& p);
bool is_concentrated(const Graph& g, const LevelFamily& a, const NbhdParams& p);

struct GraphT {
  std::optional<int> t;
  std::vector<Vertex> argmin;
};
GraphT t_of_graph(const Graph& g, const NbhdParams& p);

PathFamily build_balanced(const Graph& g, const LevelFamily& concentrated,
                          const ForbiddenView& forbidden, const NbhdParams& p);
PathFamily refine_balanced(const PathFamily& balanced, const NbhdParams& p);

struct BalancedCheck {
  bool paths_valid = true;
  bool first_level = true;
  bool last_level = true;
  bool pair_caps = true;
  bool branching = true;
  bool ok() const { return paths_valid && first_level && last_level && pair_caps && branching; }
};
BalancedCheck check_balanced(const PathFamily& f, const NbhdParams& p);

struct RefinedCheck {
  BalancedCheck balanced;
  bool forward = true;   // (i) for every level below t
  bool back = true;      // (ii)
  bool endpoint = true;  // (iii)
  bool ok() const { return balanced.ok() && forward && back && endpoint; }
};
RefinedCheck check_refined(const PathFamily& f, const NbhdParams& p);

struct ObservedCap {
  int64_t observed = 0;
  double cap = 0.0;
  bool holds() const { return static_cast<double>(observed) <= cap * (1 + 1e-9); }
};
ObservedCap paths_through_vertex_bound(const PathFamily& f, Vertex w, Vertex v,
                                       const NbhdParams& p);
ObservedCap paths_through_set_bound(const PathFamily& f, Vertex w, std::span<const EdgeId> sigma,
                                    const NbhdParams& p);

}  // namespace cyclefree
