#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cyclefree/rng.hpp"

namespace cyclefree {

using Vertex = int;
using EdgeId = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  auto operator<=>(const Edge&) const = default;
};

// Simple undirected graph on 0..n-1. Edges are kept sorted, so the position of
// an edge in edges() is its canonical EdgeId.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  // Pairs may be given in either orientation; self-loops, out-of-range
  // endpoints and duplicates throw InputError naming the pair.
  static Graph from_edges(int n, const std::vector<Edge>& pairs);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Vertex>& neighbours(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  // -1 when absent
  EdgeId edge_id(Vertex u, Vertex v) const;
  bool adjacent(Vertex u, Vertex v) const { return edge_id(u, v) >= 0; }

  // Subgraph on the same vertex set keeping the listed edges.
  Graph edge_subgraph(const std::vector<EdgeId>& ids) const;

  bool contains(const Graph& sub) const;  // same n, E(sub) subset of E(this)
  bool consistent() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void index();

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<EdgeId> dense_;  // n*n table when n is small
  std::unordered_map<uint64_t, EdgeId> sparse_;
};

Graph build_graph(int n, const std::vector<Edge>& pairs);

Graph complete_graph(int n);
Graph complete_bipartite(int s, int t);
Graph cycle_graph(int m);
Graph path_graph(int m);  // m vertices
Graph petersen_graph();
Graph gnp(int n, double p, const Rng& rng);
Graph gnm(int n, int64_t m, Rng rng);

// Rank of the pair (u,v), u<v, in lexicographic order of all pairs of [n].
int64_t pair_rank(int n, Vertex u, Vertex v);
Edge pair_unrank(int n, int64_t rank);
int64_t num_pairs(int n);

// e(G) / n^{1+1/ell}
double edge_density_k(const Graph& g, int ell);

struct Pruned {
  Graph graph;
  std::vector<Vertex> original;  // original[new label] = old label
};
Pruned min_degree_prune(const Graph& g, double d);

int girth(const Graph& g);  // 0 for forests

// Bit i set iff pair_unrank(n, i) is an edge. Requires n <= 11.
uint64_t pair_mask(const Graph& g);
Graph graph_from_mask(int n, uint64_t mask);

Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);
Graph load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const Graph& g);
std::string to_edge_list(const Graph& g);

uint64_t graph_digest(const Graph& g);

}  // namespace cyclefree
