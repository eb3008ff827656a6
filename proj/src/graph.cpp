#include "cyclefree/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cyclefree/errors.hpp"

namespace cyclefree {

namespace {

constexpr int kDenseLimit = 2048;

std::string pair_text(Vertex u, Vertex v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw InputError("negative vertex count");
  index();
}

Graph Graph::from_edges(int n, const std::vector<Edge>& pairs) {
  if (n < 0) throw InputError("negative vertex count");
  Graph g;
  g.n_ = n;
  g.edges_.reserve(pairs.size());
  for (auto [u, v] : pairs) {
    if (u == v) throw InputError("self-loop " + pair_text(u, v));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InputError("vertex out of range " + pair_text(u, v));
    if (u > v) std::swap(u, v);
    g.edges_.push_back({u, v});
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end());
  if (dup != g.edges_.end()) throw InputError("duplicate edge " + pair_text(dup->u, dup->v));
  g.index();
  return g;
}

void Graph::index() {
  adj_.assign(n_, {});
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  dense_.clear();
  sparse_.clear();
  if (n_ <= kDenseLimit) {
    dense_.assign(static_cast<size_t>(n_) * n_, -1);
    for (EdgeId e = 0; e < m(); ++e) {
      auto [u, v] = edges_[e];
      dense_[static_cast<size_t>(u) * n_ + v] = e;
      dense_[static_cast<size_t>(v) * n_ + u] = e;
    }
  } else {
    sparse_.reserve(edges_.size() * 2);
    for (EdgeId e = 0; e < m(); ++e) {
      auto [u, v] = edges_[e];
      sparse_[static_cast<uint64_t>(u) << 32 | static_cast<uint32_t>(v)] = e;
    }
  }
}

EdgeId Graph::edge_id(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return -1;
  if (!dense_.empty()) return dense_[static_cast<size_t>(u) * n_ + v];
  if (u > v) std::swap(u, v);
  auto it = sparse_.find(static_cast<uint64_t>(u) << 32 | static_cast<uint32_t>(v));
  return it == sparse_.end() ? -1 : it->second;
}

Graph Graph::edge_subgraph(const std::vector<EdgeId>& ids) const {
  std::vector<Edge> pairs;
  pairs.reserve(ids.size());
  for (EdgeId e : ids) {
    if (e < 0 || e >= m()) throw InputError("edge id out of range: " + std::to_string(e));
    pairs.push_back(edges_[e]);
  }
  return from_edges(n_, pairs);
}

bool Graph::contains(const Graph& sub) const {
  if (sub.n() != n_) return false;
  for (const auto& [u, v] : sub.edges())
    if (!adjacent(u, v)) return false;
  return true;
}

bool Graph::consistent() const {
  if (static_cast<int>(adj_.size()) != n_) return false;
  if (!std::is_sorted(edges_.begin(), edges_.end())) return false;
  size_t degree_sum = 0;
  for (Vertex v = 0; v < n_; ++v) {
    degree_sum += adj_[v].size();
    for (Vertex w : adj_[v]) {
      EdgeId e = edge_id(v, w);
      if (e < 0 || v == w) return false;
      auto [a, b] = edges_[e];
      if (!((a == v && b == w) || (a == w && b == v))) return false;
    }
  }
  for (EdgeId e = 0; e < m(); ++e) {
    auto [u, v] = edges_[e];
    if (u >= v || edge_id(u, v) != e) return false;
    if (e > 0 && !(edges_[e - 1] < edges_[e])) return false;
  }
  return degree_sum == 2 * edges_.size();
}

Graph build_graph(int n, const std::vector<Edge>& pairs) { return Graph::from_edges(n, pairs); }

Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.push_back({u, v});
  return Graph::from_edges(n, e);
}

Graph complete_bipartite(int s, int t) {
  std::vector<Edge> e;
  for (int u = 0; u < s; ++u)
    for (int v = 0; v < t; ++v) e.push_back({u, s + v});
  return Graph::from_edges(s + t, e);
}

Graph cycle_graph(int m) {
  if (m < 3) throw InputError("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (int i = 0; i < m; ++i) e.push_back({i, (i + 1) % m});
  return Graph::from_edges(m, e);
}

Graph path_graph(int m) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < m; ++i) e.push_back({i, i + 1});
  return Graph::from_edges(std::max(m, 0), e);
}

Graph petersen_graph() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5});
    e.push_back({i, i + 5});
    e.push_back({5 + i, 5 + (i + 2) % 5});
  }
  return Graph::from_edges(10, e);
}

int64_t num_pairs(int n) { return static_cast<int64_t>(n) * (n - 1) / 2; }

int64_t pair_rank(int n, Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return static_cast<int64_t>(u) * (2 * static_cast<int64_t>(n) - u - 1) / 2 + (v - u - 1);
}

Edge pair_unrank(int n, int64_t rank) {
  Vertex u = 0;
  while (rank >= n - 1 - u) {
    rank -= n - 1 - u;
    ++u;
  }
  return {u, static_cast<Vertex>(u + 1 + rank)};
}

Graph gnp(int n, double p, const Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0,1]");
  std::vector<Edge> e;
  int64_t i = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++i)
      if (rng.uniform_at(static_cast<uint64_t>(i)) < p) e.push_back({u, v});
  return Graph::from_edges(n, e);
}

Graph gnm(int n, int64_t m, Rng rng) {
  int64_t total = num_pairs(n);
  if (m < 0 || m > total)
    throw InputError("m=" + std::to_string(m) + " exceeds C(n,2)=" + std::to_string(total));
  // partial Fisher-Yates over pair ranks, sparse so large n stays cheap
  std::unordered_map<int64_t, int64_t> swapped;
  auto get = [&](int64_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<Edge> e;
  e.reserve(static_cast<size_t>(m));
  for (int64_t i = 0; i < m; ++i) {
    int64_t j = i + static_cast<int64_t>(rng.below(static_cast<uint64_t>(total - i)));
    int64_t a = get(i), b = get(j);
    swapped[j] = a;
    swapped[i] = b;
    e.push_back(pair_unrank(n, b));
  }
  return Graph::from_edges(n, e);
}

double edge_density_k(const Graph& g, int ell) {
  if (g.n() == 0) return 0.0;
  return g.m() / std::pow(static_cast<double>(g.n()), 1.0 + 1.0 / ell);
}

Pruned min_degree_prune(const Graph& g, double d) {
  std::vector<int> deg(g.n());
  std::vector<char> gone(g.n(), 0);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < g.n(); ++v) {
    deg[v] = g.degree(v);
    if (deg[v] < d) {
      gone[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbours(v)) {
      if (gone[w]) continue;
      if (--deg[w] < d) {
        gone[w] = 1;
        queue.push_back(w);
      }
    }
  }
  Pruned out;
  std::vector<Vertex> label(g.n(), -1);
  for (Vertex v = 0; v < g.n(); ++v)
    if (!gone[v]) {
      label[v] = static_cast<Vertex>(out.original.size());
      out.original.push_back(v);
    }
  std::vector<Edge> e;
  for (const auto& [u, v] : g.edges())
    if (!gone[u] && !gone[v]) e.push_back({label[u], label[v]});
  out.graph = Graph::from_edges(static_cast<int>(out.original.size()), e);
  return out;
}

int girth(const Graph& g) {
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(g.n()), parent(g.n());
  for (Vertex s = 0; s < g.n(); ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    parent[s] = -1;
    std::deque<Vertex> q{s};
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop_front();
      if (2 * dist[v] + 1 >= best) break;
      for (Vertex w : g.neighbours(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          q.push_back(w);
        } else if (w != parent[v]) {
          best = std::min(best, dist[v] + dist[w] + 1);
        }
      }
    }
  }
  return best == std::numeric_limits<int>::max() ? 0 : best;
}

uint64_t pair_mask(const Graph& g) {
  if (g.n() > 11) throw InputError("pair_mask needs n <= 11");
  uint64_t mask = 0;
  for (const auto& [u, v] : g.edges()) mask |= uint64_t{1} << pair_rank(g.n(), u, v);
  return mask;
}

Graph graph_from_mask(int n, uint64_t mask) {
  std::vector<Edge> e;
  for (int64_t i = 0; i < num_pairs(n); ++i)
    if (mask >> i & 1) e.push_back(pair_unrank(n, i));
  return Graph::from_edges(n, e);
}

Graph read_edge_list(std::istream& in) {
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw InputError("edge list: bad header");
  std::vector<Edge> e;
  e.reserve(static_cast<size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u, v;
    if (!(in >> u >> v)) throw InputError("edge list: expected " + std::to_string(m) + " edges");
    if (u >= v) throw InputError("edge list: pair not ordered " + pair_text(u, v));
    if (v >= n) throw InputError("edge list: vertex out of range " + pair_text(u, v));
    Edge cur{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    if (!e.empty() && !(e.back() < cur))
      throw InputError("edge list: not sorted or duplicate at " + pair_text(u, v));
    e.push_back(cur);
  }
  std::string extra;
  if (in >> extra) throw InputError("edge list: trailing data");
  return Graph::from_edges(static_cast<int>(n), e);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_edge_list(in);
}

void save_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  write_edge_list(out, g);
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream s;
  write_edge_list(s, g);
  return s.str();
}

uint64_t graph_digest(const Graph& g) { return fnv1a(to_edge_list(g)); }

}  // namespace cyclefree
