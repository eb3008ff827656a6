#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cyclefree/graph.hpp"

namespace cyclefree::detail {

// Mutable adjacency used by incremental free-ness checks.
class DynGraph {
 public:
  explicit DynGraph(int n) : n_(n), adj_(static_cast<size_t>(n) * n, 0), nbrs_(n) {}

  int n() const { return n_; }
  bool has(Vertex u, Vertex v) const { return adj_[static_cast<size_t>(u) * n_ + v] != 0; }
  const std::vector<Vertex>& nbrs(Vertex v) const { return nbrs_[v]; }

  void add(Vertex u, Vertex v) {
    adj_[static_cast<size_t>(u) * n_ + v] = adj_[static_cast<size_t>(v) * n_ + u] = 1;
    nbrs_[u].push_back(v);
    nbrs_[v].push_back(u);
  }
  void remove(Vertex u, Vertex v) {
    adj_[static_cast<size_t>(u) * n_ + v] = adj_[static_cast<size_t>(v) * n_ + u] = 0;
    erase(nbrs_[u], v);
    erase(nbrs_[v], u);
  }

  // Is there a simple u-v path with exactly `len` edges?
  bool has_path(Vertex u, Vertex v, int len) const {
    if (len == 1) return has(u, v);
    if (len == 3) {
      for (Vertex a : nbrs_[u]) {
        if (a == v) continue;
        for (Vertex b : nbrs_[v])
          if (b != u && b != a && has(a, b)) return true;
      }
      return false;
    }
    std::vector<char> on(n_, 0);
    on[u] = on[v] = 1;
    return dfs(u, v, len, on);
  }

 private:
  static void erase(std::vector<Vertex>& a, Vertex x) {
    auto it = std::find(a.begin(), a.end(), x);
    if (it != a.end()) {
      *it = a.back();
      a.pop_back();
    }
  }

  bool dfs(Vertex cur, Vertex target, int left, std::vector<char>& on) const {
    if (left == 1) return has(cur, target);
    for (Vertex w : nbrs_[cur]) {
      if (on[w]) continue;
      on[w] = 1;
      bool found = dfs(w, target, left - 1, on);
      on[w] = 0;
      if (found) return true;
    }
    return false;
  }

  int n_;
  std::vector<uint8_t> adj_;
  std::vector<std::vector<Vertex>> nbrs_;
};

}  // namespace cyclefree::detail
