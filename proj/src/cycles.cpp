#include "cyclefree/cycles.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <numeric>

#include "cyclefree/errors.hpp"
#include "dyn_graph.hpp"

namespace cyclefree {

namespace {

class CycleWalker {
 public:
  CycleWalker(const Graph& g, int length,
              const std::function<bool(std::span<const Vertex>)>& visit)
      : g_(g), len_(length), visit_(visit), path_(length), on_(g.n(), 0) {}

  void run() {
    for (Vertex s = 0; s < g_.n() && !stop_; ++s) {
      path_[0] = s;
      on_[s] = 1;
      extend(1);
      on_[s] = 0;
    }
  }

 private:
  void extend(int d) {
    Vertex s = path_[0];
    Vertex cur = path_[d - 1];
    for (Vertex w : g_.neighbours(cur)) {
      if (w <= s || on_[w]) continue;
      if (d == len_ - 1) {
        if (w < path_[1] || !g_.adjacent(w, s)) continue;
        path_[d] = w;
        if (!visit_(path_)) {
          stop_ = true;
          return;
        }
        continue;
      }
      path_[d] = w;
      on_[w] = 1;
      extend(d + 1);
      on_[w] = 0;
      if (stop_) return;
    }
  }

  const Graph& g_;
  int len_;
  const std::function<bool(std::span<const Vertex>)>& visit_;
  std::vector<Vertex> path_;
  std::vector<char> on_;
  bool stop_ = false;
};

bool lex_less(std::span<const EdgeId> a, std::span<const EdgeId> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

CycleSet::CycleSet(int ell, std::vector<EdgeId> flat, bool truncated)
    : ell_(ell), flat_(std::move(flat)), truncated_(truncated) {}

bool CycleSet::contains(std::span<const EdgeId> sorted_edges) const {
  if (static_cast<int>(sorted_edges.size()) != length()) return false;
  size_t lo = 0, hi = size();
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (lex_less((*this)[mid], sorted_edges))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo < size() && std::equal(sorted_edges.begin(), sorted_edges.end(), (*this)[lo].begin());
}

void for_each_cycle(const Graph& g, int length,
                    const std::function<bool(std::span<const Vertex>)>& visit) {
  if (length < 3) throw InputError("cycle length must be at least 3");
  CycleWalker(g, length, visit).run();
}

std::vector<EdgeId> cycle_edge_ids(const Graph& g, std::span<const Vertex> cycle) {
  std::vector<EdgeId> ids;
  ids.reserve(cycle.size());
  for (size_t i = 0; i < cycle.size(); ++i) {
    EdgeId e = g.edge_id(cycle[i], cycle[(i + 1) % cycle.size()]);
    if (e < 0) throw InputError("vertex sequence is not a cycle of the host");
    ids.push_back(e);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

CycleSet enumerate_cycles(const Graph& g, int ell, std::optional<size_t> cap) {
  if (ell < 2) throw InputError("ell must be at least 2");
  const int len = 2 * ell;
  std::vector<EdgeId> raw;
  bool truncated = false;
  size_t found = 0;
  for_each_cycle(g, len, [&](std::span<const Vertex> c) {
    if (cap && found >= *cap) {
      truncated = true;
      return false;
    }
    auto ids = cycle_edge_ids(g, c);
    raw.insert(raw.end(), ids.begin(), ids.end());
    ++found;
    return true;
  });
  std::vector<size_t> order(found);
  std::iota(order.begin(), order.end(), 0);
  auto at = [&](size_t i) { return std::span<const EdgeId>(raw.data() + i * len, len); };
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return lex_less(at(a), at(b)); });
  std::vector<EdgeId> flat;
  flat.reserve(raw.size());
  for (size_t i : order) flat.insert(flat.end(), at(i).begin(), at(i).end());
  return CycleSet(ell, std::move(flat), truncated);
}

uint64_t count_cycles(const Graph& g, int length) {
  uint64_t count = 0;
  for_each_cycle(g, length, [&](std::span<const Vertex>) {
    ++count;
    return true;
  });
  return count;
}

uint64_t count_four_cycles(const Graph& g) {
  const int n = g.n();
  const int words = (n + 63) / 64;
  std::vector<uint64_t> rows(static_cast<size_t>(n) * words, 0);
  for (const auto& [u, v] : g.edges()) {
    rows[static_cast<size_t>(u) * words + v / 64] |= uint64_t{1} << (v % 64);
    rows[static_cast<size_t>(v) * words + u / 64] |= uint64_t{1} << (u % 64);
  }
  uint64_t twice = 0;
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w) {
      uint64_t c = 0;
      for (int i = 0; i < words; ++i)
        c += std::popcount(rows[static_cast<size_t>(u) * words + i] &
                           rows[static_cast<size_t>(w) * words + i]);
      twice += c * (c - (c > 0 ? 1 : 0)) / 2;
    }
  return twice / 2;
}

uint64_t count_cycles_through(const Graph& g, int ell, std::span<const EdgeId> sigma) {
  if (sigma.empty()) throw InputError("sigma must be nonempty");
  std::vector<EdgeId> s(sigma.begin(), sigma.end());
  std::sort(s.begin(), s.end());
  for (EdgeId e : s)
    if (e < 0 || e >= g.m()) throw InputError("edge id out of range");
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError("sigma has repeats");
  const int len = 2 * ell;
  if (static_cast<int>(s.size()) > len) return 0;
  // every cycle through (a,b) is a unique b->a path of len-1 edges
  auto [a, b] = g.edge(s[0]);
  std::vector<Vertex> path{b};
  std::vector<char> on(g.n(), 0);
  on[a] = on[b] = 1;
  uint64_t count = 0;
  std::function<void()> grow = [&]() {
    Vertex cur = path.back();
    if (static_cast<int>(path.size()) == len - 1) {
      if (!g.adjacent(cur, a)) return;
      path.push_back(a);
      std::vector<EdgeId> ids{s[0]};
      for (size_t i = 0; i + 1 < path.size(); ++i) ids.push_back(g.edge_id(path[i], path[i + 1]));
      std::sort(ids.begin(), ids.end());
      if (std::includes(ids.begin(), ids.end(), s.begin(), s.end())) ++count;
      path.pop_back();
      return;
    }
    for (Vertex w : g.neighbours(cur)) {
      if (on[w]) continue;
      on[w] = 1;
      path.push_back(w);
      grow();
      path.pop_back();
      on[w] = 0;
    }
  };
  grow();
  return count;
}

std::optional<std::vector<Vertex>> find_cycle(const Graph& g, int length) {
  std::optional<std::vector<Vertex>> out;
  for_each_cycle(g, length, [&](std::span<const Vertex> c) {
    out.emplace(c.begin(), c.end());
    return false;
  });
  return out;
}

bool has_cycle(const Graph& g, int length) { return find_cycle(g, length).has_value(); }

bool is_cycle(const Graph& g, std::span<const EdgeId> edges, int length) {
  if (static_cast<int>(edges.size()) != length || length < 3) return false;
  std::vector<EdgeId> ids(edges.begin(), edges.end());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) return false;
  std::vector<std::vector<Vertex>> inc;
  std::vector<Vertex> verts;
  for (EdgeId e : ids) {
    if (e < 0 || e >= g.m()) return false;
    verts.push_back(g.edge(e).u);
    verts.push_back(g.edge(e).v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (static_cast<int>(verts.size()) != length) return false;
  auto local = [&](Vertex v) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  inc.assign(length, {});
  for (EdgeId e : ids) {
    int a = local(g.edge(e).u), b = local(g.edge(e).v);
    inc[a].push_back(b);
    inc[b].push_back(a);
  }
  for (const auto& nb : inc)
    if (nb.size() != 2) return false;
  // 2-regular on `length` vertices: connected iff one walk covers everything
  int prev = -1, cur = 0, steps = 0;
  do {
    int next = inc[cur][0] != prev ? inc[cur][0] : inc[cur][1];
    prev = cur;
    cur = next;
    ++steps;
  } while (cur != 0 && steps <= length);
  return steps == length;
}

uint64_t enumerate_free_graphs(int n, int ell, const std::function<void(uint64_t)>& visit,
                               int n_cap) {
  if (ell < 2) throw InputError("ell must be at least 2");
  if (n < 0) throw InputError("negative vertex count");
  if (n > n_cap || n > 11)
    throw BudgetExceeded("free-graph enumeration refused: n=" + std::to_string(n) +
                         " exceeds cap " + std::to_string(std::min(n_cap, 11)));
  const int pairs = static_cast<int>(num_pairs(n));
  std::vector<Edge> pair(pairs);
  for (int i = 0; i < pairs; ++i) pair[i] = pair_unrank(n, i);
  detail::DynGraph h(n);
  uint64_t count = 0;
  // decide the highest pair first, excluding before including, so masks come
  // out in increasing order
  std::function<void(int, uint64_t)> rec = [&](int idx, uint64_t mask) {
    if (idx < 0) {
      ++count;
      visit(mask);
      return;
    }
    rec(idx - 1, mask);
    auto [u, v] = pair[idx];
    if (h.has_path(u, v, 2 * ell - 1)) return;
    h.add(u, v);
    rec(idx - 1, mask | uint64_t{1} << idx);
    h.remove(u, v);
  };
  rec(pairs - 1, 0);
  return count;
}

std::vector<EdgeId> degree_order(const Graph& g) {
  std::vector<EdgeId> order(g.m());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](EdgeId e) { return g.degree(g.edge(e).u) + g.degree(g.edge(e).v); };
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return key(a) < key(b); });
  return order;
}

FreeSubgraph greedy_free_subgraph(const Graph& g, int ell, const std::vector<EdgeId>& order,
                                  const std::vector<EdgeId>& seed) {
  detail::DynGraph h(g.n());
  std::vector<char> in(g.m(), 0);
  for (EdgeId e : seed) {
    if (in[e]) continue;
    in[e] = 1;
    h.add(g.edge(e).u, g.edge(e).v);
  }
  for (EdgeId e : order) {
    if (in[e]) continue;
    auto [u, v] = g.edge(e);
    if (h.has_path(u, v, 2 * ell - 1)) continue;
    in[e] = 1;
    h.add(u, v);
  }
  FreeSubgraph out;
  for (EdgeId e = 0; e < g.m(); ++e)
    if (in[e]) out.kept.push_back(e);
  out.edges = static_cast<int>(out.kept.size());
  if (has_cycle(g.edge_subgraph(out.kept), 2 * ell))
    throw InvariantViolation("greedy witness contains a 2l-cycle (seed not free?)");
  return out;
}

namespace {

using Bits = std::bitset<256>;

class HittingSetSolver {
 public:
  HittingSetSolver(std::vector<Bits> cycles, int edges, uint64_t max_nodes)
      : cycles_(std::move(cycles)), edges_(edges), max_nodes_(max_nodes) {}

  Bits solve() {
    best_ = greedy();
    best_size_ = static_cast<int>(best_.count());
    branch(Bits{}, Bits{}, 0);
    return best_;
  }

  uint64_t nodes() const { return nodes_; }

 private:
  Bits greedy() const {
    Bits del;
    std::vector<int> hits(edges_);
    for (;;) {
      std::fill(hits.begin(), hits.end(), 0);
      bool any = false;
      for (const auto& c : cycles_) {
        if ((c & del).any()) continue;
        any = true;
        for (int e = 0; e < edges_; ++e)
          if (c[e]) ++hits[e];
      }
      if (!any) return del;
      del.set(static_cast<size_t>(std::max_element(hits.begin(), hits.end()) - hits.begin()));
    }
  }

  void branch(const Bits& del, Bits excl, int ndel) {
    if (++nodes_ > max_nodes_)
      throw BudgetExceeded("exact solver exceeded node budget " + std::to_string(max_nodes_));
    int lb = 0;
    Bits packed;
    int pick = -1;
    size_t pick_size = 0;
    for (size_t i = 0; i < cycles_.size(); ++i) {
      const Bits& c = cycles_[i];
      if ((c & del).any()) continue;
      Bits avail = c & ~excl;
      size_t cnt = avail.count();
      if (cnt == 0) return;
      if (pick < 0 || cnt < pick_size) {
        pick = static_cast<int>(i);
        pick_size = cnt;
      }
      if ((avail & packed).none()) {
        ++lb;
        packed |= avail;
      }
    }
    if (pick < 0) {
      if (ndel < best_size_) {
        best_size_ = ndel;
        best_ = del;
      }
      return;
    }
    if (ndel + lb >= best_size_) return;
    Bits avail = cycles_[pick] & ~excl;
    for (int e = 0; e < edges_; ++e) {
      if (!avail[e]) continue;
      Bits next = del;
      next.set(e);
      branch(next, excl, ndel + 1);
      excl.set(e);
      if (ndel + 1 >= best_size_) return;
    }
  }

  std::vector<Bits> cycles_;
  int edges_;
  uint64_t max_nodes_;
  uint64_t nodes_ = 0;
  Bits best_;
  int best_size_ = 0;
};

}  // namespace

FreeSubgraph max_free_subgraph(const Graph& g, int ell, SolveMode mode, const ExactBudget& budget) {
  if (ell < 2) throw InputError("ell must be at least 2");
  if (mode == SolveMode::greedy) return greedy_free_subgraph(g, ell, degree_order(g));

  CycleSet cycles = enumerate_cycles(g, ell, budget.max_cycles);
  if (cycles.truncated())
    throw BudgetExceeded("exact solver: more than " + std::to_string(budget.max_cycles) + " cycles");
  std::vector<int> local(g.m(), -1);
  std::vector<EdgeId> global;
  for (EdgeId e : cycles.flat())
    if (local[e] < 0) {
      local[e] = static_cast<int>(global.size());
      global.push_back(e);
    }
  const int limit = std::min(budget.max_cycle_edges, 256);
  if (static_cast<int>(global.size()) > limit)
    throw BudgetExceeded("exact solver: " + std::to_string(global.size()) +
                         " edges on cycles exceeds " + std::to_string(limit));
  std::vector<Bits> masks;
  masks.reserve(cycles.size());
  for (size_t i = 0; i < cycles.size(); ++i) {
    Bits b;
    for (EdgeId e : cycles[i]) b.set(local[e]);
    masks.push_back(b);
  }
  HittingSetSolver solver(std::move(masks), static_cast<int>(global.size()), budget.max_nodes);
  Bits del = solver.solve();
  std::vector<char> removed(g.m(), 0);
  for (size_t i = 0; i < global.size(); ++i)
    if (del[i]) removed[global[i]] = 1;
  FreeSubgraph out;
  out.exact = true;
  out.nodes = solver.nodes();
  for (EdgeId e = 0; e < g.m(); ++e)
    if (!removed[e]) out.kept.push_back(e);
  out.edges = static_cast<int>(out.kept.size());
  if (has_cycle(g.edge_subgraph(out.kept), 2 * ell))
    throw InvariantViolation("exact witness contains a 2l-cycle");
  return out;
}

}  // namespace cyclefree
