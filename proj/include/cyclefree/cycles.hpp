#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cyclefree/graph.hpp"

namespace cyclefree {

// All 2l-cycles of a graph, each stored as its sorted EdgeId tuple. Members are
// kept in lexicographic order of those tuples.
class CycleSet {
 public:
  CycleSet() = default;
  CycleSet(int ell, std::vector<EdgeId> flat, bool truncated);

  int ell() const { return ell_; }
  int length() const { return 2 * ell_; }
  size_t size() const { return flat_.size() / (2 * ell_); }
  bool empty() const { return flat_.empty(); }
  bool truncated() const { return truncated_; }
  std::span<const EdgeId> operator[](size_t i) const {
    return {flat_.data() + i * length(), static_cast<size_t>(length())};
  }
  bool contains(std::span<const EdgeId> sorted_edges) const;
  const std::vector<EdgeId>& flat() const { return flat_; }

 private:
  int ell_ = 2;
  std::vector<EdgeId> flat_;
  bool truncated_ = false;
};

// Visits every cycle of the given length once, as a vertex sequence starting at
// its smallest vertex with second vertex < last vertex. Return false to stop.
void for_each_cycle(const Graph& g, int length,
                    const std::function<bool(std::span<const Vertex>)>& visit);

CycleSet enumerate_cycles(const Graph& g, int ell, std::optional<size_t> cap = std::nullopt);
uint64_t count_cycles(const Graph& g, int length);
uint64_t count_four_cycles(const Graph& g);  // via co-degrees
uint64_t count_cycles_through(const Graph& g, int ell, std::span<const EdgeId> sigma);

std::optional<std::vector<Vertex>> find_cycle(const Graph& g, int length);
bool has_cycle(const Graph& g, int length);

std::vector<EdgeId> cycle_edge_ids(const Graph& g, std::span<const Vertex> cycle);
// True iff the edges form one simple cycle of the given length in g.
bool is_cycle(const Graph& g, std::span<const EdgeId> edges, int length);

// Canonical order is increasing pair_mask. Returns the number visited.
uint64_t enumerate_free_graphs(int n, int ell, const std::function<void(uint64_t)>& visit,
                               int n_cap = 7);

enum class SolveMode { exact, greedy };

struct ExactBudget {
  int max_cycle_edges = 256;   // edges lying on some cycle
  uint64_t max_nodes = 20'000'000;
  size_t max_cycles = 2'000'000;
};

struct FreeSubgraph {
  int edges = 0;
  std::vector<EdgeId> kept;  // EdgeIds of the host
  bool exact = false;
  uint64_t nodes = 0;
};

FreeSubgraph max_free_subgraph(const Graph& g, int ell, SolveMode mode,
                               const ExactBudget& budget = {});

// Adds host edges in the given order whenever no 2l-cycle closes. The seed
// edges must already span a C_{2l}-free subgraph; they are kept.
FreeSubgraph greedy_free_subgraph(const Graph& g, int ell, const std::vector<EdgeId>& order,
                                  const std::vector<EdgeId>& seed = {});
std::vector<EdgeId> degree_order(const Graph& g);

}  // namespace cyclefree
