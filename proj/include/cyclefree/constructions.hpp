#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cyclefree/graph.hpp"
#include "cyclefree/rng.hpp"

namespace cyclefree {

// Matchings (including the empty one) of K_{a,b}.
uint64_t count_matchings(int a, int b);
uint64_t count_matchings_brute(int a, int b);  // edge-subset enumeration, a*b <= 25

using Matching = std::vector<std::pair<int, int>>;  // (left, right), sorted by left
// All matchings of K_{a,b}, ordered by size then lexicographically.
std::vector<Matching> canonical_matchings(int a, int b);

enum class MatchingMode { enumerate_all, sample, fixed };

struct BlowupSpec {
  Graph base;
  int b = 3;
  MatchingMode mode = MatchingMode::fixed;
  std::vector<uint64_t> indices;  // per base edge, fixed mode
  uint64_t seed = 0;              // sample mode

  // One matching index per base edge; enumerate_all yields choice `which` in
  // mixed-radix order with the last edge varying fastest.
  std::vector<uint64_t> choice(uint64_t which = 0) const;
  double log2_choices() const;  // e(base) log2 count_matchings(b,b)
};

Graph blow_up(const Graph& base, int b, const std::vector<uint64_t>& choice);
Graph blow_up(const BlowupSpec& spec, uint64_t which = 0);

struct FamilyCheck {
  bool free = true;
  int length = 0;               // violating length
  std::vector<Vertex> witness;  // first cycle found
};
FamilyCheck verify_family_free(const Graph& g, const std::vector<int>& lengths);

// Cycle lengths 3..ell together with 2 ell.
std::vector<int> blowup_family(int ell);

// Random greedy graph avoiding every listed cycle length.
Graph random_family_free(int n, const std::vector<int>& lengths, const Rng& rng);

struct IntersectBlowup {
  int a = 1;             // block size
  Graph sampled;         // G(n, p) on a |V(base)| vertices
  Graph graph;           // union of the retained matchings
  double target = 0.0;   // eps^2 p^{1/l} n^{1+1/l}
  bool shortfall = false;
  bool free = true;      // verified C_{2l}-free
};

IntersectBlowup random_intersect_blowup(const Graph& base, int ell, double p, double eps,
                                        const Rng& rng);
// Same construction over an already sampled host; vertices beyond a |V(base)|
// stay isolated.
Graph intersect_blowup_on(const Graph& host, const Graph& base, int a);

}  // namespace cyclefree
