#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cyclefree/errors.hpp"
#include "cyclefree/graph.hpp"

namespace cyclefree {

struct KstParams {
  int s = 2;
  int t = 2;
  double k = 1.0;
  double n = 1.0;
  double delta = 1.0;
  std::map<std::pair<int, int>, double> cap_override;  // (i, j) -> D^{(i,j)}

  void validate() const;
  // k from e(G) = k n^{2-1/s}
  static KstParams for_graph(const Graph& g, int s, int t, double delta);
  static KstParams generous(const Graph& g, int s, int t);  // every cap huge
};

// (delta k n^{(s-1)/s})^{s-i} (delta k^s)^{t-j}
double dij_cap(int i, int j, const KstParams& p);
double kst_cap(int i, int j, const KstParams& p);  // override or dij_cap
double kst_tau(const KstParams& p);                // max{k^{-s}, k^{-1} n^{-(s-1)^2/(s(st-1))}}
double x_link_cap(const KstParams& p);             // delta k n^{1-1/s}
double y_link_cap(const KstParams& p);             // delta k^s

struct VertexPair {
  std::vector<Vertex> S;  // sorted
  std::vector<Vertex> T;  // sorted
  auto operator<=>(const VertexPair&) const = default;
};

// Ordered pairs (S, T), |S| = s, |T| = t, disjoint, G[S,T] complete bipartite;
// S then T in lexicographic order.
std::vector<VertexPair> enumerate_kst(const Graph& g, int s, int t);

struct PairKey {
  std::array<Vertex, 4> a{};
  std::array<Vertex, 4> b{};
  uint8_t na = 0;
  uint8_t nb = 0;

  PairKey() = default;
  PairKey(std::span<const Vertex> sorted_a, std::span<const Vertex> sorted_b);
  std::vector<Vertex> left() const { return {a.begin(), a.begin() + na}; }
  std::vector<Vertex> right() const { return {b.begin(), b.begin() + nb}; }
  bool operator==(const PairKey& o) const;
};

struct PairKeyHash {
  size_t operator()(const PairKey& k) const;
};

class KstViolation : public InputError {
 public:
  KstViolation(VertexPair pair, const std::string& what) : InputError(what), pair_(std::move(pair)) {}
  const VertexPair& pair() const { return pair_; }

 private:
  VertexPair pair_;
};

struct KstAudit {
  bool pairs_ok = true;  // complete bipartite, disjoint, distinct
  bool table_ok = true;  // incremental table equals recount
  bool good = true;
  bool events_ok = true;  // nothing added on top of a saturated pair
  bool ok() const { return pairs_ok && table_ok && good && events_ok; }
};

struct LinkSets {
  std::vector<Vertex> X;
  std::vector<Vertex> Y;
  double x_cap = 0.0;
  double y_cap = 0.0;
};

class PairHypergraph {
 public:
  PairHypergraph(const Graph& host, KstParams params);

  const Graph& host() const { return *host_; }
  const KstParams& params() const { return params_; }
  int s() const { return params_.s; }
  int t() const { return params_.t; }
  size_t size() const { return pairs_.size(); }
  const std::vector<VertexPair>& pairs() const { return pairs_; }
  bool contains(const VertexPair& p) const;

  int64_t degree(std::span<const Vertex> A, std::span<const Vertex> B) const;
  int64_t floor_cap(int i, int j) const { return floor_caps_[(i - 1) * params_.t + (j - 1)]; }
  bool saturated(std::span<const Vertex> A, std::span<const Vertex> B) const;
  std::vector<VertexPair> saturated_pairs() const;

  // Smallest saturated sub-pair (by |A|+|B|, then lexicographic), if any.
  std::optional<VertexPair> first_violation(const VertexPair& p) const;
  bool good(const VertexPair& p) const { return !first_violation(p); }
  bool addable(const VertexPair& p) const { return !contains(p) && good(p); }
  // Throws InputError (shape, duplicate) or KstViolation; unchanged on error.
  void add(const VertexPair& p);

  LinkSets links(std::span<const Vertex> A, std::span<const Vertex> B) const;

  // Stored pairs whose K_{s,t} edge set contains sigma.
  int64_t sigma_degree(std::span<const EdgeId> sigma) const;

  KstAudit audit() const;
  void dump(std::ostream& out) const;
  // Sub-pairs (A,B) with the step at which they became saturated.
  const std::vector<std::pair<VertexPair, size_t>>& saturation_log() const { return log_; }

 private:
  template <class F>
  void for_each_subpair(const VertexPair& p, F&& f) const;

  const Graph* host_;
  KstParams params_;
  std::vector<int64_t> floor_caps_;
  std::vector<VertexPair> pairs_;
  std::unordered_map<PairKey, int64_t, PairKeyHash> table_;
  std::unordered_map<PairKey, char, PairKeyHash> members_;
  std::vector<std::pair<VertexPair, size_t>> log_;
};

struct SigmaCap {
  int64_t degree = 0;
  double cap = 0.0;  // max over ij >= |sigma| of D^{(i,j)}
};
SigmaCap kst_codegree_translate(const PairHypergraph& h, std::span<const EdgeId> sigma);

enum class KstStrategy { exhaustive, greedy };

struct KstBuildReport {
  size_t pairs = 0;
  double target = 0.0;
  bool target_met = false;
  size_t saturated_edges = 0;  // host edges {u,v} with ({u},{v}) or ({v},{u}) saturated
  double max_x_ratio = 0.0;    // |X| / x cap over probed links
  double max_y_ratio = 0.0;
  KstAudit audit;
};

struct KstBuild {
  PairHypergraph h;
  KstBuildReport report;
};

KstBuild build_good_kst(const Graph& g, const KstParams& params, double target,
                        KstStrategy strategy);

std::vector<VertexPair> read_pairs(std::istream& in, int* s_out, int* t_out);

}  // namespace cyclefree
