#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "cyclefree/cycles.hpp"
#include "cyclefree/errors.hpp"
#include "cyclefree/paths.hpp"

namespace cyclefree {

// Optional cap_override[j-1] replaces Delta^{(j)} (relaxed desk-scale runs).
struct SupersatParams : NbhdParams {
  std::vector<double> cap_override;

  double cap(int j) const;
  static SupersatParams from(const NbhdParams& p) { return SupersatParams{p, {}}; }
  static SupersatParams generous(int ell, double k, double n);  // every cap huge
};

// k^{2l-1} n^{1-1/l} / (delta k^{l/(l-1)})^{j-1}
double delta_cap(int j, const NbhdParams& p);
// delta^{-2l} k^{2l-j-(j-1)/(l-1)} n^{1-1/l}; an upper bound for delta_cap when delta <= 1
double rescaled_cap(int j, const NbhdParams& p);
double link_cap(int s_size, int j, const NbhdParams& p);  // 2^{2l+|S|+1} (delta k^{l/(l-1)})^j
double paper_target(const NbhdParams& p);                  // delta k^{2l} n^2

struct EdgeSetKey {
  std::array<EdgeId, 8> e{};
  uint8_t size = 0;

  EdgeSetKey() = default;
  explicit EdgeSetKey(std::span<const EdgeId> sorted);
  std::span<const EdgeId> view() const { return {e.data(), size}; }
  std::vector<EdgeId> vec() const { return {e.begin(), e.begin() + size}; }
  bool operator==(const EdgeSetKey& o) const;
};

struct EdgeSetKeyHash {
  size_t operator()(const EdgeSetKey& k) const;
};

class GoodnessViolation : public InputError {
 public:
  GoodnessViolation(std::vector<EdgeId> sigma, const std::string& what)
      : InputError(what), sigma_(std::move(sigma)) {}
  const std::vector<EdgeId>& sigma() const { return sigma_; }

 private:
  std::vector<EdgeId> sigma_;
};

struct SaturationEvent {
  std::vector<EdgeId> sigma;
  size_t after_edges;  // e(H) at the moment sigma became saturated
};

struct DegreeAudit {
  bool cycles_ok = true;
  bool table_ok = true;
  bool good = true;
  bool events_ok = true;
  std::vector<double> max_ratio;  // index j-1: max d(sigma) / Delta^{(j)}
  bool ok() const { return cycles_ok && table_ok && good && events_ok; }
};

// 2l-uniform hypergraph on E(host) whose edges are 2l-cycles of the host.
class CycleHypergraph final : public ForbiddenView {
 public:
  CycleHypergraph(const Graph& host, SupersatParams params);

  const Graph& host() const { return *host_; }
  const SupersatParams& params() const { return params_; }
  int ell() const { return params_.ell; }
  size_t size() const { return edges_.size(); }
  const std::vector<std::vector<EdgeId>>& hyperedges() const { return edges_; }
  bool contains(std::span<const EdgeId> sorted_cycle) const;

  int64_t degree(std::span<const EdgeId> sigma) const;
  int64_t floor_cap(int j) const { return floor_caps_[j - 1]; }

  // Smallest (then lexicographically first) subset whose degree would pass its
  // cap if the cycle were added.
  std::optional<std::vector<EdgeId>> first_violation(std::span<const EdgeId> sorted_cycle) const;
  bool addable(std::span<const EdgeId> sorted_cycle) const;

  // Throws InputError (not a cycle, duplicate) or GoodnessViolation; H is
  // unchanged on error.
  void add_cycle(std::span<const EdgeId> edges);

  bool saturated(std::span<const EdgeId> sorted_set) const override;
  bool in_link1(std::span<const EdgeId> s, EdgeId e) const override;
  std::vector<std::vector<EdgeId>> saturated_sets() const;

  // Exact L^{(j)}(S). Requires every floor cap to be at least 1.
  std::vector<std::vector<EdgeId>> link(std::span<const EdgeId> s, int j) const;

  const std::vector<SaturationEvent>& saturation_log() const { return log_; }
  DegreeAudit audit() const;
  void dump(std::ostream& out) const;

 private:
  template <class F>
  void for_each_subset(std::span<const EdgeId> sorted, F&& f) const;

  const Graph* host_;
  SupersatParams params_;
  std::vector<int64_t> floor_caps_;
  std::vector<std::vector<EdgeId>> edges_;
  std::unordered_map<EdgeSetKey, int64_t, EdgeSetKeyHash> table_;
  std::unordered_map<EdgeSetKey, char, EdgeSetKeyHash> members_;
  std::vector<SaturationEvent> log_;
};

std::vector<std::vector<EdgeId>> read_hyperedges(std::istream& in, int* n_out, int* ell_out);
DegreeAudit audit_hyperedges(const Graph& host, const SupersatParams& params,
                             const std::vector<std::vector<EdgeId>>& edges);

enum class Strategy { exhaustive, paper };

struct PaperDiagnostics {
  std::optional<int> t;
  Vertex x = -1;
  size_t balanced_paths = 0;
  size_t refined_paths = 0;
  bool infeasible = false;      // some size floored at 1
  bool root_short = false;
  size_t step1_paths = 0;
  size_t cycles_collected = 0;  // |C| over the generated P
  size_t d_size = 0;            // paths P with many forbidden returns
  double d_cap = 0.0;           // Claim 4 cap
  double claim1_lower = 0.0;
  bool constants_violated = false;
  bool exhausted = false;       // Step 1 ran to STOP
};

struct FindResult {
  std::optional<std::vector<EdgeId>> cycle;
  PaperDiagnostics diag;
};

struct PaperOptions {
  bool full_scan = false;          // keep generating after the first emitted cycle
  size_t max_step1_paths = 200000;
};

FindResult find_addable_cycle(const CycleHypergraph& h, Strategy strategy,
                              const PaperOptions& opts = {});
FindResult find_addable_cycle_paper(const CycleHypergraph& h, const PaperOptions& opts = {});
std::optional<std::vector<EdgeId>> find_addable_cycle_exhaustive(const CycleHypergraph& h,
                                                                 const CycleSet& cycles);

struct BuildReport {
  size_t edges = 0;
  double target = 0.0;
  bool target_met = false;
  Strategy strategy = Strategy::exhaustive;
  std::vector<double> max_ratio;     // index j-1
  std::vector<double> rescaled_caps;  // index j-1
  size_t paper_rounds = 0;
  PaperDiagnostics last_diag;
};

struct BuildResult {
  CycleHypergraph h;
  BuildReport report;
};

BuildResult build_good_hypergraph(const Graph& g, const SupersatParams& params, double target,
                                  Strategy strategy, const PaperOptions& opts = {});

// Claim bounds of the cycle-finding argument.
double m_of_j(const NbhdParams& p, int t, int j);
struct MjBranches {
  double small_j;  // 1 <= j <= l-t formula
  double large_j;  // l-t < j < 2l-t formula
};
MjBranches m_of_j_branches(const NbhdParams& p, int t, int j);
double cycle_family_target(const NbhdParams& p);  // 4 l delta k^{2l} n
struct Inequality {
  double lhs;
  double rhs;
  bool holds() const { return lhs <= rhs; }
};
Inequality mj_inequality(const NbhdParams& p, int t, int j);
double claim1_lower(const NbhdParams& p, int t);
double claim4_cap(const NbhdParams& p, int t);

// Optional pre-processing: prune to minimum degree C eps(l) k n^{1/l}.
struct PreprocessResult {
  Pruned pruned;
  bool destroyed = false;  // nothing left
};
PreprocessResult min_degree_stage(const Graph& g, const NbhdParams& p);

}  // namespace cyclefree
