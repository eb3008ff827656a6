#include "cyclefree/supersat.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>

namespace cyclefree {

namespace {

double klratio(const NbhdParams& p) { return static_cast<double>(p.ell) / (p.ell - 1); }

void check_j(int j, const NbhdParams& p) {
  if (j < 1 || j > 2 * p.ell - 1)
    throw InputError("j=" + std::to_string(j) + " outside [1, 2l-1]");
}

std::vector<EdgeId> sorted_copy(std::span<const EdgeId> s) {
  std::vector<EdgeId> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

// Visits every subset of `items` selected by masks in [1, limit].
template <class F>
void visit_masks(std::span<const EdgeId> items, uint32_t limit, F&& f) {
  std::vector<EdgeId> sub;
  for (uint32_t mask = 1; mask <= limit; ++mask) {
    sub.clear();
    for (size_t i = 0; i < items.size(); ++i)
      if (mask >> i & 1) sub.push_back(items[i]);
    f(std::span<const EdgeId>(sub));
  }
}

}  // namespace

double SupersatParams::cap(int j) const {
  check_j(j, *this);
  if (!cap_override.empty()) {
    if (static_cast<int>(cap_override.size()) != 2 * ell - 1)
      throw InputError("cap override must have 2l-1 entries");
    return cap_override[j - 1];
  }
  return delta_cap(j, *this);
}

SupersatParams SupersatParams::generous(int ell, double k, double n) {
  SupersatParams p = from(NbhdParams::uniform(ell, k, n, 1.0, 1.0, 1.0));
  p.cap_override.assign(2 * ell - 1, 1e18);
  return p;
}

double delta_cap(int j, const NbhdParams& p) {
  check_j(j, p);
  return std::pow(p.k, 2 * p.ell - 1) * std::pow(p.n, 1.0 - 1.0 / p.ell) /
         std::pow(p.delta * std::pow(p.k, klratio(p)), j - 1);
}

double rescaled_cap(int j, const NbhdParams& p) {
  check_j(j, p);
  return std::pow(p.delta, -2.0 * p.ell) *
         std::pow(p.k, 2 * p.ell - j - static_cast<double>(j - 1) / (p.ell - 1)) *
         std::pow(p.n, 1.0 - 1.0 / p.ell);
}

double link_cap(int s_size, int j, const NbhdParams& p) {
  return std::pow(2.0, 2 * p.ell + s_size + 1) * std::pow(p.delta * std::pow(p.k, klratio(p)), j);
}

double paper_target(const NbhdParams& p) {
  return p.delta * std::pow(p.k, 2 * p.ell) * p.n * p.n;
}

EdgeSetKey::EdgeSetKey(std::span<const EdgeId> sorted) {
  if (sorted.size() > e.size()) throw InputError("edge set too large for key (l <= 4)");
  size = static_cast<uint8_t>(sorted.size());
  std::copy(sorted.begin(), sorted.end(), e.begin());
}

bool EdgeSetKey::operator==(const EdgeSetKey& o) const {
  return size == o.size && std::equal(e.begin(), e.begin() + size, o.e.begin());
}

size_t EdgeSetKeyHash::operator()(const EdgeSetKey& k) const {
  uint64_t h = k.size;
  for (int i = 0; i < k.size; ++i) h = mix64(h ^ static_cast<uint32_t>(k.e[i]));
  return static_cast<size_t>(h);
}

CycleHypergraph::CycleHypergraph(const Graph& host, SupersatParams params)
    : host_(&host), params_(std::move(params)) {
  params_.validate();
  if (params_.ell > 4) throw InputError("ell <= 4 supported");
  for (int j = 1; j <= 2 * params_.ell - 1; ++j) {
    double c = std::floor(params_.cap(j) * (1 + 1e-12));
    floor_caps_.push_back(c >= 9e18 ? std::numeric_limits<int64_t>::max()
                                    : static_cast<int64_t>(c));
  }
}

template <class F>
void CycleHypergraph::for_each_subset(std::span<const EdgeId> sorted, F&& f) const {
  visit_masks(sorted, (uint32_t{1} << sorted.size()) - 2, f);
}

bool CycleHypergraph::contains(std::span<const EdgeId> sorted_cycle) const {
  if (static_cast<int>(sorted_cycle.size()) != 2 * ell()) return false;
  return members_.count(EdgeSetKey(sorted_cycle)) > 0;
}

int64_t CycleHypergraph::degree(std::span<const EdgeId> sigma) const {
  auto s = sorted_copy(sigma);
  if (s.empty() || s.size() > 8) return 0;
  if (static_cast<int>(s.size()) == 2 * ell()) return contains(s) ? 1 : 0;
  auto it = table_.find(EdgeSetKey(s));
  return it == table_.end() ? 0 : it->second;
}

std::optional<std::vector<EdgeId>> CycleHypergraph::first_violation(
    std::span<const EdgeId> sorted_cycle) const {
  std::optional<std::vector<EdgeId>> best;
  for_each_subset(sorted_cycle, [&](std::span<const EdgeId> s) {
    int j = static_cast<int>(s.size());
    auto it = table_.find(EdgeSetKey(s));
    int64_t d = it == table_.end() ? 0 : it->second;
    if (static_cast<double>(d + 1) <= params_.cap(j)) return;
    std::vector<EdgeId> v(s.begin(), s.end());
    if (!best || v.size() < best->size() || (v.size() == best->size() && v < *best)) best = v;
  });
  return best;
}

bool CycleHypergraph::addable(std::span<const EdgeId> sorted_cycle) const {
  return !first_violation(sorted_cycle).has_value();
}

void CycleHypergraph::add_cycle(std::span<const EdgeId> edges) {
  auto c = sorted_copy(edges);
  if (!is_cycle(*host_, c, 2 * ell())) throw InputError("not a 2l-cycle of the host");
  if (contains(c)) throw InputError("duplicate cycle");
  if (auto bad = first_violation(c)) {
    std::string s;
    for (EdgeId e : *bad) s += (s.empty() ? "" : ",") + std::to_string(e);
    throw GoodnessViolation(*bad, "goodness violated by sigma {" + s + "}");
  }
  edges_.push_back(c);
  members_.emplace(EdgeSetKey(c), 1);
  for_each_subset(c, [&](std::span<const EdgeId> s) {
    int64_t& d = table_[EdgeSetKey(s)];
    int64_t cap = floor_caps_[s.size() - 1];
    if (d < cap && d + 1 >= cap) log_.push_back({{s.begin(), s.end()}, edges_.size()});
    ++d;
  });
}

bool CycleHypergraph::saturated(std::span<const EdgeId> sorted_set) const {
  int j = static_cast<int>(sorted_set.size());
  if (j < 1 || j >= 2 * ell()) return false;
  auto it = table_.find(EdgeSetKey(sorted_set));
  int64_t d = it == table_.end() ? 0 : it->second;
  return d >= floor_caps_[j - 1];
}

bool CycleHypergraph::in_link1(std::span<const EdgeId> s, EdgeId e) const {
  if (std::find(s.begin(), s.end(), e) != s.end()) return false;
  if (s.size() > 16) throw InputError("in_link1: set too large");
  auto base = sorted_copy(s);
  bool hit = false;
  std::vector<EdgeId> u;
  visit_masks(base, (uint32_t{1} << base.size()) - 1, [&](std::span<const EdgeId> tau) {
    if (hit || static_cast<int>(tau.size()) + 1 >= 2 * ell()) return;
    u.assign(tau.begin(), tau.end());
    u.insert(std::upper_bound(u.begin(), u.end(), e), e);
    hit = saturated(u);
  });
  return hit;
}

std::vector<std::vector<EdgeId>> CycleHypergraph::saturated_sets() const {
  std::vector<std::vector<EdgeId>> out;
  for (const auto& [k, d] : table_)
    if (d >= floor_caps_[k.size - 1]) out.push_back(k.vec());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<EdgeId>> CycleHypergraph::link(std::span<const EdgeId> s, int j) const {
  for (int64_t c : floor_caps_)
    if (c < 1) throw InputError("link requires every floor cap to be at least 1");
  auto base = sorted_copy(s);
  std::vector<std::vector<EdgeId>> out;
  if (j < 1) return out;
  for (const auto& [k, d] : table_) {
    if (d < floor_caps_[k.size - 1]) continue;
    std::vector<EdgeId> diff;
    size_t inter = 0;
    for (EdgeId e : k.view()) {
      if (std::binary_search(base.begin(), base.end(), e))
        ++inter;
      else
        diff.push_back(e);
    }
    if (inter > 0 && static_cast<int>(diff.size()) == j) out.push_back(std::move(diff));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

using Table = std::unordered_map<EdgeSetKey, int64_t, EdgeSetKeyHash>;

Table recount(const std::vector<std::vector<EdgeId>>& edges) {
  Table t;
  for (const auto& c : edges)
    visit_masks(c, (uint32_t{1} << c.size()) - 2,
                [&](std::span<const EdgeId> s) { ++t[EdgeSetKey(s)]; });
  return t;
}

void fill_ratios(const Table& t, const SupersatParams& p, DegreeAudit& a) {
  a.max_ratio.assign(2 * p.ell - 1, 0.0);
  for (const auto& [k, d] : t) {
    double cap = p.cap(k.size);
    a.max_ratio[k.size - 1] = std::max(a.max_ratio[k.size - 1], d / cap);
    if (static_cast<double>(d) > cap) a.good = false;
  }
}

}  // namespace

DegreeAudit CycleHypergraph::audit() const {
  DegreeAudit a;
  for (const auto& c : edges_)
    if (!is_cycle(*host_, c, 2 * ell())) a.cycles_ok = false;
  Table fresh = recount(edges_);
  if (fresh.size() != table_.size()) a.table_ok = false;
  for (const auto& [k, d] : fresh) {
    auto it = table_.find(k);
    if (it == table_.end() || it->second != d) a.table_ok = false;
  }
  fill_ratios(fresh, params_, a);
  for (const auto& ev : log_) {
    for (size_t i = ev.after_edges; i < edges_.size(); ++i)
      if (std::includes(edges_[i].begin(), edges_[i].end(), ev.sigma.begin(), ev.sigma.end()))
        a.events_ok = false;
  }
  return a;
}

void CycleHypergraph::dump(std::ostream& out) const {
  out << host_->n() << ' ' << ell() << ' ' << edges_.size() << '\n';
  for (const auto& c : edges_) {
    for (size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    out << '\n';
  }
}

std::vector<std::vector<EdgeId>> read_hyperedges(std::istream& in, int* n_out, int* ell_out) {
  long long n, ell, m;
  if (!(in >> n >> ell >> m) || n < 0 || ell < 2 || m < 0)
    throw InputError("hypergraph dump: bad header");
  std::vector<std::vector<EdgeId>> out(m, std::vector<EdgeId>(2 * ell));
  for (auto& c : out)
    for (auto& e : c)
      if (!(in >> e)) throw InputError("hypergraph dump: truncated");
  if (n_out) *n_out = static_cast<int>(n);
  if (ell_out) *ell_out = static_cast<int>(ell);
  return out;
}

DegreeAudit audit_hyperedges(const Graph& host, const SupersatParams& params,
                             const std::vector<std::vector<EdgeId>>& edges) {
  DegreeAudit a;
  std::vector<std::vector<EdgeId>> sorted;
  for (const auto& c : edges) {
    if (!is_cycle(host, c, 2 * params.ell)) a.cycles_ok = false;
    sorted.push_back(sorted_copy(c));
  }
  auto dedup = sorted;
  std::sort(dedup.begin(), dedup.end());
  if (std::adjacent_find(dedup.begin(), dedup.end()) != dedup.end()) a.table_ok = false;
  if (a.cycles_ok) fill_ratios(recount(sorted), params, a);
  return a;
}

std::optional<std::vector<EdgeId>> find_addable_cycle_exhaustive(const CycleHypergraph& h,
                                                                 const CycleSet& cycles) {
  for (size_t i = 0; i < cycles.size(); ++i) {
    auto c = cycles[i];
    if (!h.contains(c) && h.addable(c)) return std::vector<EdgeId>(c.begin(), c.end());
  }
  return std::nullopt;
}

namespace {

std::vector<EdgeId> edges_of(const Graph& g, const std::vector<Vertex>& walk) {
  std::vector<EdgeId> e;
  for (size_t i = 0; i + 1 < walk.size(); ++i) e.push_back(g.edge_id(walk[i], walk[i + 1]));
  std::sort(e.begin(), e.end());
  return e;
}

// Some nonempty sigma in q and nonempty tau in p with sigma + tau saturated.
// With whole_q only sigma = q is tried.
bool crosses_saturated(const CycleHypergraph& h, const std::vector<EdgeId>& q,
                       const std::vector<EdgeId>& p, bool whole_q) {
  const int r = 2 * h.ell();
  bool hit = false;
  std::vector<EdgeId> u;
  uint32_t qfull = (uint32_t{1} << q.size()) - 1;
  uint32_t pfull = (uint32_t{1} << p.size()) - 1;
  for (uint32_t qm = whole_q ? qfull : 1; qm <= qfull && !hit; ++qm)
    for (uint32_t pm = 1; pm <= pfull && !hit; ++pm) {
      if (std::popcount(qm) + std::popcount(pm) >= r) continue;
      u.clear();
      for (size_t i = 0; i < q.size(); ++i)
        if (qm >> i & 1) u.push_back(q[i]);
      for (size_t i = 0; i < p.size(); ++i)
        if (pm >> i & 1) u.push_back(p[i]);
      std::sort(u.begin(), u.end());
      hit = h.saturated(u);
    }
  return hit;
}

}  // namespace

FindResult find_addable_cycle_paper(const CycleHypergraph& h, const PaperOptions& opts) {
  const Graph& g = h.host();
  const SupersatParams& p = h.params();
  const int ell = p.ell;
  FindResult r;
  GraphT tg = t_of_graph(g, p);
  if (!tg.t) return r;
  const int t = *tg.t;
  r.diag.t = t;

  for (Vertex x : tg.argmin) {
    PaperDiagnostics d;
    d.t = t;
    d.x = x;
    auto a = concentrated_at(g, x, t, p);
    if (!a) continue;
    PathFamily bal = build_balanced(g, *a, h, p);
    PathFamily ref = refine_balanced(bal, p);
    d.balanced_paths = bal.size();
    d.refined_paths = ref.size();
    d.infeasible = ref.infeasible;
    d.root_short = ref.root_short;
    d.d_cap = claim4_cap(p, t);
    d.claim1_lower = claim1_lower(p, t);
    if (ref.empty()) {
      r.diag = d;
      continue;
    }
    const auto& B = ref.base().levels;
    std::vector<std::vector<char>> in(t + 1, std::vector<char>(g.n(), 0));
    for (int i = 0; i <= t; ++i)
      for (Vertex v : B[i]) in[i][v] = 1;
    auto floor1 = [&](double v) {
      double f = std::floor(v * (1 + 1e-12));
      if (f < 1) {
        d.infeasible = true;
        f = 1;
      }
      return static_cast<size_t>(f);
    };
    const size_t xf = floor1(refined_forward_threshold(p, t));
    const size_t xb = floor1(refined_back_threshold(p, t));
    const size_t qsize = floor1(refined_path_threshold(p, t));
    std::map<std::pair<int, Vertex>, std::vector<Vertex>> X;
    for (int i = 0; i <= t; ++i) {
      int target = i < t ? i + 1 : t - 1;
      size_t cap = i < t ? xf : xb;
      for (Vertex u : B[i]) {
        auto& s = X[{i, u}];
        for (Vertex w : g.neighbours(u)) {
          if (s.size() == cap) break;
          if (in[target][w]) s.push_back(w);
        }
      }
    }
    std::map<Vertex, std::vector<const Path*>> returns;
    for (const auto& q : ref.paths()) {
      auto& lst = returns[q.back()];
      if (lst.size() < qsize) lst.push_back(&q);
    }

    const int len = 2 * ell - t;
    auto s_of = [&](int i) { return i <= t ? i : ((i - t) % 2 == 1 ? t - 1 : t); };
    std::set<std::vector<EdgeId>> collected;
    std::optional<std::vector<EdgeId>> found;
    bool stop = false;
    std::vector<Vertex> walk{x};
    std::vector<EdgeId> used;

    auto process = [&]() {
      if (++d.step1_paths > opts.max_step1_paths) {
        stop = true;
        return;
      }
      const Vertex end = walk.back();
      auto ep = edges_of(g, walk);
      auto it = returns.find(end);
      if (it == returns.end()) return;
      size_t forbidden_returns = 0;
      for (const Path* q : it->second) {
        auto eq = edges_of(g, *q);
        bool disjoint = true;
        for (EdgeId e : eq)
          if (std::binary_search(ep.begin(), ep.end(), e)) disjoint = false;
        if (disjoint && crosses_saturated(h, eq, ep, true)) ++forbidden_returns;
        bool clash = false;
        for (int i = 1; i < len && !clash; ++i)
          clash = std::find(q->begin(), q->end(), walk[i]) != q->end();
        if (clash || !disjoint || crosses_saturated(h, eq, ep, false)) continue;
        std::vector<EdgeId> cyc = ep;
        cyc.insert(cyc.end(), eq.begin(), eq.end());
        std::sort(cyc.begin(), cyc.end());
        if (!is_cycle(g, cyc, 2 * ell) || !h.addable(cyc)) continue;
        collected.insert(cyc);
        if (!found && !h.contains(cyc)) {
          found = cyc;
          if (!opts.full_scan) stop = true;
        }
        if (stop) break;
      }
      if (static_cast<double>(forbidden_returns) >= 0.25 * refined_path_threshold(p, t))
        ++d.d_size;
    };

    std::function<void(int)> grow = [&](int i) {
      if (stop) return;
      if (i == len) {
        process();
        return;
      }
      auto it = X.find({s_of(i), walk[i]});
      if (it == X.end()) return;
      for (Vertex w : it->second) {
        if (std::find(walk.begin(), walk.end(), w) != walk.end()) continue;
        EdgeId e = g.edge_id(walk[i], w);
        const EdgeId single[1] = {e};
        if (h.saturated(single) || h.in_link1(used, e)) continue;
        walk.push_back(w);
        used.push_back(e);
        grow(i + 1);
        used.pop_back();
        walk.pop_back();
        if (stop) return;
      }
    };
    grow(0);
    d.exhausted = !stop;
    d.cycles_collected = collected.size();
    d.constants_violated = static_cast<double>(d.d_size) > d.d_cap;
    r.diag = d;
    if (found) {
      r.cycle = found;
      return r;
    }
  }
  return r;
}

FindResult find_addable_cycle(const CycleHypergraph& h, Strategy strategy,
                              const PaperOptions& opts) {
  if (strategy == Strategy::paper) return find_addable_cycle_paper(h, opts);
  FindResult r;
  r.cycle = find_addable_cycle_exhaustive(h, enumerate_cycles(h.host(), h.ell()));
  return r;
}

BuildResult build_good_hypergraph(const Graph& g, const SupersatParams& params, double target,
                                  Strategy strategy, const PaperOptions& opts) {
  if (target < 0) throw InputError("target must be nonnegative");
  BuildResult out{CycleHypergraph(g, params), {}};
  CycleHypergraph& h = out.h;
  auto reached = [&]() { return static_cast<double>(h.size()) >= target; };
  if (strategy == Strategy::exhaustive) {
    if (!reached()) {
      CycleSet cycles = enumerate_cycles(g, params.ell);
      // saturation is monotone, so a cycle refused once stays refused
      for (size_t i = 0; i < cycles.size() && !reached(); ++i)
        if (h.addable(cycles[i])) h.add_cycle(cycles[i]);
    }
  } else {
    while (!reached()) {
      FindResult f = find_addable_cycle_paper(h, opts);
      ++out.report.paper_rounds;
      out.report.last_diag = f.diag;
      if (!f.cycle) break;
      h.add_cycle(*f.cycle);
    }
  }
  BuildReport& rep = out.report;
  rep.edges = h.size();
  rep.target = target;
  rep.target_met = reached();
  rep.strategy = strategy;
  rep.max_ratio = h.audit().max_ratio;
  for (int j = 1; j <= 2 * params.ell - 1; ++j) rep.rescaled_caps.push_back(rescaled_cap(j, params));
  return out;
}

MjBranches m_of_j_branches(const NbhdParams& p, int t, int j) {
  const double e = p.eps_at(t);
  const double lead = std::pow(2.0 * p.ell, 2 * p.ell);
  const double fwd = e * p.k * std::pow(p.n, 1.0 / p.ell);
  const double back = e * std::pow(p.k, klratio(p));
  return {lead * std::pow(fwd, p.ell - 1) * std::pow(back, p.ell - t - j),
          lead * std::pow(fwd, 2 * p.ell - t - j - 1)};
}

double m_of_j(const NbhdParams& p, int t, int j) {
  if (t < 2 || t > p.ell) throw InputError("t out of range");
  if (j < 1 || j >= 2 * p.ell - t) throw InputError("j out of range for m(j)");
  auto b = m_of_j_branches(p, t, j);
  return j <= p.ell - t ? b.small_j : b.large_j;
}

double cycle_family_target(const NbhdParams& p) {
  return 4.0 * p.ell * p.delta * std::pow(p.k, 2 * p.ell) * p.n;
}

Inequality mj_inequality(const NbhdParams& p, int t, int j) {
  const double e = p.eps_at(t);
  double lhs = p.delta * m_of_j(p, t, j) * std::pow(p.k, j * klratio(p));
  double rhs = std::pow(e * p.k * std::pow(p.n, 1.0 / p.ell), p.ell - 1) *
               std::pow(e * std::pow(p.k, klratio(p)), p.ell - t);
  return {lhs, rhs};
}

double claim1_lower(const NbhdParams& p, int t) {
  const double e = p.eps_at(t);
  return 0.5 * std::pow(e * p.k * std::pow(p.n, 1.0 / p.ell), p.ell) *
         std::pow(e * std::pow(p.k, klratio(p)), p.ell - t);
}

double claim4_cap(const NbhdParams& p, int t) { return 0.5 * claim1_lower(p, t); }

PreprocessResult min_degree_stage(const Graph& g, const NbhdParams& p) {
  PreprocessResult r;
  r.pruned = min_degree_prune(g, forward_threshold(p, p.ell));
  r.destroyed = r.pruned.graph.n() == 0;
  return r;
}

}  // namespace cyclefree
