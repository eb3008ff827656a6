#include "cyclefree/paths.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <set>

#include "cyclefree/errors.hpp"

namespace cyclefree {

double NbhdParams::eps_at(int t) const {
  if (t < 1 || t > static_cast<int>(eps.size()))
    throw InputError("eps(t) requested for t=" + std::to_string(t));
  return eps[t - 1];
}

void NbhdParams::validate() const {
  if (ell < 2) throw InputError("ell must be at least 2");
  if (!(k > 0) || !(n > 0) || !(C > 0) || !(delta > 0))
    throw InputError("k, n, C and delta must be positive");
  if (static_cast<int>(eps.size()) != ell) throw InputError("eps schedule must have ell entries");
  for (double e : eps)
    if (!(e > 0)) throw InputError("eps schedule must be positive");
}

NbhdParams NbhdParams::paper(int ell, double k, double n) {
  NbhdParams p;
  p.ell = ell;
  p.k = k;
  p.n = n;
  p.C = 10.0 * ell;
  p.eps.assign(ell, 0.0);
  p.eps[ell - 1] = 1.0 / (p.C * p.C);
  for (int t = ell; t >= 2; --t) p.eps[t - 2] = std::pow(p.eps[t - 1], t);
  p.delta = std::pow(p.eps[0], 2 * ell);
  return p;
}

NbhdParams NbhdParams::uniform(int ell, double k, double n, double C, double eps, double delta) {
  NbhdParams p;
  p.ell = ell;
  p.k = k;
  p.n = n;
  p.C = C;
  p.delta = delta;
  p.eps.assign(ell, eps);
  return p;
}

NbhdParams NbhdParams::for_graph(const Graph& g, int ell, double C, double eps, double delta) {
  return uniform(ell, edge_density_k(g, ell), g.n(), C, eps, delta);
}

namespace {

double kpow(const NbhdParams& p, double e) { return std::pow(p.k, e); }
double nroot(const NbhdParams& p) { return std::pow(p.n, 1.0 / p.ell); }
double kl(const NbhdParams& p) { return static_cast<double>(p.ell) / (p.ell - 1); }

// Counts are integers while caps come out of pow; absorb rounding noise.
double slack(double x) { return 1e-9 * std::max(1.0, std::abs(x)); }
bool over(double count, double cap) { return count > cap + slack(cap); }
bool under(double count, double threshold) { return count < threshold - slack(threshold); }
double floor_tol(double x) { return std::floor(x + slack(x)); }

}  // namespace

double forward_threshold(const NbhdParams& p, int t) { return p.C * p.eps_at(t) * p.k * nroot(p); }

double level_cap(const NbhdParams& p, int t) {
  return kpow(p, static_cast<double>(p.ell - t) / (p.ell - 1)) *
         std::pow(p.n, static_cast<double>(t) / p.ell);
}

double first_level_cap(const NbhdParams& p) { return p.k * nroot(p); }

double pair_cap(const NbhdParams& p, int i, int j) { return kpow(p, (j - i - 1) * kl(p)); }

double refined_forward_threshold(const NbhdParams& p, int t) { return p.eps_at(t) * p.k * nroot(p); }

double refined_back_threshold(const NbhdParams& p, int t) { return p.eps_at(t) * kpow(p, kl(p)); }

double refined_path_threshold(const NbhdParams& p, int t) {
  return std::pow(p.eps_at(t), t) * kpow(p, (t - 1) * kl(p));
}

bool LevelFamily::in_level(int i, Vertex v) const {
  return std::binary_search(levels[i].begin(), levels[i].end(), v);
}

bool LevelFamily::consistent(const Graph& g) const {
  if (static_cast<int>(levels.size()) != t + 1) return false;
  if (levels[0] != std::vector<Vertex>{x}) return false;
  for (int i = 1; i <= t; ++i) {
    if (!std::is_sorted(levels[i].begin(), levels[i].end())) return false;
    for (Vertex v : levels[i]) {
      bool linked = false;
      for (Vertex w : g.neighbours(v))
        if (in_level(i - 1, w)) {
          linked = true;
          break;
        }
      if (!linked) return false;
    }
  }
  return true;
}

bool ForbiddenView::contains_saturated(std::span<const EdgeId> edges) const {
  std::vector<EdgeId> e(edges.begin(), edges.end());
  std::sort(e.begin(), e.end());
  if (e.size() > 20) throw InputError("contains_saturated: too many edges");
  const uint32_t full = (uint32_t{1} << e.size()) - 1;
  std::vector<EdgeId> sub;
  for (uint32_t mask = 1; mask <= full; ++mask) {
    sub.clear();
    for (size_t i = 0; i < e.size(); ++i)
      if (mask >> i & 1) sub.push_back(e[i]);
    if (saturated(sub)) return true;
  }
  return false;
}

ListForbidden::ListForbidden(std::vector<std::vector<EdgeId>> sets) : sets_(std::move(sets)) {
  for (auto& s : sets_) std::sort(s.begin(), s.end());
}

bool ListForbidden::in_link1(std::span<const EdgeId> s, EdgeId e) const {
  if (std::find(s.begin(), s.end(), e) != s.end()) return false;
  for (const auto& f : sets_) {
    if (f.size() < 2 || !std::binary_search(f.begin(), f.end(), e)) continue;
    bool inside = true;
    for (EdgeId g : f)
      if (g != e && std::find(s.begin(), s.end(), g) == s.end()) {
        inside = false;
        break;
      }
    if (inside) return true;
  }
  return false;
}

bool ListForbidden::saturated(std::span<const EdgeId> sorted_set) const {
  for (const auto& f : sets_)
    if (std::equal(f.begin(), f.end(), sorted_set.begin(), sorted_set.end())) return true;
  return false;
}

PathFamily::PathFamily(const Graph& host, LevelFamily base, std::vector<Path> paths)
    : host_(&host), base_(std::move(base)), paths_(std::move(paths)) {
  std::sort(paths_.begin(), paths_.end());
  paths_.erase(std::unique(paths_.begin(), paths_.end()), paths_.end());
}

int64_t PathFamily::count(int i, int j, Vertex u, Vertex v) const {
  std::set<std::vector<Vertex>> seen;
  for (const auto& p : paths_)
    if (p[i] == u && p[j] == v) seen.emplace(p.begin() + i, p.begin() + j + 1);
  return static_cast<int64_t>(seen.size());
}

int64_t PathFamily::count_to_set(int i, int j, Vertex u, std::span<const Vertex> targets) const {
  std::set<std::vector<Vertex>> seen;
  for (const auto& p : paths_)
    if (p[i] == u && std::find(targets.begin(), targets.end(), p[j]) != targets.end())
      seen.emplace(p.begin() + i, p.begin() + j + 1);
  return static_cast<int64_t>(seen.size());
}

std::map<std::pair<Vertex, Vertex>, int64_t> PathFamily::pair_counts(int i, int j) const {
  std::vector<std::vector<Vertex>> subs;
  subs.reserve(paths_.size());
  for (const auto& p : paths_) subs.emplace_back(p.begin() + i, p.begin() + j + 1);
  std::sort(subs.begin(), subs.end());
  subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
  std::map<std::pair<Vertex, Vertex>, int64_t> out;
  for (const auto& s : subs) ++out[{s.front(), s.back()}];
  return out;
}

int PathFamily::branching_factor(Vertex v, int r) const {
  if (r < 0 || r >= t()) return 0;
  std::set<Vertex> next;
  for (const auto& p : paths_)
    if (p[r] == v) next.insert(p[r + 1]);
  return static_cast<int>(next.size());
}

int PathFamily::max_branching_factor() const {
  int best = 0;
  for (int r = 0; r < t(); ++r) {
    std::vector<std::pair<Vertex, Vertex>> steps;
    for (const auto& p : paths_) steps.emplace_back(p[r], p[r + 1]);
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    for (size_t a = 0; a < steps.size();) {
      size_t b = a;
      while (b < steps.size() && steps[b].first == steps[a].first) ++b;
      best = std::max(best, static_cast<int>(b - a));
      a = b;
    }
  }
  return best;
}

int64_t PathFamily::paths_to(Vertex w) const {
  int64_t c = 0;
  for (const auto& p : paths_)
    if (p.back() == w) ++c;
  return c;
}

std::vector<EdgeId> PathFamily::path_edges(const Path& p) const {
  std::vector<EdgeId> e;
  for (size_t i = 0; i + 1 < p.size(); ++i) e.push_back(host_->edge_id(p[i], p[i + 1]));
  std::sort(e.begin(), e.end());
  return e;
}

bool PathFamily::valid() const {
  for (const auto& p : paths_) {
    if (static_cast<int>(p.size()) != t() + 1 || p[0] != x()) return false;
    std::vector<Vertex> s = p;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
    for (int i = 1; i <= t(); ++i) {
      if (!host_->adjacent(p[i - 1], p[i])) return false;
      if (!base_.in_level(i, p[i])) return false;
    }
  }
  return true;
}

void PathFamily::dump(std::ostream& out) const {
  out << x() << ' ' << t() << ' ' << paths_.size() << '\n';
  for (const auto& p : paths_) {
    for (size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
    out << '\n';
  }
}

namespace {

class Levels {
 public:
  Levels(int n, std::vector<std::vector<Vertex>> levels) : levels_(std::move(levels)) {
    member_.assign(levels_.size(), std::vector<char>(n, 0));
    for (size_t i = 0; i < levels_.size(); ++i)
      for (Vertex v : levels_[i]) member_[i][v] = 1;
  }

  bool has(int i, Vertex v) const { return member_[i][v] != 0; }
  const std::vector<Vertex>& at(int i) const { return levels_[i]; }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }

  int degree_into(const Graph& g, Vertex v, int i) const {
    int c = 0;
    for (Vertex w : g.neighbours(v)) c += member_[i][w];
    return c;
  }

  void remove(int i, Vertex v) {
    member_[i][v] = 0;
    auto& l = levels_[i];
    l.erase(std::lower_bound(l.begin(), l.end(), v));
  }

  void keep_first(int i, size_t count) {
    auto& l = levels_[i];
    for (size_t a = count; a < l.size(); ++a) member_[i][l[a]] = 0;
    if (l.size() > count) l.resize(count);
  }

  // Drop vertices of level i >= 1 with no neighbour in level i-1.
  std::vector<std::pair<int, Vertex>> prune_orphans(const Graph& g) {
    std::vector<std::pair<int, Vertex>> gone;
    for (int i = 1; i <= depth(); ++i) {
      std::vector<Vertex> drop;
      for (Vertex v : levels_[i])
        if (degree_into(g, v, i - 1) == 0) drop.push_back(v);
      for (Vertex v : drop) {
        remove(i, v);
        gone.emplace_back(i, v);
      }
    }
    return gone;
  }

  std::vector<std::vector<Vertex>> take() { return std::move(levels_); }

 private:
  std::vector<std::vector<Vertex>> levels_;
  std::vector<std::vector<char>> member_;
};

}  // namespace

bool is_concentrated(const Graph& g, const LevelFamily& a, const NbhdParams& p) {
  if (a.t < 1 || static_cast<int>(a.levels.size()) != a.t + 1) return false;
  if (over(static_cast<double>(a.levels[a.t].size()), level_cap(p, a.t))) return false;
  const double thr = forward_threshold(p, a.t);
  Levels lv(g.n(), a.levels);
  for (int i = 1; i <= a.t; ++i)
    for (Vertex v : a.levels[i - 1])
      if (under(lv.degree_into(g, v, i), thr)) return false;
  return true;
}

std::optional<LevelFamily> concentrated_at(const Graph& g, Vertex x, int t, const NbhdParams& p) {
  p.validate();
  if (t < 1 || t > p.ell) throw InputError("t out of range");
  if (x < 0 || x >= g.n()) throw InputError("root out of range");
  const double thr = forward_threshold(p, t);
  std::vector<std::vector<Vertex>> init(t + 1);
  init[0] = {x};
  for (int i = 1; i <= t; ++i) {
    std::vector<char> mark(g.n(), 0);
    for (Vertex v : init[i - 1])
      for (Vertex w : g.neighbours(v)) mark[w] = 1;
    for (Vertex w = 0; w < g.n(); ++w)
      if (mark[w]) init[i].push_back(w);
  }
  Levels lv(g.n(), std::move(init));
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < t; ++i) {
      std::vector<Vertex> drop;
      for (Vertex v : lv.at(i))
        if (under(lv.degree_into(g, v, i + 1), thr)) drop.push_back(v);
      if (i == 0 && !drop.empty()) return std::nullopt;
      for (Vertex v : drop) lv.remove(i, v);
      changed |= !drop.empty();
    }
    changed |= !lv.prune_orphans(g).empty();
  }
  if (over(static_cast<double>(lv.at(t).size()), level_cap(p, t))) return std::nullopt;
  LevelFamily out{x, t, lv.take()};
  return out;
}

std::optional<LevelFamily> concentrated_search(const Graph& g, Vertex x, const NbhdParams& p) {
  for (int t = 2; t <= p.ell; ++t)
    if (auto a = concentrated_at(g, x, t, p)) return a;
  return std::nullopt;
}

GraphT t_of_graph(const Graph& g, const NbhdParams& p) {
  GraphT out;
  for (Vertex x = 0; x < g.n(); ++x) {
    auto a = concentrated_search(g, x, p);
    if (!a) continue;
    if (!out.t || a->t < *out.t) {
      out.t = a->t;
      out.argmin.clear();
    }
    if (a->t == *out.t) out.argmin.push_back(x);
  }
  return out;
}

namespace {

struct SubpathCounts {
  // mult[(i,j)][subtuple] and distinct[(i,j)][(u,v)]
  std::map<std::pair<int, int>, std::map<std::vector<Vertex>, int>> mult;
  std::map<std::pair<int, int>, std::map<std::pair<Vertex, Vertex>, int64_t>> distinct;
};

}  // namespace

PathFamily build_balanced(const Graph& g, const LevelFamily& concentrated,
                          const ForbiddenView& forbidden, const NbhdParams& p) {
  p.validate();
  const int t = concentrated.t;
  if (t < 1 || t > p.ell) throw InputError("t out of range");
  if (!concentrated.consistent(g)) throw InputError("level family is not a t-neighbourhood");
  const Vertex x = concentrated.x;
  bool infeasible = false;

  Levels lv(g.n(), concentrated.levels);
  double cap1 = floor_tol(first_level_cap(p));
  if (cap1 < 1) {
    cap1 = 1;
    infeasible = true;
  }
  if (static_cast<double>(lv.at(1).size()) > cap1) lv.keep_first(1, static_cast<size_t>(cap1));
  while (!lv.prune_orphans(g).empty()) {
  }

  double q = floor_tol(forward_threshold(p, t));
  if (q < 1) {
    q = 1;
    infeasible = true;
  }
  const size_t qsize = static_cast<size_t>(q);
  // Q(v) for v at level i-1, keyed by (i, v)
  std::map<std::pair<int, Vertex>, std::vector<Vertex>> choice;
  for (int i = 1; i <= t; ++i)
    for (Vertex v : lv.at(i - 1)) {
      auto& c = choice[{i, v}];
      for (Vertex w : g.neighbours(v)) {
        if (c.size() == qsize) break;
        if (w != x && lv.has(i, w)) c.push_back(w);
      }
    }

  std::vector<Path> generated;
  Path cur{x};
  std::vector<EdgeId> used;
  std::function<void(int)> grow = [&](int i) {
    if (i > t) {
      generated.push_back(cur);
      return;
    }
    Vertex last = cur.back();
    for (Vertex w : choice[{i, last}]) {
      if (std::find(cur.begin(), cur.end(), w) != cur.end()) continue;
      EdgeId e = g.edge_id(last, w);
      const EdgeId single[1] = {e};
      if (forbidden.saturated(single) || forbidden.in_link1(used, e)) continue;
      cur.push_back(w);
      used.push_back(e);
      grow(i + 1);
      used.pop_back();
      cur.pop_back();
    }
  };
  grow(1);
  std::sort(generated.begin(), generated.end());

  SubpathCounts sc;
  std::vector<std::pair<int, int>> spans;
  for (int i = 0; i <= t; ++i)
    for (int j = i + 1; j <= t; ++j)
      if (!(i == 0 && j == t)) spans.emplace_back(i, j);
  for (const auto& path : generated)
    for (auto [i, j] : spans) {
      std::vector<Vertex> sub(path.begin() + i, path.begin() + j + 1);
      if (sc.mult[{i, j}][sub]++ == 0) ++sc.distinct[{i, j}][{path[i], path[j]}];
    }
  // counts only ever decrease, so one ordered pass removes exactly the
  // paths the restart-from-first loop would
  std::vector<Path> kept;
  for (const auto& path : generated) {
    bool bad = false;
    for (auto [i, j] : spans)
      if (over(static_cast<double>(sc.distinct[{i, j}][{path[i], path[j]}]), pair_cap(p, i, j))) {
        bad = true;
        break;
      }
    if (!bad) {
      kept.push_back(path);
      continue;
    }
    for (auto [i, j] : spans) {
      std::vector<Vertex> sub(path.begin() + i, path.begin() + j + 1);
      if (--sc.mult[{i, j}][sub] == 0) --sc.distinct[{i, j}][{path[i], path[j]}];
    }
  }
  PathFamily out(g, LevelFamily{x, t, lv.take()}, std::move(kept));
  out.infeasible = infeasible;
  return out;
}

PathFamily refine_balanced(const PathFamily& balanced, const NbhdParams& p) {
  p.validate();
  const Graph& g = balanced.host();
  const int t = balanced.t();
  const double rf = refined_forward_threshold(p, t);
  const double rb = refined_back_threshold(p, t);
  const double rp = refined_path_threshold(p, t);
  Levels lv(g.n(), balanced.base().levels);
  std::vector<Path> paths = balanced.paths();
  std::vector<char> alive(paths.size(), 1);
  auto drop = [&](int i, Vertex v) {
    lv.remove(i, v);
    for (size_t a = 0; a < paths.size(); ++a)
      if (alive[a] && paths[a][i] == v) alive[a] = 0;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [i, v] : lv.prune_orphans(g)) {
      for (size_t a = 0; a < paths.size(); ++a)
        if (alive[a] && paths[a][i] == v) alive[a] = 0;
      changed = true;
    }
    for (int i = 1; i <= t - 1; ++i) {
      std::vector<Vertex> bad;
      for (Vertex v : lv.at(i))
        if (under(lv.degree_into(g, v, i + 1), rf)) bad.push_back(v);
      for (Vertex v : bad) drop(i, v);
      changed |= !bad.empty();
    }
    {
      std::vector<Vertex> bad;
      for (Vertex v : lv.at(t))
        if (under(lv.degree_into(g, v, t - 1), rb)) bad.push_back(v);
      for (Vertex v : bad) drop(t, v);
      changed |= !bad.empty();
    }
    {
      std::map<Vertex, int64_t> ends;
      for (size_t a = 0; a < paths.size(); ++a)
        if (alive[a]) ++ends[paths[a][t]];
      std::vector<Vertex> bad;
      for (Vertex v : lv.at(t))
        if (under(static_cast<double>(ends[v]), rp)) bad.push_back(v);
      for (Vertex v : bad) drop(t, v);
      changed |= !bad.empty();
    }
  }
  std::vector<Path> kept;
  for (size_t a = 0; a < paths.size(); ++a)
    if (alive[a]) kept.push_back(paths[a]);
  const bool root_short = t >= 1 && under(lv.degree_into(g, balanced.x(), 1), rf);
  PathFamily out(g, LevelFamily{balanced.x(), t, lv.take()}, std::move(kept));
  out.infeasible = balanced.infeasible;
  out.root_short = root_short;
  return out;
}

BalancedCheck check_balanced(const PathFamily& f, const NbhdParams& p) {
  BalancedCheck c;
  const int t = f.t();
  c.paths_valid = f.valid();
  c.first_level = !over(static_cast<double>(f.base().levels[1].size()), first_level_cap(p));
  c.last_level = !over(static_cast<double>(f.base().levels[t].size()), level_cap(p, t));
  for (int i = 0; i <= t && c.pair_caps; ++i)
    for (int j = i + 1; j <= t && c.pair_caps; ++j) {
      if (i == 0 && j == t) continue;
      for (const auto& [uv, cnt] : f.pair_counts(i, j))
        if (over(static_cast<double>(cnt), pair_cap(p, i, j))) {
          c.pair_caps = false;
          break;
        }
    }
  c.branching = !over(static_cast<double>(f.max_branching_factor()), forward_threshold(p, t));
  return c;
}

RefinedCheck check_refined(const PathFamily& f, const NbhdParams& p) {
  RefinedCheck c;
  c.balanced = check_balanced(f, p);
  const Graph& g = f.host();
  const int t = f.t();
  Levels lv(g.n(), f.base().levels);
  for (int i = 0; i < t && c.forward; ++i)
    for (Vertex u : lv.at(i))
      if (under(lv.degree_into(g, u, i + 1), refined_forward_threshold(p, t))) {
        c.forward = false;
        break;
      }
  for (Vertex v : lv.at(t)) {
    if (under(lv.degree_into(g, v, t - 1), refined_back_threshold(p, t))) c.back = false;
    if (under(static_cast<double>(f.paths_to(v)), refined_path_threshold(p, t))) c.endpoint = false;
  }
  return c;
}

ObservedCap paths_through_vertex_bound(const PathFamily& f, Vertex w, Vertex v,
                                       const NbhdParams& p) {
  if (v == f.x() || v == w) throw InputError("v must differ from the root and the endpoint");
  ObservedCap out;
  for (const auto& path : f.paths())
    if (path.back() == w && std::find(path.begin(), path.end(), v) != path.end()) ++out.observed;
  out.cap = p.ell * std::pow(p.k, (f.t() - 2) * kl(p));
  return out;
}

ObservedCap paths_through_set_bound(const PathFamily& f, Vertex w, std::span<const EdgeId> sigma,
                                    const NbhdParams& p) {
  const int s = static_cast<int>(sigma.size());
  if (s < 1 || s > f.t() - 1) throw InputError("sigma size must lie in [1, t-1]");
  std::vector<EdgeId> sg(sigma.begin(), sigma.end());
  std::sort(sg.begin(), sg.end());
  ObservedCap out;
  for (const auto& path : f.paths()) {
    if (path.back() != w) continue;
    auto e = f.path_edges(path);
    if (std::includes(e.begin(), e.end(), sg.begin(), sg.end())) ++out.observed;
  }
  out.cap = std::pow(static_cast<double>(f.t()), f.t()) * std::pow(p.k, (f.t() - s - 1) * kl(p));
  return out;
}

}  // namespace cyclefree
