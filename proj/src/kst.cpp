#include "cyclefree/kst.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

namespace cyclefree {

void KstParams::validate() const {
  if (s < 1 || t < s || t > 4) throw InputError("need 1 <= s <= t <= 4");
  if (!(k > 0) || !(n > 0) || !(delta > 0)) throw InputError("k, n and delta must be positive");
}

KstParams KstParams::for_graph(const Graph& g, int s, int t, double delta) {
  KstParams p;
  p.s = s;
  p.t = t;
  p.n = std::max(g.n(), 1);
  p.k = std::max(g.m() / std::pow(p.n, 2.0 - 1.0 / s), 1e-12);
  p.delta = delta;
  p.validate();
  return p;
}

KstParams KstParams::generous(const Graph& g, int s, int t) {
  KstParams p = for_graph(g, s, t, 1.0);
  for (int i = 1; i <= s; ++i)
    for (int j = 1; j <= t; ++j) p.cap_override[{i, j}] = (i == s && j == t) ? 1.0 : 1e18;
  return p;
}

double dij_cap(int i, int j, const KstParams& p) {
  if (i < 1 || i > p.s || j < 1 || j > p.t) throw InputError("(i,j) out of range");
  const double left = p.delta * p.k * std::pow(p.n, (p.s - 1.0) / p.s);
  const double right = p.delta * std::pow(p.k, p.s);
  return std::pow(left, p.s - i) * std::pow(right, p.t - j);
}

double kst_cap(int i, int j, const KstParams& p) {
  auto it = p.cap_override.find({i, j});
  return it != p.cap_override.end() ? it->second : dij_cap(i, j, p);
}

double kst_tau(const KstParams& p) {
  const double s = p.s, t = p.t;
  return std::max(std::pow(p.k, -s),
                  std::pow(p.k, -1.0) * std::pow(p.n, -(s - 1) * (s - 1) / (s * (s * t - 1))));
}

double x_link_cap(const KstParams& p) { return p.delta * p.k * std::pow(p.n, 1.0 - 1.0 / p.s); }
double y_link_cap(const KstParams& p) { return p.delta * std::pow(p.k, p.s); }

namespace {

void choose(const std::vector<Vertex>& pool, int want, size_t from, std::vector<Vertex>& cur,
            const std::function<void(const std::vector<Vertex>&)>& f) {
  if (static_cast<int>(cur.size()) == want) {
    f(cur);
    return;
  }
  for (size_t i = from; i < pool.size(); ++i) {
    if (pool.size() - i < static_cast<size_t>(want) - cur.size()) break;
    cur.push_back(pool[i]);
    choose(pool, want, i + 1, cur, f);
    cur.pop_back();
  }
}

std::vector<Vertex> intersect(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset(std::span<const Vertex> small, std::span<const Vertex> big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void enumerate_left(const Graph& g, int s, int t, Vertex from, std::vector<Vertex>& S,
                    const std::vector<Vertex>& common, std::vector<VertexPair>& out) {
  if (static_cast<int>(S.size()) == s) {
    std::vector<Vertex> cur;
    choose(common, t, 0, cur, [&](const std::vector<Vertex>& T) { out.push_back({S, T}); });
    return;
  }
  for (Vertex u = from; u < g.n(); ++u) {
    std::vector<Vertex> next = S.empty() ? g.neighbours(u) : intersect(common, g.neighbours(u));
    if (static_cast<int>(next.size()) < t) continue;
    S.push_back(u);
    enumerate_left(g, s, t, u + 1, S, next, out);
    S.pop_back();
  }
}

}  // namespace

std::vector<VertexPair> enumerate_kst(const Graph& g, int s, int t) {
  if (s < 1 || t < s) throw InputError("need 1 <= s <= t");
  std::vector<VertexPair> out;
  std::vector<Vertex> S;
  enumerate_left(g, s, t, 0, S, {}, out);
  return out;
}

PairKey::PairKey(std::span<const Vertex> sorted_a, std::span<const Vertex> sorted_b) {
  if (sorted_a.size() > 4 || sorted_b.size() > 4) throw InputError("pair key holds at most 4+4");
  na = static_cast<uint8_t>(sorted_a.size());
  nb = static_cast<uint8_t>(sorted_b.size());
  std::copy(sorted_a.begin(), sorted_a.end(), a.begin());
  std::copy(sorted_b.begin(), sorted_b.end(), b.begin());
}

bool PairKey::operator==(const PairKey& o) const {
  return na == o.na && nb == o.nb && std::equal(a.begin(), a.begin() + na, o.a.begin()) &&
         std::equal(b.begin(), b.begin() + nb, o.b.begin());
}

size_t PairKeyHash::operator()(const PairKey& k) const {
  uint64_t h = mix64(static_cast<uint64_t>(k.na) << 8 | k.nb);
  for (int i = 0; i < k.na; ++i) h = mix64(h ^ static_cast<uint64_t>(k.a[i] + 1));
  h = mix64(h ^ 0x9e3779b97f4a7c15ull);
  for (int i = 0; i < k.nb; ++i) h = mix64(h ^ static_cast<uint64_t>(k.b[i] + 1));
  return static_cast<size_t>(h);
}

PairHypergraph::PairHypergraph(const Graph& host, KstParams params)
    : host_(&host), params_(std::move(params)) {
  params_.validate();
  for (int i = 1; i <= params_.s; ++i)
    for (int j = 1; j <= params_.t; ++j) {
      const double c = kst_cap(i, j, params_);
      const double big = static_cast<double>(std::numeric_limits<int64_t>::max() / 4);
      floor_caps_.push_back(c >= big ? static_cast<int64_t>(big)
                                     : static_cast<int64_t>(std::floor(c + 1e-9)));
    }
}

bool PairHypergraph::contains(const VertexPair& p) const {
  if (p.S.size() > 4 || p.T.size() > 4) return false;
  return members_.count(PairKey(p.S, p.T)) > 0;
}

int64_t PairHypergraph::degree(std::span<const Vertex> A, std::span<const Vertex> B) const {
  if (A.size() > 4 || B.size() > 4) return 0;
  auto it = table_.find(PairKey(A, B));
  return it == table_.end() ? 0 : it->second;
}

bool PairHypergraph::saturated(std::span<const Vertex> A, std::span<const Vertex> B) const {
  const int i = static_cast<int>(A.size()), j = static_cast<int>(B.size());
  if (i < 1 || i > params_.s || j < 1 || j > params_.t) return false;
  return degree(A, B) >= floor_cap(i, j);
}

std::vector<VertexPair> PairHypergraph::saturated_pairs() const {
  std::vector<VertexPair> out;
  for (const auto& [key, d] : table_)
    if (d >= floor_cap(key.na, key.nb)) out.push_back({key.left(), key.right()});
  std::sort(out.begin(), out.end());
  return out;
}

template <class F>
void PairHypergraph::for_each_subpair(const VertexPair& p, F&& f) const {
  const int s = static_cast<int>(p.S.size()), t = static_cast<int>(p.T.size());
  std::vector<Vertex> A, B;
  for (uint32_t am = 1; am < (1u << s); ++am) {
    A.clear();
    for (int x = 0; x < s; ++x)
      if (am >> x & 1) A.push_back(p.S[x]);
    for (uint32_t bm = 1; bm < (1u << t); ++bm) {
      B.clear();
      for (int y = 0; y < t; ++y)
        if (bm >> y & 1) B.push_back(p.T[y]);
      f(A, B);
    }
  }
}

std::optional<VertexPair> PairHypergraph::first_violation(const VertexPair& p) const {
  if (static_cast<int>(p.S.size()) > params_.s || static_cast<int>(p.T.size()) > params_.t)
    throw InputError("pair larger than (s,t)");
  std::optional<VertexPair> best;
  for_each_subpair(p, [&](const std::vector<Vertex>& A, const std::vector<Vertex>& B) {
    if (!saturated(A, B)) return;
    VertexPair cand{A, B};
    if (!best || A.size() + B.size() < best->S.size() + best->T.size() ||
        (A.size() + B.size() == best->S.size() + best->T.size() && cand < *best))
      best = std::move(cand);
  });
  return best;
}

namespace {

std::string show(const VertexPair& p) {
  std::ostringstream o;
  o << "(";
  for (size_t i = 0; i < p.S.size(); ++i) o << (i ? "," : "") << p.S[i];
  o << " | ";
  for (size_t i = 0; i < p.T.size(); ++i) o << (i ? "," : "") << p.T[i];
  o << ")";
  return o.str();
}

bool shape_ok(const Graph& g, const VertexPair& p, int s, int t) {
  if (static_cast<int>(p.S.size()) != s || static_cast<int>(p.T.size()) != t) return false;
  auto strictly = [](const std::vector<Vertex>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (!strictly(p.S) || !strictly(p.T)) return false;
  for (Vertex v : p.S)
    if (v < 0 || v >= g.n()) return false;
  for (Vertex v : p.T)
    if (v < 0 || v >= g.n()) return false;
  if (!intersect(p.S, p.T).empty()) return false;
  for (Vertex u : p.S)
    for (Vertex v : p.T)
      if (!g.adjacent(u, v)) return false;
  return true;
}

}  // namespace

void PairHypergraph::add(const VertexPair& p) {
  if (!shape_ok(*host_, p, params_.s, params_.t))
    throw InputError("not a complete bipartite (s,t) pair: " + show(p));
  if (contains(p)) throw InputError("pair already present: " + show(p));
  if (auto v = first_violation(p)) throw KstViolation(*v, "saturated sub-pair " + show(*v));
  pairs_.push_back(p);
  members_.emplace(PairKey(p.S, p.T), 1);
  for_each_subpair(p, [&](const std::vector<Vertex>& A, const std::vector<Vertex>& B) {
    const int64_t d = ++table_[PairKey(A, B)];
    if (d == floor_cap(static_cast<int>(A.size()), static_cast<int>(B.size())))
      log_.emplace_back(VertexPair{A, B}, pairs_.size());
  });
}

LinkSets PairHypergraph::links(std::span<const Vertex> A, std::span<const Vertex> B) const {
  for (int64_t c : floor_caps_)
    if (c < 1) throw InputError("links need every floor cap to be at least 1");
  LinkSets out;
  out.x_cap = x_link_cap(params_);
  out.y_cap = y_link_cap(params_);
  std::vector<Vertex> a(A.begin(), A.end()), b(B.begin(), B.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::set<Vertex> xs, ys;
  for (const auto& [key, d] : table_) {
    if (d < floor_cap(key.na, key.nb)) continue;
    const std::vector<Vertex> P = key.left(), Q = key.right();
    if (P.size() >= 2 && subset(Q, b)) {
      std::vector<Vertex> extra;
      std::set_difference(P.begin(), P.end(), a.begin(), a.end(), std::back_inserter(extra));
      if (extra.size() == 1) xs.insert(extra[0]);
    }
    if (Q.size() >= 2 && subset(P, a)) {
      std::vector<Vertex> extra;
      std::set_difference(Q.begin(), Q.end(), b.begin(), b.end(), std::back_inserter(extra));
      if (extra.size() == 1) ys.insert(extra[0]);
    }
  }
  out.X.assign(xs.begin(), xs.end());
  out.Y.assign(ys.begin(), ys.end());
  return out;
}

int64_t PairHypergraph::sigma_degree(std::span<const EdgeId> sigma) const {
  std::vector<Edge> es;
  for (EdgeId e : sigma) {
    if (e < 0 || e >= host_->m()) throw InputError("edge id out of range");
    es.push_back(host_->edge(e));
  }
  int64_t count = 0;
  for (const VertexPair& p : pairs_) {
    auto in = [](const std::vector<Vertex>& v, Vertex x) {
      return std::binary_search(v.begin(), v.end(), x);
    };
    bool all = true;
    for (const Edge& e : es)
      if (!((in(p.S, e.u) && in(p.T, e.v)) || (in(p.S, e.v) && in(p.T, e.u)))) {
        all = false;
        break;
      }
    if (all) ++count;
  }
  return count;
}

KstAudit PairHypergraph::audit() const {
  KstAudit out;
  std::set<VertexPair> seen;
  std::unordered_map<PairKey, int64_t, PairKeyHash> recount;
  for (const VertexPair& p : pairs_) {
    if (!shape_ok(*host_, p, params_.s, params_.t) || !seen.insert(p).second) out.pairs_ok = false;
    for_each_subpair(p, [&](const std::vector<Vertex>& A, const std::vector<Vertex>& B) {
      ++recount[PairKey(A, B)];
    });
  }
  out.table_ok = recount == table_;
  for (const auto& [key, d] : recount)
    if (static_cast<double>(d) > kst_cap(key.na, key.nb, params_) * (1 + 1e-12)) out.good = false;
  for (const auto& [pair, step] : log_)
    for (size_t i = step; i < pairs_.size(); ++i)
      if (subset(pair.S, pairs_[i].S) && subset(pair.T, pairs_[i].T)) out.events_ok = false;
  return out;
}

void PairHypergraph::dump(std::ostream& out) const {
  out << params_.s << ' ' << params_.t << ' ' << pairs_.size() << '\n';
  for (const VertexPair& p : pairs_) {
    for (size_t i = 0; i < p.S.size(); ++i) out << (i ? " " : "") << p.S[i];
    out << " |";
    for (Vertex v : p.T) out << ' ' << v;
    out << '\n';
  }
}

std::vector<VertexPair> read_pairs(std::istream& in, int* s_out, int* t_out) {
  int s = 0, t = 0;
  long long count = 0;
  std::string line;
  if (!std::getline(in, line)) throw InputError("missing pair header");
  {
    std::istringstream h(line);
    if (!(h >> s >> t >> count) || s < 1 || t < 1 || count < 0)
      throw InputError("bad pair header: " + line);
  }
  std::vector<VertexPair> out;
  while (static_cast<long long>(out.size()) < count && std::getline(in, line)) {
    const auto bar = line.find('|');
    if (bar == std::string::npos) throw InputError("pair line without '|': " + line);
    VertexPair p;
    std::istringstream l(line.substr(0, bar)), r(line.substr(bar + 1));
    for (Vertex v; l >> v;) p.S.push_back(v);
    for (Vertex v; r >> v;) p.T.push_back(v);
    if (static_cast<int>(p.S.size()) != s || static_cast<int>(p.T.size()) != t)
      throw InputError("pair line of wrong size: " + line);
    std::sort(p.S.begin(), p.S.end());
    std::sort(p.T.begin(), p.T.end());
    out.push_back(std::move(p));
  }
  if (static_cast<long long>(out.size()) != count) throw InputError("pair count mismatch");
  if (s_out) *s_out = s;
  if (t_out) *t_out = t;
  return out;
}

SigmaCap kst_codegree_translate(const PairHypergraph& h, std::span<const EdgeId> sigma) {
  SigmaCap out;
  out.degree = h.sigma_degree(sigma);
  const int size = static_cast<int>(sigma.size());
  for (int i = 1; i <= h.s(); ++i)
    for (int j = 1; j <= h.t(); ++j)
      if (i * j >= size) out.cap = std::max(out.cap, kst_cap(i, j, h.params()));
  return out;
}

namespace {

class GreedyKst {
 public:
  GreedyKst(PairHypergraph& h, double target, KstBuildReport& rep)
      : h_(h), g_(h.host()), target_(target), rep_(rep) {}

  void run() {
    for (Vertex v = 0; v < g_.n() && !done(); ++v) {
      std::vector<Vertex> S;
      grow_left(v, g_.neighbours(v), 0, S);
    }
  }

 private:
  bool done() const { return static_cast<double>(h_.size()) >= target_; }

  LinkSets probe(std::span<const Vertex> A, std::span<const Vertex> B) {
    LinkSets l = h_.links(A, B);
    if (l.x_cap > 0) rep_.max_x_ratio = std::max(rep_.max_x_ratio, l.X.size() / l.x_cap);
    if (l.y_cap > 0) rep_.max_y_ratio = std::max(rep_.max_y_ratio, l.Y.size() / l.y_cap);
    return l;
  }

  void grow_left(Vertex v, const std::vector<Vertex>& nbrs, size_t from, std::vector<Vertex>& S) {
    if (done()) return;
    if (static_cast<int>(S.size()) == h_.s()) {
      if (visited_.insert(S).second) grow_right(S);
      return;
    }
    std::vector<Vertex> banned;
    if (!S.empty()) {
      const Vertex vv[1] = {v};
      banned = probe(S, vv).X;
    }
    for (size_t i = from; i < nbrs.size() && !done(); ++i) {
      const Vertex u = nbrs[i];
      if (std::binary_search(banned.begin(), banned.end(), u)) continue;
      S.push_back(u);
      if (h_.good({S, {v}})) grow_left(v, nbrs, i + 1, S);
      S.pop_back();
    }
  }

  void grow_right(const std::vector<Vertex>& S) {
    std::vector<Vertex> common = g_.neighbours(S[0]);
    for (size_t i = 1; i < S.size(); ++i) common = intersect(common, g_.neighbours(S[i]));
    std::vector<Vertex> M;  // M(S)
    for (Vertex w : common)
      if (h_.good({S, {w}})) M.push_back(w);
    std::vector<Vertex> T;
    grow_t(S, M, 0, T);
  }

  void grow_t(const std::vector<Vertex>& S, const std::vector<Vertex>& M, size_t from,
              std::vector<Vertex>& T) {
    if (done()) return;
    if (static_cast<int>(T.size()) == h_.t()) {
      VertexPair p{S, T};
      if (h_.addable(p)) h_.add(p);
      return;
    }
    std::vector<Vertex> banned;
    if (!T.empty()) banned = probe(S, T).Y;
    for (size_t i = from; i < M.size() && !done(); ++i) {
      if (std::binary_search(banned.begin(), banned.end(), M[i])) continue;
      T.push_back(M[i]);
      grow_t(S, M, i + 1, T);
      T.pop_back();
    }
  }

  PairHypergraph& h_;
  const Graph& g_;
  double target_;
  KstBuildReport& rep_;
  std::set<std::vector<Vertex>> visited_;
};

}  // namespace

KstBuild build_good_kst(const Graph& g, const KstParams& params, double target,
                        KstStrategy strategy) {
  if (target < 0) throw InputError("target must be nonnegative");
  KstBuild out{PairHypergraph(g, params), {}};
  PairHypergraph& h = out.h;
  KstBuildReport& rep = out.report;
  if (strategy == KstStrategy::exhaustive) {
    for (const VertexPair& p : enumerate_kst(g, params.s, params.t)) {
      if (static_cast<double>(h.size()) >= target) break;
      if (h.addable(p)) h.add(p);
    }
  } else {
    GreedyKst(h, target, rep).run();
  }
  rep.pairs = h.size();
  rep.target = target;
  rep.target_met = static_cast<double>(h.size()) >= target;
  for (const Edge& e : g.edges()) {
    const Vertex a[1] = {e.u}, b[1] = {e.v};
    if (h.saturated(a, b) || h.saturated(b, a)) ++rep.saturated_edges;
  }
  rep.audit = h.audit();
  return out;
}

}  // namespace cyclefree
