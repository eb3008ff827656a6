#include "cyclefree/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cyclefree/cycles.hpp"
#include "cyclefree/errors.hpp"
#include "dyn_graph.hpp"

namespace cyclefree {

uint64_t count_matchings(int a, int b) {
  if (a < 0 || b < 0) throw InputError("negative class size");
  // sum_k C(a,k) C(b,k) k!
  uint64_t total = 0;
  uint64_t term = 1;  // C(a,k) C(b,k) k! at k
  for (int k = 0; k <= std::min(a, b); ++k) {
    total += term;
    term = term * static_cast<uint64_t>(a - k) * static_cast<uint64_t>(b - k) /
           static_cast<uint64_t>(k + 1);
  }
  return total;
}

uint64_t count_matchings_brute(int a, int b) {
  if (a < 0 || b < 0) throw InputError("negative class size");
  const int m = a * b;
  if (m > 25) throw BudgetExceeded("brute-force matching count needs a*b <= 25");
  uint64_t count = 0;
  for (uint32_t mask = 0; mask < (uint32_t{1} << m); ++mask) {
    uint32_t left = 0, right = 0;
    bool ok = true;
    for (int e = 0; e < m && ok; ++e) {
      if (!(mask >> e & 1)) continue;
      const int i = e / b, j = e % b;
      if ((left >> i & 1) || (right >> j & 1)) ok = false;
      left |= 1u << i;
      right |= 1u << j;
    }
    if (ok) ++count;
  }
  return count;
}

namespace {

void grow(int a, int b, int i, uint32_t used, Matching& cur, std::vector<Matching>& out) {
  if (i == a) {
    out.push_back(cur);
    return;
  }
  grow(a, b, i + 1, used, cur, out);
  for (int j = 0; j < b; ++j) {
    if (used >> j & 1) continue;
    cur.emplace_back(i, j);
    grow(a, b, i + 1, used | (1u << j), cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Matching> canonical_matchings(int a, int b) {
  if (a < 0 || b < 0 || b > 31) throw InputError("class sizes out of range");
  std::vector<Matching> out;
  Matching cur;
  grow(a, b, 0, 0, cur, out);
  std::sort(out.begin(), out.end(), [](const Matching& x, const Matching& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

std::vector<uint64_t> BlowupSpec::choice(uint64_t which) const {
  const uint64_t radix = count_matchings(b, b);
  const size_t m = static_cast<size_t>(base.m());
  switch (mode) {
    case MatchingMode::fixed:
      if (indices.size() != m) throw InputError("need one matching index per base edge");
      return indices;
    case MatchingMode::sample: {
      Rng rng(seed, "blowup");
      std::vector<uint64_t> out(m);
      for (auto& x : out) x = rng.below(radix);
      return out;
    }
    case MatchingMode::enumerate_all: {
      std::vector<uint64_t> out(m);
      for (size_t i = m; i-- > 0;) {
        out[i] = which % radix;
        which /= radix;
      }
      if (which != 0) throw InputError("blow-up choice index out of range");
      return out;
    }
  }
  return {};
}

double BlowupSpec::log2_choices() const {
  return base.m() * std::log2(static_cast<double>(count_matchings(b, b)));
}

Graph blow_up(const Graph& base, int b, const std::vector<uint64_t>& choice) {
  if (b < 1) throw InputError("blow-up factor must be at least 1");
  if (static_cast<int>(choice.size()) != base.m())
    throw InputError("need one matching index per base edge");
  const std::vector<Matching> all = canonical_matchings(b, b);
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < base.m(); ++e) {
    if (choice[e] >= all.size()) throw InputError("invalid matching index");
    const Edge& be = base.edge(e);
    for (const auto& [i, j] : all[choice[e]]) edges.push_back({b * be.u + i, b * be.v + j});
  }
  return Graph::from_edges(b * base.n(), edges);
}

Graph blow_up(const BlowupSpec& spec, uint64_t which) {
  return blow_up(spec.base, spec.b, spec.choice(which));
}

FamilyCheck verify_family_free(const Graph& g, const std::vector<int>& lengths) {
  std::vector<int> sorted = lengths;
  std::sort(sorted.begin(), sorted.end());
  for (int len : sorted) {
    if (len < 3) throw InputError("cycle lengths must be at least 3");
    if (auto c = find_cycle(g, len)) return {false, len, *c};
  }
  return {};
}

std::vector<int> blowup_family(int ell) {
  if (ell < 2) throw InputError("ell must be at least 2");
  std::vector<int> out;
  for (int len = 3; len <= ell; ++len) out.push_back(len);
  out.push_back(2 * ell);
  return out;
}

Graph random_family_free(int n, const std::vector<int>& lengths, const Rng& rng) {
  if (n < 0) throw InputError("negative vertex count");
  std::vector<int64_t> order(num_pairs(n));
  std::iota(order.begin(), order.end(), int64_t{0});
  Rng r = rng.split("order");
  for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[r.below(i)]);
  detail::DynGraph h(n);
  std::vector<Edge> edges;
  for (int64_t idx : order) {
    const Edge e = pair_unrank(n, idx);
    bool closes = false;
    for (int len : lengths)
      if (h.has_path(e.u, e.v, len - 1)) {
        closes = true;
        break;
      }
    if (closes) continue;
    h.add(e.u, e.v);
    edges.push_back(e);
  }
  return Graph::from_edges(n, edges);
}

Graph intersect_blowup_on(const Graph& host, const Graph& base, int a) {
  if (a < 1 || host.n() < a * base.n()) throw InputError("host needs at least a |V(base)| vertices");
  std::vector<Edge> kept;
  for (const Edge& be : base.edges()) {
    std::vector<char> left(a, 0), right(a, 0);
    // lexicographic pairs between the two blocks, greedily matched
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < a; ++j) {
        const Vertex u = a * be.u + i, v = a * be.v + j;
        if (left[i] || right[j] || !host.adjacent(u, v)) continue;
        left[i] = right[j] = 1;
        kept.push_back({u, v});
      }
  }
  return Graph::from_edges(host.n(), kept);
}

IntersectBlowup random_intersect_blowup(const Graph& base, int ell, double p, double eps,
                                        const Rng& rng) {
  if (ell < 2) throw InputError("ell must be at least 2");
  if (!(p > 0) || p > 1) throw InputError("p must lie in (0, 1]");
  if (!(eps > 0)) throw InputError("eps must be positive");
  const int g = girth(base);
  if (g != 0 && g <= 2 * ell) throw InputError("base graph must have girth above 2l");
  IntersectBlowup out;
  out.a = std::max(1, static_cast<int>(std::lround(eps / p)));
  const int n = out.a * base.n();
  out.sampled = gnp(n, p, rng);
  out.graph = intersect_blowup_on(out.sampled, base, out.a);
  out.target = eps * eps * std::pow(p, 1.0 / ell) * std::pow(n, 1.0 + 1.0 / ell);
  out.shortfall = out.graph.m() < out.target;
  out.free = !has_cycle(out.graph, 2 * ell);
  if (!out.free) throw InvariantViolation("intersected blow-up contains a 2l-cycle");
  return out;
}

}  // namespace cyclefree
