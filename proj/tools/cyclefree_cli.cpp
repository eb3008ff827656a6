#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclefree/constructions.hpp"
#include "cyclefree/containers.hpp"
#include "cyclefree/cycles.hpp"
#include "cyclefree/errors.hpp"
#include "cyclefree/graph.hpp"
#include "cyclefree/kst.hpp"
#include "cyclefree/random_turan.hpp"
#include "cyclefree/supersat.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace cyclefree;

namespace {

constexpr const char* kVersion = "cyclefree 0.1.0";

struct Opts {
  std::string graph;
  std::string input;
  std::string out;
  std::string kind;
  std::string strategy = "exhaustive";
  std::string mode = "exact";
  int ell = 2;
  int s = 2;
  int t = 2;
  int n = 4;
  int b = 3;
  int trials = 1;
  int workers = 1;
  double k = 1.0;
  double p = -1.0;
  double delta = 0.25;
  double C = 1.0;
  double eps = 1.0;
  double sdelta = 1.0;
  double eps_schedule = 0.5;
  double target = -1.0;
  std::optional<double> tau;
  std::optional<uint64_t> seed;
  std::optional<size_t> budget;
  std::vector<int> ns;
  std::vector<double> ps;
  std::vector<uint64_t> indices;
  bool generous = false;
};

std::string hex(uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "exhaustive") return Strategy::exhaustive;
  if (s == "paper") return Strategy::paper;
  throw InputError("strategy must be exhaustive or paper");
}

class Run {
 public:
  Run(std::string command, const Opts& o) : o_(o) {
    manifest_["command"] = std::move(command);
    manifest_["version"] = kVersion;
    manifest_["params"] = json::object();
    manifest_["inputs"] = json::object();
  }

  template <class T>
  void param(const std::string& key, const T& v) {
    manifest_["params"][key] = v;
  }
  void rng(uint64_t seed, const std::string& label) {
    manifest_["rng"] = {{"seed", seed}, {"label", label}};
  }
  Graph load(const std::string& path, const std::string& key = "graph") {
    if (path.empty()) throw InputError("--" + key + " is required");
    Graph g = load_edge_list(path);
    manifest_["inputs"][key] = {{"path", path}, {"digest", hex(graph_digest(g))}};
    return g;
  }
  void input_digest(const std::string& key, const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    manifest_["inputs"][key] = {{"path", path}, {"digest", hex(fnv1a(ss.str()))}};
  }

  // Writes to --out when given, otherwise to stdout.
  void emit(const std::string& text) {
    if (o_.out.empty()) {
      std::cout << text;
      return;
    }
    write_file(o_.out, text);
    outputs_.push_back(o_.out);
  }
  void write_file(const std::string& path, const std::string& text) {
    if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << text;
  }
  void finish() {
    if (o_.out.empty()) return;
    manifest_["outputs"] = outputs_;
    const fs::path target = fs::is_directory(o_.out) ? fs::path(o_.out) / "manifest.json"
                                                      : fs::path(o_.out + ".manifest.json");
    write_file(target.string(), manifest_.dump(2) + "\n");
  }
  void output(const std::string& path) { outputs_.push_back(path); }

 private:
  const Opts& o_;
  json manifest_;
  std::vector<std::string> outputs_;
};

SupersatParams supersat_params(const Graph& g, const Opts& o) {
  const double k = std::max(edge_density_k(g, o.ell), 1e-12);
  if (o.generous) return SupersatParams::generous(o.ell, k, g.n());
  return SupersatParams::from(NbhdParams::uniform(o.ell, k, g.n(), o.C, o.eps, o.sdelta));
}

StepParams step_params(const Opts& o) {
  StepParams p;
  p.ell = o.ell;
  p.generous = o.generous || o.strategy == "exhaustive";
  p.C = o.C;
  p.eps = o.eps;
  p.supersat_delta = o.sdelta;
  p.strategy = parse_strategy(o.strategy);
  p.delta = o.delta;
  p.tau = o.tau;
  p.budget = o.budget;
  return p;
}

void step_manifest(Run& run, const Opts& o) {
  run.param("ell", o.ell);
  run.param("delta", o.delta);
  run.param("strategy", o.strategy);
  run.param("generous", o.generous || o.strategy == "exhaustive");
  run.param("C", o.C);
  run.param("eps", o.eps);
  run.param("supersat_delta", o.sdelta);
  if (o.tau) run.param("tau", *o.tau);
  if (o.budget) run.param("budget", *o.budget);
}

std::string format_graph(const Graph& g) { return to_edge_list(g); }

int cmd_enumerate_cycles(const Opts& o) {
  Run run("enumerate-cycles", o);
  Graph g = run.load(o.graph);
  run.param("ell", o.ell);
  std::ostringstream s;
  size_t count = 0;
  for_each_cycle(g, 2 * o.ell, [&](std::span<const Vertex> c) {
    if (o.budget && count >= *o.budget) throw BudgetExceeded("cycle count exceeds --budget");
    for (size_t i = 0; i < c.size(); ++i) s << (i ? " " : "") << c[i];
    s << '\n';
    ++count;
    return true;
  });
  run.emit(s.str());
  run.finish();
  return 0;
}

int cmd_free_count(const Opts& o) {
  Run run("free-count", o);
  run.param("n", o.n);
  run.param("ell", o.ell);
  const uint64_t c = enumerate_free_graphs(o.n, o.ell, [](uint64_t) {});
  run.emit(std::to_string(c) + "\n");
  run.finish();
  return 0;
}

int cmd_build_supersat(const Opts& o) {
  Run run("build-supersat", o);
  Graph g = run.load(o.graph);
  SupersatParams params = supersat_params(g, o);
  const double target = o.target >= 0 ? o.target : paper_target(params);
  run.param("ell", o.ell);
  run.param("generous", o.generous);
  run.param("C", o.C);
  run.param("eps", o.eps);
  run.param("delta", o.sdelta);
  run.param("target", target);
  run.param("strategy", o.strategy);
  BuildResult b = build_good_hypergraph(g, params, target, parse_strategy(o.strategy));
  std::ostringstream dump;
  b.h.dump(dump);
  run.emit(dump.str());
  std::cerr << "edges " << b.report.edges << " target " << target << " met "
            << (b.report.target_met ? 1 : 0) << '\n';
  if (!b.h.audit().ok()) throw InvariantViolation("built hypergraph fails its audit");
  run.finish();
  return 0;
}

int cmd_containers(const Opts& o) {
  Run run("containers", o);
  Graph g = run.load(o.graph);
  step_manifest(run, o);
  GraphStep step = graph_container_step(g, step_params(o));
  std::ostringstream s;
  s << "container\tedges\treduction\n";
  for (size_t i = 0; i < step.containers.size(); ++i) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu\t%d\t%.6g\n", i, step.containers[i].m(), step.reduction[i]);
    s << buf;
  }
  s << "# hyperedges " << step.hyperedges << " containers " << step.containers.size()
    << " strict " << step.all_strict << " eps_reduction " << step.eps_reduction
    << " property_b " << (step.no_supersaturation || step.run.all_reduced()) << " budget_ok "
    << step.run.budget_ok << (step.no_supersaturation ? " no_supersaturation" : "") << '\n';
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    for (size_t i = 0; i < step.containers.size(); ++i) {
      const std::string path = (fs::path(o.out) / ("container_" + std::to_string(i) + ".edges")).string();
      run.write_file(path, format_graph(step.containers[i]));
      run.output(path);
    }
    const std::string path = (fs::path(o.out) / "containers.tsv").string();
    run.write_file(path, s.str());
    run.output(path);
  } else {
    std::cout << s.str();
  }
  run.finish();
  return 0;
}

int cmd_iterate(const Opts& o) {
  Run run("iterate", o);
  run.param("n", o.n);
  run.param("k", o.k);
  run.param("epsilon_schedule", o.eps_schedule);
  step_manifest(run, o);
  IterParams ip;
  ip.step = step_params(o);
  ip.schedule_eps = o.eps_schedule;
  ContainerTree tree = iterate_containers(o.n, o.ell, o.k, ip);
  std::ostringstream s;
  s << tree.n << ' ' << tree.ell << ' ' << tree.k_target << ' ' << tree.nodes.size() << '\n';
  for (const TreeNode& node : tree.nodes)
    s << node.id << ' ' << node.parent << ' ' << node.depth << ' ' << node.g.m() << ' '
      << (node.leaf ? 1 : 0) << ' ' << "nodes/node_" << node.id << ".edges\n";
  if (!o.out.empty()) {
    fs::create_directories(fs::path(o.out) / "nodes");
    for (const TreeNode& node : tree.nodes) {
      const std::string path =
          (fs::path(o.out) / "nodes" / ("node_" + std::to_string(node.id) + ".edges")).string();
      run.write_file(path, format_graph(node.g));
    }
    const std::string path = (fs::path(o.out) / "tree.txt").string();
    run.write_file(path, s.str());
    run.output(path);
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "nodes %zu leaves %zu max_leaf_edges %zu log2_leaves %.4f bound_trend %.4f "
                "violations %zu\n",
                tree.nodes.size(), tree.leaves.size(), tree.max_leaf_edges, tree.log2_leaves(),
                tree.log2_bound_trend(), tree.bound_violations.size());
  std::cout << buf;
  run.finish();
  return 0;
}

std::string format_encoding(int n, int ell, const ColouredEncoding& e) {
  std::ostringstream s;
  s << n << ' ' << ell << ' ' << e.fingerprints.size() << '\n';
  for (size_t i = 0; i < e.fingerprints.size(); ++i) {
    s << "T " << i + 1 << ' ' << e.fingerprints[i].m() << '\n';
    for (const Edge& x : e.fingerprints[i].edges()) s << x.u << ' ' << x.v << '\n';
  }
  s << "G " << e.final.m() << '\n';
  for (const Edge& x : e.final.edges()) s << x.u << ' ' << x.v << '\n';
  return s.str();
}

struct EncodingFile {
  int n = 0;
  int ell = 2;
  std::vector<Graph> fingerprints;
  Graph final;
};

EncodingFile read_encoding(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  EncodingFile f;
  size_t m = 0;
  if (!(in >> f.n >> f.ell >> m)) throw InputError("encoding dump: bad header");
  auto block = [&](const std::string& tag) {
    std::string t;
    size_t idx = 0, count = 0;
    if (!(in >> t) || t != tag) throw InputError("encoding dump: expected " + tag);
    if (tag == "T" && !(in >> idx)) throw InputError("encoding dump: bad block");
    if (!(in >> count)) throw InputError("encoding dump: bad block");
    std::vector<Edge> es(count);
    for (auto& e : es)
      if (!(in >> e.u >> e.v)) throw InputError("encoding dump: truncated");
    return Graph::from_edges(f.n, es);
  };
  for (size_t i = 0; i < m; ++i) f.fingerprints.push_back(block("T"));
  f.final = block("G");
  return f;
}

EncodeParams encode_params(const Opts& o) {
  EncodeParams p;
  p.step = step_params(o);
  p.k = o.k;
  p.eps = o.eps_schedule;
  return p;
}

int cmd_encode(const Opts& o) {
  Run run("encode", o);
  Graph g = run.load(o.graph);
  run.param("k", o.k);
  run.param("epsilon_schedule", o.eps_schedule);
  step_manifest(run, o);
  const EncodeParams p = encode_params(o);
  ColouredEncoding e = encode_coloured(g, p);
  if (!(replay_encoding(g.n(), e.fingerprints, p) == e.final))
    throw InvariantViolation("replay of the fingerprint tuple differs");
  run.emit(format_encoding(g.n(), o.ell, e));
  std::cerr << "levels " << e.fingerprints.size() << " sizes";
  for (const Graph& t : e.fingerprints) std::cerr << ' ' << t.m();
  std::cerr << " final " << e.final.m() << " sandwich " << e.sandwich << '\n';
  run.finish();
  return 0;
}

int cmd_blowup(const Opts& o) {
  Run run("blowup", o);
  Graph base = run.load(o.graph);
  run.param("ell", o.ell);
  if (o.p >= 0) {
    if (!o.seed) throw InputError("--seed is required for the random construction");
    run.param("p", o.p);
    run.param("eps", o.eps);
    run.rng(*o.seed, "intersect");
    IntersectBlowup r = random_intersect_blowup(base, o.ell, o.p, o.eps, Rng(*o.seed, "intersect"));
    run.emit(format_graph(r.graph));
    std::cerr << "a " << r.a << " edges " << r.graph.m() << " target " << r.target
              << (r.shortfall ? " shortfall" : "") << '\n';
    run.finish();
    return 0;
  }
  BlowupSpec spec;
  spec.base = base;
  spec.b = o.b;
  run.param("b", o.b);
  if (!o.indices.empty()) {
    spec.mode = MatchingMode::fixed;
    spec.indices = o.indices;
    run.param("indices", o.indices);
  } else if (o.seed) {
    spec.mode = MatchingMode::sample;
    spec.seed = *o.seed;
    run.rng(*o.seed, "blowup");
  } else {
    throw InputError("give --indices or --seed");
  }
  Graph g = blow_up(spec);
  FamilyCheck c = verify_family_free(g, blowup_family(o.ell));
  run.emit(format_graph(g));
  std::cerr << "vertices " << g.n() << " edges " << g.m() << " free " << c.free << '\n';
  run.finish();
  return c.free ? 0 : 3;
}

int cmd_sweep(const Opts& o) {
  if (!o.seed) throw InputError("--seed is required");
  Run run("sweep", o);
  SweepPlan plan;
  plan.ell = o.ell;
  plan.ns = o.ns.empty() ? std::vector<int>{o.n} : o.ns;
  plan.ps = o.ps.empty() ? std::vector<double>{o.p < 0 ? 0.5 : o.p} : o.ps;
  plan.trials = o.trials;
  plan.seed = *o.seed;
  plan.workers = o.workers;
  if (o.mode == "greedy")
    plan.mode = SolveMode::greedy;
  else if (o.mode != "exact")
    throw InputError("mode must be exact or greedy");
  if (o.budget) plan.budget.max_nodes = *o.budget;
  run.param("ell", plan.ell);
  run.param("ns", plan.ns);
  run.param("ps", plan.ps);
  run.param("trials", plan.trials);
  run.param("mode", o.mode);
  run.param("max_nodes", plan.budget.max_nodes);
  run.rng(plan.seed, "sweep");
  SweepResult r = run_sweep(plan);
  std::ostringstream s;
  write_sweep(s, r);
  run.emit(s.str());
  std::cerr << "monotone " << r.monotone << " witness_ok " << r.witness_ok << " greedy_ok "
            << r.greedy_ok << '\n';
  run.finish();
  return r.monotone && r.witness_ok && r.greedy_ok ? 0 : 3;
}

KstParams kst_params(const Graph& g, const Opts& o) {
  return o.generous ? KstParams::generous(g, o.s, o.t) : KstParams::for_graph(g, o.s, o.t, o.delta);
}

int cmd_kst_build(const Opts& o) {
  Run run("kst-build", o);
  Graph g = run.load(o.graph);
  run.param("s", o.s);
  run.param("t", o.t);
  run.param("delta", o.delta);
  run.param("generous", o.generous);
  run.param("strategy", o.strategy);
  const KstStrategy strat = o.strategy == "exhaustive" ? KstStrategy::exhaustive : KstStrategy::greedy;
  if (o.strategy != "exhaustive" && o.strategy != "paper" && o.strategy != "greedy")
    throw InputError("strategy must be exhaustive or paper");
  const double target = o.target >= 0 ? o.target : 1e18;
  KstBuild b = build_good_kst(g, kst_params(g, o), target, strat);
  std::ostringstream s;
  b.h.dump(s);
  run.emit(s.str());
  std::cerr << "pairs " << b.report.pairs << " saturated_edges " << b.report.saturated_edges
            << " audit " << b.report.audit.ok() << '\n';
  run.finish();
  return b.report.audit.ok() ? 0 : 3;
}

bool audit_tree(const Opts& o, std::ostream& log) {
  const fs::path dir = o.input;
  std::ifstream in(dir / "tree.txt");
  if (!in) throw InputError("cannot read " + (dir / "tree.txt").string());
  int n, ell;
  double k;
  size_t count;
  if (!(in >> n >> ell >> k >> count)) throw InputError("tree dump: bad header");
  struct Row {
    int id, parent, depth, edges, leaf;
    std::string file;
  };
  std::vector<Row> rows(count);
  std::vector<Graph> graphs(count);
  bool ok = true;
  const double bound = k * std::pow(n, 1.0 + 1.0 / ell);
  for (size_t i = 0; i < count; ++i) {
    Row& r = rows[i];
    if (!(in >> r.id >> r.parent >> r.depth >> r.edges >> r.leaf >> r.file) ||
        r.id != static_cast<int>(i))
      throw InputError("tree dump: bad row");
    graphs[i] = load_edge_list((dir / r.file).string());
    if (graphs[i].n() != n || graphs[i].m() != r.edges) {
      log << "node " << i << ": edge count mismatch\n";
      ok = false;
    }
    if (r.parent >= static_cast<int>(i) || (i == 0) != (r.parent < 0)) {
      log << "node " << i << ": bad parent\n";
      ok = false;
    } else if (r.parent >= 0 && !graphs[r.parent].contains(graphs[i])) {
      log << "node " << i << ": not a subgraph of its parent\n";
      ok = false;
    }
    if (r.leaf && r.edges > bound + 1e-9) {
      if (has_cycle(graphs[i], 2 * ell)) {
        log << "node " << i << ": leaf above the edge bound contains a cycle\n";
        ok = false;
      } else {
        log << "node " << i << ": free leaf above the edge bound\n";
      }
    }
  }
  if (count == 0 || !(graphs[0] == complete_graph(n))) {
    log << "root is not K_n\n";
    ok = false;
  }
  return ok;
}

int cmd_audit(const Opts& o) {
  Run run("audit", o);
  std::ostringstream log;
  bool ok = true;
  if (o.kind == "hypergraph") {
    Graph g = run.load(o.graph);
    run.input_digest("input", o.input);
    std::ifstream in(o.input);
    if (!in) throw InputError("cannot read " + o.input);
    int n = 0, ell = 0;
    auto edges = read_hyperedges(in, &n, &ell);
    if (n != g.n()) throw InputError("hypergraph dump does not match the host graph");
    Opts local = o;
    local.ell = ell;
    DegreeAudit a = audit_hyperedges(g, supersat_params(g, local), edges);
    log << "cycles " << a.cycles_ok << " table " << a.table_ok << " good " << a.good << '\n';
    ok = a.ok();
  } else if (o.kind == "kst") {
    Graph g = run.load(o.graph);
    run.input_digest("input", o.input);
    std::ifstream in(o.input);
    if (!in) throw InputError("cannot read " + o.input);
    int s = 0, t = 0;
    auto pairs = read_pairs(in, &s, &t);
    Opts local = o;
    local.s = s;
    local.t = t;
    PairHypergraph h(g, kst_params(g, local));
    KstAudit a;
    for (const VertexPair& p : pairs) {
      try {
        h.add(p);
      } catch (const InputError& e) {
        log << "pair rejected: " << e.what() << '\n';
        a.good = false;
      }
    }
    KstAudit b = h.audit();
    log << "pairs " << b.pairs_ok << " table " << b.table_ok << " good " << (a.good && b.good) << '\n';
    ok = a.good && b.ok();
  } else if (o.kind == "tree") {
    ok = audit_tree(o, log);
  } else if (o.kind == "encoding") {
    Graph g = run.load(o.graph);
    run.input_digest("input", o.input);
    EncodingFile f = read_encoding(o.input);
    if (f.n != g.n()) throw InputError("encoding does not match the graph");
    Opts local = o;
    local.ell = f.ell;
    const EncodeParams p = encode_params(local);
    Graph replay = replay_encoding(f.n, f.fingerprints, p);
    if (!(replay == f.final)) {
      log << "replay differs from the stored container\n";
      ok = false;
    }
    std::vector<char> covered(num_pairs(f.n), 0);
    for (const Graph& t : f.fingerprints)
      for (const Edge& e : t.edges()) {
        if (!g.adjacent(e.u, e.v)) ok = false;
        covered[pair_rank(f.n, e.u, e.v)] = 1;
      }
    for (const Edge& e : g.edges())
      if (!covered[pair_rank(f.n, e.u, e.v)] && !f.final.adjacent(e.u, e.v)) ok = false;
    log << "sandwich+replay " << ok << '\n';
  } else {
    throw InputError("--kind must be hypergraph, kst, tree or encoding");
  }
  std::cout << log.str() << (ok ? "audit ok\n" : "audit FAILED\n");
  run.finish();
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Even-cycle supersaturation, containers and random Turan experiments"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Opts o;
  std::vector<std::string> dummy;

  auto common = [&](CLI::App* c) {
    c->add_option("--out", o.out, "Output file or directory");
    c->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto step_flags = [&](CLI::App* c) {
    c->add_option("--ell", o.ell, "Half cycle length")->check(CLI::Range(2, 4));
    c->add_option("--delta", o.delta, "Container delta");
    c->add_option("--tau", o.tau, "Override tau");
    c->add_option("--budget", o.budget, "Fingerprint budget override");
    c->add_option("--strategy", o.strategy, "exhaustive or paper");
    c->add_option("--C", o.C, "Supersaturation C (paper strategy)");
    c->add_option("--eps", o.eps, "Supersaturation eps (paper strategy)");
    c->add_option("--supersat-delta", o.sdelta, "Supersaturation delta (paper strategy)");
    c->add_flag("--generous", o.generous, "Infinite degree caps");
  };

  auto* ec = app.add_subcommand("enumerate-cycles", "List every 2l-cycle of a graph");
  ec->add_option("--graph", o.graph, "Edge-list file")->required();
  ec->add_option("--ell", o.ell, "Half cycle length")->check(CLI::Range(2, 8));
  ec->add_option("--budget", o.budget, "Refuse more than this many cycles");
  common(ec);

  auto* fc = app.add_subcommand("free-count", "Count labelled C_{2l}-free graphs on [n]");
  fc->add_option("--n", o.n, "Vertices")->required();
  fc->add_option("--ell", o.ell, "Half cycle length")->check(CLI::Range(2, 8));
  common(fc);

  auto* bs = app.add_subcommand("build-supersat", "Build a good cycle hypergraph");
  bs->add_option("--graph", o.graph, "Edge-list file")->required();
  bs->add_option("--ell", o.ell, "Half cycle length")->check(CLI::Range(2, 4));
  bs->add_option("--C", o.C, "Constant C");
  bs->add_option("--eps", o.eps, "Uniform eps(t)");
  bs->add_option("--delta", o.sdelta, "delta");
  bs->add_option("--target", o.target, "Hyperedge target (default delta k^{2l} n^2)");
  bs->add_option("--strategy", o.strategy, "exhaustive or paper");
  bs->add_flag("--generous", o.generous, "Infinite degree caps");
  common(bs);

  auto* ct = app.add_subcommand("containers", "One graph-level container step");
  ct->add_option("--graph", o.graph, "Edge-list file")->required();
  step_flags(ct);
  common(ct);

  auto* it = app.add_subcommand("iterate", "Iterate container steps from K_n");
  it->add_option("--n", o.n, "Vertices")->required();
  it->add_option("--k", o.k, "Target k")->required();
  it->add_option("--epsilon-schedule", o.eps_schedule, "eps of the k(i) schedule");
  step_flags(it);
  common(it);

  auto* en = app.add_subcommand("encode", "Coloured-graph encoding of a free graph");
  en->add_option("--graph", o.graph, "Edge-list file of I")->required();
  en->add_option("--k", o.k, "Stop once e(G) <= k n^{1+1/l}");
  en->add_option("--epsilon-schedule", o.eps_schedule, "eps for the mu(j) check");
  step_flags(en);
  common(en);

  auto* bu = app.add_subcommand("blowup", "Blow-up or random intersected blow-up");
  bu->add_option("--graph", o.graph, "Base edge-list file")->required();
  bu->add_option("--b", o.b, "Block size")->check(CLI::Range(1, 8));
  bu->add_option("--ell", o.ell, "Half cycle length")->check(CLI::Range(2, 8));
  bu->add_option("--indices", o.indices, "Matching index per base edge");
  bu->add_option("--seed", o.seed, "Seed");
  bu->add_option("--p", o.p, "Edge probability (random construction)");
  bu->add_option("--eps", o.eps, "eps of the random construction");
  common(bu);

  auto* sw = app.add_subcommand("sweep", "ex(G(n,p), C_{2l}) sweep");
  sw->add_option("--seed", o.seed, "Seed")->required();
  sw->add_option("--ell", o.ell, "Half cycle length")->check(CLI::Range(2, 4));
  sw->add_option("--n", o.ns, "Vertex counts");
  sw->add_option("--p", o.ps, "Edge probabilities");
  sw->add_option("--k", dummy, "k values; p = k^{-l/(l-1)} log k")->each([&](const std::string& v) {
    o.ps.push_back(SweepPlan::ps_from_ks(o.ell, {std::stod(v)}).front());
  });
  sw->add_option("--trials", o.trials, "Trials per cell")->check(CLI::PositiveNumber);
  sw->add_option("--mode", o.mode, "exact or greedy");
  sw->add_option("--budget", o.budget, "Exact solver node budget");
  common(sw);

  auto* kb = app.add_subcommand("kst-build", "Build a good K_{s,t} pair hypergraph");
  kb->add_option("--graph", o.graph, "Edge-list file")->required();
  kb->add_option("--s", o.s, "s")->check(CLI::Range(1, 4));
  kb->add_option("--t", o.t, "t")->check(CLI::Range(1, 4));
  kb->add_option("--delta", o.delta, "delta");
  kb->add_option("--target", o.target, "Pair target");
  kb->add_option("--strategy", o.strategy, "exhaustive or paper");
  kb->add_flag("--generous", o.generous, "Infinite degree caps");
  common(kb);

  auto* au = app.add_subcommand("audit", "Re-verify a dumped artifact");
  au->add_option("--kind", o.kind, "hypergraph, kst, tree or encoding")->required();
  au->add_option("--input", o.input, "Dump file or tree directory")->required();
  au->add_option("--graph", o.graph, "Host graph edge-list file");
  au->add_option("--k", o.k, "k (encoding)");
  au->add_option("--epsilon-schedule", o.eps_schedule, "eps (encoding)");
  au->add_option("--s", o.s, "s");
  au->add_option("--t", o.t, "t");
  step_flags(au);
  common(au);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "enumerate-cycles") return cmd_enumerate_cycles(o);
    if (cmd == "free-count") return cmd_free_count(o);
    if (cmd == "build-supersat") return cmd_build_supersat(o);
    if (cmd == "containers") return cmd_containers(o);
    if (cmd == "iterate") return cmd_iterate(o);
    if (cmd == "encode") return cmd_encode(o);
    if (cmd == "blowup") return cmd_blowup(o);
    if (cmd == "sweep") return cmd_sweep(o);
    if (cmd == "kst-build") return cmd_kst_build(o);
    if (cmd == "audit") return cmd_audit(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
