#include "thetasat/io.hpp"

#include "thetasat/errors.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>
#include <set>
#include <tuple>

namespace thetasat::io {

using nlohmann::json;

namespace {

Rational rational_field(const json& j, const char* key, const Rational& fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_float()) return parse_rational(v.dump());
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad rational for '") + key + "': " + e.what());
  }
  throw ConfigError(std::string("field '") + key + "' must be a number or a fraction string");
}

template <class T>
T int_field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("field '") + key + "' must be an integer");
  const auto x = v.get<long long>();
  if (x < 0) throw ConfigError(std::string("field '") + key + "' must be non-negative");
  return static_cast<T>(x);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void only_keys(const json& j, const std::string& section, const std::set<std::string>& keys) {
  for (const auto& [key, value] : j.items())
    if (!keys.count(key)) throw ConfigError("unknown config key '" + section + key + "'");
}

}  // namespace

Config parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  only_keys(j, "", {"a", "b", "delta", "c", "cap", "max_iterations", "node_budget", "min_fanout", "max_paths", "k0",
                    "seed", "exact_cap", "graph", "phase", "containers"});
  Config c;
  auto& s = c.supersat;
  s.a = int_field(j, "a", s.a);
  s.b = int_field(j, "b", s.b);
  s.delta = rational_field(j, "delta", s.delta);
  s.c = rational_field(j, "c", s.c);
  s.cap = int_field(j, "cap", s.cap);
  s.max_iterations = int_field(j, "max_iterations", s.max_iterations);
  s.node_budget = int_field(j, "node_budget", s.node_budget);
  s.min_fanout = int_field(j, "min_fanout", s.min_fanout);
  s.max_paths = int_field(j, "max_paths", s.max_paths);
  c.k0 = rational_field(j, "k0", c.k0);
  c.seed = int_field(j, "seed", c.seed);
  c.exact_cap = int_field(j, "exact_cap", c.exact_cap);
  require(s.a >= 2 && s.b >= 2, "a and b must be at least 2");
  require(s.a * (s.b - 1) + 2 <= 64, "pattern must have at most 64 vertices");
  require(s.delta > 0 && s.delta < 1, "delta must lie in (0, 1)");
  require(s.c > 0 && s.c <= 1, "c must lie in (0, 1]");
  require(s.cap >= 1, "cap must be positive");
  require(c.k0 > 0, "k0 must be positive");

  if (j.contains("graph")) {
    const auto& g = j.at("graph");
    require(g.is_object(), "graph must be an object");
    only_keys(g, "graph.", {"kind", "n", "right", "p", "path"});
    if (g.contains("kind")) c.graph.kind = g.at("kind").get<std::string>();
    c.graph.n = int_field(g, "n", c.graph.n);
    c.graph.right = int_field(g, "right", c.graph.right);
    c.graph.p = rational_field(g, "p", c.graph.p);
    if (g.contains("path")) c.graph.path = g.at("path").get<std::string>();
  }
  const std::set<std::string> kinds{"complete", "gnp", "bipartite", "cycle", "file"};
  require(kinds.count(c.graph.kind) > 0, "graph.kind must be complete, gnp, bipartite, cycle or file");
  require(c.graph.p >= 0 && c.graph.p <= 1, "graph.p must lie in [0, 1]");
  require(c.graph.kind != "file" || !c.graph.path.empty(), "graph.path is required for kind file");

  if (j.contains("phase")) {
    const auto& p = j.at("phase");
    require(p.is_object(), "phase must be an object");
    only_keys(p, "phase.", {"a", "b", "n", "trials", "exact_budget", "p_grid"});
    c.phase.a = int_field(p, "a", c.phase.a);
    c.phase.b = int_field(p, "b", c.phase.b);
    c.phase.n = int_field(p, "n", c.phase.n);
    c.phase.trials = int_field(p, "trials", c.phase.trials);
    c.phase.exact_budget = int_field(p, "exact_budget", c.phase.exact_budget);
    if (p.contains("p_grid")) {
      require(p.at("p_grid").is_array(), "phase.p_grid must be an array");
      json wrapper;
      for (const auto& v : p.at("p_grid")) {
        wrapper["p"] = v;
        c.phase.p_grid.push_back(rational_field(wrapper, "p", 0));
      }
    }
  }
  require(c.phase.a >= 2 && c.phase.b >= 2, "phase pattern needs a, b >= 2");
  for (const auto& p : c.phase.p_grid) require(p >= 0 && p <= 1, "phase.p_grid entries must lie in [0, 1]");

  if (j.contains("containers")) {
    const auto& k = j.at("containers");
    require(k.is_object(), "containers must be an object");
    only_keys(k, "containers.", {"instances", "min_vertices", "max_vertices", "uniformity", "edge_probability", "tau", "delta"});
    c.containers.instances = int_field(k, "instances", c.containers.instances);
    c.containers.min_vertices = int_field(k, "min_vertices", c.containers.min_vertices);
    c.containers.max_vertices = int_field(k, "max_vertices", c.containers.max_vertices);
    c.containers.uniformity = int_field(k, "uniformity", c.containers.uniformity);
    c.containers.edge_probability = rational_field(k, "edge_probability", c.containers.edge_probability);
    c.containers.tau = rational_field(k, "tau", c.containers.tau);
    c.containers.delta = rational_field(k, "delta", c.containers.delta);
  }
  const auto& k = c.containers;
  require(k.min_vertices >= 1 && k.min_vertices <= k.max_vertices && k.max_vertices <= 24,
          "containers vertex range must satisfy 1 <= min <= max <= 24");
  require(k.uniformity >= 2, "containers.uniformity must be at least 2");
  require(k.tau > 0, "containers.tau must be positive");
  require(k.delta > 0 && k.delta <= 1, "containers.delta must lie in (0, 1]");
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return parse_config(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a field of the wrong type: ") + e.what());
  }
}

json to_json(const Config& c) {
  const auto& s = c.supersat;
  json grid = json::array();
  for (const auto& p : c.phase.p_grid) grid.push_back(to_string(p));
  return json{
      {"a", s.a},
      {"b", s.b},
      {"delta", to_string(s.delta)},
      {"c", to_string(s.c)},
      {"cap", s.cap},
      {"max_iterations", s.max_iterations},
      {"node_budget", s.node_budget},
      {"min_fanout", s.fanout()},
      {"max_paths", s.max_paths},
      {"k0", to_string(c.k0)},
      {"seed", c.seed},
      {"exact_cap", c.exact_cap},
      {"graph", {{"kind", c.graph.kind}, {"n", c.graph.n}, {"right", c.graph.right}, {"p", to_string(c.graph.p)}, {"path", c.graph.path}}},
      {"phase",
       {{"a", c.phase.a}, {"b", c.phase.b}, {"n", c.phase.n}, {"p_grid", grid}, {"trials", c.phase.trials},
        {"exact_budget", c.phase.exact_budget}}},
      {"containers",
       {{"instances", c.containers.instances},
        {"min_vertices", c.containers.min_vertices},
        {"max_vertices", c.containers.max_vertices},
        {"uniformity", c.containers.uniformity},
        {"edge_probability", to_string(c.containers.edge_probability)},
        {"tau", to_string(c.containers.tau)},
        {"delta", to_string(c.containers.delta)}}},
  };
}

Graph build_graph(const GraphSpec& spec, std::uint64_t seed) {
  if (spec.kind == "complete") return Graph::complete(spec.n);
  if (spec.kind == "gnp") return sample_gnp(spec.n, spec.p, seed);
  if (spec.kind == "bipartite") return Graph::complete_bipartite(spec.n, spec.right > 0 ? spec.right : spec.n);
  if (spec.kind == "cycle") return Graph::cycle(spec.n);
  std::ifstream in(spec.path);
  if (!in) throw ConfigError("cannot open edge list '" + spec.path + "'");
  return read_edge_list(in);
}

std::vector<PhaseRow> run_phase_experiment(const PhaseSpec& spec, std::uint64_t seed, int exact_cap,
                                           oracle::ExactSolver& solver) {
  std::vector<Rational> grid = spec.p_grid;
  if (grid.empty())
    for (int i = 1; i <= 10; ++i) grid.emplace_back(i, 10);
  std::vector<PhaseRow> rows;
  for (const auto& p : grid)
    for (int trial = 0; trial < spec.trials; ++trial) {
      const Graph g = sample_gnp(spec.n, p, seed + static_cast<std::uint64_t>(trial));
      PhaseRow row;
      row.n = spec.n;
      row.p = p;
      row.trial = trial;
      row.edges = g.size();
      row.greedy = oracle::greedy_free(g, spec.a, spec.b).size();
      row.deletion_bound = oracle::deletion_lower_bound(g, spec.a, spec.b);
      if (spec.n <= exact_cap && g.size() <= 64) {
        const auto ex = solver.solve(g, spec.a, spec.b);
        row.exact = ex.value;
        row.exact_optimal = ex.optimal;
      }
      rows.push_back(std::move(row));
    }
  std::sort(rows.begin(), rows.end(), [](const PhaseRow& x, const PhaseRow& y) {
    return std::tie(x.n, x.p, x.trial) < std::tie(y.n, y.p, y.trial);
  });
  return rows;
}

void write_phase_csv(std::ostream& os, std::span<const PhaseRow> rows) {
  os << "# thetasat-experiment v1\n";
  os << "n,p,trial,edges,greedy,exact,exact_optimal,deletion_bound\n";
  for (const auto& r : rows) {
    os << r.n << ',' << to_string(r.p) << ',' << r.trial << ',' << r.edges << ',' << r.greedy << ',';
    if (r.exact) os << *r.exact;
    os << ',' << (r.exact ? (r.exact_optimal ? "1" : "0") : "") << ',' << r.deletion_bound << '\n';
  }
}

UniformHypergraph random_uniform_hypergraph(int n, int r, const Rational& probability, std::uint64_t seed) {
  if (n < r || r < 1) throw DomainError("random hypergraph needs n >= r >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1);
  const double p = static_cast<double>(probability);
  UniformHypergraph h(n, r);
  std::vector<char> pick(static_cast<std::size_t>(n), 0);
  std::fill(pick.begin(), pick.begin() + r, 1);
  do {
    if (unit(rng) < p) {
      VertexSet e;
      for (int v = 0; v < n; ++v)
        if (pick[static_cast<std::size_t>(v)]) e.push_back(v);
      h.add_edge(std::move(e));
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return h;
}

ExpansionRun run_expansion(const Graph& g, int b, const Rational& c, const RefineOptions& options) {
  const CoreResult core = min_degree_core(g, b);
  Graph gprime = g.induced(core.kept);
  const ScaleParams sp = scale_parameters(gprime, g.order(), b);
  const EpsilonSchedule eps = epsilon_schedule(b, c);
  XSetResult xs = x_set(gprime, sp, eps);
  RefineOutcome outcome;
  if (xs.x.empty()) {
    outcome.failure = "empty X";
  } else if (const auto it = xs.tuples.find(xs.x.front()); it == xs.tuples.end()) {
    outcome.failure = "tuple";
  } else {
    outcome = refine_paths(gprime, it->second, sp, eps, {}, options);
    if (outcome.certificate) outcome.certificate->x_set = xs.x;
  }
  std::optional<ExpansionReport> report;
  if (outcome.certificate) report = verify_expansion(gprime, *outcome.certificate, sp);
  return ExpansionRun{std::move(gprime), sp, std::move(xs), std::move(outcome), report};
}

HypergraphSource supersat_source(const SupersatConfig& config) {
  return [config](const Graph& g) {
    const ThetaPattern pattern(config.a, config.b);
    UniformHypergraph h(static_cast<int>(g.size()), pattern.size());
    if (g.size() == 0) return h;
    std::map<Edge, HyperVertex> index;
    for (std::size_t i = 0; i < g.size(); ++i) index.emplace(g.edges()[i], static_cast<HyperVertex>(i));
    const auto result = supersaturate(std::make_shared<const Graph>(g), config);
    for (const auto& e : result.family.all().hyperedges()) {
      VertexSet set;
      for (const Edge& edge : image_edges(pattern, e)) set.push_back(index.at(edge));
      h.add_edge(std::move(set));
    }
    return h;
  };
}

namespace {

json edges_json(std::span<const Edge> edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

json conditions_json(const ExpansionConditions& c) {
  return json{{"top_sizes", c.top_sizes},         {"pair_counts", c.pair_counts},
              {"branching", c.branching},         {"forward_degree", c.forward_degree},
              {"back_degree", c.back_degree},     {"endpoint_paths", c.endpoint_paths},
              {"size_bound", c.size_bound},       {"branching_factor", c.branching_factor}};
}

json goodness_json(const GoodnessReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    json pairs = json::array();
    for (const auto& p : v.chi.pairs()) pairs.push_back({p.w, p.z});
    violations.push_back({{"pairs", pairs}, {"degree", v.degree}, {"threshold", v.threshold.to_string()}});
  }
  return json{{"good", r.good}, {"checked", r.checked}, {"violation_count", r.violation_count}, {"violations", violations}};
}

}  // namespace

json manifest_json(const SupersatResult& result, const Config& config) {
  json records = json::array();
  for (const auto& r : result.records)
    records.push_back({{"index", r.index},
                       {"m", r.m},
                       {"min_degree", r.min_degree},
                       {"r", r.r},
                       {"removed_edges", r.removed_edges},
                       {"t", r.t},
                       {"s", r.s},
                       {"x_fallback", r.x_fallback},
                       {"x_size", r.x_size},
                       {"x", r.x},
                       {"y", r.y},
                       {"paths", r.paths},
                       {"nodes", r.nodes},
                       {"s_clamped", r.s_clamped},
                       {"conditions", conditions_json(r.conditions)}});
  json families = json::array();
  for (const auto& g : result.goodness)
    families.push_back({{"family", g.family}, {"s", g.s}, {"t", g.t}, {"report", goodness_json(g.report)}});
  json collections = json::array();
  for (const auto& [s, t] : result.family.keys())
    collections.push_back({{"s", s}, {"t", t}, {"size", result.family.find(s, t)->size()}});
  return json{{"format", "thetasat-manifest v1"},
              {"config", to_json(config)},
              {"host_order", result.family.all().host().order()},
              {"host_edges", result.family.all().host().size()},
              {"hyperedges", result.family.all().size()},
              {"chosen_t", result.chosen_t},
              {"hprime_size", result.hprime.size()},
              {"stop", stop_reason_name(result.stop)},
              {"detail", result.detail},
              {"k", result.k.describe()},
              {"target", result.target.describe()},
              {"all_good", result.all_good()},
              {"violations", result.violation_count()},
              {"collections", collections},
              {"iterations", records},
              {"goodness", families}};
}

json certificate_json(const ExpansionCertificate& cert) {
  json paths = json::array();
  for (const auto& p : cert.paths) paths.push_back(p);
  json forbidden = json::array();
  for (const auto& f : cert.forbidden) forbidden.push_back({{"vertices", f.vertices}, {"edges", edges_json(f.edges)}});
  return json{{"format", "thetasat-certificate v1"},
              {"x", cert.x},
              {"t", cert.t},
              {"layers", cert.layers},
              {"paths", paths},
              {"eps_used", to_string(cert.eps_used)},
              {"x_set", cert.x_set},
              {"forbidden", forbidden},
              {"conditions", conditions_json(cert.conditions)}};
}

json report_json(const ExpansionReport& r) {
  return json{{"a", r.a}, {"b", r.b}, {"c", r.c}, {"d", r.d},     {"e", r.e},
              {"f", r.f}, {"g", r.g}, {"h", r.h}, {"min", r.min}, {"x_over_m", r.x_over_m},
              {"all_positive", r.all_positive()}};
}

json container_json(const ContainerSet& set, const ContainerCheck& check) {
  return json{{"containers", set.containers.size()},
              {"fingerprints", set.fingerprints.size()},
              {"tau", to_string(set.tau)},
              {"delta", to_string(set.delta)},
              {"measured_delta", to_string(set.measured_delta)},
              {"delta_condition", set.delta_condition},
              {"exhaustive", set.exhaustive},
              {"max_fingerprint", set.max_fingerprint},
              {"fingerprint_bound", set.fingerprint_bound},
              {"independent_sets", check.independent_sets},
              {"uncovered", check.uncovered},
              {"loses_delta", check.loses_delta},
              {"worst_kept_fraction", check.worst_kept_fraction}};
}

json trace_json(const IterationTrace& trace) {
  json rounds = json::array();
  for (const auto& r : trace.rounds)
    rounds.push_back({{"edges_before", r.edges_before},
                      {"hyperedges", r.hyperedges},
                      {"fingerprint", edges_json(r.fingerprint)},
                      {"container_edges", r.container_edges},
                      {"edges_after", r.edges_after},
                      {"k", r.k},
                      {"tau", r.tau},
                      {"mu", r.mu},
                      {"fingerprint_within_mu", r.fingerprint_within_mu}});
  return json{{"rounds", rounds},
              {"fingerprint_union", edges_json(trace.fingerprint_union)},
              {"residual_edges", trace.residual.size()},
              {"stop", trace.stop},
              {"sandwich", trace.sandwich},
              {"round_bound", trace.round_bound}};
}

void write_bounds_csv(std::ostream& os, const BoundScanReport& report) {
  os << "# thetasat-bounds v1 a=" << report.a << " b=" << report.b << " delta=" << to_string(report.delta) << '\n';
  os << "t,kind,p,edges,size,f,g,certified,direct,log2_min_c,note\n";
  for (const auto& r : report.rows)
    os << r.t << ',' << (r.cycle ? "cycle" : "forest") << ',' << r.p << ',' << r.edges << ',' << r.signature.size << ','
       << r.signature.f << ',' << r.signature.g << ',' << (r.certified ? "feasible" : "Infeasible") << ','
       << (r.direct ? "feasible" : "Infeasible") << ',' << r.log2_min_c << ',' << r.note << '\n';
}

void write_exponents_csv(std::ostream& os, std::span<const oracle::ExponentRow> rows) {
  os << "# thetasat-exponents v1\n";
  os << "a,b,m2,m2_measured,inverse_m2,sparse_exponent,upper_exponent,log_power,dense_regime,middle_regime\n";
  for (const auto& r : rows)
    os << r.a << ',' << r.b << ',' << to_string(r.m2) << ',' << (r.m2_measured ? to_string(*r.m2_measured) : "") << ','
       << to_string(1 / r.m2) << ',' << to_string(r.sparse_exponent) << ',' << to_string(r.upper_exponent) << ','
       << r.log_power << ",p^" << to_string(r.dense_p_exponent) << " n^" << to_string(r.dense_n_exponent)
       << ",n^" << to_string(r.middle_exponent) << " (log n)^O(1)\n";
}

}  // namespace thetasat::io
