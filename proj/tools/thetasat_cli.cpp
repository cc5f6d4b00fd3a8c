#include "thetasat/errors.hpp"
#include "thetasat/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

namespace fs = std::filesystem;
using namespace thetasat;
using nlohmann::json;

namespace {

int log_level() {
  const char* env = std::getenv("SUPERSAT_LOG");
  if (!env) return 1;
  const std::string v(env);
  if (v == "quiet" || v == "0") return 0;
  if (v == "debug" || v == "2") return 2;
  return 1;
}

void info(const std::string& line) {
  if (log_level() >= 1) std::cerr << line << '\n';
}

struct Options {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out = ".";
  int exact_cap = -1;
  int a = -1;
  int b = -1;
  int n = -1;
  int iterate_n = 0;
  int free_samples = 20;
};

io::Config resolve(const Options& opt) {
  io::Config c = opt.config_path.empty() ? io::parse_config(json::object()) : io::load_config(opt.config_path);
  if (opt.seed_set) c.seed = opt.seed;
  if (opt.exact_cap >= 0) c.exact_cap = opt.exact_cap;
  if (opt.a >= 0) c.supersat.a = opt.a;
  if (opt.b >= 0) c.supersat.b = opt.b;
  if (opt.n >= 0) c.graph.n = opt.n;
  if (c.supersat.a < 2 || c.supersat.b < 2) throw io::ConfigError("a and b must be at least 2");
  return c;
}

std::ofstream open_out(const Options& opt, const std::string& name) {
  fs::create_directories(opt.out);
  std::ofstream os(fs::path(opt.out) / name, std::ios::binary);
  if (!os) throw io::ConfigError("cannot write to '" + opt.out + "'");
  return os;
}

int cmd_supersat(const Options& opt) {
  const io::Config c = resolve(opt);
  auto g = std::make_shared<const Graph>(io::build_graph(c.graph, c.seed));
  info("supersat: n=" + std::to_string(g->order()) + " e=" + std::to_string(g->size()));
  const SupersatResult result = supersaturate(g, c.supersat);
  open_out(opt, "manifest.json") << io::manifest_json(result, c).dump(2) << '\n';
  {
    auto os = open_out(opt, "hyperedges.jsonl");
    write_hyperedges_jsonl(os, result.family.all());
  }
  std::cout << "hyperedges=" << result.family.all().size() << " t=" << result.chosen_t
            << " stop=" << stop_reason_name(result.stop) << " violations=" << result.violation_count() << '\n';
  if (result.stop == StopReason::failure) {
    std::cerr << "supersat failed: " << result.detail << '\n';
    return 1;
  }
  return 0;
}

int cmd_verify_expansion(const Options& opt) {
  const io::Config c = resolve(opt);
  const Graph g = io::build_graph(c.graph, c.seed);
  const auto run = io::run_expansion(g, c.supersat.b, c.supersat.c, RefineOptions{c.supersat.fanout(), c.supersat.max_paths});
  if (!run.outcome.certificate) {
    std::cerr << "verify-expansion failed at step " << run.outcome.failure << '\n';
    return 1;
  }
  open_out(opt, "certificate.json") << io::certificate_json(*run.outcome.certificate).dump(2) << '\n';
  open_out(opt, "report.json") << io::report_json(*run.report).dump(2) << '\n';
  const auto& r = *run.report;
  std::cout << "t=" << run.outcome.certificate->t << " paths=" << run.outcome.certificate->paths.size()
            << " min_eps=" << r.min << " all_positive=" << (r.all_positive() ? "yes" : "no") << '\n';
  return 0;
}

int cmd_check_bounds(const Options& opt) {
  const io::Config c = resolve(opt);
  const auto report = simplified_bound_check(c.supersat.a, c.supersat.b, c.supersat.delta);
  {
    auto os = open_out(opt, "bounds.csv");
    io::write_bounds_csv(os, report);
  }
  io::write_bounds_csv(std::cout, report);
  std::cout << "verdict=" << (report.feasible() ? "feasible" : "Infeasible") << '\n';
  return 0;
}

int cmd_containers(const Options& opt) {
  const io::Config c = resolve(opt);
  const auto& k = c.containers;
  json instances = json::array();
  std::size_t uncovered = 0;
  bool loses = true;
  for (int i = 0; i < k.instances; ++i) {
    const int n = k.min_vertices + i % (k.max_vertices - k.min_vertices + 1);
    const auto h = io::random_uniform_hypergraph(n, k.uniformity, k.edge_probability, c.seed + static_cast<std::uint64_t>(i));
    const auto set = build_containers(h, k.tau, k.delta, ContainerOptions{20, 2000, c.seed});
    const auto check = check_containers(h, set);
    uncovered += check.uncovered;
    loses = loses && check.loses_delta;
    json row = io::container_json(set, check);
    row["instance"] = i;
    row["vertices"] = n;
    row["hyperedges"] = h.size();
    instances.push_back(std::move(row));
  }
  json out{{"format", "thetasat-containers v1"}, {"instances", instances}, {"uncovered", uncovered}, {"loses_delta", loses}};
  if (opt.iterate_n > 0) {
    IterationParams params;
    params.n = opt.iterate_n;
    params.alpha = 1 + Rational(1, c.supersat.b);
    const ThetaPattern pattern(c.supersat.a, c.supersat.b);
    params.pattern_vertices = pattern.order();
    params.pattern_edges = pattern.size();
    params.k_target = c.k0;
    params.delta = k.delta;
    params.eps = k.delta;
    const auto source = io::supersat_source(c.supersat);
    json traces = json::array();
    std::mt19937_64 rng(c.seed);
    for (int s = 0; s < opt.free_samples; ++s) {
      // Random forests are free of every theta graph.
      std::vector<Vertex> order(static_cast<std::size_t>(opt.iterate_n));
      for (int v = 0; v < opt.iterate_n; ++v) order[static_cast<std::size_t>(v)] = v;
      std::shuffle(order.begin(), order.end(), rng);
      Graph forest(opt.iterate_n);
      for (std::size_t v = 1; v < order.size(); ++v)
        if (rng() % 2 == 0) forest.add_edge(order[v], order[rng() % v]);
      traces.push_back(io::trace_json(iterate_containers(params, source, forest)));
      info("containers: iteration sample " + std::to_string(s + 1));
    }
    out["iterations"] = traces;
  }
  open_out(opt, "containers.json") << out.dump(2) << '\n';
  std::cout << "instances=" << k.instances << " uncovered=" << uncovered << " loses_delta=" << (loses ? "yes" : "no") << '\n';
  return uncovered == 0 && loses ? 0 : 1;
}

int cmd_experiment(const Options& opt) {
  const io::Config c = resolve(opt);
  io::PhaseSpec spec = c.phase;
  if (opt.n >= 0) spec.n = opt.n;
  if (opt.a >= 0) spec.a = opt.a;
  if (opt.b >= 0) spec.b = opt.b;
  oracle::ExactSolver solver(spec.exact_budget);
  const auto rows = io::run_phase_experiment(spec, c.seed, c.exact_cap, solver);
  {
    auto os = open_out(opt, "experiment.csv");
    io::write_phase_csv(os, rows);
  }
  io::write_phase_csv(std::cout, rows);
  return 0;
}

int cmd_exponents(const Options& opt) {
  std::vector<oracle::ExponentRow> rows;
  if (opt.a >= 0 || opt.b >= 0)
    rows.push_back(oracle::exponent_row(opt.a >= 0 ? opt.a : 3, opt.b >= 0 ? opt.b : 3));
  else
    rows = oracle::exponent_table(6, 6);
  {
    auto os = open_out(opt, "exponents.csv");
    io::write_exponents_csv(os, rows);
  }
  io::write_exponents_csv(std::cout, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supersaturated theta-graph hypergraphs, containers and extremal oracles"};
  app.require_subcommand(1);
  Options opt;
  const auto common = [&opt](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "JSON config file");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&opt](std::uint64_t s) {
          opt.seed = s;
          opt.seed_set = true;
        }, "random seed");
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--exact-cap", opt.exact_cap, "largest n for exact extremal numbers");
    sub->add_option("--a", opt.a, "number of paths");
    sub->add_option("--b", opt.b, "path length");
    sub->add_option("--n", opt.n, "host order");
  };
  std::map<std::string, int (*)(const Options&)> commands{
      {"supersat", cmd_supersat},   {"verify-expansion", cmd_verify_expansion},
      {"check-bounds", cmd_check_bounds}, {"containers", cmd_containers},
      {"experiment", cmd_experiment}, {"exponents", cmd_exponents}};
  std::map<CLI::App*, int (*)(const Options&)> by_sub;
  for (const auto& [name, fn] : commands) {
    auto* sub = app.add_subcommand(name);
    common(sub);
    if (name == "containers") {
      sub->add_option("--iterate-n", opt.iterate_n, "also run graph container rounds on K_n");
      sub->add_option("--free-samples", opt.free_samples, "free graphs for the round check");
    }
    by_sub[sub] = fn;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    for (const auto& [sub, fn] : by_sub)
      if (sub->parsed()) return fn(opt);
  } catch (const io::ConfigError& e) {
    std::cerr << "bad config: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "bad parameters: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
