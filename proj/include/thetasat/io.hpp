#pragma once

#include "thetasat/bounds.hpp"
#include "thetasat/containers.hpp"
#include "thetasat/oracle.hpp"
#include "thetasat/supersat.hpp"

#include <json.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetasat::io {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphSpec {
  std::string kind = "complete";  // complete, gnp, bipartite, cycle, file
  int n = 20;
  int right = 0;                  // second side for bipartite
  Rational p{1};
  std::string path;               // edge list for kind == file
};

struct PhaseSpec {
  int a = 2;
  int b = 2;
  int n = 10;
  std::vector<Rational> p_grid;   // empty: 1/10, 2/10, ..., 1
  int trials = 20;
  std::uint64_t exact_budget = 50'000'000;
};

struct ContainerSpec {
  int instances = 50;
  int min_vertices = 8;
  int max_vertices = 14;
  int uniformity = 3;
  Rational edge_probability{1, 5};
  Rational tau{1, 2};
  Rational delta{1, 2};
};

struct Config {
  SupersatConfig supersat;
  GraphSpec graph;
  PhaseSpec phase;
  ContainerSpec containers;
  Rational k0{1};  // iteration target k in k n^alpha
  std::uint64_t seed = 1;
  int exact_cap = 12;
};

Config parse_config(const nlohmann::json& j);  // throws ConfigError
Config load_config(const std::string& path);
nlohmann::json to_json(const Config& c);

Graph build_graph(const GraphSpec& spec, std::uint64_t seed);

struct PhaseRow {
  int n = 0;
  Rational p;
  int trial = 0;
  std::size_t edges = 0;
  std::size_t greedy = 0;
  std::optional<std::size_t> exact;
  bool exact_optimal = true;
  std::size_t deletion_bound = 0;
};

// Trial k uses seed + k at every p, so samples are nested in p.
std::vector<PhaseRow> run_phase_experiment(const PhaseSpec& spec, std::uint64_t seed, int exact_cap,
                                           oracle::ExactSolver& solver);
void write_phase_csv(std::ostream& os, std::span<const PhaseRow> rows);

// Random r-uniform hypergraph, each r-set present with the given probability.
UniformHypergraph random_uniform_hypergraph(int n, int r, const Rational& probability, std::uint64_t seed);

// Core, scale, X and path refinement for the first member of X, on a graph with no hyperedges yet.
struct ExpansionRun {
  Graph core;
  ScaleParams scale;
  XSetResult x;
  RefineOutcome outcome;
  std::optional<ExpansionReport> report;
};

ExpansionRun run_expansion(const Graph& g, int b, const Rational& c, const RefineOptions& options);

// Pattern copies found by the builder on g, as hyperedges over the edge indices of g.
HypergraphSource supersat_source(const SupersatConfig& config);

nlohmann::json manifest_json(const SupersatResult& result, const Config& config);
nlohmann::json certificate_json(const ExpansionCertificate& cert);
nlohmann::json report_json(const ExpansionReport& report);
nlohmann::json container_json(const ContainerSet& set, const ContainerCheck& check);
nlohmann::json trace_json(const IterationTrace& trace);
void write_bounds_csv(std::ostream& os, const BoundScanReport& report);
void write_exponents_csv(std::ostream& os, std::span<const oracle::ExponentRow> rows);

}  // namespace thetasat::io
