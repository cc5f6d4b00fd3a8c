#include "thetasat/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace thetasat;
using nlohmann::json;

TEST_CASE("defaults and overrides") {
  const auto c = io::parse_config(json::object());
  CHECK(c.supersat.a == 3);
  CHECK(c.supersat.b == 3);
  CHECK(c.seed == 1);
  const auto d = io::parse_config(json::parse(R"({"a": 4, "delta": "1/4", "c": 0.5, "graph": {"kind": "gnp", "n": 30, "p": "3/10"},
                                                  "phase": {"p_grid": ["1/2", 1], "trials": 3}})"));
  CHECK(d.supersat.a == 4);
  CHECK(d.supersat.delta == Rational(1, 4));
  CHECK(d.supersat.c == Rational(1, 2));
  CHECK(d.graph.kind == "gnp");
  CHECK(d.graph.p == Rational(3, 10));
  CHECK(d.phase.p_grid == std::vector<Rational>{Rational(1, 2), Rational(1)});
  CHECK(d.phase.trials == 3);
}

TEST_CASE("bad configs are rejected") {
  CHECK_THROWS_AS(io::parse_config(json::parse(R"({"alpha": 1})")), io::ConfigError);
  CHECK_THROWS_AS(io::parse_config(json::parse(R"({"phase": {"trails": 3}})")), io::ConfigError);
  CHECK_THROWS_AS(io::parse_config(json::parse(R"({"delta": 2})")), io::ConfigError);
  CHECK_THROWS_AS(io::parse_config(json::parse(R"({"a": 1})")), io::ConfigError);
  CHECK_THROWS_AS(io::parse_config(json::parse(R"({"graph": {"kind": "torus"}})")), io::ConfigError);
  CHECK_THROWS_AS(io::parse_config(json::parse(R"({"delta": "x/y"})")), io::ConfigError);
  CHECK_THROWS_AS(io::parse_config(json::parse("[1, 2]")), io::ConfigError);
  CHECK_THROWS_AS(io::load_config("/nonexistent/config.json"), io::ConfigError);
}

TEST_CASE("config round trip") {
  const auto c = io::parse_config(json::parse(R"({"b": 4, "k0": "3/2", "containers": {"instances": 5}})"));
  const auto again = io::parse_config(io::to_json(c));
  CHECK(io::to_json(again) == io::to_json(c));
  CHECK(again.k0 == Rational(3, 2));
  CHECK(again.containers.instances == 5);
}

TEST_CASE("graph builders") {
  io::GraphSpec spec;
  spec.n = 6;
  CHECK(io::build_graph(spec, 1) == Graph::complete(6));
  spec.kind = "cycle";
  CHECK(io::build_graph(spec, 1) == Graph::cycle(6));
  spec.kind = "bipartite";
  spec.right = 4;
  CHECK(io::build_graph(spec, 1) == Graph::complete_bipartite(6, 4));
  spec.kind = "gnp";
  spec.p = Rational(1, 2);
  CHECK(io::build_graph(spec, 9) == sample_gnp(6, Rational(1, 2), 9));
}

TEST_CASE("phase experiment rows") {
  io::PhaseSpec spec;
  spec.n = 7;
  spec.trials = 3;
  spec.p_grid = {Rational(1, 2), Rational(1)};
  oracle::ExactSolver solver;
  const auto rows = io::run_phase_experiment(spec, 4, 12, solver);
  CHECK(rows.size() == 6);
  for (const auto& r : rows) {
    REQUIRE(r.exact);
    CHECK(r.deletion_bound <= r.greedy);
    CHECK(r.greedy <= *r.exact);
    CHECK(*r.exact <= r.edges);
    if (r.p == 1) CHECK(*r.exact == solver.solve(Graph::complete(7), 2, 2).value);
  }
  std::ostringstream first;
  std::ostringstream second;
  io::write_phase_csv(first, rows);
  io::write_phase_csv(second, io::run_phase_experiment(spec, 4, 12, solver));
  CHECK(first.str() == second.str());
  CHECK(first.str().rfind("# thetasat-experiment v1", 0) == 0);
  const auto capped = io::run_phase_experiment(spec, 4, 5, solver);
  for (const auto& r : capped) CHECK_FALSE(r.exact);
}

TEST_CASE("hosts too large for the exact oracle skip it") {
  io::PhaseSpec spec;
  spec.n = 12;
  spec.trials = 1;
  spec.p_grid = {Rational(1)};
  oracle::ExactSolver solver;
  const auto rows = io::run_phase_experiment(spec, 1, 12, solver);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].edges == 66);
  CHECK_FALSE(rows[0].exact);
  CHECK(rows[0].deletion_bound <= rows[0].greedy);
}

TEST_CASE("exponent table output") {
  std::ostringstream os;
  const std::vector<oracle::ExponentRow> rows{oracle::exponent_row(100, 3)};
  io::write_exponents_csv(os, rows);
  CHECK(os.str().find("200/299") != std::string::npos);
}

TEST_CASE("random uniform hypergraphs are seeded") {
  const auto h1 = io::random_uniform_hypergraph(10, 3, Rational(1, 5), 3);
  const auto h2 = io::random_uniform_hypergraph(10, 3, Rational(1, 5), 3);
  CHECK(h1.edges() == h2.edges());
  CHECK(io::random_uniform_hypergraph(10, 3, 0, 3).size() == 0);
  CHECK(io::random_uniform_hypergraph(6, 3, 1, 3).size() == 20);
}

TEST_CASE("expansion run on K16") {
  const auto run = io::run_expansion(Graph::complete(16), 3, Rational(1, 2), RefineOptions{});
  REQUIRE(run.outcome.certificate);
  CHECK(run.outcome.certificate->t == 2);
  REQUIRE(run.report);
  CHECK(run.report->all_positive());
  const auto j = io::certificate_json(*run.outcome.certificate);
  CHECK(j.at("t") == 2);
}
