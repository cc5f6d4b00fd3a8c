// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include "thetasat/io.hpp"
#include "thetasat/pruning.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace thetasat;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

bool run(int id, const char* title, double limit_seconds, const std::function<Verdict()>& body) {
  const auto start = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = seconds <= limit_seconds;
  const bool pass = v.pass && in_time;
  std::printf("criterion %d [%s]: %s (%.2fs of %.0fs) %s%s\n", id, title, pass ? "PASS" : "FAIL", seconds, limit_seconds,
              v.detail.c_str(), in_time ? "" : " over time limit");
  std::fflush(stdout);
  return pass;
}

Verdict density_identity() {
  int wrong = 0;
  for (int a = 2; a <= 5; ++a)
    for (int b = 2; b <= 5; ++b)
      if (two_density(ThetaPattern(a, b).graph()).value != Rational(a * b - 1, a * (b - 1))) ++wrong;
  return {wrong == 0, "16 patterns, " + std::to_string(wrong) + " mismatches"};
}

Verdict core_guarantee() {
  std::mt19937_64 rng(20240601);
  int failures = 0;
  int runs = 0;
  while (runs < 200) {
    const int n = 2 + static_cast<int>(rng() % 199);
    const int b = 1 + static_cast<int>(rng() % 4);
    const Rational p(1 + static_cast<int>(rng() % 50), 100);
    const Graph g = sample_gnp(n, p, rng());
    if (g.size() == 0) continue;
    ++runs;
    const auto core = min_degree_core(g, b);
    if (!core_bound_holds(core.min_degree, core.kept.size(), static_cast<std::uint64_t>(n), g.size(), b)) ++failures;
  }
  return {failures == 0, std::to_string(runs) + " inputs, " + std::to_string(failures) + " failures"};
}

Verdict bound_boundary() {
  const auto eight = simplified_bound_check(8, 4, Rational(3, 10));
  const auto nine = simplified_bound_check(9, 4, Rational(3, 10));
  const auto hundred = simplified_bound_check(100, 3, Rational(3, 10));
  const auto* r8 = eight.find(2, 2);
  const auto* r9 = nine.find(2, 2);
  const bool ok = r8 && r9 && !r8->certified && r9->certified && hundred.feasible();
  std::ostringstream os;
  os << "a=8: " << (r8 && r8->certified ? "feasible" : "Infeasible") << ", a=9: "
     << (r9 && r9->certified ? "feasible" : "Infeasible") << ", a=100 b=3: " << (hundred.feasible() ? "feasible" : "Infeasible");
  return {ok, os.str()};
}

const SupersatResult& k20() {
  static const SupersatResult result = supersaturate(std::make_shared<const Graph>(Graph::complete(20)), SupersatConfig{});
  return result;
}

Verdict builder_soundness() {
  const auto& r = k20();
  const ThetaPattern& p = r.family.pattern();
  std::size_t not_theta = 0;
  for (const Embedding& h : r.family.all().hyperedges()) {
    const Projection proj = project(p, r.family.all().host(), to_assignment(h));
    const auto copies = oracle::enumerate_theta(proj.host_graph, 3, 3);
    if (proj.host_graph.size() != 9 || copies.copies.size() != 1) ++not_theta;
  }
  const std::size_t size = r.family.all().size();
  std::ostringstream os;
  os << "|H|=" << size << " violations=" << r.violation_count() << " non-theta projections=" << not_theta
     << " stop=" << stop_reason_name(r.stop);
  return {size >= 50 && r.violation_count() == 0 && not_theta == 0, os.str()};
}

Verdict edge_translation() {
  const auto& r = k20();
  CodegreeParams base;
  base.a = 3;
  base.b = 3;
  base.n = 20;
  base.delta = SupersatConfig{}.delta;
  base.k = CodegreeParams::density_scale(r.family.all().host().size(), 20, 3);
  CodegreeTable table(r.family.pattern(), base);
  const auto tr = edge_hypergraph(r.hprime, table, r.chosen_t, 3);
  const auto& rep = tr.report;
  std::ostringstream os;
  os << "|H'_t|=" << rep.source_size << " edge hyperedges=" << tr.hypergraph.hyperedges.size() << " sets=" << rep.checked_sets
     << " flags(loss,count,threshold,x)=" << rep.loss_factor_holds << rep.counting_holds << rep.threshold_holds
     << rep.x_size_holds << " max|X|=" << rep.max_x_size << " failures=" << rep.failures << " C=" << rep.min_constant;
  return {rep.loss_factor_holds && rep.counting_holds && rep.threshold_holds && rep.failures == 0, os.str()};
}

Verdict container_coverage() {
  const io::ContainerSpec spec;
  std::size_t uncovered = 0;
  std::size_t losing = 0;
  std::size_t sets = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = 8 + i % 7;
    const auto h = io::random_uniform_hypergraph(n, 3, spec.edge_probability, 1000 + static_cast<std::uint64_t>(i));
    const auto set = build_containers(h, spec.tau, Rational(1, 2));
    const auto check = check_containers(h, set);
    uncovered += check.uncovered;
    losing += check.loses_delta ? 0 : 1;
    sets += check.independent_sets;
  }
  std::ostringstream os;
  os << "50 instances, " << sets << " independent sets, uncovered=" << uncovered << ", containers keeping too much=" << losing;
  return {uncovered == 0 && losing == 0, os.str()};
}

Verdict oracle_anchors() {
  oracle::ExactSolver solver;
  const std::size_t c4 = oracle::enumerate_theta(Graph::complete(4), 2, 2).copies.size();
  const std::size_t c6 = oracle::enumerate_theta(Graph::complete_bipartite(3, 3), 2, 3).copies.size();
  const std::size_t k23 = oracle::enumerate_theta(Graph::complete_bipartite(2, 3), 3, 2).copies.size();
  const std::size_t ex4 = solver.solve(Graph::complete(4), 2, 2).value;
  const std::size_t ex5 = solver.solve(Graph::complete(5), 2, 2).value;
  std::ostringstream os;
  os << "C4 in K4=" << c4 << " C6 in K33=" << c6 << " K23 in K23=" << k23 << " ex(K4)=" << ex4 << " ex(K5)=" << ex5;
  return {c4 == 3 && c6 == 6 && k23 == 1 && ex4 == 4 && ex5 == 6, os.str()};
}

Verdict phase_curve() {
  io::PhaseSpec spec;
  spec.n = 10;
  spec.trials = 20;
  oracle::ExactSolver solver(spec.exact_budget);
  const auto rows = io::run_phase_experiment(spec, 7, 12, solver);
  std::map<Rational, std::pair<double, int>> mean;
  bool rows_ok = true;
  bool anchor_ok = true;
  const std::size_t anchor = solver.solve(Graph::complete(10), 2, 2).value;
  for (const auto& r : rows) {
    rows_ok = rows_ok && r.exact && r.exact_optimal && r.deletion_bound <= r.greedy && r.greedy <= *r.exact && *r.exact <= r.edges;
    if (r.p == 1) anchor_ok = anchor_ok && r.exact && *r.exact == anchor;
    auto& m = mean[r.p];
    m.first += r.exact ? static_cast<double>(*r.exact) : 0;
    ++m.second;
  }
  bool monotone = true;
  double last = -1;
  std::ostringstream os;
  os << "means:";
  for (const auto& [p, m] : mean) {
    const double value = m.first / m.second;
    monotone = monotone && value >= last;
    last = value;
    os << ' ' << value;
  }
  os << " ex(K10,C4)=" << anchor;
  return {rows_ok && anchor_ok && monotone && rows.size() == 200, os.str()};
}

Verdict expansion_verifier() {
  const auto run = io::run_expansion(Graph::complete(16), 3, Rational(1, 2), RefineOptions{});
  if (!run.outcome.certificate) return {false, "no certificate: " + run.outcome.failure};
  const auto& r = *run.report;
  std::ostringstream os;
  os << "t=" << run.outcome.certificate->t << " paths=" << run.outcome.certificate->paths.size() << " eps a..h = " << r.a << ' '
     << r.b << ' ' << r.c << ' ' << r.d << ' ' << r.e << ' ' << r.f << ' ' << r.g << ' ' << r.h;
  return {run.outcome.certificate->t == 2 && r.all_positive(), os.str()};
}

}  // namespace

int main() {
  bool all = true;
  all &= run(1, "two-density identity", 10, density_identity);
  all &= run(2, "min-degree core bound", 30, core_guarantee);
  all &= run(3, "codegree bound boundary", 60, bound_boundary);
  all &= run(4, "builder soundness", 300, builder_soundness);
  all &= run(5, "edge translation", 120, edge_translation);
  all &= run(6, "container coverage", 180, container_coverage);
  all &= run(7, "oracle anchors", 10, oracle_anchors);
  all &= run(8, "phase curve", 300, phase_curve);
  all &= run(9, "expansion verifier", 60, expansion_verifier);
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
