#include "thetasat/oracle.hpp"
#include "thetasat/theta.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace thetasat;

namespace {

// Injective adjacency-preserving maps from the pattern into g, by backtracking.
std::uint64_t labelled_embeddings(const Graph& pattern, const Graph& g) {
  const int v = pattern.order();
  std::vector<Vertex> image(static_cast<std::size_t>(v), -1);
  std::vector<char> used(static_cast<std::size_t>(g.order()), 0);
  std::uint64_t count = 0;
  auto step = [&](auto&& self, int w) -> void {
    if (w == v) {
      ++count;
      return;
    }
    for (Vertex z = 0; z < g.order(); ++z) {
      if (used[static_cast<std::size_t>(z)]) continue;
      bool ok = true;
      for (Vertex q : pattern.neighbors(w))
        if (q < w && !g.adjacent(z, image[static_cast<std::size_t>(q)])) ok = false;
      if (!ok) continue;
      used[static_cast<std::size_t>(z)] = 1;
      image[static_cast<std::size_t>(w)] = z;
      self(self, w + 1);
      used[static_cast<std::size_t>(z)] = 0;
    }
  };
  step(step, 0);
  return count;
}

std::uint64_t automorphisms(const Graph& pattern) { return labelled_embeddings(pattern, pattern); }

std::uint64_t factorial(int a) {
  std::uint64_t f = 1;
  for (int i = 2; i <= a; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

TEST_CASE("theta copies in small hosts") {
  CHECK(oracle::enumerate_theta(Graph::complete(4), 2, 2).copies.size() == 3);
  CHECK(oracle::enumerate_theta(Graph::complete_bipartite(3, 3), 2, 3).copies.size() == 6);
  CHECK(oracle::enumerate_theta(Graph::complete_bipartite(2, 3), 3, 2).copies.size() == 1);
  CHECK(oracle::enumerate_theta(Graph::cycle(5), 2, 2).copies.empty());
}

TEST_CASE("copies times automorphisms count labelled embeddings") {
  const std::pair<int, int> shapes[] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};
  for (const auto& [a, b] : shapes) {
    const ThetaPattern p(a, b);
    std::uint64_t expected_aut = 2 * factorial(a);
    if (a == 2) expected_aut *= static_cast<std::uint64_t>(b);
    CHECK(automorphisms(p.graph()) == expected_aut);
    for (int n = p.order(); n <= 8; ++n) {
      const Graph g = Graph::complete(n);
      const auto copies = oracle::enumerate_theta(g, a, b);
      CHECK_FALSE(copies.truncated);
      CHECK(copies.copies.size() * expected_aut == labelled_embeddings(p.graph(), g));
    }
  }
}

TEST_CASE("exact extremal numbers") {
  oracle::ExactSolver solver;
  const auto k4 = solver.solve(Graph::complete(4), 2, 2);
  CHECK(k4.value == 4);
  CHECK(k4.optimal);
  CHECK(oracle::is_theta_free(Graph(4, k4.witness), 2, 2));
  CHECK(solver.solve(Graph::complete(5), 2, 2).value == 6);
  // A pattern with more vertices than the host is never present.
  CHECK(solver.solve(Graph::complete(5), 3, 3).value == 10);
}

TEST_CASE("brute force over edge subsets agrees with the solver") {
  oracle::ExactSolver solver;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    const Graph g = sample_gnp(6, Rational(3, 5), rng());
    const auto edges = g.edges();
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
      std::vector<Edge> keep;
      for (std::size_t i = 0; i < edges.size(); ++i)
        if (mask >> i & 1u) keep.push_back(edges[i]);
      if (keep.size() > best && oracle::is_theta_free(Graph(6, keep), 2, 2)) best = keep.size();
    }
    CHECK(solver.solve(g, 2, 2).value == best);
  }
}

TEST_CASE("monotone under edge addition and above the simple bounds") {
  oracle::ExactSolver solver;
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 8; ++trial) {
    Graph g = sample_gnp(8, Rational(2, 5), rng());
    std::size_t previous = solver.solve(g, 2, 2).value;
    for (Vertex u = 0; u < 8; ++u)
      for (Vertex v = u + 1; v < 8; ++v) {
        if (g.adjacent(u, v) || rng() % 3 != 0) continue;
        g.add_edge(u, v);
        const std::size_t now = solver.solve(g, 2, 2).value;
        CHECK(now >= previous);
        CHECK(now <= previous + 1);
        previous = now;
      }
    const auto greedy = oracle::greedy_free(g, 2, 2);
    CHECK(oracle::is_theta_free(Graph(8, greedy), 2, 2));
    CHECK(greedy.size() >= oracle::deletion_lower_bound(g, 2, 2));
    CHECK(previous >= greedy.size());
  }
}

TEST_CASE("cover verification") {
  const Graph g = Graph::complete(5);
  std::vector<std::int32_t> all(g.size());
  std::iota(all.begin(), all.end(), 0);
  CHECK(oracle::verify_cover(g, 2, 2, {all}).covered);
  // Dropping edge 0 from the only container leaves the free graph {edge 0} uncovered.
  std::vector<std::int32_t> without(all.begin() + 1, all.end());
  const auto verdict = oracle::verify_cover(g, 2, 2, {without});
  CHECK_FALSE(verdict.covered);
  REQUIRE(verdict.witness);
  CHECK(std::find(verdict.witness->begin(), verdict.witness->end(), g.edges()[0]) != verdict.witness->end());
}

TEST_CASE("threshold exponents") {
  const auto row = oracle::exponent_row(100, 3);
  CHECK(1 / row.m2 == Rational(200, 299));
  CHECK(row.sparse_exponent == Rational(-200, 299));
  const auto c4 = oracle::exponent_row(2, 2);
  CHECK(c4.dense_p_exponent == Rational(1, 2));
  CHECK(c4.dense_n_exponent == Rational(3, 2));
  CHECK(c4.m2 == Rational(3, 2));
  for (const auto& r : oracle::exponent_table(6, 6)) {
    CHECK(-1 / r.m2 == r.sparse_exponent);
    if (r.m2_measured) CHECK(*r.m2_measured == r.m2);
  }
}
