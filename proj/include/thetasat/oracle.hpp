#pragma once

// Brute-force reference computations. Nothing here reuses the supersaturation or container code.

#include "thetasat/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace thetasat::oracle {

struct ThetaCopies {
  std::vector<std::vector<Edge>> copies;  // distinct edge sets, each sorted
  bool truncated = false;
};

// Every copy of the theta graph with a paths of length b, up to `cap` copies.
ThetaCopies enumerate_theta(const Graph& g, int a, int b, std::size_t cap = 1'000'000);
bool is_theta_free(const Graph& g, int a, int b);

struct ExactResult {
  std::size_t value = 0;         // best F-free subgraph size found
  std::vector<Edge> witness;
  bool optimal = true;           // false when the node budget ran out
  std::uint64_t nodes = 0;
};

// Largest theta-free subgraph by a Russian-doll search over edges (at most 64 host edges).
class ExactSolver {
 public:
  explicit ExactSolver(std::uint64_t node_budget = 50'000'000) : budget_(node_budget) {}
  ExactResult solve(const Graph& g, int a, int b);
  std::size_t cache_size() const { return cache_.size(); }

 private:
  std::uint64_t budget_;
  std::map<std::tuple<int, int, int, std::vector<Edge>>, ExactResult> cache_;
};

// Edges added in index order whenever they complete no copy.
std::vector<Edge> greedy_free(const Graph& g, int a, int b);
// max(0, e(G) - number of copies).
std::size_t deletion_lower_bound(const Graph& g, int a, int b);

struct CoverVerdict {
  bool covered = true;
  std::optional<std::vector<Edge>> witness;  // a free subgraph inside no container
  std::size_t checked = 0;
  bool exhaustive = false;
};

// Containers are subsets of edge indices of g.
CoverVerdict verify_cover(const Graph& g, int a, int b, const std::vector<std::vector<std::int32_t>>& containers,
                          std::size_t samples = 2000, std::uint64_t seed = 1);

struct ExponentRow {
  int a = 0;
  int b = 0;
  Rational m2;                          // (ab - 1) / (a(b-1))
  std::optional<Rational> m2_measured;  // direct subgraph scan, when the pattern has at most 22 vertices
  Rational sparse_exponent;             // p2 = n^{sparse_exponent}
  Rational upper_exponent;              // p1 = n^{upper_exponent} (log n)^{log_power}
  int log_power = 0;
  Rational dense_p_exponent;            // dense regime p^{1/b} n^{1+1/b}
  Rational dense_n_exponent;
  Rational middle_exponent;             // middle regime n^{middle_exponent} (log n)^{O(1)}
};

ExponentRow exponent_row(int a, int b);
std::vector<ExponentRow> exponent_table(int a_max, int b_max);

}  // namespace thetasat::oracle
