#pragma once

#include "thetasat/graph.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace thetasat {

using HyperVertex = std::int32_t;
using VertexSet = std::vector<HyperVertex>;  // sorted

class UniformHypergraph {
 public:
  UniformHypergraph(int vertices, int uniformity);
  UniformHypergraph(int vertices, int uniformity, std::vector<VertexSet> edges);

  void add_edge(VertexSet e);  // sorts, ignores duplicates, throws on bad size or range

  int order() const { return n_; }
  int uniformity() const { return r_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<VertexSet>& edges() const { return edges_; }
  std::size_t edges_inside(const std::vector<char>& members) const;
  bool independent(const VertexSet& s) const;

 private:
  int n_;
  int r_;
  std::vector<VertexSet> edges_;
};

// (1/e) sum_{j=2..r} tau^{-(j-1)} sum_v d^{(j)}(v).
Rational codegree_delta(const UniformHypergraph& h, const Rational& tau);

struct ContainerStep {
  VertexSet fingerprint;
  VertexSet container;
};

// Max-degree fingerprint run for one independent set; the container depends only on the fingerprint.
ContainerStep container_step(const UniformHypergraph& h, const VertexSet& independent, const Rational& delta);
VertexSet container_of(const UniformHypergraph& h, const VertexSet& fingerprint, const Rational& delta);

struct ContainerOptions {
  int exhaustive_limit = 20;   // enumerate all independent sets up to this many vertices
  std::size_t samples = 2000;  // random maximal independent sets otherwise
  std::uint64_t seed = 1;
};

struct ContainerSet {
  std::vector<VertexSet> containers;            // sorted, distinct
  std::map<VertexSet, std::size_t> fingerprints;  // fingerprint -> container index
  Rational tau;
  Rational delta;
  Rational measured_delta;     // codegree_delta(h, tau); 0 when h has no edges
  bool delta_condition = true;  // measured_delta <= delta
  bool exhaustive = false;
  std::size_t max_fingerprint = 0;
  bool fingerprint_bound = true;  // every |T| <= tau N / delta
};

ContainerSet build_containers(const UniformHypergraph& h, const Rational& tau, const Rational& delta,
                              const ContainerOptions& options = {});

std::vector<VertexSet> independent_sets(const UniformHypergraph& h);  // N <= 24

struct ContainerCheck {
  std::size_t independent_sets = 0;
  std::size_t uncovered = 0;
  std::optional<VertexSet> witness;
  bool loses_delta = true;  // e(H[C]) <= (1 - delta) e(H) for every container
  double worst_kept_fraction = 0;
};

ContainerCheck check_containers(const UniformHypergraph& h, const ContainerSet& set);

// One graph round: the container step applied to a supersaturated hypergraph on E(G_j).
struct ContainerRound {
  std::size_t edges_before = 0;
  std::size_t hyperedges = 0;
  std::vector<Edge> fingerprint;
  std::size_t container_edges = 0;
  std::size_t edges_after = 0;
  double k = 0;       // e(G_j) / n^alpha
  double tau = 0;
  double mu = 0;
  bool fingerprint_within_mu = true;  // e(T) <= mu n^alpha
};

struct IterationParams {
  int n = 0;
  Rational alpha{4, 3};
  int pattern_vertices = 0;
  int pattern_edges = 0;
  Rational k_target{1};
  Rational eps{1, 2};
  Rational delta{1, 2};
};

// Hypergraph whose vertices are the edge indices of g and whose hyperedges are pattern copies.
using HypergraphSource = std::function<UniformHypergraph(const Graph& g)>;

struct IterationTrace {
  std::vector<ContainerRound> rounds;
  std::vector<Edge> fingerprint_union;  // g(I)
  Graph residual;                       // h(g(I))
  std::string stop;
  bool sandwich = false;                // g(I) in I in g(I) + h(g(I))
  std::size_t round_bound = 0;          // log(e(K_n) / k n^alpha) / log(1/(1-eps)) + 1
};

IterationTrace iterate_containers(const IterationParams& params, const HypergraphSource& source, const Graph& free_graph);

// Sum over records S of binom(|h(S)|, m - e(S)) p^m.
struct ColoredRecord {
  std::size_t fingerprint_edges = 0;
  std::size_t residual_edges = 0;
  friend auto operator<=>(const ColoredRecord&, const ColoredRecord&) = default;
};

struct UnionBound {
  Rational value;
  bool below_one = false;
};

UnionBound gnp_upper_bound(std::span<const ColoredRecord> records, const Rational& p, std::size_t m);
// log2 of the counting cap (C n^alpha / s)^{s/(alpha-1)} exp(C k^{-(alpha-1)/(2-alpha)} n^alpha).
double colored_count_cap_log2(double n, double alpha, double k, double s, double c);

}  // namespace thetasat
