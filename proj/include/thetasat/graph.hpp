#pragma once

#include "thetasat/exact.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace thetasat {

using Vertex = std::int32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 0..n-1. Edge indices follow insertion order.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, std::span<const Edge> edges);

  static Graph complete(int n);
  static Graph complete_bipartite(int left, int right);
  static Graph cycle(int n);

  void add_edge(Vertex u, Vertex v);  // throws on loops, duplicates or bad endpoints

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex z) const { return adjacency_[static_cast<std::size_t>(z)]; }
  int degree(Vertex z) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(z)].size()); }
  bool adjacent(Vertex a, Vertex b) const;
  bool contains(Vertex z) const { return z >= 0 && z < n_; }

  // Same vertex set, only the edges with both ends in `keep`.
  Graph induced(std::span<const Vertex> keep) const;
  // Same vertex set without the listed edges.
  Graph without(std::span<const Edge> removed) const;
  std::vector<Vertex> non_isolated() const;

  friend bool operator==(const Graph& x, const Graph& y) { return x.n_ == y.n_ && x.edges_ == y.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;  // sorted
  std::vector<std::uint64_t> bits_;              // n x words row-major adjacency matrix
  std::size_t words_ = 0;
};

// Multigraph with loops; a loop contributes 1 to its vertex's degree.
class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(int n) : n_(n), degree_(static_cast<std::size_t>(n), 0), incident_(static_cast<std::size_t>(n)) {}
  static MultiGraph from(const Graph& g);
  // One vertex per element, carrying `loops[i]` loops and no other edges.
  static MultiGraph loops_only(std::span<const std::uint64_t> loops);

  void add_edge(Vertex u, Vertex v, std::uint64_t multiplicity = 1);

  int order() const { return n_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t degree(Vertex z) const { return degree_[static_cast<std::size_t>(z)]; }

  struct Slot {
    Vertex other;
    std::uint64_t multiplicity;
  };
  std::span<const Slot> incident(Vertex z) const { return incident_[static_cast<std::size_t>(z)]; }

 private:
  int n_ = 0;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> degree_;
  std::vector<std::vector<Slot>> incident_;
};

struct DensityResult {
  Rational value;
  std::vector<Vertex> witness;
  std::size_t witness_edges = 0;
};

// max (e'-1)/(v'-2) over subgraphs with at least two edges; with proper_only the graph itself is excluded.
DensityResult two_density(const Graph& g, bool proper_only = false);

// Pair {i<j} is present iff splitmix64(seed, i*n+j) mapped to [0,1) is below p.
Graph sample_gnp(int n, const Rational& p, std::uint64_t seed);
double pair_uniform(std::uint64_t seed, std::uint64_t pair_index);

void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);

}  // namespace thetasat
