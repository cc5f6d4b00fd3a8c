#pragma once

#include "thetasat/graph.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace thetasat {

using PatternVertex = std::int32_t;

// theta_{a,b}: hubs u=0 and v=1, then interior vertex w_i^j (level i in 1..b-1, path j in 1..a)
// at label 2 + (i-1)*a + (j-1), i.e. row-major in (i, j).
class ThetaPattern {
 public:
  static constexpr PatternVertex hub_u = 0;
  static constexpr PatternVertex hub_v = 1;

  ThetaPattern(int a, int b);

  int paths() const { return a_; }
  int length() const { return b_; }
  int order() const { return a_ * (b_ - 1) + 2; }
  int size() const { return a_ * b_; }

  PatternVertex interior(int level, int path) const { return 2 + (level - 1) * a_ + (path - 1); }
  // Level along the path: 0 for u, b for v, i for w_i^j.
  int level(PatternVertex w) const;
  // Path index j in 1..a for interior vertices, 0 for hubs.
  int path_of(PatternVertex w) const;
  bool is_hub(PatternVertex w) const { return w == hub_u || w == hub_v; }
  // Pattern vertex at position `level` on path `path`, with level 0 = u and level b = v.
  PatternVertex on_path(int path, int level) const;

  const Graph& graph() const { return graph_; }
  bool adjacent(PatternVertex x, PatternVertex y) const { return graph_.adjacent(x, y); }
  std::string label(PatternVertex w) const;
  std::optional<PatternVertex> parse_label(const std::string& text) const;

 private:
  int a_;
  int b_;
  Graph graph_;
};

struct Pair {
  PatternVertex w;
  Vertex z;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

// A set of (pattern vertex, host vertex) pairs, kept sorted.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<Pair> pairs);

  std::span<const Pair> pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  std::vector<PatternVertex> pattern_side() const;
  std::vector<Vertex> host_side() const;  // sorted, with repeats kept
  bool contains(const Assignment& other) const;
  Assignment unite(const Assignment& other) const;
  void insert(Pair p);

  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  std::vector<Pair> pairs_;
};

struct ValidityReport {
  bool valid = true;
  int violated_condition = 0;  // 1: repeated pattern or host vertex, 2: edge not preserved
  std::pair<Pair, Pair> witness{};
};

ValidityReport validate_assignment(const ThetaPattern& p, const Graph& g, const Assignment& chi);

struct Projection {
  std::vector<PatternVertex> pattern_side;
  std::vector<Vertex> host_side;
  Graph host_graph;  // on g's vertex set, edges are the images of pattern edges
  std::vector<Edge> edges;
};

Projection project(const ThetaPattern& p, const Graph& g, const Assignment& chi);

// Full-size assignment stored as the host vertex of every pattern label.
using Embedding = std::vector<Vertex>;
Assignment to_assignment(const Embedding& host_of);
std::vector<Edge> image_edges(const ThetaPattern& p, const Embedding& host_of);

}  // namespace thetasat
