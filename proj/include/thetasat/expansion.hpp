#pragma once

#include "thetasat/pruning.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace thetasat {

// eps_t = c (16(b+1))^{t-b} for t = 1..b.
struct EpsilonSchedule {
  int b = 3;
  Rational base{1, 2};
  std::vector<Rational> values;  // values[t - 1] = eps_t

  const Rational& at(int t) const { return values.at(static_cast<std::size_t>(t - 1)); }
};

EpsilonSchedule epsilon_schedule(int b, const Rational& c);

// A_0 = {x}, A_1, ..., A_t, each sorted.
struct LayerTuple {
  int t = 0;
  std::vector<std::vector<Vertex>> layers;

  Vertex root() const { return layers.front().front(); }
};

struct TEstimate {
  int t_upper = 0;  // b + 1 on failure
  bool failed = false;
  LayerTuple tuple;
};

// Largest size allowed for the top layer: l^{(b-t)/(b-1)} m^{t/b}.
Surd top_layer_cap(const ScaleParams& sp, int t);
// Lambda(t') = (4b)^{t'-b} l^{(b-t')/(b-1)} m^{t'/b}.
Surd x_set_lambda(const ScaleParams& sp, int t);

// Greedy layered construction at a fixed t: full neighborhoods, then iterative removal of layer
// members with fewer than `min_forward` neighbors in the next layer. nullopt if x is removed.
// `allowed(i, z)` filters the candidates of layer i.
using LayerFilter = std::function<bool(int layer, Vertex z)>;
std::optional<LayerTuple> concentrated_tuple(const Graph& gprime, Vertex x, int t, const ScaleParams& sp,
                                             const Rational& min_forward, const LayerFilter& allowed = {});
TEstimate t_estimate(const Graph& gprime, Vertex x, const ScaleParams& sp, const EpsilonSchedule& eps);

struct XSetResult {
  int t = 0;
  bool fallback = false;  // no t met its Lambda target; t has the best count / Lambda ratio
  std::vector<Vertex> x;  // sorted
  std::vector<int> t_values;  // per host vertex; 0 for isolated vertices
  std::vector<std::vector<Vertex>> y_layers;  // Y_0..Y_b
  std::vector<std::size_t> counts;  // counts[t'] = #{t_estimate <= t'}
  Surd lambda;
  std::map<Vertex, LayerTuple> tuples;  // per member of x, with the Y layers removed

  bool meets_half_lambda() const;
};

XSetResult x_set(const Graph& gprime, const ScaleParams& sp, const EpsilonSchedule& eps);

// A forbidden forest as a host subgraph: the projection graph of a saturated set.
struct ForbiddenShape {
  std::vector<Vertex> vertices;  // sorted
  std::vector<Edge> edges;       // sorted
  friend auto operator<=>(const ForbiddenShape&, const ForbiddenShape&) = default;
};

std::vector<ForbiddenShape> forbidden_shapes(const ThetaPattern& pattern, const Graph& g,
                                             std::span<const Assignment> forbidden);

using Path = std::vector<Vertex>;  // x z_1 ... z_t

struct RefineOptions {
  std::size_t min_fanout = 1;   // floor on the per-vertex branching of the greedy
  std::size_t max_paths = 200000;
  std::size_t root_fanout = 0;  // branching at x; 0 takes every member of A_1
};

struct ExpansionConditions {
  bool top_sizes = false;         // |B_1| <= l m^{1/b} and |B_t| <= top cap
  bool pair_counts = false;       // |Q_{i,j}[u->v]| <= l^{(j-i-1)b/(b-1)}
  bool branching = false;         // branching factor <= eps_t l m^{1/b}
  bool forward_degree = false;    // refined (1), for every i in 0..t-1
  bool back_degree = false;       // refined (2)
  bool endpoint_paths = false;    // refined (3)
  bool size_bound = false;        // |Q| >= (1/4)((1/4) eps_t l m^{1/b})^t
  std::size_t branching_factor = 0;
};

struct ExpansionCertificate {
  Vertex x = 0;
  int t = 0;
  std::vector<std::vector<Vertex>> layers;  // B_0..B_t, sorted
  std::vector<Path> paths;
  std::map<Vertex, std::vector<std::size_t>> by_endpoint;  // y -> indices into paths
  Rational eps_used;
  std::vector<Vertex> x_set;
  std::vector<ForbiddenShape> forbidden;
  ExpansionConditions conditions;

  std::span<const std::size_t> paths_to(Vertex y) const;
};

struct RefineOutcome {
  std::optional<ExpansionCertificate> certificate;
  std::string failure;  // the step that emptied the path family
};

RefineOutcome refine_paths(const Graph& gprime, const LayerTuple& tuple, const ScaleParams& sp,
                           const EpsilonSchedule& eps, std::span<const ForbiddenShape> forbidden,
                           const RefineOptions& options = {});
// Builds the tuple with concentrated_tuple at half strength first.
RefineOutcome refine_paths(const Graph& gprime, Vertex x, int t, const ScaleParams& sp, const EpsilonSchedule& eps,
                           std::span<const ForbiddenShape> forbidden, const RefineOptions& options = {});

bool contains_shape(const Path& p, const ForbiddenShape& shape);

// Largest eps making each clause true; a and g are 1 or 0.
struct ExpansionReport {
  double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0, g = 0, h = 0;
  double min = 0;
  double x_over_m = 0;
  bool all_positive() const { return min > 0; }
};

ExpansionReport verify_expansion(const Graph& gprime, const ExpansionCertificate& cert, const ScaleParams& sp);

}  // namespace thetasat
