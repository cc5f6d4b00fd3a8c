#include "thetasat/errors.hpp"
#include "thetasat/graph.hpp"
#include "thetasat/theta.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace thetasat;

namespace {

std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> d;
  for (Vertex z = 0; z < g.order(); ++z) d.push_back(g.degree(z));
  std::sort(d.begin(), d.end());
  return d;
}

bool connected(const Graph& g) {
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const Vertex z = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(z))
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

}  // namespace

TEST_CASE("two paths of length three form a six-cycle") {
  const ThetaPattern p(2, 3);
  CHECK(p.order() == 6);
  CHECK(p.size() == 6);
  CHECK(degree_sequence(p.graph()) == std::vector<int>(6, 2));
  CHECK(connected(p.graph()));
}

TEST_CASE("three paths of length four") {
  const ThetaPattern p(3, 4);
  CHECK(p.order() == 11);
  CHECK(p.size() == 12);
  CHECK(p.graph().degree(ThetaPattern::hub_u) == 3);
  CHECK(p.graph().degree(ThetaPattern::hub_v) == 3);
  for (int j = 1; j <= 3; ++j) {
    CHECK(p.on_path(j, 0) == ThetaPattern::hub_u);
    CHECK(p.on_path(j, 4) == ThetaPattern::hub_v);
    for (int i = 1; i <= 3; ++i) {
      const PatternVertex w = p.interior(i, j);
      CHECK(p.level(w) == i);
      CHECK(p.path_of(w) == j);
      CHECK(p.parse_label(p.label(w)) == w);
      CHECK(p.adjacent(p.on_path(j, i - 1), w));
    }
  }
}

TEST_CASE("length-two paths give a complete bipartite graph") {
  const ThetaPattern p(4, 2);
  CHECK(p.order() == 6);
  CHECK(p.size() == 8);
  for (int j = 1; j <= 4; ++j) {
    CHECK(p.adjacent(ThetaPattern::hub_u, p.interior(1, j)));
    CHECK(p.adjacent(ThetaPattern::hub_v, p.interior(1, j)));
  }
  CHECK_FALSE(p.adjacent(ThetaPattern::hub_u, ThetaPattern::hub_v));
}

TEST_CASE("two-density") {
  CHECK(two_density(Graph::cycle(4)).value == Rational(3, 2));
  CHECK(two_density(ThetaPattern(3, 3).graph()).value == Rational(4, 3));
  Graph edge(2);
  edge.add_edge(0, 1);
  CHECK_THROWS_AS(two_density(edge), DomainError);
  for (int a = 2; a <= 4; ++a)
    for (int b = 2; b <= 4; ++b)
      CHECK(two_density(ThetaPattern(a, b).graph()).value == Rational(a * b - 1, a * (b - 1)));
}

TEST_CASE("random graphs") {
  CHECK(sample_gnp(5, 0, 7).size() == 0);
  CHECK(sample_gnp(5, 1, 7) == Graph::complete(5));
  CHECK(sample_gnp(100, Rational(1, 2), 42) == sample_gnp(100, Rational(1, 2), 42));
  CHECK_FALSE(sample_gnp(100, Rational(1, 2), 42) == sample_gnp(100, Rational(1, 2), 43));
  // Coupled samples nest in p.
  const Graph sparse = sample_gnp(40, Rational(3, 10), 5);
  const Graph dense = sample_gnp(40, Rational(7, 10), 5);
  for (const Edge& e : sparse.edges()) CHECK(dense.adjacent(e.u, e.v));
  CHECK_THROWS_AS(sample_gnp(5, Rational(3, 2), 1), DomainError);
}

TEST_CASE("graph construction errors and edge lists") {
  Graph g(3);
  g.add_edge(0, 1);
  CHECK_THROWS_AS(g.add_edge(1, 0), DomainError);
  CHECK_THROWS_AS(g.add_edge(2, 2), DomainError);
  CHECK_THROWS_AS(g.add_edge(0, 3), DomainError);
  std::stringstream ss;
  write_edge_list(ss, Graph::complete_bipartite(2, 3));
  CHECK(read_edge_list(ss) == Graph::complete_bipartite(2, 3));
}

TEST_CASE("assignment validity") {
  const ThetaPattern c4(2, 2);
  const Graph host = Graph::cycle(4);
  // u=0, v=1, w_1^1=2, w_1^2=3; host cycle 0-1-2-3-0.
  const Assignment full({{ThetaPattern::hub_u, 0}, {c4.interior(1, 1), 1}, {ThetaPattern::hub_v, 2},
                         {c4.interior(1, 2), 3}});
  CHECK(validate_assignment(c4, host, full).valid);

  const Assignment shared({{ThetaPattern::hub_u, 0}, {ThetaPattern::hub_v, 0}});
  const auto r1 = validate_assignment(c4, host, shared);
  CHECK_FALSE(r1.valid);
  CHECK(r1.violated_condition == 1);

  const Assignment broken({{ThetaPattern::hub_u, 0}, {c4.interior(1, 1), 2}});
  const auto r2 = validate_assignment(c4, host, broken);
  CHECK_FALSE(r2.valid);
  CHECK(r2.violated_condition == 2);
}

TEST_CASE("projections") {
  const ThetaPattern p(2, 4);
  const Graph host = Graph::complete(12);
  const Assignment single({{ThetaPattern::hub_u, 5}});
  const Projection one = project(p, host, single);
  CHECK(one.host_side == std::vector<Vertex>{5});
  CHECK(one.edges.empty());

  // Hubs x=0, y=1, z_1^1=2 and z_3^2=3: only u-w_1^1 and w_3^2-v are pattern edges.
  const Assignment chi({{ThetaPattern::hub_u, 0}, {ThetaPattern::hub_v, 1}, {p.interior(1, 1), 2}, {p.interior(3, 2), 3}});
  const Projection two = project(p, host, chi);
  CHECK(two.edges == std::vector<Edge>{Edge(0, 2), Edge(1, 3)});
  CHECK(two.host_graph.size() == 2);

  Embedding h(static_cast<std::size_t>(p.order()));
  for (int w = 0; w < p.order(); ++w) h[static_cast<std::size_t>(w)] = w;
  const Projection whole = project(p, host, to_assignment(h));
  CHECK(whole.edges.size() == static_cast<std::size_t>(p.size()));
  CHECK(image_edges(p, h).size() == static_cast<std::size_t>(p.size()));
}
