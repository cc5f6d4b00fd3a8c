#include "thetasat/errors.hpp"
#include "thetasat/oracle.hpp"
#include "thetasat/supersat.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace thetasat;

namespace {

CodegreeParams base_params(const Graph& g, int a, int b, Rational delta = Rational(3, 10)) {
  CodegreeParams p;
  p.a = a;
  p.b = b;
  p.n = g.order();
  p.delta = delta;
  p.k = CodegreeParams::density_scale(g.size(), g.order(), b);
  return p;
}

Embedding identity(const ThetaPattern& p) {
  Embedding e(static_cast<std::size_t>(p.order()));
  for (int w = 0; w < p.order(); ++w) e[static_cast<std::size_t>(w)] = w;
  return e;
}

const SupersatResult& k20_run() {
  static const SupersatResult result = [] {
    auto g = std::make_shared<const Graph>(Graph::complete(20));
    return supersaturate(g, SupersatConfig{});
  }();
  return result;
}

}  // namespace

TEST_CASE("collection family bookkeeping") {
  const ThetaPattern p(3, 3);
  auto host = std::make_shared<const Graph>(Graph::complete(12));
  CollectionFamily fam(p, host);
  const Embedding h = identity(p);
  CHECK(fam.insert(0, 3, h));
  CHECK_FALSE(fam.insert(1, 2, h));
  CHECK(fam.all().size() == 1);
  CHECK(fam.layer(3).size() == 1);
  CHECK(fam.layer(2).size() == 0);
  CHECK(fam.find(1, 2) == nullptr);
  REQUIRE(fam.find(0, 3) != nullptr);
  CHECK(fam.keys() == std::vector<std::pair<int, int>>{{0, 3}});
  CHECK_THROWS_AS(fam.insert(0, 4, identity(p)), DomainError);
}

TEST_CASE("compatibility") {
  const ThetaPattern p(3, 3);
  auto host = std::make_shared<const Graph>(Graph::complete(12));
  CollectionFamily fam(p, host);
  CodegreeTable table(p, base_params(*host, 3, 3));
  CHECK(compatible(fam, table, to_assignment(identity(p)), 0, 3).compatible);
  fam.insert(0, 3, identity(p));
  const Assignment hubs({{ThetaPattern::hub_u, 0}, {ThetaPattern::hub_v, 1}});
  CHECK(compatible(fam, table, hubs, 0, 3).compatible);
  const auto invalid = compatible(fam, table, Assignment({{ThetaPattern::hub_u, 0}, {ThetaPattern::hub_v, 0}}), 0, 3);
  CHECK_FALSE(invalid.compatible);
  CHECK_FALSE(invalid.witness);
}

TEST_CASE("a saturated edge pair is incompatible") {
  // On the pattern itself as host, k < 1 and the single-edge forest threshold is 1.
  const ThetaPattern p(3, 3);
  auto host = std::make_shared<const Graph>(p.graph());
  CollectionFamily fam(p, host);
  CodegreeTable table(p, base_params(*host, 3, 3));
  const std::vector<PatternVertex> edge{ThetaPattern::hub_u, p.interior(1, 1)};
  REQUIRE(table.value(CodegreeFamily::forest, 0, 3, mask_of(edge)) == ExtendedCount(1L));
  fam.insert(0, 3, identity(p));
  const Assignment chi({{ThetaPattern::hub_u, 0}, {p.interior(1, 1), p.interior(1, 1)}});
  const auto r = compatible(fam, table, chi, 0, 3);
  CHECK_FALSE(r.compatible);
  REQUIRE(r.witness);
  CHECK(r.witness->family == "forest");
  CHECK(r.witness->degree == 1);
  const auto saturated = saturated_forest_sets(fam.all(), table, 3, 2);
  CHECK(std::find(saturated.begin(), saturated.end(), chi) != saturated.end());
}

TEST_CASE("layer routing when b - t is even") {
  const ThetaPattern p(3, 4);
  auto host = std::make_shared<const Graph>(Graph::complete(18));
  const ScaleParams sp = scale_parameters(*host, 18, 4);
  const auto eps = epsilon_schedule(4, Rational(1, 2));
  const auto out = refine_paths(*host, 0, 2, sp, eps, {});
  REQUIRE(out.certificate);
  const auto& cert = *out.certificate;
  CollectionFamily fam(p, host);
  CodegreeTable table(p, base_params(*host, 3, 4));
  const auto step = extend_case_lt_b(fam, table, cert, sp, 200000);
  REQUIRE(step.h);
  const Embedding& h = *step.h;
  auto in = [&](int layer, Vertex z) {
    const auto& l = cert.layers[static_cast<std::size_t>(layer)];
    return std::binary_search(l.begin(), l.end(), z);
  };
  CHECK(h[ThetaPattern::hub_u] == cert.x);
  CHECK(h[ThetaPattern::hub_v] != cert.x);
  CHECK(in(2, h[ThetaPattern::hub_v]));
  for (int j = 1; j <= 3; ++j) {
    CHECK(in(1, h[static_cast<std::size_t>(p.interior(3, j))]));
    CHECK(in(2, h[static_cast<std::size_t>(p.interior(2, j))]));
  }
  CHECK(validate_assignment(p, *host, to_assignment(h)).valid);
}

TEST_CASE("layer routing when b - t is odd") {
  const ThetaPattern p(3, 3);
  auto host = std::make_shared<const Graph>(Graph::complete(16));
  const ScaleParams sp = scale_parameters(*host, 16, 3);
  const auto eps = epsilon_schedule(3, Rational(1, 2));
  const auto out = refine_paths(*host, 0, 2, sp, eps, {});
  REQUIRE(out.certificate);
  const auto& cert = *out.certificate;
  CollectionFamily fam(p, host);
  CodegreeTable table(p, base_params(*host, 3, 3));
  const auto step = extend_case_lt_b(fam, table, cert, sp, 200000);
  REQUIRE(step.h);
  const auto& b1 = cert.layers[1];
  CHECK(std::binary_search(b1.begin(), b1.end(), (*step.h)[ThetaPattern::hub_v]));
  CHECK((*step.h)[ThetaPattern::hub_v] != cert.x);
  CHECK(compatible(fam, table, to_assignment(*step.h), step.s, 2).compatible);
}

TEST_CASE("builder on K20") {
  const auto& r = k20_run();
  CHECK(r.family.all().size() >= 50);
  CHECK(r.violation_count() == 0);
  CHECK(r.all_good());
  CHECK(r.stop != StopReason::failure);
  const ThetaPattern& p = r.family.pattern();
  std::set<Embedding> distinct(r.family.all().hyperedges().begin(), r.family.all().hyperedges().end());
  CHECK(distinct.size() == r.family.all().size());
  for (const Embedding& h : r.family.all().hyperedges()) {
    const Graph image(20, image_edges(p, h));
    const auto copies = oracle::enumerate_theta(image, 3, 3);
    CHECK(copies.copies.size() == 1);
    CHECK(image.size() == 9);
  }
  std::size_t layered = 0;
  for (int t = 2; t <= 3; ++t) layered += r.family.layer(t).size();
  CHECK(layered == r.family.all().size());
}

TEST_CASE("edge translation of the K20 run") {
  const auto& r = k20_run();
  CodegreeParams base = base_params(r.family.all().host(), 3, 3);
  CodegreeTable table(r.family.pattern(), base);
  const auto tr = edge_hypergraph(r.hprime, table, r.chosen_t, 2);
  CHECK(tr.report.loss_factor_holds);
  CHECK(tr.report.x_size_holds);
  CHECK(tr.report.counting_holds);
  CHECK(tr.report.threshold_holds);
  CHECK(tr.report.failures == 0);
  CHECK(tr.hypergraph.hyperedges.size() == r.hprime.size());
  for (const auto& e : tr.hypergraph.hyperedges) CHECK(tr.hypergraph.degree(e) == 1);
}

TEST_CASE("isomorphic copies with equal edge sets collapse") {
  const ThetaPattern p(2, 3);
  auto host = std::make_shared<const Graph>(Graph::complete(8));
  GHypergraph h(p, host);
  // The same six-cycle 0-2-4-1-5-3-0 traversed from two different hub pairs.
  h.insert({0, 1, 2, 4, 3, 5});
  h.insert({1, 0, 5, 3, 4, 2});
  REQUIRE(h.size() == 2);
  CodegreeTable table(p, base_params(*host, 2, 3));
  const auto tr = edge_hypergraph(h, table, 2, 1);
  CHECK(tr.hypergraph.hyperedges.size() == 1);
  CHECK(tr.report.loss_factor_holds);
}
