#include "thetasat/errors.hpp"
#include "thetasat/hypergraph.hpp"

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

using namespace thetasat;

namespace {

CodegreeParams params(int a, int b, long k, long n, Rational delta, CodegreeFamily family, int s = 0, int t = 2) {
  CodegreeParams p;
  p.a = a;
  p.b = b;
  p.k = Surd(k);
  p.n = n;
  p.delta = delta;
  p.family = family;
  p.s = s;
  p.t = t;
  return p;
}

std::vector<PatternVertex> all_of(const ThetaPattern& p) {
  std::vector<PatternVertex> nu(static_cast<std::size_t>(p.order()));
  std::iota(nu.begin(), nu.end(), 0);
  return nu;
}

// Random valid embeddings of the pattern into K_n.
std::vector<Embedding> random_embeddings(const ThetaPattern& p, int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Embedding> out;
  std::vector<Vertex> hosts(static_cast<std::size_t>(n));
  std::iota(hosts.begin(), hosts.end(), 0);
  for (int i = 0; i < count; ++i) {
    std::shuffle(hosts.begin(), hosts.end(), rng);
    out.emplace_back(hosts.begin(), hosts.begin() + p.order());
  }
  return out;
}

}  // namespace

TEST_CASE("forest thresholds") {
  const ThetaPattern p(6, 3);
  const std::vector<PatternVertex> edge{ThetaPattern::hub_u, p.interior(1, 1)};
  CHECK(evaluate_codegree(params(6, 3, 2, 64, Rational(1, 10), CodegreeFamily::forest), p, edge) ==
        ExtendedCount(BigInt(20'971'520)));
  const std::vector<PatternVertex> path{ThetaPattern::hub_u, p.interior(1, 1), p.interior(2, 1)};
  CHECK(evaluate_codegree(params(6, 3, 4, 64, Rational(1, 10), CodegreeFamily::forest), p, path) ==
        ExtendedCount(BigInt(3'435'973'836'800LL)));
  std::vector<PatternVertex> cycle{ThetaPattern::hub_u, ThetaPattern::hub_v};
  for (int j = 1; j <= 2; ++j)
    for (int i = 1; i <= 2; ++i) cycle.push_back(p.interior(i, j));
  CHECK(evaluate_codegree(params(6, 3, 2, 64, Rational(1, 10), CodegreeFamily::forest), p, cycle).is_unbounded());
}

TEST_CASE("hub-scaled thresholds") {
  const ThetaPattern p(6, 3);
  const std::vector<PatternVertex> hubs{ThetaPattern::hub_u, ThetaPattern::hub_v};
  CHECK(evaluate_codegree(params(6, 3, 2, 64, Rational(1, 10), CodegreeFamily::hub_scaled, 0), p, hubs) ==
        ExtendedCount(BigInt(26'214'400)));
  CHECK(evaluate_codegree(params(6, 3, 2, 64, Rational(1, 10), CodegreeFamily::hub_scaled, 3), p, hubs) ==
        ExtendedCount(BigInt(209'715'200)));
  const std::vector<PatternVertex> no_u{ThetaPattern::hub_v, p.interior(1, 1)};
  CHECK(evaluate_codegree(params(6, 3, 2, 64, Rational(1, 10), CodegreeFamily::hub_scaled, 0), p, no_u).is_unbounded());
}

TEST_CASE("layered and top-layer thresholds") {
  const ThetaPattern p(3, 4);
  const std::vector<PatternVertex> hubs{ThetaPattern::hub_u, ThetaPattern::hub_v};
  CHECK(evaluate_codegree(params(3, 4, 8, 16, Rational(1, 2), CodegreeFamily::layered, 0, 2), p, hubs) ==
        ExtendedCount(BigInt(274'877'906'944LL)));
  const std::vector<PatternVertex> nu{ThetaPattern::hub_u, ThetaPattern::hub_v, p.interior(3, 1)};
  CHECK(evaluate_codegree(params(3, 4, 2, 16, Rational(1, 2), CodegreeFamily::top_layer, 0, 2), p, nu) ==
        ExtendedCount(BigInt(131'072)));
  // At t = b the top-layer family is unbounded everywhere.
  const auto tb = params(3, 4, 2, 16, Rational(1, 2), CodegreeFamily::top_layer, 0, 4);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p.order()); mask += 37)
    CHECK(evaluate_codegree(tb, signature_of_mask(p, mask, 4)).is_unbounded());
}

TEST_CASE("subset signatures") {
  const ThetaPattern p(3, 5);
  const auto whole = signature_of(p, all_of(p), 2);
  CHECK(whole.p() == 3);
  CHECK(whole.f == 6);
  CHECK(whole.g == 5);
  CHECK(whole.edges == 15);
  CHECK_FALSE(whole.forest);
  const auto empty = signature_of(p, {}, 2);
  CHECK(empty == PatternSubsetSignature{});
  CHECK(signature_of_mask(p, mask_of(all_of(p)), 2) == whole);
}

TEST_CASE("degrees in a hand-built hypergraph") {
  const ThetaPattern c4(2, 2);
  auto host = std::make_shared<const Graph>(Graph::complete(8));
  GHypergraph h(c4, host);
  CHECK(h.degree(Assignment({{ThetaPattern::hub_u, 0}})) == 0);
  CHECK(h.insert({0, 1, 2, 3}));
  CHECK_FALSE(h.insert({0, 1, 2, 3}));
  CHECK(h.insert({0, 1, 4, 5}));
  CHECK(h.size() == 2);
  CHECK(h.degree(Assignment{}) == 2);
  CHECK(h.degree(Assignment({{ThetaPattern::hub_u, 0}, {ThetaPattern::hub_v, 1}})) == 2);
  CHECK(h.degree(Assignment({{ThetaPattern::hub_u, 0}, {c4.interior(1, 1), 4}})) == 1);
  CHECK_THROWS_AS(h.degree(Assignment({{ThetaPattern::hub_u, 0}, {ThetaPattern::hub_v, 0}})), InvalidAssignment);
}

TEST_CASE("indexed degrees agree with a containment scan") {
  const ThetaPattern p(2, 3);
  auto host = std::make_shared<const Graph>(Graph::complete(9));
  GHypergraph h(p, host, 3);
  const auto edges = random_embeddings(p, 9, 60, 11);
  for (const auto& e : edges) h.insert(e);
  h.for_each_indexed([&](std::uint64_t mask, const Embedding& host_of, std::uint64_t count) {
    std::uint64_t expected = 0;
    for (const auto& e : h.hyperedges()) {
      bool inside = true;
      for (std::uint64_t m = mask; m != 0; m &= m - 1) {
        const auto w = static_cast<std::size_t>(std::countr_zero(m));
        inside = inside && e[w] == host_of[w];
      }
      expected += inside ? 1 : 0;
    }
    CHECK(count == expected);
  });
}

TEST_CASE("goodness") {
  const ThetaPattern c4(2, 2);
  auto host = std::make_shared<const Graph>(Graph::complete(8));
  GHypergraph h(c4, host);
  const Threshold one = [](std::uint64_t) { return ExtendedCount(1L); };
  CHECK(is_good(h, one, 4).good);
  h.insert({0, 1, 2, 3});
  const Threshold full_only = [&](std::uint64_t mask) {
    return std::popcount(mask) == c4.order() ? ExtendedCount(1L) : ExtendedCount::unbounded();
  };
  CHECK(is_good(h, full_only, 4).good);
  h.insert({0, 1, 4, 5});
  const auto report = is_good(h, one, 4);
  CHECK_FALSE(report.good);
  const Assignment hubs({{ThetaPattern::hub_u, 0}, {ThetaPattern::hub_v, 1}});
  bool reported = false;
  for (const auto& v : report.violations) reported = reported || (v.chi == hubs && v.degree == 2);
  CHECK(reported);
}

TEST_CASE("link sets") {
  const ThetaPattern p(2, 3);
  auto host = std::make_shared<const Graph>(Graph::complete(8));
  GHypergraph h(p, host);
  const Assignment chi({{ThetaPattern::hub_u, 0}});
  const std::vector<PatternVertex> nu{ThetaPattern::hub_v};
  const Threshold two = [](std::uint64_t) { return ExtendedCount(2L); };
  CHECK(link_set(h, two, chi, nu).empty());
  for (const auto& e : random_embeddings(p, 8, 80, 3)) h.insert(e);
  const Threshold unbounded = [](std::uint64_t) { return ExtendedCount::unbounded(); };
  CHECK(link_set(h, unbounded, chi, nu).empty());

  // The largest observed degree per pattern subset is a threshold the hypergraph meets.
  std::map<std::uint64_t, std::uint64_t> max_degree;
  h.for_each_indexed([&](std::uint64_t mask, const Embedding&, std::uint64_t count) {
    max_degree[mask] = std::max(max_degree[mask], count);
  });
  const Threshold tight = [&](std::uint64_t mask) {
    const auto it = max_degree.find(mask);
    return it == max_degree.end() ? ExtendedCount(1L) : ExtendedCount(static_cast<long>(it->second));
  };
  CHECK(is_good(h, tight, h.cap()).good);
  const std::uint64_t chi_mask = mask_of(chi.pattern_side());
  for (Vertex x = 0; x < 8; ++x) {
    const Assignment c({{ThetaPattern::hub_u, x}});
    for (PatternVertex w = 1; w < p.order(); ++w) {
      const std::vector<PatternVertex> single{w};
      const auto link = link_set(h, tight, c, single);
      const BigInt lhs = BigInt(link.size()) * tight(chi_mask | (std::uint64_t{1} << w)).value();
      CHECK(lhs <= (BigInt(1) << p.order()) * tight(chi_mask).value());
    }
  }
}

TEST_CASE("hyperedge serialization round trip") {
  const ThetaPattern p(3, 3);
  auto host = std::make_shared<const Graph>(Graph::complete(12));
  GHypergraph h(p, host);
  for (const auto& e : random_embeddings(p, 12, 10, 5)) h.insert(e);
  std::stringstream ss;
  write_hyperedges_jsonl(ss, h);
  CHECK(read_hyperedges_jsonl(ss, p) == h.hyperedges());
}
