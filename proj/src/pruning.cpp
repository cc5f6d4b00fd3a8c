#include "thetasat/pruning.hpp"

#include "thetasat/errors.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace thetasat {

SaturationPrune remove_saturated_edges(const Graph& g, const GHypergraph& h, const CodegreeParams& params) {
  CodegreeParams p = params;
  p.family = CodegreeFamily::forest;
  const ThetaPattern& pattern = h.pattern();
  const PatternVertex pair[2] = {pattern.graph().edges()[0].u, pattern.graph().edges()[0].v};
  SaturationPrune out{g, {}, evaluate_codegree(p, pattern, pair)};
  if (out.edge_threshold.is_unbounded()) return out;
  std::set<Edge> removed;
  for (const Embedding& e : h.hyperedges()) {
    for (const Edge& we : pattern.graph().edges()) {
      const Edge host(e[static_cast<std::size_t>(we.u)], e[static_cast<std::size_t>(we.v)]);
      if (removed.contains(host)) continue;
      const std::uint64_t mask = (std::uint64_t{1} << we.u) | (std::uint64_t{1} << we.v);
      if (out.edge_threshold.reached_by(BigInt(h.degree(mask, e)))) removed.insert(host);
    }
  }
  out.removed.assign(removed.begin(), removed.end());
  out.pruned = g.without(out.removed);
  return out;
}

bool core_bound_holds(std::uint64_t min_degree, std::uint64_t core_order, std::uint64_t n, std::uint64_t e, int b) {
  if (core_order == 0) return false;
  // (d 2^b v')^b n >= e^b v'
  const BigInt lhs = pow_int(BigInt(min_degree) * pow_int(BigInt(2), static_cast<unsigned>(b)) * BigInt(core_order),
                             static_cast<unsigned>(b)) *
                     BigInt(n);
  const BigInt rhs = pow_int(BigInt(e), static_cast<unsigned>(b)) * BigInt(core_order);
  return lhs >= rhs;
}

CoreResult min_degree_core(const MultiGraph& g, int b) {
  if (b < 1) throw DomainError("the core needs b >= 1");
  if (g.size() == 0) throw EmptyGraph();
  const auto n = static_cast<std::size_t>(g.order());
  const std::uint64_t e = g.size();
  std::vector<char> alive(n, 1);
  std::vector<std::uint64_t> degree(n);
  std::uint64_t edges = e;
  for (std::size_t z = 0; z < n; ++z) degree[z] = g.degree(static_cast<Vertex>(z));

  auto snapshot = [&](int round) -> std::optional<CoreResult> {
    CoreResult c;
    c.round = round;
    c.edges = edges;
    c.min_degree = ~std::uint64_t{0};
    for (std::size_t z = 0; z < n; ++z)
      if (alive[z]) {
        c.kept.push_back(static_cast<Vertex>(z));
        c.min_degree = std::min(c.min_degree, degree[z]);
      }
    if (c.kept.empty()) return std::nullopt;
    if (!core_bound_holds(c.min_degree, c.kept.size(), n, e, b)) return std::nullopt;
    return c;
  };

  auto remove = [&](std::size_t z) {
    alive[z] = 0;
    for (const auto& slot : g.incident(static_cast<Vertex>(z))) {
      const auto o = static_cast<std::size_t>(slot.other);
      edges -= slot.multiplicity;
      if (o != z && alive[o]) degree[o] -= slot.multiplicity;
    }
    degree[z] = 0;
  };

  if (auto c = snapshot(0)) return *c;
  for (int r = 0;; ++r) {
    // delete while degree * n * 2 < 2^{(b-1) r} * e
    const BigInt bound = pow_int(BigInt(2), static_cast<unsigned>((b - 1) * r)) * BigInt(e);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t z = 0; z < n; ++z)
        if (alive[z] && BigInt(degree[z]) * BigInt(n) * 2 < bound) {
          remove(z);
          changed = true;
        }
    }
    if (auto c = snapshot(r + 1)) return *c;
    if (std::none_of(alive.begin(), alive.end(), [](char a) { return a != 0; }))
      throw std::logic_error("min-degree core rounds emptied the graph");
  }
}

CoreResult min_degree_core(const Graph& g, int b) { return min_degree_core(MultiGraph::from(g), b); }

std::vector<std::size_t> weighted_core(std::span<const std::uint64_t> f, int b) {
  if (b <= 1) throw DomainError("the weighted core needs b > 1");
  std::uint64_t total = 0;
  for (auto x : f) total += x;
  if (total == 0) throw EmptyWeight();
  const CoreResult c = min_degree_core(MultiGraph::loops_only(f), b);
  return {c.kept.begin(), c.kept.end()};
}

int scale_exponent(long m, long n) {
  if (m < 1 || m > n) throw DomainError("scale exponent needs 1 <= m <= n");
  int r = 0;
  while ((m << (r + 1)) <= n) ++r;
  return r;
}

Surd ScaleParams::ell() const { return Surd(Rational(min_degree)) / Surd::power(Rational(m), Rational(1, b)); }
Surd ScaleParams::ell_pow(const Rational& e) const { return ell().pow(e); }
Surd ScaleParams::m_pow(const Rational& e) const { return Surd::power(Rational(m), e); }

bool ScaleParams::ell_lower_bound_holds(const Surd& k) const {
  const Surd rhs = Surd::power(Rational(4), Rational(-b)) * Surd::power(Rational(2), Rational(r)) * k;
  return ell() >= rhs;
}

bool ScaleParams::min_degree_identity_holds() const {
  return ell_pow(Rational(b, b - 1)) <= Surd(Rational(min_degree));
}

ScaleParams scale_parameters(const Graph& gprime, long n, int b) {
  if (b < 2) throw DomainError("scale parameters need b >= 2");
  const auto live = gprime.non_isolated();
  if (live.empty()) throw DomainError("scale parameters of a graph with zero minimum degree");
  ScaleParams sp;
  sp.m = static_cast<long>(live.size());
  sp.n = n;
  sp.b = b;
  sp.min_degree = gprime.degree(live.front());
  for (Vertex z : live) sp.min_degree = std::min<long>(sp.min_degree, gprime.degree(z));
  sp.r = scale_exponent(sp.m, n);
  return sp;
}

}  // namespace thetasat
