#include "thetasat/containers.hpp"

#include "thetasat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace thetasat {

UniformHypergraph::UniformHypergraph(int vertices, int uniformity) : n_(vertices), r_(uniformity) {
  if (vertices < 0 || uniformity < 1) throw DomainError("hypergraph needs n >= 0 and r >= 1");
}

UniformHypergraph::UniformHypergraph(int vertices, int uniformity, std::vector<VertexSet> edges)
    : UniformHypergraph(vertices, uniformity) {
  for (auto& e : edges) add_edge(std::move(e));
}

void UniformHypergraph::add_edge(VertexSet e) {
  std::sort(e.begin(), e.end());
  if (std::adjacent_find(e.begin(), e.end()) != e.end() || static_cast<int>(e.size()) != r_)
    throw DomainError("hyperedge must have exactly r distinct vertices");
  if (!e.empty() && (e.front() < 0 || e.back() >= n_)) throw DomainError("hyperedge vertex out of range");
  if (std::find(edges_.begin(), edges_.end(), e) == edges_.end()) edges_.push_back(std::move(e));
}

std::size_t UniformHypergraph::edges_inside(const std::vector<char>& members) const {
  std::size_t count = 0;
  for (const auto& e : edges_)
    if (std::all_of(e.begin(), e.end(), [&](HyperVertex v) { return members[static_cast<std::size_t>(v)] != 0; }))
      ++count;
  return count;
}

bool UniformHypergraph::independent(const VertexSet& s) const {
  std::vector<char> members(static_cast<std::size_t>(n_), 0);
  for (HyperVertex v : s) members[static_cast<std::size_t>(v)] = 1;
  return edges_inside(members) == 0;
}

Rational codegree_delta(const UniformHypergraph& h, const Rational& tau) {
  if (h.size() == 0) throw EmptyHypergraph();
  if (tau <= 0) throw DomainError("tau must be positive");
  const int r = h.uniformity();
  Rational total = 0;
  // d^{(j)}(v): max number of edges containing a j-set that contains v.
  for (int j = 2; j <= r; ++j) {
    std::map<VertexSet, std::size_t> codegree;
    for (const auto& e : h.edges()) {
      std::vector<char> pick(static_cast<std::size_t>(r), 0);
      std::fill(pick.begin(), pick.begin() + j, 1);
      do {
        VertexSet sub;
        for (int i = 0; i < r; ++i)
          if (pick[static_cast<std::size_t>(i)]) sub.push_back(e[static_cast<std::size_t>(i)]);
        ++codegree[sub];
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    std::vector<std::size_t> best(static_cast<std::size_t>(h.order()), 0);
    for (const auto& [sub, d] : codegree)
      for (HyperVertex v : sub) best[static_cast<std::size_t>(v)] = std::max(best[static_cast<std::size_t>(v)], d);
    const auto sum = std::accumulate(best.begin(), best.end(), std::size_t{0});
    total += Rational(sum) / pow_int(tau, j - 1);
  }
  return total / Rational(h.size());
}

namespace {

struct Scythe {
  const UniformHypergraph& h;
  std::vector<char> in_c;
  std::vector<char> in_t;
  std::vector<char> processed;

  explicit Scythe(const UniformHypergraph& hg)
      : h(hg),
        in_c(static_cast<std::size_t>(hg.order()), 1),
        in_t(static_cast<std::size_t>(hg.order()), 0),
        processed(static_cast<std::size_t>(hg.order()), 0) {}

  bool inside(const VertexSet& e) const {
    return std::all_of(e.begin(), e.end(), [&](HyperVertex v) { return in_c[static_cast<std::size_t>(v)] != 0; });
  }

  ContainerStep run(const std::vector<char>& in_i, const Rational& delta) {
    const Rational keep = (1 - delta) * Rational(h.size());
    const auto n = static_cast<std::size_t>(h.order());
    for (;;) {
      std::vector<std::size_t> degree(n, 0);
      std::size_t inner = 0;
      for (const auto& e : h.edges())
        if (inside(e)) {
          ++inner;
          for (HyperVertex v : e) ++degree[static_cast<std::size_t>(v)];
        }
      if (Rational(inner) <= keep) break;
      std::size_t pick = n;
      for (std::size_t v = 0; v < n; ++v)
        if (in_c[v] && !processed[v] && (pick == n || degree[v] > degree[pick])) pick = v;
      if (pick == n) break;
      if (!in_i[pick]) {
        in_c[pick] = 0;
        continue;
      }
      in_t[pick] = 1;
      processed[pick] = 1;
      for (const auto& e : h.edges()) {
        if (!inside(e)) continue;
        std::size_t outside_t = n;
        int count = 0;
        for (HyperVertex v : e)
          if (!in_t[static_cast<std::size_t>(v)]) {
            outside_t = static_cast<std::size_t>(v);
            ++count;
          }
        if (count == 1) in_c[outside_t] = 0;
      }
    }
    ContainerStep out;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_t[v]) out.fingerprint.push_back(static_cast<HyperVertex>(v));
      if (in_c[v]) out.container.push_back(static_cast<HyperVertex>(v));
    }
    return out;
  }
};

std::vector<char> membership(int n, const VertexSet& s) {
  std::vector<char> out(static_cast<std::size_t>(n), 0);
  for (HyperVertex v : s) {
    if (v < 0 || v >= n) throw DomainError("vertex out of range");
    out[static_cast<std::size_t>(v)] = 1;
  }
  return out;
}

bool subset_of(const VertexSet& small, const VertexSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

VertexSet random_maximal_independent(const UniformHypergraph& h, std::mt19937_64& rng) {
  std::vector<HyperVertex> order(static_cast<std::size_t>(h.order()));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> in(order.size(), 0);
  for (HyperVertex v : order) {
    in[static_cast<std::size_t>(v)] = 1;
    if (h.edges_inside(in) != 0) in[static_cast<std::size_t>(v)] = 0;
  }
  VertexSet out;
  for (std::size_t v = 0; v < in.size(); ++v)
    if (in[v]) out.push_back(static_cast<HyperVertex>(v));
  return out;
}

}  // namespace

ContainerStep container_step(const UniformHypergraph& h, const VertexSet& independent, const Rational& delta) {
  if (delta <= 0 || delta > 1) throw DomainError("delta must lie in (0, 1]");
  const auto in_i = membership(h.order(), independent);
  if (h.edges_inside(in_i) != 0) throw DomainError("set is not independent");
  Scythe s(h);
  return s.run(in_i, delta);
}

VertexSet container_of(const UniformHypergraph& h, const VertexSet& fingerprint, const Rational& delta) {
  return container_step(h, fingerprint, delta).container;
}

std::vector<VertexSet> independent_sets(const UniformHypergraph& h) {
  if (h.order() > 24) throw DomainError("exhaustive enumeration needs at most 24 vertices");
  const int n = h.order();
  // Edges indexed by their largest vertex: adding v can only complete those.
  std::vector<std::vector<std::uint32_t>> closing(static_cast<std::size_t>(n));
  for (const auto& e : h.edges()) {
    std::uint32_t mask = 0;
    for (HyperVertex v : e) mask |= 1u << v;
    closing[static_cast<std::size_t>(e.back())].push_back(mask);
  }
  std::vector<VertexSet> out;
  std::vector<std::uint32_t> stack{0};
  for (int v = 0; v < n; ++v) {
    std::vector<std::uint32_t> next;
    next.reserve(stack.size() * 2);
    for (std::uint32_t s : stack) {
      next.push_back(s);
      const std::uint32_t with = s | (1u << v);
      const auto& cl = closing[static_cast<std::size_t>(v)];
      if (std::none_of(cl.begin(), cl.end(), [&](std::uint32_t m) { return (m & with) == m; })) next.push_back(with);
    }
    stack = std::move(next);
  }
  std::sort(stack.begin(), stack.end());
  for (std::uint32_t s : stack) {
    VertexSet set;
    for (int v = 0; v < n; ++v)
      if (s >> v & 1u) set.push_back(v);
    out.push_back(std::move(set));
  }
  return out;
}

ContainerSet build_containers(const UniformHypergraph& h, const Rational& tau, const Rational& delta,
                              const ContainerOptions& options) {
  if (tau <= 0) throw DomainError("tau must be positive");
  ContainerSet out;
  out.tau = tau;
  out.delta = delta;
  if (h.size() > 0) {
    out.measured_delta = codegree_delta(h, tau);
    out.delta_condition = out.measured_delta <= delta;
  }
  std::vector<VertexSet> sets;
  if (h.order() <= options.exhaustive_limit && h.order() <= 24) {
    sets = independent_sets(h);
    out.exhaustive = true;
  } else {
    std::mt19937_64 rng(options.seed);
    for (std::size_t i = 0; i < options.samples; ++i) sets.push_back(random_maximal_independent(h, rng));
  }
  std::map<VertexSet, VertexSet> raw;
  const Rational bound = tau * Rational(h.order()) / delta;
  for (const auto& i : sets) {
    auto step = container_step(h, i, delta);
    out.max_fingerprint = std::max(out.max_fingerprint, step.fingerprint.size());
    if (Rational(step.fingerprint.size()) > bound) out.fingerprint_bound = false;
    raw.emplace(std::move(step.fingerprint), std::move(step.container));
  }
  std::set<VertexSet> distinct;
  for (const auto& [fp, c] : raw) distinct.insert(c);
  out.containers.assign(distinct.begin(), distinct.end());
  for (const auto& [fp, c] : raw) {
    const auto it = std::lower_bound(out.containers.begin(), out.containers.end(), c);
    out.fingerprints.emplace(fp, static_cast<std::size_t>(it - out.containers.begin()));
  }
  return out;
}

ContainerCheck check_containers(const UniformHypergraph& h, const ContainerSet& set) {
  ContainerCheck out;
  const Rational keep = (1 - set.delta) * Rational(h.size());
  out.worst_kept_fraction = 0;
  for (const auto& c : set.containers) {
    const auto inner = h.edges_inside(membership(h.order(), c));
    if (Rational(inner) > keep) out.loses_delta = false;
    if (h.size() > 0)
      out.worst_kept_fraction = std::max(out.worst_kept_fraction, static_cast<double>(inner) / static_cast<double>(h.size()));
  }
  std::vector<VertexSet> sets;
  if (h.order() <= 24) {
    sets = independent_sets(h);
  } else {
    std::mt19937_64 rng(0x5eed);
    for (int i = 0; i < 500; ++i) sets.push_back(random_maximal_independent(h, rng));
  }
  for (const auto& i : sets) {
    ++out.independent_sets;
    const bool covered =
        std::any_of(set.containers.begin(), set.containers.end(), [&](const VertexSet& c) { return subset_of(i, c); });
    if (!covered) {
      ++out.uncovered;
      if (!out.witness) out.witness = i;
    }
  }
  return out;
}

IterationTrace iterate_containers(const IterationParams& params, const HypergraphSource& source, const Graph& free_graph) {
  if (params.n < 2 || free_graph.order() != params.n) throw DomainError("free graph must live on n >= 2 vertices");
  if (params.pattern_edges < 2) throw DomainError("pattern needs at least two edges");
  IterationTrace out;
  const Surd n_alpha = Surd::power(Rational(params.n), params.alpha);
  const Surd target = Surd(params.k_target) * n_alpha;
  const double na = n_alpha.to_double();
  const double alpha = static_cast<double>(params.alpha);
  const double density_shift =
      alpha - 2 + static_cast<double>(params.pattern_vertices - 2) / static_cast<double>(params.pattern_edges - 1);
  const double delta = static_cast<double>(params.delta);
  const double eps = static_cast<double>(params.eps);
  const double full = static_cast<double>(params.n) * (params.n - 1) / 2;
  const double kn = static_cast<double>(params.k_target) * na;
  out.round_bound = full > kn ? static_cast<std::size_t>(std::ceil(std::log(full / kn) / -std::log1p(-eps))) + 1 : 1;

  std::set<Edge> in_free(free_graph.edges().begin(), free_graph.edges().end());
  Graph g = Graph::complete(params.n);
  std::vector<Edge> union_t;
  const std::size_t guard = 4 * static_cast<std::size_t>(params.n) * static_cast<std::size_t>(params.n) + 8;
  for (std::size_t round = 0;; ++round) {
    if (compare(Rational(g.size()), target) <= 0) {
      out.stop = "target";
      break;
    }
    if (round >= guard) {
      out.stop = "guard";
      break;
    }
    const UniformHypergraph h = source(g);
    if (h.size() == 0) {
      out.stop = "no-hyperedges";
      break;
    }
    VertexSet inside;
    const auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (in_free.count(edges[i])) inside.push_back(static_cast<HyperVertex>(i));
    if (!h.independent(inside)) {
      out.stop = "not-free";
      break;
    }
    const auto step = container_step(h, inside, params.delta);
    ContainerRound rec;
    rec.edges_before = g.size();
    rec.hyperedges = h.size();
    for (HyperVertex i : step.fingerprint) rec.fingerprint.push_back(edges[static_cast<std::size_t>(i)]);
    rec.container_edges = step.container.size();
    std::vector<Edge> next;
    for (HyperVertex i : step.container)
      if (!std::binary_search(step.fingerprint.begin(), step.fingerprint.end(), i))
        next.push_back(edges[static_cast<std::size_t>(i)]);
    rec.edges_after = next.size();
    rec.k = static_cast<double>(g.size()) / na;
    const double shrink = std::min(std::pow(rec.k, 1 / (2 - alpha)), rec.k * std::pow(params.n, density_shift));
    rec.tau = 1 / (std::pow(delta, 4) * shrink);
    rec.mu = (1 / eps) * std::max(std::pow(rec.k, -(alpha - 1) / (2 - alpha)), std::pow(params.n, -density_shift));
    rec.fingerprint_within_mu = static_cast<double>(rec.fingerprint.size()) <= rec.mu * na;
    union_t.insert(union_t.end(), rec.fingerprint.begin(), rec.fingerprint.end());
    const bool progress = next.size() < g.size();
    out.rounds.push_back(std::move(rec));
    g = Graph(params.n, next);
    if (!progress) {
      out.stop = "stalled";
      break;
    }
  }
  std::sort(union_t.begin(), union_t.end());
  union_t.erase(std::unique(union_t.begin(), union_t.end()), union_t.end());
  out.fingerprint_union = union_t;
  out.residual = g;
  std::set<Edge> covered(union_t.begin(), union_t.end());
  covered.insert(g.edges().begin(), g.edges().end());
  const bool lower = std::all_of(union_t.begin(), union_t.end(), [&](const Edge& e) { return in_free.count(e) > 0; });
  const bool upper = std::all_of(in_free.begin(), in_free.end(), [&](const Edge& e) { return covered.count(e) > 0; });
  out.sandwich = lower && upper;
  return out;
}

namespace {

BigInt binomial(std::size_t n, long k) {
  if (k < 0 || static_cast<std::size_t>(k) > n) return 0;
  BigInt out = 1;
  for (long i = 0; i < k; ++i) {
    out *= BigInt(n - static_cast<std::size_t>(i));
    out /= BigInt(i + 1);
  }
  return out;
}

}  // namespace

UnionBound gnp_upper_bound(std::span<const ColoredRecord> records, const Rational& p, std::size_t m) {
  if (p < 0 || p > 1) throw DomainError("p must lie in [0, 1]");
  UnionBound out;
  const Rational pm = pow_int(p, static_cast<long>(m));
  for (const auto& s : records)
    out.value += Rational(binomial(s.residual_edges, static_cast<long>(m) - static_cast<long>(s.fingerprint_edges))) * pm;
  out.below_one = out.value < 1;
  return out;
}

double colored_count_cap_log2(double n, double alpha, double k, double s, double c) {
  if (n <= 0 || alpha <= 1 || alpha >= 2 || k <= 0 || s <= 0 || c <= 0) throw DomainError("bad counting-cap parameters");
  const double na = std::pow(n, alpha);
  return s / (alpha - 1) * std::log2(c * na / s) + c * std::pow(k, -(alpha - 1) / (2 - alpha)) * na / std::log(2.0);
}

}  // namespace thetasat
