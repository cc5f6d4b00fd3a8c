#include "thetasat/oracle.hpp"

#include "thetasat/errors.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

namespace thetasat::oracle {
namespace {

struct ThetaSearch {
  const Graph& g;
  int a;
  int b;
  std::size_t cap;
  std::set<std::vector<Edge>> found;
  bool truncated = false;
  std::vector<char> used;
  std::vector<std::vector<Vertex>> paths;  // interiors, strictly increasing lexicographically

  void record(Vertex u, Vertex v) {
    std::vector<Edge> edges;
    for (const auto& p : paths) {
      Vertex prev = u;
      for (Vertex z : p) {
        edges.emplace_back(prev, z);
        prev = z;
      }
      edges.emplace_back(prev, v);
    }
    std::sort(edges.begin(), edges.end());
    if (found.count(edges)) return;
    if (found.size() >= cap) {
      truncated = true;
      return;
    }
    found.insert(std::move(edges));
  }

  // Extends the last open path towards v.
  void grow(Vertex u, Vertex v, std::vector<Vertex>& current) {
    if (truncated) return;
    const Vertex tail = current.empty() ? u : current.back();
    if (static_cast<int>(current.size()) == b - 1) {
      if (!g.adjacent(tail, v)) return;
      if (!paths.empty() && !(paths.back() < current)) return;
      paths.push_back(current);
      if (static_cast<int>(paths.size()) == a) {
        record(u, v);
      } else {
        std::vector<Vertex> next;
        grow(u, v, next);
      }
      paths.pop_back();
      return;
    }
    for (Vertex z : g.neighbors(tail)) {
      if (used[static_cast<std::size_t>(z)]) continue;
      used[static_cast<std::size_t>(z)] = 1;
      current.push_back(z);
      grow(u, v, current);
      current.pop_back();
      used[static_cast<std::size_t>(z)] = 0;
    }
  }

  void search() {
    used.assign(static_cast<std::size_t>(g.order()), 0);
    for (Vertex u = 0; u < g.order(); ++u)
      for (Vertex v = u + 1; v < g.order(); ++v) {
        used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = 1;
        std::vector<Vertex> current;
        grow(u, v, current);
        used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = 0;
      }
  }
};

std::size_t edge_index(std::span<const Edge> edges, const Edge& e) {
  const auto it = std::lower_bound(edges.begin(), edges.end(), e);
  return static_cast<std::size_t>(it - edges.begin());
}

// Copies as bitmasks over the sorted edge list of g.
std::vector<std::uint64_t> copy_masks(const Graph& g, const std::vector<Edge>& sorted, int a, int b) {
  if (sorted.size() > 64) throw DomainError("bitmask oracle needs at most 64 host edges");
  const auto copies = enumerate_theta(g, a, b);
  if (copies.truncated) throw DomainError("too many pattern copies for the exact oracle");
  std::vector<std::uint64_t> out;
  for (const auto& c : copies.copies) {
    std::uint64_t m = 0;
    for (const Edge& e : c) m |= std::uint64_t{1} << edge_index(sorted, e);
    out.push_back(m);
  }
  return out;
}

std::vector<Edge> sorted_edges(const Graph& g) {
  std::vector<Edge> out(g.edges().begin(), g.edges().end());
  std::sort(out.begin(), out.end());
  return out;
}

struct BudgetExceeded {};

// Maximum independent set in the copy hypergraph over host edges.
struct RussianDoll {
  int m = 0;
  std::vector<std::vector<std::uint64_t>> containing;
  std::vector<std::uint64_t> copies;
  std::uint64_t budget = 0;

  std::vector<std::size_t> best_from;
  std::vector<std::vector<std::uint64_t>> active_at;  // per depth: copies inside S + R
  std::size_t best = 0;
  std::uint64_t witness = 0;
  bool found = false;
  std::uint64_t nodes = 0;

  std::uint64_t filter(std::uint64_t r, std::uint64_t s, int v) const {
    for (std::uint64_t c : containing[static_cast<std::size_t>(v)]) {
      const std::uint64_t rest = c & ~s;
      if (std::popcount(rest) == 1) r &= ~rest;
    }
    return r;
  }

  // Disjoint copies that each force one more candidate out.
  static std::size_t packing(std::span<const std::uint64_t> active, std::uint64_t r) {
    std::uint64_t taken = 0;
    std::size_t count = 0;
    for (std::uint64_t c : active) {
      const std::uint64_t part = c & r;
      if ((part & taken) != 0) continue;
      taken |= part;
      ++count;
    }
    return count;
  }

  void narrow(std::size_t depth, std::uint64_t within) {
    auto& next = active_at[depth + 1];
    next.clear();
    for (std::uint64_t c : active_at[depth])
      if ((c & ~within) == 0) next.push_back(c);
  }

  void expand(std::uint64_t s, std::size_t size, std::uint64_t r, std::size_t depth) {
    if (++nodes > budget) throw BudgetExceeded{};
    if (r == 0) {
      if (size > best) {
        best = size;
        witness = s;
        found = true;
      }
      return;
    }
    if (size + static_cast<std::size_t>(std::popcount(r)) - packing(active_at[depth], r) <= best) return;
    while (r != 0) {
      if (size + static_cast<std::size_t>(std::popcount(r)) <= best) return;
      const int v = std::countr_zero(r);
      if (size + best_from[static_cast<std::size_t>(v)] <= best) return;
      r &= r - 1;
      const std::uint64_t s2 = s | (std::uint64_t{1} << v);
      const std::uint64_t r2 = filter(r, s2, v);
      narrow(depth, s2 | r2);
      expand(s2, size + 1, r2, depth + 1);
      if (found) return;
    }
  }

  void run() {
    best_from.assign(static_cast<std::size_t>(m), 0);
    active_at.assign(static_cast<std::size_t>(m) + 2, {});
    const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    for (int i = m - 1; i >= 0; --i) {
      found = false;
      const std::uint64_t s = std::uint64_t{1} << i;
      const std::uint64_t later = i + 1 >= 64 ? 0 : (~std::uint64_t{0} << (i + 1)) & all;
      const std::uint64_t r = filter(later, s, i);
      active_at[0].clear();
      for (std::uint64_t c : copies)
        if ((c & ~(s | r)) == 0) active_at[0].push_back(c);
      expand(s, 1, r, 0);
      best_from[static_cast<std::size_t>(i)] = best;
    }
  }
};

}  // namespace

ThetaCopies enumerate_theta(const Graph& g, int a, int b, std::size_t cap) {
  if (a < 1 || b < 2) throw DomainError("theta needs a >= 1 and b >= 2");
  ThetaSearch search{g, a, b, cap, {}, false, {}, {}};
  if (a * (b - 1) + 2 <= g.order()) search.search();
  ThetaCopies out;
  out.copies.assign(search.found.begin(), search.found.end());
  out.truncated = search.truncated;
  return out;
}

bool is_theta_free(const Graph& g, int a, int b) { return enumerate_theta(g, a, b, 1).copies.empty(); }

ExactResult ExactSolver::solve(const Graph& g, int a, int b) {
  const auto edges = sorted_edges(g);
  auto key = std::make_tuple(a, b, g.order(), edges);
  if (const auto it = cache_.find(key); it != cache_.end()) return it->second;

  ExactResult out;
  const auto copies = copy_masks(g, edges, a, b);
  if (copies.empty()) {
    out.value = edges.size();
    out.witness = edges;
  } else {
    RussianDoll rd;
    rd.m = static_cast<int>(edges.size());
    rd.copies = copies;
    rd.budget = budget_;
    rd.containing.resize(edges.size());
    for (std::uint64_t c : copies)
      for (std::uint64_t rest = c; rest != 0; rest &= rest - 1)
        rd.containing[static_cast<std::size_t>(std::countr_zero(rest))].push_back(c);
    try {
      rd.run();
    } catch (const BudgetExceeded&) {
      out.optimal = false;
    }
    out.value = rd.best;
    out.nodes = rd.nodes;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (rd.witness >> i & 1u) out.witness.push_back(edges[i]);
    if (!is_theta_free(Graph(g.order(), out.witness), a, b)) throw std::logic_error("exact witness contains a copy");
  }
  cache_.emplace(std::move(key), out);
  return out;
}

std::vector<Edge> greedy_free(const Graph& g, int a, int b) {
  const auto copies = enumerate_theta(g, a, b);
  if (copies.truncated) throw DomainError("too many pattern copies for the greedy bound");
  std::map<Edge, std::vector<std::size_t>> by_edge;
  for (std::size_t i = 0; i < copies.copies.size(); ++i)
    for (const Edge& e : copies.copies[i]) by_edge[e].push_back(i);
  std::set<Edge> kept;
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    bool closes = false;
    for (std::size_t i : by_edge[e]) {
      const auto& c = copies.copies[i];
      if (std::all_of(c.begin(), c.end(), [&](const Edge& f) { return f == e || kept.count(f) > 0; })) {
        closes = true;
        break;
      }
    }
    if (!closes) {
      kept.insert(e);
      out.push_back(e);
    }
  }
  return out;
}

std::size_t deletion_lower_bound(const Graph& g, int a, int b) {
  const auto copies = enumerate_theta(g, a, b);
  if (copies.truncated) throw DomainError("too many pattern copies for the deletion bound");
  return g.size() > copies.copies.size() ? g.size() - copies.copies.size() : 0;
}

CoverVerdict verify_cover(const Graph& g, int a, int b, const std::vector<std::vector<std::int32_t>>& containers,
                          std::size_t samples, std::uint64_t seed) {
  const std::size_t m = g.size();
  if (m > 64) throw DomainError("cover check needs at most 64 host edges");
  // Containers index g's insertion order; copies come out over the sorted order.
  const std::vector<Edge> sorted = sorted_edges(g);
  std::vector<std::size_t> to_insertion(m);
  for (std::size_t i = 0; i < m; ++i) to_insertion[edge_index(sorted, g.edges()[i])] = i;
  std::vector<std::uint64_t> copies;
  for (std::uint64_t sm : copy_masks(g, sorted, a, b)) {
    std::uint64_t c = 0;
    for (std::uint64_t rest = sm; rest != 0; rest &= rest - 1)
      c |= std::uint64_t{1} << to_insertion[static_cast<std::size_t>(std::countr_zero(rest))];
    copies.push_back(c);
  }
  std::vector<std::uint64_t> boxes;
  for (const auto& c : containers) {
    std::uint64_t mask = 0;
    for (std::int32_t i : c) {
      if (i < 0 || static_cast<std::size_t>(i) >= m) throw DomainError("container index outside E(g)");
      mask |= std::uint64_t{1} << i;
    }
    boxes.push_back(mask);
  }
  const auto is_free = [&](std::uint64_t s) {
    return std::none_of(copies.begin(), copies.end(), [&](std::uint64_t c) { return (c & s) == c; });
  };
  CoverVerdict out;
  const auto check = [&](std::uint64_t s) {
    ++out.checked;
    if (std::any_of(boxes.begin(), boxes.end(), [&](std::uint64_t c) { return (s & ~c) == 0; })) return;
    out.covered = false;
    if (!out.witness) {
      std::vector<Edge> w;
      for (std::size_t i = 0; i < m; ++i)
        if (s >> i & 1u) w.push_back(g.edges()[i]);
      out.witness = std::move(w);
    }
  };
  if (m <= 20) {
    out.exhaustive = true;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s)
      if (is_free(s)) check(s);
    return out;
  }
  // Maximal free subgraphs are the hardest to cover.
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  for (std::size_t k = 0; k < samples; ++k) {
    std::shuffle(order.begin(), order.end(), rng);
    std::uint64_t s = 0;
    for (std::size_t i : order)
      if (is_free(s | std::uint64_t{1} << i)) s |= std::uint64_t{1} << i;
    check(s);
  }
  return out;
}

ExponentRow exponent_row(int a, int b) {
  if (a < 2 || b < 2) throw DomainError("exponent table needs a >= 2 and b >= 2");
  ExponentRow row;
  row.a = a;
  row.b = b;
  row.m2 = Rational(a * b - 1, a * (b - 1));
  const int order = a * (b - 1) + 2;
  if (order <= 22) {
    Graph theta(order);
    for (int j = 0; j < a; ++j)
      for (int i = 0; i < b; ++i) {
        const auto at = [&](int level) -> Vertex {
          if (level == 0) return 0;
          if (level == b) return 1;
          return 2 + j * (b - 1) + (level - 1);
        };
        theta.add_edge(at(i), at(i + 1));
      }
    row.m2_measured = two_density(theta).value;
  }
  row.sparse_exponent = -Rational(a * (b - 1), a * b - 1);
  row.upper_exponent = -Rational(b - 1, a * b - 1);
  row.log_power = 2 * b;
  row.dense_p_exponent = Rational(1, b);
  row.dense_n_exponent = 1 + Rational(1, b);
  row.middle_exponent = 2 - Rational(a * (b - 1), a * b - 1);
  return row;
}

std::vector<ExponentRow> exponent_table(int a_max, int b_max) {
  std::vector<ExponentRow> out;
  for (int a = 2; a <= a_max; ++a)
    for (int b = 2; b <= b_max; ++b) out.push_back(exponent_row(a, b));
  return out;
}

}  // namespace thetasat::oracle
