#include "thetasat/graph.hpp"

#include "thetasat/errors.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace thetasat {

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw DomainError("negative vertex count");
  adjacency_.resize(static_cast<std::size_t>(n));
  words_ = (static_cast<std::size_t>(n) + 63) / 64;
  bits_.assign(words_ * static_cast<std::size_t>(n), 0);
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (const Edge& e : edges) add_edge(e.u, e.v);
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph Graph::complete_bipartite(int left, int right) {
  Graph g(left + right);
  for (Vertex i = 0; i < left; ++i)
    for (Vertex j = 0; j < right; ++j) g.add_edge(i, left + j);
  return g;
}

Graph Graph::cycle(int n) {
  Graph g(n);
  for (Vertex i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (!contains(u) || !contains(v)) throw DomainError("edge endpoint out of range");
  if (u == v) throw DomainError("loops are not allowed in a simple graph");
  if (adjacent(u, v)) throw DomainError("parallel edge");
  edges_.emplace_back(u, v);
  auto insert_sorted = [](std::vector<Vertex>& list, Vertex z) { list.insert(std::upper_bound(list.begin(), list.end(), z), z); };
  insert_sorted(adjacency_[static_cast<std::size_t>(u)], v);
  insert_sorted(adjacency_[static_cast<std::size_t>(v)], u);
  bits_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
  bits_[static_cast<std::size_t>(v) * words_ + static_cast<std::size_t>(u) / 64] |= std::uint64_t{1} << (u % 64);
}

bool Graph::adjacent(Vertex a, Vertex b) const {
  if (!contains(a) || !contains(b)) return false;
  return (bits_[static_cast<std::size_t>(a) * words_ + static_cast<std::size_t>(b) / 64] >> (b % 64)) & 1U;
}

Graph Graph::induced(std::span<const Vertex> keep) const {
  std::vector<char> in(static_cast<std::size_t>(n_), 0);
  for (Vertex z : keep) in[static_cast<std::size_t>(z)] = 1;
  Graph out(n_);
  for (const Edge& e : edges_)
    if (in[static_cast<std::size_t>(e.u)] && in[static_cast<std::size_t>(e.v)]) out.add_edge(e.u, e.v);
  return out;
}

Graph Graph::without(std::span<const Edge> removed) const {
  std::vector<Edge> drop(removed.begin(), removed.end());
  std::sort(drop.begin(), drop.end());
  Graph out(n_);
  for (const Edge& e : edges_)
    if (!std::binary_search(drop.begin(), drop.end(), e)) out.add_edge(e.u, e.v);
  return out;
}

std::vector<Vertex> Graph::non_isolated() const {
  std::vector<Vertex> out;
  for (Vertex z = 0; z < n_; ++z)
    if (degree(z) > 0) out.push_back(z);
  return out;
}

MultiGraph MultiGraph::from(const Graph& g) {
  MultiGraph m(g.order());
  for (const Edge& e : g.edges()) m.add_edge(e.u, e.v);
  return m;
}

MultiGraph MultiGraph::loops_only(std::span<const std::uint64_t> loops) {
  MultiGraph m(static_cast<int>(loops.size()));
  for (std::size_t i = 0; i < loops.size(); ++i)
    if (loops[i] > 0) m.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i), loops[i]);
  return m;
}

void MultiGraph::add_edge(Vertex u, Vertex v, std::uint64_t multiplicity) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw DomainError("edge endpoint out of range");
  size_ += multiplicity;
  degree_[static_cast<std::size_t>(u)] += multiplicity;
  incident_[static_cast<std::size_t>(u)].push_back({v, multiplicity});
  if (u != v) {
    degree_[static_cast<std::size_t>(v)] += multiplicity;
    incident_[static_cast<std::size_t>(v)].push_back({u, multiplicity});
  }
}

namespace {

// Exhaustive over connected vertex subsets grown from each minimum vertex (ESU-style), so
// each connected subset is visited once. Exponential in the worst case; fine for small patterns.
struct DensityScan {
  const Graph& g;
  bool proper_only;
  std::size_t total_edges;
  bool found = false;
  Rational best;
  std::vector<Vertex> best_set;
  std::size_t best_edges = 0;

  void consider(const std::vector<Vertex>& set, std::size_t edges) {
    if (set.size() < 3) return;  // two edges need at least three vertices
    auto offer = [&](std::size_t e) {
      if (e < 2) return;
      Rational value(static_cast<long>(e) - 1, static_cast<long>(set.size()) - 2);
      if (!found || value > best) {
        found = true;
        best = value;
        best_set = set;
        best_edges = e;
      }
    };
    const bool whole = set.size() == static_cast<std::size_t>(g.order()) && edges == total_edges;
    if (!proper_only || !whole) offer(edges);
    else offer(edges - 1);  // a proper subgraph on the full vertex set drops one edge
  }

  void extend(std::vector<Vertex>& set, std::size_t edges, std::vector<Vertex>& frontier, Vertex root,
              std::vector<char>& blocked) {
    consider(set, edges);
    while (!frontier.empty()) {
      Vertex w = frontier.back();
      frontier.pop_back();
      std::vector<Vertex> next_frontier = frontier;
      std::vector<Vertex> newly;
      for (Vertex y : g.neighbors(w)) {
        if (y > root && !blocked[static_cast<std::size_t>(y)]) {
          blocked[static_cast<std::size_t>(y)] = 1;
          newly.push_back(y);
          next_frontier.push_back(y);
        }
      }
      std::size_t added = 0;
      for (Vertex z : set)
        if (g.adjacent(z, w)) ++added;
      set.push_back(w);
      extend(set, edges + added, next_frontier, root, blocked);
      set.pop_back();
      for (Vertex y : newly) blocked[static_cast<std::size_t>(y)] = 0;
    }
  }
};

}  // namespace

DensityResult two_density(const Graph& g, bool proper_only) {
  DensityScan scan{g, proper_only, g.size(), false, {}, {}, 0};
  std::vector<char> blocked(static_cast<std::size_t>(g.order()), 0);
  for (Vertex root = 0; root < g.order(); ++root) {
    std::vector<Vertex> set{root};
    std::vector<Vertex> frontier;
    blocked[static_cast<std::size_t>(root)] = 1;
    for (Vertex y : g.neighbors(root))
      if (y > root) {
        blocked[static_cast<std::size_t>(y)] = 1;
        frontier.push_back(y);
      }
    scan.extend(set, 0, frontier, root, blocked);
    for (Vertex y : g.neighbors(root)) blocked[static_cast<std::size_t>(y)] = 0;
    blocked[static_cast<std::size_t>(root)] = 0;
  }
  if (!scan.found) throw DomainError("no subgraph with at least two edges qualifies");
  std::sort(scan.best_set.begin(), scan.best_set.end());
  return {scan.best, scan.best_set, scan.best_edges};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

double pair_uniform(std::uint64_t seed, std::uint64_t pair_index) {
  const std::uint64_t h = splitmix64(splitmix64(seed) ^ splitmix64(pair_index + 0x632BE59BD9B4E019ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Graph sample_gnp(int n, const Rational& p, std::uint64_t seed) {
  if (p < 0 || p > 1) throw DomainError("edge probability must lie in [0,1]");
  Graph g(n);
  if (p == 0) return g;
  const double pd = p.convert_to<double>();
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) {
      const auto index = static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(j);
      if (p == 1 || pair_uniform(seed, index) < pd) g.add_edge(i, j);
    }
  return g;
}

void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

Graph read_edge_list(std::istream& is) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw DomainError("edge list: missing header");
  long n = -1;
  long m = -1;
  {
    std::istringstream head(line);
    if (!(head >> n >> m) || n < 0 || m < 0) throw DomainError("edge list: bad header");
  }
  Graph g(static_cast<int>(n));
  for (long i = 0; i < m; ++i) {
    if (!next_line()) throw DomainError("edge list: fewer edges than declared");
    std::istringstream row(line);
    long u = -1;
    long v = -1;
    if (!(row >> u >> v)) throw DomainError("edge list: bad edge line");
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return g;
}

}  // namespace thetasat
