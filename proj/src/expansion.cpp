#include "thetasat/expansion.hpp"

#include "thetasat/errors.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace thetasat {

EpsilonSchedule epsilon_schedule(int b, const Rational& c) {
  if (b < 2) throw DomainError("the epsilon schedule needs b >= 2");
  if (c <= 0 || c > 1) throw DomainError("the epsilon base must lie in (0, 1]");
  EpsilonSchedule eps{b, c, {}};
  const Rational ratio(16 * (b + 1));
  for (int t = 1; t <= b; ++t) eps.values.push_back(c / pow_int(ratio, b - t));
  return eps;
}

Surd top_layer_cap(const ScaleParams& sp, int t) {
  return sp.ell_pow(Rational(sp.b - t, sp.b - 1)) * sp.m_pow(Rational(t, sp.b));
}

Surd x_set_lambda(const ScaleParams& sp, int t) {
  return Surd(pow_int(Rational(4 * sp.b), t - sp.b)) * top_layer_cap(sp, t);
}

namespace {

using Bitmap = std::vector<char>;

Bitmap bitmap_of(int n, std::span<const Vertex> members) {
  Bitmap out(static_cast<std::size_t>(n), 0);
  for (Vertex z : members) out[static_cast<std::size_t>(z)] = 1;
  return out;
}

std::size_t count_in(const Graph& g, Vertex z, const Bitmap& set) {
  std::size_t c = 0;
  for (Vertex w : g.neighbors(z)) c += set[static_cast<std::size_t>(w)] != 0;
  return c;
}

// Removes members of layer i-1 with too few neighbors in layer i until stable, then drops
// members of later layers that no longer have a neighbor in the previous one.
bool trim_layers(const Graph& g, std::vector<std::vector<Vertex>>& layers, const Rational& min_forward) {
  const int t = static_cast<int>(layers.size()) - 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = t; i >= 1; --i) {
      const Bitmap next = bitmap_of(g.order(), layers[static_cast<std::size_t>(i)]);
      auto& prev = layers[static_cast<std::size_t>(i - 1)];
      const auto before = prev.size();
      std::erase_if(prev, [&](Vertex y) { return Rational(count_in(g, y, next)) < min_forward; });
      changed = changed || prev.size() != before;
    }
    for (int i = 1; i <= t; ++i) {
      const Bitmap prev = bitmap_of(g.order(), layers[static_cast<std::size_t>(i - 1)]);
      auto& cur = layers[static_cast<std::size_t>(i)];
      const auto before = cur.size();
      std::erase_if(cur, [&](Vertex z) { return count_in(g, z, prev) == 0; });
      changed = changed || cur.size() != before;
    }
  }
  return !layers.front().empty() && !layers.back().empty();
}

}  // namespace

std::optional<LayerTuple> concentrated_tuple(const Graph& gprime, Vertex x, int t, const ScaleParams& sp,
                                             const Rational& min_forward, const LayerFilter& allowed) {
  if (!gprime.contains(x)) throw DomainError("vertex outside the graph");
  if (t < 1 || t > sp.b) throw DomainError("layer count outside [1, b]");
  LayerTuple tuple{t, {{x}}};
  for (int i = 1; i <= t; ++i) {
    std::set<Vertex> next;
    for (Vertex y : tuple.layers.back())
      for (Vertex z : gprime.neighbors(y))
        if (!allowed || allowed(i, z)) next.insert(z);
    tuple.layers.emplace_back(next.begin(), next.end());
  }
  const Surd cap = top_layer_cap(sp, t);
  const auto cap_floor = static_cast<std::size_t>(cap.floor());
  if (!trim_layers(gprime, tuple.layers, min_forward)) return std::nullopt;
  while (tuple.layers.back().size() > cap_floor) {
    // Keep the top-layer members best attached to the layer below; x goes first.
    auto& top = tuple.layers.back();
    const Bitmap below_set = bitmap_of(gprime.order(), tuple.layers[static_cast<std::size_t>(t - 1)]);
    std::vector<std::pair<std::size_t, Vertex>> ranked;
    for (Vertex z : top) ranked.emplace_back(count_in(gprime, z, below_set), z);
    std::sort(ranked.begin(), ranked.end(), [x](const auto& p, const auto& q) {
      if ((p.second == x) != (q.second == x)) return q.second == x;
      if (p.first != q.first) return p.first > q.first;
      return p.second < q.second;
    });
    ranked.resize(cap_floor);
    top.clear();
    for (const auto& r : ranked) top.push_back(r.second);
    std::sort(top.begin(), top.end());
    if (!trim_layers(gprime, tuple.layers, min_forward)) return std::nullopt;
  }
  return tuple;
}

TEstimate t_estimate(const Graph& gprime, Vertex x, const ScaleParams& sp, const EpsilonSchedule& eps) {
  for (int t = 2; t <= sp.b; ++t)
    if (auto tuple = concentrated_tuple(gprime, x, t, sp, eps.at(t) * sp.min_degree))
      return {t, false, std::move(*tuple)};
  return {sp.b + 1, true, {}};
}

bool XSetResult::meets_half_lambda() const { return at_least(Rational(2 * x.size()), lambda); }

XSetResult x_set(const Graph& gprime, const ScaleParams& sp, const EpsilonSchedule& eps) {
  const auto live = gprime.non_isolated();
  if (live.empty()) throw EmptyGraph();
  const int b = sp.b;
  XSetResult out;
  out.t_values.assign(static_cast<std::size_t>(gprime.order()), 0);
  for (Vertex z : live) out.t_values[static_cast<std::size_t>(z)] = t_estimate(gprime, z, sp, eps).t_upper;

  out.counts.assign(static_cast<std::size_t>(b + 1), 0);
  for (int tp = 2; tp <= b; ++tp)
    for (Vertex z : live) out.counts[static_cast<std::size_t>(tp)] += out.t_values[static_cast<std::size_t>(z)] <= tp;
  out.t = 0;
  for (int tp = 2; tp <= b && out.t == 0; ++tp)
    if (at_least(Rational(out.counts[static_cast<std::size_t>(tp)]), x_set_lambda(sp, tp))) out.t = tp;
  if (out.t == 0) {
    out.fallback = true;
    double best = -1;
    for (int tp = 2; tp <= b; ++tp) {
      const double ratio = static_cast<double>(out.counts[static_cast<std::size_t>(tp)]) / x_set_lambda(sp, tp).to_double();
      if (ratio > best) {
        best = ratio;
        out.t = tp;
      }
    }
  }
  const int t = out.t;
  out.lambda = x_set_lambda(sp, t);

  const Rational alpha_degree = eps.at(t) / (2 * (b + 1)) * sp.min_degree;
  Bitmap layered(static_cast<std::size_t>(gprime.order()), 0);
  out.y_layers.resize(static_cast<std::size_t>(b + 1));
  for (Vertex z : live)
    if (out.t_values[static_cast<std::size_t>(z)] < t) out.y_layers[0].push_back(z);
  for (Vertex z : out.y_layers[0]) layered[static_cast<std::size_t>(z)] = 1;
  for (int i = 1; i <= b; ++i) {
    const Bitmap prev = bitmap_of(gprime.order(), out.y_layers[static_cast<std::size_t>(i - 1)]);
    for (Vertex z : live)
      if (!layered[static_cast<std::size_t>(z)] && at_least(Rational(count_in(gprime, z, prev)), Surd(alpha_degree)))
        out.y_layers[static_cast<std::size_t>(i)].push_back(z);
    for (Vertex z : out.y_layers[static_cast<std::size_t>(i)]) layered[static_cast<std::size_t>(z)] = 1;
  }
  for (Vertex z : live)
    if (out.t_values[static_cast<std::size_t>(z)] == t && !layered[static_cast<std::size_t>(z)]) out.x.push_back(z);

  // Layer i may not use Y_0..Y_{b-i}.
  std::vector<Bitmap> banned(static_cast<std::size_t>(b + 1), Bitmap(static_cast<std::size_t>(gprime.order()), 0));
  for (int i = 0; i <= b; ++i)
    for (int j = 0; j <= b - i; ++j)
      for (Vertex z : out.y_layers[static_cast<std::size_t>(j)]) banned[static_cast<std::size_t>(i)][static_cast<std::size_t>(z)] = 1;
  const LayerFilter allowed = [&](int i, Vertex z) { return !banned[static_cast<std::size_t>(i)][static_cast<std::size_t>(z)]; };
  for (Vertex x : out.x)
    if (auto tuple = concentrated_tuple(gprime, x, t, sp, eps.at(t) * sp.min_degree / 2, allowed))
      out.tuples.emplace(x, std::move(*tuple));
  return out;
}

std::vector<ForbiddenShape> forbidden_shapes(const ThetaPattern& pattern, const Graph& g,
                                             std::span<const Assignment> forbidden) {
  std::set<ForbiddenShape> shapes;
  for (const Assignment& chi : forbidden) {
    Projection p = project(pattern, g, chi);
    ForbiddenShape s{p.host_side, p.edges};
    s.vertices.erase(std::unique(s.vertices.begin(), s.vertices.end()), s.vertices.end());
    shapes.insert(std::move(s));
  }
  return {shapes.begin(), shapes.end()};
}

bool contains_shape(const Path& p, const ForbiddenShape& shape) {
  auto position = [&](Vertex z) -> long {
    auto it = std::find(p.begin(), p.end(), z);
    return it == p.end() ? -1 : it - p.begin();
  };
  for (Vertex z : shape.vertices)
    if (position(z) < 0) return false;
  for (const Edge& e : shape.edges) {
    const long i = position(e.u);
    const long j = position(e.v);
    if (i < 0 || j < 0 || (i - j != 1 && j - i != 1)) return false;
  }
  return true;
}

std::span<const std::size_t> ExpansionCertificate::paths_to(Vertex y) const {
  auto it = by_endpoint.find(y);
  if (it == by_endpoint.end()) return {};
  return it->second;
}

namespace {

std::size_t branching_factor(const std::vector<Path>& paths, int t) {
  std::size_t best = 0;
  for (int i = 0; i < t; ++i) {
    std::map<Vertex, std::set<Vertex>> next;
    for (const Path& p : paths) next[p[static_cast<std::size_t>(i)]].insert(p[static_cast<std::size_t>(i + 1)]);
    for (const auto& [v, s] : next) best = std::max(best, s.size());
  }
  return best;
}

// Distinct sub-paths between positions i and j, per endpoint pair, against l^{(j-i-1)b/(b-1)}.
bool pair_counts_hold(const std::vector<Path>& paths, int t, const ScaleParams& sp) {
  for (int i = 0; i <= t; ++i)
    for (int j = i + 2; j <= t; ++j) {
      if (i == 0 && j == t) continue;
      const Surd bound = sp.ell_pow(Rational((j - i - 1) * sp.b, sp.b - 1));
      std::map<std::pair<Vertex, Vertex>, std::set<Path>> groups;
      for (const Path& p : paths)
        groups[{p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]}].insert(
            Path(p.begin() + i, p.begin() + j + 1));
      for (const auto& [key, subs] : groups)
        if (compare(Rational(subs.size()), bound) > 0) return false;
    }
  return true;
}

}  // namespace

RefineOutcome refine_paths(const Graph& gprime, Vertex x, int t, const ScaleParams& sp, const EpsilonSchedule& eps,
                           std::span<const ForbiddenShape> forbidden, const RefineOptions& options) {
  auto tuple = concentrated_tuple(gprime, x, t, sp, eps.at(t) * sp.min_degree / 2);
  if (!tuple) return {std::nullopt, "tuple"};
  return refine_paths(gprime, *tuple, sp, eps, forbidden, options);
}

RefineOutcome refine_paths(const Graph& gprime, const LayerTuple& tuple, const ScaleParams& sp,
                           const EpsilonSchedule& eps, std::span<const ForbiddenShape> forbidden,
                           const RefineOptions& options) {
  const int t = tuple.t;
  const Vertex x = tuple.root();
  const int n = gprime.order();
  const Rational eps_t = eps.at(t);
  const Rational degree(sp.min_degree);
  std::vector<std::vector<Vertex>> layers = tuple.layers;

  if (layers[1].size() > static_cast<std::size_t>(sp.min_degree)) layers[1].resize(static_cast<std::size_t>(sp.min_degree));

  std::vector<Bitmap> in_layer;
  for (const auto& layer : layers) in_layer.push_back(bitmap_of(n, layer));

  std::vector<std::vector<const ForbiddenShape*>> shapes_at(static_cast<std::size_t>(n));
  for (const ForbiddenShape& s : forbidden)
    for (Vertex z : s.vertices)
      if (gprime.contains(z)) shapes_at[static_cast<std::size_t>(z)].push_back(&s);

  const auto fanout =
      std::max<std::size_t>(options.min_fanout, static_cast<std::size_t>(ceil_rational(eps_t * degree / 2)));
  std::vector<Path> paths;
  Path prefix{x};
  // Least-used candidates first, so the path family spreads over each layer.
  std::vector<std::vector<std::size_t>> uses(static_cast<std::size_t>(t) + 1, std::vector<std::size_t>(static_cast<std::size_t>(n), 0));
  auto extend = [&](auto&& self) -> void {
    const auto i = prefix.size();
    if (i == static_cast<std::size_t>(t) + 1) {
      paths.push_back(prefix);
      for (std::size_t l = 1; l < prefix.size(); ++l) ++uses[l][static_cast<std::size_t>(prefix[l])];
      return;
    }
    std::vector<Vertex> candidates;
    for (Vertex z : gprime.neighbors(prefix.back()))
      if (in_layer[i][static_cast<std::size_t>(z)] && std::find(prefix.begin(), prefix.end(), z) == prefix.end())
        candidates.push_back(z);
    std::stable_sort(candidates.begin(), candidates.end(), [&](Vertex p, Vertex q) {
      return uses[i][static_cast<std::size_t>(p)] < uses[i][static_cast<std::size_t>(q)];
    });
    const std::size_t limit = i == 1 && options.root_fanout == 0 ? candidates.size() : (i == 1 ? options.root_fanout : fanout);
    std::size_t taken = 0;
    for (Vertex z : candidates) {
      if (taken == limit || paths.size() >= options.max_paths) return;
      prefix.push_back(z);
      const auto& near = shapes_at[static_cast<std::size_t>(z)];
      const bool blocked = std::any_of(near.begin(), near.end(), [&](const ForbiddenShape* s) { return contains_shape(prefix, *s); });
      if (!blocked) {
        ++taken;
        self(self);
      }
      prefix.pop_back();
    }
  };
  extend(extend);
  if (paths.empty()) return {std::nullopt, "greedy"};

  std::vector<char> alive(paths.size(), 1);
  std::size_t alive_count = paths.size();
  auto kill = [&](std::size_t k) {
    if (alive[k]) {
      alive[k] = 0;
      --alive_count;
    }
  };

  // Balanced trimming: earliest paths go first.
  for (int i = 0; i <= t; ++i)
    for (int j = i + 2; j <= t; ++j) {
      if (i == 0 && j == t) continue;
      const Surd bound = sp.ell_pow(Rational((j - i - 1) * sp.b, sp.b - 1));
      std::map<std::pair<Vertex, Vertex>, std::vector<std::size_t>> groups;
      for (std::size_t k = 0; k < paths.size(); ++k)
        if (alive[k]) groups[{paths[k][static_cast<std::size_t>(i)], paths[k][static_cast<std::size_t>(j)]}].push_back(k);
      for (const auto& [key, members] : groups) {
        std::map<Path, std::size_t> multiplicity;
        for (std::size_t k : members) ++multiplicity[Path(paths[k].begin() + i, paths[k].begin() + j + 1)];
        for (std::size_t k : members) {
          if (compare(Rational(multiplicity.size()), bound) <= 0) break;
          const Path sub(paths[k].begin() + i, paths[k].begin() + j + 1);
          kill(k);
          if (--multiplicity[sub] == 0) multiplicity.erase(sub);
        }
      }
    }
  if (alive_count == 0) return {std::nullopt, "balance"};

  const Rational step1 = eps_t * degree / (t * pow_int(Rational(4), 2 * t));
  const Surd step2 = Surd(pow_int(Rational(4), -2 * t) * eps_t * eps_t) * sp.ell_pow(Rational(sp.b, sp.b - 1));
  const Surd step3 = Surd(pow_int(Rational(4), -2 * t) * pow_int(eps_t, t)) * sp.ell_pow(Rational((t - 1) * sp.b, sp.b - 1));

  auto remove_vertex = [&](int i, Vertex v) {
    in_layer[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] = 0;
    std::erase(layers[static_cast<std::size_t>(i)], v);
    for (std::size_t k = 0; k < paths.size(); ++k)
      if (paths[k][static_cast<std::size_t>(i)] == v) kill(k);
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 1; i < t; ++i) {
      const std::vector<Vertex> members = layers[static_cast<std::size_t>(i)];
      for (Vertex v : members)
        if (Rational(count_in(gprime, v, in_layer[static_cast<std::size_t>(i + 1)])) < step1) {
          remove_vertex(i, v);
          changed = true;
        }
    }
    if (alive_count == 0) return {std::nullopt, "step1"};
    for (Vertex v : std::vector<Vertex>(layers[static_cast<std::size_t>(t)]))
      if (below(Rational(count_in(gprime, v, in_layer[static_cast<std::size_t>(t - 1)])), step2)) {
        remove_vertex(t, v);
        changed = true;
      }
    if (alive_count == 0) return {std::nullopt, "step2"};
    std::map<Vertex, std::size_t> ending;
    for (std::size_t k = 0; k < paths.size(); ++k)
      if (alive[k]) ++ending[paths[k].back()];
    for (Vertex v : std::vector<Vertex>(layers[static_cast<std::size_t>(t)]))
      if (below(Rational(ending[v]), step3)) {
        remove_vertex(t, v);
        changed = true;
      }
    if (alive_count == 0) return {std::nullopt, "step3"};
  }

  ExpansionCertificate cert;
  cert.x = x;
  cert.t = t;
  cert.layers = layers;
  cert.eps_used = eps_t;
  cert.forbidden.assign(forbidden.begin(), forbidden.end());
  for (std::size_t k = 0; k < paths.size(); ++k)
    if (alive[k]) {
      cert.by_endpoint[paths[k].back()].push_back(cert.paths.size());
      cert.paths.push_back(std::move(paths[k]));
    }

  ExpansionConditions& c = cert.conditions;
  c.top_sizes = cert.layers[1].size() <= static_cast<std::size_t>(sp.min_degree) &&
                compare(Rational(cert.layers.back().size()), top_layer_cap(sp, t)) <= 0;
  c.pair_counts = pair_counts_hold(cert.paths, t, sp);
  c.branching_factor = branching_factor(cert.paths, t);
  c.branching = Rational(c.branching_factor) <= eps_t * degree;
  c.forward_degree = true;
  for (int i = 0; i < t; ++i)
    for (Vertex v : cert.layers[static_cast<std::size_t>(i)])
      c.forward_degree = c.forward_degree && Rational(count_in(gprime, v, in_layer[static_cast<std::size_t>(i + 1)])) >= step1;
  c.back_degree = true;
  c.endpoint_paths = true;
  for (Vertex v : cert.layers.back()) {
    c.back_degree = c.back_degree && at_least(Rational(count_in(gprime, v, in_layer[static_cast<std::size_t>(t - 1)])), step2);
    c.endpoint_paths = c.endpoint_paths && at_least(Rational(cert.paths_to(v).size()), step3);
  }
  c.size_bound = Rational(cert.paths.size()) >= pow_int(eps_t * degree / 4, t) / 4;
  return {std::move(cert), {}};
}

ExpansionReport verify_expansion(const Graph& gprime, const ExpansionCertificate& cert, const ScaleParams& sp) {
  ExpansionReport r;
  const int t = cert.t;
  const int b = sp.b;
  const int n = gprime.order();
  const auto layers_ok = static_cast<int>(cert.layers.size()) == t + 1;
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<Bitmap> in_layer;
  for (const auto& layer : cert.layers) in_layer.push_back(bitmap_of(n, layer));

  bool well_formed = layers_ok && cert.layers[0] == std::vector<Vertex>{cert.x};
  for (const Path& p : cert.paths) {
    if (!well_formed) break;
    if (static_cast<int>(p.size()) != t + 1 || p[0] != cert.x) {
      well_formed = false;
      break;
    }
    std::vector<Vertex> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    well_formed = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    for (int i = 1; i <= t && well_formed; ++i)
      well_formed = in_layer[static_cast<std::size_t>(i)][static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] &&
                    gprime.adjacent(p[static_cast<std::size_t>(i - 1)], p[static_cast<std::size_t>(i)]);
  }
  r.a = well_formed ? 1 : 0;
  if (!layers_ok) return r;

  const auto& top = cert.layers.back();
  const auto& below_top = cert.layers[static_cast<std::size_t>(t - 1)];
  r.b = static_cast<double>(std::min(top.size(), below_top.size())) /
        (sp.ell_pow(Rational(b - t + 1, b - 1)) * sp.m_pow(Rational(t - 1, b))).to_double();
  r.c = static_cast<double>(cert.paths.size()) / (sp.ell_pow(Rational(t)) * sp.m_pow(Rational(t, b))).to_double();

  double d = inf;
  for (int i = 1; i <= t; ++i)
    for (Vertex z : cert.layers[static_cast<std::size_t>(i - 1)])
      d = std::min(d, static_cast<double>(count_in(gprime, z, in_layer[static_cast<std::size_t>(i)])) / static_cast<double>(sp.min_degree));
  const double back_scale = sp.ell_pow(Rational(b, b - 1)).to_double();
  for (Vertex z : top)
    d = std::min(d, static_cast<double>(count_in(gprime, z, in_layer[static_cast<std::size_t>(t - 1)])) / back_scale);
  r.d = d == inf ? 0 : d;

  const double endpoint_scale = sp.ell_pow(Rational((t - 1) * b, b - 1)).to_double();
  double e = inf;
  for (Vertex y : top) e = std::min(e, static_cast<double>(cert.paths_to(y).size()) / endpoint_scale);
  r.e = e == inf ? 0 : e;

  double f = inf;
  for (const auto& [y, indices] : cert.by_endpoint) {
    std::map<std::vector<Vertex>, std::size_t> containing;
    for (std::size_t k : indices) {
      std::vector<Vertex> interior(cert.paths[k].begin() + 1, cert.paths[k].end() - 1);
      std::sort(interior.begin(), interior.end());
      const auto size = interior.size();
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << size); ++mask) {
        std::vector<Vertex> s;
        for (std::size_t q = 0; q < size; ++q)
          if ((mask >> q) & 1U) s.push_back(interior[q]);
        ++containing[s];
      }
    }
    for (const auto& [s, count] : containing) {
      const double scale = sp.ell_pow(Rational((t - 1 - static_cast<int>(s.size())) * b, b - 1)).to_double();
      f = std::min(f, scale / static_cast<double>(count));
    }
  }
  r.f = f == inf ? 1 : f;

  bool avoids = true;
  for (const Path& p : cert.paths)
    for (const ForbiddenShape& s : cert.forbidden) avoids = avoids && !contains_shape(p, s);
  r.g = avoids ? 1 : 0;

  r.h = static_cast<double>(cert.x_set.size()) / (sp.ell_pow(Rational(b - t, b)) * sp.m_pow(Rational(t, b))).to_double();
  r.x_over_m = static_cast<double>(cert.x_set.size()) / static_cast<double>(sp.m);
  r.min = std::min({r.a, r.b, r.c, r.d, r.e, r.f, r.g, r.h});
  return r;
}

}  // namespace thetasat
