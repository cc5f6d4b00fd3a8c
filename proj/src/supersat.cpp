#include "thetasat/supersat.hpp"

#include "thetasat/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <set>

namespace thetasat {

CollectionFamily::CollectionFamily(const ThetaPattern& pattern, std::shared_ptr<const Graph> host, int cap)
    : all_(pattern, host, cap) {
  for (int t = 2; t <= pattern.length(); ++t) by_t_.emplace(t, GHypergraph(pattern, host, cap));
}

bool CollectionFamily::insert(int s, int t, const Embedding& h) {
  if (t < 2 || t > pattern().length()) throw DomainError("t outside [2, b]");
  if (s < 0) throw DomainError("negative s");
  if (all_.contains(h)) return false;
  all_.insert(h);
  by_t_.at(t).insert(h);
  auto it = by_key_.find({s, t});
  if (it == by_key_.end()) it = by_key_.emplace(std::pair{s, t}, GHypergraph(pattern(), all_.host_ptr(), all_.cap())).first;
  it->second.insert(h);
  return true;
}

const GHypergraph& CollectionFamily::layer(int t) const { return by_t_.at(t); }

const GHypergraph* CollectionFamily::find(int s, int t) const {
  auto it = by_key_.find({s, t});
  return it == by_key_.end() ? nullptr : &it->second;
}

std::vector<std::pair<int, int>> CollectionFamily::keys() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [key, h] : by_key_) out.push_back(key);
  return out;
}

CompatibilityChecker::CompatibilityChecker(const CollectionFamily& family, CodegreeTable& table, int s, int t)
    : family_(family), table_(table), s_(s), t_(t) {}

namespace {

Assignment restrict_to(std::uint64_t mask, const Embedding& host_of) {
  std::vector<Pair> pairs;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    const int w = std::countr_zero(m);
    pairs.push_back({w, host_of[static_cast<std::size_t>(w)]});
  }
  return Assignment(std::move(pairs));
}

// deg_H of every subset of `mask` meeting `fresh`, compared against a threshold family.
std::optional<CompatibilityWitness> scan(const GHypergraph& h, const Embedding& partial, std::uint64_t mask,
                                         std::uint64_t fresh, const std::function<ExtendedCount(std::uint64_t)>& limit,
                                         const char* name) {
  if (h.size() == 0) return std::nullopt;
  std::map<std::uint64_t, std::uint64_t> agreement;
  for (const Embedding& e : h.hyperedges()) {
    std::uint64_t a = 0;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      const auto w = static_cast<std::size_t>(std::countr_zero(m));
      if (e[w] == partial[w]) a |= std::uint64_t{1} << w;
    }
    if ((a & fresh) != 0) ++agreement[a];
  }
  if (agreement.empty()) return std::nullopt;
  for (std::uint64_t sub = mask; sub != 0; sub = (sub - 1) & mask) {
    if ((sub & fresh) == 0) continue;
    std::uint64_t degree = 0;
    for (const auto& [a, count] : agreement)
      if ((a & sub) == sub) degree += count;
    if (degree == 0) continue;
    const ExtendedCount bound = limit(sub);
    if (bound.reached_by(BigInt(degree))) return CompatibilityWitness{restrict_to(sub, partial), name, degree, bound};
  }
  return std::nullopt;
}

}  // namespace

CompatibilityResult CompatibilityChecker::check(const Embedding& partial, std::uint64_t mask, std::uint64_t fresh) const {
  const int b = family_.pattern().length();
  auto forest = [&](std::uint64_t m) { return table_.value(CodegreeFamily::forest, 0, t_, m); };
  if (auto w = scan(family_.all(), partial, mask, fresh, forest, "forest")) return {false, std::move(w)};
  if (t_ < b) {
    auto top = [&](std::uint64_t m) { return table_.value(CodegreeFamily::top_layer, 0, t_, m); };
    if (auto w = scan(family_.layer(t_), partial, mask, fresh, top, "t")) return {false, std::move(w)};
  }
  if (const GHypergraph* h = family_.find(s_, t_)) {
    const CodegreeFamily fam = t_ == b ? CodegreeFamily::hub_scaled : CodegreeFamily::layered;
    auto st = [&](std::uint64_t m) { return table_.value(fam, s_, t_, m); };
    if (auto w = scan(*h, partial, mask, fresh, st, "s,t")) return {false, std::move(w)};
  }
  return {};
}

CompatibilityResult compatible(const CollectionFamily& family, CodegreeTable& table, const Assignment& chi, int s, int t) {
  const ThetaPattern& pattern = family.pattern();
  if (!validate_assignment(pattern, family.all().host(), chi).valid) return {false, std::nullopt};
  Embedding partial(static_cast<std::size_t>(pattern.order()), -1);
  std::uint64_t mask = 0;
  for (const Pair& p : chi.pairs()) {
    partial[static_cast<std::size_t>(p.w)] = p.z;
    mask |= std::uint64_t{1} << p.w;
  }
  return CompatibilityChecker(family, table, s, t).check(partial, mask, mask);
}

std::vector<Assignment> saturated_forest_sets(const GHypergraph& all, CodegreeTable& table, int t, int cap) {
  std::vector<Assignment> out;
  all.for_each_indexed([&](std::uint64_t mask, const Embedding& host_of, std::uint64_t count) {
    if (std::popcount(mask) > cap) return;
    if (table.value(CodegreeFamily::forest, 0, t, mask).reached_by(BigInt(count))) out.push_back(restrict_to(mask, host_of));
  });
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Backtracking state shared by the three cases.
struct Builder {
  const CollectionFamily& family;
  const CompatibilityChecker checker;
  const ThetaPattern& pattern;
  std::size_t budget;
  std::size_t nodes = 0;
  Embedding partial;
  std::uint64_t mask = 0;
  std::vector<char> used;

  Builder(const CollectionFamily& f, CodegreeTable& table, int s, int t, std::size_t node_budget)
      : family(f),
        checker(f, table, s, t),
        pattern(f.pattern()),
        budget(node_budget),
        partial(static_cast<std::size_t>(pattern.order()), -1),
        used(static_cast<std::size_t>(f.all().host().order()), 0) {}

  bool exhausted() const { return nodes >= budget; }
  bool is_used(Vertex z) const { return used[static_cast<std::size_t>(z)] != 0; }

  // Assigns the pairs and keeps them when the result stays compatible.
  bool push(std::span<const Pair> pairs) {
    ++nodes;
    std::uint64_t fresh = 0;
    for (const Pair& p : pairs) {
      partial[static_cast<std::size_t>(p.w)] = p.z;
      used[static_cast<std::size_t>(p.z)] = 1;
      fresh |= std::uint64_t{1} << p.w;
    }
    mask |= fresh;
    if (checker.check(partial, mask, fresh).compatible) return true;
    pop(pairs);
    return false;
  }

  void pop(std::span<const Pair> pairs) {
    for (const Pair& p : pairs) {
      partial[static_cast<std::size_t>(p.w)] = -1;
      used[static_cast<std::size_t>(p.z)] = 0;
      mask &= ~(std::uint64_t{1} << p.w);
    }
  }

  bool complete_and_new() const { return std::popcount(mask) == pattern.order() && !family.all().contains(partial); }
};

std::uint64_t joint_degree(const GHypergraph& h, Vertex x, Vertex y) {
  Embedding e(static_cast<std::size_t>(h.pattern().order()), -1);
  e[ThetaPattern::hub_u] = x;
  e[ThetaPattern::hub_v] = y;
  return h.degree((std::uint64_t{1} << ThetaPattern::hub_u) | (std::uint64_t{1} << ThetaPattern::hub_v), e);
}

Vertex argmin_partner(const GHypergraph& h, Vertex x, std::span<const Vertex> candidates) {
  Vertex best = -1;
  std::uint64_t best_degree = 0;
  for (Vertex y : candidates) {
    if (y == x) continue;
    const std::uint64_t d = joint_degree(h, x, y);
    if (best < 0 || d < best_degree) {
      best = y;
      best_degree = d;
    }
  }
  return best;
}

}  // namespace

CaseOutcome extend_case_b(const CollectionFamily& family, CodegreeTable& table, const ExpansionCertificate& cert,
                          const ScaleParams& sp, std::size_t node_budget) {
  const ThetaPattern& pattern = family.pattern();
  const int a = pattern.paths();
  const int b = pattern.length();
  if (cert.t != b) throw DomainError("the t = b case needs a certificate with t = b");
  CaseOutcome out;
  const auto& top = cert.layers.back();
  std::vector<std::uint64_t> f;
  for (Vertex y : top) f.push_back(cert.paths_to(y).size());
  if (top.empty() || std::all_of(f.begin(), f.end(), [](std::uint64_t v) { return v == 0; })) {
    out.note = "empty core";
    return out;
  }
  std::vector<Vertex> core;
  for (std::size_t i : weighted_core(f, b)) core.push_back(top[i]);
  const int r_prime = scale_exponent(static_cast<long>(core.size()), sp.m);
  out.s = 2 * sp.r + r_prime;
  const int max_s = table.base().max_s();
  if (out.s > max_s) {
    out.s = max_s;
    out.s_clamped = true;
  }
  out.y = argmin_partner(family.all(), cert.x, core);
  if (out.y < 0) {
    out.note = "empty core";
    return out;
  }

  Builder build(family, table, out.s, b, node_budget);
  const Pair hubs[2] = {{ThetaPattern::hub_u, cert.x}, {ThetaPattern::hub_v, out.y}};
  if (!build.push(hubs)) {
    out.note = "hubs incompatible";
    out.nodes = build.nodes;
    return out;
  }
  const auto candidates = cert.paths_to(out.y);
  std::function<bool(int)> path_step = [&](int j) -> bool {
    if (j > a) return build.complete_and_new();
    for (std::size_t k : candidates) {
      if (build.exhausted()) return false;
      const Path& p = cert.paths[k];
      bool fresh = true;
      for (int i = 1; i < b && fresh; ++i) fresh = !build.is_used(p[static_cast<std::size_t>(i)]);
      if (!fresh) continue;
      std::vector<Pair> pairs;
      for (int i = 1; i < b; ++i) pairs.push_back({pattern.interior(i, j), p[static_cast<std::size_t>(i)]});
      if (!build.push(pairs)) continue;
      if (path_step(j + 1)) return true;
      build.pop(pairs);
    }
    return false;
  };
  if (path_step(1)) out.h = build.partial;
  else out.note = build.exhausted() ? "budget" : "exhausted";
  out.nodes = build.nodes;
  return out;
}

CaseOutcome extend_case_lt_b(const CollectionFamily& family, CodegreeTable& table, const ExpansionCertificate& cert,
                             const ScaleParams& sp, std::size_t node_budget) {
  const ThetaPattern& pattern = family.pattern();
  const int a = pattern.paths();
  const int b = pattern.length();
  const int t = cert.t;
  if (t >= b) throw DomainError("the t < b case needs a certificate with t < b");
  CaseOutcome out;
  out.s = sp.r;
  const auto& top = cert.layers[static_cast<std::size_t>(t)];
  const auto& next_to_top = cert.layers[static_cast<std::size_t>(t - 1)];
  const bool odd = (b - t) % 2 == 1;
  out.y = argmin_partner(family.all(), cert.x, odd ? next_to_top : top);
  if (out.y < 0) {
    out.note = "no hub candidate";
    return out;
  }
  const Graph& host = family.all().host();
  std::vector<char> in_top(static_cast<std::size_t>(host.order()), 0);
  std::vector<char> in_next(static_cast<std::size_t>(host.order()), 0);
  for (Vertex z : top) in_top[static_cast<std::size_t>(z)] = 1;
  for (Vertex z : next_to_top) in_next[static_cast<std::size_t>(z)] = 1;

  Builder build(family, table, out.s, t, node_budget);
  const Pair hubs[2] = {{ThetaPattern::hub_u, cert.x}, {ThetaPattern::hub_v, out.y}};
  if (!build.push(hubs)) {
    out.note = "hubs incompatible";
    out.nodes = build.nodes;
    return out;
  }
  // Steps (j, i) for i = b-1 down to t, then one path step per j.
  std::vector<std::pair<int, int>> picks;
  for (int j = 1; j <= a; ++j)
    for (int i = b - 1; i >= t; --i) picks.emplace_back(j, i);

  std::function<bool(std::size_t)> path_step = [&](std::size_t j) -> bool {
    if (static_cast<int>(j) > a) return build.complete_and_new();
    const Vertex end = build.partial[static_cast<std::size_t>(pattern.on_path(static_cast<int>(j), t))];
    for (std::size_t k : cert.paths_to(end)) {
      if (build.exhausted()) return false;
      const Path& p = cert.paths[k];
      bool fresh = true;
      for (int i = 1; i < t && fresh; ++i) fresh = !build.is_used(p[static_cast<std::size_t>(i)]);
      if (!fresh) continue;
      std::vector<Pair> pairs;
      for (int i = 1; i < t; ++i) pairs.push_back({pattern.interior(i, static_cast<int>(j)), p[static_cast<std::size_t>(i)]});
      if (!build.push(pairs)) continue;
      if (path_step(j + 1)) return true;
      build.pop(pairs);
    }
    return false;
  };
  std::function<bool(std::size_t)> pick_step = [&](std::size_t k) -> bool {
    if (k == picks.size()) return path_step(1);
    const auto [j, i] = picks[k];
    const Vertex anchor = build.partial[static_cast<std::size_t>(pattern.on_path(j, i + 1))];
    const auto& pool = (i - t) % 2 == 1 ? in_next : in_top;
    for (Vertex z : host.neighbors(anchor)) {
      if (build.exhausted()) return false;
      if (!pool[static_cast<std::size_t>(z)] || build.is_used(z)) continue;
      if (i == t && cert.paths_to(z).empty()) continue;
      const Pair pair[1] = {{pattern.interior(i, j), z}};
      if (!build.push(pair)) continue;
      if (pick_step(k + 1)) return true;
      build.pop(pair);
    }
    return false;
  };
  if (pick_step(0)) out.h = build.partial;
  else out.note = build.exhausted() ? "budget" : "exhausted";
  out.nodes = build.nodes;
  return out;
}

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::target: return "target";
    case StopReason::budget: return "budget";
    case StopReason::failure: return "failure";
    case StopReason::pruned_out: return "pruned-out";
    case StopReason::exhausted: return "exhausted";
  }
  return "?";
}

bool SupersatResult::all_good() const {
  return std::all_of(goodness.begin(), goodness.end(), [](const FamilyGoodness& g) { return g.report.good; });
}

std::size_t SupersatResult::violation_count() const {
  std::size_t total = 0;
  for (const auto& g : goodness) total += g.report.violation_count;
  return total;
}

SupersatResult supersaturate(std::shared_ptr<const Graph> g, const SupersatConfig& config) {
  if (config.a < 3 || config.b < 3) throw DomainError("the builder needs a >= 3 and b >= 3");
  if (config.delta <= 0) throw DomainError("delta must be positive");
  if (!g || g->size() == 0) throw EmptyGraph();
  const ThetaPattern pattern(config.a, config.b);
  const long n = g->order();
  const int b = config.b;

  CodegreeParams base;
  base.a = config.a;
  base.b = b;
  base.n = n;
  base.delta = config.delta;
  base.k = CodegreeParams::density_scale(g->size(), n, b);
  CodegreeTable table(pattern, base);
  const EpsilonSchedule eps = epsilon_schedule(b, config.c);
  RefineOptions refine_options{config.fanout(), config.max_paths};

  SupersatResult result{CollectionFamily(pattern, g, config.cap), 0, GHypergraph(pattern, g, config.cap), StopReason::budget, {}, {}, {}, {}, {}};
  result.k = base.k;
  result.target = Surd(config.delta) * base.k.pow(Rational(config.a * b)) * Surd(Rational(n * n));
  CollectionFamily& family = result.family;

  std::optional<Graph> cached_graph;
  XSetResult cached_x;
  result.stop = StopReason::budget;
  for (std::size_t iter = 0;; ++iter) {
    if (at_least(Rational(family.all().size()), result.target)) {
      result.stop = StopReason::target;
      break;
    }
    if (iter >= config.max_iterations) {
      result.stop = StopReason::budget;
      break;
    }
    IterationRecord rec;
    rec.index = iter;
    CodegreeParams edge_params = base;
    const SaturationPrune pruned = remove_saturated_edges(*g, family.all(), edge_params);
    rec.removed_edges = pruned.removed.size();
    if (pruned.pruned.size() == 0) {
      result.stop = StopReason::pruned_out;
      result.detail = "every edge saturated";
      break;
    }
    const CoreResult core = min_degree_core(pruned.pruned, b);
    const Graph gprime = pruned.pruned.induced(core.kept);
    const ScaleParams sp = scale_parameters(gprime, n, b);
    rec.m = sp.m;
    rec.min_degree = sp.min_degree;
    rec.r = sp.r;
    if (sp.m < pattern.order()) {
      result.stop = StopReason::pruned_out;
      result.detail = "core smaller than the pattern";
      result.records.push_back(rec);
      break;
    }
    if (!cached_graph || !(*cached_graph == gprime)) {
      cached_x = x_set(gprime, sp, eps);
      cached_graph = gprime;
    }
    const XSetResult& xs = cached_x;
    rec.t = xs.t;
    rec.x_fallback = xs.fallback;
    rec.x_size = xs.x.size();
    if (xs.x.empty()) {
      result.stop = StopReason::failure;
      result.detail = "empty X";
      result.records.push_back(rec);
      break;
    }
    Vertex x = -1;
    std::uint64_t best = 0;
    for (Vertex z : xs.x) {
      Embedding e(static_cast<std::size_t>(pattern.order()), -1);
      e[ThetaPattern::hub_u] = z;
      const std::uint64_t d = family.all().degree(std::uint64_t{1} << ThetaPattern::hub_u, e);
      if (x < 0 || d < best) {
        x = z;
        best = d;
      }
    }
    rec.x = x;
    auto tuple = xs.tuples.find(x);
    if (tuple == xs.tuples.end()) {
      result.stop = StopReason::failure;
      result.detail = "no layer tuple for the chosen x";
      result.records.push_back(rec);
      break;
    }
    const auto forbidden = forbidden_shapes(pattern, *g, saturated_forest_sets(family.all(), table, xs.t, config.cap));
    RefineOutcome refined = refine_paths(gprime, tuple->second, sp, eps, forbidden, refine_options);
    if (!refined.certificate) {
      result.stop = StopReason::failure;
      result.detail = "path refinement emptied at " + refined.failure;
      result.records.push_back(rec);
      break;
    }
    ExpansionCertificate& cert = *refined.certificate;
    cert.x_set = xs.x;
    rec.paths = cert.paths.size();
    rec.conditions = cert.conditions;
    const CaseOutcome step = xs.t == b ? extend_case_b(family, table, cert, sp, config.node_budget)
                                       : extend_case_lt_b(family, table, cert, sp, config.node_budget);
    rec.s = step.s;
    rec.y = step.y;
    rec.nodes = step.nodes;
    rec.s_clamped = step.s_clamped;
    result.records.push_back(rec);
    if (!step.h) {
      result.stop = StopReason::exhausted;
      result.detail = step.note;
      break;
    }
    if (!family.insert(step.s, xs.t, *step.h)) throw std::logic_error("builder produced a duplicate hyperedge");
  }

  int best_t = 2;
  for (int t = 2; t <= b; ++t)
    if (family.layer(t).size() > family.layer(best_t).size()) best_t = t;
  result.chosen_t = best_t;
  result.hprime = family.layer(best_t);

  for (const auto& [s, t] : family.keys()) {
    const CodegreeFamily fam = t == b ? CodegreeFamily::hub_scaled : CodegreeFamily::layered;
    result.goodness.push_back({family_name(fam), s, t, is_good(*family.find(s, t), threshold_of(table, fam, s, t), config.cap)});
  }
  for (int t = 2; t < b; ++t)
    result.goodness.push_back(
        {family_name(CodegreeFamily::top_layer), 0, t, is_good(family.layer(t), threshold_of(table, CodegreeFamily::top_layer, 0, t), config.cap)});
  result.goodness.push_back(
      {family_name(CodegreeFamily::forest), 0, best_t, is_good(family.all(), threshold_of(table, CodegreeFamily::forest, 0, best_t), config.cap)});
  result.goodness.push_back(
      {family_name(CodegreeFamily::combined), 0, best_t, is_good(result.hprime, threshold_of(table, CodegreeFamily::combined, 0, best_t), config.cap)});
  return result;
}

std::size_t EdgeHypergraph::degree(const std::vector<Edge>& sigma) const {
  std::vector<Edge> key = sigma;
  std::sort(key.begin(), key.end());
  auto it = degree_index.find(key);
  if (it != degree_index.end()) return it->second;
  std::size_t count = 0;
  for (const auto& h : hyperedges) count += std::includes(h.begin(), h.end(), key.begin(), key.end());
  return count;
}

namespace {

// Every valid chi with chi_G = sigma_v and sigma inside E_chi, as pattern-label -> host maps.
std::vector<Embedding> matching_sets(const ThetaPattern& pattern, const Graph& g, const std::vector<Edge>& sigma) {
  std::vector<Vertex> hosts;
  for (const Edge& e : sigma) {
    hosts.push_back(e.u);
    hosts.push_back(e.v);
  }
  std::sort(hosts.begin(), hosts.end());
  hosts.erase(std::unique(hosts.begin(), hosts.end()), hosts.end());
  std::vector<Embedding> out;
  std::vector<PatternVertex> label(hosts.size(), -1);
  std::vector<char> taken(static_cast<std::size_t>(pattern.order()), 0);
  auto index_of = [&](Vertex z) {
    return static_cast<std::size_t>(std::lower_bound(hosts.begin(), hosts.end(), z) - hosts.begin());
  };
  std::function<void(std::size_t)> step = [&](std::size_t k) {
    if (k == hosts.size()) {
      for (const Edge& e : sigma)
        if (!pattern.adjacent(label[index_of(e.u)], label[index_of(e.v)])) return;
      Embedding chi(static_cast<std::size_t>(pattern.order()), -1);
      for (std::size_t q = 0; q < hosts.size(); ++q) chi[static_cast<std::size_t>(label[q])] = hosts[q];
      out.push_back(std::move(chi));
      return;
    }
    for (PatternVertex w = 0; w < pattern.order(); ++w) {
      if (taken[static_cast<std::size_t>(w)]) continue;
      bool ok = true;
      for (std::size_t q = 0; q < k && ok; ++q)
        if (pattern.adjacent(w, label[q]) && !g.adjacent(hosts[k], hosts[q])) ok = false;
      if (!ok) continue;
      taken[static_cast<std::size_t>(w)] = 1;
      label[k] = w;
      step(k + 1);
      taken[static_cast<std::size_t>(w)] = 0;
    }
  };
  step(0);
  return out;
}

}  // namespace

EdgeTranslation edge_hypergraph(const GHypergraph& hprime, CodegreeTable& table, int t, int cap) {
  const ThetaPattern& pattern = hprime.pattern();
  const Graph& host = hprime.host();
  EdgeTranslation out;
  out.hypergraph.host = hprime.host_ptr();
  std::set<std::vector<Edge>> unique;
  for (const Embedding& h : hprime.hyperedges()) {
    auto edges = image_edges(pattern, h);
    if (static_cast<int>(edges.size()) != pattern.size()) throw InvalidAssignment("hyperedge is not a full copy");
    unique.insert(std::move(edges));
  }
  out.hypergraph.hyperedges.assign(unique.begin(), unique.end());
  for (const auto& h : out.hypergraph.hyperedges) {
    const auto size = h.size();
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> grow = [&](std::size_t from) {
      if (!pick.empty()) {
        std::vector<Edge> sigma;
        for (std::size_t q : pick) sigma.push_back(h[q]);
        ++out.hypergraph.degree_index[sigma];
      }
      if (static_cast<int>(pick.size()) == cap) return;
      for (std::size_t q = from; q < size; ++q) {
        pick.push_back(q);
        grow(q + 1);
        pick.pop_back();
      }
    };
    grow(0);
  }

  EdgeTranslationReport& rep = out.report;
  rep.source_size = hprime.size();
  BigInt factorial = 1;
  for (int q = 2; q <= pattern.order(); ++q) factorial *= q;
  rep.loss_factor_holds = BigInt(out.hypergraph.hyperedges.size()) * factorial >= BigInt(hprime.size());

  const CodegreeParams& base = table.base();
  const int a = pattern.paths();
  const int b = pattern.length();
  const double v_pow = std::ldexp(1.0, pattern.order());
  const Surd top = base.k.pow(Rational(a * b)) * Surd(Rational(base.n * base.n));
  const Surd edge_scale = base.k * Surd::power(Rational(base.n), Rational(b + 1, b));
  const Surd option_a = base.k.pow(Rational(b, b - 1));
  const Surd option_b = base.k * Surd::power(Rational(base.n), Rational(b - 1, b * (a * b - 1)));
  const Surd step = std::min(option_a, option_b);
  const double limit_x = v_pow;
  for (const auto& [sigma, degree] : out.hypergraph.degree_index) {
    ++rep.checked_sets;
    const auto chis = matching_sets(pattern, host, sigma);
    rep.max_x_size = std::max(rep.max_x_size, chis.size());
    if (static_cast<double>(chis.size()) > limit_x) rep.x_size_holds = false;
    std::uint64_t counted = 0;
    ExtendedCount allowed(0L);
    for (const Embedding& chi : chis) {
      std::uint64_t mask = 0;
      for (std::size_t w = 0; w < chi.size(); ++w)
        if (chi[w] >= 0) mask |= std::uint64_t{1} << w;
      counted += hprime.degree(mask, chi);
      allowed = allowed + table.value(CodegreeFamily::combined, 0, t, mask);
    }
    bool failed = false;
    if (degree > counted) {
      rep.counting_holds = false;
      failed = true;
    }
    if (!allowed.is_unbounded() && BigInt(degree) > allowed.value()) {
      rep.threshold_holds = false;
      failed = true;
    }
    if (failed) ++rep.failures;
    const Surd closed = top / (edge_scale * step.pow(Rational(static_cast<long>(sigma.size()) - 1)));
    rep.min_constant = std::max(rep.min_constant, static_cast<double>(degree) / (v_pow * closed.to_double()));
  }
  return out;
}

}  // namespace thetasat
