#include "thetasat/theta.hpp"

#include "thetasat/errors.hpp"

#include <algorithm>

namespace thetasat {

ThetaPattern::ThetaPattern(int a, int b) : a_(a), b_(b) {
  if (a < 2 || b < 2) throw DomainError("theta pattern needs a >= 2 and b >= 2");
  graph_ = Graph(order());
  for (int j = 1; j <= a; ++j)
    for (int i = 0; i < b; ++i) graph_.add_edge(on_path(j, i), on_path(j, i + 1));
}

int ThetaPattern::level(PatternVertex w) const {
  if (w == hub_u) return 0;
  if (w == hub_v) return b_;
  return (w - 2) / a_ + 1;
}

int ThetaPattern::path_of(PatternVertex w) const {
  if (is_hub(w)) return 0;
  return (w - 2) % a_ + 1;
}

PatternVertex ThetaPattern::on_path(int path, int lvl) const {
  if (lvl == 0) return hub_u;
  if (lvl == b_) return hub_v;
  return interior(lvl, path);
}

std::string ThetaPattern::label(PatternVertex w) const {
  if (w == hub_u) return "u";
  if (w == hub_v) return "v";
  return "w" + std::to_string(level(w)) + "_" + std::to_string(path_of(w));
}

std::optional<PatternVertex> ThetaPattern::parse_label(const std::string& text) const {
  if (text == "u") return hub_u;
  if (text == "v") return hub_v;
  if (text.size() < 4 || text[0] != 'w') return std::nullopt;
  const auto bar = text.find('_');
  if (bar == std::string::npos) return std::nullopt;
  try {
    const int i = std::stoi(text.substr(1, bar - 1));
    const int j = std::stoi(text.substr(bar + 1));
    if (i < 1 || i >= b_ || j < 1 || j > a_) return std::nullopt;
    return interior(i, j);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Assignment::Assignment(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

std::vector<PatternVertex> Assignment::pattern_side() const {
  std::vector<PatternVertex> out;
  for (const Pair& p : pairs_) out.push_back(p.w);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Vertex> Assignment::host_side() const {
  std::vector<Vertex> out;
  for (const Pair& p : pairs_) out.push_back(p.z);
  std::sort(out.begin(), out.end());
  return out;
}

bool Assignment::contains(const Assignment& other) const {
  return std::includes(pairs_.begin(), pairs_.end(), other.pairs_.begin(), other.pairs_.end());
}

Assignment Assignment::unite(const Assignment& other) const {
  std::vector<Pair> all = pairs_;
  all.insert(all.end(), other.pairs_.begin(), other.pairs_.end());
  return Assignment(std::move(all));
}

void Assignment::insert(Pair p) {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
  if (it == pairs_.end() || *it != p) pairs_.insert(it, p);
}

ValidityReport validate_assignment(const ThetaPattern& p, const Graph& g, const Assignment& chi) {
  for (const Pair& q : chi.pairs())
    if (q.w < 0 || q.w >= p.order() || !g.contains(q.z)) throw DomainError("assignment vertex out of range");
  ValidityReport report;
  const auto pairs = chi.pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      if (pairs[i].w == pairs[j].w || pairs[i].z == pairs[j].z) {
        report.valid = false;
        report.violated_condition = 1;
        report.witness = {pairs[i], pairs[j]};
        return report;
      }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      if (p.adjacent(pairs[i].w, pairs[j].w) && !g.adjacent(pairs[i].z, pairs[j].z)) {
        report.valid = false;
        report.violated_condition = 2;
        report.witness = {pairs[i], pairs[j]};
        return report;
      }
  return report;
}

Projection project(const ThetaPattern& p, const Graph& g, const Assignment& chi) {
  if (!validate_assignment(p, g, chi).valid) throw InvalidAssignment("projection of an invalid assignment");
  Projection out;
  out.pattern_side = chi.pattern_side();
  out.host_side = chi.host_side();
  out.host_graph = Graph(g.order());
  const auto pairs = chi.pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      if (p.adjacent(pairs[i].w, pairs[j].w)) {
        out.host_graph.add_edge(pairs[i].z, pairs[j].z);
        out.edges.emplace_back(pairs[i].z, pairs[j].z);
      }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

Assignment to_assignment(const Embedding& host_of) {
  std::vector<Pair> pairs;
  for (std::size_t w = 0; w < host_of.size(); ++w)
    if (host_of[w] >= 0) pairs.push_back({static_cast<PatternVertex>(w), host_of[w]});
  return Assignment(std::move(pairs));
}

std::vector<Edge> image_edges(const ThetaPattern& p, const Embedding& host_of) {
  std::vector<Edge> out;
  for (const Edge& e : p.graph().edges()) {
    const Vertex x = host_of[static_cast<std::size_t>(e.u)];
    const Vertex y = host_of[static_cast<std::size_t>(e.v)];
    if (x >= 0 && y >= 0) out.emplace_back(x, y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace thetasat
