#include "thetasat/hypergraph.hpp"

#include "thetasat/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <set>

namespace thetasat {

Threshold threshold_of(CodegreeTable& table, CodegreeFamily family, int s, int t) {
  return [&table, family, s, t](std::uint64_t mask) { return table.value(family, s, t, mask); };
}

GHypergraph::GHypergraph(const ThetaPattern& pattern, std::shared_ptr<const Graph> host, int cap)
    : pattern_(pattern), host_(std::move(host)), cap_(cap) {
  if (pattern_.order() > 64) throw DomainError("hypergraphs need at most 64 pattern vertices");
  if (cap_ < 1) throw DomainError("index cap must be positive");
  cap_ = std::min(cap_, pattern_.order());
  const std::uint64_t full = pattern_.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << pattern_.order()) - 1;
  if (pattern_.order() <= 24) {
    for (std::uint64_t m = 1; m <= full; ++m)
      if (std::popcount(m) <= cap_) small_masks_.push_back(m);
  } else {
    // Grow masks by size to avoid a 2^order sweep.
    std::vector<std::uint64_t> layer{0};
    for (int size = 1; size <= cap_; ++size) {
      std::set<std::uint64_t> next;
      for (std::uint64_t m : layer)
        for (int w = 0; w < pattern_.order(); ++w)
          if (!((m >> w) & 1U)) next.insert(m | (std::uint64_t{1} << w));
      layer.assign(next.begin(), next.end());
      small_masks_.insert(small_masks_.end(), layer.begin(), layer.end());
    }
  }
}

std::string GHypergraph::key(std::uint64_t mask, const Embedding& host_of) const {
  std::string k(sizeof(mask), '\0');
  std::memcpy(k.data(), &mask, sizeof(mask));
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    const auto w = static_cast<std::size_t>(std::countr_zero(m));
    const Vertex z = host_of[w];
    k.append(reinterpret_cast<const char*>(&z), sizeof(z));
  }
  return k;
}

namespace {

void require_full_valid(const ThetaPattern& p, const Graph& g, const Embedding& h) {
  if (static_cast<int>(h.size()) != p.order()) throw InvalidAssignment("hyperedge is not full-size");
  std::vector<Vertex> hosts(h.begin(), h.end());
  std::sort(hosts.begin(), hosts.end());
  if (hosts.front() < 0 || hosts.back() >= g.order()) throw InvalidAssignment("hyperedge host out of range");
  if (std::adjacent_find(hosts.begin(), hosts.end()) != hosts.end()) throw InvalidAssignment("hyperedge repeats a host vertex");
  for (const Edge& e : p.graph().edges())
    if (!g.adjacent(h[static_cast<std::size_t>(e.u)], h[static_cast<std::size_t>(e.v)]))
      throw InvalidAssignment("hyperedge maps a pattern edge onto a non-edge");
}

}  // namespace

bool GHypergraph::insert(const Embedding& h) {
  require_full_valid(pattern_, *host_, h);
  const std::uint64_t full = pattern_.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << pattern_.order()) - 1;
  auto [it, fresh] = full_.emplace(key(full, h), edges_.size());
  if (!fresh) return false;
  edges_.push_back(h);
  for (std::uint64_t m : small_masks_) ++index_[key(m, h)];
  return true;
}

bool GHypergraph::contains(const Embedding& h) const {
  if (static_cast<int>(h.size()) != pattern_.order()) return false;
  const std::uint64_t full = pattern_.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << pattern_.order()) - 1;
  return full_.contains(key(full, h));
}

std::uint64_t GHypergraph::degree(std::uint64_t mask, const Embedding& host_of) const {
  if (mask == 0) return edges_.size();
  if (std::popcount(mask) <= cap_) {
    auto it = index_.find(key(mask, host_of));
    return it == index_.end() ? 0 : it->second;
  }
  std::uint64_t count = 0;
  for (const Embedding& e : edges_) {
    bool inside = true;
    for (std::uint64_t m = mask; m != 0 && inside; m &= m - 1) {
      const auto w = static_cast<std::size_t>(std::countr_zero(m));
      inside = e[w] == host_of[w];
    }
    if (inside) ++count;
  }
  return count;
}

std::uint64_t GHypergraph::degree(const Assignment& chi) const {
  if (!validate_assignment(pattern_, *host_, chi).valid) throw InvalidAssignment("degree of an invalid assignment");
  Embedding host_of(static_cast<std::size_t>(pattern_.order()), -1);
  std::uint64_t mask = 0;
  for (const Pair& p : chi.pairs()) {
    host_of[static_cast<std::size_t>(p.w)] = p.z;
    mask |= std::uint64_t{1} << p.w;
  }
  return degree(mask, host_of);
}

void GHypergraph::for_each_indexed(
    const std::function<void(std::uint64_t, const Embedding&, std::uint64_t)>& visit) const {
  Embedding host_of(static_cast<std::size_t>(pattern_.order()), -1);
  for (const auto& [k, count] : index_) {
    std::uint64_t mask = 0;
    std::memcpy(&mask, k.data(), sizeof(mask));
    std::size_t offset = sizeof(mask);
    std::fill(host_of.begin(), host_of.end(), -1);
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      Vertex z = 0;
      std::memcpy(&z, k.data() + offset, sizeof(z));
      offset += sizeof(z);
      host_of[static_cast<std::size_t>(std::countr_zero(m))] = z;
    }
    visit(mask, host_of, count);
  }
}

Embedding embedding_of(const ThetaPattern& pattern, const Assignment& full) {
  Embedding host_of(static_cast<std::size_t>(pattern.order()), -1);
  for (const Pair& p : full.pairs()) {
    if (p.w < 0 || p.w >= pattern.order()) throw InvalidAssignment("pattern vertex out of range");
    if (host_of[static_cast<std::size_t>(p.w)] != -1) throw InvalidAssignment("pattern vertex assigned twice");
    host_of[static_cast<std::size_t>(p.w)] = p.z;
  }
  return host_of;
}

namespace {

Assignment restricted(std::uint64_t mask, const Embedding& host_of) {
  std::vector<Pair> pairs;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    const auto w = std::countr_zero(m);
    pairs.push_back({w, host_of[static_cast<std::size_t>(w)]});
  }
  return Assignment(std::move(pairs));
}

void record(GoodnessReport& report, std::uint64_t mask, const Embedding& host_of, std::uint64_t count,
            const ExtendedCount& limit) {
  ++report.checked;
  if (limit.is_unbounded() || BigInt(count) <= limit.value()) return;
  report.good = false;
  ++report.violation_count;
  if (report.violations.size() < 32) report.violations.push_back({restricted(mask, host_of), count, limit});
}

}  // namespace

GoodnessReport is_good(const GHypergraph& h, const Threshold& D, int cap) {
  if (cap > h.pattern().order()) throw DomainError("goodness cap exceeds the pattern order");
  GoodnessReport report;
  h.for_each_indexed([&](std::uint64_t mask, const Embedding& host_of, std::uint64_t count) {
    if (std::popcount(mask) <= cap) record(report, mask, host_of, count, D(mask));
  });
  if (cap > h.cap()) {
    std::set<std::pair<std::uint64_t, std::vector<Vertex>>> seen;
    const int order = h.pattern().order();
    for (const Embedding& e : h.hyperedges()) {
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << order); ++mask) {
        const int size = std::popcount(mask);
        if (size <= h.cap() || size > cap) continue;
        std::vector<Vertex> hosts;
        for (std::uint64_t m = mask; m != 0; m &= m - 1) hosts.push_back(e[static_cast<std::size_t>(std::countr_zero(m))]);
        if (!seen.emplace(mask, hosts).second) continue;
        record(report, mask, e, h.degree(mask, e), D(mask));
      }
    }
  }
  return report;
}

GoodnessReport is_good(const GHypergraph& h, const CodegreeParams& params, int cap) {
  CodegreeTable table(h.pattern(), params);
  return is_good(h, threshold_of(table, params.family, params.s, params.t), cap);
}

std::vector<Assignment> link_set(const GHypergraph& h, const Threshold& D, const Assignment& chi,
                                 std::span<const PatternVertex> nu) {
  const std::uint64_t chi_mask = mask_of(chi.pattern_side());
  const std::uint64_t nu_mask = mask_of(nu);
  if ((chi_mask & nu_mask) != 0) throw DomainError("link set needs nu disjoint from the pattern side of chi");
  if (!validate_assignment(h.pattern(), h.host(), chi).valid) throw InvalidAssignment("link set of an invalid assignment");
  const ExtendedCount limit = D(chi_mask | nu_mask);
  std::vector<Assignment> out;
  if (limit.is_unbounded()) return out;
  std::set<std::vector<Vertex>> seen;
  for (const Embedding& e : h.hyperedges()) {
    bool inside = true;
    for (const Pair& p : chi.pairs()) inside = inside && e[static_cast<std::size_t>(p.w)] == p.z;
    if (!inside) continue;
    std::vector<Vertex> gamma_hosts;
    for (std::uint64_t m = nu_mask; m != 0; m &= m - 1) gamma_hosts.push_back(e[static_cast<std::size_t>(std::countr_zero(m))]);
    if (!seen.insert(gamma_hosts).second) continue;
    if (limit.reached_by(BigInt(h.degree(chi_mask | nu_mask, e)))) out.push_back(restricted(nu_mask, e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void write_hyperedges_jsonl(std::ostream& os, const GHypergraph& h) {
  for (const Embedding& e : h.hyperedges()) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t w = 0; w < e.size(); ++w)
      row.push_back(nlohmann::json::array({h.pattern().label(static_cast<PatternVertex>(w)), e[w]}));
    os << row.dump() << '\n';
  }
}

std::vector<Embedding> read_hyperedges_jsonl(std::istream& is, const ThetaPattern& pattern) {
  std::vector<Embedding> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto row = nlohmann::json::parse(line);
    std::vector<Pair> pairs;
    for (const auto& item : row) {
      const auto w = pattern.parse_label(item.at(0).get<std::string>());
      if (!w) throw InvalidAssignment("unknown pattern label in hyperedge file");
      pairs.push_back({*w, item.at(1).get<Vertex>()});
    }
    out.push_back(embedding_of(pattern, Assignment(std::move(pairs))));
  }
  return out;
}

}  // namespace thetasat
