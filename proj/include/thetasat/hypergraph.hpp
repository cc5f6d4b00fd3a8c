#pragma once

#include "thetasat/codegree.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace thetasat {

// Threshold as a function of the pattern-side subset mask.
using Threshold = std::function<ExtendedCount(std::uint64_t mask)>;
Threshold threshold_of(CodegreeTable& table, CodegreeFamily family, int s, int t);

// Hyperedges are full-size valid assignments, stored as host-vertex-per-label embeddings.
// Subsets of at most `cap` pairs are counted in an index; larger ones are counted by scanning.
class GHypergraph {
 public:
  GHypergraph(const ThetaPattern& pattern, std::shared_ptr<const Graph> host, int cap = 6);

  // Inserts a full-size valid hyperedge; false if it was already present.
  bool insert(const Embedding& h);
  bool contains(const Embedding& h) const;

  std::size_t size() const { return edges_.size(); }
  const std::vector<Embedding>& hyperedges() const { return edges_; }
  const ThetaPattern& pattern() const { return pattern_; }
  const Graph& host() const { return *host_; }
  std::shared_ptr<const Graph> host_ptr() const { return host_; }
  int cap() const { return cap_; }

  std::uint64_t degree(const Assignment& chi) const;  // throws InvalidAssignment for invalid chi
  // Degree of the sub-assignment of `host_of` selected by `mask` (no validity check).
  std::uint64_t degree(std::uint64_t mask, const Embedding& host_of) const;

  // Visits every indexed subset (nonempty, size <= cap) with its count.
  void for_each_indexed(const std::function<void(std::uint64_t mask, const Embedding& host_of, std::uint64_t count)>& visit) const;

 private:
  std::string key(std::uint64_t mask, const Embedding& host_of) const;

  ThetaPattern pattern_;
  std::shared_ptr<const Graph> host_;
  int cap_;
  std::vector<Embedding> edges_;
  std::unordered_map<std::string, std::uint64_t> index_;
  std::unordered_map<std::string, std::size_t> full_;  // full-size key -> position
  std::vector<std::uint64_t> small_masks_;             // nonempty masks with popcount <= cap
};

struct Violation {
  Assignment chi;
  std::uint64_t degree = 0;
  ExtendedCount threshold;
};

struct GoodnessReport {
  bool good = true;
  std::size_t checked = 0;
  std::vector<Violation> violations;  // at most the first 32
  std::size_t violation_count = 0;
};

GoodnessReport is_good(const GHypergraph& h, const Threshold& D, int cap);
GoodnessReport is_good(const GHypergraph& h, const CodegreeParams& params, int cap);

// All gamma with gamma_theta = nu such that chi + gamma is saturated (degree >= threshold).
std::vector<Assignment> link_set(const GHypergraph& h, const Threshold& D, const Assignment& chi,
                                 std::span<const PatternVertex> nu);

Embedding embedding_of(const ThetaPattern& pattern, const Assignment& full);

void write_hyperedges_jsonl(std::ostream& os, const GHypergraph& h);
std::vector<Embedding> read_hyperedges_jsonl(std::istream& is, const ThetaPattern& pattern);

}  // namespace thetasat
