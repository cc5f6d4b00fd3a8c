#pragma once

#include "thetasat/expansion.hpp"
#include "thetasat/hypergraph.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace thetasat {

// The collections H_{s,t}, their per-t unions H_t and the overall union H.
class CollectionFamily {
 public:
  CollectionFamily(const ThetaPattern& pattern, std::shared_ptr<const Graph> host, int cap = 6);

  // Adds h to H_{s,t}, H_t and H; false (and no change) when h is already in H.
  bool insert(int s, int t, const Embedding& h);

  const GHypergraph& all() const { return all_; }
  const GHypergraph& layer(int t) const;                  // H_t
  const GHypergraph* find(int s, int t) const;            // H_{s,t}, nullptr if never used
  std::vector<std::pair<int, int>> keys() const;           // used (s, t), sorted
  const ThetaPattern& pattern() const { return all_.pattern(); }

 private:
  std::map<std::pair<int, int>, GHypergraph> by_key_;
  std::map<int, GHypergraph> by_t_;
  GHypergraph all_;
};

struct CompatibilityWitness {
  Assignment subset;
  std::string family;  // "forest", "t" or "s,t"
  std::uint64_t degree = 0;
  ExtendedCount threshold;
};

struct CompatibilityResult {
  bool compatible = true;
  std::optional<CompatibilityWitness> witness;
};

// Checks subsets of a partial embedding against D_forest on H, D_t on H_t and D_{s,t} on H_{s,t}.
class CompatibilityChecker {
 public:
  CompatibilityChecker(const CollectionFamily& family, CodegreeTable& table, int s, int t);

  // Only subsets meeting `fresh` are checked; `mask` selects the assigned labels of `partial`.
  CompatibilityResult check(const Embedding& partial, std::uint64_t mask, std::uint64_t fresh) const;

 private:
  const CollectionFamily& family_;
  CodegreeTable& table_;
  int s_;
  int t_;
};

// Full check, including validity of chi.
CompatibilityResult compatible(const CollectionFamily& family, CodegreeTable& table, const Assignment& chi, int s, int t);

// Valid sets of at most `cap` pairs at or above their forest threshold in H.
std::vector<Assignment> saturated_forest_sets(const GHypergraph& all, CodegreeTable& table, int t, int cap);

struct SupersatConfig {
  int a = 3;
  int b = 3;
  Rational delta{3, 10};
  Rational c{1, 2};           // epsilon-schedule base
  int cap = 6;                // goodness and index subset cap
  std::size_t max_iterations = 100;
  std::size_t node_budget = 200000;  // per extension search
  std::size_t min_fanout = 0;        // 0: a + 2
  std::size_t max_paths = 200000;

  std::size_t fanout() const { return min_fanout == 0 ? static_cast<std::size_t>(a + 2) : min_fanout; }
};

struct CaseOutcome {
  std::optional<Embedding> h;
  int s = 0;
  Vertex y = -1;
  std::size_t nodes = 0;
  bool s_clamped = false;
  std::string note;  // why the search stopped without a hyperedge
};

// t = b: hubs x, y with y in the weighted core of the endpoint layer; paths of Q[x -> y].
CaseOutcome extend_case_b(const CollectionFamily& family, CodegreeTable& table, const ExpansionCertificate& cert,
                          const ScaleParams& sp, std::size_t node_budget);
// t < b: layers z_{b-1}..z_t picked inward by parity, then paths of Q ending at each z_t.
CaseOutcome extend_case_lt_b(const CollectionFamily& family, CodegreeTable& table, const ExpansionCertificate& cert,
                             const ScaleParams& sp, std::size_t node_budget);

enum class StopReason { target, budget, failure, pruned_out, exhausted };
const char* stop_reason_name(StopReason r);

struct IterationRecord {
  std::size_t index = 0;
  long m = 0;
  long min_degree = 0;
  int r = 0;
  std::size_t removed_edges = 0;
  int t = 0;
  int s = 0;
  bool x_fallback = false;
  std::size_t x_size = 0;
  Vertex x = -1;
  Vertex y = -1;
  std::size_t paths = 0;
  std::size_t nodes = 0;
  ExpansionConditions conditions;
  bool s_clamped = false;
};

struct FamilyGoodness {
  std::string family;
  int s = 0;
  int t = 0;
  GoodnessReport report;
};

struct SupersatResult {
  CollectionFamily family;
  int chosen_t = 0;
  GHypergraph hprime;  // H'_t for the chosen t
  StopReason stop = StopReason::budget;
  std::string detail;
  std::vector<IterationRecord> records;
  std::vector<FamilyGoodness> goodness;  // every H_{s,t}, every H_t, H, and H'_t against D'_t
  Surd k;
  Surd target;  // delta k^{ab} n^2

  bool all_good() const;
  std::size_t violation_count() const;
};

SupersatResult supersaturate(std::shared_ptr<const Graph> g, const SupersatConfig& config);

// Hyperedges of H'_t as edge sets, with the codegree translation check.
struct EdgeTranslationReport {
  std::size_t source_size = 0;
  std::size_t checked_sets = 0;
  bool loss_factor_holds = false;    // |edge hyperedges| >= |H'_t| / v!
  bool counting_holds = true;        // deg(sigma) <= sum over X of deg_{H'_t}(chi)
  bool threshold_holds = true;       // deg(sigma) <= sum over X of D'_t(chi_theta)
  bool x_size_holds = true;          // |X| <= 2^v; distinct labelings of one vertex set can exceed it
  std::size_t max_x_size = 0;
  double min_constant = 0;           // smallest C making the closed form hold for every checked sigma
  std::size_t failures = 0;
};

struct EdgeHypergraph {
  std::shared_ptr<const Graph> host;
  std::vector<std::vector<Edge>> hyperedges;  // sorted edge lists, deduplicated
  std::map<std::vector<Edge>, std::size_t> degree_index;  // subsets up to the cap

  std::size_t degree(const std::vector<Edge>& sigma) const;
};

struct EdgeTranslation {
  EdgeHypergraph hypergraph;
  EdgeTranslationReport report;
};

EdgeTranslation edge_hypergraph(const GHypergraph& hprime, CodegreeTable& table, int t, int cap = 3);

}  // namespace thetasat
