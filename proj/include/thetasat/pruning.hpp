#pragma once

#include "thetasat/hypergraph.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace thetasat {

struct SaturationPrune {
  Graph pruned;                // G with every saturated edge removed
  std::vector<Edge> removed;   // sorted
  ExtendedCount edge_threshold;  // the single-edge forest threshold
};

// Drops every host edge zz' that carries a pattern edge ww' with deg_h({(w,z),(w',z')}) at the threshold.
SaturationPrune remove_saturated_edges(const Graph& g, const GHypergraph& h, const CodegreeParams& params);

struct CoreResult {
  std::vector<Vertex> kept;  // sorted vertex ids of the core
  std::uint64_t min_degree = 0;
  std::uint64_t edges = 0;   // edges of the core (loops included)
  int round = 0;             // round index of the accepted graph
};

// Runs the round procedure: round r deletes vertices of degree below 2^{(b-1)r-1} e/n until stable,
// and the first round output meeting the min-degree bound is returned.
CoreResult min_degree_core(const MultiGraph& g, int b);
// Same on a simple graph; the core is returned on the original vertex ids.
CoreResult min_degree_core(const Graph& g, int b);
// Exact check of  min_degree >= 2^{-b} (v'/n)^{1/b} e / v'.
bool core_bound_holds(std::uint64_t min_degree, std::uint64_t core_order, std::uint64_t n, std::uint64_t e, int b);

// Indices B' of a weighted set with min f >= 2^{-b} (|B'|/|B|)^{1/b} sum f / |B'|.
std::vector<std::size_t> weighted_core(std::span<const std::uint64_t> f, int b);

// Pruned-graph scale: m vertices of positive degree, min degree l m^{1/b}, and 2^{-r} n <= m < 2^{-r+1} n.
struct ScaleParams {
  long m = 0;
  long n = 0;
  int b = 3;
  long min_degree = 0;
  int r = 0;

  Surd ell() const;                              // min_degree / m^{1/b}
  Surd ell_pow(const Rational& e) const;         // ell^e
  Surd m_pow(const Rational& e) const;           // m^e
  bool ell_lower_bound_holds(const Surd& k) const;  // ell >= 4^{-b} 2^r k
  bool min_degree_identity_holds() const;        // ell^{b/(b-1)} <= ell m^{1/b}
};

int scale_exponent(long m, long n);  // the r above
ScaleParams scale_parameters(const Graph& gprime, long n, int b);

}  // namespace thetasat
