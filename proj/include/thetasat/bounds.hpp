#pragma once

#include "thetasat/codegree.hpp"

#include <string>
#include <vector>

namespace thetasat {

// Sample points for the numeric diagnostic: n = 2^{log2_n}, k = n^{kappa} with 0 <= kappa <= (b-1)/b.
struct BoundGrid {
  std::vector<double> log2_n{16, 32, 64, 128};
  std::vector<Rational> kappa;  // empty: 41 evenly spaced points of [0, (b-1)/b]
};

struct SignatureVerdict {
  int t = 2;
  bool cycle = false;     // cycle-containing (path-complete with p >= 2) vs forest
  int p = 0;              // complete paths, cycle rows
  int edges = 0;          // induced edges
  PatternSubsetSignature signature;
  bool certified = true;  // the sufficient-condition coverage verdict
  bool direct = true;     // leading-exponent comparison of the true threshold against the target
  double log2_min_c = 0;  // grid-minimal log2 C'
  std::string note;
};

struct BoundScanReport {
  int a = 0;
  int b = 0;
  Rational delta;
  std::vector<SignatureVerdict> rows;
  bool feasible() const;
  const SignatureVerdict* find(int t, int p) const;
};

// Scans forest signatures (by edge count) and path-complete cycle signatures (by p = 2..a-1) for
// every t in [2, b]. Sets with e = ab are outside the checked range.
BoundScanReport simplified_bound_check(int a, int b, const Rational& delta, const BoundGrid& grid = {});

// The per-signature certified verdict; throws DomainError when the signature has e = ab or e < 1.
bool certified_feasible(int a, int b, int t, const PatternSubsetSignature& sig);
bool direct_feasible(int a, int b, int t, const PatternSubsetSignature& sig);

}  // namespace thetasat
