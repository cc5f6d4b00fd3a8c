#pragma once

#include "thetasat/exact.hpp"
#include "thetasat/theta.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>

namespace thetasat {

enum class CodegreeFamily { forest, hub_scaled, layered, top_layer, combined };

const char* family_name(CodegreeFamily f);

// Shared numeric context of every threshold formula. k = e(G)/n^{1+1/b} is generally irrational.
struct CodegreeParams {
  int a = 3;
  int b = 3;
  Surd k{1};
  long n = 2;
  Rational delta{1, 2};
  CodegreeFamily family = CodegreeFamily::forest;
  int s = 0;
  int t = 2;

  static Surd density_scale(std::size_t edges, long n, int b);  // e / n^{1+1/b}
  int max_s() const;                                             // ceil(3 log2 n)
};

// Everything the threshold formulas read from a pattern subset.
struct PatternSubsetSignature {
  int size = 0;
  int edges = 0;
  bool has_u = false;
  bool has_v = false;
  bool has_last_level = false;  // some w_{b-1}^j
  int f = 0;                    // members at levels t..b-1 with level - t even
  int g = 0;
  int complete_paths = 0;
  bool path_complete = false;  // exactly the union of its complete paths (and at least one)
  bool forest = true;

  int p() const { return path_complete ? complete_paths : 0; }
  int h(int b, int t) const { return 2 * t + f - b - 2; }
  friend bool operator==(const PatternSubsetSignature&, const PatternSubsetSignature&) = default;
};

PatternSubsetSignature signature_of(const ThetaPattern& pattern, std::span<const PatternVertex> nu, int t);
PatternSubsetSignature signature_of_mask(const ThetaPattern& pattern, std::uint64_t mask, int t);

ExtendedCount evaluate_codegree(const CodegreeParams& params, const PatternSubsetSignature& sig);
ExtendedCount evaluate_codegree(const CodegreeParams& params, const ThetaPattern& pattern,
                                std::span<const PatternVertex> nu);

// Memoized thresholds for one pattern and one numeric context, keyed by (family, s, t, subset).
class CodegreeTable {
 public:
  CodegreeTable(const ThetaPattern& pattern, CodegreeParams base);

  const ExtendedCount& value(CodegreeFamily family, int s, int t, std::uint64_t mask);
  const CodegreeParams& base() const { return base_; }
  const ThetaPattern& pattern() const { return pattern_; }

 private:
  ThetaPattern pattern_;
  CodegreeParams base_;
  std::unordered_map<std::uint64_t, std::unordered_map<std::uint64_t, ExtendedCount>> cache_[5];  // (s,t) slot -> mask
};

std::uint64_t mask_of(std::span<const PatternVertex> nu);

}  // namespace thetasat
