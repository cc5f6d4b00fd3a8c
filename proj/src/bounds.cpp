#include "thetasat/bounds.hpp"

#include "thetasat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace thetasat {

namespace {

// c0 + c1 * kappa, where k = n^kappa; all exponents below are of n.
struct Linear {
  Rational c0;
  Rational c1;
  Rational at(const Rational& x) const { return c0 + c1 * x; }
};

Linear operator-(const Linear& x, const Linear& y) { return {x.c0 - y.c0, x.c1 - y.c1}; }

std::vector<Rational> roots_inside(const Linear& f, const Rational& hi) {
  if (f.c1 == 0) return {};
  Rational x = -f.c0 / f.c1;
  if (x < 0 || x > hi) return {};
  return {x};
}

struct ExponentModel {
  int a;
  int b;
  int t;
  PatternSubsetSignature sig;

  Rational upper() const { return Rational(b - 1, b); }

  Linear numerator() const { return {Rational(2), Rational(a * b)}; }

  Linear lower_family() const {  // leading exponent of the s = 0 layered / hub-scaled threshold
    const Linear num = numerator();
    if (t == b) return num - Linear{Rational(2), Rational((sig.size - 2) * b, b - 1)};
    Linear den{Rational(2 * t - 1, b) + Rational(sig.f, b),
               Rational(2 * b - 2 * t + 1, b - 1) + Rational(sig.f) + Rational((sig.size - sig.f - 2) * b, b - 1)};
    return num - den;
  }

  std::optional<Linear> top_family() const {
    if (t == b || !sig.has_last_level) return std::nullopt;
    Linear den{Rational(1) + Rational(1, b) + Rational(sig.g, b),
               Rational(1) + Rational(sig.g) + Rational((sig.size - sig.g - 3) * b, b - 1)};
    return numerator() - den;
  }

  // Target for each branch of the min in the denominator; the smaller base wins, i.e. the larger target.
  Linear target_branch(bool k_only) const {
    const int e = sig.edges;
    Linear den{Rational(1) + Rational(1, b), Rational(1)};
    if (k_only) {
      den.c1 += Rational((e - 1) * b, b - 1);
    } else {
      den.c0 += Rational(e - 1) * Rational(b - 1, b * (a * b - 1));
      den.c1 += Rational(e - 1);
    }
    return numerator() - den;
  }
  Rational target(const Rational& x) const { return std::max(target_branch(true).at(x), target_branch(false).at(x)); }

  Rational threshold(const Rational& x) const {
    const Rational low = std::max(lower_family().at(x), Rational(0));
    if (auto top = top_family()) return std::min(top->at(x), low);
    return low;
  }
};

}  // namespace

bool direct_feasible(int a, int b, int t, const PatternSubsetSignature& sig) {
  if (sig.edges < 1 || sig.edges >= a * b) throw DomainError("signature edge count outside [1, ab-1]");
  if (sig.forest) return true;
  ExponentModel m{a, b, t, sig};
  const Rational hi = m.upper();
  std::vector<Rational> points{Rational(0), hi};
  auto add = [&](const Linear& f) {
    for (const Rational& r : roots_inside(f, hi)) points.push_back(r);
  };
  add(m.lower_family());
  add(m.target_branch(true) - m.target_branch(false));
  if (auto top = m.top_family()) {
    add(*top);
    add(*top - m.lower_family());
  }
  for (const Rational& x : points)
    if (m.threshold(x) > m.target(x)) return false;
  return true;
}

bool certified_feasible(int a, int b, int t, const PatternSubsetSignature& sig) {
  if (sig.edges < 1 || sig.edges >= a * b) throw DomainError("signature edge count outside [1, ab-1]");
  if (sig.forest) return true;
  if (t == b) return direct_feasible(a, b, t, sig);
  // A cycle-containing set is certified through its path-complete core.
  const int p = sig.complete_paths;
  const int c = (b - t + 1) / 2;
  const int f = p * c;
  const int g = (p - 2) * c + b - t;
  const int h = 2 * t + f - b - 2;
  const Rational K(b - 1, b);
  std::vector<std::pair<Rational, Rational>> cover;
  cover.emplace_back(Rational(0), K * Rational(g, p * b + g));
  if ((p - 1) * b + h > 0) cover.emplace_back(Rational(0), K * Rational(h, (p - 1) * b + h));
  const Rational rhs = K * Rational((b - 1) * (p * b - 1) - h * (a * b - 1), a * b - 1);
  const int slope = b - 1 - h;
  if (slope > 0) cover.emplace_back(rhs / slope, K);
  else if (slope == 0) {
    if (rhs <= 0) cover.emplace_back(Rational(0), K);
  } else {
    cover.emplace_back(Rational(0), rhs / slope);
  }
  std::vector<std::pair<Rational, Rational>> clipped;
  for (auto [lo, hi] : cover) {
    lo = std::max(lo, Rational(0));
    hi = std::min(hi, K);
    if (lo <= hi) clipped.emplace_back(lo, hi);
  }
  std::sort(clipped.begin(), clipped.end());
  Rational reach(0);
  bool started = false;
  for (const auto& [lo, hi] : clipped) {
    if (lo > reach || (!started && lo > 0)) return false;
    started = true;
    reach = std::max(reach, hi);
  }
  return started && reach >= K;
}

namespace {

double log2_ceil_positive(double log2_value) { return std::max(log2_value, 0.0); }

// log2(2^x + y) for y > 0 without leaving log space.
double log2_plus(double x, double y) {
  const double ly = std::log2(y);
  const double hi = std::max(x, ly);
  return hi + std::log2(std::exp2(x - hi) + std::exp2(ly - hi));
}

// log2 of the combined threshold and of the target at n = 2^L, k = n^kappa.
double log2_ratio(int a, int b, int t, const PatternSubsetSignature& sig, const Rational& delta, double L,
                  double kappa) {
  const double lk = kappa * L;
  const double ld = log2_of(delta);
  const double bb = b;
  const double num = a * b * lk + 2 * L;
  const double target = num - (lk + L + L / bb +
                               (sig.edges - 1) * std::min(bb / (bb - 1) * lk, lk + L * (bb - 1) / (bb * (a * b - 1))));
  double value;
  if (sig.forest) {
    value = num - (ld + lk + L + L / bb + (sig.edges - 1) * (ld + bb / (bb - 1) * lk));
  } else {
    double low;
    if (t == b) {
      low = num - (2 * L + sig.size * ld + (sig.size - 2) / (bb - 1) * bb * lk);
    } else {
      low = num - ((2.0 * b - 2 * t + 1) / (bb - 1) * lk + (2.0 * t - 1) / bb * L + sig.size * ld + sig.f * (lk + L / bb) +
                   (sig.size - sig.f - 2) * bb / (bb - 1) * lk);
    }
    const double capped = std::log2(20.0) + log2_plus(log2_ceil_positive(low), std::ceil(L));
    value = capped;
    if (t < b && sig.has_last_level) {
      const double top = num - (lk + L + L / bb + sig.g * (lk + L / bb) + (sig.size - sig.g - 3) * bb / (bb - 1) * lk +
                                sig.size * ld);
      value = std::min(value, log2_ceil_positive(top));
    }
  }
  return log2_ceil_positive(value) - target;
}

std::vector<PatternVertex> path_union(const ThetaPattern& pattern, int paths) {
  std::vector<PatternVertex> nu{ThetaPattern::hub_u, ThetaPattern::hub_v};
  for (int j = 1; j <= paths; ++j)
    for (int i = 1; i < pattern.length(); ++i) nu.push_back(pattern.interior(i, j));
  return nu;
}

}  // namespace

bool BoundScanReport::feasible() const {
  return std::all_of(rows.begin(), rows.end(), [](const SignatureVerdict& r) { return r.certified; });
}

const SignatureVerdict* BoundScanReport::find(int t, int p) const {
  for (const auto& r : rows)
    if (r.cycle && r.t == t && r.p == p) return &r;
  return nullptr;
}

BoundScanReport simplified_bound_check(int a, int b, const Rational& delta, const BoundGrid& grid) {
  if (b < 3) throw DomainError("the bound scan needs b >= 3");
  if (a < 2) throw DomainError("the bound scan needs a >= 2");
  if (delta <= 0) throw DomainError("delta must be positive");
  const Rational K(b - 1, b);
  std::vector<Rational> kappa = grid.kappa;
  if (kappa.empty())
    for (int i = 0; i <= 40; ++i) kappa.push_back(K * Rational(i, 40));
  for (const Rational& x : kappa)
    if (x < 0 || x > K) throw DomainError("grid point with k above n^{1-1/b}");

  const ThetaPattern pattern(a, b);
  BoundScanReport report{a, b, delta, {}};
  auto grid_c = [&](int t, const PatternSubsetSignature& sig) {
    double worst = -std::numeric_limits<double>::infinity();
    for (double L : grid.log2_n)
      for (const Rational& x : kappa) worst = std::max(worst, log2_ratio(a, b, t, sig, delta, L, x.convert_to<double>()));
    return worst;
  };

  // Forest representatives: prefixes of a spanning tree grown from u along the paths.
  std::vector<PatternVertex> order{ThetaPattern::hub_u};
  for (int i = 1; i < b; ++i) order.push_back(pattern.interior(i, 1));
  order.push_back(ThetaPattern::hub_v);
  for (int j = 2; j <= a; ++j)
    for (int i = 1; i < b - 1; ++i) order.push_back(pattern.interior(i, j));
  for (int t = 2; t <= b; ++t) {
    int last_edges = 0;
    for (std::size_t len = 2; len <= order.size(); ++len) {
      std::vector<PatternVertex> nu(order.begin(), order.begin() + static_cast<long>(len));
      const auto sig = signature_of(pattern, nu, t);
      if (sig.edges == last_edges || !sig.forest) continue;
      last_edges = sig.edges;
      SignatureVerdict row;
      row.t = t;
      row.edges = sig.edges;
      row.signature = sig;
      row.certified = certified_feasible(a, b, t, sig);
      row.direct = direct_feasible(a, b, t, sig);
      row.log2_min_c = grid_c(t, sig);
      row.note = "forest";
      report.rows.push_back(row);
    }
    for (int p = 2; p < a; ++p) {
      const auto sig = signature_of(pattern, path_union(pattern, p), t);
      SignatureVerdict row;
      row.t = t;
      row.cycle = true;
      row.p = p;
      row.edges = sig.edges;
      row.signature = sig;
      row.certified = certified_feasible(a, b, t, sig);
      row.direct = direct_feasible(a, b, t, sig);
      row.log2_min_c = grid_c(t, sig);
      row.note = t == b ? "hub-scaled" : "layered";
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace thetasat
