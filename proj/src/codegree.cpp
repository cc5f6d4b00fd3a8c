#include "thetasat/codegree.hpp"

#include "thetasat/errors.hpp"

#include <bit>

namespace thetasat {

const char* family_name(CodegreeFamily f) {
  switch (f) {
    case CodegreeFamily::forest: return "forest";
    case CodegreeFamily::hub_scaled: return "s,b";
    case CodegreeFamily::layered: return "s,t";
    case CodegreeFamily::top_layer: return "t";
    case CodegreeFamily::combined: return "prime";
  }
  return "?";
}

Surd CodegreeParams::density_scale(std::size_t edges, long n, int b) {
  if (edges == 0) throw DomainError("density scale needs at least one edge");
  return Surd(Rational(static_cast<long>(edges))) / Surd::power(Rational(n), Rational(b + 1, b));
}

int CodegreeParams::max_s() const { return 3 * ceil_log2(static_cast<std::uint64_t>(n)); }

std::uint64_t mask_of(std::span<const PatternVertex> nu) {
  std::uint64_t m = 0;
  for (PatternVertex w : nu) {
    if (w < 0 || w >= 64) throw DomainError("pattern vertex outside the 64-label mask range");
    m |= std::uint64_t{1} << w;
  }
  return m;
}

namespace {

template <class Has>
PatternSubsetSignature signature_impl(const ThetaPattern& pattern, Has has, int t) {
  const int a = pattern.paths();
  const int b = pattern.length();
  PatternSubsetSignature sig;
  sig.has_u = has(ThetaPattern::hub_u);
  sig.has_v = has(ThetaPattern::hub_v);
  sig.size = (sig.has_u ? 1 : 0) + (sig.has_v ? 1 : 0);
  int partial_paths = 0;
  for (int j = 1; j <= a; ++j) {
    int present = 0;
    for (int i = 1; i < b; ++i) {
      if (!has(pattern.interior(i, j))) continue;
      ++present;
      if (i == b - 1) sig.has_last_level = true;
      if (i >= t && (i - t) % 2 == 0) ++sig.f;
    }
    sig.size += present;
    for (int i = 0; i < b; ++i)
      if (has(pattern.on_path(j, i)) && has(pattern.on_path(j, i + 1))) ++sig.edges;
    if (present == b - 1 && sig.has_u && sig.has_v) ++sig.complete_paths;
    else if (present > 0) ++partial_paths;
  }
  sig.g = ((b - t) % 2 == 0) ? sig.f : sig.f - 1;
  if (sig.g < 0) sig.g = 0;
  sig.forest = !(sig.has_u && sig.has_v && sig.complete_paths >= 2);
  sig.path_complete = sig.complete_paths > 0 && partial_paths == 0;
  return sig;
}

}  // namespace

PatternSubsetSignature signature_of(const ThetaPattern& pattern, std::span<const PatternVertex> nu, int t) {
  std::vector<char> in(static_cast<std::size_t>(pattern.order()), 0);
  for (PatternVertex w : nu) {
    if (w < 0 || w >= pattern.order()) throw DomainError("pattern vertex out of range");
    in[static_cast<std::size_t>(w)] = 1;
  }
  return signature_impl(pattern, [&](PatternVertex w) { return in[static_cast<std::size_t>(w)] != 0; }, t);
}

PatternSubsetSignature signature_of_mask(const ThetaPattern& pattern, std::uint64_t mask, int t) {
  return signature_impl(pattern, [&](PatternVertex w) { return ((mask >> w) & 1U) != 0; }, t);
}

namespace {

struct Terms {
  const CodegreeParams& P;
  Surd n_root_b;      // n^{1/b}
  Surd k_top;         // k^{b/(b-1)}
  Surd numerator;     // k^{ab} n^2

  explicit Terms(const CodegreeParams& params)
      : P(params),
        n_root_b(Surd::power(Rational(params.n), Rational(1, params.b))),
        k_top(params.k.pow(Rational(params.b, params.b - 1))),
        numerator(params.k.pow(Rational(params.a * params.b)) * Surd(Rational(params.n * params.n))) {}

  Surd two_pow(const Rational& e) const { return Surd::power(Rational(2), e); }
  Surd delta_pow(int e) const { return Surd(pow_int(P.delta, e)); }

  ExtendedCount forest(const PatternSubsetSignature& sig) const {
    if (!sig.forest || sig.edges < 1) return ExtendedCount::unbounded();
    Surd den = Surd(P.delta) * P.k * Surd(Rational(P.n)) * n_root_b * (Surd(P.delta) * k_top).pow(sig.edges - 1);
    return (numerator / den).ceil();
  }

  ExtendedCount hub_scaled(const PatternSubsetSignature& sig, int s) const {
    if (!(sig.has_u && sig.has_v)) return ExtendedCount::unbounded();
    const int b = P.b;
    Surd growth = two_pow(Rational(2 * s, 3)) * P.k.pow(b);
    Surd den = two_pow(-s) * Surd(Rational(P.n * P.n)) * delta_pow(sig.size) *
               growth.pow(Rational(sig.size - 2, b - 1));
    return (numerator / den).ceil();
  }

  ExtendedCount layered(const PatternSubsetSignature& sig, int s, int t) const {
    const int b = P.b;
    if (t < 2 || t >= b) throw DomainError("the layered family needs 2 <= t < b");
    if (!(sig.has_u && sig.has_v)) return ExtendedCount::unbounded();
    Surd scale = two_pow(Rational(2 * s, 3));
    Surd den = two_pow(-2 * s) * P.k.pow(Rational(2 * b - 2 * t + 1, b - 1)) *
               Surd::power(Rational(P.n), Rational(2 * t - 1, b)) * delta_pow(sig.size) *
               (scale * P.k * n_root_b).pow(sig.f) * (scale * k_top).pow(sig.size - sig.f - 2);
    return (numerator / den).ceil();
  }

  ExtendedCount top_layer(const PatternSubsetSignature& sig, int t) const {
    const int b = P.b;
    if (t < 2 || t > b) throw DomainError("t must lie in [2, b]");
    if (t == b) return ExtendedCount::unbounded();
    if (!(sig.has_u && sig.has_v && sig.has_last_level)) return ExtendedCount::unbounded();
    Surd den = P.k * Surd(Rational(P.n)) * n_root_b * (P.k * n_root_b).pow(sig.g) *
               k_top.pow(sig.size - sig.g - 3) * delta_pow(sig.size);
    return (numerator / den).ceil();
  }

  ExtendedCount combined(const PatternSubsetSignature& sig, int t) const {
    if (sig.forest) return forest(sig);
    const ExtendedCount base = t == P.b ? hub_scaled(sig, 0) : layered(sig, 0, t);
    const ExtendedCount capped =
        ExtendedCount(20) * (base + ExtendedCount(static_cast<long>(ceil_log2(static_cast<std::uint64_t>(P.n)))));
    return min(top_layer(sig, t), capped);
  }
};

void check_params(const CodegreeParams& p) {
  if (p.a < 2 || p.b < 2) throw DomainError("codegree needs a >= 2 and b >= 2");
  if (p.delta <= 0) throw DomainError("delta must be positive");
  if (p.n < 2) throw DomainError("n must be at least 2");
  if (p.t < 2 || p.t > p.b) throw DomainError("t must lie in [2, b]");
  if (p.s < 0 || p.s > p.max_s()) throw DomainError("s out of range");
}

}  // namespace

ExtendedCount evaluate_codegree(const CodegreeParams& params, const PatternSubsetSignature& sig) {
  check_params(params);
  Terms terms(params);
  switch (params.family) {
    case CodegreeFamily::forest: return terms.forest(sig);
    case CodegreeFamily::hub_scaled: return terms.hub_scaled(sig, params.s);
    case CodegreeFamily::layered: return terms.layered(sig, params.s, params.t);
    case CodegreeFamily::top_layer: return terms.top_layer(sig, params.t);
    case CodegreeFamily::combined: return terms.combined(sig, params.t);
  }
  throw DomainError("unknown codegree family");
}

ExtendedCount evaluate_codegree(const CodegreeParams& params, const ThetaPattern& pattern,
                                std::span<const PatternVertex> nu) {
  if (pattern.paths() != params.a || pattern.length() != params.b) throw DomainError("pattern does not match params");
  return evaluate_codegree(params, signature_of(pattern, nu, params.t));
}

CodegreeTable::CodegreeTable(const ThetaPattern& pattern, CodegreeParams base)
    : pattern_(pattern), base_(std::move(base)) {
  if (pattern_.order() > 64) throw DomainError("codegree tables need at most 64 pattern vertices");
  base_.a = pattern_.paths();
  base_.b = pattern_.length();
}

const ExtendedCount& CodegreeTable::value(CodegreeFamily family, int s, int t, std::uint64_t mask) {
  const auto slot = static_cast<std::uint64_t>(s) * 64 + static_cast<std::uint64_t>(t);
  auto& inner = cache_[static_cast<int>(family)][slot];
  if (auto it = inner.find(mask); it != inner.end()) return it->second;
  CodegreeParams p = base_;
  p.family = family;
  p.s = s;
  p.t = t;
  return inner.emplace(mask, evaluate_codegree(p, signature_of_mask(pattern_, mask, t))).first->second;
}

}  // namespace thetasat
