#include "thetasat/exact.hpp"

#include "thetasat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace thetasat {

namespace mp = boost::multiprecision;

BigInt pow_int(const BigInt& base, unsigned exponent) { return mp::pow(base, exponent); }

Rational pow_int(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  const auto e = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  BigInt num = mp::pow(BigInt(mp::numerator(base)), e);
  BigInt den = mp::pow(BigInt(mp::denominator(base)), e);
  if (exponent < 0) {
    if (num == 0) throw DomainError("zero raised to a negative power");
    std::swap(num, den);
  }
  return Rational(num, den);
}

BigInt floor_rational(const Rational& x) {
  BigInt num = mp::numerator(x);
  BigInt den = mp::denominator(x);
  BigInt q = num / den;
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

BigInt ceil_rational(const Rational& x) {
  BigInt num = mp::numerator(x);
  BigInt den = mp::denominator(x);
  BigInt q = num / den;
  if (num % den != 0 && num > 0) q += 1;
  return q;
}

namespace {

double log2_big(const BigInt& x) {
  const auto bits = static_cast<long>(mp::msb(x));
  if (bits < 62) return std::log2(x.convert_to<double>());
  BigInt top = x >> (bits - 62);
  return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 62);
}

std::uint64_t to_u64(const BigInt& x) { return x.convert_to<std::uint64_t>(); }

}  // namespace

double log2_of(const Rational& x) {
  if (x <= 0) throw DomainError("log of a non-positive value");
  return log2_big(mp::numerator(x)) - log2_big(mp::denominator(x));
}

std::string to_string(const Rational& x) {
  std::ostringstream os;
  os << mp::numerator(x);
  if (mp::denominator(x) != 1) os << '/' << mp::denominator(x);
  return os.str();
}

namespace {

BigInt parse_decimal(std::string digits) {
  bool negative = false;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
    negative = digits[0] == '-';
    digits.erase(0, 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw DomainError("bad number");
  const auto first = digits.find_first_not_of('0');
  BigInt value = first == std::string::npos ? BigInt(0) : BigInt(digits.substr(first));
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  try {
    if (auto slash = text.find('/'); slash != std::string::npos) {
      BigInt den = parse_decimal(text.substr(slash + 1));
      if (den == 0) throw DomainError("zero denominator");
      return Rational(parse_decimal(text.substr(0, slash)), den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
      const auto scale = static_cast<unsigned>(text.size() - dot - 1);
      return Rational(parse_decimal(text.substr(0, dot) + text.substr(dot + 1)), mp::pow(BigInt(10), scale));
    }
    return Rational(parse_decimal(text));
  } catch (const DomainError&) {
    throw DomainError("cannot parse rational '" + text + "'");
  }
}

int ceil_log2(std::uint64_t n) {
  int c = 0;
  while ((std::uint64_t{1} << c) < n) ++c;
  return c;
}

Surd::Surd(const Rational& value) : coeff_(value) {
  if (value <= 0) throw DomainError("surd values must be positive");
}

Surd Surd::power(const Rational& base, const Rational& exponent) {
  if (base <= 0) throw DomainError("surd base must be positive");
  Surd s;
  s.add_factor(base, exponent);
  return s;
}

void Surd::add_factor(const Rational& base, const Rational& exponent) {
  if (base == 1 || exponent == 0) return;
  if (mp::denominator(exponent) == 1) {
    coeff_ *= pow_int(base, mp::numerator(exponent).convert_to<long>());
    return;
  }
  auto it = std::lower_bound(factors_.begin(), factors_.end(), base,
                             [](const auto& f, const Rational& b) { return f.first < b; });
  if (it != factors_.end() && it->first == base) {
    it->second += exponent;
    Rational e = it->second;
    if (mp::denominator(e) == 1) {
      factors_.erase(it);
      coeff_ *= pow_int(base, mp::numerator(e).convert_to<long>());
    }
    return;
  }
  factors_.insert(it, {base, exponent});
}

Surd& Surd::operator*=(const Surd& rhs) {
  coeff_ *= rhs.coeff_;
  for (const auto& [base, e] : rhs.factors_) add_factor(base, e);
  return *this;
}

Surd& Surd::operator/=(const Surd& rhs) {
  coeff_ /= rhs.coeff_;
  for (const auto& [base, e] : rhs.factors_) add_factor(base, -e);
  return *this;
}

Surd Surd::pow(const Rational& exponent) const {
  Surd out;
  if (mp::denominator(exponent) == 1) {
    out.coeff_ = pow_int(coeff_, mp::numerator(exponent).convert_to<long>());
  } else {
    out.add_factor(coeff_, exponent);
  }
  for (const auto& [base, e] : factors_) out.add_factor(base, e * exponent);
  return out;
}

std::uint64_t Surd::root_degree() const {
  std::uint64_t q = 1;
  for (const auto& f : factors_) q = std::lcm(q, to_u64(BigInt(mp::denominator(f.second))));
  return q;
}

Rational Surd::raised(std::uint64_t q) const {
  Rational out = pow_int(coeff_, static_cast<long>(q));
  for (const auto& [base, e] : factors_) {
    Rational scaled = e * Rational(q);
    if (mp::denominator(scaled) != 1) throw DomainError("raised() needs a multiple of the root degree");
    out *= pow_int(base, mp::numerator(scaled).convert_to<long>());
  }
  return out;
}

double Surd::log2() const {
  double acc = log2_of(coeff_);
  for (const auto& [base, e] : factors_) acc += log2_of(base) * e.convert_to<double>();
  return acc;
}

double Surd::to_double() const { return std::exp2(log2()); }

std::string Surd::describe() const {
  std::ostringstream os;
  os << to_string(coeff_);
  for (const auto& [base, e] : factors_) os << "*(" << to_string(base) << ")^(" << to_string(e) << ')';
  return os.str();
}

namespace {

// Largest N >= 0 with N^q <= v, for rational v > 0. Starts from a floating estimate and
// widens the bracket until it is certified, then bisects.
BigInt integer_root_floor(const Rational& v, std::uint64_t q) {
  const auto qq = static_cast<unsigned>(q);
  auto fits = [&](const BigInt& n) { return Rational(mp::pow(n, qq)) <= v; };
  const double lg = log2_of(v) / static_cast<double>(q);
  BigInt est;
  if (lg < 60) {
    est = BigInt(static_cast<std::uint64_t>(std::floor(std::exp2(std::max(lg, -1.0)))));
  } else {
    const auto whole = static_cast<long>(std::floor(lg));
    const double frac = lg - static_cast<double>(whole);
    est = BigInt(static_cast<std::uint64_t>(std::exp2(frac + 52))) << (whole - 52);
  }
  BigInt margin = (est >> 20) + 2;
  BigInt lo = est > margin ? BigInt(est - margin) : BigInt(0);
  BigInt hi = est + margin;
  while (lo > 0 && !fits(lo)) {
    margin *= 2;
    lo = est > margin ? BigInt(est - margin) : BigInt(0);
  }
  while (fits(hi)) {
    margin *= 2;
    hi = est + margin;
  }
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (fits(mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

}  // namespace

BigInt Surd::floor() const {
  if (factors_.empty()) return floor_rational(coeff_);
  const auto q = root_degree();
  return integer_root_floor(raised(q), q);
}

BigInt Surd::ceil() const {
  if (factors_.empty()) return ceil_rational(coeff_);
  const auto q = root_degree();
  const Rational v = raised(q);
  BigInt f = integer_root_floor(v, q);
  if (Rational(mp::pow(f, static_cast<unsigned>(q))) == v) return f;
  return f + 1;
}

std::strong_ordering compare(const Surd& lhs, const Surd& rhs) {
  Surd ratio = lhs / rhs;
  const auto q = ratio.root_degree();
  const Rational v = ratio.raised(q);
  if (v < 1) return std::strong_ordering::less;
  if (v > 1) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering compare(const Rational& lhs, const Surd& rhs) {
  if (lhs <= 0) return std::strong_ordering::less;
  return compare(Surd(lhs), rhs);
}

ExtendedCount operator+(const ExtendedCount& x, const ExtendedCount& y) {
  if (x.is_unbounded() || y.is_unbounded()) return ExtendedCount::unbounded();
  return ExtendedCount(x.value() + y.value());
}

ExtendedCount operator*(const ExtendedCount& x, const ExtendedCount& y) {
  if (x.is_unbounded() || y.is_unbounded()) return ExtendedCount::unbounded();
  return ExtendedCount(x.value() * y.value());
}

ExtendedCount min(const ExtendedCount& x, const ExtendedCount& y) { return x <= y ? x : y; }

std::strong_ordering operator<=>(const ExtendedCount& x, const ExtendedCount& y) {
  if (x.is_unbounded() && y.is_unbounded()) return std::strong_ordering::equal;
  if (x.is_unbounded()) return std::strong_ordering::greater;
  if (y.is_unbounded()) return std::strong_ordering::less;
  if (x.value() < y.value()) return std::strong_ordering::less;
  if (x.value() > y.value()) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ExtendedCount::to_string() const {
  if (is_unbounded()) return "inf";
  return value_->str();
}

}  // namespace thetasat
