#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace thetasat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational pow_int(const Rational& base, long exponent);
BigInt pow_int(const BigInt& base, unsigned exponent);
BigInt ceil_rational(const Rational& x);
BigInt floor_rational(const Rational& x);
double log2_of(const Rational& x);  // x > 0
std::string to_string(const Rational& x);
Rational parse_rational(const std::string& text);  // "3/7", "0.25", "12"

// Smallest integer c with 2^c >= n (n >= 1).
int ceil_log2(std::uint64_t n);

// A positive real of the form coeff * prod base_i^{exp_i} with rational bases and exponents.
// Comparisons and ceilings are exact: everything is raised to the common exponent denominator.
class Surd {
 public:
  Surd() = default;
  Surd(const Rational& value);  // NOLINT: implicit lift of positive rationals
  Surd(long value) : Surd(Rational(value)) {}  // NOLINT

  static Surd power(const Rational& base, const Rational& exponent);

  Surd& operator*=(const Surd& rhs);
  Surd& operator/=(const Surd& rhs);
  friend Surd operator*(Surd lhs, const Surd& rhs) { return lhs *= rhs; }
  friend Surd operator/(Surd lhs, const Surd& rhs) { return lhs /= rhs; }
  Surd pow(const Rational& exponent) const;

  // Lcm of exponent denominators; value^q is rational.
  std::uint64_t root_degree() const;
  Rational raised(std::uint64_t q) const;
  bool is_rational() const { return factors_.empty(); }
  const Rational& coefficient() const { return coeff_; }

  BigInt ceil() const;
  BigInt floor() const;
  double log2() const;
  double to_double() const;
  std::string describe() const;

  friend std::strong_ordering compare(const Surd& lhs, const Surd& rhs);
  friend std::strong_ordering operator<=>(const Surd& lhs, const Surd& rhs) { return compare(lhs, rhs); }
  friend bool operator==(const Surd& lhs, const Surd& rhs) { return compare(lhs, rhs) == 0; }

 private:
  void add_factor(const Rational& base, const Rational& exponent);

  Rational coeff_{1};
  std::vector<std::pair<Rational, Rational>> factors_;  // sorted by base, base > 0 and != 1
};

// Exact comparison of a non-negative rational against a surd.
std::strong_ordering compare(const Rational& lhs, const Surd& rhs);
inline bool at_least(const Rational& lhs, const Surd& rhs) { return compare(lhs, rhs) >= 0; }
inline bool below(const Rational& lhs, const Surd& rhs) { return compare(lhs, rhs) < 0; }

// Non-negative integer or unbounded; unbounded absorbs addition and multiplication.
class ExtendedCount {
 public:
  ExtendedCount() = default;  // unbounded
  ExtendedCount(BigInt value) : value_(std::move(value)) {}  // NOLINT
  ExtendedCount(long value) : value_(BigInt(value)) {}  // NOLINT
  static ExtendedCount unbounded() { return {}; }

  bool is_unbounded() const { return !value_; }
  const BigInt& value() const { return *value_; }

  friend ExtendedCount operator+(const ExtendedCount& x, const ExtendedCount& y);
  friend ExtendedCount operator*(const ExtendedCount& x, const ExtendedCount& y);
  friend ExtendedCount min(const ExtendedCount& x, const ExtendedCount& y);
  friend bool operator==(const ExtendedCount& x, const ExtendedCount& y) = default;
  friend std::strong_ordering operator<=>(const ExtendedCount& x, const ExtendedCount& y);

  // count >= this threshold (never true for unbounded)
  bool reached_by(const BigInt& count) const { return value_ && count >= *value_; }
  std::string to_string() const;

 private:
  std::optional<BigInt> value_;
};

}  // namespace thetasat
