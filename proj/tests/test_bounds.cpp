#include "thetasat/bounds.hpp"
#include "thetasat/errors.hpp"

#include <doctest.h>

#include <numeric>

using namespace thetasat;

TEST_CASE("the boundary between eight and nine paths of length four") {
  const auto eight = simplified_bound_check(8, 4, Rational(1, 2));
  const auto nine = simplified_bound_check(9, 4, Rational(1, 2));
  REQUIRE(eight.find(2, 2) != nullptr);
  REQUIRE(nine.find(2, 2) != nullptr);
  CHECK_FALSE(eight.find(2, 2)->certified);
  CHECK(nine.find(2, 2)->certified);
  CHECK_FALSE(eight.feasible());
}

TEST_CASE("many paths of length three are feasible everywhere") {
  const auto report = simplified_bound_check(100, 3, Rational(1, 2));
  CHECK(report.feasible());
  for (const auto& row : report.rows) CHECK(std::isfinite(row.log2_min_c));
}

TEST_CASE("the whole pattern is outside the checked range") {
  const ThetaPattern p(3, 3);
  std::vector<PatternVertex> all(static_cast<std::size_t>(p.order()));
  std::iota(all.begin(), all.end(), 0);
  CHECK_THROWS_AS(certified_feasible(3, 3, 2, signature_of(p, all, 2)), DomainError);
  CHECK_THROWS_AS(certified_feasible(3, 3, 2, signature_of(p, {}, 2)), DomainError);
}
