#include "thetasat/exact.hpp"

#include <doctest.h>

using namespace thetasat;

TEST_CASE("rational parsing and rounding") {
  CHECK(parse_rational("3/7") == Rational(3, 7));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("12") == Rational(12));
  CHECK(ceil_rational(Rational(7, 2)) == 4);
  CHECK(floor_rational(Rational(7, 2)) == 3);
  CHECK(ceil_rational(Rational(-7, 2)) == -3);
  CHECK(pow_int(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(64) == 6);
  CHECK(ceil_log2(65) == 7);
}

TEST_CASE("surd comparisons are exact") {
  const Surd cube_root16 = Surd::power(16, Rational(1, 3));
  CHECK(cube_root16 > Surd(2));
  CHECK(cube_root16 < Surd(3));
  CHECK(cube_root16.pow(3) == Surd(16));
  CHECK(cube_root16.ceil() == 3);
  CHECK(cube_root16.floor() == 2);
  // 8^{1/2} * 16 = 2^{11/2}.
  const Surd s = Surd::power(8, Rational(1, 2)) * Surd(16);
  CHECK(s.root_degree() == 2);
  CHECK(s.raised(2) == Rational(2048));
  CHECK(Surd::power(4, Rational(1, 2)) == Surd(2));
  CHECK(compare(Rational(2), Surd::power(2, Rational(1, 2)) * Surd::power(2, Rational(1, 2))) == 0);
  CHECK(at_least(Rational(3), cube_root16));
  CHECK(below(Rational(5, 2), cube_root16));
  CHECK(cube_root16.to_double() == doctest::Approx(2.519842).epsilon(1e-6));
}

TEST_CASE("surd arithmetic round trips") {
  for (int base = 2; base <= 9; ++base)
    for (int den = 1; den <= 4; ++den) {
      const Surd x = Surd::power(base, Rational(1, den));
      CHECK((x * x / x) == x);
      CHECK(x.pow(den) == Surd(base));
    }
}

TEST_CASE("extended counts") {
  const ExtendedCount inf = ExtendedCount::unbounded();
  const ExtendedCount five(5L);
  CHECK(inf.is_unbounded());
  CHECK((inf + five).is_unbounded());
  CHECK((five * inf).is_unbounded());
  CHECK(min(inf, five) == five);
  CHECK(five < inf);
  CHECK(five.reached_by(5));
  CHECK_FALSE(five.reached_by(4));
  CHECK_FALSE(inf.reached_by(BigInt(1) << 200));
  CHECK((five + ExtendedCount(7L)).value() == 12);
}
