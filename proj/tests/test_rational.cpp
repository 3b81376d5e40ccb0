#include <limits>
#include <sstream>
#include <unordered_set>

#include "doctest.h"
#include "ddt/rational.hpp"

using ddt::Rational;

TEST_CASE("lowest terms and sign normalization") {
  CHECK(Rational(3, 6) == Rational(1, 2));
  CHECK(Rational(3, -6).to_string() == "-1/2");
  CHECK(Rational(-4, -2).to_string() == "2");
  CHECK(Rational(0, -5).to_string() == "0");
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("parse") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse(" -7 ").to_string() == "-7");
  CHECK(Rational::parse("+2/4").to_string() == "1/2");
  CHECK_THROWS(Rational::parse(""));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("1/-2"));
  CHECK_THROWS(Rational::parse("1.5"));
  CHECK_THROWS(Rational::parse("abc"));
  CHECK_THROWS(Rational::parse("1/"));
}

TEST_CASE("exact arithmetic") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK_THROWS(a / Rational(0));
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(5).pow(0) == 1);
}

TEST_CASE("overflow promotes and results demote again") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  Rational x(big);
  Rational y = x + Rational(1);
  CHECK_FALSE(y.is_small());
  CHECK(y.to_string() == "9223372036854775808");
  Rational z = y - Rational(1);
  CHECK(z.is_small());
  CHECK(z == x);

  Rational sq = x * x;
  CHECK_FALSE(sq.is_small());
  CHECK(sq / x == x);
  CHECK((sq / x).is_small());

  Rational tiny(1, big);
  Rational t2 = tiny * tiny;
  CHECK_FALSE(t2.is_small());
  CHECK(t2 * Rational(big) == tiny);

  Rational minv(std::numeric_limits<std::int64_t>::min());
  CHECK_FALSE(minv.is_small());
  CHECK(-minv == y);
}

TEST_CASE("ordering across representations") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  Rational huge = Rational(big) * Rational(4);
  CHECK(Rational(1) < huge);
  CHECK(-huge < Rational(-1));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(ddt::min(Rational(2), Rational(1, 2)) == Rational(1, 2));
}

TEST_CASE("hash agrees with equality") {
  std::unordered_set<Rational> set;
  set.insert(Rational(2, 4));
  set.insert(Rational::parse("1/2"));
  CHECK(set.size() == 1);
}

TEST_CASE("stream output") {
  std::ostringstream os;
  os << Rational(-3, 9);
  CHECK(os.str() == "-1/3");
}

TEST_CASE("certified square root bounds") {
  auto b = ddt::sqrt_bounds(Rational(481, 100), 40);
  CHECK(b.lower <= b.upper);
  CHECK(b.lower * b.lower <= Rational(481, 100));
  CHECK(b.upper * b.upper >= Rational(481, 100));
  CHECK(b.upper - b.lower < Rational(1, 1000000000));
  auto exact = ddt::sqrt_bounds(Rational(9, 4), 10);
  CHECK(exact.lower == Rational(3, 2));
  CHECK(exact.upper == Rational(3, 2));
  CHECK_THROWS(ddt::sqrt_bounds(Rational(-1), 10));
}
