#include "fanchaos/rational.hpp"

#include <doctest.h>

#include <random>

using namespace fanchaos;

TEST_CASE("parse and print") {
  CHECK(parse_rational("3/6") == ratio(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("0.375") == ratio(3, 8));
  CHECK(to_string(ratio(4, 2)) == "2");
  CHECK(to_string(ratio(-1, 3)) == "-1/3");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("factor round-trips") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    long p = std::uniform_int_distribution<long>(1, 100000)(rng);
    long q = std::uniform_int_distribution<long>(1, 100000)(rng);
    Rational x(p, q);
    x.canonicalize();
    Rational back = 1;
    for (const auto& [prime, e] : factor(x)) back *= pow(Rational(prime), e);
    CHECK(back == x);
  }
}

TEST_CASE("exact roots") {
  CHECK(exact_root(ratio(9, 16), 2) == ratio(3, 4));
  CHECK(exact_root(ratio(8, 27), 3) == ratio(2, 3));
  CHECK_FALSE(exact_root(ratio(1, 2), 2));
  CHECK_FALSE(exact_root(ratio(4, 9), 3));
}

TEST_CASE("signed powers") {
  CHECK(pow(ratio(2, 3), 3) == ratio(8, 27));
  CHECK(pow(ratio(2, 3), -2) == ratio(9, 4));
  CHECK(pow(Rational(5), 0) == 1);
}

TEST_CASE("simplest rational between") {
  CHECK(simplest_between(ratio(1, 3), ratio(2, 3)) == ratio(1, 2));
  CHECK(simplest_between(ratio(3, 10), ratio(4, 10)) == ratio(1, 3));
  CHECK(simplest_between(Rational(2), ratio(7, 2)) == 3);
  // brute force: smallest denominator, checked by scanning
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    long a = std::uniform_int_distribution<long>(0, 999)(rng);
    long w = std::uniform_int_distribution<long>(1, 50)(rng);
    Rational lo = ratio(a, 1000), hi = ratio(a + w, 1000);
    Rational s = simplest_between(lo, hi);
    CHECK(lo < s);
    CHECK(s < hi);
    for (long q = 1; q < s.get_den().get_si(); ++q) {
      long k = mpz_class(lo * q).get_si();  // floor
      for (long p = k; ratio(p, q) < hi; ++p) CHECK_FALSE((lo < ratio(p, q) && ratio(p, q) < hi));
    }
  }
}

TEST_CASE("from_double is exact") {
  CHECK(from_double(0.5) == ratio(1, 2));
  CHECK(from_double(0.1).get_d() == 0.1);
  CHECK(from_double(-3.25) == ratio(-13, 4));
}
