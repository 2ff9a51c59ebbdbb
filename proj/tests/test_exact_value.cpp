#include "fanchaos/exact_value.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <memory>
#include <random>
#include <unordered_set>

using namespace fanchaos;

TEST_CASE("canonical bases strip squares and cubes") {
  auto c = canonical_base(ratio(1, 64));
  CHECK(c.root == ratio(1, 2));
  CHECK(c.da + c.db >= 2);
  CHECK(pow(c.root, (1L << c.da) * static_cast<long>(std::pow(3, c.db))) == ratio(1, 64));
  CHECK(ExactValue::cantor(ratio(1, 4), 0, 0, 0) == ExactValue::cantor(ratio(1, 2), 1, 0, 0));
  CHECK(ExactValue::cantor(ratio(8, 27), 0, 0, 2) == ExactValue::cantor(ratio(2, 3), 0, 1, 2));
  CHECK(ExactValue::cantor(ratio(1, 2), 1, 0, 0) != ExactValue::cantor(ratio(1, 2), 0, 1, 0));
  CHECK(ExactValue::cantor(ratio(1, 2), 0, 0, 0) != ExactValue::cantor(ratio(1, 2), 0, 0, 2));
}

TEST_CASE("cantor float views agree with a 100-digit oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    long q = std::uniform_int_distribution<long>(2, 500)(rng);
    long p = std::uniform_int_distribution<long>(1, q - 1)(rng);
    int a = std::uniform_int_distribution<int>(-6, 6)(rng);
    int b = std::uniform_int_distribution<int>(-4, 4)(rng);
    Rational anchor = std::uniform_int_distribution<int>(0, 3)(rng) * 2;
    ExactValue v = ExactValue::cantor(ratio(p, q), a, b, anchor);
    oracle::Big truth = oracle::cantor(ratio(p, q), a, b, anchor);
    CHECK(oracle::to_double(abs(oracle::Big(v.approx()) - truth)) <= v.err());
  }
}

TEST_CASE("exact comparison with rationals") {
  ExactValue half = ExactValue::cantor(ratio(1, 4), -1, 0, 0);
  CHECK(half.compare(ratio(1, 2)) == Cmp::Equal);
  ExactValue t = ExactValue::cantor(ratio(1, 2), 0, -1, 2);  // 2 + 0.5^(1/3) = 2.7937...
  CHECK(t.compare(ratio(2793, 1000)) == Cmp::Greater);
  CHECK(t.compare(ratio(2794, 1000)) == Cmp::Less);
  // far below double resolution
  ExactValue tiny = ExactValue::cantor(ratio(1, 2), 12, 0, 0);
  CHECK(tiny.compare(0) == Cmp::Greater);
  CHECK(tiny.compare(ratio(1, 1000000)) == Cmp::Less);
}

TEST_CASE("power steps compose") {
  ExactValue x = ExactValue::cantor(ratio(3, 7), 0, 0, 0);
  ExactValue y = x.power_step(1, 0, 0, 2).power_step(0, -1, 2, 0).power_step(-1, 1, 0, 0);
  CHECK(y == x);
  CHECK(ExactValue::corner(1).power_step(1, 0, 0, 4) == ExactValue::corner(5));
  CHECK(ExactValue::corner(2).power_step(0, 1, 2, 6) == ExactValue::corner(6));
}

TEST_CASE("lelek values compare on prime vectors") {
  auto basis = std::make_shared<ScaleBasis>(std::vector<Rational>{ratio(1, 2), ratio(3, 2)});
  ExactValue a = ExactValue::lelek(basis, ratio(1, 2), {1, 1});
  ExactValue b = ExactValue::lelek(basis, ratio(3, 8));
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  CHECK(a.compare(ratio(3, 8)) == Cmp::Equal);
  CHECK(a.scale_step(1, 1).scale_step(1, -1) == a);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    long k = std::uniform_int_distribution<long>(-30, 30)(rng);
    long l = std::uniform_int_distribution<long>(-30, 30)(rng);
    ExactValue v = ExactValue::lelek(basis, ratio(5, 7), {k, l});
    oracle::Big truth = oracle::lelek(ratio(5, 7), basis->factors, {k, l});
    CHECK(oracle::to_double(abs(oracle::Big(v.approx()) - truth)) <= v.err());
  }
}

TEST_CASE("hash agrees with equality") {
  std::unordered_set<ExactValue, ExactValueHash> s;
  s.insert(ExactValue::cantor(ratio(1, 4), 0, 0, 0));
  s.insert(ExactValue::cantor(ratio(1, 2), 1, 0, 0));
  s.insert(ExactValue::corner(ratio(1, 4)));
  CHECK(s.size() <= 2);
  CHECK(s.count(ExactValue::cantor(ratio(1, 16), -1, 0, 0)) == 1);
}

TEST_CASE("bad bases are rejected") {
  CHECK_THROWS_AS(ExactValue::cantor(ratio(3, 2), 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(ExactValue::cantor(0, 0, 0, 0), std::invalid_argument);
}
