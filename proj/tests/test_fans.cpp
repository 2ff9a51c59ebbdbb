#include "fanchaos/errors.hpp"
#include "fanchaos/fans.hpp"

#include <doctest.h>

#include <set>

using namespace fanchaos;

TEST_CASE("preset names") {
  CHECK(parse_preset_name("devaney4") == PresetName::Devaney4Leg);
  CHECK(parse_preset_name("lelek") == PresetName::Lelek);
  CHECK_THROWS_AS(parse_preset_name("nope"), ConfigError);
}

TEST_CASE("lelek climb") {
  auto c = lelek_climb(ratio(1, 2), ratio(3, 2), ratio(1, 2), 4);
  std::vector<double> expect{0.5, 0.75, 0.375, 0.5625, 0.84375};
  REQUIRE(c.trajectory.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(c.trajectory[i] == doctest::Approx(expect[i]).epsilon(1e-15));
  auto longer = lelek_climb(ratio(1, 2), ratio(3, 2), ratio(1, 2), 100000);
  CHECK(longer.max_seen >= 0.99);
  CHECK(longer.max_seen <= 1.0);
  CHECK_THROWS_AS(lelek_climb(ratio(1, 2), ratio(3, 2), Rational(2), 5), std::invalid_argument);
}

TEST_CASE("lelek periodic points") {
  auto cert = lelek_periodic_points(ratio(1, 2), ratio(3, 2));
  CHECK(cert["only_zero_sequence"] == true);
  bool saw = false;
  for (const auto& row : cert["small_periods"])
    if (row["a"] == 1 && row["b"] == 1) {
      CHECK(row["scale"] == "3/4");
      saw = true;
    }
  CHECK(saw);
  CHECK_THROWS_AS(lelek_periodic_points(ratio(1, 2), Rational(2)), NotNeverConnect);
}

TEST_CASE("cantor parameters") {
  CHECK(cantor_parameter({0, 0}, 2) == 0.0);
  CHECK(cantor_parameter({1}, 2) == doctest::Approx(2.0 / 3));
  CHECK(cantor_parameter({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, 2) == doctest::Approx(1.0).epsilon(1e-8));
  // four symbols use two digits each
  CHECK(cantor_parameter({3}, 4) == doctest::Approx(2.0 / 3 + 2.0 / 9));
  // distinct words give distinct parameters
  std::set<double> seen;
  for (std::size_t w = 0; w < 64; ++w) {
    std::vector<std::size_t> s;
    for (int k = 5; k >= 0; --k) s.push_back((w >> k) & 1u);
    seen.insert(cantor_parameter(s, 2));
  }
  CHECK(seen.size() == 64);
}

TEST_CASE("fan embeddings") {
  auto rob = preset(PresetName::Robinson);
  auto e = embed_fan(rob.sys, rob.spine, 6);
  CHECK(e.legs.size() == 64);
  std::set<double> cs;
  for (const auto& l : e.legs) cs.insert(l.c);
  CHECK(cs.size() == 64);
  REQUIRE_FALSE(e.points.empty());
  CHECK(e.points[0].radius == 0.0);
  for (std::size_t i = 1; i < e.points.size(); ++i) {
    CHECK(e.points[i].radius > 0.0);
    CHECK(e.points[i].leg < e.legs.size());
  }
  auto lel = preset(PresetName::Lelek);
  auto f = embed_fan(lel.sys, lel.spine, 6);
  CHECK(f.legs.size() == 64);
  CHECK(f.points.size() > 1);
  auto g = embed_fan(lel.sys, lel.spine, 6);
  CHECK(g.points.size() == f.points.size());  // same seed, same picture
}
