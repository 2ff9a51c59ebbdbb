#include "fanchaos/errors.hpp"
#include "fanchaos/fans.hpp"
#include "fanchaos/mahavier.hpp"

#include <doctest.h>

#include <random>
#include <unordered_set>

using namespace fanchaos;

namespace {

ExactValue val(const RelationSystem& s, long p, long q = 1) { return s.value(ratio(p, q)); }

}  // namespace

TEST_CASE("coordinates and shifts") {
  auto rob = preset(PresetName::Robinson);
  const auto& sys = rob.sys;
  std::size_t f1 = *sys.branch_index("f1");
  SeqPoint p{val(sys, 1, 2), {f1, f1}, {}, std::nullopt};
  CHECK(coordinate(sys, p, 3).compare(ratio(1, 16)) == Cmp::Equal);
  CHECK(p.depth() == 3);
  CHECK_THROWS_AS(materialize(sys, p, 4), DepthError);

  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    SeqPoint q = random_point(sys, rng, 8);
    q.bwd = Itinerary{};
    SeqPoint s = shift(sys, q);
    for (long k = 1; k <= 6; ++k) CHECK(coordinate(sys, s, k) == coordinate(sys, q, k + 1));
    // the dropped coordinate is recoverable from the backward itinerary
    CHECK(coordinate(sys, s, 0) == q.start);
    CHECK(shift_n(sys, q, 3).start == coordinate(sys, q, 4));
  }
}

TEST_CASE("periodic tails shift cyclically") {
  auto dev = preset(PresetName::Devaney4Leg);
  const auto& sys = dev.sys;
  SeqPoint q{val(sys, 1, 2), {}, {*sys.branch_index("f2"), *sys.branch_index("f2")}, std::nullopt};
  CHECK(verified_period(sys, q) == 2);
  CHECK(coordinate(sys, q, 3) == q.start);
  CHECK(shift_n(sys, q, 2).start == q.start);
}

TEST_CASE("product metric bounds") {
  auto rob = preset(PresetName::Robinson);
  std::vector<ExactValue> p{ExactValue::corner(0)}, q{ExactValue::corner(1)};
  auto b = product_metric(p, q, 1, 3.0);
  CHECK(b.lower == doctest::Approx(0.5));
  CHECK(b.upper >= b.lower);

  // deeper truncations only tighten the bounds
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    SeqPoint x = random_point(rob.sys, rng, 30), y = random_point(rob.sys, rng, 30);
    auto shallow = product_metric(rob.sys, x, y, 4);
    auto deep = product_metric(rob.sys, x, y, 30);
    CHECK(shallow.lower <= deep.lower + 1e-15);
    CHECK(deep.upper <= shallow.upper + 1e-15);
    CHECK(deep.lower <= deep.upper);
    auto self = product_metric(rob.sys, x, x, 30);
    CHECK(self.lower == 0.0);
  }
}

TEST_CASE("star concatenation") {
  auto dev = preset(PresetName::Devaney4Leg);
  const auto& s = dev.sys;
  FinitePath x{val(s, 1, 2), val(s, 1, 4)};
  FinitePath y{val(s, 1, 4), val(s, 9, 4), val(s, 5, 2), val(s, 1, 2)};
  FinitePath z = star(x, y);
  FinitePath expect{val(s, 1, 2), val(s, 1, 4), val(s, 9, 4), val(s, 5, 2), val(s, 1, 2)};
  CHECK(z == expect);
  CHECK_THROWS_AS(star(x, x), JoinError);
  CHECK(is_path(s, z));
  CHECK(path_from(s, z.front(), path_itinerary(s, z)) == z);
}

TEST_CASE("return paths") {
  auto dev = preset(PresetName::Devaney4Leg);
  const auto& s = dev.sys;
  auto a = return_path(s, val(s, 1, 2), val(s, 5, 2));
  REQUIRE(a);
  CHECK(*a == FinitePath{val(s, 5, 2), val(s, 1, 2)});
  auto b = return_path(s, val(s, 1, 2), val(s, 1, 4));
  REQUIRE(b);
  CHECK(*b == FinitePath{val(s, 1, 4), val(s, 9, 4), val(s, 5, 2), val(s, 1, 2)});
  CHECK_THROWS_AS(return_path(s, val(s, 1, 2), val(s, 3, 10)), NotInRelation);

  auto rob = preset(PresetName::Robinson);
  CHECK_FALSE(return_path(rob.sys, val(rob.sys, 1, 2), val(rob.sys, 1, 4)));

  // every case of the four-leg table yields a genuine path
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    SeqPoint p = random_point(s, rng, 2);
    auto z = materialize(s, p, 2);
    auto back = return_path(s, z[0], z[1]);
    REQUIRE(back);
    CHECK(back->front() == z[1]);
    CHECK(back->back() == z[0]);
    CHECK(is_path(s, *back));
  }
}

TEST_CASE("periodic points from cylinders") {
  auto dev = preset(PresetName::Devaney4Leg);
  const auto& s = dev.sys;
  Cylinder c{{{ratio(3, 8), ratio(5, 8)}, {ratio(1, 8), ratio(3, 8)}},
             SeqPoint{val(s, 1, 2), {*s.branch_index("f1")}, {}, std::nullopt}};
  auto q = periodic_from_cylinder(s, c);
  REQUIRE(q);
  CHECK(verified_period(s, *q) == 4);
  CHECK(in_cylinder(s, *q, c.constraints));
}

TEST_CASE("traces avoid corners and satisfy constraints") {
  auto rob = preset(PresetName::Robinson);
  std::vector<Interval> cons{{ratio(1, 4), ratio(1, 2)}, {ratio(9, 4), ratio(5, 2)}};
  auto t = find_trace(rob.sys, cons);
  REQUIRE(t);
  CHECK(in_cylinder(rob.sys, *t, cons));
  for (const auto& v : materialize(rob.sys, *t, 2)) CHECK_FALSE(v.is_corner());
  // (0.3, 0.45) then (0.3, 0.45) is empty under the square and the swap
  CHECK_FALSE(find_trace(rob.sys, {{ratio(3, 10), ratio(9, 20)}, {ratio(3, 10), ratio(9, 20)}}));
}

TEST_CASE("forward impression") {
  auto rob = preset(PresetName::Robinson);
  const auto& s = rob.sys;
  auto imp = forward_impression(s, val(s, 1, 2), 2);
  ExactValue target = ExactValue::cantor(ratio(1, 2), 0, -1, 2);
  bool found = false;
  for (const auto& e : imp)
    if (e.value == target) {
      found = true;
      CHECK(e.level == 2);
    }
  CHECK(found);
  CHECK(target.approx() == doctest::Approx(2.7937).epsilon(1e-4));

  // budget b+1 contains every branch image of the budget-b set
  auto small = forward_impression(s, val(s, 1, 3), 5);
  auto big = forward_impression(s, val(s, 1, 3), 6);
  std::unordered_set<ExactValue, ExactValueHash> have;
  for (const auto& e : big) have.insert(e.value);
  for (const auto& e : small)
    for (const auto& b : s.branches())
      if (in_domain(b, e.value)) CHECK(have.count(eval_branch(b, e.value)) == 1);
}
