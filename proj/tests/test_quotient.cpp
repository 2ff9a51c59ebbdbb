#include "fanchaos/errors.hpp"
#include "fanchaos/fans.hpp"
#include "fanchaos/quotient.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace fanchaos;

namespace {

// max_k |x_k - a_k| / 2^k minimized over all spine paths, by enumeration
double brute_spine_distance(const SpineSet& s, const std::vector<ExactValue>& x, std::size_t depth) {
  double best = INFINITY;
  for (const auto& path : spine_prefixes(s, depth)) {
    double m = 0.0, w = 0.5;
    for (std::size_t k = 0; k < depth; ++k, w *= 0.5) m = std::max(m, coordinate_gap(x[k], ExactValue::corner(path[k])) * w);
    best = std::min(best, m);
  }
  return best;
}

}  // namespace

TEST_CASE("spine sets") {
  for (auto name : {PresetName::Devaney4Leg, PresetName::Robinson, PresetName::Knudsen, PresetName::Lelek}) {
    auto p = preset(name);
    CHECK(spine_invariant(p.sys, p.spine));
  }
  auto rob = preset(PresetName::Robinson);
  CHECK_THROWS_AS(SpineSet::make(rob.sys, {ratio(1, 2)}), ConfigError);
  CHECK_THROWS_AS(SpineSet::make(rob.sys, {Rational(0)}), ConfigError);  // 0 -> 2 leaves the alphabet
  CHECK(spine_prefixes(rob.spine, 3).size() == 8);
}

TEST_CASE("spine prefixes match brute-force enumeration") {
  for (auto name : {PresetName::Devaney4Leg, PresetName::Robinson, PresetName::Knudsen, PresetName::Lelek}) {
    auto p = preset(name);
    const auto& s = p.spine;
    for (std::size_t depth = 1; depth <= 6; ++depth) {
      // every word over the alphabet, kept when each step is a corner transition
      std::size_t m = s.alphabet.size(), total = 1, ok = 0;
      for (std::size_t k = 0; k < depth; ++k) total *= m;
      for (std::size_t w = 0; w < total; ++w) {
        std::vector<std::size_t> sym(depth);
        for (std::size_t k = depth, r = w; k-- > 0; r /= m) sym[k] = r % m;
        bool good = true;
        for (std::size_t k = 0; k + 1 < depth && good; ++k) {
          ExactValue a = ExactValue::corner(s.alphabet[sym[k]]);
          good = !relation_member(p.sys, a, ExactValue::corner(s.alphabet[sym[k + 1]])).empty();
        }
        ok += good;
      }
      CHECK(spine_prefixes(s, depth).size() == ok);
    }
  }
}

TEST_CASE("spine distance: examples and brute force") {
  auto rob = preset(PresetName::Robinson);
  std::size_t f1 = *rob.sys.branch_index("f1");
  SeqPoint p{rob.sys.value(ratio(1, 2)), Itinerary(7, f1), {}, std::nullopt};
  auto d = spine_distance(rob.sys, rob.spine, p, 8);
  CHECK(d.bounds.lower == doctest::Approx(0.25));

  auto dev = preset(PresetName::Devaney4Leg);
  std::vector<ExactValue> c{dev.sys.value(ratio(9, 2))};
  auto d1 = spine_distance(dev.spine, c, 1, 7.0);
  CHECK(d1.bounds.lower == doctest::Approx(0.25));

  std::mt19937_64 rng(8);
  for (auto name : {PresetName::Devaney4Leg, PresetName::Robinson, PresetName::Knudsen, PresetName::Lelek}) {
    auto pr = preset(name);
    for (std::size_t depth = 1; depth <= 10; depth += 3)
      for (int i = 0; i < 20; ++i) {
        SeqPoint q = random_point(pr.sys, rng, depth);
        auto x = materialize(pr.sys, q, depth);
        auto sd = spine_distance(pr.spine, x, depth, pr.sys.space().diameter_approx());
        CHECK(sd.bounds.lower == doctest::Approx(brute_spine_distance(pr.spine, x, depth)).epsilon(1e-12));
        CHECK(sd.nearest.size() == depth);
      }
  }
}

TEST_CASE("line version of the collapse metric") {
  CHECK(line_collapse_distance(ratio(1, 2), ratio(9, 10), {Rational(0)}) == ratio(2, 5));
  CHECK(line_collapse_distance(ratio(1, 10), ratio(9, 10), {Rational(0), Rational(1)}) == ratio(1, 5));
  CHECK(line_collapse_distance(Rational(0), Rational(1), {Rational(0), Rational(1)}) == 0);
  // against a brute-force infimum over A
  std::mt19937_64 g(30);
  std::vector<Rational> A3{0, ratio(1, 3), 1};
  for (int i = 0; i < 500; ++i) {
    Rational x = ratio(std::uniform_int_distribution<long>(0, 300)(g), 300), y = ratio(std::uniform_int_distribution<long>(0, 300)(g), 300);
    Rational dx = 2, dy = 2;
    for (const auto& a : A3) {
      dx = std::min<Rational>(dx, abs(x - a));
      dy = std::min<Rational>(dy, abs(y - a));
    }
    Rational expect = (dx == 0 || dy == 0) ? Rational(dx + dy) : std::min<Rational>(abs(x - y), dx + dy);
    CHECK(line_collapse_distance(x, y, A3) == expect);
    CHECK(line_collapse_distance(x, y, A3) <= abs(x - y));
  }

  // X = [0,1], A = {0}: with nothing else collapsed, points keep their distance
  std::vector<Rational> A{0};
  auto rep = ball_preimage_check(ratio(1, 2), ratio(51, 100), A, {ratio(9, 10)});
  CHECK(rep.probes == 1);
  CHECK(rep.mismatches.empty());

  std::mt19937_64 rng(12);
  std::vector<Rational> probes;
  for (int i = 0; i < 1000; ++i) probes.push_back(ratio(std::uniform_int_distribution<long>(0, 9973)(rng), 9973));
  std::vector<Rational> A2{0, 1};
  for (int t = 0; t < 20; ++t) {
    Rational x(std::uniform_int_distribution<long>(1, 96)(rng), 97);
    Rational dxA = std::min<Rational>(x, 1 - x);
    Rational r = dxA + ratio(std::uniform_int_distribution<long>(1, 50)(rng), 100);
    auto rep2 = ball_preimage_check(x, r, A2, probes);
    CHECK(rep2.probes == 1000);
    CHECK(rep2.mismatches.empty());
  }
  CHECK_THROWS_AS(ball_preimage_check(ratio(1, 2), ratio(1, 10), A2, probes), PreconditionError);
}

TEST_CASE("quotient metric axioms on samples") {
  std::mt19937_64 rng(21);
  for (auto name : {PresetName::Devaney4Leg, PresetName::Robinson, PresetName::Knudsen, PresetName::Lelek}) {
    auto pr = preset(name);
    const std::size_t depth = 24;
    double diam = pr.sys.space().diameter_approx();
    std::vector<QuotientSample> pts;
    pts.push_back(sample(pr.sys, pr.spine, QuotientPoint::top(), depth));
    for (int i = 0; i < 40; ++i)
      pts.push_back(sample(pr.sys, pr.spine, QuotientPoint::of(pr.spine, random_point(pr.sys, rng, depth)), depth));
    for (const auto& a : pts) {
      CHECK(quotient_metric(a, a, depth, diam).lower == 0.0);
      for (const auto& b : pts) {
        auto ab = quotient_metric(a, b, depth, diam), ba = quotient_metric(b, a, depth, diam);
        CHECK(ab.lower == ba.lower);
        CHECK(ab.upper == ba.upper);
        CHECK(ab.lower <= ab.upper);
        if (!a.top && !b.top) CHECK(ab.lower <= product_metric(a.coords, b.coords, depth, diam).lower);
      }
    }
  }
}

TEST_CASE("quotient shift keeps TOP fixed") {
  auto rob = preset(PresetName::Robinson);
  CHECK(quotient_shift(rob.sys, rob.spine, QuotientPoint::top()).is_top());
  SeqPoint corner_path{rob.sys.value(0), {*rob.sys.branch_index("f2"), *rob.sys.branch_index("f2")}, {}, std::nullopt};
  CHECK(QuotientPoint::of(rob.spine, corner_path).is_top());
}
