#include "fanchaos/config.hpp"
#include "fanchaos/errors.hpp"
#include "fanchaos/fans.hpp"
#include "fanchaos/relspace.hpp"

#include <doctest.h>

#include <random>

using namespace fanchaos;

namespace {

std::size_t idx(const RelationSystem& s, const char* name) { return *s.branch_index(name); }

ExactValue apply(const RelationSystem& s, const char* name, const ExactValue& v) {
  return eval_branch(s.branches()[idx(s, name)], v);
}

}  // namespace

TEST_CASE("branch evaluation") {
  auto rob = preset(PresetName::Robinson);
  const auto& sys = rob.sys;
  ExactValue y = apply(sys, "f1", sys.value(ratio(1, 2)));
  CHECK(y == ExactValue::cantor(ratio(1, 2), 1, 0, 0));
  CHECK(y.compare(ratio(1, 4)) == Cmp::Equal);
  CHECK(apply(sys, "f2", sys.value(0)) == ExactValue::corner(2));
  CHECK(apply(sys, "f1", sys.value(1)) == ExactValue::corner(1));
  CHECK(apply(sys, "f1", sys.value(3)) == ExactValue::corner(3));

  auto dev = preset(PresetName::Devaney4Leg);
  ExactValue z = apply(dev.sys, "f3", dev.sys.value(ratio(5, 2)));
  CHECK(z.compare(ratio(9, 2)) == Cmp::Equal);
  CHECK_THROWS_AS(apply(sys, "f1", sys.value(ratio(3, 2) + 0)), DomainError);
}

TEST_CASE("inverse branches") {
  auto rob = preset(PresetName::Robinson);
  const auto& sys = rob.sys;
  const auto& f1 = sys.branches()[idx(sys, "f1")];
  const auto& f2 = sys.branches()[idx(sys, "f2")];
  CHECK(branch_inverse(f1, sys.value(ratio(1, 4))).compare(ratio(1, 2)) == Cmp::Equal);
  CHECK(branch_inverse(f2, sys.value(ratio(5, 2))).compare(ratio(1, 2)) == Cmp::Equal);
  auto dev = preset(PresetName::Devaney4Leg);
  const auto& f3 = dev.sys.branches()[idx(dev.sys, "f3")];
  CHECK(branch_inverse(f3, dev.sys.value(ratio(9, 2))).compare(ratio(5, 2)) == Cmp::Equal);

  // round trip on random rationals of every piece, every preset
  std::mt19937_64 rng(1);
  for (auto name : {PresetName::Devaney4Leg, PresetName::Robinson, PresetName::Knudsen, PresetName::Lelek}) {
    auto p = preset(name);
    for (int i = 0; i < 100; ++i) {
      auto pt = random_point(p.sys, rng, 1);
      for (const auto& b : p.sys.branches()) {
        if (!in_domain(b, pt.start)) continue;
        CHECK(branch_inverse(b, eval_branch(b, pt.start)) == pt.start);
      }
    }
  }
}

TEST_CASE("relation membership") {
  auto rob = preset(PresetName::Robinson);
  const auto& sys = rob.sys;
  auto half = sys.value(ratio(1, 2));
  CHECK(relation_member(sys, half, sys.value(ratio(1, 4))) == std::vector<std::size_t>{idx(sys, "f1")});
  CHECK(relation_member(sys, half, sys.value(ratio(5, 2))) == std::vector<std::size_t>{idx(sys, "f2")});
  CHECK(relation_member(sys, half, sys.value(ratio(3, 10))).empty());
}

TEST_CASE("never-connect examples") {
  auto a = nc_check(ratio(1, 2), ratio(3, 2));
  CHECK(a.status == NcVerdict::Status::NeverConnect);
  auto b = nc_check(ratio(1, 2), Rational(2));
  CHECK(b.status == NcVerdict::Status::Dependent);
  CHECK(b.k == 1);
  CHECK(b.l == -1);
  auto c = nc_check(ratio(1, 4), Rational(2));
  CHECK(c.status == NcVerdict::Status::Dependent);
  CHECK(c.k == 1);
  CHECK(c.l == -2);
  CHECK(nc_check(ratio(3, 2), ratio(1, 2)).status == NcVerdict::Status::Rejected);
}

TEST_CASE("never-connect agrees with brute force") {
  std::vector<Rational> rs, rhos;
  for (long q = 2; q <= 9; ++q)
    for (long p = 1; p < q; ++p) {
      Rational r(p, q);
      r.canonicalize();
      rs.push_back(r);
      rhos.push_back(1 / r);
      rhos.push_back(1 + r);
    }
  rhos.push_back(4);
  rhos.push_back(8);
  for (const auto& r : rs)
    for (const auto& rho : rhos) {
      bool dep = false;
      for (long k = -20; k <= 20 && !dep; ++k)
        for (long l = -20; l <= 20 && !dep; ++l)
          if ((k != 0 || l != 0) && pow(r, k) == pow(rho, l)) dep = true;
      auto v = nc_check(r, rho);
      CHECK_MESSAGE((v.status == NcVerdict::Status::Dependent) == dep, to_string(r) << " " << to_string(rho));
      if (v.status == NcVerdict::Status::Dependent) CHECK(pow(r, v.k) == pow(rho, v.l));
    }
}

TEST_CASE("corners and validation") {
  auto rob = preset(PresetName::Robinson);
  CHECK(rob.sys.corners() == std::vector<Rational>{0, 1, 2, 3});
  auto lel = preset(PresetName::Lelek);
  CHECK(lel.sys.corners() == std::vector<Rational>{0});
  CHECK(lel.sys.family() == Family::Scale);

  CHECK_THROWS_AS(parse_config("piece = [0,1]\nsegment = f [0,1] power 5 0 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("piece = [0,2]\nsegment = f [0,2] shift 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("piece = [0,1]\npiece = [2,3]\nsegment = f [0,1] shift 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("piece = [0,1]\nbogus = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("piece = [0,1\n"), ConfigError);
  CHECK_THROWS_AS(preset(PresetName::Lelek, ratio(1, 2), Rational(2)), NotNeverConnect);
  try {
    parse_config("name = x\npiece = [0,1]\nsegment = f [0,1] twist 2\n");
    FAIL("no throw");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("config and preset text give the same system") {
  auto cfg = parse_config(preset_config(PresetName::Knudsen));
  REQUIRE(cfg.system);
  CHECK(cfg.system->branch_count() == 2);
  CHECK(cfg.spine == std::vector<Rational>{0, 2});
  auto c2 = parse_config("piece = [0,1]\nsegment = r [0,1] scale 1/2\nsegment = rho [0,2/3] scale 3/2\n"
                         "cylinder = (0,1/2) (0,1/4)\n");
  REQUIRE(c2.cylinders.size() == 1);
  CHECK(c2.cylinders[0].size() == 2);
}
