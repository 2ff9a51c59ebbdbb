#include "fanchaos/diagnostics.hpp"
#include "fanchaos/errors.hpp"
#include "fanchaos/fans.hpp"

#include <doctest.h>

#include <algorithm>

using namespace fanchaos;

namespace {

Cylinder cyl(const RelationSystem& sys, std::vector<Interval> cons) {
  auto t = find_trace(sys, cons);
  return Cylinder{std::move(cons), t};
}

bool has_cell(const std::vector<Cylinder>& base, const Rational& lo, const Rational& hi) {
  return std::any_of(base.begin(), base.end(), [&](const Cylinder& c) {
    return c.constraints.size() == 1 && c.constraints[0].lo == lo && c.constraints[0].hi == hi;
  });
}

}  // namespace

TEST_CASE("cylinder base") {
  auto rob = preset(PresetName::Robinson);
  auto base = cylinder_base(rob.sys, 1, ratio(1, 2));
  CHECK(has_cell(base, 0, ratio(1, 2)));
  CHECK(has_cell(base, ratio(1, 2), 1));
  CHECK(has_cell(base, 2, ratio(5, 2)));
  CHECK(has_cell(base, ratio(5, 2), 3));
  CHECK(has_cell(base, ratio(-1, 4), ratio(1, 4)));  // straddles the left end
  CHECK(has_cell(base, ratio(3, 4), ratio(5, 4)));
  for (const auto& c : base) {
    REQUIRE(c.trace);
    CHECK(in_cylinder(rob.sys, *c.trace, c.constraints));
  }
  auto whole = cylinder_base(rob.sys, 0, ratio(1, 2));
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].constraints.empty());
  // mesh beyond the diameter: one aligned cell per piece
  auto coarse = cylinder_base(rob.sys, 1, Rational(5));
  CHECK(has_cell(coarse, 0, 5));
}

TEST_CASE("serial and parallel cylinder bases agree") {
  auto dev = preset(PresetName::Devaney4Leg);
  auto a = cylinder_base(dev.sys, 2, ratio(1, 4), Exec::Serial);
  auto b = cylinder_base(dev.sys, 2, ratio(1, 4), Exec::Parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].constraints == b[i].constraints);
    CHECK(a[i].trace->start == b[i].trace->start);
    CHECK(a[i].trace->fwd == b[i].trace->fwd);
  }
}

TEST_CASE("sensitivity") {
  auto rob = preset(PresetName::Robinson);
  auto base = cylinder_base(rob.sys, 1, ratio(1, 4));
  SdicOptions o;
  CHECK(empirical_sdic(rob.sys, base, o).status == Status::Positive);
  CHECK(spine_sdic(rob.sys, rob.spine, base, o).status == Status::Positive);
  SdicOptions wide{Rational(3), 200, 30};
  CHECK(empirical_sdic(rob.sys, base, wide).status == Status::Inconclusive);

  auto w = sdic_witness_wrt_spine(rob.sys, rob.spine, base[3]);
  CHECK(w.sep > 0.25);
  CHECK(w.sep == std::min(w.pure, w.spine));
  // the witnesses start in the cylinder
  CHECK(in_cylinder(rob.sys, w.x, base[3].constraints));
  CHECK(in_cylinder(rob.sys, w.y, base[3].constraints));

  Cylinder corner{{{ratio(-1, 4), ratio(1, 4)}}, SeqPoint{rob.sys.value(0), {}, {}, std::nullopt}};
  CHECK_THROWS_AS(sdic_witness_wrt_spine(rob.sys, rob.spine, corner), NoWitness);
}

TEST_CASE("greedy climb prefers the expanding branch") {
  auto lel = preset(PresetName::Lelek);
  auto it = greedy_climb(lel.sys, lel.sys.value(ratio(1, 2)), 4);
  std::size_t r = *lel.sys.branch_index("r"), rho = *lel.sys.branch_index("rho");
  CHECK(it == Itinerary{rho, r, rho, rho});
}

TEST_CASE("transitivity search") {
  auto rob = preset(PresetName::Robinson);
  Cylinder U = cyl(rob.sys, {{ratio(49, 100), ratio(51, 100)}});
  Cylinder V = cyl(rob.sys, {{ratio(278, 100), ratio(281, 100)}});
  auto h = transitivity_search(rob.sys, U, V, 12);
  REQUIRE(h);
  CHECK(h->n == 2);
  CHECK(in_cylinder(rob.sys, h->point, U.constraints));
  CHECK(in_cylinder(rob.sys, shift_n(rob.sys, h->point, h->n), V.constraints));
  auto self = transitivity_search(rob.sys, U, U, 12);
  REQUIRE(self);
  CHECK(self->n == 0);

  auto knu = preset(PresetName::Knudsen);
  Cylinder Uk = cyl(knu.sys, {{ratio(49, 100), ratio(51, 100)}});
  Cylinder Vk = cyl(knu.sys, {{ratio(3, 10), ratio(9, 20)}});
  CHECK_FALSE(transitivity_search(knu.sys, Uk, Vk, 60));
  auto cert = rank_one_certificate(knu.sys, {Uk, Vk}, {{0, 1}});
  REQUIRE(cert);
  CHECK((*cert)["kind"] == "rank-one exponent lattice");
  // Robinson's steps (1,0) and (0,-1) span a rank-two lattice: no certificate
  CHECK_FALSE(rank_one_certificate(rob.sys, {U, V}, {{0, 1}}));
}

TEST_CASE("impression density") {
  auto rob = preset(PresetName::Robinson);
  auto at0 = impression_density(rob.sys, rob.sys.value(0), ratio(1, 10), 10);
  CHECK_FALSE(at0.covered);
  REQUIRE_FALSE(at0.gaps.empty());
  CHECK(at0.gaps[0].exact);

  auto knu = preset(PresetName::Knudsen);
  auto g = impression_density(knu.sys, knu.sys.value(ratio(1, 2)), ratio(1, 20), 60, 40);
  CHECK_FALSE(g.covered);
  bool contains = std::any_of(g.gaps.begin(), g.gaps.end(), [](const ImpressionGap& x) {
    return x.exact && x.lo <= 0.3 && x.hi >= 0.45;
  });
  CHECK(contains);
}

TEST_CASE("periodic points") {
  auto rob = preset(PresetName::Robinson);
  auto cone = exponent_cone(rob.sys);
  REQUIRE(cone);
  CHECK(cone->w2 == 1);
  CHECK(cone->w3 == 0);
  CHECK(cone->from_piece == 0);
  CHECK(cone->to_piece == 0);
  CHECK_FALSE(exponent_cone(preset(PresetName::Devaney4Leg).sys));
  CHECK_FALSE(exponent_cone(preset(PresetName::Knudsen).sys));

  auto chk = canonical_form_check(1, 10, 10);
  CHECK(chk.bases == 10);
  CHECK(chk.comparisons == 10 * 440);
  CHECK(chk.equalities == 0);

  auto base = cylinder_base(rob.sys, 2, ratio(1, 8));
  auto v = periodic_density_check(rob.sys, base, {}, Exec::Parallel, &rob.spine);
  CHECK(v.status == Status::Negative);
  CHECK(v.evidence["certificate"]["cylinder"] == nlohmann::json::array({"(0,1)", "(0,1)"}));

  auto knu = preset(PresetName::Knudsen);
  auto kb = cylinder_base(knu.sys, 3, ratio(1, 4));
  CHECK(periodic_density_check(knu.sys, kb, {}, Exec::Parallel, &knu.spine).status == Status::Positive);
}

TEST_CASE("labels and the banks implication") {
  using S = Status;
  CHECK(label_for(S::Positive, S::Positive, S::Positive) == "DEVANEY");
  CHECK(label_for(S::Positive, S::Negative, S::Positive) == "ROBINSON_NOT_DEVANEY");
  CHECK(label_for(S::Negative, S::Positive, S::Positive) == "KNUDSEN_NOT_DEVANEY");
  CHECK(label_for(S::Negative, S::Negative, S::Positive) == "NONE");
  CHECK(label_for(S::Inconclusive, S::Positive, S::Positive) == "INCONCLUSIVE");

  ChaosReport r;
  r.transitive.status = S::Positive;
  r.periodic.status = S::Positive;
  r.sdic.status = S::Negative;
  CHECK_FALSE(banks_consistent(r));
  r.sdic.status = S::Positive;
  r.label = "DEVANEY";
  CHECK(banks_consistent(r));
}

TEST_CASE("serial reference matches the parallel kernels") {
  for (auto name : {PresetName::Robinson, PresetName::Knudsen, PresetName::Lelek}) {
    auto p = preset(name);
    ClassifyParams a, b;
    a.exec = Exec::Serial;
    b.exec = Exec::Parallel;
    auto ra = classify(p.sys, p.spine, a), rb = classify(p.sys, p.spine, b);
    CHECK(ra.label == rb.label);
    CHECK(ra.transitive.evidence == rb.transitive.evidence);
    CHECK(ra.periodic.evidence == rb.periodic.evidence);
    CHECK(ra.sdic.evidence == rb.sdic.evidence);
    CHECK(ra.base_sdic.evidence == rb.base_sdic.evidence);
  }
}
