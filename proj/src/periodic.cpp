#include "fanchaos/diagnostics.hpp"

#include "fanchaos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fanchaos {

std::optional<ConeCertificate> exponent_cone(const RelationSystem& sys) {
  if (sys.family() != Family::Power) return std::nullopt;
  struct Step {
    int da, db;
    std::size_t from, to;
  };
  std::vector<Step> steps;
  for (const auto& b : sys.branches())
    for (const auto& s : b.segments) {
      auto from = sys.space().piece_of(s.domain.lo);
      auto to = sys.space().piece_of(s.image.lo);
      steps.push_back({s.da, s.db, *from, *to});
    }
  std::vector<std::pair<int, int>> ws;
  for (int w2 = -3; w2 <= 3; ++w2)
    for (int w3 = -3; w3 <= 3; ++w3)
      if (w2 != 0 || w3 != 0) ws.push_back({w2, w3});
  std::stable_sort(ws.begin(), ws.end(), [](auto a, auto b) {
    return std::abs(a.first) + std::abs(a.second) < std::abs(b.first) + std::abs(b.second);
  });
  std::size_t P = sys.space().pieces().size();
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = 0; j < P; ++j)
      for (auto [w2, w3] : ws) {
        bool cone = std::all_of(steps.begin(), steps.end(), [&](const Step& s) { return w2 * s.da + w3 * s.db >= 0; });
        if (!cone) continue;
        bool any = false, strict = true;
        for (const auto& s : steps)
          if (s.from == i && s.to == j) {
            any = true;
            strict = strict && w2 * s.da + w3 * s.db > 0;
          }
        if (any && strict) return ConeCertificate{w2, w3, i, j};
      }
  return std::nullopt;
}

CanonicalCheck canonical_form_check(std::uint64_t seed, std::size_t count, int bound) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> den(2, 1000);
  CanonicalCheck out;
  while (out.bases < count) {
    long q = den(rng);
    long p = std::uniform_int_distribution<long>(1, q - 1)(rng);
    ExactValue t = ExactValue::cantor(ratio(p, q), 0, 0, 0);
    ++out.bases;
    for (int a = -bound; a <= bound; ++a)
      for (int b = -bound; b <= bound; ++b) {
        if (a == 0 && b == 0) continue;
        ++out.comparisons;
        if (t.power_step(a, -b, 0, 0) == t) ++out.equalities;
      }
  }
  return out;
}

namespace {

nlohmann::json cylinder_json(const std::vector<Interval>& c) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& iv : c) j.push_back("(" + to_string(iv.lo) + "," + to_string(iv.hi) + ")");
  return j;
}

std::optional<nlohmann::json> scale_certificate(const RelationSystem& sys) {
  const auto& basis = sys.basis();
  if (!basis || basis->factors.size() != 2) return std::nullopt;
  Rational r = std::min(basis->factors[0], basis->factors[1]);
  Rational rho = std::max(basis->factors[0], basis->factors[1]);
  auto nc = nc_check(r, rho);
  if (nc.status != NcVerdict::Status::NeverConnect) return std::nullopt;
  std::size_t checked = 0;
  for (long n = 1; n <= 20; ++n)
    for (long a = 0; a <= n; ++a) {
      if (pow(r, a) * pow(rho, n - a) == 1) return std::nullopt;
      ++checked;
    }
  nlohmann::json cert;
  cert["kind"] = "never-connect scaling";
  cert["r"] = to_string(r);
  cert["rho"] = to_string(rho);
  cert["products_checked"] = checked;
  cert["reason"] = "a period-n point scales its start by r^a rho^(n-a) != 1, so only the zero sequence is periodic";
  return cert;
}

}  // namespace

Verdict periodic_density_check(const RelationSystem& sys, const std::vector<Cylinder>& base, SearchLimits lim,
                               Exec exec, const SpineSet* quotient) {
  std::vector<std::size_t> period(base.size(), 0);
  for_each_index(base.size(), exec, [&](std::size_t i) {
    auto q = periodic_from_cylinder(sys, base[i], lim);
    if (!q) return;
    if (quotient && in_spine(*quotient, *q)) return;
    std::size_t p = verified_period(sys, *q);
    if (p > 0 && in_cylinder(sys, *q, base[i].constraints)) period[i] = p;
  });

  Verdict v{"periodic_dense", Status::Positive, nlohmann::json::object()};
  std::vector<std::size_t> failed;
  std::size_t max_p = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (period[i] == 0) failed.push_back(i);
    max_p = std::max(max_p, period[i]);
  }
  v.evidence["cylinders"] = base.size();
  v.evidence["with_periodic_point"] = base.size() - failed.size();
  v.evidence["max_period"] = max_p;
  if (failed.empty() && !base.empty()) return v;

  v.status = Status::Inconclusive;
  v.evidence["without"] = failed.size();
  if (auto cone = exponent_cone(sys)) {
    const auto& pc = sys.space().pieces();
    std::vector<Interval> cyl{pc[cone->from_piece], pc[cone->to_piece]};
    auto check = canonical_form_check(20240601);
    if (check.equalities == 0) {
      v.status = Status::Negative;
      v.evidence["certificate"] = {
          {"kind", "exponent cone"},
          {"functional", {cone->w2, cone->w3}},
          {"cylinder", cylinder_json(cyl)},
          {"reason", "w . (a,b) never decreases along itineraries and strictly grows on the cylinder's step"},
          {"canonical_bases", check.bases},
          {"canonical_comparisons", check.comparisons},
          {"canonical_equalities", check.equalities}};
    }
  } else if (sys.family() == Family::Scale) {
    if (auto cert = scale_certificate(sys)) {
      for (auto i : failed) {
        if (!base[i].constraints.empty() && base[i].constraints[0].lo >= 0) {
          (*cert)["cylinder"] = cylinder_json(base[i].constraints);
          v.status = Status::Negative;
          v.evidence["certificate"] = *cert;
          break;
        }
      }
    }
  }
  return v;
}

}  // namespace fanchaos
