#include "fanchaos/diagnostics.hpp"

namespace fanchaos {

std::string label_for(Status t, Status p, Status s) {
  using S = Status;
  if (t == S::Positive && p == S::Positive) return "DEVANEY";
  if (t == S::Positive && s == S::Positive && p == S::Negative) return "ROBINSON_NOT_DEVANEY";
  if (p == S::Positive && s == S::Positive && t == S::Negative) return "KNUDSEN_NOT_DEVANEY";
  if (t == S::Negative && p == S::Negative) return "NONE";
  return "INCONCLUSIVE";
}

bool banks_consistent(const ChaosReport& r) {
  auto bad = [](const Verdict& t, const Verdict& p, const Verdict& s) {
    return t.status == Status::Positive && p.status == Status::Positive && s.status == Status::Negative;
  };
  if (bad(r.transitive, r.periodic, r.sdic) || bad(r.base_transitive, r.base_periodic, r.base_sdic)) return false;
  if (r.label == "DEVANEY" && !(r.transitive.status == Status::Positive && r.periodic.status == Status::Positive))
    return false;
  return true;
}

ChaosReport classify(const RelationSystem& sys, const SpineSet& s, const ClassifyParams& p) {
  ChaosReport r;
  r.system = sys.name();
  r.params = {{"depth", p.depth},         {"mesh", to_string(p.mesh)},      {"n_max", p.n_max},
              {"budget", p.budget},       {"epsilon", to_string(p.epsilon)}, {"window", p.window},
              {"serial", p.exec == Exec::Serial}};

  auto base = cylinder_base(sys, p.depth, p.mesh, p.exec);
  r.cylinders = base.size();
  SdicOptions so{p.epsilon, p.n_max, p.window};
  SearchLimits lim{p.budget, 100000};

  r.base_transitive = transitivity_check(sys, base, p.n_max, p.exec, nullptr);
  r.base_periodic = periodic_density_check(sys, base, lim, p.exec, nullptr);
  r.base_sdic = empirical_sdic(sys, base, so, p.exec);

  r.transitive = transitivity_check(sys, base, p.n_max, p.exec, &s);
  r.periodic = periodic_density_check(sys, base, lim, p.exec, &s);
  r.sdic = spine_sdic(sys, s, base, so, p.exec);

  r.agreement = r.transitive.status == r.base_transitive.status && r.periodic.status == r.base_periodic.status &&
                r.sdic.status == r.base_sdic.status;

  bool traces_off_spine = true;
  for (const auto& c : base) traces_off_spine = traces_off_spine && c.trace && !in_spine(s, *c.trace);
  r.structure = {{"spine_invariant", spine_invariant(sys, s)},
                 {"spine_nowhere_dense", traces_off_spine},
                 {"corners", sys.corners().size()},
                 {"spine", s.alphabet.size()}};

  r.label = label_for(r.transitive.status, r.periodic.status, r.sdic.status);
  r.banks_ok = banks_consistent(r);
  return r;
}

}  // namespace fanchaos
