#include "fanchaos/diagnostics.hpp"

#include "fanchaos/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

namespace fanchaos {

namespace {

bool strictly_in(const ExactValue& v, const Interval& iv) {
  return v.compare(iv.lo) == Cmp::Greater && v.compare(iv.hi) == Cmp::Less;
}

bool avoided(const SpineSet* avoid, const ExactValue& v) {
  return avoid && v.is_corner() && avoid->index_of(v.corner_value());
}

constexpr double kMargin = 1e-9;

// Forward images of U's last coordinate: float intervals with their branch paths. Roots are the
// leaves of a DFS through U's constraints; every later node applies one segment to its parent.
struct Reach {
  struct Node {
    double lo, hi;
    std::uint32_t parent;
    std::uint32_t branch;
  };
  std::vector<Itinerary> roots;
  std::vector<Node> nodes;               // roots first, parent == index for roots
  std::vector<std::size_t> level_begin;  // nodes[level_begin[l] .. level_begin[l+1]) are at level l
  // different words often give the same interval (same exponent, same piece); keep the first
  std::set<std::pair<long long, long long>> seen;

  static std::pair<long long, long long> key(double lo, double hi) {
    return {std::llround(std::ldexp(lo, 40)), std::llround(std::ldexp(hi, 40))};
  }
  std::size_t levels() const { return level_begin.size() - 1; }
};

void root_dfs(const RelationSystem& sys, const std::vector<Interval>& cons, std::size_t k, double lo, double hi,
              Itinerary& it, Reach& r) {
  if (k + 1 >= cons.size()) {
    r.nodes.push_back({lo, hi, static_cast<std::uint32_t>(r.nodes.size()), 0});
    r.roots.push_back(it);
    return;
  }
  double nlo = cons[k + 1].lo.get_d(), nhi = cons[k + 1].hi.get_d();
  for (std::size_t b = 0; b < sys.branch_count(); ++b)
    for (const auto& s : sys.branches()[b].segments) {
      double dlo = std::max(lo, s.domain.lo.get_d()), dhi = std::min(hi, s.domain.hi.get_d());
      if (!(dlo < dhi)) continue;
      double ilo = std::max(s.rule.apply_approx(dlo), nlo), ihi = std::min(s.rule.apply_approx(dhi), nhi);
      if (!(ilo + 2 * kMargin < ihi)) continue;
      it.push_back(b);
      root_dfs(sys, cons, k + 1, ilo, ihi, it, r);
      it.pop_back();
    }
}

Reach init_reach(const RelationSystem& sys, const Cylinder& U) {
  Reach r;
  Itinerary it;
  if (U.constraints.empty()) {
    for (const auto& p : sys.space().pieces()) {
      r.nodes.push_back({p.lo.get_d(), p.hi.get_d(), static_cast<std::uint32_t>(r.nodes.size()), 0});
      r.roots.push_back({});
    }
  } else {
    for (const auto& p : sys.space().pieces()) {
      double lo = std::max(U.constraints[0].lo.get_d(), p.lo.get_d());
      double hi = std::min(U.constraints[0].hi.get_d(), p.hi.get_d());
      if (lo + 2 * kMargin < hi) root_dfs(sys, U.constraints, 0, lo, hi, it, r);
    }
  }
  r.level_begin = {0, r.nodes.size()};
  for (const auto& n : r.nodes) r.seen.insert(Reach::key(n.lo, n.hi));
  return r;
}

// Appends the next level; false when it is empty.
bool grow(const RelationSystem& sys, Reach& r) {
  std::size_t b0 = r.level_begin[r.levels() - 1], b1 = r.level_begin[r.levels()];
  for (std::size_t i = b0; i < b1; ++i)
    for (std::size_t b = 0; b < sys.branch_count(); ++b)
      for (const auto& s : sys.branches()[b].segments) {
        double dlo = std::max(r.nodes[i].lo, s.domain.lo.get_d());
        double dhi = std::min(r.nodes[i].hi, s.domain.hi.get_d());
        if (!(dlo + 2 * kMargin < dhi)) continue;
        double ilo = s.rule.apply_approx(dlo), ihi = s.rule.apply_approx(dhi);
        if (!r.seen.insert(Reach::key(ilo, ihi)).second) continue;
        r.nodes.push_back({ilo, ihi, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(b)});
      }
  r.level_begin.push_back(r.nodes.size());
  return r.level_begin[r.levels()] > b1;
}

// Full itinerary from U's first coordinate to node i.
Itinerary path_to(const Reach& r, std::size_t i) {
  Itinerary tail;
  while (i >= r.level_begin[1]) {
    tail.push_back(r.nodes[i].branch);
    i = r.nodes[i].parent;
  }
  Itinerary it = r.roots[i];
  it.insert(it.end(), tail.rbegin(), tail.rend());
  return it;
}

// Interval DFS through cons[k..]; on success `it` holds the branches and [lo, hi] the last interval.
bool continue_through(const RelationSystem& sys, const std::vector<Interval>& cons, std::size_t k, double& lo,
                      double& hi, Itinerary& it) {
  if (k >= cons.size()) return true;
  double nlo = cons[k].lo.get_d(), nhi = cons[k].hi.get_d();
  for (std::size_t b = 0; b < sys.branch_count(); ++b)
    for (const auto& s : sys.branches()[b].segments) {
      double dlo = std::max(lo, s.domain.lo.get_d()), dhi = std::min(hi, s.domain.hi.get_d());
      if (!(dlo < dhi)) continue;
      double ilo = std::max(s.rule.apply_approx(dlo), nlo), ihi = std::min(s.rule.apply_approx(dhi), nhi);
      if (!(ilo + 2 * kMargin < ihi)) continue;
      it.push_back(b);
      double a = ilo, c = ihi;
      if (continue_through(sys, cons, k + 1, a, c, it)) {
        lo = a;
        hi = c;
        return true;
      }
      it.pop_back();
    }
  return false;
}

// Exact continuation from v through cons[k..].
bool continue_exact(const RelationSystem& sys, const ExactValue& v, const std::vector<Interval>& cons, std::size_t k,
                    const SpineSet* avoid, Itinerary& it) {
  if (k >= cons.size()) return true;
  for (std::size_t b = 0; b < sys.branch_count(); ++b) {
    if (!in_domain(sys.branches()[b], v)) continue;
    ExactValue w = eval_branch(sys.branches()[b], v);
    if (avoided(avoid, w) || !strictly_in(w, cons[k])) continue;
    it.push_back(b);
    if (continue_exact(sys, w, cons, k + 1, avoid, it)) return true;
    it.pop_back();
  }
  return false;
}

// Non-corner rational strictly inside (lo, hi).
std::optional<Rational> pick_point(const RelationSystem& sys, double lo, double hi) {
  lo += kMargin;
  hi -= kMargin;
  if (!(lo < hi)) return std::nullopt;
  Rational a = from_double(lo), b = from_double(hi);
  for (int tries = 0; tries < 8 && a < b; ++tries) {
    Rational q = simplest_between(a, b);
    if (!sys.corner_index(q) && sys.space().piece_of(q)) return q;
    if (q - a > b - q) b = q;
    else a = q;
  }
  return std::nullopt;
}

// Pulls a rational end value back along `it`, then checks both cylinders exactly.
std::optional<TransitivityHit> realize(const RelationSystem& sys, const Cylinder& U, const Cylinder& V,
                                       const Itinerary& it, std::size_t n, double lo, double hi,
                                       const SpineSet* avoid) {
  auto q = pick_point(sys, lo, hi);
  if (!q) return std::nullopt;
  ExactValue w = sys.value(*q);
  try {
    for (std::size_t k = it.size(); k-- > 0;) w = branch_inverse(sys.branches()[it[k]], w);
  } catch (const DomainError&) {
    return std::nullopt;
  }
  SeqPoint p{w, it, {}, std::nullopt};
  auto coords = materialize(sys, p, it.size() + 1);
  for (std::size_t k = 0; k < U.constraints.size(); ++k)
    if (!strictly_in(coords[k], U.constraints[k])) return std::nullopt;
  for (std::size_t k = 0; k < V.constraints.size(); ++k)
    if (!strictly_in(coords[n + k], V.constraints[k])) return std::nullopt;
  for (const auto& c : coords)
    if (avoided(avoid, c)) return std::nullopt;
  return TransitivityHit{n, std::move(p)};
}

// Hits for every target V at once; U's forward images grow level by level until all are found.
std::vector<std::optional<TransitivityHit>> search_many(const RelationSystem& sys, const Cylinder& U,
                                                        const std::vector<const Cylinder*>& targets,
                                                        std::size_t budget, const SpineSet* avoid) {
  std::vector<std::optional<TransitivityHit>> out(targets.size());
  if (!U.trace) return out;
  auto zu = materialize(sys, *U.trace, std::max<std::size_t>(1, U.constraints.size()));
  std::size_t d = zu.size();

  struct Pending {
    double lo, hi;
    std::size_t idx;
  };
  std::vector<Pending> pending;
  double widest = 0.0;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto& vc = targets[t]->constraints;
    if (!targets[t]->trace) continue;
    if (vc.empty()) {
      out[t] = TransitivityHit{0, *U.trace};
      continue;
    }
    // n inside U's own trace
    for (std::size_t n = 0; n + 1 < d && !out[t]; ++n) {
      bool ok = true;
      std::size_t k = 0;
      for (; k < vc.size() && n + k < d && ok; ++k) ok = strictly_in(zu[n + k], vc[k]);
      if (!ok) continue;
      Itinerary more;
      if (continue_exact(sys, zu[d - 1], vc, k, avoid, more)) out[t] = TransitivityHit{n, extend(*U.trace, more)};
    }
    if (out[t]) continue;
    pending.push_back({vc[0].lo.get_d(), vc[0].hi.get_d(), t});
    widest = std::max(widest, pending.back().hi - pending.back().lo);
  }
  std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) { return a.lo < b.lo; });

  // n = d - 1 + level: a forward image of U's last coordinate meets V_1, then continues through V
  Reach reach = init_reach(sys, U);
  std::size_t left = pending.size();
  for (std::size_t lv = 0; lv <= budget && left > 0; ++lv) {
    if (lv > 0 && !grow(sys, reach)) break;
    for (std::size_t i = reach.level_begin[lv]; i < reach.level_begin[lv + 1] && left > 0; ++i) {
      const auto& node = reach.nodes[i];
      auto it = std::lower_bound(pending.begin(), pending.end(), node.lo - widest,
                                 [](const Pending& p, double x) { return p.lo < x; });
      for (; it != pending.end() && it->lo < node.hi; ++it) {
        if (out[it->idx]) continue;
        double lo = std::max(node.lo, it->lo), hi = std::min(node.hi, it->hi);
        if (!(lo + 2 * kMargin < hi)) continue;
        const Cylinder& V = *targets[it->idx];
        Itinerary path = path_to(reach, i);
        if (!continue_through(sys, V.constraints, 1, lo, hi, path)) continue;
        if ((out[it->idx] = realize(sys, U, V, path, d - 1 + lv, lo, hi, avoid))) --left;
      }
    }
  }
  return out;
}

}  // namespace

std::optional<TransitivityHit> transitivity_search(const RelationSystem& sys, const Cylinder& U, const Cylinder& V,
                                                   std::size_t budget, const SpineSet* avoid) {
  if (!U.trace || !V.trace) return std::nullopt;
  return search_many(sys, U, {&V}, budget, avoid)[0];
}

Verdict transitivity_check(const RelationSystem& sys, const std::vector<Cylinder>& base, std::size_t budget,
                           Exec exec, const SpineSet* avoid) {
  std::size_t N = base.size();
  std::vector<const Cylinder*> targets;
  for (const auto& c : base) targets.push_back(&c);
  std::vector<std::vector<long>> hit_n(N, std::vector<long>(N, -1));
  for_each_index(N, exec, [&](std::size_t u) {
    auto hits = search_many(sys, base[u], targets, budget, avoid);
    for (std::size_t v = 0; v < N; ++v)
      if (hits[v]) hit_n[u][v] = static_cast<long>(hits[v]->n);
  });

  Verdict out{"transitive", Status::Positive, nlohmann::json::object()};
  std::vector<std::pair<std::size_t, std::size_t>> missing;
  long max_n = 0;
  for (std::size_t u = 0; u < N; ++u)
    for (std::size_t v = 0; v < N; ++v) {
      if (hit_n[u][v] < 0) missing.push_back({u, v});
      else max_n = std::max(max_n, hit_n[u][v]);
    }
  out.evidence["cylinders"] = N;
  out.evidence["pairs"] = N * N;
  out.evidence["horizon"] = budget;
  out.evidence["reached"] = N * N - missing.size();
  out.evidence["max_n"] = max_n;
  if (missing.empty() && N > 0) return out;

  out.status = Status::Inconclusive;
  out.evidence["exhausted"] = missing.size();
  nlohmann::json ex = nlohmann::json::array();
  for (std::size_t i = 0; i < missing.size() && i < 5; ++i) ex.push_back({missing[i].first, missing[i].second});
  out.evidence["exhausted_examples"] = ex;
  if (auto cert = rank_one_certificate(sys, base, missing)) {
    out.status = Status::Negative;
    out.evidence["certificate"] = *cert;
  }
  return out;
}

namespace {

struct Lattice {
  int rank = 0;
  int ga = 0, gb = 0;  // generator, oriented so that 2^ga 3^gb > 1
};

std::optional<Lattice> step_lattice(const RelationSystem& sys) {
  if (sys.family() != Family::Power) return std::nullopt;
  Lattice L;
  for (const auto& b : sys.branches())
    for (const auto& s : b.segments) {
      if (s.da == 0 && s.db == 0) continue;
      if (L.rank == 0) {
        int g = std::gcd(std::abs(s.da), std::abs(s.db));
        L = {1, s.da / g, s.db / g};
      } else if (s.da * L.gb != s.db * L.ga) {
        return std::nullopt;
      }
    }
  if (L.rank == 1 && L.ga * std::log(2.0) + L.gb * std::log(3.0) < 0) {
    L.ga = -L.ga;
    L.gb = -L.gb;
  }
  return L;
}

// Does u^(E^k) for u in [ulo, uhi] miss [vlo, vhi] for every integer k? Returns K on success.
std::optional<int> certify_pair(const Lattice& L, const Rational& ulo, const Rational& uhi, const Rational& vlo,
                                const Rational& vhi, std::size_t& comparisons) {
  auto below = [&](const Rational& u, int k, const Rational& c) {
    ++comparisons;
    return ExactValue::cantor(u, k * L.ga, k * L.gb, 0).compare(c) == Cmp::Less;
  };
  auto above = [&](const Rational& u, int k, const Rational& c) {
    ++comparisons;
    return ExactValue::cantor(u, k * L.ga, k * L.gb, 0).compare(c) == Cmp::Greater;
  };
  if (L.rank == 0) {
    if (below(uhi, 0, vlo) || above(ulo, 0, vhi)) return 0;
    return std::nullopt;
  }
  // E > 1: large k pushes values to 0, small k pushes them to 1
  int K = 1;
  for (; K <= 64; ++K)
    if (below(uhi, K, vlo) && above(ulo, -K, vhi)) break;
  if (K > 64) return std::nullopt;
  for (int k = -K + 1; k < K; ++k)
    if (!below(uhi, k, vlo) && !above(ulo, k, vhi)) return std::nullopt;
  return K;
}

}  // namespace

std::optional<nlohmann::json> rank_one_certificate(const RelationSystem& sys, const std::vector<Cylinder>& base,
                                                   const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  auto L = step_lattice(sys);
  if (!L) return std::nullopt;
  const auto& pieces = sys.space().pieces();
  struct Local {
    Rational lo, hi;
    std::size_t piece;
  };
  auto localize = [&](const Cylinder& c) {
    std::vector<Local> out;
    for (auto [lo, hi] : first_coordinate_hull(sys, c)) {
      for (std::size_t p = 0; p < pieces.size(); ++p) {
        double plo = pieces[p].lo.get_d(), phi = pieces[p].hi.get_d();
        if (hi < plo || lo > phi) continue;
        Rational a = from_double(std::max(lo, plo)) - pieces[p].lo;
        Rational b = from_double(std::min(hi, phi)) - pieces[p].lo;
        out.push_back({a, b, p});
      }
    }
    return out;
  };
  std::unordered_map<std::size_t, std::vector<Local>> hulls;
  auto hull_of = [&](std::size_t i) -> const std::vector<Local>& {
    auto it = hulls.find(i);
    if (it == hulls.end()) it = hulls.emplace(i, localize(base[i])).first;
    return it->second;
  };

  for (auto [u, v] : pairs) {
    const auto& hu = hull_of(u);
    const auto& hv = hull_of(v);
    if (hu.empty()) continue;
    bool all = true;
    int Kmax = 0;
    std::size_t comparisons = 0;
    for (const auto& a : hu) {
      if (a.lo <= 0 || a.hi >= 1) {
        all = false;
        break;
      }
      for (const auto& b : hv) {
        auto K = certify_pair(*L, a.lo, a.hi, b.lo, b.hi, comparisons);
        if (!K) {
          all = false;
          break;
        }
        Kmax = std::max(Kmax, *K);
      }
      if (!all) break;
    }
    if (!all) continue;
    nlohmann::json cert;
    cert["kind"] = "rank-one exponent lattice";
    cert["generator"] = {L->ga, L->gb};
    cert["U"] = u;
    cert["V"] = v;
    auto cyl = [&](const Cylinder& c) {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& iv : c.constraints) j.push_back("(" + to_string(iv.lo) + "," + to_string(iv.hi) + ")");
      return j;
    };
    cert["U_cylinder"] = cyl(base[u]);
    cert["V_cylinder"] = cyl(base[v]);
    nlohmann::json uh = nlohmann::json::array(), vh = nlohmann::json::array();
    for (const auto& a : hu) uh.push_back({{"piece", a.piece}, {"lo", to_string(a.lo)}, {"hi", to_string(a.hi)}});
    for (const auto& b : hv) vh.push_back({{"piece", b.piece}, {"lo", to_string(b.lo)}, {"hi", to_string(b.hi)}});
    cert["U_hull_local"] = uh;
    cert["V_hull_local"] = vh;
    cert["K"] = Kmax;
    cert["exact_comparisons"] = comparisons;
    return cert;
  }
  return std::nullopt;
}

ImpressionDensity impression_density(const RelationSystem& sys, const ExactValue& x, const Rational& epsilon,
                                     std::size_t budget, std::optional<int> exponent_bound) {
  auto imp = forward_impression(sys, x, budget, exponent_bound);
  auto L = step_lattice(sys);
  bool corners_only = std::all_of(imp.begin(), imp.end(), [](const auto& e) { return e.value.is_corner(); });
  double eps = epsilon.get_d();

  ImpressionDensity out;
  out.points = imp.size();
  out.covered = true;
  const auto& pieces = sys.space().pieces();
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    std::vector<const ExactValue*> vals;
    for (const auto& e : imp) {
      auto pi = sys.space().piece_of(e.value);
      if (pi && *pi == p) vals.push_back(&e.value);
    }
    std::sort(vals.begin(), vals.end(), [](auto a, auto b) { return a->approx() < b->approx(); });
    double L0 = pieces[p].lo.get_d(), R0 = pieces[p].hi.get_d();
    std::string lo_s = to_string(pieces[p].lo), hi_s = to_string(pieces[p].hi);
    if (vals.empty()) {
      out.covered = false;
      out.gaps.push_back({L0, R0, corners_only, lo_s, hi_s});
      continue;
    }
    if (vals.front()->approx() - L0 > eps) {
      out.covered = false;
      out.gaps.push_back({L0, vals.front()->approx(), corners_only, lo_s, vals.front()->exact_string()});
    }
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
      const ExactValue& a = *vals[i];
      const ExactValue& b = *vals[i + 1];
      if (b.approx() - a.approx() <= 2 * eps) continue;
      out.covered = false;
      bool exact = corners_only;
      if (!exact && L && L->rank == 1 && a.kind() == ExactValue::Kind::Cantor && b.kind() == a.kind() &&
          a.base() == b.base() && a.anchor() == b.anchor()) {
        int da = a.exp2() - b.exp2(), db = a.exp3() - b.exp3();
        exact = (da == L->ga && db == L->gb) || (da == -L->ga && db == -L->gb);
      }
      out.gaps.push_back({a.approx(), b.approx(), exact, a.exact_string(), b.exact_string()});
    }
    if (R0 - vals.back()->approx() > eps) {
      out.covered = false;
      out.gaps.push_back({vals.back()->approx(), R0, corners_only, vals.back()->exact_string(), hi_s});
    }
  }
  std::stable_sort(out.gaps.begin(), out.gaps.end(),
                   [](const ImpressionGap& a, const ImpressionGap& b) { return a.hi - a.lo > b.hi - b.lo; });
  return out;
}

}  // namespace fanchaos
