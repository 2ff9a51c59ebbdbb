#include "fanchaos/diagnostics.hpp"

#include "fanchaos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace fanchaos {

namespace {

// Branch factor at v (scale systems); 0 when v is outside the branch domain.
double factor_at(const BranchMap& b, const ExactValue& v) {
  const Segment* s = find_domain_segment(b, v);
  return s ? s->rule.factor.get_d() : 0.0;
}

// Index of a branch that contracts on the whole space, for scale systems.
std::optional<std::size_t> contracting_branch(const RelationSystem& sys) {
  for (std::size_t i = 0; i < sys.branch_count(); ++i) {
    const auto& b = sys.branches()[i];
    bool all = std::all_of(b.segments.begin(), b.segments.end(), [](const Segment& s) { return s.rule.factor < 1; });
    if (all) return i;
  }
  return std::nullopt;
}

// Coordinates of a lazily grown tail: trace coordinates, then `next` decides each branch.
struct Tail {
  const RelationSystem& sys;
  std::vector<ExactValue> coords;
  Itinerary itinerary;
  std::function<std::optional<std::size_t>(std::size_t, const ExactValue&)> next;

  // Grows to at least n coordinates; false when the chosen branch is not applicable.
  bool grow(std::size_t n) {
    while (coords.size() < n) {
      auto b = next(coords.size(), coords.back());
      if (!b || !in_domain(sys.branches()[*b], coords.back())) return false;
      coords.push_back(eval_branch(sys.branches()[*b], coords.back()));
      itinerary.push_back(*b);
    }
    return true;
  }

  SeqPoint point(const SeqPoint& trace) const {
    SeqPoint p = trace;
    p.fwd.insert(p.fwd.end(), itinerary.begin(), itinerary.end());
    return p;
  }
};

std::vector<ExactValue> window_of(const std::vector<ExactValue>& c, std::size_t m, std::size_t w) {
  return {c.begin() + static_cast<long>(m), c.begin() + static_cast<long>(std::min(c.size(), m + w))};
}

// Branch pairs (i, j) for power systems, "f1"/"f2" first.
std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const RelationSystem& sys) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  auto f1 = sys.branch_index("f1"), f2 = sys.branch_index("f2");
  if (f1 && f2) out.push_back({*f1, *f2});
  for (std::size_t i = 0; i < sys.branch_count(); ++i)
    for (std::size_t j = 0; j < sys.branch_count(); ++j)
      if (i != j && !(f1 && f2 && i == *f1 && j == *f2)) out.push_back({i, j});
  return out;
}

Tail constant_tail(const RelationSystem& sys, const std::vector<ExactValue>& trace, std::size_t i) {
  return Tail{sys, trace, {}, [i](std::size_t, const ExactValue&) { return std::optional<std::size_t>(i); }};
}

Tail swap_tail(const RelationSystem& sys, const std::vector<ExactValue>& trace, std::size_t i, std::size_t j) {
  std::size_t n = trace.size();
  return Tail{sys, trace, {}, [i, j, n](std::size_t k, const ExactValue&) {
                return std::optional<std::size_t>(k == n ? j : i);
              }};
}

Tail climb_tail(const RelationSystem& sys, const std::vector<ExactValue>& trace) {
  return Tail{sys, trace, {}, [&sys](std::size_t, const ExactValue& v) -> std::optional<std::size_t> {
                std::optional<std::size_t> best;
                double bf = 0.0;
                for (std::size_t b = 0; b < sys.branch_count(); ++b) {
                  double f = factor_at(sys.branches()[b], v);
                  if (f > bf) {
                    bf = f;
                    best = b;
                  }
                }
                return best;
              }};
}

double nearest_corner(const RelationSystem& sys, double x) {
  double best = std::numeric_limits<double>::infinity(), at = x;
  for (const auto& c : sys.corners()) {
    double d = std::abs(c.get_d() - x);
    if (d < best) {
      best = d;
      at = c.get_d();
    }
  }
  return at;
}

constexpr std::size_t kClimbLimit = 100000;

}  // namespace

Itinerary greedy_climb(const RelationSystem& sys, const ExactValue& start, std::size_t steps) {
  Tail t = climb_tail(sys, {start});
  t.grow(steps + 1);
  return t.itinerary;
}

SdicWitness sdic_witness_wrt_spine(const RelationSystem& sys, const SpineSet& s, const Cylinder& c,
                                   std::size_t window) {
  if (!c.trace) throw NoWitness("cylinder has no trace point");
  std::size_t n = std::max<std::size_t>(1, c.constraints.size());
  auto trace = materialize(sys, *c.trace, n);
  if (trace.back().is_corner()) throw NoWitness("trace ends at a corner");
  double diam = sys.space().diameter_approx();

  auto measure = [&](const Tail& x, const Tail& y, std::size_t m) {
    SdicWitness w{x.point(*c.trace), y.point(*c.trace), m, 0, 0, 0};
    auto X = window_of(x.coords, m, window), Y = window_of(y.coords, m, window);
    w.pure = product_metric(X, Y, window, diam).lower;
    w.spine = spine_distance(s, X, window, diam).bounds.lower + spine_distance(s, Y, window, diam).bounds.lower;
    w.sep = std::min(w.pure, w.spine);
    return w;
  };

  std::optional<SdicWitness> best;
  auto keep = [&](SdicWitness w) {
    if (!best || w.sep > best->sep) best = std::move(w);
  };

  if (sys.family() == Family::Scale) {
    auto r = contracting_branch(sys);
    if (!r) throw NoWitness("no contracting branch");
    Tail x = constant_tail(sys, trace, *r), y = climb_tail(sys, trace);
    for (std::size_t m = n; m < n + kClimbLimit; ++m) {
      if (!x.grow(m + window) || !y.grow(m + window)) break;
      // cheap first-coordinate screen before the full bounds
      if (std::abs(x.coords[m].approx() - y.coords[m].approx()) <= 0.5) continue;
      auto w = measure(x, y, m);
      if (w.sep > 0.25) return w;
      keep(std::move(w));
    }
    if (best) return *best;
    throw NoWitness("climb did not separate");
  }

  constexpr std::size_t K = 100;
  for (auto [i, j] : candidate_pairs(sys)) {
    Tail x = constant_tail(sys, trace, i), y = swap_tail(sys, trace, i, j);
    if (!x.grow(n + K + window) || !y.grow(n + K + window + 1)) continue;
    double cx = nearest_corner(sys, x.coords.back().approx());
    double cy = nearest_corner(sys, y.coords.back().approx());
    // k0: from here on f_i^k(x_n) and f_i^k(f_j(x_n)) stay within 1/10 of their limits
    std::optional<std::size_t> k0;
    for (std::size_t k = K; k >= 1; --k) {
      bool near = std::abs(x.coords[n - 1 + k].approx() - cx) < 0.1 && std::abs(y.coords[n + k].approx() - cy) < 0.1;
      if (!near) break;
      k0 = k;
    }
    if (!k0) continue;
    auto w = measure(x, y, n + *k0);
    if (w.sep > 0.25) return w;
    keep(std::move(w));
  }
  if (best) return *best;
  throw NoWitness("no branch pair applies along the trace");
}

namespace {

struct SweepHit {
  bool ok = false;
  std::size_t m = 0;
  double sep = 0.0;
  std::string note;
};

SweepHit sdic_on_cylinder(const RelationSystem& sys, const Cylinder& c, const SdicOptions& opt) {
  SweepHit hit;
  if (!c.trace) return hit;
  std::size_t n = std::max<std::size_t>(1, c.constraints.size());
  auto trace = materialize(sys, *c.trace, n);
  double eps = opt.epsilon.get_d(), diam = sys.space().diameter_approx();

  auto scan = [&](Tail& x, Tail& y, const std::string& note) {
    for (std::size_t m = 0; m <= opt.n_max; ++m) {
      if (!x.grow(m + opt.window) || !y.grow(m + opt.window)) return false;
      auto d = product_metric(window_of(x.coords, m, opt.window), window_of(y.coords, m, opt.window), opt.window,
                              diam);
      if (d.lower > eps) {
        hit = {true, m, d.lower, note};
        return true;
      }
    }
    return false;
  };

  if (sys.family() == Family::Scale) {
    auto r = contracting_branch(sys);
    if (!r) return hit;
    Tail x = constant_tail(sys, trace, *r), y = climb_tail(sys, trace);
    scan(x, y, "contract/climb");
    return hit;
  }
  for (auto [i, j] : candidate_pairs(sys)) {
    Tail x = constant_tail(sys, trace, i), y = swap_tail(sys, trace, i, j);
    if (scan(x, y, sys.branches()[i].name + "/" + sys.branches()[j].name)) return hit;
  }
  return hit;
}

Verdict summarize(const std::string& kind, const std::vector<SweepHit>& hits, double eps) {
  Verdict v{kind, Status::Positive, nlohmann::json::object()};
  std::vector<std::size_t> failed;
  std::size_t max_m = 0;
  double min_sep = std::numeric_limits<double>::infinity();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (!hits[i].ok) {
      failed.push_back(i);
      continue;
    }
    max_m = std::max(max_m, hits[i].m);
    min_sep = std::min(min_sep, hits[i].sep);
    rows.push_back({{"cylinder", i}, {"m", hits[i].m}, {"sep", hits[i].sep}, {"pair", hits[i].note}});
  }
  v.evidence["epsilon"] = eps;
  v.evidence["cylinders"] = hits.size();
  v.evidence["witnessed"] = hits.size() - failed.size();
  v.evidence["max_m"] = max_m;
  if (!hits.empty() && failed.size() < hits.size()) v.evidence["min_separation"] = min_sep;
  v.evidence["witnesses"] = rows;
  if (!failed.empty() || hits.empty()) {
    v.status = Status::Inconclusive;
    v.evidence["unwitnessed"] = failed;
  }
  return v;
}

}  // namespace

Verdict empirical_sdic(const RelationSystem& sys, const std::vector<Cylinder>& base, const SdicOptions& opt,
                       Exec exec) {
  std::vector<SweepHit> hits(base.size());
  for_each_index(base.size(), exec, [&](std::size_t i) { hits[i] = sdic_on_cylinder(sys, base[i], opt); });
  return summarize("sdic", hits, opt.epsilon.get_d());
}

Verdict spine_sdic(const RelationSystem& sys, const SpineSet& s, const std::vector<Cylinder>& base,
                   const SdicOptions& opt, Exec exec) {
  std::vector<SweepHit> hits(base.size());
  double eps = opt.epsilon.get_d();
  for_each_index(base.size(), exec, [&](std::size_t i) {
    try {
      auto w = sdic_witness_wrt_spine(sys, s, base[i], opt.window);
      if (w.sep > eps && w.m <= opt.n_max) hits[i] = {true, w.m, w.sep, "spine"};
    } catch (const NoWitness&) {
    }
  });
  return summarize("sdic", hits, eps);
}

}  // namespace fanchaos
