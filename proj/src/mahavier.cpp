#include "fanchaos/mahavier.hpp"

#include "fanchaos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

namespace fanchaos {

std::size_t SeqPoint::depth() const {
  if (infinite()) return std::numeric_limits<std::size_t>::max();
  return fwd.size() + 1;
}

std::size_t SeqPoint::branch_at(std::size_t i) const {
  if (i < fwd.size()) return fwd[i];
  if (cycle.empty()) throw DepthError("itinerary too short");
  return cycle[(i - fwd.size()) % cycle.size()];
}

ExactValue coordinate(const RelationSystem& sys, const SeqPoint& p, long i) {
  const auto& br = sys.branches();
  ExactValue v = p.start;
  if (i >= 1) {
    for (long k = 0; k + 1 < i; ++k) v = eval_branch(br[p.branch_at(static_cast<std::size_t>(k))], v);
    return v;
  }
  std::size_t back = static_cast<std::size_t>(1 - i);
  if (!p.bwd || p.bwd->size() < back) throw DepthError("backward itinerary too short");
  const auto& b = *p.bwd;
  for (std::size_t k = 0; k < back; ++k) v = branch_inverse(br[b[b.size() - 1 - k]], v);
  return v;
}

std::vector<ExactValue> materialize(const RelationSystem& sys, const SeqPoint& p, std::size_t n) {
  if (n > p.depth()) throw DepthError("point has only " + std::to_string(p.depth()) + " coordinates");
  std::vector<ExactValue> out;
  out.reserve(n);
  if (n == 0) return out;
  out.push_back(p.start);
  for (std::size_t k = 1; k < n; ++k) out.push_back(eval_branch(sys.branches()[p.branch_at(k - 1)], out.back()));
  return out;
}

SeqPoint shift(const RelationSystem& sys, const SeqPoint& p) {
  if (p.depth() < 2) throw DepthError("cannot shift a one-coordinate point");
  std::size_t b = p.branch_at(0);
  SeqPoint q{eval_branch(sys.branches()[b], p.start), p.fwd, p.cycle, p.bwd};
  if (!q.fwd.empty()) {
    q.fwd.erase(q.fwd.begin());
  } else {
    std::rotate(q.cycle.begin(), q.cycle.begin() + 1, q.cycle.end());
  }
  if (q.bwd) q.bwd->push_back(b);
  return q;
}

SeqPoint shift_n(const RelationSystem& sys, SeqPoint p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) p = shift(sys, p);
  return p;
}

SeqPoint extend(const SeqPoint& p, const Itinerary& more) {
  if (p.infinite()) throw std::logic_error("extend on a periodic-tailed point");
  SeqPoint q = p;
  q.fwd.insert(q.fwd.end(), more.begin(), more.end());
  return q;
}

double coordinate_gap(const ExactValue& x, const ExactValue& y) {
  if (x == y) return 0.0;
  double g = std::abs(x.approx() - y.approx()) - x.err() - y.err();
  return g > 0.0 ? g : 0.0;
}

Bounds product_metric(const std::vector<ExactValue>& p, const std::vector<ExactValue>& q, std::size_t depth,
                      double diameter) {
  std::size_t used = std::min({depth, p.size(), q.size()});
  Bounds b;
  double w = 0.5;
  for (std::size_t k = 0; k < used; ++k, w *= 0.5) {
    b.lower = std::max(b.lower, coordinate_gap(p[k], q[k]) * w);
    double hi = p[k] == q[k] ? 0.0 : (std::abs(p[k].approx() - q[k].approx()) + p[k].err() + q[k].err());
    b.upper = std::max(b.upper, hi * w);
  }
  b.upper += std::ldexp(diameter, -static_cast<int>(used));
  return b;
}

Bounds product_metric(const RelationSystem& sys, const SeqPoint& p, const SeqPoint& q, std::size_t depth) {
  std::size_t n = std::min({depth, p.depth(), q.depth()});
  return product_metric(materialize(sys, p, n), materialize(sys, q, n), n, sys.space().diameter_approx());
}

bool is_path(const RelationSystem& sys, const FinitePath& path) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (relation_member(sys, path[i], path[i + 1]).empty()) return false;
  return true;
}

Itinerary path_itinerary(const RelationSystem& sys, const FinitePath& path) {
  Itinerary it;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto m = relation_member(sys, path[i], path[i + 1]);
    if (m.empty())
      throw NotInRelation("(" + path[i].exact_string() + ", " + path[i + 1].exact_string() + ") is not in F");
    it.push_back(m.front());
  }
  return it;
}

FinitePath path_from(const RelationSystem& sys, const ExactValue& start, const Itinerary& it) {
  FinitePath out{start};
  for (auto b : it) out.push_back(eval_branch(sys.branches()[b], out.back()));
  return out;
}

FinitePath star(const FinitePath& x, const FinitePath& y) {
  if (x.empty() || y.empty() || x.back() != y.front()) throw JoinError("star: last of x differs from first of y");
  FinitePath out = x;
  out.insert(out.end(), y.begin() + 1, y.end());
  return out;
}

namespace {

// Return recipes for the four-leg system, keyed by the left end of x's piece and the piece jump y - x.
std::optional<FinitePath> four_leg_return(const RelationSystem& sys, const ExactValue& x, const ExactValue& y) {
  auto px = sys.space().piece_of(x);
  auto py = sys.space().piece_of(y);
  if (!px || !py) return std::nullopt;
  Rational lo = sys.space().pieces()[*px].lo;
  Rational jump = sys.space().pieces()[*py].lo - lo;
  std::vector<std::string> names;
  if (jump == 0) {
    names = {"f2", "f1", "f2"};
  } else if (jump == 2) {
    names = {lo == 2 ? "f3" : "f2"};
  } else if (jump == -2) {
    names = {lo == 4 ? "f3" : "f2"};
  } else {
    return std::nullopt;
  }
  Itinerary it;
  for (const auto& n : names) {
    auto b = sys.branch_index(n);
    if (!b) return std::nullopt;
    it.push_back(*b);
  }
  FinitePath path{y};
  for (auto b : it) {
    if (!in_domain(sys.branches()[b], path.back())) return std::nullopt;
    path.push_back(eval_branch(sys.branches()[b], path.back()));
  }
  if (path.back() != x) return std::nullopt;
  return path;
}

}  // namespace

std::optional<FinitePath> return_path(const RelationSystem& sys, const ExactValue& x, const ExactValue& y,
                                      SearchLimits lim) {
  if (relation_member(sys, x, y).empty())
    throw NotInRelation("(" + x.exact_string() + ", " + y.exact_string() + ") is not in F");
  if (sys.preset_tag() == "devaney4")
    if (auto p = four_leg_return(sys, x, y)) return p;

  // Exact BFS from y; parents index into `nodes`.
  std::vector<ExactValue> nodes{y};
  std::vector<std::size_t> parent{0};
  std::unordered_map<ExactValue, std::size_t, ExactValueHash> seen{{y, 0}};
  std::size_t level_begin = 0, level_end = 1;
  auto unwind = [&](std::size_t i) {
    FinitePath path;
    for (;; i = parent[i]) {
      path.push_back(nodes[i]);
      if (i == 0) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  if (y == x) return FinitePath{y};
  for (std::size_t d = 0; d < lim.depth && level_begin < level_end; ++d) {
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (const auto& b : sys.branches()) {
        if (!in_domain(b, nodes[i])) continue;
        ExactValue w = eval_branch(b, nodes[i]);
        if (seen.count(w)) continue;
        nodes.push_back(w);
        parent.push_back(i);
        seen.emplace(w, nodes.size() - 1);
        if (w == x) return unwind(nodes.size() - 1);
        if (nodes.size() >= lim.frontier) return std::nullopt;
      }
    }
    level_begin = level_end;
    level_end = nodes.size();
  }
  return std::nullopt;
}

bool in_cylinder(const RelationSystem& sys, const SeqPoint& p, const std::vector<Interval>& constraints) {
  if (constraints.empty()) return true;
  if (p.depth() < constraints.size()) return false;
  auto coords = materialize(sys, p, constraints.size());
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    if (coords[k].compare(constraints[k].lo) != Cmp::Greater) return false;
    if (coords[k].compare(constraints[k].hi) != Cmp::Less) return false;
  }
  return true;
}

namespace {

constexpr double kMargin = 1e-9;

struct TraceSearch {
  const RelationSystem& sys;
  const std::vector<Interval>& cons;
  std::vector<const Segment*> segs;
  Itinerary branches;
  std::optional<SeqPoint> found;

  // Non-corner rational strictly inside (lo, hi), or nullopt.
  std::optional<Rational> pick(double lo, double hi) const {
    lo += kMargin;
    hi -= kMargin;
    if (!(lo < hi)) return std::nullopt;
    Rational a = from_double(lo), b = from_double(hi);
    for (int tries = 0; tries < 8 && a < b; ++tries) {
      Rational q = simplest_between(a, b);
      if (!sys.corner_index(q) && sys.space().piece_of(q)) return q;
      // corner: retry on the wider side
      if (q - a > b - q) b = q;
      else a = q;
    }
    return std::nullopt;
  }

  void finish(double lo, double hi) {
    auto q = pick(lo, hi);
    if (!q) return;
    ExactValue w = sys.value(*q);
    try {
      for (std::size_t k = branches.size(); k-- > 0;) w = branch_inverse(sys.branches()[branches[k]], w);
    } catch (const DomainError&) {
      return;
    }
    SeqPoint p{w, branches, {}, std::nullopt};
    if (p.start.is_corner()) return;
    if (in_cylinder(sys, p, cons)) found = std::move(p);
  }

  void dfs(std::size_t k, double lo, double hi) {
    if (found) return;
    if (k + 1 == cons.size()) {
      finish(lo, hi);
      return;
    }
    const auto& next = cons[k + 1];
    double nlo = next.lo.get_d(), nhi = next.hi.get_d();
    for (std::size_t bi = 0; bi < sys.branch_count() && !found; ++bi) {
      for (const auto& s : sys.branches()[bi].segments) {
        double dlo = std::max(lo, s.domain.lo.get_d()), dhi = std::min(hi, s.domain.hi.get_d());
        if (!(dlo < dhi)) continue;
        double ilo = std::max(s.rule.apply_approx(dlo), nlo), ihi = std::min(s.rule.apply_approx(dhi), nhi);
        if (!(ilo + 2 * kMargin < ihi)) continue;
        branches.push_back(bi);
        dfs(k + 1, ilo, ihi);
        branches.pop_back();
        if (found) return;
      }
    }
  }
};

}  // namespace

std::optional<SeqPoint> find_trace(const RelationSystem& sys, const std::vector<Interval>& constraints) {
  if (constraints.empty()) {
    // whole-space cylinder: any non-corner point
    for (const auto& piece : sys.space().pieces()) {
      TraceSearch ts{sys, constraints, {}, {}, std::nullopt};
      if (auto q = ts.pick(piece.lo.get_d(), piece.hi.get_d())) return SeqPoint{sys.value(*q), {}, {}, std::nullopt};
    }
    return std::nullopt;
  }
  TraceSearch ts{sys, constraints, {}, {}, std::nullopt};
  double ulo = constraints[0].lo.get_d(), uhi = constraints[0].hi.get_d();
  for (const auto& piece : sys.space().pieces()) {
    double lo = std::max(ulo, piece.lo.get_d()), hi = std::min(uhi, piece.hi.get_d());
    if (!(lo + 2 * kMargin < hi)) continue;
    ts.dfs(0, lo, hi);
    if (ts.found) break;
  }
  return ts.found;
}

std::optional<SeqPoint> periodic_from_cylinder(const RelationSystem& sys, const Cylinder& c, SearchLimits lim) {
  if (!c.trace) return std::nullopt;
  std::size_t d = std::max<std::size_t>(c.constraints.size(), 1);
  FinitePath z = materialize(sys, *c.trace, d);
  FinitePath loop = z;
  if (d == 1) {
    std::optional<FinitePath> back;
    for (const auto& b : sys.branches()) {
      if (!in_domain(b, z[0])) continue;
      ExactValue y = eval_branch(b, z[0]);
      if ((back = return_path(sys, z[0], y, lim))) {
        loop = star(FinitePath{z[0], y}, *back);
        break;
      }
    }
    if (!back) return std::nullopt;
  } else {
    for (std::size_t k = d - 1; k-- > 0;) {
      auto back = return_path(sys, z[k], z[k + 1], lim);
      if (!back) return std::nullopt;
      loop = star(loop, *back);
    }
  }
  return SeqPoint{z[0], {}, path_itinerary(sys, loop), std::nullopt};
}

std::size_t verified_period(const RelationSystem& sys, const SeqPoint& q) {
  if (!q.infinite()) return 0;
  std::size_t L = q.fwd.size() + q.cycle.size();
  auto coords = materialize(sys, q, 2 * L + 1);
  for (std::size_t p = 1; p <= L; ++p) {
    bool ok = true;
    for (std::size_t k = 0; k + p < coords.size() && ok; ++k) ok = coords[k] == coords[k + p];
    if (ok) return p;
  }
  return 0;
}

std::vector<ImpressionEntry> forward_impression(const RelationSystem& sys, const ExactValue& x, std::size_t budget,
                                                std::optional<int> exponent_bound, std::size_t cap) {
  auto admissible = [&](const ExactValue& v) {
    if (!exponent_bound || v.kind() != ExactValue::Kind::Cantor) return true;
    return std::abs(v.exp2()) <= *exponent_bound && std::abs(v.exp3()) <= *exponent_bound;
  };
  std::vector<ImpressionEntry> out{{x, 0}};
  std::unordered_map<ExactValue, std::size_t, ExactValueHash> seen{{x, 0}};
  std::size_t begin = 0;
  for (std::size_t level = 1; level <= budget && begin < out.size(); ++level) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& b : sys.branches()) {
        if (!in_domain(b, out[i].value)) continue;
        ExactValue w = eval_branch(b, out[i].value);
        if (!admissible(w) || seen.count(w)) continue;
        seen.emplace(w, out.size());
        out.push_back({std::move(w), level});
        if (out.size() >= cap) return out;
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace fanchaos
