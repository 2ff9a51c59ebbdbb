#include "fanchaos/quotient.hpp"

#include "fanchaos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace fanchaos {

SpineSet SpineSet::make(const RelationSystem& sys, std::vector<Rational> alphabet) {
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  if (alphabet.empty()) throw ConfigError("spine alphabet is empty");
  SpineSet s;
  s.alphabet = alphabet;
  s.next.resize(alphabet.size());
  for (const auto& c : alphabet)
    if (!sys.corner_index(c)) throw ConfigError("spine symbol " + to_string(c) + " is not a corner");
  for (const auto& e : sys.corner_graph()) {
    auto from = s.index_of(sys.corners()[e.from]);
    if (!from) continue;
    auto to = s.index_of(sys.corners()[e.to]);
    if (!to) throw ConfigError("spine alphabet is not closed: " + to_string(sys.corners()[e.from]) + " -> " +
                               to_string(sys.corners()[e.to]));
    s.next[*from].push_back(*to);
  }
  for (auto& n : s.next) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
    if (n.empty()) throw ConfigError("spine symbol without successor");
  }
  return s;
}

std::optional<std::size_t> SpineSet::index_of(const Rational& c) const {
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), c);
  if (it == alphabet.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - alphabet.begin());
}

bool spine_invariant(const RelationSystem& sys, const SpineSet& s) {
  // Non-corners never reach corners (the corner set is closed under inverses), so only corner edges matter.
  for (const auto& e : sys.corner_graph()) {
    bool in_from = s.index_of(sys.corners()[e.from]).has_value();
    bool in_to = s.index_of(sys.corners()[e.to]).has_value();
    if (in_from != in_to) return false;
  }
  return true;
}

bool in_spine(const SpineSet& s, const SeqPoint& p) {
  return p.start.is_corner() && s.index_of(p.start.corner_value()).has_value();
}

namespace {

struct CoordCost {
  double lo;
  double hi;
};

CoordCost cost(const ExactValue& v, const Rational& c, double cd, double w) {
  if (v.is_corner() && v.corner_value() == c) return {0.0, 0.0};
  double g = std::abs(v.approx() - cd);
  return {std::max(0.0, g - v.err()) * w, (g + v.err()) * w};
}

}  // namespace

SpineDistance spine_distance(const SpineSet& s, const std::vector<ExactValue>& coords, std::size_t depth,
                             double diameter) {
  std::size_t n = std::min(depth, coords.size());
  std::size_t m = s.alphabet.size();
  SpineDistance out;
  if (n == 0) {
    out.bounds = {0.0, diameter};
    return out;
  }
  std::vector<double> sym(m);
  for (std::size_t a = 0; a < m; ++a) sym[a] = s.alphabet[a].get_d();

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::size_t>> pred(n, std::vector<std::size_t>(m, 0));
  std::vector<double> lo(m), hi(m);
  double w = 0.5;
  for (std::size_t a = 0; a < m; ++a) {
    auto c = cost(coords[0], s.alphabet[a], sym[a], w);
    lo[a] = c.lo;
    hi[a] = c.hi;
  }
  for (std::size_t k = 1; k < n; ++k) {
    w *= 0.5;
    std::vector<double> nlo(m, inf), nhi(m, inf);
    // predecessors scanned in increasing order; strict < keeps the smallest on ties
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b : s.next[a]) {
        if (lo[a] < nlo[b]) {
          nlo[b] = lo[a];
          pred[k][b] = a;
        }
        nhi[b] = std::min(nhi[b], hi[a]);
      }
    }
    for (std::size_t b = 0; b < m; ++b) {
      if (nlo[b] == inf) continue;
      auto c = cost(coords[k], s.alphabet[b], sym[b], w);
      nlo[b] = std::max(nlo[b], c.lo);
      nhi[b] = std::max(nhi[b], c.hi);
    }
    lo.swap(nlo);
    hi.swap(nhi);
  }
  std::size_t best = 0;
  for (std::size_t a = 1; a < m; ++a)
    if (lo[a] < lo[best]) best = a;
  out.bounds.lower = lo[best];
  out.bounds.upper = *std::min_element(hi.begin(), hi.end()) + std::ldexp(diameter, -static_cast<int>(n));
  out.nearest.assign(n, 0);
  for (std::size_t k = n; k-- > 0;) {
    out.nearest[k] = best;
    if (k > 0) best = pred[k][best];
  }
  return out;
}

SpineDistance spine_distance(const RelationSystem& sys, const SpineSet& s, const SeqPoint& p, std::size_t depth) {
  std::size_t n = std::min(depth, p.depth());
  return spine_distance(s, materialize(sys, p, n), n, sys.space().diameter_approx());
}

QuotientPoint QuotientPoint::of(const SpineSet& s, SeqPoint p) {
  if (in_spine(s, p)) return top();
  return QuotientPoint{std::move(p)};
}

QuotientSample sample(const RelationSystem& sys, const SpineSet& s, const QuotientPoint& p, std::size_t depth) {
  QuotientSample q;
  if (p.is_top()) return q;
  q.top = false;
  q.coords = materialize(sys, *p.rep, std::min(depth, p.rep->depth()));
  q.to_spine = spine_distance(s, q.coords, depth, sys.space().diameter_approx()).bounds;
  return q;
}

Bounds quotient_metric(const QuotientSample& p, const QuotientSample& q, std::size_t depth, double diameter) {
  if (p.top && q.top) return {0.0, 0.0};
  if (p.top) return q.to_spine;
  if (q.top) return p.to_spine;
  Bounds d = product_metric(p.coords, q.coords, depth, diameter);
  return {std::min(d.lower, p.to_spine.lower + q.to_spine.lower),
          std::min(d.upper, p.to_spine.upper + q.to_spine.upper)};
}

Bounds quotient_metric(const RelationSystem& sys, const SpineSet& s, const QuotientPoint& p,
                       const QuotientPoint& q, std::size_t depth) {
  return quotient_metric(sample(sys, s, p, depth), sample(sys, s, q, depth), depth, sys.space().diameter_approx());
}

QuotientPoint quotient_shift(const RelationSystem& sys, const SpineSet& s, const QuotientPoint& p) {
  if (p.is_top()) return p;
  return QuotientPoint::of(s, shift(sys, *p.rep));
}

namespace {

Rational line_dist_to(const Rational& y, const std::vector<Rational>& A) {
  Rational best = abs(y - A.front());
  for (const auto& a : A) best = std::min<Rational>(best, abs(y - a));
  return best;
}

}  // namespace

Rational line_collapse_distance(const Rational& x, const Rational& y, const std::vector<Rational>& A) {
  if (A.empty()) throw PreconditionError("collapsed set is empty");
  Rational dx = line_dist_to(x, A), dy = line_dist_to(y, A);
  if (dx == 0 && dy == 0) return 0;
  if (dx == 0) return dy;
  if (dy == 0) return dx;
  return std::min<Rational>(abs(x - y), dx + dy);
}

BallReport ball_preimage_check(const Rational& x, const Rational& r, const std::vector<Rational>& A,
                               const std::vector<Rational>& probes) {
  if (A.empty()) throw PreconditionError("collapsed set is empty");
  auto dist_to_A = [&](const Rational& y) { return line_dist_to(y, A); };
  auto in_A = [&](const Rational& y) { return std::find(A.begin(), A.end(), y) != A.end(); };
  if (in_A(x)) throw PreconditionError("x lies in A");
  Rational dxA = dist_to_A(x);
  if (r <= dxA) throw PreconditionError("radius does not exceed d(x, A)");

  BallReport rep;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const Rational& y = probes[i];
    // collapse metric
    Rational D = line_collapse_distance(x, y, A);
    bool via_metric = D < r;
    // union of balls
    bool via_union = abs(x - y) < r;
    for (const auto& a : A) via_union = via_union || abs(a - y) < r - dxA;
    rep.probes++;
    rep.members += via_metric;
    if (via_metric != via_union) rep.mismatches.push_back(i);
  }
  return rep;
}

std::vector<std::vector<Rational>> spine_prefixes(const SpineSet& s, std::size_t depth) {
  std::vector<std::vector<std::size_t>> cur;
  if (depth == 0) return {};
  for (std::size_t a = 0; a < s.alphabet.size(); ++a) cur.push_back({a});
  for (std::size_t k = 1; k < depth; ++k) {
    std::vector<std::vector<std::size_t>> nxt;
    for (const auto& p : cur)
      for (std::size_t b : s.next[p.back()]) {
        nxt.push_back(p);
        nxt.back().push_back(b);
      }
    cur.swap(nxt);
  }
  std::vector<std::vector<Rational>> out;
  out.reserve(cur.size());
  for (const auto& p : cur) {
    std::vector<Rational> v;
    for (auto a : p) v.push_back(s.alphabet[a]);
    out.push_back(std::move(v));
  }
  return out;
}

BallReport ball_preimage_check(const RelationSystem& sys, const SpineSet& s, const QuotientSample& x, double r,
                               const std::vector<QuotientSample>& probes, std::size_t depth) {
  if (x.top) throw PreconditionError("x lies in A");
  double diam = sys.space().diameter_approx();
  auto prefixes = spine_prefixes(s, depth);
  std::vector<std::vector<ExactValue>> spine_pts;
  spine_pts.reserve(prefixes.size());
  for (const auto& p : prefixes) {
    std::vector<ExactValue> v;
    for (const auto& c : p) v.push_back(ExactValue::corner(c));
    spine_pts.push_back(std::move(v));
  }
  auto dist_to_A = [&](const std::vector<ExactValue>& y) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : spine_pts) best = std::min(best, product_metric(y, a, depth, diam).lower);
    return best;
  };
  double dxA = dist_to_A(x.coords);
  if (r <= dxA) throw PreconditionError("radius does not exceed d(x, A)");

  BallReport rep;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const auto& y = probes[i];
    bool via_metric = quotient_metric(x, y, depth, diam).lower < r;
    bool via_union;
    if (y.top) {
      via_union = true;  // y is a spine point; it sits in its own ball of radius r - d(x, A) > 0
    } else {
      via_union = product_metric(x.coords, y.coords, depth, diam).lower < r;
      for (std::size_t a = 0; a < spine_pts.size() && !via_union; ++a)
        via_union = product_metric(spine_pts[a], y.coords, depth, diam).lower < r - dxA;
    }
    rep.probes++;
    rep.members += via_metric;
    if (via_metric != via_union) rep.mismatches.push_back(i);
  }
  return rep;
}

}  // namespace fanchaos
