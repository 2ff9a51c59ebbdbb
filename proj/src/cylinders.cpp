#include "fanchaos/diagnostics.hpp"

#include <algorithm>
#include <set>

namespace fanchaos {

std::string to_string(Status s) {
  switch (s) {
    case Status::Positive:
      return "POSITIVE";
    case Status::Negative:
      return "NEGATIVE";
    case Status::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

std::vector<Interval> grid_cells(const RelationSystem& sys, const Rational& mesh) {
  if (mesh <= 0) throw std::invalid_argument("mesh must be positive");
  std::vector<Interval> cells;
  Rational half = mesh / 2;
  for (const auto& p : sys.space().pieces()) {
    Rational len = p.hi - p.lo;
    for (Rational a = p.lo; a < p.hi; a += mesh) cells.push_back({a, a + mesh});
    if (mesh > len) continue;
    std::vector<Rational> grid;
    for (Rational g = p.lo; g <= p.hi; g += mesh) grid.push_back(g);
    if (grid.back() != p.hi) grid.push_back(p.hi);
    for (const auto& g : grid) cells.push_back({g - half, g + half});
  }
  std::sort(cells.begin(), cells.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

namespace {

void extend_base(const RelationSystem& sys, const std::vector<Interval>& cells, std::size_t depth,
                 std::vector<Interval>& prefix, std::vector<Cylinder>& out) {
  auto trace = find_trace(sys, prefix);
  if (!trace) return;
  if (prefix.size() == depth) {
    out.push_back({prefix, std::move(trace)});
    return;
  }
  for (const auto& c : cells) {
    prefix.push_back(c);
    extend_base(sys, cells, depth, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Cylinder> cylinder_base(const RelationSystem& sys, std::size_t depth, const Rational& mesh, Exec exec) {
  if (depth == 0) return {Cylinder{{}, find_trace(sys, {})}};
  auto cells = grid_cells(sys, mesh);
  std::vector<std::vector<Cylinder>> parts(cells.size());
  for_each_index(cells.size(), exec, [&](std::size_t i) {
    std::vector<Interval> prefix{cells[i]};
    extend_base(sys, cells, depth, prefix, parts[i]);
  });
  std::vector<Cylinder> out;
  for (auto& p : parts)
    for (auto& c : p) out.push_back(std::move(c));
  return out;
}

namespace {

using Span = std::pair<double, double>;

struct HullSearch {
  const RelationSystem& sys;
  const std::vector<Interval>& cons;
  std::vector<Span> levels;
  std::vector<const Segment*> segs;
  std::vector<Span> out;

  void dfs(std::size_t k) {
    if (k + 1 == cons.size()) {
      Span j = levels[k];
      for (std::size_t i = k; i-- > 0;) {
        const Segment* s = segs[i];
        j = {std::max(s->rule.invert_approx(j.first), levels[i].first),
             std::min(s->rule.invert_approx(j.second), levels[i].second)};
        if (j.first > j.second) return;
      }
      out.push_back({j.first - 1e-7, j.second + 1e-7});
      return;
    }
    auto [lo, hi] = levels[k];
    double nlo = cons[k + 1].lo.get_d(), nhi = cons[k + 1].hi.get_d();
    for (const auto& b : sys.branches())
      for (const auto& s : b.segments) {
        double dlo = std::max(lo, s.domain.lo.get_d()), dhi = std::min(hi, s.domain.hi.get_d());
        if (dlo > dhi) continue;
        double ilo = std::max(s.rule.apply_approx(dlo), nlo), ihi = std::min(s.rule.apply_approx(dhi), nhi);
        if (!(ilo < ihi)) continue;
        levels.push_back({ilo, ihi});
        segs.push_back(&s);
        dfs(k + 1);
        levels.pop_back();
        segs.pop_back();
      }
  }
};

}  // namespace

std::vector<std::pair<double, double>> first_coordinate_hull(const RelationSystem& sys, const Cylinder& c) {
  std::vector<Span> out;
  for (const auto& piece : sys.space().pieces()) {
    double lo = piece.lo.get_d(), hi = piece.hi.get_d();
    if (!c.constraints.empty()) {
      lo = std::max(lo, c.constraints[0].lo.get_d());
      hi = std::min(hi, c.constraints[0].hi.get_d());
    }
    if (!(lo < hi)) continue;
    if (c.constraints.size() <= 1) {
      out.push_back({lo - 1e-7, hi + 1e-7});
      continue;
    }
    HullSearch hs{sys, c.constraints, {{lo, hi}}, {}, {}};
    hs.dfs(0);
    out.insert(out.end(), hs.out.begin(), hs.out.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fanchaos
