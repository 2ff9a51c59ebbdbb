#include "fanchaos/relspace.hpp"

#include "fanchaos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace fanchaos {

namespace {

bool cmp_ge(Cmp c) { return c == Cmp::Greater || c == Cmp::Equal; }
bool cmp_le(Cmp c) { return c == Cmp::Less || c == Cmp::Equal; }

bool value_in(const Interval& iv, const ExactValue& v) {
  switch (v.kind()) {
    case ExactValue::Kind::Corner:
      return iv.contains(v.corner_value());
    case ExactValue::Kind::Cantor:
      // Cantor values live strictly inside the unit piece starting at their anchor.
      return iv.lo <= v.anchor() && v.anchor() + 1 <= iv.hi;
    case ExactValue::Kind::Lelek:
      return cmp_ge(v.compare(iv.lo)) && cmp_le(v.compare(iv.hi));
  }
  return false;
}

// Does the union of `parts` cover [target.lo, target.hi]?
bool covers(std::vector<Interval> parts, const Interval& target) {
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  Rational reach = target.lo;
  bool started = false;
  for (const auto& p : parts) {
    if (p.hi < target.lo || p.lo > target.hi) continue;
    if (!started) {
      if (p.lo > target.lo) return false;
      started = true;
    } else if (p.lo > reach) {
      return false;
    }
    reach = std::max(reach, p.hi);
    if (reach >= target.hi) return true;
  }
  return started && reach >= target.hi;
}

bool overlaps(const Interval& a, const Interval& b) { return !(a.hi < b.lo || b.hi < a.lo); }

}  // namespace

Space::Space(std::vector<Interval> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw ConfigError("space needs at least one piece");
  std::sort(pieces_.begin(), pieces_.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!(pieces_[i].lo < pieces_[i].hi)) throw ConfigError("piece with lo >= hi");
    if (i > 0 && !(pieces_[i - 1].hi < pieces_[i].lo)) throw ConfigError("pieces must be disjoint");
  }
}

std::optional<std::size_t> Space::piece_of(const Rational& x) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (pieces_[i].contains(x)) return i;
  return std::nullopt;
}

std::optional<std::size_t> Space::piece_of(const ExactValue& v) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (value_in(pieces_[i], v)) return i;
  return std::nullopt;
}

Rule Rule::make_shift(Rational c) {
  Rule r;
  r.kind = RuleKind::Shift;
  r.shift = std::move(c);
  return r;
}

Rule Rule::make_power(Rational p, Rational from, Rational to) {
  Rule r;
  r.kind = RuleKind::Power;
  r.exponent = std::move(p);
  r.from_anchor = std::move(from);
  r.to_anchor = std::move(to);
  return r;
}

Rule Rule::make_scale(Rational s) {
  Rule r;
  r.kind = RuleKind::Scale;
  r.factor = std::move(s);
  return r;
}

Rational Rule::apply_endpoint(const Rational& x) const {
  switch (kind) {
    case RuleKind::Shift:
      return x + shift;
    case RuleKind::Scale:
      return factor * x;
    case RuleKind::Power: {
      Rational local = x - from_anchor;
      if (local == 0 || local == 1) return to_anchor + local;
      throw std::logic_error("apply_endpoint: power rule at a non-endpoint");
    }
  }
  return x;
}

double Rule::apply_approx(double x) const {
  switch (kind) {
    case RuleKind::Shift:
      return x + shift.get_d();
    case RuleKind::Scale:
      return factor.get_d() * x;
    case RuleKind::Power: {
      double local = std::clamp(x - from_anchor.get_d(), 0.0, 1.0);
      return std::pow(local, exponent.get_d()) + to_anchor.get_d();
    }
  }
  return x;
}

double Rule::invert_approx(double y) const {
  switch (kind) {
    case RuleKind::Shift:
      return y - shift.get_d();
    case RuleKind::Scale:
      return y / factor.get_d();
    case RuleKind::Power: {
      double local = std::clamp(y - to_anchor.get_d(), 0.0, 1.0);
      return std::pow(local, 1.0 / exponent.get_d()) + from_anchor.get_d();
    }
  }
  return y;
}

RelationSystem::RelationSystem(std::string name, Space space, std::vector<BranchMap> branches)
    : name_(std::move(name)), space_(std::move(space)), branches_(std::move(branches)) {
  if (branches_.empty()) throw ConfigError("relation needs at least one branch");
  bool any_scale = false, any_other = false;
  for (const auto& b : branches_) {
    if (b.segments.empty()) throw ConfigError("branch '" + b.name + "' has no segments");
    for (const auto& s : b.segments) (s.rule.kind == RuleKind::Scale ? any_scale : any_other) = true;
  }
  if (any_scale && any_other) throw ConfigError("cannot mix scale rules with shift/power rules");
  family_ = any_scale ? Family::Scale : Family::Power;

  const auto& pieces = space_.pieces();
  auto exact_piece = [&](const Interval& iv) {
    return std::find(pieces.begin(), pieces.end(), iv) != pieces.end();
  };
  auto within_piece = [&](const Interval& iv) {
    return std::any_of(pieces.begin(), pieces.end(),
                       [&](const Interval& p) { return p.lo <= iv.lo && iv.hi <= p.hi; });
  };

  std::vector<Rational> factors;
  if (family_ == Family::Power) {
    for (const auto& p : pieces)
      if (p.hi - p.lo != 1) throw ConfigError("shift/power systems need unit-length pieces");
  } else {
    if (pieces.front().lo < 0) throw ConfigError("scale systems need a space inside [0, inf)");
  }

  for (auto& b : branches_) {
    for (auto& s : b.segments) {
      if (!(s.domain.lo < s.domain.hi)) throw ConfigError("segment with empty domain in '" + b.name + "'");
      switch (s.rule.kind) {
        case RuleKind::Shift:
          if (!exact_piece(s.domain)) throw ConfigError("shift domain must be a piece in '" + b.name + "'");
          s.image = {s.domain.lo + s.rule.shift, s.domain.hi + s.rule.shift};
          if (!exact_piece(s.image)) throw ConfigError("shift image must be a piece in '" + b.name + "'");
          s.from_anchor = s.domain.lo;
          s.to_anchor = s.image.lo;
          break;
        case RuleKind::Power: {
          const auto& p = s.rule.exponent;
          if (p == 2) s.da = 1;
          else if (p == Rational(1, 2)) s.da = -1;
          else if (p == 3) s.db = 1;
          else if (p == Rational(1, 3)) s.db = -1;
          else throw ConfigError("power exponent must be 2, 1/2, 3 or 1/3 in '" + b.name + "'");
          if (!exact_piece(s.domain) || s.rule.from_anchor != s.domain.lo)
            throw ConfigError("power rule must be anchored at its domain piece in '" + b.name + "'");
          s.image = {s.rule.to_anchor, s.rule.to_anchor + 1};
          if (!exact_piece(s.image)) throw ConfigError("power image must be a piece in '" + b.name + "'");
          s.from_anchor = s.domain.lo;
          s.to_anchor = s.image.lo;
          break;
        }
        case RuleKind::Scale: {
          if (s.rule.factor <= 0) throw ConfigError("scale factor must be positive in '" + b.name + "'");
          if (!within_piece(s.domain)) throw ConfigError("scale domain must sit inside one piece in '" + b.name + "'");
          s.image = {s.rule.factor * s.domain.lo, s.rule.factor * s.domain.hi};
          if (!within_piece(s.image)) throw ConfigError("scale image leaves the space in '" + b.name + "'");
          auto it = std::find(factors.begin(), factors.end(), s.rule.factor);
          s.factor_index = static_cast<std::size_t>(it - factors.begin());
          if (it == factors.end()) factors.push_back(s.rule.factor);
          break;
        }
      }
    }
    for (std::size_t i = 0; i < b.segments.size(); ++i)
      for (std::size_t j = i + 1; j < b.segments.size(); ++j) {
        if (overlaps(b.segments[i].domain, b.segments[j].domain))
          throw ConfigError("branch '" + b.name + "' has overlapping domains");
        if (overlaps(b.segments[i].image, b.segments[j].image))
          throw ConfigError("branch '" + b.name + "' is not injective");
      }
  }
  if (family_ == Family::Scale) basis_ = std::make_shared<const ScaleBasis>(factors);

  // p1(F) = p2(F) = X
  std::vector<Interval> doms, imgs;
  for (const auto& b : branches_)
    for (const auto& s : b.segments) {
      doms.push_back(s.domain);
      imgs.push_back(s.image);
    }
  for (const auto& p : pieces) {
    if (!covers(doms, p)) throw ConfigError("some point of the space has no successor");
    if (!covers(imgs, p)) throw ConfigError("some point of the space has no predecessor");
  }

  // Corners: endpoints, pruned until closed under every branch and inverse.
  std::set<Rational> cs;
  for (const auto& p : pieces) {
    cs.insert(p.lo);
    cs.insert(p.hi);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = cs.begin(); it != cs.end();) {
      bool keep = true;
      for (const auto& b : branches_)
        for (const auto& s : b.segments) {
          if (s.domain.contains(*it) && !cs.count(s.rule.kind == RuleKind::Scale
                                                      ? Rational(s.rule.factor * *it)
                                                      : Rational(s.to_anchor + (*it - s.from_anchor))))
            keep = false;
          if (s.image.contains(*it) && !cs.count(s.rule.kind == RuleKind::Scale
                                                     ? Rational(*it / s.rule.factor)
                                                     : Rational(s.from_anchor + (*it - s.to_anchor))))
            keep = false;
        }
      if (keep) {
        ++it;
      } else {
        it = cs.erase(it);
        changed = true;
      }
    }
  }
  corners_.assign(cs.begin(), cs.end());
  for (std::size_t i = 0; i < corners_.size(); ++i) {
    ExactValue c = ExactValue::corner(corners_[i]);
    for (std::size_t bi = 0; bi < branches_.size(); ++bi) {
      if (!in_domain(branches_[bi], c)) continue;
      ExactValue img = eval_branch(branches_[bi], c);
      auto j = corner_index(img.corner_value());
      if (!j) throw std::logic_error("corner set not closed");
      corner_graph_.push_back({i, *j, bi});
    }
  }
}

std::optional<std::size_t> RelationSystem::corner_index(const Rational& c) const {
  auto it = std::lower_bound(corners_.begin(), corners_.end(), c);
  if (it == corners_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - corners_.begin());
}

std::optional<std::size_t> RelationSystem::branch_index(const std::string& name) const {
  for (std::size_t i = 0; i < branches_.size(); ++i)
    if (branches_[i].name == name) return i;
  return std::nullopt;
}

ExactValue RelationSystem::value(const Rational& x) const {
  auto pi = space_.piece_of(x);
  if (!pi) throw DomainError("point " + to_string(x) + " is outside the space");
  if (corner_index(x)) return ExactValue::corner(x);
  if (family_ == Family::Power) {
    const auto& p = space_.pieces()[*pi];
    return ExactValue::cantor(x - p.lo, 0, 0, p.lo);
  }
  if (x == 0) return ExactValue::corner(x);
  return ExactValue::lelek(basis_, x);
}

const Segment* find_domain_segment(const BranchMap& branch, const ExactValue& v) {
  for (const auto& s : branch.segments)
    if (value_in(s.domain, v)) return &s;
  return nullptr;
}

const Segment* find_image_segment(const BranchMap& branch, const ExactValue& w) {
  for (const auto& s : branch.segments)
    if (value_in(s.image, w)) return &s;
  return nullptr;
}

bool in_domain(const BranchMap& branch, const ExactValue& v) { return find_domain_segment(branch, v) != nullptr; }

ExactValue eval_branch(const BranchMap& branch, const ExactValue& v) {
  const Segment* s = find_domain_segment(branch, v);
  if (!s) throw DomainError(v.exact_string() + " is outside the domain of " + branch.name);
  if (s->rule.kind == RuleKind::Scale) return v.scale_step(s->factor_index, +1);
  return v.power_step(s->da, s->db, s->from_anchor, s->to_anchor);
}

ExactValue branch_inverse(const BranchMap& branch, const ExactValue& w) {
  const Segment* s = find_image_segment(branch, w);
  if (!s) throw DomainError(w.exact_string() + " is outside the image of " + branch.name);
  if (s->rule.kind == RuleKind::Scale) return w.scale_step(s->factor_index, -1);
  return w.power_step(-s->da, -s->db, s->to_anchor, s->from_anchor);
}

std::vector<std::size_t> relation_member(const RelationSystem& sys, const ExactValue& x, const ExactValue& y) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sys.branch_count(); ++i) {
    const auto& b = sys.branches()[i];
    if (!in_domain(b, x)) continue;
    if (eval_branch(b, x) == y) out.push_back(i);
  }
  return out;
}

NcVerdict nc_check(const Rational& r, const Rational& rho) {
  NcVerdict v;
  if (!(r > 0 && r < 1 && rho > 1)) return v;  // Rejected
  PrimeVector vr = factor(r), vp = factor(rho);
  std::set<mpz_class> primes;
  for (const auto& [p, e] : vr) primes.insert(p);
  for (const auto& [p, e] : vp) primes.insert(p);
  auto get = [](const PrimeVector& m, const mpz_class& p) {
    auto it = m.find(p);
    return it == m.end() ? 0L : it->second;
  };
  // Parallel iff all 2x2 minors vanish against a reference prime of vr.
  const mpz_class& ref = vr.begin()->first;
  long r0 = get(vr, ref), p0 = get(vp, ref);
  bool parallel = true;
  for (const auto& p : primes) {
    mpz_class lhs = mpz_class(get(vr, p)) * p0, rhs = mpz_class(get(vp, p)) * r0;
    if (lhs != rhs) {
      parallel = false;
      break;
    }
  }
  if (!parallel) {
    v.status = NcVerdict::Status::NeverConnect;
    return v;
  }
  long gr = 0, gp = 0;
  for (const auto& [p, e] : vr) gr = std::gcd(gr, std::abs(e));
  for (const auto& [p, e] : vp) gp = std::gcd(gp, std::abs(e));
  long g = std::gcd(gr, gp);
  v.status = NcVerdict::Status::Dependent;
  v.k = gp / g;
  v.l = -gr / g;
  return v;
}

}  // namespace fanchaos
