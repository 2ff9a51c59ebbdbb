#pragma once

#include "fanchaos/exact_value.hpp"
#include "fanchaos/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fanchaos {

/// Closed interval [lo, hi] with rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

/// Finite union of disjoint closed intervals, ordered left to right.
class Space {
 public:
  explicit Space(std::vector<Interval> pieces);

  const std::vector<Interval>& pieces() const { return pieces_; }
  Rational diameter() const { return pieces_.back().hi - pieces_.front().lo; }
  double diameter_approx() const { return diameter().get_d(); }

  std::optional<std::size_t> piece_of(const Rational& x) const;
  /// Index of the piece containing v; nullopt when outside (or undecidable).
  std::optional<std::size_t> piece_of(const ExactValue& v) const;
  bool contains(const ExactValue& v) const { return piece_of(v).has_value(); }

 private:
  std::vector<Interval> pieces_;
};

enum class RuleKind { Shift, Power, Scale };

/// One closed-form rule of a branch: x+c, (x-from)^p + to with p in {2,1/2,3,1/3}, or s*x.
struct Rule {
  RuleKind kind = RuleKind::Shift;
  Rational shift;        // Shift
  Rational exponent{1};  // Power
  Rational from_anchor;  // Power
  Rational to_anchor;    // Power
  Rational factor{1};    // Scale

  static Rule make_shift(Rational c);
  static Rule make_power(Rational p, Rational from, Rational to);
  static Rule make_scale(Rational s);

  /// Image of a rational point (for endpoints; exact for shifts and scales, exact for power rules
  /// at the unit-interval endpoints).
  Rational apply_endpoint(const Rational& x) const;
  double apply_approx(double x) const;
  double invert_approx(double y) const;
};

struct Segment {
  Interval domain;
  Rule rule;
  Interval image;
  int da = 0;               // power rules: exponent multiplies by 2^da 3^db
  int db = 0;
  Rational from_anchor;     // power/shift: left end of the domain piece
  Rational to_anchor;       // power/shift: left end of the image piece
  std::size_t factor_index = 0;  // scale rules: index into the system's ScaleBasis
};

/// An invertible map from one or more domain intervals onto image intervals.
struct BranchMap {
  std::string name;
  std::vector<Segment> segments;
};

enum class Family { Power, Scale };

/// A corner c -> branch(c) transition.
struct CornerEdge {
  std::size_t from;  // index into corners()
  std::size_t to;
  std::size_t branch;
};

/// A closed relation F given as the union of graphs of finitely many branch maps.
///
/// Construction checks: each segment is a continuous increasing bijection from its domain onto its
/// image; a branch's segments have disjoint domains and disjoint images; every point of the space has a
/// successor and a predecessor (p1(F) = p2(F) = X). Power-family systems need unit-length pieces so
/// that (x-c)^p maps a piece onto a piece; scale-family systems are linear maps through 0.
class RelationSystem {
 public:
  RelationSystem(std::string name, Space space, std::vector<BranchMap> branches);

  const std::string& name() const { return name_; }
  const Space& space() const { return space_; }
  const std::vector<BranchMap>& branches() const { return branches_; }
  std::size_t branch_count() const { return branches_.size(); }
  Family family() const { return family_; }
  const std::shared_ptr<const ScaleBasis>& basis() const { return basis_; }

  /// Piece endpoints closed under all branches and their inverses.
  const std::vector<Rational>& corners() const { return corners_; }
  const std::vector<CornerEdge>& corner_graph() const { return corner_graph_; }
  std::optional<std::size_t> corner_index(const Rational& c) const;

  /// Exact value of a rational point of the space. Throws DomainError when outside.
  ExactValue value(const Rational& x) const;

  /// Preset tag used to select hand-derived constructions (e.g. the four-leg return table).
  const std::string& preset_tag() const { return preset_tag_; }
  void set_preset_tag(std::string tag) { preset_tag_ = std::move(tag); }

  /// Index of the branch with this name.
  std::optional<std::size_t> branch_index(const std::string& name) const;

 private:
  std::string name_;
  Space space_;
  std::vector<BranchMap> branches_;
  Family family_ = Family::Power;
  std::shared_ptr<const ScaleBasis> basis_;
  std::vector<Rational> corners_;
  std::vector<CornerEdge> corner_graph_;
  std::string preset_tag_;
};

/// The segment of `branch` whose domain holds v, if any.
const Segment* find_domain_segment(const BranchMap& branch, const ExactValue& v);
/// The segment of `branch` whose image holds w, if any.
const Segment* find_image_segment(const BranchMap& branch, const ExactValue& w);

bool in_domain(const BranchMap& branch, const ExactValue& v);

/// Exact image of v. Throws DomainError when v is outside the branch domain.
ExactValue eval_branch(const BranchMap& branch, const ExactValue& v);

/// Exact preimage of w. Throws DomainError when w is outside the branch image.
ExactValue branch_inverse(const BranchMap& branch, const ExactValue& w);

/// Indices i with f_i(x) = y, decided exactly.
std::vector<std::size_t> relation_member(const RelationSystem& sys, const ExactValue& x,
                                         const ExactValue& y);

struct NcVerdict {
  enum class Status { NeverConnect, Dependent, Rejected };
  Status status = Status::Rejected;
  long k = 0;  // witness r^k = rho^l, k > 0, minimal
  long l = 0;
};

/// Decides whether 0 < r < 1 < rho never connect (r^k = rho^l only for k = l = 0).
NcVerdict nc_check(const Rational& r, const Rational& rho);

}  // namespace fanchaos
