#pragma once

#include "fanchaos/relspace.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fanchaos {

using Itinerary = std::vector<std::size_t>;

/// A point of the Mahavier product generated by a branch itinerary.
///
/// Coordinates: x(1) = start, x(i+1) = f_{b_i}(x(i)) where b = fwd followed by `cycle` repeated
/// forever (an empty cycle means only fwd.size()+1 coordinates exist). `bwd` holds the branches used
/// to reach the start from the left, nearest last: x(0) = f_{bwd.back()}^{-1}(x(1)).
struct SeqPoint {
  ExactValue start;
  Itinerary fwd;
  Itinerary cycle;
  std::optional<Itinerary> bwd;

  bool infinite() const { return !cycle.empty(); }
  /// Number of available forward coordinates; SIZE_MAX when periodic-tailed.
  std::size_t depth() const;
  std::size_t branch_at(std::size_t i) const;  // branch from x(i+1) to x(i+2), 0-based
};

ExactValue coordinate(const RelationSystem& sys, const SeqPoint& p, long i);

/// Coordinates x(1), ..., x(n). Throws DepthError past the itinerary.
std::vector<ExactValue> materialize(const RelationSystem& sys, const SeqPoint& p, std::size_t n);

SeqPoint shift(const RelationSystem& sys, const SeqPoint& p);
SeqPoint shift_n(const RelationSystem& sys, SeqPoint p, std::size_t n);

/// Appends branches; the point must be finite.
SeqPoint extend(const SeqPoint& p, const Itinerary& more);

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Certified bounds on max_k |x_k - y_k| / 2^k from the first `depth` coordinates.
Bounds product_metric(const RelationSystem& sys, const SeqPoint& p, const SeqPoint& q, std::size_t depth);
/// Same on already materialized coordinates (both at least `depth` long).
Bounds product_metric(const std::vector<ExactValue>& p, const std::vector<ExactValue>& q, std::size_t depth,
                      double diameter);

/// |x - y| minus both float error bounds, clamped at zero.
double coordinate_gap(const ExactValue& x, const ExactValue& y);

using FinitePath = std::vector<ExactValue>;

bool is_path(const RelationSystem& sys, const FinitePath& path);
/// Branch indices realizing each step (first matching branch). Throws NotInRelation.
Itinerary path_itinerary(const RelationSystem& sys, const FinitePath& path);
FinitePath path_from(const RelationSystem& sys, const ExactValue& start, const Itinerary& it);

/// x(1..n) followed by y(2..m). Throws JoinError unless x.back() == y.front().
FinitePath star(const FinitePath& x, const FinitePath& y);

struct SearchLimits {
  std::size_t depth = 12;
  std::size_t frontier = 100000;
};

/// A path from y back to x, given (x, y) in F. Throws NotInRelation otherwise.
std::optional<FinitePath> return_path(const RelationSystem& sys, const ExactValue& x, const ExactValue& y,
                                      SearchLimits lim = {});

/// An open-interval cylinder U_1 x ... x U_n x X x X ... with a verified trace point.
struct Cylinder {
  std::vector<Interval> constraints;  // open intervals
  std::optional<SeqPoint> trace;      // fwd has constraints.size()-1 entries
};

/// Exact check that coordinates 1..n of p lie in the open constraints.
bool in_cylinder(const RelationSystem& sys, const SeqPoint& p, const std::vector<Interval>& constraints);

/// Searches for a trace point whose coordinates avoid corners. Empty optional when none is found.
std::optional<SeqPoint> find_trace(const RelationSystem& sys, const std::vector<Interval>& constraints);

/// p = q * q * ... built from the trace and return paths; nullopt when a return path is not found.
std::optional<SeqPoint> periodic_from_cylinder(const RelationSystem& sys, const Cylinder& c,
                                               SearchLimits lim = {});

/// Smallest p with shift^p(q) = q, checked exactly on coordinates (0 when not periodic).
std::size_t verified_period(const RelationSystem& sys, const SeqPoint& q);

struct ImpressionEntry {
  ExactValue value;
  std::size_t level;  // fewest branch applications reaching it
};

/// Values reachable from x in at most `budget` steps, deduplicated exactly, in BFS order.
/// With exponent_bound set, power-family values with |a| or |b| above it are not expanded or kept.
std::vector<ImpressionEntry> forward_impression(const RelationSystem& sys, const ExactValue& x, std::size_t budget,
                                                std::optional<int> exponent_bound = std::nullopt,
                                                std::size_t cap = 1000000);

}  // namespace fanchaos
