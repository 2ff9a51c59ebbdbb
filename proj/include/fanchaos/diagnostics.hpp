#pragma once

#include "fanchaos/exec.hpp"
#include "fanchaos/mahavier.hpp"
#include "fanchaos/quotient.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fanchaos {

enum class Status { Positive, Negative, Inconclusive };
std::string to_string(Status s);

/// Empirical sweeps only ever say POSITIVE or INCONCLUSIVE; NEGATIVE carries an exact certificate.
struct Verdict {
  std::string kind;
  Status status = Status::Inconclusive;
  nlohmann::json evidence = nlohmann::json::object();
};

// ---- cylinders ----

/// Mesh cells per piece: aligned cells (L + i m, L + (i+1) m) and cells of width m centred on the
/// grid points L + i m, endpoints included (those straddle the piece boundary).
std::vector<Interval> grid_cells(const RelationSystem& sys, const Rational& mesh);

/// All depth-long products of grid cells with a verified trace, in lexicographic cell order.
/// Depth 0 yields the single whole-space cylinder.
std::vector<Cylinder> cylinder_base(const RelationSystem& sys, std::size_t depth, const Rational& mesh,
                                    Exec exec = Exec::Parallel);

/// Outer enclosure of the first coordinates of points in the cylinder, as closed float intervals.
std::vector<std::pair<double, double>> first_coordinate_hull(const RelationSystem& sys, const Cylinder& c);

// ---- sensitivity ----

struct SdicOptions {
  Rational epsilon{1, 4};
  std::size_t n_max = 200;
  std::size_t window = 30;  // coordinates used for metric lower bounds
};

struct SdicWitness {
  SeqPoint x;
  SeqPoint y;
  std::size_t m = 0;     // shifts applied
  double pure = 0.0;     // lower bound on d(f^m x, f^m y)
  double spine = 0.0;    // lower bound on d(f^m x, A) + d(f^m y, A)
  double sep = 0.0;      // min of the two
};

/// Greedy itinerary: the largest-factor branch whose domain holds the value, else the next one.
Itinerary greedy_climb(const RelationSystem& sys, const ExactValue& start, std::size_t steps);

/// x continues by one branch forever, y takes a different branch once then the first one (scale
/// systems: x contracts, y climbs). m is the first shift where both tails sit within 1/10 of their
/// limit corners (scale systems: the first m with separation above 1/4).
SdicWitness sdic_witness_wrt_spine(const RelationSystem& sys, const SpineSet& s, const Cylinder& c,
                                   std::size_t window = 30);

/// Base-space sweep: for every cylinder some m <= n_max separates two trace points by more than epsilon.
Verdict empirical_sdic(const RelationSystem& sys, const std::vector<Cylinder>& base, const SdicOptions& opt,
                       Exec exec = Exec::Parallel);

/// Quotient-side sweep: separation measured by min{d, d(.,A) + d(.,A)}.
Verdict spine_sdic(const RelationSystem& sys, const SpineSet& s, const std::vector<Cylinder>& base,
                   const SdicOptions& opt, Exec exec = Exec::Parallel);

// ---- transitivity ----

struct TransitivityHit {
  std::size_t n = 0;
  SeqPoint point;  // lies in U, and shift^n(point) lies in V
};

/// Searches shifts n <= (trace length - 1) + horizon by pushing float enclosures of U's last coordinate
/// forward; a hit is pulled back to an exact rational point and re-checked. With `avoid`, spine points
/// are never used.
std::optional<TransitivityHit> transitivity_search(const RelationSystem& sys, const Cylinder& U, const Cylinder& V,
                                                   std::size_t horizon, const SpineSet* avoid = nullptr);

Verdict transitivity_check(const RelationSystem& sys, const std::vector<Cylinder>& base, std::size_t horizon,
                           Exec exec = Exec::Parallel, const SpineSet* avoid = nullptr);

/// Exact non-transitivity certificate when branch exponent steps span a rank <= 1 lattice:
/// every orbit value on a piece is u^(E^k) + anchor, so a pair (U, V) whose hull images miss V for
/// all k is certified by finitely many exact comparisons plus monotone tails.
std::optional<nlohmann::json> rank_one_certificate(const RelationSystem& sys, const std::vector<Cylinder>& base,
                                                   const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

struct ImpressionGap {
  double lo;
  double hi;
  bool exact;  // no impression point at any budget
  std::string lo_form;
  std::string hi_form;
};

struct ImpressionDensity {
  bool covered = false;
  std::size_t points = 0;
  std::vector<ImpressionGap> gaps;  // widest first
};

ImpressionDensity impression_density(const RelationSystem& sys, const ExactValue& x, const Rational& epsilon,
                                     std::size_t budget, std::optional<int> exponent_bound = std::nullopt);

// ---- periodic points ----

/// (w, i, j): w . step >= 0 for every segment, and every segment from piece i to piece j has w . step > 0.
struct ConeCertificate {
  int w2 = 0;
  int w3 = 0;
  std::size_t from_piece = 0;
  std::size_t to_piece = 0;
};
std::optional<ConeCertificate> exponent_cone(const RelationSystem& sys);

/// t^(2^a 3^-b) != t on canonical forms, for `count` seeded random bases and 0 < |a|+|b|, |a|,|b| <= bound.
struct CanonicalCheck {
  std::size_t bases = 0;
  std::size_t comparisons = 0;
  std::size_t equalities = 0;
};
CanonicalCheck canonical_form_check(std::uint64_t seed, std::size_t count = 50, int bound = 30);

Verdict periodic_density_check(const RelationSystem& sys, const std::vector<Cylinder>& base,
                               SearchLimits lim = {}, Exec exec = Exec::Parallel, const SpineSet* quotient = nullptr);

// ---- classification ----

struct ClassifyParams {
  std::size_t depth = 2;
  Rational mesh{1, 8};
  std::size_t n_max = 200;  // shift horizon for sensitivity and transitivity
  std::size_t budget = 12;  // return-path search depth
  Rational epsilon{1, 4};
  std::size_t window = 30;
  Exec exec = Exec::Parallel;
};

struct ChaosReport {
  std::string system;
  nlohmann::json params;
  Verdict transitive, periodic, sdic;                // quotient dynamics
  Verdict base_transitive, base_periodic, base_sdic;  // base dynamics
  std::string label;
  bool agreement = false;
  bool banks_ok = false;
  nlohmann::json structure;
  std::size_t cylinders = 0;
};

std::string label_for(Status transitive, Status periodic, Status sdic);
bool banks_consistent(const ChaosReport& r);

ChaosReport classify(const RelationSystem& sys, const SpineSet& s, const ClassifyParams& p = {});

}  // namespace fanchaos
