#pragma once

#include "fanchaos/mahavier.hpp"

#include <optional>
#include <vector>

namespace fanchaos {

/// Alphabet of corner symbols whose all-corner sequences form the collapsed set A.
struct SpineSet {
  std::vector<Rational> alphabet;              // sorted
  std::vector<std::vector<std::size_t>> next;  // transitions, indices into alphabet, sorted

  /// Validates: symbols are corners, each has a successor, and the alphabet is closed under branches.
  static SpineSet make(const RelationSystem& sys, std::vector<Rational> alphabet);
  std::optional<std::size_t> index_of(const Rational& c) const;
};

/// f(A) in A and f(X \ A) in X \ A at the level of coordinates: alphabet corners only reach alphabet
/// corners, and nothing outside the alphabet reaches it.
bool spine_invariant(const RelationSystem& sys, const SpineSet& s);

bool in_spine(const SpineSet& s, const SeqPoint& p);

struct SpineDistance {
  Bounds bounds;
  std::vector<std::size_t> nearest;  // minimizing symbol path, ties to the smallest symbol
};

/// inf over spine sequences a of max_k |p(k) - a(k)| / 2^k on the first `depth` coordinates.
SpineDistance spine_distance(const SpineSet& s, const std::vector<ExactValue>& coords, std::size_t depth,
                             double diameter);
SpineDistance spine_distance(const RelationSystem& sys, const SpineSet& s, const SeqPoint& p, std::size_t depth);

/// TOP (the class of A) or a representative outside A.
struct QuotientPoint {
  std::optional<SeqPoint> rep;

  static QuotientPoint top() { return {}; }
  static QuotientPoint of(const SpineSet& s, SeqPoint p);
  bool is_top() const { return !rep; }
};

/// A quotient point with its coordinates and spine distance cached.
struct QuotientSample {
  bool top = true;
  std::vector<ExactValue> coords;
  Bounds to_spine;
};

QuotientSample sample(const RelationSystem& sys, const SpineSet& s, const QuotientPoint& p, std::size_t depth);

/// Four-case collapse metric assembled from product and spine-distance bounds.
Bounds quotient_metric(const QuotientSample& p, const QuotientSample& q, std::size_t depth, double diameter);
Bounds quotient_metric(const RelationSystem& sys, const SpineSet& s, const QuotientPoint& p,
                       const QuotientPoint& q, std::size_t depth);

QuotientPoint quotient_shift(const RelationSystem& sys, const SpineSet& s, const QuotientPoint& p);

struct BallReport {
  std::size_t probes = 0;
  std::size_t members = 0;
  std::vector<std::size_t> mismatches;  // probe indices
};

/// Collapse distance on the real line with a finite collapsed set A: 0 when both lie in A,
/// otherwise min{|x - y|, d(x, A) + d(y, A)}.
Rational line_collapse_distance(const Rational& x, const Rational& y, const std::vector<Rational>& A);

/// Real-line version with a finite collapsed set A, in exact arithmetic.
BallReport ball_preimage_check(const Rational& x, const Rational& r, const std::vector<Rational>& A,
                               const std::vector<Rational>& probes);

/// Sequence version: A is enumerated as all spine prefixes of length `depth`.
BallReport ball_preimage_check(const RelationSystem& sys, const SpineSet& s, const QuotientSample& x, double r,
                               const std::vector<QuotientSample>& probes, std::size_t depth);

/// All spine symbol paths of the given length (alphabet values).
std::vector<std::vector<Rational>> spine_prefixes(const SpineSet& s, std::size_t depth);

}  // namespace fanchaos
