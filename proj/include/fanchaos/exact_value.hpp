#pragma once

#include "fanchaos/rational.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace fanchaos {

/// Scale factors shared by every value of a linear-scale system (r and rho for the Lelek relation).
struct ScaleBasis {
  std::vector<Rational> factors;
  std::vector<PrimeVector> primes;
  std::vector<double> approx;
  std::vector<double> rounding;  // |approx - factor|, rounded up

  explicit ScaleBasis(std::vector<Rational> fs);
};

enum class Cmp { Less, Equal, Greater, Unknown };

/// An exactly represented point of the base space.
///
/// Three forms cover every value reachable from a rational start by the supported branch rules:
///  - Corner: a rational piece endpoint (closed under all branches).
///  - Cantor: base^(2^a * 3^b) + anchor, with base in (0,1) rational and not a perfect square or
///    cube, so two Cantor values are equal iff their components are.
///  - Lelek: base * prod_i factor_i^(powers_i); equality is decided on the prime-exponent vector.
///
/// Every value carries a double view and a bound on its distance to the true value.
class ExactValue {
 public:
  enum class Kind { Corner, Cantor, Lelek };

  static ExactValue corner(Rational c);
  /// base^(2^a 3^b) + anchor; base must lie strictly between 0 and 1.
  static ExactValue cantor(Rational base, int a, int b, Rational anchor);
  /// base * prod factor_i^powers_i; base must be positive. `powers` defaults to zeros.
  static ExactValue lelek(std::shared_ptr<const ScaleBasis> basis, Rational base,
                          std::vector<long> powers = {});

  Kind kind() const { return kind_; }
  bool is_corner() const { return kind_ == Kind::Corner; }

  double approx() const { return approx_; }
  double err() const { return err_; }

  const Rational& corner_value() const { return corner_; }
  const Rational& base() const { return base_; }
  int exp2() const { return a_; }
  int exp3() const { return b_; }
  const Rational& anchor() const { return anchor_; }
  const std::vector<long>& powers() const { return powers_; }
  const std::shared_ptr<const ScaleBasis>& basis() const { return basis_; }
  const PrimeVector& prime_vector() const { return primes_; }

  /// Cantor value with exponent multiplied by 2^da 3^db and moved to a new anchor.
  /// Corners keep their local offset (0 or 1) relative to `from_anchor`.
  ExactValue power_step(int da, int db, const Rational& from_anchor, const Rational& to_anchor) const;

  /// Lelek value multiplied by factor_i^dir (dir = +1 or -1). Zero stays zero.
  ExactValue scale_step(std::size_t factor, int dir) const;

  /// Exact three-way comparison against a rational; Unknown only when the float view is
  /// inconclusive and the exact fallback would exceed its size budget.
  Cmp compare(const Rational& c) const;

  bool operator==(const ExactValue& other) const;
  bool operator!=(const ExactValue& other) const { return !(*this == other); }

  std::size_t hash() const;

  /// Human-readable exact form, e.g. "(1/2)^(2^1*3^-1)+2" or "1/2*r^3*rho^1".
  std::string exact_string() const;

 private:
  ExactValue() = default;
  void refresh_cantor_float();

  Kind kind_ = Kind::Corner;
  Rational corner_;
  Rational base_;
  int a_ = 0;
  int b_ = 0;
  Rational anchor_;
  std::shared_ptr<const ScaleBasis> basis_;
  std::vector<long> powers_;
  PrimeVector primes_;
  double approx_ = 0.0;
  double err_ = 0.0;
};

struct ExactValueHash {
  std::size_t operator()(const ExactValue& v) const { return v.hash(); }
};

/// Strips perfect squares and cubes out of a base in (0,1): returns (root, da, db) with
/// base == root^(2^da 3^db).
struct CanonicalBase {
  Rational root;
  int da = 0;
  int db = 0;
};
CanonicalBase canonical_base(const Rational& base);

}  // namespace fanchaos
