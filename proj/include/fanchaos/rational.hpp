#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace fanchaos {

using Rational = mpq_class;

/// Prime-exponent vector of a nonzero rational: p -> v_p(q).
using PrimeVector = std::map<mpz_class, long>;

/// p/q in lowest terms (mpq_class(p, q) alone does not reduce).
Rational ratio(long p, long q);

/// Parses "p/q", an integer, or a finite decimal ("0.375") into a reduced rational.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text; integers print without a denominator.
std::string to_string(const Rational& q);

/// Factorizes |q| into primes; q must be nonzero.
PrimeVector factor(const Rational& q);

/// Adds `times` copies of `v` into `acc`, dropping zero entries.
void accumulate(PrimeVector& acc, const PrimeVector& v, long times);

/// Exact k-th root of a positive rational if it exists.
std::optional<Rational> exact_root(const Rational& q, unsigned long k);

/// q^n for a signed exponent (q nonzero when n < 0).
Rational pow(const Rational& q, long n);

/// The rational with the smallest denominator in the open interval (lo, hi).
/// Requires lo < hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Exact conversion of a finite double.
Rational from_double(double x);

}  // namespace fanchaos
