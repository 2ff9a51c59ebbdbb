#include "fanchaos/exact_value.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fanchaos {

namespace {

constexpr double kUlp = DBL_EPSILON;            // 2^-52
constexpr long double kLdEps = LDBL_EPSILON;

// Upper bound on |double(q) - q|.
double rounding_of(const Rational& q, double d) {
  Rational diff = Rational(d) - q;
  if (diff == 0) return 0.0;
  double e = std::abs(diff.get_d());
  return std::nextafter(e, std::numeric_limits<double>::infinity()) * 1.0000001;
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  std::size_t n = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i) h = mix(h, mpz_getlimbn(z.get_mpz_t(), i));
  return h;
}

std::size_t hash_q(const Rational& q) { return mix(hash_mpz(q.get_num()), hash_mpz(q.get_den())); }

// bits needed for |z|
std::size_t bits(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

constexpr std::size_t kExactBitBudget = 1u << 21;

// Long double of an integer, correct to about one long double ulp.
long double to_ld(const mpz_class& z) {
  std::size_t nb = bits(z);
  if (nb <= 63) return static_cast<long double>(z.get_si());
  mpz_class top = z >> static_cast<mp_bitcnt_t>(nb - 63);
  return ldexpl(static_cast<long double>(top.get_si()), static_cast<int>(nb - 63));
}

// ln(q) for q > 0 with an absolute error bound.
long double ln_rational(const Rational& q, long double& abs_err) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (q > Rational(1, 2) && q < 2) {
    long double x = to_ld(mpz_class(n - d)) / to_ld(d);
    long double r = log1pl(x);
    abs_err = std::fabs(r) * 6.0L * kLdEps;
    return r;
  }
  long double ln = logl(to_ld(n));
  long double ld = logl(to_ld(d));
  abs_err = (std::fabs(ln) + std::fabs(ld) + 2.0L) * 3.0L * kLdEps;
  return ln - ld;
}

}  // namespace

ScaleBasis::ScaleBasis(std::vector<Rational> fs) : factors(std::move(fs)) {
  for (const auto& f : factors) {
    if (f <= 0) throw std::invalid_argument("scale factor must be positive");
    primes.push_back(factor(f));
    double d = f.get_d();
    approx.push_back(d);
    rounding.push_back(rounding_of(f, d));
  }
}

CanonicalBase canonical_base(const Rational& base) {
  CanonicalBase out{base, 0, 0};
  bool changed = true;
  while (changed) {
    changed = false;
    if (auto r = exact_root(out.root, 2)) {
      out.root = *r;
      ++out.da;
      changed = true;
    }
    if (auto r = exact_root(out.root, 3)) {
      out.root = *r;
      ++out.db;
      changed = true;
    }
  }
  return out;
}

ExactValue ExactValue::corner(Rational c) {
  ExactValue v;
  v.kind_ = Kind::Corner;
  c.canonicalize();
  v.corner_ = c;
  v.approx_ = c.get_d();
  v.err_ = rounding_of(c, v.approx_);
  return v;
}

ExactValue ExactValue::cantor(Rational base, int a, int b, Rational anchor) {
  base.canonicalize();
  if (!(base > 0 && base < 1)) throw std::invalid_argument("cantor base must lie in (0,1)");
  auto cb = canonical_base(base);
  ExactValue v;
  v.kind_ = Kind::Cantor;
  v.base_ = cb.root;
  v.a_ = a + cb.da;
  v.b_ = b + cb.db;
  anchor.canonicalize();
  v.anchor_ = anchor;
  v.refresh_cantor_float();
  return v;
}

void ExactValue::refresh_cantor_float() {
  // Small positive integer exponents are evaluated exactly.
  if (a_ >= 0 && b_ >= 0 && a_ <= 6 && b_ <= 4) {
    long e = (1L << a_);
    for (int i = 0; i < b_; ++i) e *= 3;
    if (e <= 64) {
      Rational value = pow(base_, e) + anchor_;
      approx_ = value.get_d();
      err_ = rounding_of(value, approx_);
      return;
    }
  }
  long double lt_err = 0.0L;
  long double lt = ln_rational(base_, lt_err);  // base_ in (0,1)
  long double e = ldexpl(powl(3.0L, static_cast<long double>(b_)), a_);
  long double y = e * lt;
  long double u = expl(y);
  double anchor_d = anchor_.get_d();
  approx_ = anchor_d + static_cast<double>(u);
  // |dy| <= e*lt_err + |y| * 2eps (exponent product and scaling); exp adds one more eps.
  long double rel = e * lt_err + (2.0L * std::fabs(y) + 2.0L) * kLdEps;
  long double err_u = u * rel * 1.01L;
  if (!std::isfinite(static_cast<double>(err_u)) || u < LDBL_MIN) err_u = static_cast<long double>(DBL_MIN);
  double err = static_cast<double>(err_u) + std::abs(approx_) * kUlp + rounding_of(anchor_, anchor_d);
  err_ = std::nextafter(err, std::numeric_limits<double>::infinity());
}

ExactValue ExactValue::lelek(std::shared_ptr<const ScaleBasis> basis, Rational base,
                             std::vector<long> powers) {
  if (!basis) throw std::invalid_argument("lelek value needs a scale basis");
  base.canonicalize();
  if (base <= 0) throw std::invalid_argument("lelek base must be positive");
  if (powers.empty()) powers.assign(basis->factors.size(), 0);
  if (powers.size() != basis->factors.size()) throw std::invalid_argument("lelek power arity");
  ExactValue v;
  v.kind_ = Kind::Lelek;
  v.base_ = base;
  v.basis_ = std::move(basis);
  v.powers_ = std::move(powers);
  v.primes_ = factor(v.base_);
  long total = 0;
  for (std::size_t i = 0; i < v.powers_.size(); ++i) {
    accumulate(v.primes_, v.basis_->primes[i], v.powers_[i]);
    total += std::abs(v.powers_[i]);
  }
  if (total == 0) {
    v.approx_ = v.base_.get_d();
    v.err_ = rounding_of(v.base_, v.approx_);
    return v;
  }
  // y = ln(base) + sum p_i ln(f_i); error is relative to the sum of term magnitudes.
  long double lb_err = 0.0L;
  long double y = ln_rational(v.base_, lb_err);
  long double dy = lb_err;
  for (std::size_t i = 0; i < v.powers_.size(); ++i) {
    long double lf_err = 0.0L;
    long double lf = ln_rational(v.basis_->factors[i], lf_err);
    long double term = static_cast<long double>(v.powers_[i]) * lf;
    y += term;
    dy += std::fabs(static_cast<long double>(v.powers_[i])) * lf_err + std::fabs(term) * 2.0L * kLdEps;
  }
  long double value = expl(y);
  v.approx_ = static_cast<double>(value);
  long double rel = (dy + 2.0L * kLdEps) * 1.01L;
  double err = static_cast<double>(value * rel) + std::abs(v.approx_) * kUlp;
  if (value < LDBL_MIN) err = DBL_MIN;
  v.err_ = std::nextafter(err, std::numeric_limits<double>::infinity());
  return v;
}

ExactValue ExactValue::power_step(int da, int db, const Rational& from_anchor,
                                  const Rational& to_anchor) const {
  switch (kind_) {
    case Kind::Corner:
      return corner(to_anchor + (corner_ - from_anchor));
    case Kind::Cantor: {
      ExactValue v = *this;
      v.a_ += da;
      v.b_ += db;
      v.anchor_ = to_anchor;
      v.refresh_cantor_float();
      return v;
    }
    case Kind::Lelek:
      break;
  }
  throw std::logic_error("power_step on a scale-family value");
}

ExactValue ExactValue::scale_step(std::size_t factor_index, int dir) const {
  if (kind_ == Kind::Corner) {
    if (corner_ == 0) return *this;
    throw std::logic_error("scale_step on a nonzero corner");
  }
  if (kind_ != Kind::Lelek) throw std::logic_error("scale_step on a power-family value");
  auto p = powers_;
  p.at(factor_index) += dir;
  return lelek(basis_, base_, std::move(p));
}

Cmp ExactValue::compare(const Rational& c) const {
  auto from_float = [&](double x, double e) -> Cmp {
    double cd = c.get_d();
    double slack = e + rounding_of(c, cd);
    if (x - slack > cd) return Cmp::Greater;
    if (x + slack < cd) return Cmp::Less;
    return Cmp::Unknown;
  };
  auto of = [](int s) { return s < 0 ? Cmp::Less : (s > 0 ? Cmp::Greater : Cmp::Equal); };

  switch (kind_) {
    case Kind::Corner:
      return of(cmp(corner_, c));
    case Kind::Cantor: {
      if (c <= anchor_) return Cmp::Greater;
      if (c >= anchor_ + 1) return Cmp::Less;
      if (auto f = from_float(approx_, err_); f != Cmp::Unknown) return f;
      Rational w = c - anchor_;  // in (0,1)
      // u = base^(P/Q) vs w  <=>  base^P vs w^Q
      if (a_ > 60 || a_ < -60 || b_ > 38 || b_ < -38) return Cmp::Unknown;
      mpz_class P = 1, Q = 1;
      mpz_class two_a, three_b;
      mpz_ui_pow_ui(two_a.get_mpz_t(), 2, static_cast<unsigned long>(std::abs(a_)));
      mpz_ui_pow_ui(three_b.get_mpz_t(), 3, static_cast<unsigned long>(std::abs(b_)));
      (a_ >= 0 ? P : Q) *= two_a;
      (b_ >= 0 ? P : Q) *= three_b;
      if (!P.fits_ulong_p() || !Q.fits_ulong_p()) return Cmp::Unknown;
      std::size_t cost = P.get_ui() * (bits(base_.get_num()) + bits(base_.get_den())) +
                         Q.get_ui() * (bits(w.get_num()) + bits(w.get_den()));
      if (cost > kExactBitBudget) return Cmp::Unknown;
      Rational lhs = pow(base_, static_cast<long>(P.get_ui()));
      Rational rhs = pow(w, static_cast<long>(Q.get_ui()));
      return of(cmp(lhs, rhs));
    }
    case Kind::Lelek: {
      if (c <= 0) return Cmp::Greater;
      if (auto f = from_float(approx_, err_); f != Cmp::Unknown) return f;
      if (primes_ == factor(c)) return Cmp::Equal;
      std::size_t cost = bits(base_.get_num()) + bits(base_.get_den());
      for (std::size_t i = 0; i < powers_.size(); ++i) {
        const auto& f = basis_->factors[i];
        cost += static_cast<std::size_t>(std::abs(powers_[i])) * (bits(f.get_num()) + bits(f.get_den()));
      }
      if (cost > kExactBitBudget) return Cmp::Unknown;
      Rational value = base_;
      for (std::size_t i = 0; i < powers_.size(); ++i) value *= pow(basis_->factors[i], powers_[i]);
      return of(cmp(value, c));
    }
  }
  return Cmp::Unknown;
}

bool ExactValue::operator==(const ExactValue& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Corner:
      return corner_ == o.corner_;
    case Kind::Cantor:
      return a_ == o.a_ && b_ == o.b_ && anchor_ == o.anchor_ && base_ == o.base_;
    case Kind::Lelek:
      return primes_ == o.primes_;
  }
  return false;
}

std::size_t ExactValue::hash() const {
  std::size_t h = static_cast<std::size_t>(kind_);
  switch (kind_) {
    case Kind::Corner:
      return mix(h, hash_q(corner_));
    case Kind::Cantor:
      h = mix(h, hash_q(base_));
      h = mix(h, static_cast<std::size_t>(a_ + 1000003));
      h = mix(h, static_cast<std::size_t>(b_ + 2000003));
      return mix(h, hash_q(anchor_));
    case Kind::Lelek:
      for (const auto& [p, e] : primes_) h = mix(mix(h, hash_mpz(p)), static_cast<std::size_t>(e));
      return h;
  }
  return h;
}

std::string ExactValue::exact_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Corner:
      os << to_string(corner_);
      break;
    case Kind::Cantor:
      os << "(" << to_string(base_) << ")^(2^" << a_ << "*3^" << b_ << ")";
      if (anchor_ != 0) os << "+" << to_string(anchor_);
      break;
    case Kind::Lelek:
      os << to_string(base_);
      for (std::size_t i = 0; i < powers_.size(); ++i)
        os << "*(" << to_string(basis_->factors[i]) << ")^" << powers_[i];
      break;
  }
  return os.str();
}

}  // namespace fanchaos
