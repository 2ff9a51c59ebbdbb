#include "fanchaos/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace fanchaos {

namespace {

mpz_class parse_integer(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("bad integer: " + std::string(s));
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw std::invalid_argument("bad integer: " + std::string(s));
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void factor_into(mpz_class n, long sign, PrimeVector& out) {
  if (n < 0) n = -n;
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out[mpz_class(p)] += sign;
      n /= p;
    }
  }
  // wheel over 6k +/- 1
  for (unsigned long p = 7, step = 4; n > 1; p += step, step = 6 - step) {
    mpz_class pp(p);
    if (pp * pp > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out[pp] += sign;
      n /= p;
    }
    if (p > 10'000'000UL) {
      // cofactor too large for trial division; keep it as an opaque factor
      break;
    }
  }
  if (n > 1) out[n] += sign;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(trim(s.substr(0, slash)));
    mpz_class den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    bool neg = s[0] == '-';
    auto whole = s.substr(neg || s[0] == '+' ? 1 : 0, dot - (neg || s[0] == '+' ? 1 : 0));
    auto frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw std::invalid_argument("bad decimal");
    mpz_class w = whole.empty() ? mpz_class(0) : parse_integer(whole);
    mpz_class f = frac.empty() ? mpz_class(0) : parse_integer(frac);
    if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) throw std::invalid_argument("bad decimal");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rational q(w * scale + f, scale);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  return Rational(parse_integer(s));
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

PrimeVector factor(const Rational& q) {
  if (q == 0) throw std::invalid_argument("factor of zero");
  PrimeVector out;
  factor_into(q.get_num(), +1, out);
  factor_into(q.get_den(), -1, out);
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

void accumulate(PrimeVector& acc, const PrimeVector& v, long times) {
  if (times == 0) return;
  for (const auto& [p, e] : v) {
    auto& slot = acc[p];
    slot += e * times;
    if (slot == 0) acc.erase(p);
  }
}

Rational ratio(long p, long q) {
  if (q == 0) throw std::invalid_argument("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::optional<Rational> exact_root(const Rational& q, unsigned long k) {
  if (q <= 0) return std::nullopt;
  mpz_class n, d;
  if (mpz_root(n.get_mpz_t(), q.get_num_mpz_t(), k) == 0) return std::nullopt;
  if (mpz_root(d.get_mpz_t(), q.get_den_mpz_t(), k) == 0) return std::nullopt;
  return Rational(n, d);
}

Rational pow(const Rational& q, long n) {
  unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), m);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), m);
  Rational r = n < 0 ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

namespace {

// Simplest rational in (lo, hi); hi == nullopt means +infinity. lo >= 0.
Rational simplest_open(const Rational& lo, const std::optional<Rational>& hi) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  Rational next(fl + 1);
  if (!hi || next < *hi) return next;
  // lo and hi share the integer part fl, with hi <= fl + 1.
  Rational lo_frac = lo - Rational(fl);
  Rational hi_frac = *hi - Rational(fl);
  std::optional<Rational> inv_hi;
  if (lo_frac != 0) inv_hi = Rational(1) / lo_frac;
  Rational inner = simplest_open(Rational(1) / hi_frac, inv_hi);
  Rational r = Rational(fl) + Rational(1) / inner;
  r.canonicalize();
  return r;
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("simplest_between: empty interval");
  if (lo < 0 && hi > 0) return Rational(0);
  if (hi <= 0) {
    Rational r = simplest_open(Rational(-hi), Rational(-lo));
    return Rational(-r);
  }
  return simplest_open(lo, hi);
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("from_double: non-finite");
  Rational q(x);
  q.canonicalize();
  return q;
}

}  // namespace fanchaos
