#include "ccq/numeric.hpp"

#include <cmath>
#include <stdexcept>

#include "ccq/errors.hpp"

namespace ccq {

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer iroot_floor(const Integer& x, unsigned k) {
  if (x < 0) throw DomainError("iroot_floor: negative argument");
  Integer r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

Integer iroot_ceil(const Integer& x, unsigned k) {
  Integer r = iroot_floor(x, k);
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), r.get_mpz_t(), k);
  if (p < x) r += 1;
  return r;
}

bool exact_cube_root(std::int64_t x, std::int64_t& root) {
  const bool neg = x < 0;
  const std::int64_t ax = neg ? -x : x;
  auto r = static_cast<std::int64_t>(std::llround(std::cbrt(static_cast<double>(ax))));
  for (std::int64_t c = r - 1; c <= r + 1; ++c) {
    if (c < 0) continue;
    if (static_cast<__int128>(c) * c * c == ax) {
      root = neg ? -c : c;
      return true;
    }
  }
  return false;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

double log_abs(const Integer& x) {
  if (x == 0) throw DomainError("log of zero");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

double log_abs(const Rational& x) {
  return log_abs(Integer(x.get_num())) - log_abs(Integer(x.get_den()));
}

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw DomainError("not a rational number: '" + s + "'");
  if (q.get_den() == 0) throw DomainError("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace ccq
