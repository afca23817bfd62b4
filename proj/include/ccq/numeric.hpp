#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ccq {

using Integer = mpz_class;
using Rational = mpq_class;

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer binomial(long n, long k);  // 0 when k < 0 or k > n or n < 0

/// Floor of the real k-th root of a nonnegative integer.
Integer iroot_floor(const Integer& x, unsigned k);
/// Smallest r >= 0 with r^k >= x.
Integer iroot_ceil(const Integer& x, unsigned k);

/// Exact integer cube root if x is a perfect cube, else false. Works for negative x.
bool exact_cube_root(std::int64_t x, std::int64_t& root);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

/// Natural log of a positive rational, accurate to double precision even for huge values.
double log_abs(const Rational& x);
double log_abs(const Integer& x);

/// Rational from "a", "-a", "a/b".
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Canonical positive form of a rational (denominator positive, reduced).
inline Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

}  // namespace ccq
