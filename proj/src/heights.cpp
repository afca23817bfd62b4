#include "ccq/heights.hpp"

#include <cmath>
#include <set>

#include "ccq/errors.hpp"
#include "ccq/exact_arith.hpp"

namespace ccq {

HeightValue HeightValue::of(const Rational& value) { return {value, log_abs(value)}; }

Normalized<std::vector<Integer>> normalize_primitive(const std::vector<Rational>& coords) {
  Integer l = 1, g = 0;
  bool nonzero = false;
  for (const auto& x : coords) {
    l = lcm(l, Integer(x.get_den()));
    nonzero = nonzero || x != 0;
  }
  if (!nonzero) throw DomainError("normalising the zero vector");
  std::vector<Integer> v;
  for (const auto& x : coords) {
    Rational y = x * l;
    v.push_back(y.get_num());
    g = gcd(g, v.back());
  }
  for (const auto& x : v)
    if (x != 0) {
      if (x < 0) g = -g;
      break;
    }
  for (auto& x : v) x /= g;
  Rational scalar(g, l);
  scalar.canonicalize();
  return {std::move(v), scalar};
}

Normalized<MultiPoly> normalize_primitive(const MultiPoly& f) {
  auto [p, s] = primitive_normalize(f);
  return {std::move(p), s};
}

ProjPoint ProjPoint::from_rationals(const std::vector<Rational>& coords) {
  ProjPoint p;
  p.coords_ = normalize_primitive(coords).value;
  p.height_ = 0;
  for (const auto& x : p.coords_) {
    Integer a = abs(x);
    if (a > p.height_) p.height_ = a;
  }
  return p;
}

ProjPoint ProjPoint::from_integers(const std::vector<Integer>& coords) {
  std::vector<Rational> q(coords.begin(), coords.end());
  return from_rationals(q);
}

HeightValue point_height(const ProjPoint& p) { return HeightValue::of(Rational(p.height())); }

Rational padic_abs(const Rational& x, const Integer& p) {
  if (x == 0) return 0;
  long v = 0;
  Integer num = x.get_num(), den = x.get_den();
  while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
    num /= p;
    ++v;
  }
  while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
    den /= p;
    --v;
  }
  Integer pw;
  mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
  return v >= 0 ? Rational(1, pw) : Rational(pw);
}

HeightValue height_by_places(const std::vector<Rational>& coords) {
  std::set<Integer> primes;
  Rational arch = 0;
  bool nonzero = false;
  for (const auto& x : coords) {
    if (x == 0) continue;
    nonzero = true;
    if (abs(x) > arch) arch = abs(x);
    for (const Integer& part : {Integer(x.get_num()), Integer(x.get_den())}) {
      if (abs(part) < 2) continue;
      for (const auto& [p, m] : factor_integer(part)) primes.insert(p);
    }
  }
  if (!nonzero) throw DomainError("height of the zero vector");
  Rational h = arch;
  for (const auto& p : primes) {
    Rational best = 0;
    for (const auto& x : coords) {
      Rational a = padic_abs(x, p);
      if (a > best) best = a;
    }
    h *= best;
  }
  h.canonicalize();
  return HeightValue::of(h);
}

HeightValue poly_height(const MultiPoly& f) {
  if (f.is_zero()) throw DomainError("height of the zero polynomial");
  auto p = primitive_normalize(f).first;
  Rational m = 0;
  for (const auto& [e, c] : p.terms())
    if (abs(c) > m) m = abs(c);
  return HeightValue::of(m);
}

HeightValue affine_height(const std::vector<Rational>& coords) {
  Rational m = 0;
  for (const auto& x : coords)
    if (abs(x) > m) m = abs(x);
  if (m == 0) throw DomainError("affine height of the zero vector");
  return HeightValue::of(m);
}

HeightValue affine_height(const MultiPoly& f) {
  std::vector<Rational> c;
  for (const auto& [e, v] : f.terms()) c.push_back(v);
  return affine_height(c);
}

bool product_formula_check(const Rational& x) {
  if (x == 0) throw DomainError("product formula for zero");
  Rational prod = abs(x);
  for (const Integer& part : {Integer(x.get_num()), Integer(x.get_den())}) {
    if (abs(part) < 2) continue;
    for (const auto& [p, m] : factor_integer(part)) prod *= padic_abs(x, p);
  }
  return prod == 1;
}

Rational harmonic_number(long long n) {
  Rational s = 0;
  for (long long k = 1; k <= n; ++k) s += Rational(1, static_cast<long>(k));
  s.canonicalize();
  return s;
}

HeightComparisonAudit height_comparison_audit(const MultiPoly& psi, int n, int d, int delta) {
  if (n < 1 || d < 0 || d >= n || delta < 1) throw DomainError("height_comparison_audit: invalid (n, d, delta)");
  HeightComparisonAudit a;
  a.n = n;
  a.d = d;
  a.delta = delta;
  a.N = binomial(n + 1, d + 1).get_si() - 1;
  a.harmonic = harmonic_number(a.N);
  a.h_psi = poly_height(psi).h;
  const double hn = a.harmonic.get_d();
  const double np1 = static_cast<double>(a.N + 1);
  a.lower_offset = -0.5 * (std::log(np1 * (delta + 1)) + delta * hn);
  a.upper_offset = np1 * delta * std::log(2.0) + 4.0 * delta * std::log(np1) - 0.5 * delta * hn;
  a.window_width = a.upper_offset - a.lower_offset;
  a.h_psi_nonnegative = a.h_psi >= 0;
  return a;
}

}  // namespace ccq
