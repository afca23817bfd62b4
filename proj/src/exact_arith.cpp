#include "ccq/exact_arith.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ccq/errors.hpp"

namespace ccq {

PrimeTable primes_up_to(std::uint64_t x) {
  PrimeTable t;
  t.bound = x;
  if (x < 2) return t;
  std::vector<bool> composite(x + 1, false);
  for (std::uint64_t i = 2; i * i <= x; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= x; j += i) composite[j] = true;
  }
  for (std::uint64_t i = 2; i <= x; ++i)
    if (!composite[i]) t.primes.push_back(i);
  return t;
}

PrimeSums theta_psi_phi(double x) {
  PrimeSums s;
  if (x < 2) return s;
  const auto table = primes_up_to(static_cast<std::uint64_t>(std::floor(x)));
  for (auto p : table.primes) {
    const double lp = std::log(static_cast<double>(p));
    s.theta += lp;
    s.psi += lp / static_cast<double>(p);
    s.phi += lp / std::pow(static_cast<double>(p), 1.5);
  }
  return s;
}

MertensReport mertens_check(double x_max, double step) {
  if (x_max < 2) throw DomainError("mertens_check needs x_max >= 2");
  if (!(step > 0)) throw DomainError("mertens_check needs a positive step");
  MertensReport r;
  r.x_max = x_max;
  r.step = step;
  const auto table = primes_up_to(static_cast<std::uint64_t>(std::floor(x_max)));
  // psi is a step function; walk primes and samples together.
  double psi = 0;
  std::size_t next = 0;
  for (double x = 2; x <= x_max; x += step) {
    while (next < table.primes.size() && static_cast<double>(table.primes[next]) <= x) {
      const double p = static_cast<double>(table.primes[next]);
      psi += std::log(p) / p;
      ++next;
    }
    r.sup_sampled = std::max(r.sup_sampled, std::fabs(psi - std::log(x)));
    ++r.samples;
  }
  // Exact supremum: psi - log x is decreasing between primes, so the extremes sit at each prime
  // (value just after the jump) and just before the next prime, plus the right end point.
  psi = 0;
  double sup = 0;
  for (std::size_t i = 0; i < table.primes.size(); ++i) {
    const double p = static_cast<double>(table.primes[i]);
    if (i > 0) sup = std::max(sup, std::fabs(psi - std::log(p)));
    psi += std::log(p) / p;
    sup = std::max(sup, std::fabs(psi - std::log(p)));
  }
  sup = std::max(sup, std::fabs(psi - std::log(x_max)));
  r.sup_exact = sup;
  r.epsilon2 = sup;
  return r;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime(std::uint64_t n) { return is_prime(Integer(std::to_string(n))); }

namespace {

Integer pollard_rho(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](const Integer& v) {
      Integer r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      Integer diff = x - y;
      mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
      d = gcd(diff, n);
    }
    if (d != n) return d;
  }
}

void factor_into(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(Integer(n / d), out);
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& a) {
  if (a == 0) throw DomainError("factorisation of zero");
  Integer n = a;
  mpz_abs(n.get_mpz_t(), n.get_mpz_t());
  std::map<Integer, unsigned> found;
  for (unsigned long p = 2; p < 10000 && mpz_cmp_ui(n.get_mpz_t(), p * p) >= 0; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      found[Integer(p)] += 1;
      n /= p;
    }
  }
  factor_into(n, found);
  return {found.begin(), found.end()};
}

DivisorPrimeSum prime_sum_over_divisors(const Integer& a) {
  Integer abs_a = a;
  mpz_abs(abs_a.get_mpz_t(), abs_a.get_mpz_t());
  if (abs_a < 2) throw DomainError("prime_sum_over_divisors needs |a| >= 2");
  DivisorPrimeSum s;
  for (const auto& [p, mult] : factor_integer(abs_a)) {
    const double lp = log_abs(p);
    s.value += lp / p.get_d();
  }
  s.bound = std::log(log_abs(abs_a)) + 2;
  s.within_bound = s.value <= s.bound;
  return s;
}

Integer bertrand_prime(const Integer& r) {
  if (r < 2) throw DomainError("bertrand_prime needs R >= 2");
  for (Integer c = r; 2 * c > r; --c)
    if (is_prime(c)) return c;
  throw InvariantError("no prime in (R/2, R]");
}

// ---------------------------------------------------------------------------
// Finite fields

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

// A monic polynomial of degree <= 3 over F_p is irreducible iff it has no root.
bool has_root(const std::vector<std::uint64_t>& poly, std::uint64_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t i = poly.size(); i-- > 0;) v = (v * x + poly[i]) % p;
    if (v == 0) return true;
  }
  return false;
}

}  // namespace

GaloisField::GaloisField(std::uint64_t p, int e) : p_(p), e_(e) {
  if (e < 1 || e > 3) throw DomainError("finite fields are supported for extension degree 1..3");
  if (!is_prime(p)) throw DomainError("field characteristic must be prime");
  if (p >= (1ULL << 31)) throw DomainError("field characteristic too large");
  q_ = 1;
  for (int i = 0; i < e; ++i) q_ *= p;
  if (e == 1) {
    modulus_ = {0, 1};
    return;
  }
  if (q_ > (1ULL << 22)) throw DomainError("extension field too large for table arithmetic");
  // first monic irreducible x^e + c_{e-1} x^{e-1} + ... + c_0 in increasing (c_0, c_1, ...) order
  for (std::uint64_t code = 0; code < q_; ++code) {
    std::vector<std::uint64_t> poly(e + 1);
    std::uint64_t c = code;
    for (int i = 0; i < e; ++i) {
      poly[i] = c % p;
      c /= p;
    }
    poly[e] = 1;
    if (poly[0] != 0 && !has_root(poly, p)) {
      modulus_ = poly;
      break;
    }
  }
  if (modulus_.empty()) throw InvariantError("no irreducible polynomial found");
  // log tables from the first element of full multiplicative order
  std::vector<std::uint64_t> prime_factors;
  {
    std::uint64_t m = q_ - 1;
    for (std::uint64_t d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        prime_factors.push_back(d);
        while (m % d == 0) m /= d;
      }
    if (m > 1) prime_factors.push_back(m);
  }
  auto slow_pow = [&](std::uint32_t b, std::uint64_t k) {
    std::uint32_t r = 1;
    while (k) {
      if (k & 1) r = slow_mul(r, b);
      b = slow_mul(b, b);
      k >>= 1;
    }
    return r;
  };
  std::uint32_t gen = 0;
  for (std::uint32_t g = 2; g < q_; ++g) {
    bool ok = true;
    for (auto f : prime_factors)
      if (slow_pow(g, (q_ - 1) / f) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      gen = g;
      break;
    }
  }
  if (gen == 0) throw InvariantError("no multiplicative generator found");
  log_.assign(q_, 0);
  exp_.assign(q_ - 1, 0);
  std::uint32_t v = 1;
  for (std::uint64_t i = 0; i + 1 < q_; ++i) {
    exp_[i] = v;
    log_[v] = static_cast<std::uint32_t>(i);
    v = slow_mul(v, gen);
  }
}

std::uint32_t GaloisField::slow_mul(std::uint32_t a, std::uint32_t b) const {
  std::vector<std::uint64_t> da(e_), db(e_), prod(2 * e_ - 1, 0);
  for (int i = 0; i < e_; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  for (int i = 0; i < e_; ++i)
    for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  for (int k = 2 * e_ - 2; k >= e_; --k) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    for (int i = 0; i <= e_; ++i) prod[k - e_ + i] = (prod[k - e_ + i] + (p_ - c) * modulus_[i]) % p_;
  }
  std::uint64_t out = 0;
  for (int i = e_ - 1; i >= 0; --i) out = out * p_ + prod[i];
  return static_cast<std::uint32_t>(out);
}

std::uint32_t GaloisField::add(std::uint32_t a, std::uint32_t b) const {
  if (e_ == 1) return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) + b) % p_);
  std::uint64_t out = 0, scale = 1;
  for (int i = 0; i < e_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return static_cast<std::uint32_t>(out);
}

std::uint32_t GaloisField::neg(std::uint32_t a) const {
  if (e_ == 1) return a == 0 ? 0 : static_cast<std::uint32_t>(p_ - a);
  std::uint64_t out = 0, scale = 1;
  for (int i = 0; i < e_; ++i) {
    const std::uint64_t d = a % p_;
    out += (d == 0 ? 0 : p_ - d) * scale;
    a /= p_;
    scale *= p_;
  }
  return static_cast<std::uint32_t>(out);
}

std::uint32_t GaloisField::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t GaloisField::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  if (e_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (q_ - 1)];
}

std::uint32_t GaloisField::inv(std::uint32_t a) const {
  if (a == 0) throw DomainError("inverse of zero in a finite field");
  if (e_ == 1) return static_cast<std::uint32_t>(powmod(a, p_ - 2, p_));
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t GaloisField::from_rational(const Rational& x) const {
  Integer pp(std::to_string(p_));
  Integer num = x.get_num() % pp, den = x.get_den() % pp;
  if (num < 0) num += pp;
  if (den == 0) throw DomainError("denominator divisible by the field characteristic");
  const std::uint64_t n = num.get_ui(), d = den.get_ui();
  return static_cast<std::uint32_t>(static_cast<unsigned __int128>(n) * powmod(d, p_ - 2, p_) % p_);
}

std::string GaloisField::to_string(std::uint32_t a) const {
  if (e_ == 1) return std::to_string(a);
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < e_; ++i) {
    if (i) os << ",";
    os << a % p_;
    a /= static_cast<std::uint32_t>(p_);
  }
  os << "]";
  return os.str();
}

FFPoly reduce_mod(const MultiPoly& f, const GaloisField& field) {
  FFPoly out;
  for (const auto& [e, c] : f.terms()) {
    const std::uint32_t v = field.from_rational(c);
    if (v != 0) out.emplace(e, v);
  }
  return out;
}

namespace {

void ff_add_term(FFPoly& f, const Exponents& e, std::uint32_t c, const GaloisField& field) {
  if (c == 0) return;
  auto [it, ins] = f.try_emplace(e, c);
  if (!ins) {
    it->second = field.add(it->second, c);
    if (it->second == 0) f.erase(it);
  }
}

// grlex division by a polynomial whose leading coefficient is 1
std::pair<FFPoly, FFPoly> ff_divide(FFPoly p, const FFPoly& g, const GaloisField& field, int n) {
  FFPoly q, r;
  const Exponents& lg = g.begin()->first;
  const std::uint32_t inv_lc = field.inv(g.begin()->second);
  Exponents d(n), s(n);
  while (!p.empty()) {
    const Exponents lp = p.begin()->first;
    const std::uint32_t cp = p.begin()->second;
    bool div = true;
    for (int i = 0; i < n; ++i) div = div && lg[i] <= lp[i];
    if (!div) {
      r.emplace(lp, cp);
      p.erase(p.begin());
      continue;
    }
    for (int i = 0; i < n; ++i) d[i] = lp[i] - lg[i];
    const std::uint32_t c = field.mul(cp, inv_lc);
    ff_add_term(q, d, c, field);
    for (const auto& [e, ce] : g) {
      for (int i = 0; i < n; ++i) s[i] = e[i] + d[i];
      ff_add_term(p, s, field.neg(field.mul(c, ce)), field);
    }
  }
  return {std::move(q), std::move(r)};
}

std::uint32_t ff_evaluate(const FFPoly& f, const std::vector<std::uint32_t>& x, const GaloisField& field) {
  std::uint32_t acc = 0;
  for (const auto& [ex, c] : f) {
    std::uint32_t term = c;
    for (std::size_t i = 0; i < ex.size() && term != 0; ++i)
      for (int k = 0; k < ex[i]; ++k) term = field.mul(term, x[i]);
    acc = field.add(acc, term);
  }
  return acc;
}

}  // namespace

FFPoly ff_multiply(const FFPoly& a, const FFPoly& b, const GaloisField& field, int nvars) {
  FFPoly out;
  Exponents s(nvars);
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      for (int i = 0; i < nvars; ++i) s[i] = ea[i] + eb[i];
      ff_add_term(out, s, field.mul(ca, cb), field);
    }
  return out;
}

std::vector<LinearFactor> ff_factor_linear(const MultiPoly& f, std::uint64_t p, int e, std::uint64_t budget) {
  const int n = f.nvars();
  if (n < 1) throw DomainError("ff_factor_linear needs at least one variable");
  // p^(e*n) against the budget, guarding overflow
  unsigned __int128 space = 1;
  for (int i = 0; i < e * n; ++i) {
    space *= p;
    if (space > budget)
      throw BudgetError("linear factor enumeration over F_" + std::to_string(p) + "^" + std::to_string(e) + " in " +
                        std::to_string(n) + " variables exceeds the budget");
  }
  const GaloisField field(p, e);
  const FFPoly fp = reduce_mod(f, field);
  if (fp.empty()) throw DomainError("polynomial vanishes identically modulo p");
  const std::uint64_t q = field.order();
  std::vector<LinearFactor> out;
  for (int pivot = 0; pivot < n; ++pivot) {
    // A factor T_pivot + sum c_j T_j forces f(-c_j e_pivot + e_j) = 0 for each j: prune to those roots.
    std::vector<std::vector<std::uint32_t>> choices(n);
    std::uint64_t combos = 1;
    for (int j = pivot + 1; j < n; ++j) {
      std::vector<std::uint32_t> x(n, 0);
      x[j] = 1;
      for (std::uint32_t c = 0; c < q; ++c) {
        x[pivot] = field.neg(c);
        if (ff_evaluate(fp, x, field) == 0) choices[j].push_back(c);
      }
      combos *= choices[j].size();
    }
    if (combos == 0) continue;
    std::vector<std::uint32_t> coeffs(n, 0);
    for (std::uint64_t code = 0; code < combos; ++code) {
      std::fill(coeffs.begin(), coeffs.end(), 0);
      coeffs[pivot] = 1;
      std::uint64_t c = code;
      for (int j = pivot + 1; j < n; ++j) {
        coeffs[j] = choices[j][c % choices[j].size()];
        c /= choices[j].size();
      }
      FFPoly form;
      for (int j = 0; j < n; ++j) {
        if (coeffs[j] == 0) continue;
        Exponents ex(n, 0);
        ex[j] = 1;
        form.emplace(ex, coeffs[j]);
      }
      auto [quot, rem] = ff_divide(fp, form, field, n);
      if (!rem.empty()) continue;
      if (ff_multiply(form, quot, field, n) != fp) throw InvariantError("linear factor failed the product check");
      out.push_back({coeffs, std::move(quot)});
    }
  }
  return out;
}

std::string linear_form_text(const std::vector<std::uint32_t>& coeffs, const GaloisField& field,
                             const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (coeffs[i] != 1) os << field.to_string(coeffs[i]) << "*";
    os << names[i];
  }
  return first ? "0" : os.str();
}

}  // namespace ccq
