#include <cmath>
#include <random>

#include "ccq/exact_arith.hpp"
#include "doctest.h"

using namespace ccq;

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("sieve against trial division") {
  CHECK(primes_up_to(1).primes.empty());
  CHECK(primes_up_to(10).primes == std::vector<std::uint64_t>{2, 3, 5, 7});
  auto t30 = primes_up_to(30);
  CHECK(t30.primes.size() == 10);
  CHECK(t30.primes.back() == 29);
  auto t = primes_up_to(5000);
  std::size_t idx = 0;
  for (std::uint64_t n = 0; n <= 5000; ++n) {
    if (!trial_division_prime(n)) continue;
    REQUIRE(idx < t.primes.size());
    CHECK(t.primes[idx++] == n);
  }
  CHECK(idx == t.primes.size());
}

TEST_CASE("prime sums at small x") {
  auto s1 = theta_psi_phi(1);
  CHECK(s1.theta == 0);
  CHECK(s1.psi == 0);
  CHECK(s1.phi == 0);
  auto s = theta_psi_phi(10);
  double theta = 0, psi = 0, phi = 0;
  for (double p : {2.0, 3.0, 5.0, 7.0}) {
    theta += std::log(p);
    psi += std::log(p) / p;
    phi += std::log(p) / std::pow(p, 1.5);
  }
  CHECK(s.theta == doctest::Approx(theta).epsilon(1e-12));
  CHECK(s.theta == doctest::Approx(5.3471).epsilon(1e-4));
  CHECK(s.psi == doctest::Approx(psi).epsilon(1e-12));
  CHECK(s.psi == doctest::Approx(1.3127).epsilon(1e-4));
  CHECK(s.phi == doctest::Approx(phi).epsilon(1e-12));
}

TEST_CASE("prime sums are monotone and theta stays near x") {
  double prev_theta = 0, prev_psi = 0, prev_phi = 0;
  for (double x = 1000; x <= 1e6; x *= 1.7) {
    auto s = theta_psi_phi(x);
    CHECK(s.theta >= prev_theta);
    CHECK(s.psi >= prev_psi);
    CHECK(s.phi >= prev_phi);
    CHECK(s.theta / x >= 0.8);
    CHECK(s.theta / x <= 1.2);
    prev_theta = s.theta;
    prev_psi = s.psi;
    prev_phi = s.phi;
  }
}

TEST_CASE("Mertens-type estimate stays bounded") {
  auto small = mertens_check(2, 1);
  CHECK(small.samples == 1);
  auto r4 = mertens_check(1e4, 1);
  CHECK(r4.sup_exact < 2);
  CHECK(r4.sup_sampled <= r4.sup_exact + 1e-12);
  auto r6 = mertens_check(1e6, 1000);
  CHECK(r6.sup_exact <= r4.sup_exact + 0.05);
}

TEST_CASE("prime sum over divisors") {
  auto a2 = prime_sum_over_divisors(2);
  CHECK(a2.value == doctest::Approx(std::log(2.0) / 2));
  CHECK(a2.within_bound);
  auto a12 = prime_sum_over_divisors(12);
  CHECK(a12.value == doctest::Approx(std::log(2.0) / 2 + std::log(3.0) / 3));
  CHECK(a12.value == doctest::Approx(0.7128).epsilon(1e-4));
  CHECK(a12.bound == doctest::Approx(std::log(std::log(12.0)) + 2));
  CHECK(a12.within_bound);
  CHECK(prime_sum_over_divisors(-30).value == prime_sum_over_divisors(30).value);
  CHECK_THROWS_AS(prime_sum_over_divisors(1), DomainError);
  CHECK_THROWS_AS(prime_sum_over_divisors(-1), DomainError);
  // a product of two large primes goes through Pollard rho
  Integer big = Integer("1000000007") * Integer("998244353");
  auto f = factor_integer(big);
  REQUIRE(f.size() == 2);
  CHECK(f[0].first == Integer("998244353"));
}

TEST_CASE("Bertrand prime") {
  CHECK(bertrand_prime(2) == 2);
  CHECK(bertrand_prime(10) == 7);
  CHECK(bertrand_prime(100) == 97);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    Integer r = static_cast<unsigned long>(2 + rng() % 1000000);
    Integer p = bertrand_prime(r);
    CHECK(2 * p > r);
    CHECK(p <= r);
    CHECK(is_prime(p));
  }
}

TEST_CASE("finite field axioms") {
  for (auto [p, e] : std::vector<std::pair<std::uint64_t, int>>{{2, 2}, {3, 3}, {5, 2}, {7, 1}, {2, 3}}) {
    GaloisField f(p, e);
    std::mt19937_64 rng(p * 10 + e);
    const auto q = f.order();
    for (int i = 0; i < 300; ++i) {
      auto a = static_cast<std::uint32_t>(rng() % q), b = static_cast<std::uint32_t>(rng() % q),
           c = static_cast<std::uint32_t>(rng() % q);
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
    }
  }
}

TEST_CASE("linear factors over finite fields") {
  auto names = default_names(3, "T");
  auto diff_sq = ff_factor_linear(parse_poly("T0^2 - T1^2", 2, default_names(2, "T")), 3, 1);
  REQUIRE(diff_sq.size() == 2);
  // normalised forms T0 + T1 and T0 + 2 T1 (= T0 - T1)
  CHECK(diff_sq[0].coeffs == std::vector<std::uint32_t>{1, 1});
  CHECK(diff_sq[1].coeffs == std::vector<std::uint32_t>{1, 2});
  CHECK(ff_factor_linear(parse_poly("T0^2 + T1^2 + T2^2", 3, names), 3, 1).empty());
  auto lin = ff_factor_linear(parse_poly("T0", 1, default_names(1, "T")), 2, 1);
  REQUIRE(lin.size() == 1);
  CHECK(lin[0].coeffs == std::vector<std::uint32_t>{1});
  // T0^2 + T1^2 is irreducible over F_3 and splits over F_9
  auto binary = parse_poly("T0^2 + T1^2", 2, default_names(2, "T"));
  CHECK(ff_factor_linear(binary, 3, 1).empty());
  CHECK(ff_factor_linear(binary, 3, 2).size() == 2);
  // three conjugate lines appear only over F_{p^3}: T0^3 - 2 T1^3 over F_7 (2 is not a cube mod 7)
  auto cube = parse_poly("T0^3 - 2*T1^3", 2, default_names(2, "T"));
  CHECK(ff_factor_linear(cube, 7, 1).empty());
  CHECK(ff_factor_linear(cube, 7, 2).empty());
  CHECK(ff_factor_linear(cube, 7, 3).size() == 3);
  CHECK_THROWS_AS(ff_factor_linear(parse_poly("T0*T1*T2", 3, names), 101, 3, 1000000), BudgetError);
}

TEST_CASE("linear factors multiply back to the input") {
  std::mt19937_64 rng(9);
  auto names = default_names(3, "T");
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly l(3), q(3);
    for (int i = 0; i < 3; ++i) {
      Exponents e(3, 0);
      e[i] = 1;
      l.add_term(e, static_cast<long>(rng() % 5) - 2);
    }
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        Exponents e(3, 0);
        e[i] += 1;
        e[j] += 1;
        q.add_term(e, static_cast<long>(rng() % 7) - 3);
      }
    MultiPoly f = l * q;
    GaloisField field(5, 1);
    if (reduce_mod(f, field).empty()) continue;
    auto factors = ff_factor_linear(f, 5, 1);
    bool found_l = reduce_mod(l, field).empty();
    for (const auto& fac : factors) {
      FFPoly form;
      for (int i = 0; i < 3; ++i) {
        if (fac.coeffs[i] == 0) continue;
        Exponents e(3, 0);
        e[i] = 1;
        form.emplace(e, fac.coeffs[i]);
      }
      CHECK(ff_multiply(form, fac.cofactor, field, 3) == reduce_mod(f, field));
      // proportional to l mod 5?
      auto lm = reduce_mod(l, field);
      if (!lm.empty()) {
        const std::uint32_t scale = lm.begin()->second;
        bool same = true;
        for (int i = 0; i < 3; ++i) {
          Exponents e(3, 0);
          e[i] = 1;
          auto it = lm.find(e);
          const std::uint32_t v = it == lm.end() ? 0 : it->second;
          same = same && v == field.mul(scale, fac.coeffs[i]);
        }
        found_l = found_l || same;
      }
    }
    CHECK(found_l);
  }
}
