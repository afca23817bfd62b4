#include <cmath>

#include "ccq/hilbert_samuel.hpp"
#include "doctest.h"

using namespace ccq;

namespace {

MultiPoly P(const std::string& s, int n = 3) { return parse_poly(s, n, default_names(n, "T")); }

long count_monomials(int nvars, long degree) {
  if (degree < 0) return 0;
  if (nvars == 1) return 1;
  long total = 0;
  for (long k = 0; k <= degree; ++k) total += count_monomials(nvars - 1, degree - k);
  return total;
}

}  // namespace

TEST_CASE("local Hilbert-Samuel function") {
  CHECK(local_hs(2, 1, 3) == 4);
  CHECK(local_hs(2, 2, 1) == 3);
  for (int d = 1; d <= 4; ++d)
    for (int mu = 1; mu <= 5; ++mu) CHECK(local_hs(d, mu, 0) == 1);
  for (int d = 1; d <= 4; ++d)
    for (long s = 0; s < 30; ++s) CHECK(local_hs(d, 1, s) == binomial(d - 1 + s, d - 1));
}

TEST_CASE("q partial sums against the explicit series") {
  CHECK(q_partial_sum(2, 1, 1) == 0);
  CHECK(q_partial_sum(2, 1, 6) == 8);
  CHECK(q_partial_sum(2, 1, 3) == 2);
  for (int d = 1; d <= 3; ++d)
    for (int mu = 1; mu <= 4; ++mu) {
      std::vector<long> series;
      for (long s = 0; series.size() < 300; ++s)
        for (long k = 0; k < local_hs(d, mu, s).get_si(); ++k) series.push_back(s);
      long sum = 0;
      long prev_inc = -1;
      for (long m = 1; m <= 300; ++m) {
        sum += series[m - 1];
        CHECK(q_partial_sum(d, mu, m) == sum);
        CHECK(series[m - 1] >= prev_inc);
        prev_inc = series[m - 1];
      }
    }
}

TEST_CASE("explicit lower bound for Q") {
  CHECK(q_lower_bound(2, 1, 6) == doctest::Approx(2.857).epsilon(1e-3));
  CHECK(q_lower_bound(1, 1, 1) < 0);
  long violations = 0;
  for (int d = 1; d <= 4; ++d)
    for (int mu = 1; mu <= 6; ++mu) violations += q_lower_bound_check(d, mu, 10000).violations;
  CHECK(violations == 0);
  CHECK_THROWS_AS(q_lower_bound_check(2, 1, 20000), BudgetError);
}

TEST_CASE("geometric Hilbert-Samuel function") {
  CHECK(geometric_hs(1, 2, 2) == 5);
  CHECK(geometric_hs(2, 3, 3) == 19);
  auto w = geometric_hs_window(1, 2, 2);
  CHECK(w.lower == doctest::Approx(4));
  CHECK(w.value == doctest::Approx(5));
  CHECK(w.upper == doctest::Approx(6));
  CHECK(w.holds);
  for (int d = 1; d <= 3; ++d)
    for (int delta = 1; delta <= 4; ++delta)
      for (long D = 0; D <= 12; ++D) {
        CHECK(geometric_hs(d, delta, D) == count_monomials(d + 2, D) - count_monomials(d + 2, D - delta));
        if (D >= delta) CHECK(geometric_hs_window(d, delta, D).holds);
      }
}

TEST_CASE("point census of reductions") {
  auto conic = reduction_point_census(P("T0*T2 - T1^2"), 3);
  CHECK(conic.n == 4);
  for (const auto& [pt, m] : conic.multiplicity) CHECK(m == 1);
  auto lines = reduction_point_census(P("T0*T1"), 2);
  CHECK(lines.multiplicity.at({0, 0, 1}) == 2);
  CHECK(lines.n == 2 * 3 - 1 + 1);
  for (std::uint64_t p : {3, 5, 7, 11, 13, 101}) CHECK(reduction_point_census(P("T0^2 + T1^2 - T2^2"), p).n == long(p + 1));
  // cuspidal cubic: one point of multiplicity 2
  auto cusp = reduction_point_census(P("T1^2*T2 - T0^3"), 7);
  CHECK(cusp.multiplicity.at({0, 0, 1}) == 2);
  CHECK_THROWS_AS(reduction_point_census(P("3*T0"), 3), DomainError);
}

TEST_CASE("bad reduction census for quadrics") {
  auto good = bad_reduction_census(P("T0*T2 - T1^2"), 1000);
  CHECK(good.threshold == 432);
  CHECK(good.bad_primes.empty());
  CHECK(good.b_prime == 1);
  CHECK(good.complete);
  CHECK(abs(good.certifying_minor) == 2);
  auto bad = bad_reduction_census(P("T0^2 + T1^2 + 433*T2^2"), 500);
  REQUIRE(bad.bad_primes.size() == 1);
  CHECK(bad.bad_primes[0] == 433);
  CHECK(bad.b_prime == doctest::Approx(std::exp(std::log(433.0) / 433.0)));
  CHECK(bad.complete);
  auto below = bad_reduction_census(P("T0^2 + T1^2 + 433*T2^2"), 400);
  CHECK(below.bad_primes.empty());
  CHECK(!below.complete);
  CHECK_THROWS_AS(bad_reduction_census(P("T0^2 - T1^2"), 100), PreconditionError);
}

TEST_CASE("bound evaluator shapes and configuration errors") {
  ExternalConstants unit = ExternalConstants::parse(
      "C1p(3,1) = 1\nC1p(3,2)=1\nC1p(20,1)=1\nC1pp(3,1)=1\nC4(3,1)=1\nC4(3,2)=1\nC1p(5,2)=1\n# comment\n");
  BoundParams p{3, 2, 100};
  CHECK(bound_evaluator(BoundKind::ConicsRational, p, unit).exponent == doctest::Approx(1.6495).epsilon(1e-4));
  CHECK(bound_evaluator(BoundKind::ConicsIntegral, p, unit).exponent == doctest::Approx(0.9330).epsilon(1e-4));
  auto curve = bound_evaluator(BoundKind::ProjectiveCurve, p, unit);
  CHECK(curve.exponent == 1);
  CHECK(curve.value == doctest::Approx(16 * 100.0));
  CHECK(bound_evaluator(BoundKind::AffineSurface, p, unit).exponent == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(unit.get_or_zero("kappa2") == 0);
  CHECK_THROWS_AS(bound_evaluator(BoundKind::ConicsRational, p, ExternalConstants()), ConfigError);
  CHECK_THROWS_AS(ExternalConstants::parse("C1p(3,1) = abc"), ConfigError);
  CHECK_THROWS_AS(parse_bound_kind("elliptic"), ConfigError);
}
