#include <random>

#include "ccq/heights.hpp"
#include "doctest.h"

using namespace ccq;

namespace {

MultiPoly P(const std::string& s, int n = 4) { return parse_poly(s, n, default_names(n, "T")); }

std::vector<Rational> Q(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("primitive normalisation") {
  auto a = normalize_primitive(Q({4, 6}));
  CHECK(a.value == std::vector<Integer>{2, 3});
  CHECK(a.scalar == 2);
  auto b = normalize_primitive(Q({-1, 0}));
  CHECK(b.value == std::vector<Integer>{1, 0});
  CHECK(b.scalar == -1);
  auto c = normalize_primitive(P("1/2*T0 + 1/3*T1"));
  CHECK(c.value == P("3*T0 + 2*T1"));
  CHECK(c.scalar == Rational(1, 6));
  CHECK_THROWS_AS(normalize_primitive(Q({0, 0})), DomainError);
}

TEST_CASE("point heights") {
  CHECK(point_height(ProjPoint::from_rationals(Q({1, 0}))).H == 1);
  CHECK(point_height(ProjPoint::from_rationals(Q({2, 3}))).H == 3);
  CHECK(height_by_places(Q({2, 3})).H == 3);
  CHECK(point_height(ProjPoint::from_rationals(Q({4, 6}))).H == 3);
  CHECK(height_by_places(Q({4, 6})).H == 3);
}

TEST_CASE("point height is scale invariant and matches the place product") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    std::vector<Rational> x;
    for (int k = 0; k < 3; ++k) x.emplace_back(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 12));
    for (auto& v : x) v.canonicalize();
    if (x[0] == 0 && x[1] == 0 && x[2] == 0) continue;
    Rational s(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 7));
    s.canonicalize();
    if (s == 0) continue;
    std::vector<Rational> y;
    for (const auto& v : x) y.push_back(v * s);
    const Rational h = point_height(ProjPoint::from_rationals(x)).H;
    CHECK(point_height(ProjPoint::from_rationals(y)).H == h);
    CHECK(height_by_places(x).H == h);
    CHECK(height_by_places(y).H == h);
  }
}

TEST_CASE("polynomial heights") {
  CHECK(poly_height(P("2*T0^2 + 4*T1^2")).H == 2);
  std::vector<Rational> coeffs = Q({2, 4});
  CHECK(height_by_places(coeffs).H == 2);
  CHECK(poly_height(P("T0")).H == 1);
  CHECK(poly_height(P("3*T0^2 + 5*T1^2")).H == 5);
}

TEST_CASE("height of a product is controlled") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    MultiPoly f(3), g(3);
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; a + b <= 2; ++b) f.add_term({a, b, 2 - a - b}, static_cast<long>(rng() % 11) - 5);
    for (int a = 0; a <= 1; ++a) g.add_term({a, 1 - a, 0}, static_cast<long>(rng() % 11) - 5);
    if (f.is_zero() || g.is_zero()) continue;
    const Rational lhs = poly_height(f * g).H;
    const Rational rhs = Rational(binomial(3, 2) * static_cast<long>(f.size() * g.size())) * poly_height(f).H *
                         poly_height(g).H;
    CHECK(lhs <= rhs);
  }
}

TEST_CASE("affine heights are not normalised") {
  CHECK(affine_height(Q({2, 3})).H == 3);
  CHECK(affine_height(Q({1, 1, 1})).H == 1);
  CHECK(affine_height(Q({4, 6})).H == 6);
  CHECK(affine_height(P("4*T0 + 6*T1")).H == 6);
}

TEST_CASE("product formula") {
  CHECK(product_formula_check(6));
  CHECK(product_formula_check(Rational(-5, 7)));
  CHECK(product_formula_check(1));
  std::mt19937_64 rng(29);
  for (int i = 0; i < 10000; ++i) {
    Rational x(static_cast<long>(rng() % 200001) - 100000, 1 + static_cast<long>(rng() % 100000));
    x.canonicalize();
    if (x == 0) continue;
    REQUIRE(product_formula_check(x));
  }
}

TEST_CASE("height comparison window") {
  auto a = height_comparison_audit(P("T0 + T1 - T2"), 3, 1, 2);
  CHECK(a.N == 5);
  CHECK(a.harmonic == Rational(137, 60));
  CHECK(a.h_psi == 0);
  CHECK(a.h_psi_nonnegative);
  CHECK(a.window_width > 0);
}
