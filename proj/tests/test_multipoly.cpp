#include <random>

#include "ccq/matrix.hpp"
#include "ccq/multipoly.hpp"
#include "doctest.h"

using namespace ccq;

namespace {

MultiPoly P(const std::string& s, int n = 4) { return parse_poly(s, n, default_names(n, "T")); }

MultiPoly random_form(std::mt19937_64& rng, int nvars, int used, int degree, int range) {
  std::uniform_int_distribution<int> coef(-range, range);
  MultiPoly f(nvars);
  Exponents e(nvars, 0);
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == used - 1) {
      e[var] = left;
      f.add_term(e, coef(rng));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
    e[var] = 0;
  };
  rec(rec, 0, degree);
  return f;
}

}  // namespace

TEST_CASE("grlex order puts higher degree then larger x0 exponent first") {
  MultiPoly f = P("T3^2 + T0*T3 + T0^2 + T1 + 1");
  std::vector<Exponents> order;
  for (const auto& [e, c] : f.terms()) order.push_back(e);
  CHECK(order[0] == Exponents{2, 0, 0, 0});
  CHECK(order[1] == Exponents{1, 0, 0, 1});
  CHECK(order[2] == Exponents{0, 0, 0, 2});
  CHECK(order[3] == Exponents{0, 1, 0, 0});
  CHECK(order[4] == Exponents{0, 0, 0, 0});
}

TEST_CASE("text round trip") {
  MultiPoly f = P("3*T0^2*T1 - 1/2*T2 + 7 - T3^3");
  const std::string s = to_text(f, default_names(4, "T"));
  CHECK(s == "3 * T0^2*T1 - 1 * T3^3 - 1/2 * T2 + 7");
  CHECK(P(s) == f);
  CHECK(parse_poly_auto("x0^3 + x5").nvars() == 6);
  CHECK_THROWS_AS(P("T0 + + T1"), DomainError);
  CHECK_THROWS_AS(P("T9"), DomainError);
}

TEST_CASE("exact division of sums of cubes") {
  MultiPoly q = exact_divide(P("T2^3 + T3^3"), P("T2 + T3"));
  CHECK(q == P("T2^2 - T2*T3 + T3^2"));
  try {
    exact_divide(P("T2^3 + T3^3 + T0"), P("T2 + T3"));
    FAIL("expected a remainder");
  } catch (const DivisionRemainderError& e) {
    CHECK(!e.remainder().is_zero());
  }
  CHECK(divides(P("T0 - T1"), P("T0^5 - T1^5")));
  CHECK(!divides(P("T0 + T1"), P("T0^2 + T1^2")));
}

TEST_CASE("division with remainder reconstructs the dividend") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    MultiPoly f = random_form(rng, 4, 4, 3, 5);
    MultiPoly g = random_form(rng, 4, 4, 1 + trial % 2, 3);
    if (g.is_zero()) continue;
    auto [q, r] = divide_with_remainder(f, g);
    CHECK(q * g + r == f);
    for (const auto& [e, c] : r.terms()) {
      bool div = true;
      for (int i = 0; i < 4; ++i) div = div && g.leading_exponents()[i] <= e[i];
      CHECK(!div);
    }
  }
}

TEST_CASE("content and primitive part") {
  auto s = content_primitive(P("6*T0 + 4*T1"));
  CHECK(s.content == MultiPoly::constant(4, 2));
  CHECK(s.primitive == P("3*T0 + 2*T1"));
  auto neg = content_primitive(P("-T0"));
  CHECK(neg.primitive == P("T0"));
  CHECK(neg.content * neg.primitive == P("-T0"));
  // coefficient ring Q[T2, T3]
  const int cv[] = {2, 3};
  auto poly = content_primitive(P("T2^2*T0 - T3^2*T0 + 2*T2*T1 + 2*T3*T1"), cv);
  CHECK(poly.content == P("T2 + T3"));
  CHECK(poly.primitive == P("T2*T0 - T3*T0 + 2*T1"));
  CHECK(poly.content * poly.primitive == P("T2^2*T0 - T3^2*T0 + 2*T2*T1 + 2*T3*T1"));
}

TEST_CASE("bivariate gcd recovers a planted common factor") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    // polynomials in T0, T1 only (dehomogenised: not forms)
    auto rnd = [&](int deg) {
      MultiPoly f(4);
      std::uniform_int_distribution<int> c(-4, 4);
      for (int i = 0; i <= deg; ++i)
        for (int j = 0; i + j <= deg; ++j) f.add_term(Exponents{i, j, 0, 0}, c(rng));
      return f;
    };
    MultiPoly g = rnd(2), a = rnd(2), b = rnd(1);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    MultiPoly d = gcd_bivariate(g * a, g * b, 0, 1);
    CHECK(divides(d, g * a));
    CHECK(divides(d, g * b));
    CHECK(divides(primitive_normalize(g).first, d));
  }
  CHECK(gcd_bivariate(P("T0^2 - T1^2"), P("T0^2 + 2*T0*T1 + T1^2"), 0, 1) == P("T0 + T1"));
  CHECK(gcd_bivariate(P("T0^2 + 1"), P("T0 + 1"), 0, -1) == P("1"));
}

TEST_CASE("essential variables") {
  CHECK(essential_variable_count(P("T0 + T1").pow(3)).count == 1);
  CHECK(essential_variable_count(P("T0*T1")).count == 2);
  CHECK(essential_variable_count(P("T0^3 + T1^3 + T2^3 + T3^3")).count == 4);
  // cone over a plane cubic after a linear change of coordinates
  MultiPoly x = P("T0 + T3"), y = P("T1 - 2*T3"), z = P("T2 + T1");
  MultiPoly cone = x.pow(3) + y.pow(3) + z.pow(3) - Rational(3) * x * y * z;
  auto ev = essential_variable_count(cone);
  CHECK(ev.count == 3);
  CHECK(ev.basis.size() == 3);
}

TEST_CASE("Sylvester resultant normalisation and values") {
  CHECK(sylvester_resultant(P("T0^2", 2), P("T1^3", 2)) == 1);
  CHECK(sylvester_resultant(P("T0 - T1", 2), P("T0 + T1", 2)) == 2);
  // Res(f, g) = prod g(roots of f) for monic-in-T0 f: f = (T0 - T1)(T0 - 2T1), g = T0^2 + T1^2
  CHECK(sylvester_resultant(P("T0^2 - 3*T0*T1 + 2*T1^2", 2), P("T0^2 + T1^2", 2)) == 10);
  CHECK(sylvester_resultant(P("T0^2 - T1^2", 2), P("T0^2 + T0*T1", 2)) == 0);
}

TEST_CASE("Macaulay resultant matches Sylvester for binary forms") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const int da = 1 + trial % 3, db = 1 + (trial / 3) % 3;
    MultiPoly f = random_form(rng, 2, 2, da, 4), g = random_form(rng, 2, 2, db, 4);
    if (f.is_zero() || g.is_zero() || !f.is_homogeneous() || f.total_degree() != da || g.total_degree() != db)
      continue;
    const MultiPoly forms[] = {f, g};
    CHECK(macaulay_resultant(forms, 2).value == MultiPoly::constant(2, sylvester_resultant(f, g)));
  }
}

TEST_CASE("Macaulay resultant of three forms") {
  const MultiPoly pure[] = {P("T0^2", 3), P("T1^3", 3), P("T2^2", 3)};
  CHECK(macaulay_resultant(pure, 3).value == MultiPoly::constant(3, 1));
  // linear forms: the determinant of the coefficient matrix
  const MultiPoly lin[] = {P("T0 + 2*T1", 3), P("T1 - T2", 3), P("3*T0 + T2", 3)};
  QMatrix m(3, 3, Rational(0));
  m(0, 0) = 1; m(0, 1) = 2;
  m(1, 1) = 1; m(1, 2) = -1;
  m(2, 0) = 3; m(2, 2) = 1;
  CHECK(macaulay_resultant(lin, 3).value == MultiPoly::constant(3, determinant(m)));
  // Res(T0, T1, q) = q(0, 0, 1)
  const MultiPoly withq[] = {P("T0", 3), P("T1", 3), P("5*T2^2 + T0*T1 - T1*T2", 3)};
  CHECK(macaulay_resultant(withq, 3).value == MultiPoly::constant(3, 5));
  // a common zero at [1:1:1]
  const MultiPoly common[] = {P("T0^2 - T1*T2", 3), P("T0*T1 - T2^2", 3), P("T0 - T1", 3)};
  CHECK(macaulay_resultant(common, 3).value.is_zero());
}

TEST_CASE("Macaulay resultant is multiplicative and survives the deformation path") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    MultiPoly a = random_form(rng, 3, 3, 1, 3), b = random_form(rng, 3, 3, 1, 3);
    MultiPoly g = random_form(rng, 3, 3, 2, 3), h = random_form(rng, 3, 3, 1, 3);
    if (a.is_zero() || b.is_zero() || g.is_zero() || h.is_zero()) continue;
    const MultiPoly fa[] = {a, b, g}, fb[] = {a, b, h}, fab[] = {a, b, g * h};
    const MultiPoly ra = macaulay_resultant(fa, 3).value;
    const MultiPoly rb = macaulay_resultant(fb, 3).value;
    CHECK(macaulay_resultant(fab, 3).value == ra * rb);
    auto forced = macaulay_resultant(fab, 3, true);
    CHECK(forced.used_symbolic_deformation);
    CHECK(forced.value == ra * rb);
  }
}

TEST_CASE("Macaulay resultant with symbolic coefficients") {
  // forms in T0, T1 with a coefficient variable T2: Res(T0 - T2*T1, T0 + T1) = 1 + T2
  const MultiPoly forms[] = {P("T0 - T2*T1", 3), P("T0 + T1", 3)};
  CHECK(macaulay_resultant(forms, 2).value == P("1 + T2", 3));
}
