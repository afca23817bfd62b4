#include <random>
#include <set>

#include "ccq/cubic_conics.hpp"
#include "ccq/heights.hpp"
#include "doctest.h"

using namespace ccq;

namespace {

MultiPoly T(const std::string& s, int n = 4) { return parse_poly(s, n, default_names(n, "T")); }
MultiPoly tt(const std::string& s) { return parse_poly(s, 2, {"t1", "t2"}); }

const MultiPoly kFermat = T("T0^3 + T1^3 + T2^3 + T3^3");

// f restricted to the line through a and b, as a binary form
MultiPoly restrict_to_line(const MultiPoly& f, const std::array<Rational, 4>& a, const std::array<Rational, 4>& b) {
  std::vector<MultiPoly> images;
  for (int i = 0; i < 4; ++i) images.push_back(MultiPoly::variable(2, 0, a[i]) + MultiPoly::variable(2, 1, b[i]));
  return f.substitute(images);
}

std::array<Rational, 4> to_arr(const QVector& v) { return {v[0], v[1], v[2], v[3]}; }

// two points spanning V(u, v)
std::pair<std::array<Rational, 4>, std::array<Rational, 4>> line_points(const LineP3& l) {
  QMatrix m(2, 4);
  for (int j = 0; j < 4; ++j) {
    m(0, j) = l.u[j];
    m(1, j) = l.v[j];
  }
  auto k = kernel(m);
  REQUIRE(k.size() == 2);
  return {to_arr(k[0]), to_arr(k[1])};
}

RationalLine fermat_line() { return certify_line(kFermat, T("T0 + T1"), T("T2 + T3")); }

}  // namespace

TEST_CASE("find_lines on the Fermat cubic agrees with a point-pair oracle") {
  auto lines = find_lines(kFermat, 1);
  std::set<PluckerCoords> found;
  for (const auto& l : lines) {
    found.insert(l.line.plucker);
    CHECK(l.a * l.l1 + l.b * l.l2 == kFermat);
  }
  CHECK(found.count(LineP3::from_forms(T("T0 + T1"), T("T2 + T3")).plucker) == 1);
  CHECK(lines.size() >= 3);

  // oracle: lines through two points with coordinates in {-1, 0, 1} lying on X
  std::vector<std::array<Rational, 4>> pts;
  for (int c = 1; c < 81; ++c) {
    std::array<Rational, 4> p;
    int x = c;
    for (int i = 0; i < 4; ++i) {
      p[i] = x % 3 - 1;
      x /= 3;
    }
    pts.push_back(p);
  }
  std::set<PluckerCoords> oracle;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      QMatrix m(2, 4);
      for (int k = 0; k < 4; ++k) {
        m(0, k) = pts[i][k];
        m(1, k) = pts[j][k];
      }
      if (rank(m) < 2) continue;
      if (!restrict_to_line(kFermat, pts[i], pts[j]).is_zero()) continue;
      LineP3 l = LineP3::through_points(pts[i], pts[j]);
      // keep lines whose reduced equations have entries in {-1, 0, 1}
      QMatrix e(2, 4);
      for (int k = 0; k < 4; ++k) {
        e(0, k) = l.u[k];
        e(1, k) = l.v[k];
      }
      QMatrix r = rref(e);
      bool small = true;
      for (int a = 0; a < 2; ++a)
        for (int k = 0; k < 4; ++k) small = small && abs(r(a, k)) <= 1 && r(a, k).get_den() == 1;
      if (small) oracle.insert(l.plucker);
    }
  CHECK(found == oracle);
  CHECK(lines.size() <= 27);
}

TEST_CASE("find_lines budget and certify_line rejection") {
  CHECK_THROWS_AS(find_lines(kFermat, 6, 1000), BudgetError);
  CHECK_THROWS_AS(certify_line(kFermat, T("T0"), T("T1")), PreconditionError);
}

TEST_CASE("every found line restricts the cubic to zero") {
  const MultiPoly f = T("T0^2*T1 + T1^2*T2 - T2^2*T3 + T0*T1*T3 - T3^3 + T0^3 - T1^3");
  for (const auto& l : find_lines(f, 2)) {
    auto [a, b] = line_points(l.line);
    CHECK(restrict_to_line(f, a, b).is_zero());
  }
}

TEST_CASE("classify_cubic") {
  auto fermat = classify_cubic(kFermat);
  CHECK(fermat.essential_vars == 4);
  CHECK(fermat.smooth_mod_p[1]);  // p = 7
  CHECK(fermat.non_ruled);
  CHECK(fermat.non_ruled_confidence == Confidence::certified);
  CHECK_FALSE(fermat.cylinder);

  auto skew = classify_cubic(T("T0^2*T2 + T1^2*T3"));
  REQUIRE(skew.singular_line.has_value());
  CHECK(skew.singular_line->plucker == LineP3::from_forms(T("T0"), T("T1")).plucker);
  CHECK(skew.ruled_skew_evidence);
  CHECK_FALSE(skew.non_ruled);
  for (bool s : skew.smooth_mod_p) CHECK_FALSE(s);

  auto cyl = classify_cubic(T("T0^3 + 3*T0^2*T1 + 3*T0*T1^2 + T1^3 + T2^3"));
  CHECK(cyl.essential_vars == 2);
  CHECK(cyl.cylinder);
  CHECK(cyl.cone);
}

TEST_CASE("smooth_mod_p_scan finds rational singular points") {
  // node at [1:0:0:0]
  CHECK_FALSE(smooth_mod_p_scan(T("T0*T1*T2 + T1^3 + T2^3 + T3^3"), 7));
  CHECK(smooth_mod_p_scan(kFermat, 5));
  CHECK_FALSE(smooth_mod_p_scan(kFermat, 3));  // (T0+T1+T2+T3)^3 mod 3
}

TEST_CASE("absolutely_irreducible_cubic_mod_p") {
  auto r = absolutely_irreducible_cubic_mod_p(T("T1^3 + T2^3 + T3^3"), 5);
  CHECK(r.verdict == IrreducibilityVerdict::certified_irreducible);
  auto r3 = absolutely_irreducible_cubic_mod_p(T("T1^3 + T2^3 + T3^3"), 3);
  CHECK(r3.verdict == IrreducibilityVerdict::reducible);
  CHECK(r3.extension_degree == 1);
  auto red = absolutely_irreducible_cubic_mod_p(T("T0*T1^2 + T0*T2^2"), 7);
  CHECK(red.verdict == IrreducibilityVerdict::reducible);
  CHECK(red.extension_degree == 1);
  auto deg = absolutely_irreducible_cubic_mod_p(T("5*T0^3 + 5*T1^3 + 5*T2^3 + 5*T3^3"), 5);
  CHECK(deg.verdict == IrreducibilityVerdict::inconclusive);
  // T1^3 - 2 T2^3 splits into linear factors only over F_{7^3}
  auto ext = absolutely_irreducible_cubic_mod_p(T("T1^3 - 2*T2^3"), 7);
  CHECK(ext.verdict == IrreducibilityVerdict::reducible);
  CHECK(ext.extension_degree == 3);
}

TEST_CASE("residual conic of the Fermat cubic") {
  const RationalLine line = fermat_line();
  auto r10 = residual_conic(kFermat, line, 1, 0);
  CHECK(r10.plane == T("T0 + T1"));
  CHECK(r10.conic == T("T2^2 - T2*T3 + T3^2"));
  auto r01 = residual_conic(kFermat, line, 0, 1);
  CHECK(r01.plane == T("T2 + T3"));
  CHECK(r01.conic == T("T0^2 - T0*T1 + T1^2"));

  auto sym = residual_conic_symbolic(kFermat, line);
  static constexpr int tv[] = {4, 5};
  CHECK(sym.conic.degree_in(tv) <= 3);
  CHECK(sym.plane.degree_in(tv) == 1);
}

TEST_CASE("residual conic: plane section factors as line times conic") {
  const MultiPoly f = T("T0^2*T2 + T1^2*T3 + T0*T2*T3 + T1*T2^2 + T3^3 - T2^3");
  // T2 = T3 = 0 kills every term
  const RationalLine line = certify_line(f, T("T2"), T("T3"));
  std::mt19937_64 rng(3);
  for (int it = 0; it < 20; ++it) {
    const Rational t1 = static_cast<long>(rng() % 9) - 4, t2 = static_cast<long>(rng() % 9) - 4;
    if (t1 == 0 && t2 == 0) continue;
    auto rc = residual_conic(f, line, t1, t2);
    // parameterise the plane and compare f with l_other * Q there
    QMatrix m(1, 4);
    for (const auto& [ex, c] : rc.plane.terms())
      for (int i = 0; i < 4; ++i)
        if (ex[i]) m(0, i) = c;
    auto k = kernel(m);
    REQUIRE(k.size() == 3);
    std::vector<MultiPoly> images;
    for (int i = 0; i < 4; ++i) {
      MultiPoly x(3);
      for (int j = 0; j < 3; ++j) x += MultiPoly::variable(3, j, k[j][i]);
      images.push_back(x);
    }
    const MultiPoly fr = f.substitute(images);
    const MultiPoly lr = (t1 != 0 ? line.l2 : line.l1).substitute(images);
    const MultiPoly qr = rc.conic.substitute(images);
    const MultiPoly quot = exact_divide(fr, lr * qr);
    CHECK(quot.is_constant());
  }
}

TEST_CASE("Fermat pencil: b-family degrees, gcd and coherence") {
  const RationalLine line = fermat_line();
  ConicPencil pen = conic_family(kFermat, line);
  CHECK(pen.checks.gcd_one);
  CHECK(pen.b[2].is_zero() == false);
  // slot of p01*p23 is absent after reduction modulo the Grassmann relation
  for (std::size_t s = 0; s < 21; ++s)
    if (pen.b_monomials[s] == Exponents{1, 0, 0, 0, 0, 1}) CHECK(pen.b[s].is_zero());
  // content degree + b degree bounded by the total degree of the resultant
  CHECK(pen.checks.content_degree + pen.checks.max_b_degree <= 3);
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 0}, {0, 1}, {2, -3}, {5, 7}, {-1, 4}})
    CHECK(pencil_specialization_coherent(pen, a, b));
  // t-degree oracle: a line M meeting X in three points meets three conics of the pencil, so
  // psi(p(M)) as a binary form in t has degree 3 on a generic M
  const LineP3 m = LineP3::from_forms(T("T0 - 2*T2 + 3*T3"), T("T1 + 5*T2 - T3"));
  std::vector<MultiPoly> images;
  for (int i = 0; i < 6; ++i) images.push_back(MultiPoly::constant(2, Rational(m.plucker[i])));
  images.push_back(MultiPoly::variable(2, 0));
  images.push_back(MultiPoly::variable(2, 1));
  const MultiPoly on_m = pen.psi.substitute(images);
  CHECK(on_m.is_homogeneous());
  CHECK(on_m.total_degree() == 3);
  CHECK(pen.checks.max_b_degree == on_m.total_degree());
  CHECK(pen.checks.all_degree_two == (pen.checks.min_b_degree == 2 && pen.checks.max_b_degree == 2));
  if (!pen.checks.all_degree_two) CHECK_THROWS_AS(require_pencil_properties(pen), PropertyViolation);
}

TEST_CASE("b-family never vanishes at rational parameters") {
  ConicPencil pen = conic_family(kFermat, fermat_line());
  const auto fam = b_family(pen);
  for (const auto& [a, b] : sample_parameters(300, 1000, 9)) CHECK(family_height(fam, a, b) > 0);
}

TEST_CASE("leading family of the Fermat pencil") {
  ConicPencil pen = conic_family(kFermat, fermat_line());
  LeadingFamily lf = leading_family(pen);
  std::vector<MultiPoly> fam(lf.a.begin(), lf.a.end());
  // rank oracle: rank mod a large prime of the integer coefficient matrix
  ZMatrix z = clear_denominators(lf.coefficients);
  CHECK(rank_mod_p(z, 1000003) == lf.rank);
  if (lf.coprime_pair) {
    auto [i, j] = *lf.coprime_pair;
    CHECK(sylvester_resultant(fam[i], fam[j]) == lf.resultant);
    CHECK(lf.resultant != 0);
  }
  CHECK(lf.top_part_irreducible == IrreducibilityVerdict::certified_irreducible);
}

TEST_CASE("family_image on synthetic families") {
  std::vector<MultiPoly> veronese{tt("t1^2"), tt("t1*t2"), tt("t2^2"), MultiPoly(2)};
  auto v = family_image(veronese);
  CHECK(v.rank == 3);
  CHECK(v.image_degree == 2);
  CHECK_FALSE(v.double_cover);
  std::vector<MultiPoly> two{tt("t1^2"), tt("t2^2"), MultiPoly(2)};
  auto d = family_image(two);
  CHECK(d.rank == 2);
  CHECK(d.image_degree == 1);
  CHECK(d.double_cover);
  std::vector<MultiPoly> one{tt("t1^2"), tt("2*t1^2")};
  CHECK_THROWS_AS(family_image(one), PreconditionError);
  std::vector<MultiPoly> cubic{tt("t1^3"), tt("t1^2*t2"), tt("t2^3")};
  auto c = family_image(cubic);
  CHECK(c.image_degree == 3);
  CHECK(c.fiber_size == 1);
}

TEST_CASE("rational roots of binary forms") {
  const MultiPoly g = tt("t1 - 2*t2") * tt("3*t1 + t2") * tt("t2");
  auto roots = rational_roots_binary(g);
  std::vector<std::pair<Integer, Integer>> expect{{1, -3}, {1, 0}, {2, 1}};
  CHECK(roots == expect);
  CHECK(rational_roots_binary(tt("t1^2 + t2^2")).empty());
  CHECK(rational_roots_binary(tt("t1^2")) == std::vector<std::pair<Integer, Integer>>{{0, 1}});
}

TEST_CASE("census cutoff is complete against a wider brute-force scan") {
  ConicPencil pen = conic_family(kFermat, fermat_line());
  const auto fam = b_family(pen);
  Integer hmin = -1;
  for (long a = 0; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      if (std::gcd(a, std::labs(b)) == 1 && (a > 0 || b == 1)) {
        Integer h = family_height(fam, a, b);
        if (hmin < 0 || h < hmin) hmin = h;
      }
  CHECK(conic_census(pen, hmin - 1 > 0 ? hmin - 1 : Integer(1)).count <= 1);
  for (long B : {100L, 1000L}) {
    auto res = conic_census(pen, B);
    REQUIRE(res.cutoff.certified);
    const long wide = 3 * res.cutoff.t_max.get_si() + 5;
    std::size_t brute = 0;
    for (long a = 0; a <= wide; ++a)
      for (long b = -wide; b <= wide; ++b)
        if (std::gcd(a, std::labs(b)) == 1 && (a > 0 || b == 1) && family_height(fam, a, b) <= B) ++brute;
    CHECK(res.count == brute);
    CHECK(res.complete);
  }
}

TEST_CASE("census cutoff bound holds on samples") {
  std::vector<MultiPoly> fam{tt("t1^2 + t2^2"), tt("t1*t2"), tt("3*t1^2 - t2^2")};
  auto cut = census_cutoff(fam, 1000);
  REQUIRE(cut.certified);
  for (const auto& [a, b] : sample_parameters(200, 500, 4)) {
    const Integer H = std::max(Integer(abs(a)), Integer(abs(b)));
    CHECK(Rational(family_height(fam, a, b)) >= cut.c * Rational(H * H));
  }
}

TEST_CASE("height pairing check") {
  ConicPencil pen = conic_family(kFermat, fermat_line());
  auto one = height_pairing_check(pen, {{1, 0}});
  CHECK(one.h_t[0] == 0);
  CHECK(one.max_residual == doctest::Approx(one.h_psi[0]));
  CHECK(one.h_psi[0] == doctest::Approx(poly_height(specialize_pencil(pen, 1, 0)).h));
  auto rep = height_pairing_check(pen, sample_parameters(200, 1000, 1));
  CHECK(rep.samples == 200);
  // slope of h(psi_t) against h(t) equals the t-degree of the family up to bounded noise
  CHECK(rep.fitted_degree == doctest::Approx(pen.checks.max_b_degree).epsilon(0.1));
  CHECK(rep.slope == doctest::Approx(rep.fitted_degree - 2).epsilon(1e-9));
}
