#include <numeric>
#include <random>
#include <set>

#include "ccq/pointcount.hpp"
#include "doctest.h"

using namespace ccq;

namespace {

MultiPoly T(const std::string& s, int n = 4) { return parse_poly(s, n, default_names(n, "T")); }
MultiPoly X(const std::string& s, int n) { return parse_poly(s, n, default_names(n, "x")); }

// every primitive tuple in the box, normalised, filtered by direct evaluation
std::vector<IntPoint> brute_projective(const std::vector<MultiPoly>& forms, int n, long B) {
  std::vector<IntPoint> out;
  IntPoint p(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      std::int64_t g = 0;
      for (auto v : p) g = std::gcd(g, v < 0 ? -v : v);
      if (g != 1) return;
      for (auto v : p)
        if (v != 0) {
          if (v < 0) return;
          break;
        }
      std::vector<Rational> x(p.begin(), p.end());
      for (const auto& f : forms)
        if (f.evaluate(x) != 0) return;
      out.push_back(p);
      return;
    }
    for (long v = -B; v <= B; ++v) {
      p[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

MultiPoly random_cubic(std::mt19937_64& rng, int density) {
  MultiPoly f(4);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b)
      for (int c = 0; a + b + c <= 3; ++c) {
        if (static_cast<int>(rng() % 10) >= density) continue;
        f.add_term({a, b, c, 3 - a - b - c}, static_cast<long>(rng() % 7) - 3);
      }
  return f;
}

}  // namespace

TEST_CASE("enumerate_projective small examples") {
  auto p1 = enumerate_projective({}, 2, 1);
  std::vector<IntPoint> expect{{0, 1}, {1, -1}, {1, 0}, {1, 1}};
  CHECK(p1.points == expect);
  CHECK(p1.count == 4);

  auto conic = enumerate_projective({T("T0*T2 - T1^2", 3)}, 3, 2);
  std::vector<IntPoint> conic_expect{{0, 0, 1}, {1, -1, 1}, {1, 0, 0}, {1, 1, 1}};
  CHECK(conic.points == conic_expect);
  // parameterisation oracle [s^2 : s t : t^2]
  std::set<IntPoint> param;
  for (long s = -2; s <= 2; ++s)
    for (long t = -2; t <= 2; ++t) {
      if (std::gcd(s, t) != 1) continue;
      IntPoint p{s * s, s * t, t * t};
      if (p[0] < 0 || (p[0] == 0 && p[1] < 0)) continue;
      if (p[0] == 0 && p[1] == 0 && p[2] < 0) continue;
      if (std::max({std::labs(p[0]), std::labs(p[1]), std::labs(p[2])}) <= 2) param.insert(p);
    }
  CHECK(std::set<IntPoint>(conic.points.begin(), conic.points.end()) == param);

  CHECK(enumerate_projective({T("T0^2 + T1^2 + T2^2", 3)}, 3, 10).count == 0);
}

TEST_CASE("enumerate_projective matches a full box scan") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 12; ++it) {
    MultiPoly f = random_cubic(rng, 5);
    if (f.is_zero() || f.total_degree() != 3) continue;
    const long B = 3;
    CHECK(enumerate_projective({f}, 4, B).points == brute_projective({f}, 4, B));
  }
  // surface containing vertical lines (the cubic in the last coordinate vanishes identically)
  const MultiPoly g = T("T0^2*T1 - T1^3 + T0*T1*T2");
  CHECK(enumerate_projective({g}, 4, 3).points == brute_projective({g}, 4, 3));
  // plane curve in P^3 through linear elimination
  const std::vector<MultiPoly> curve{T("T0 + T1 - 2*T3"), T("T0*T2 - T1^2 + T3^2")};
  CHECK(enumerate_projective(curve, 4, 4).points == brute_projective(curve, 4, 4));
}

TEST_CASE("enumeration is invariant under permuting coordinates") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 8; ++it) {
    MultiPoly f = random_cubic(rng, 6);
    if (f.is_zero() || f.total_degree() != 3) continue;
    // reverse the coordinates so that a different coordinate is solved for
    std::vector<MultiPoly> images;
    for (int i = 0; i < 4; ++i) images.push_back(MultiPoly::variable(4, 3 - i));
    const MultiPoly g = f.substitute(images);
    auto a = enumerate_projective({f}, 4, 4);
    auto b = enumerate_projective({g}, 4, 4);
    std::set<IntPoint> ra;
    for (auto p : b.points) {
      std::reverse(p.begin(), p.end());
      for (auto v : p)
        if (v != 0) {
          if (v < 0)
            for (auto& w : p) w = -w;
          break;
        }
      ra.insert(p);
    }
    CHECK(std::set<IntPoint>(a.points.begin(), a.points.end()) == ra);
  }
}

TEST_CASE("threads give the same ordered result") {
  const MultiPoly f = T("T0^3 + T1^3 + T2^3 + T3^3");
  CountOptions one, four;
  four.threads = 4;
  CHECK(enumerate_projective({f}, 4, 12, one).points == enumerate_projective({f}, 4, 12, four).points);
}

TEST_CASE("budget errors are explicit") {
  CountOptions tight;
  tight.budget = 1000;
  CHECK_THROWS_AS(enumerate_projective({T("T0^3 + T1^3 + T2^3 + T3^3")}, 4, 50, tight), BudgetError);
}

TEST_CASE("integer_roots against a scan") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 3000; ++it) {
    std::vector<__int128> c(4);
    if (it % 2 == 0) {
      // product of (X - r_i) times a scalar
      const long r1 = static_cast<long>(rng() % 41) - 20, r2 = static_cast<long>(rng() % 41) - 20,
                 r3 = static_cast<long>(rng() % 41) - 20, k = static_cast<long>(rng() % 5) + 1;
      c = {-k * r1 * r2 * r3, k * (r1 * r2 + r1 * r3 + r2 * r3), -k * (r1 + r2 + r3), k};
    } else {
      for (auto& x : c) x = static_cast<long>(rng() % 2001) - 1000;
    }
    std::vector<std::int64_t> scan;
    for (std::int64_t x = -25; x <= 25; ++x) {
      __int128 v = 0;
      for (int k = 3; k >= 0; --k) v = v * x + c[k];
      if (v == 0) scan.push_back(x);
    }
    CHECK(integer_roots(c, -25, 25) == scan);
  }
  CHECK(integer_roots({0, 0, 0}, -2, 2).size() == 5);
  CHECK(integer_roots({-27, 0, 0, 1}, -5, 5) == std::vector<std::int64_t>{3});
  CHECK(integer_roots({5}, -5, 5).empty());
}

TEST_CASE("enumerate_affine") {
  auto diag = enumerate_affine({X("x0 - x1", 2)}, 2, 1);
  std::vector<IntPoint> expect{{-1, -1}, {0, 0}, {1, 1}};
  CHECK(diag.points == expect);
  CHECK(enumerate_affine({X("x0 - x1", 2)}, 2, 1, {}, AffineNorm::euclidean).count == 1);
  auto origin = enumerate_affine({X("x0^2 + x1", 2)}, 2, 0);
  CHECK(origin.count == 1);
  CHECK(enumerate_affine({X("x0 + 1", 2)}, 2, 0).count == 0);
  // trivial bound audit on a few affine surfaces
  std::mt19937_64 rng(2);
  for (long B : {3L, 6L, 10L}) {
    auto r = enumerate_affine({X("x0^3 + x1^3 + x2^3 - 1", 3)}, 3, B);
    CHECK(static_cast<double>(r.count) <= trivial_affine_bound(3, 2, B));
    auto e = enumerate_affine({X("x0^3 + x1^3 + x2^3 - 1", 3)}, 3, B, {}, AffineNorm::euclidean);
    for (const auto& p : e.points) CHECK(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] <= B * B);
    CHECK(e.count <= r.count);
  }
  // ball scan oracle
  const MultiPoly g = X("x0^2 + x1*x2 - 3*x2 + x0", 3);
  const long B = 7;
  std::size_t n = 0;
  for (long a = -B; a <= B; ++a)
    for (long b = -B; b <= B; ++b)
      for (long c = -B; c <= B; ++c)
        if (a * a + b * b + c * c <= B * B && g.evaluate(std::vector<Rational>{a, b, c}) == 0) ++n;
  CHECK(enumerate_affine({g}, 3, B, {}, AffineNorm::euclidean).count == n);
  std::size_t nbox = 0;
  for (long a = -B; a <= B; ++a)
    for (long b = -B; b <= B; ++b)
      for (long c = -B; c <= B; ++c)
        if (g.evaluate(std::vector<Rational>{a, b, c}) == 0) ++nbox;
  CHECK(enumerate_affine({g}, 3, B).count == nbox);
}

TEST_CASE("conic_points") {
  // definite in T2, T3: only [1 : -1 : 0 : 0] survives, and the conic is a pair of conjugate lines
  auto aniso = conic_points(T("T2^2 - T2*T3 + T3^2"), T("T0 + T1"), 20);
  CHECK(aniso.brute.count == 1);
  CHECK(aniso.brute.points == std::vector<IntPoint>{{1, -1, 0, 0}});
  CHECK_FALSE(aniso.accelerated_used);

  auto iso = conic_points(T("T0*T2 - T1^2"), T("T3"), 2);
  CHECK(iso.brute.count == 4);
  REQUIRE(iso.accelerated_used);
  CHECK(iso.paths_agree);

  // both paths agree on a few smooth conics with points
  const std::vector<std::pair<std::string, std::string>> cases{
      {"T0^2 + T1^2 - T2^2", "T3 - T0 - T1"}, {"T0*T1 - T2^2 + T3^2", "T0 - T1 + T2 - 2*T3"}, {"T1^2 - 2*T2^2 + T0*T3", "T1 + T2"}};
  for (const auto& [q, l] : cases)
    for (long B : {5L, 17L, 40L}) {
      auto r = conic_points(T(q), T(l), B);
      CHECK(r.accelerated_used);
      CHECK(r.paths_agree);
    }
}

TEST_CASE("conic growth exponent on an isotropic conic") {
  std::vector<long> Bs{64, 128, 256, 512};
  std::vector<double> N;
  for (long B : Bs) N.push_back(static_cast<double>(conic_points(T("T0*T2 - T1^2"), T("T3"), B, false).brute.count));
  auto fit = fit_exponent(Bs, N);
  CHECK(fit.points_used == 4);
  CHECK(fit.exponent == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("fit_exponent ignores empty counts") {
  auto fit = fit_exponent({1, 2, 4, 8}, {0, 4, 16, 64});
  CHECK(fit.points_used == 3);
  CHECK(fit.exponent == doctest::Approx(2.0));
  CHECK(fit.residuals.size() == 3);
}

TEST_CASE("experiments on small bounds") {
  const MultiPoly fermat = T("T0^3 + T1^3 + T2^3 + T3^3");
  auto rep = points_on_conics_experiment(fermat, {2, 4, 8, 16});
  CHECK(rep.overlay_exponent == doctest::Approx(1.6495).epsilon(1e-4));
  CHECK(rep.lines_used >= 3);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) CHECK(rep.rows[i].off_lines >= rep.rows[i - 1].off_lines);
  for (const auto& r : rep.rows) CHECK(r.off_lines <= r.total);
  CHECK_THROWS_AS(points_on_conics_experiment(T("T0^2*T2 + T1^2*T3"), {4}), PreconditionError);

  auto aff = integral_conics_experiment(X("x0^3 + x1^3 + x2^3 - 1", 3), {});
  CHECK(aff.rows.empty());
  CHECK(aff.overlay_exponent == doctest::Approx(0.9330).epsilon(1e-4));
  auto aff2 = integral_conics_experiment(X("x0^3 + x1^3 + x2^3 - 1", 3), {4, 16});
  CHECK(aff2.lines_used >= 3);
  CHECK(aff2.rows[1].off_lines >= 1);  // (9, -8, -6)
}
