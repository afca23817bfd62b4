#include "ccq/cubic_conics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "ccq/errors.hpp"
#include "ccq/exact_arith.hpp"
#include "ccq/heights.hpp"

namespace ccq {

std::string to_string(Confidence c) { return c == Confidence::certified ? "certified" : "evidence-only"; }

std::string to_string(IrreducibilityVerdict v) {
  switch (v) {
    case IrreducibilityVerdict::certified_irreducible: return "certified-irreducible";
    case IrreducibilityVerdict::reducible: return "reducible";
    case IrreducibilityVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

MultiPoly linear_form(const std::array<Rational, 4>& c) {
  MultiPoly l(4);
  for (int i = 0; i < 4; ++i)
    if (c[i] != 0) l += MultiPoly::variable(4, i, c[i]);
  return l;
}

void require_cubic(const MultiPoly& f) {
  if (f.nvars() != 4 || f.is_zero() || !f.is_homogeneous() || f.total_degree() != 3)
    throw DomainError("expected a nonzero cubic form in T0..T3");
}

// Binary form of degree d vanishes iff it vanishes at d + 1 distinct points of P^1.
bool vanishes_on_line(const MultiPoly& g, const std::array<Rational, 4>& a, const std::array<Rational, 4>& b) {
  if (g.is_zero()) return true;
  const int d = g.total_degree();
  std::vector<Rational> pt(4);
  for (int s = 0; s <= d; ++s) {
    // (1, 0), then (s - 1, 1)
    const Rational x = s == 0 ? 1 : s - 1, y = s == 0 ? 0 : 1;
    for (int i = 0; i < 4; ++i) pt[i] = x * a[i] + y * b[i];
    if (g.evaluate(pt) != 0) return false;
  }
  return true;
}

std::vector<Rational> binary_coeffs(const MultiPoly& g, int k) {
  // coefficient of t1^(k-i) t2^i at index i
  std::vector<Rational> c(k + 1, Rational(0));
  for (const auto& [ex, v] : g.terms()) c[ex[1]] = v;
  return c;
}

Integer eval_binary(const MultiPoly& g, const Integer& t1, const Integer& t2) {
  Integer acc = 0;
  for (const auto& [ex, c] : g.terms()) {
    Integer a, b;
    mpz_pow_ui(a.get_mpz_t(), t1.get_mpz_t(), ex[0]);
    mpz_pow_ui(b.get_mpz_t(), t2.get_mpz_t(), ex[1]);
    acc += c.get_num() * a * b;
  }
  return acc;
}

// family with integral coefficients; degree of the (homogeneous) nonzero members
int family_degree(const std::vector<MultiPoly>& family) {
  int k = -1;
  for (const auto& g : family) {
    if (g.is_zero()) continue;
    if (!g.is_homogeneous() || g.nvars() != 2) throw DomainError("family members must be binary forms");
    if (k >= 0 && g.total_degree() != k) throw DomainError("family members must share one degree");
    k = g.total_degree();
  }
  if (k < 0) throw DomainError("family is identically zero");
  return k;
}

MultiPoly family_gcd(const std::vector<MultiPoly>& family) {
  MultiPoly g(2);
  for (const auto& f : family)
    if (!f.is_zero()) g = gcd_bivariate(g, f, 0, 1);
  return g;
}

QMatrix coefficient_matrix(const std::vector<MultiPoly>& family, int k) {
  QMatrix m(family.size(), k + 1, Rational(0));
  for (std::size_t r = 0; r < family.size(); ++r) {
    if (family[r].is_zero()) continue;
    auto c = binary_coeffs(family[r], k);
    for (int j = 0; j <= k; ++j) m(r, j) = c[j];
  }
  return m;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y, double* intercept) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  const double slope = den == 0 ? 0 : (n * sxy - sx * sy) / den;
  if (intercept) *intercept = n == 0 ? 0 : (sy - slope * sx) / n;
  return slope;
}

}  // namespace

// ---------------------------------------------------------------------------
// Lines

std::vector<Rational> rationals_of_height(long bound) {
  std::vector<Rational> out{Rational(0)};
  for (long h = 1; h <= bound; ++h)
    for (long a = -h; a <= h; ++a)
      for (long c = 1; c <= h; ++c) {
        if (std::max(std::labs(a), c) != h || a == 0 || std::gcd(std::labs(a), c) != 1) continue;
        out.push_back(canonical(Rational(a, c)));
      }
  return out;
}

std::vector<LineP3> lines_in_common_zeros(const std::vector<MultiPoly>& forms, long bound, std::uint64_t budget) {
  for (const auto& g : forms)
    if (g.nvars() != 4) throw DomainError("forms must live in T0..T3");
  const auto vals = rationals_of_height(bound);
  const std::uint64_t m = vals.size();
  // free entries per pivot pattern (i, j): row 1 at columns > i other than j, row 2 at columns > j
  std::uint64_t total = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const int free = (3 - i - 1) + (3 - j);
      std::uint64_t c = 1;
      for (int k = 0; k < free; ++k) c *= m;
      total += c;
    }
  if (total > budget)
    throw BudgetError("line search at height " + std::to_string(bound) + " needs " + std::to_string(total) +
                      " candidates", bound);
  std::vector<LineP3> out;
  std::set<PluckerCoords> seen;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      std::vector<std::pair<int, int>> slots;  // (row, column)
      for (int c = i + 1; c < 4; ++c)
        if (c != j) slots.push_back({0, c});
      for (int c = j + 1; c < 4; ++c) slots.push_back({1, c});
      std::vector<int> frees;
      for (int c = 0; c < 4; ++c)
        if (c != i && c != j) frees.push_back(c);
      std::vector<std::size_t> idx(slots.size(), 0);
      while (true) {
        std::array<Rational, 4> r1{}, r2{};
        for (auto& x : r1) x = 0;
        for (auto& x : r2) x = 0;
        r1[i] = 1;
        r2[j] = 1;
        for (std::size_t s = 0; s < slots.size(); ++s) (slots[s].first == 0 ? r1 : r2)[slots[s].second] = vals[idx[s]];
        // kernel basis: one vector per free column
        std::array<std::array<Rational, 4>, 2> kv;
        for (int t = 0; t < 2; ++t) {
          auto& v = kv[t];
          for (auto& x : v) x = 0;
          v[frees[t]] = 1;
          v[i] = -r1[frees[t]];
          v[j] = -r2[frees[t]];
        }
        bool on = true;
        for (const auto& g : forms)
          if (!vanishes_on_line(g, kv[0], kv[1])) {
            on = false;
            break;
          }
        if (on) {
          LineP3 line = LineP3::from_forms(r1, r2);
          if (seen.insert(line.plucker).second) out.push_back(line);
        }
        std::size_t s = 0;
        while (s < idx.size() && ++idx[s] == m) idx[s++] = 0;
        if (s == idx.size()) break;
      }
    }
  return out;
}

RationalLine certify_line(const MultiPoly& f, const MultiPoly& l1_in, const MultiPoly& l2_in) {
  require_cubic(f);
  // row-reduce the pair so that the sequential division is by a Groebner basis
  QMatrix m(2, 4, Rational(0));
  for (int r = 0; r < 2; ++r) {
    const MultiPoly& l = r == 0 ? l1_in : l2_in;
    if (l.nvars() != 4 || l.is_zero() || l.total_degree() != 1 || !l.is_homogeneous())
      throw DomainError("line forms must be linear in T0..T3");
    for (const auto& [ex, c] : l.terms())
      for (int i = 0; i < 4; ++i)
        if (ex[i]) m(r, i) = c;
  }
  std::vector<std::size_t> piv;
  QMatrix red = rref(m, &piv);
  if (piv.size() != 2) throw DomainError("line forms are proportional");
  std::array<Rational, 4> r1, r2;
  for (int i = 0; i < 4; ++i) {
    r1[i] = red(0, i);
    r2[i] = red(1, i);
  }
  const MultiPoly l1 = primitive_normalize(linear_form(r1)).first;
  const MultiPoly l2 = primitive_normalize(linear_form(r2)).first;
  auto [a, rem1] = divide_with_remainder(f, l1);
  auto [b, rem2] = divide_with_remainder(rem1, l2);
  if (!rem2.is_zero()) throw PreconditionError("line is not contained in the surface");
  if (a * l1 + b * l2 != f) throw InvariantError("containment certificate failed");
  return {LineP3::from_forms(r1, r2), l1, l2, a, b};
}

std::vector<RationalLine> find_lines(const MultiPoly& f, long bound, std::uint64_t budget) {
  require_cubic(f);
  std::vector<RationalLine> out;
  for (const auto& line : lines_in_common_zeros({f}, bound, budget)) {
    RationalLine rl;
    try {
      rl = certify_line(f, linear_form(line.u), linear_form(line.v));
    } catch (const PreconditionError&) {
      throw InvariantError("line passed the evaluation test but failed the ideal membership check");
    }
    out.push_back(std::move(rl));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classification

const std::vector<std::uint64_t>& default_smoothness_primes() {
  static const std::vector<std::uint64_t> primes{5, 7, 11};
  return primes;
}

bool smooth_mod_p_scan(const MultiPoly& f, std::uint64_t p) {
  if (p > 101 || !is_prime(p)) throw DomainError("smoothness scan needs a prime p <= 101");
  if (f.nvars() != 4) throw DomainError("expected a form in T0..T3");
  const std::int64_t P = static_cast<std::int64_t>(p);
  struct Term {
    std::array<int, 4> e;
    std::int64_t c;
  };
  auto reduce = [&](const MultiPoly& g) {
    std::vector<Term> out;
    for (const auto& [ex, c] : g.terms()) {
      Integer num = c.get_num(), den = c.get_den();
      if (mpz_divisible_ui_p(den.get_mpz_t(), p)) throw DomainError("p divides a denominator");
      Integer inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Integer(P).get_mpz_t());
      Integer r = (num * inv) % P;
      if (r < 0) r += P;
      if (r != 0) out.push_back({{ex[0], ex[1], ex[2], ex[3]}, r.get_si()});
    }
    return out;
  };
  std::vector<std::vector<Term>> polys{reduce(f)};
  if (polys[0].empty()) throw DomainError("form vanishes modulo p");
  for (int i = 0; i < 4; ++i) polys.push_back(reduce(f.partial(i)));
  std::array<std::int64_t, 4> x{};
  auto eval = [&](const std::vector<Term>& g) {
    std::int64_t acc = 0;
    for (const auto& t : g) {
      std::int64_t v = t.c;
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < t.e[i]; ++k) v = v * x[i] % P;
      acc = (acc + v) % P;
    }
    return acc;
  };
  // projective points with first nonzero coordinate 1
  for (int lead = 0; lead < 4; ++lead) {
    std::uint64_t count = 1;
    for (int i = lead + 1; i < 4; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (int i = 0; i < 4; ++i) {
        if (i < lead) x[i] = 0;
        else if (i == lead) x[i] = 1;
        else {
          x[i] = static_cast<std::int64_t>(c % p);
          c /= p;
        }
      }
      bool singular = true;
      for (const auto& g : polys)
        if (eval(g) != 0) {
          singular = false;
          break;
        }
      if (singular) return false;
    }
  }
  return true;
}

CubicClassification classify_cubic(const MultiPoly& f, const std::vector<std::uint64_t>& primes,
                                   long singular_line_bound) {
  require_cubic(f);
  CubicClassification c;
  c.essential_vars = essential_variable_count(f).count;
  c.cone = c.essential_vars <= 3;
  {
    QMatrix m;
    std::map<Exponents, std::size_t, GrlexGreater> rows;
    std::vector<MultiPoly> parts;
    for (int i = 1; i < 4; ++i) {
      parts.push_back(f.partial(i));
      for (const auto& [ex, v] : parts.back().terms()) rows.try_emplace(ex, rows.size());
    }
    m = QMatrix(rows.size(), 3, Rational(0));
    for (int j = 0; j < 3; ++j)
      for (const auto& [ex, v] : parts[j].terms()) m(rows.at(ex), j) = v;
    c.essential_vars_affine = static_cast<int>(rank(m));
  }
  c.cylinder = c.essential_vars_affine <= 2;
  c.primes = primes;
  bool any_smooth = false;
  for (auto p : primes) {
    bool smooth = false;
    try {
      smooth = smooth_mod_p_scan(f, p);
    } catch (const DomainError&) {
      smooth = false;  // degenerate reduction carries no evidence
    }
    c.smooth_mod_p.push_back(smooth);
    any_smooth = any_smooth || smooth;
  }
  std::vector<MultiPoly> sing{f};
  for (int i = 0; i < 4; ++i) sing.push_back(f.partial(i));
  if (!any_smooth) {
    auto lines = lines_in_common_zeros(sing, singular_line_bound);
    if (!lines.empty()) c.singular_line = lines.front();
  }
  c.ruled_skew_evidence = c.singular_line.has_value() && !c.cone;
  if (any_smooth) {
    c.non_ruled = true;
    c.non_ruled_confidence = Confidence::certified;
  } else {
    c.non_ruled = !c.cone && !c.singular_line;
    c.non_ruled_confidence = Confidence::evidence_only;
  }
  return c;
}

IrreducibilityReport absolutely_irreducible_cubic_mod_p(const MultiPoly& f, std::uint64_t p, std::uint64_t budget) {
  IrreducibilityReport rep;
  rep.p = p;
  if (f.is_zero() || !f.is_homogeneous() || f.total_degree() != 3) throw DomainError("expected a cubic form");
  if (!is_prime(p)) throw DomainError("p must be prime");
  // keep only the variables that survive reduction mod p; linear factors cannot involve the others
  const GaloisField fp(p, 1);
  FFPoly red;
  try {
    red = reduce_mod(f, fp);
  } catch (const DomainError&) {
    rep.reason = "p divides a denominator";
    return rep;
  }
  if (red.empty()) {
    rep.reason = "reduction vanishes modulo p";
    return rep;
  }
  std::vector<int> used;
  for (int i = 0; i < f.nvars(); ++i)
    for (const auto& [ex, c] : red)
      if (ex[i] > 0) {
        used.push_back(i);
        break;
      }
  MultiPoly g(static_cast<int>(used.size()));
  for (const auto& [ex, c] : f.terms()) {
    Exponents e;
    bool drop = false;
    for (int i = 0; i < f.nvars(); ++i) {
      if (std::find(used.begin(), used.end(), i) != used.end()) e.push_back(ex[i]);
      else if (ex[i] > 0) drop = true;
    }
    if (drop) continue;  // such terms vanish mod p
    g.add_term(e, c);
  }
  std::vector<std::string> names;
  for (int i : used) names.push_back("T" + std::to_string(i));
  for (int e = 1; e <= 3; ++e) {
    std::vector<LinearFactor> fac;
    try {
      fac = ff_factor_linear(g, p, e, budget);
    } catch (const BudgetError&) {
      rep.reason = "linear-factor search over F_" + std::to_string(p) + "^" + std::to_string(e) + " exceeds the budget";
      return rep;
    }
    if (!fac.empty()) {
      rep.verdict = IrreducibilityVerdict::reducible;
      rep.extension_degree = e;
      rep.factor = linear_form_text(fac.front().coeffs, GaloisField(p, e), names);
      rep.reason = "linear factor over F_" + std::to_string(p) + "^" + std::to_string(e);
      return rep;
    }
  }
  rep.verdict = IrreducibilityVerdict::certified_irreducible;
  rep.reason = "no linear factor over F_p, F_p^2, F_p^3";
  return rep;
}

// ---------------------------------------------------------------------------
// Residual conics and the pencil

ResidualConic residual_conic(const MultiPoly& f, const RationalLine& line, const Rational& t1, const Rational& t2) {
  require_cubic(f);
  if (t1 == 0 && t2 == 0) throw DomainError("pencil parameter (0, 0)");
  const MultiPoly plane = line.l1 * t1 + line.l2 * t2;
  const MultiPoly q = line.b * t1 - line.a * t2;
  // t1 f - l2 q == a * plane and t2 f + l1 q == b * plane
  if (t1 * f - line.l2 * q != line.a * plane || t2 * f + line.l1 * q != line.b * plane)
    throw InvariantError("residual conic certificate failed");
  const MultiPoly reduced = divide_with_remainder(q, plane).second;
  if (reduced.is_zero()) throw InvariantError("plane section contains the plane");
  return {primitive_normalize(plane).first, primitive_normalize(reduced).first};
}

ResidualConic residual_conic_symbolic(const MultiPoly& f, const RationalLine& line) {
  require_cubic(f);
  const std::vector<int> embed{0, 1, 2, 3};
  auto lift = [&](const MultiPoly& g) { return g.remap(6, embed); };
  const MultiPoly t1 = MultiPoly::variable(6, 4), t2 = MultiPoly::variable(6, 5);
  const MultiPoly plane = t1 * lift(line.l1) + t2 * lift(line.l2);
  const MultiPoly q = t1 * lift(line.b) - t2 * lift(line.a);
  if (t1 * lift(f) - lift(line.l2) * q != lift(line.a) * plane)
    throw InvariantError("symbolic residual conic certificate failed");
  return {plane, q};
}

ConicPencil conic_family(const MultiPoly& f, const RationalLine& line) {
  ConicPencil pen;
  pen.surface = f;
  pen.line = line;
  pen.residual = residual_conic_symbolic(f, line);
  const PluckerForm raw = cayley_plane_curve(pen.residual.conic, pen.residual.plane);
  static constexpr int tv[] = {6, 7};
  ContentSplit cs = content_primitive(raw, tv);
  pen.psi = cs.primitive;
  // content lives in the parameter slots only
  pen.content = MultiPoly(2);
  for (const auto& [ex, c] : cs.content.terms()) pen.content.add_term({ex[6], ex[7]}, c);
  std::size_t slot = 0;
  {
    Exponents e(6, 0);
    auto rec = [&](auto&& self, int var, int left) -> void {
      if (var == 5) {
        e[5] = left;
        pen.b_monomials[slot++] = e;
        return;
      }
      for (int c = left; c >= 0; --c) {
        e[var] = c;
        self(self, var + 1, left - c);
      }
    };
    rec(rec, 0, 2);
  }
  std::map<Exponents, std::size_t> where;
  for (std::size_t i = 0; i < 21; ++i) {
    where[pen.b_monomials[i]] = i;
    pen.b[i] = MultiPoly(2);
  }
  for (const auto& [ex, c] : pen.psi.terms()) {
    Exponents pl(ex.begin(), ex.begin() + 6);
    auto it = where.find(pl);
    if (it == where.end()) throw InvariantError("Cayley form of a conic must have Plücker degree 2");
    pen.b[it->second].add_term({ex[6], ex[7]}, c);
  }
  auto& ch = pen.checks;
  bool homogeneous = true;
  for (const auto& g : pen.b) {
    if (g.is_zero()) continue;
    homogeneous = homogeneous && g.is_homogeneous();
    const int d = g.total_degree();
    ch.min_b_degree = ch.min_b_degree < 0 ? d : std::min(ch.min_b_degree, d);
    ch.max_b_degree = std::max(ch.max_b_degree, d);
  }
  ch.all_degree_two = homogeneous && ch.min_b_degree == 2 && ch.max_b_degree == 2;
  ch.family_gcd = family_gcd(b_family(pen));
  ch.gcd_one = ch.family_gcd.total_degree() == 0;
  ch.content_degree = pen.content.total_degree();
  return pen;
}

void require_pencil_properties(const ConicPencil& pen) {
  if (!pen.checks.all_degree_two)
    throw PropertyViolation("pencil coefficients b_IJ have degrees in [" + std::to_string(pen.checks.min_b_degree) +
                            ", " + std::to_string(pen.checks.max_b_degree) + "], not exactly 2");
  if (!pen.checks.gcd_one)
    throw PropertyViolation("pencil coefficients b_IJ share the factor " + to_text(pen.checks.family_gcd, {"t1", "t2"}));
}

std::vector<MultiPoly> b_family(const ConicPencil& pen) { return {pen.b.begin(), pen.b.end()}; }

std::vector<Integer> evaluate_family(const std::vector<MultiPoly>& family, const Integer& t1, const Integer& t2) {
  std::vector<Integer> out;
  out.reserve(family.size());
  for (const auto& g : family) out.push_back(eval_binary(g, t1, t2));
  return out;
}

PluckerForm specialize_pencil(const ConicPencil& pen, const Integer& t1, const Integer& t2) {
  PluckerForm out(6);
  for (const auto& [ex, c] : pen.psi.terms()) {
    Integer a, b;
    mpz_pow_ui(a.get_mpz_t(), t1.get_mpz_t(), ex[6]);
    mpz_pow_ui(b.get_mpz_t(), t2.get_mpz_t(), ex[7]);
    out.add_term(Exponents(ex.begin(), ex.begin() + 6), c * Rational(a * b));
  }
  if (out.is_zero()) return out;
  return primitive_normalize(out).first;
}

bool pencil_specialization_coherent(const ConicPencil& pen, const Integer& t1, const Integer& t2) {
  const ResidualConic rc = residual_conic(pen.surface, pen.line, Rational(t1), Rational(t2));
  return specialize_pencil(pen, t1, t2) == cayley_plane_curve(rc.conic, rc.plane);
}

// ---------------------------------------------------------------------------
// Leading family and image shape

LeadingFamily leading_family(const ConicPencil& pen) {
  LeadingFamily lf;
  const Exponents monos[6] = {{2, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 0},
                              {0, 2, 0, 0, 0, 0}, {0, 1, 1, 0, 0, 0}, {0, 0, 2, 0, 0, 0}};
  for (int i = 0; i < 6; ++i) {
    lf.a[i] = MultiPoly(2);
    for (std::size_t s = 0; s < 21; ++s)
      if (pen.b_monomials[s] == monos[i]) lf.a[i] = pen.b[s];
  }
  std::vector<MultiPoly> fam(lf.a.begin(), lf.a.end());
  bool all_zero = std::all_of(fam.begin(), fam.end(), [](const MultiPoly& g) { return g.is_zero(); });
  const int k = all_zero ? 0 : family_degree(fam);
  lf.coefficients = coefficient_matrix(fam, k);
  lf.rank = all_zero ? 0 : rank(lf.coefficients);
  lf.rank_in_range = lf.rank == 2 || lf.rank == 3;
  for (int i = 0; i < 6 && !lf.coprime_pair; ++i)
    for (int j = i + 1; j < 6 && !lf.coprime_pair; ++j) {
      if (fam[i].is_zero() || fam[j].is_zero()) continue;
      Rational r = sylvester_resultant(fam[i], fam[j]);
      if (r != 0) {
        lf.coprime_pair = {i, j};
        lf.resultant = r;
      }
    }
  lf.no_common_zero = lf.coprime_pair.has_value();
  if (lf.no_common_zero) lf.no_rational_common_zero = true;
  else if (!all_zero) lf.no_rational_common_zero = rational_roots_binary(family_gcd(fam)).empty();
  // the affine hypothesis: the T0 = 0 section is absolutely irreducible
  const MultiPoly top = pen.surface.specialize({{0, Rational(0)}});
  if (!top.is_zero() && top.total_degree() == 3) {
    for (auto p : default_smoothness_primes()) {
      auto rep = absolutely_irreducible_cubic_mod_p(top, p);
      if (rep.verdict == IrreducibilityVerdict::certified_irreducible) {
        lf.top_part_irreducible = rep.verdict;
        break;
      }
      if (rep.verdict == IrreducibilityVerdict::reducible) lf.top_part_irreducible = rep.verdict;
    }
  }
  return lf;
}

void require_leading_properties(const LeadingFamily& lf) {
  if (!lf.rank_in_range)
    throw PropertyViolation("leading coefficient family has rank " + std::to_string(lf.rank) + ", outside {2, 3}");
  if (!lf.no_rational_common_zero) throw PropertyViolation("leading coefficient family has a rational common zero");
}

std::vector<std::pair<Integer, Integer>> rational_roots_binary(const MultiPoly& g) {
  if (g.nvars() != 2 || g.is_zero() || !g.is_homogeneous()) throw DomainError("expected a nonzero binary form");
  const int k = g.total_degree();
  auto prim = primitive_normalize(g).first;
  auto c = binary_coeffs(prim, k);  // c[i] multiplies t1^(k-i) t2^i
  std::vector<std::pair<Integer, Integer>> out;
  if (k == 0) return out;
  // [1 : 0] is a root iff the t1^k coefficient vanishes
  if (c[0] == 0) out.push_back({1, 0});
  // [0 : 1] is a root iff the t2^k coefficient vanishes
  int lo = k;
  while (lo >= 0 && c[lo] == 0) --lo;
  if (lo < k) out.push_back({0, 1});
  int hi = 0;
  while (hi <= k && c[hi] == 0) ++hi;
  // other roots x = t1/t2 of g(x, 1): numerator divides c[lo], denominator divides c[hi]
  const Integer an = c[lo].get_num(), a0 = c[hi].get_num();
  if (lo > hi) {
    auto divisors = [](const Integer& n) {
      std::vector<Integer> ds{1};
      for (auto [p, e] : factor_integer(abs(n))) {
        std::vector<Integer> next;
        for (const auto& d : ds) {
          Integer pe = 1;
          for (unsigned i = 0; i <= e; ++i) {
            next.push_back(d * pe);
            pe *= p;
          }
        }
        ds = std::move(next);
      }
      return ds;
    };
    for (const auto& num : divisors(an))
      for (const auto& den : divisors(a0))
        for (int sgn : {1, -1}) {
          Integer s = sgn * num;
          if (gcd(s, den) != 1) continue;
          if (eval_binary(prim, s, den) == 0) {
            std::pair<Integer, Integer> r = s < 0 ? std::pair<Integer, Integer>{-s, -den} : std::pair<Integer, Integer>{s, den};
            if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
          }
        }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FamilyImage family_image(const std::vector<MultiPoly>& family) {
  const int k = family_degree(family);
  FamilyImage img;
  img.rank = rank(coefficient_matrix(family, k));
  if (img.rank != 2 && img.rank != 3)
    throw PreconditionError("family rank " + std::to_string(img.rank) + " is outside {2, 3}");
  // basis of the span taken from the family itself
  std::vector<MultiPoly> basis;
  for (const auto& g : family) {
    if (g.is_zero()) continue;
    basis.push_back(g);
    if (rank(coefficient_matrix(basis, k)) < basis.size()) basis.pop_back();
  }
  const MultiPoly h = family_gcd(basis);
  for (auto& g : basis) g = exact_divide(g, h);
  img.form_degree = k - h.total_degree();
  // fiber through a sample point: common zeros of g_i(t) g_j(s) - g_j(t) g_i(s)
  int best = -1;
  const std::pair<long, long> probes[] = {{2, 3}, {5, -7}, {11, 4}, {-3, 13}};
  for (auto [s1, s2] : probes) {
    std::vector<Integer> at = evaluate_family(basis, s1, s2);
    if (std::all_of(at.begin(), at.end(), [](const Integer& v) { return v == 0; })) continue;
    MultiPoly g(2);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j)
        g = gcd_bivariate(g, basis[i] * Rational(at[j]) - basis[j] * Rational(at[i]), 0, 1);
    const int m = g.total_degree();
    if (best < 0 || m < best) best = m;
  }
  if (best <= 0) throw InvariantError("fiber computation failed");
  img.fiber_size = best;
  img.image_degree = img.form_degree / img.fiber_size;
  img.double_cover = img.fiber_size == 2;
  return img;
}

// ---------------------------------------------------------------------------
// Census

constexpr long kCensusMaxParameter = 20000;

Integer family_height(const std::vector<MultiPoly>& family, const Integer& t1, const Integer& t2) {
  const auto v = evaluate_family(family, t1, t2);
  Integer g = 0, mx = 0;
  for (const auto& x : v) {
    g = gcd(g, x);
    if (abs(x) > mx) mx = abs(x);
  }
  if (g == 0) return 0;
  return mx / g;
}

CensusCutoff census_cutoff(const std::vector<MultiPoly>& family, const Integer& B) {
  CensusCutoff cut;
  const int k = family_degree(family);
  cut.k = k;
  if (k == 0) return cut;
  std::vector<MultiPoly> nz;
  for (const auto& g : family)
    if (!g.is_zero()) nz.push_back(g);
  // candidates: pairs of members, then a member against a weighted sum of all
  std::vector<std::pair<MultiPoly, std::pair<Rational, MultiPoly>>> cands;  // (G1, (weight of G2, G2))
  for (std::size_t i = 0; i < nz.size(); ++i)
    for (std::size_t j = i + 1; j < nz.size(); ++j) cands.push_back({nz[i], {1, nz[j]}});
  {
    MultiPoly w(2);
    Rational wsum = 0;
    for (std::size_t i = 0; i < nz.size(); ++i) {
      w += nz[i] * Rational(static_cast<long>(i + 1));
      wsum += static_cast<long>(i + 1);
    }
    for (const auto& g : nz) cands.push_back({g, {wsum, w}});
  }
  for (const auto& [g1, g2w] : cands) {
    const auto& [wsum, g2] = g2w;
    if (g2.is_zero() || sylvester_resultant(g1, g2) == 0) continue;
    // A g1 + B g2 = t_i^(2k-1): unknowns are the k coefficients of A and the k of B
    const int m = 2 * k - 1;
    QMatrix sys(m + 1, 2 * k, Rational(0));
    auto c1 = binary_coeffs(g1, k), c2 = binary_coeffs(g2, k);
    for (int a = 0; a < k; ++a)
      for (int i = 0; i <= k; ++i) {
        sys(a + i, a) += c1[i];
        sys(a + i, k + a) += c2[i];
      }
    Rational c_min = -1;
    Integer l = 1;
    for (int side = 0; side < 2; ++side) {
      QMatrix rhs(m + 1, 1, Rational(0));
      rhs(side == 0 ? 0 : m, 0) = 1;
      auto sol = solve(sys, rhs);
      if (!sol) throw InvariantError("Sylvester system of coprime forms is singular");
      Integer d = 1;
      for (int r = 0; r < 2 * k; ++r) d = lcm(d, (*sol)(r, 0).get_den());
      Rational s1 = 0;
      for (int r = 0; r < 2 * k; ++r) {
        Rational v = abs((*sol)(r, 0) * d);
        s1 += r < k ? v : v * wsum;
      }
      const Rational c = Rational(d) / s1;
      c_min = c_min < 0 ? c : std::min(c_min, c);
      l = lcm(l, d);
    }
    cut.c = canonical(c_min / Rational(l));
    cut.certified = true;
    break;
  }
  if (!cut.certified) return cut;
  // largest T with c * T^k <= B
  Rational bound = canonical(Rational(B) / cut.c);
  Integer fl = bound.get_num() / bound.get_den();
  cut.t_max = iroot_floor(fl, static_cast<unsigned>(k));
  return cut;
}

CensusResult family_census(const std::vector<MultiPoly>& family, const Integer& B, long hard_cap) {
  if (B < 1) throw DomainError("census bound must be at least 1");
  CensusResult res;
  res.B = B;
  res.cutoff = census_cutoff(family, B);
  Integer T = res.cutoff.certified ? res.cutoff.t_max : Integer(hard_cap);
  res.complete = res.cutoff.certified;
  if (res.cutoff.certified && T > kCensusMaxParameter)
    throw BudgetError("census cutoff " + to_string(T) + " exceeds the enumeration budget");
  const long tm = T.get_si();
  auto visit = [&](long a, long b) {
    const Integer h = family_height(family, a, b);
    if (h == 0) throw PropertyViolation("family vanishes at a rational parameter");
    if (h <= B) {
      ++res.count;
      if (res.samples.size() < 16) res.samples.push_back({{a, b}, h});
    }
  };
  if (tm >= 1) {
    visit(0, 1);
    for (long a = 1; a <= tm; ++a)
      for (long b = -tm; b <= tm; ++b)
        if (std::gcd(a, std::labs(b)) == 1) visit(a, b);
  }
  return res;
}

CensusResult conic_census(const ConicPencil& pen, const Integer& B, long hard_cap) {
  return family_census(b_family(pen), B, hard_cap);
}

// ---------------------------------------------------------------------------
// Height pairing

HeightPairingReport height_pairing_check(const ConicPencil& pen, const std::vector<std::pair<Integer, Integer>>& samples) {
  HeightPairingReport rep;
  const auto fam = b_family(pen);
  std::vector<double> resid;
  for (const auto& [t1, t2] : samples) {
    const Integer g = gcd(t1, t2);
    if (g == 0) throw DomainError("parameter (0, 0)");
    const Integer a = t1 / g, b = t2 / g;
    const double ht = log_abs(Integer(std::max(Integer(abs(a)), Integer(abs(b)))));
    const double hp = log_abs(family_height(fam, a, b));
    rep.h_t.push_back(ht);
    rep.h_psi.push_back(hp);
    resid.push_back(hp - 2 * ht);
    rep.max_residual = std::max(rep.max_residual, std::fabs(hp - 2 * ht));
  }
  rep.samples = samples.size();
  rep.slope = fit_slope(rep.h_t, resid, &rep.intercept);
  rep.fitted_degree = fit_slope(rep.h_t, rep.h_psi, nullptr);
  return rep;
}

std::vector<std::pair<Integer, Integer>> sample_parameters(std::size_t count, std::int64_t max_height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logh(0.0, std::log(static_cast<double>(max_height)));
  std::vector<std::pair<Integer, Integer>> out;
  while (out.size() < count) {
    const auto h = std::max<std::int64_t>(1, std::min<std::int64_t>(max_height, std::llround(std::exp(logh(rng)))));
    std::uniform_int_distribution<std::int64_t> other(-h, h);
    std::int64_t a = h, b = other(rng);
    if (rng() & 1) std::swap(a, b);
    if (std::gcd(a, b) != 1) continue;
    out.push_back({Integer(static_cast<long>(a)), Integer(static_cast<long>(b))});
  }
  return out;
}

}  // namespace ccq
