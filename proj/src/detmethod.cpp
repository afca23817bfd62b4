#include "ccq/detmethod.hpp"

#include <algorithm>
#include <functional>

namespace ccq {

namespace {

constexpr std::uint64_t kRankPrime = 2305843009213693951ULL;  // 2^61 - 1

bool divides_monomial(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Rational monomial_value(const Exponents& e, const QVector& x) {
  Rational v = 1;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) v *= x[i];
  return v;
}

// X written as a hypersurface in coordinates on its linear span.
struct Chart {
  MultiPoly g;
  EvalMode mode = EvalMode::projective;
  std::vector<int> kept;  // ambient coordinate of each chart variable
  int ambient = 0;

  QVector project(const QVector& p) const {
    QVector r;
    r.reserve(kept.size());
    for (int i : kept) r.push_back(p[i]);
    return r;
  }
  MultiPoly lift(const MultiPoly& f) const { return f.remap(ambient, kept); }
};

Chart make_chart(const DetVariety& X) {
  Chart c;
  c.ambient = X.nvars();
  using K = DetVariety::Kind;
  if (X.kind != K::curve_in_plane) {
    c.g = X.form;
    c.mode = X.kind == K::affine_hypersurface ? EvalMode::affine : EvalMode::projective;
    for (int i = 0; i < c.ambient; ++i) c.kept.push_back(i);
    return c;
  }
  // solve the plane for its first coordinate with a nonzero coefficient
  const MultiPoly& l = X.plane;
  int pivot = -1;
  std::vector<Rational> coef(4, Rational(0));
  for (int i = 0; i < 4; ++i) {
    Exponents e(4, 0);
    e[i] = 1;
    coef[i] = l.coeff(e);
    if (pivot < 0 && coef[i] != 0) pivot = i;
  }
  for (int i = 0; i < 4; ++i)
    if (i != pivot) c.kept.push_back(i);
  std::vector<MultiPoly> images(4, MultiPoly(3));
  for (int j = 0; j < 3; ++j) images[c.kept[j]] = MultiPoly::variable(3, j);
  for (int j = 0; j < 3; ++j) images[pivot] -= MultiPoly::variable(3, j, coef[c.kept[j]] / coef[pivot]);
  c.g = X.form.substitute(images);
  if (c.g.is_zero()) throw PreconditionError("auxiliary_form: the plane is contained in the quadric");
  return c;
}

std::vector<Exponents> standard_columns(const Chart& c, int D) {
  const Exponents& lm = c.g.leading_exponents();
  std::vector<Exponents> cols;
  for (auto& e : monomial_basis(static_cast<int>(c.kept.size()), D, c.mode))
    if (!divides_monomial(lm, e)) cols.push_back(std::move(e));
  return cols;
}

QMatrix evaluate_columns(const std::vector<QVector>& pts, const std::vector<Exponents>& cols) {
  QMatrix m(pts.size(), cols.size());
  for (std::size_t r = 0; r < pts.size(); ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) m(r, j) = monomial_value(cols[j], pts[r]);
  return m;
}

std::optional<AuxiliaryForm> aux_in_chart(const Chart& c, const std::vector<QVector>& points,
                                          const std::vector<QVector>& chart_pts, int D) {
  const auto cols = standard_columns(c, D);
  const auto basis = exact_kernel(evaluate_columns(chart_pts, cols));
  if (basis.empty()) {
    if (chart_pts.size() < cols.size()) throw InvariantError("empty kernel with fewer points than monomials");
    return std::nullopt;
  }
  MultiPoly f(static_cast<int>(c.kept.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (basis[0][j] != 0) f.add_term(cols[j], basis[0][j]);

  AuxiliaryForm a;
  a.D = D;
  a.form = c.lift(f);
  a.points = points.size();
  a.columns = cols.size();
  a.kernel_dim = basis.size();
  a.vanishes_on_points = std::all_of(points.begin(), points.end(),
                                     [&](const QVector& p) { return a.form.evaluate(p) == 0; });
  // for a curve in a plane this is the divisibility test after restriction to the plane
  a.not_containing = !divides(c.g, f);
  if (!a.vanishes_on_points || !a.not_containing) throw InvariantError("auxiliary form certificate failed");
  return a;
}

}  // namespace

std::vector<Exponents> monomial_basis(int nvars, int D, EvalMode mode) {
  std::vector<Exponents> out;
  Exponents e(nvars, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nvars - 1) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  for (int d = D; d >= (mode == EvalMode::affine ? 0 : D); --d) {
    if (nvars == 0) {
      if (d == 0) out.push_back({});
      continue;
    }
    rec(0, d);
  }
  return out;
}

EvaluationMatrix evaluation_matrix(const std::vector<QVector>& points, int nvars, int D, EvalMode mode) {
  EvaluationMatrix r;
  r.mode = mode;
  r.columns = monomial_basis(nvars, D, mode);
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != nvars) throw DomainError("evaluation_matrix: point of the wrong length");
  r.m = evaluate_columns(points, r.columns);
  return r;
}

std::vector<QVector> exact_kernel(const QMatrix& m) { return kernel(m); }

DetVariety DetVariety::plane_curve(const MultiPoly& g) {
  if (g.nvars() != 3 || !g.is_homogeneous() || g.total_degree() < 1)
    throw DomainError("plane curve needs a nonconstant form in 3 variables");
  return {Kind::plane_curve, g, MultiPoly(3)};
}

DetVariety DetVariety::curve_in_plane(const MultiPoly& q, const MultiPoly& l) {
  if (q.nvars() != 4 || l.nvars() != 4 || !q.is_homogeneous() || !l.is_homogeneous() || l.total_degree() != 1 ||
      q.total_degree() < 1)
    throw DomainError("curve in a plane needs a form and a linear form in 4 variables");
  return {Kind::curve_in_plane, q, l};
}

DetVariety DetVariety::surface(const MultiPoly& f) {
  if (f.nvars() != 4 || !f.is_homogeneous() || f.total_degree() < 1)
    throw DomainError("surface needs a nonconstant form in 4 variables");
  return {Kind::surface, f, MultiPoly(4)};
}

DetVariety DetVariety::affine(const MultiPoly& g) {
  if (g.nvars() < 1 || g.nvars() > 3 || g.total_degree() < 1)
    throw DomainError("affine hypersurface needs a nonconstant polynomial in 1 to 3 variables");
  return {Kind::affine_hypersurface, g, MultiPoly(g.nvars())};
}

int DetVariety::dimension() const {
  switch (kind) {
    case Kind::plane_curve:
    case Kind::curve_in_plane: return 1;
    case Kind::surface: return 2;
    case Kind::affine_hypersurface: return nvars() - 1;
  }
  return 0;
}

std::optional<AuxiliaryForm> auxiliary_form(const DetVariety& X, const std::vector<QVector>& points, int D) {
  if (D < 1) throw DomainError("auxiliary_form: D must be positive");
  const Chart c = make_chart(X);
  std::vector<QVector> chart_pts;
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != X.nvars()) throw DomainError("auxiliary_form: point of the wrong length");
    chart_pts.push_back(c.project(p));
  }
  return aux_in_chart(c, points, chart_pts, D);
}

std::vector<QVector> variety_points(const DetVariety& X, long B, const CountOptions& opt) {
  CountResult r;
  using K = DetVariety::Kind;
  switch (X.kind) {
    case K::plane_curve: r = enumerate_projective({X.form}, 3, B, opt); break;
    case K::curve_in_plane: r = enumerate_projective({X.plane, X.form}, 4, B, opt); break;
    case K::surface: r = enumerate_projective({X.form}, 4, B, opt); break;
    case K::affine_hypersurface: r = enumerate_affine({X.form}, X.nvars(), B, opt); break;
  }
  std::vector<QVector> out;
  out.reserve(r.points.size());
  for (const auto& p : r.points) out.emplace_back(p.begin(), p.end());
  return out;
}

OmegaReport minimal_omega(const DetVariety& X, long B, const OmegaOptions& opt) {
  return minimal_omega(X, variety_points(X, B, opt.count), B, opt);
}

OmegaReport minimal_omega(const DetVariety& X, const std::vector<QVector>& points, long B, const OmegaOptions& opt) {
  const Chart c = make_chart(X);
  std::vector<QVector> chart_pts;
  for (const auto& p : points) chart_pts.push_back(c.project(p));

  OmegaReport rep;
  rep.B = B;
  rep.points = points.size();
  using K = DetVariety::Kind;
  BoundParams prm;
  prm.delta = X.degree();
  prm.B = static_cast<double>(B);
  switch (X.kind) {
    case K::plane_curve: rep.bound_kind = BoundKind::ProjectiveCurve, prm.n = 2; break;
    case K::curve_in_plane: rep.bound_kind = BoundKind::ProjectiveCurve, prm.n = 3; break;
    case K::surface: rep.bound_kind = BoundKind::ProjectiveSurface, prm.n = 3; break;
    case K::affine_hypersurface:
      rep.bound_kind = X.nvars() == 3 ? BoundKind::AffineSurface : BoundKind::AffineCurve;
      prm.n = X.nvars();
      break;
  }

  std::optional<AuxiliaryForm> found;
  for (int D = 1; D <= opt.max_degree && !found; ++D) {
    const auto cols = standard_columns(c, D);
    if (cols.size() * std::max<std::size_t>(chart_pts.size(), 1) > opt.cell_budget)
      throw BudgetError("evaluation matrix at degree " + std::to_string(D) + " exceeds the cell budget", D);
    if (chart_pts.size() >= cols.size()) {
      // full column rank mod p certifies an empty kernel over Q
      if (rank_mod_p(clear_denominators(evaluate_columns(chart_pts, cols)), kRankPrime) == cols.size()) continue;
    }
    found = aux_in_chart(c, points, chart_pts, D);
  }
  if (!found)
    throw BudgetError("no auxiliary form up to degree " + std::to_string(opt.max_degree), opt.max_degree);
  rep.omega = found->D;
  rep.aux = std::move(*found);

  ExternalConstants unit;
  BoundValue shape;
  const bool have = opt.constants.has_value();
  try {
    shape = bound_evaluator(rep.bound_kind, prm, have ? *opt.constants : unit);
  } catch (const ConfigError&) {
    if (have) throw;
    // shape only: the exponent does not depend on the constants
    for (const char* k : {"C1p", "C4"})
      for (int d = 1; d <= 2; ++d) unit.set(std::string(k) + "(" + std::to_string(prm.n) + "," + std::to_string(d) + ")", 1);
    shape = bound_evaluator(rep.bound_kind, prm, unit);
  }
  rep.bound_exponent = shape.exponent;
  rep.bound_formula = shape.formula;
  if (have) {
    rep.bound_value = shape.value;
    rep.within_bound = rep.omega <= shape.value;
  }
  return rep;
}

TranslationResult translation_search(const MultiPoly& q, const MultiPoly& l, std::optional<int> box) {
  if (q.nvars() != 4 || l.nvars() != 4) throw DomainError("translation_search: forms in 4 variables expected");
  const PluckerForm psi = cayley_plane_curve(q, l);
  const auto s0 = grading_vars(Grading::S0);
  TranslationResult r;
  r.delta = q.total_degree();
  if (homogeneous_component(psi, s0, r.delta).is_zero())
    throw PreconditionError("translation_search: the top part of the Cayley form vanishes");
  r.psi = psi;
  r.constant_part = homogeneous_component(psi, s0, 0);
  r.tried = 1;
  if (!r.constant_part.is_zero()) return r;

  const int w = box.value_or(r.delta);
  // shells of increasing max-norm, lexicographic inside a shell
  for (int m = 1; m <= w; ++m)
    for (long a1 = -m; a1 <= m; ++a1)
      for (long a2 = -m; a2 <= m; ++a2)
        for (long a3 = -m; a3 <= m; ++a3) {
          if (std::max({std::labs(a1), std::labs(a2), std::labs(a3)}) != m) continue;
          ++r.tried;
          const PluckerForm moved = canonical_plucker(transform_Ta_plucker(psi, {Rational(a1), Rational(a2), Rational(a3)}));
          PluckerForm c0 = homogeneous_component(moved, s0, 0);
          if (c0.is_zero()) continue;
          r.a = {a1, a2, a3};
          r.psi = moved;
          r.constant_part = std::move(c0);
          return r;
        }
  throw PropertyViolation("translation_search: no translate with max|a_i| <= " + std::to_string(w) +
                          " has a nonzero constant part");
}

TranslationResult translation_search_affine(const MultiPoly& q, const MultiPoly& l, std::optional<int> box) {
  if (q.nvars() != 3 || l.nvars() != 3) throw DomainError("translation_search_affine: polynomials in 3 variables expected");
  auto homogenise = [](const MultiPoly& f, int deg) {
    MultiPoly h(4);
    for (const auto& [e, c] : f.terms()) h.add_term({deg - total_degree(e), e[0], e[1], e[2]}, c);
    return h;
  };
  return translation_search(homogenise(q, q.total_degree()), homogenise(l, l.total_degree()), box);
}

}  // namespace ccq
