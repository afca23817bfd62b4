#include "ccq/cayley.hpp"

#include <map>

#include "ccq/errors.hpp"
#include "ccq/matrix.hpp"

namespace ccq {

int plucker_index(int i, int j) {
  if (i == j || i < 0 || j < 0 || i > 3 || j > 3) throw DomainError("invalid Plücker index pair");
  if (i > j) std::swap(i, j);
  static constexpr int table[4][4] = {{-1, 0, 1, 2}, {-1, -1, 3, 4}, {-1, -1, -1, 5}, {-1, -1, -1, -1}};
  return table[i][j];
}

int plucker_sign(int i, int j) { return i < j ? 1 : -1; }

std::vector<std::string> plucker_names(const std::vector<std::string>& extra) {
  std::vector<std::string> n = {"p01", "p02", "p03", "p12", "p13", "p23"};
  n.insert(n.end(), extra.begin(), extra.end());
  return n;
}

PluckerCoords plucker_of_line(const std::array<Rational, 4>& u, const std::array<Rational, 4>& v) {
  std::vector<Rational> p(6);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) p[plucker_index(i, j)] = u[i] * v[j] - u[j] * v[i];
  bool zero = true;
  for (const auto& x : p) zero = zero && x == 0;
  if (zero) throw DomainError("linear forms defining a line are dependent");
  Integer l = 1, g = 0;
  for (const auto& x : p) l = lcm(l, Integer(x.get_den()));
  std::vector<Integer> z;
  for (const auto& x : p) {
    Rational y = x * l;
    z.push_back(y.get_num());
    g = gcd(g, z.back());
  }
  for (const auto& x : z)
    if (x != 0) {
      if (x < 0) g = -g;
      break;
    }
  PluckerCoords out;
  for (int i = 0; i < 6; ++i) out[i] = z[i] / g;
  return out;
}

namespace {

std::array<Rational, 4> linear_coefficients(const MultiPoly& f) {
  if (f.nvars() != 4 || !f.is_homogeneous() || f.total_degree() != 1) throw DomainError("expected a linear form in T0..T3");
  std::array<Rational, 4> c;
  for (int i = 0; i < 4; ++i) {
    Exponents e(4, 0);
    e[i] = 1;
    c[i] = f.coeff(e);
  }
  return c;
}

}  // namespace

LineP3 LineP3::from_forms(const std::array<Rational, 4>& u, const std::array<Rational, 4>& v) {
  return {u, v, plucker_of_line(u, v)};
}

LineP3 LineP3::from_forms(const MultiPoly& u, const MultiPoly& v) {
  return from_forms(linear_coefficients(u), linear_coefficients(v));
}

LineP3 LineP3::through_points(const std::array<Rational, 4>& a, const std::array<Rational, 4>& b) {
  QMatrix m(2, 4);
  for (int j = 0; j < 4; ++j) {
    m(0, j) = a[j];
    m(1, j) = b[j];
  }
  auto k = kernel(m);
  if (k.size() != 2) throw DomainError("points do not span a line");
  std::array<Rational, 4> u, v;
  for (int j = 0; j < 4; ++j) {
    u[j] = k[0][j];
    v[j] = k[1][j];
  }
  return from_forms(u, v);
}

MultiPoly grassmann_relation(int nvars) {
  if (nvars < 6) throw DomainError("Plücker ring needs at least 6 variables");
  MultiPoly g(nvars);
  auto mono = [&](int a, int b) {
    Exponents e(nvars, 0);
    e[a] += 1;
    e[b] += 1;
    return e;
  };
  g.add_term(mono(P01, P23), 1);
  g.add_term(mono(P02, P13), -1);
  g.add_term(mono(P03, P12), 1);
  return g;
}

PluckerForm incidence_form(const LineP3& line, int nvars) {
  // Laplace expansion of det[u_L; v_L; u_M; v_M] along the first two rows
  const auto& p = line.plucker;
  MultiPoly f(nvars);
  auto add = [&](int var, const Integer& c) {
    if (c == 0) return;
    Exponents e(nvars, 0);
    e[var] = 1;
    f.add_term(e, Rational(c));
  };
  add(P23, p[P01]);
  add(P13, -p[P02]);
  add(P12, p[P03]);
  add(P03, p[P12]);
  add(P02, -p[P13]);
  add(P01, p[P23]);
  return f;
}

PluckerForm reduce_mod_grassmann(const PluckerForm& f) {
  return divide_with_remainder(f, grassmann_relation(f.nvars())).second;
}

PluckerForm canonical_plucker(const PluckerForm& f) {
  PluckerForm r = reduce_mod_grassmann(f);
  if (r.is_zero()) return r;
  return primitive_normalize(r).first;
}

bool is_grassmann_canonical(const PluckerForm& f) {
  for (const auto& [e, c] : f.terms())
    if (e[P01] > 0 && e[P23] > 0) return false;
  return true;
}

Rational evaluate_plucker(const PluckerForm& f, const PluckerCoords& p) {
  if (f.nvars() != 6) throw DomainError("evaluate_plucker needs a form without parameters");
  std::vector<Rational> pt(p.begin(), p.end());
  return f.evaluate(pt);
}

MultiPoly cayley_hypersurface(const MultiPoly& f) {
  if (f.is_zero() || !f.is_homogeneous()) throw DomainError("cayley_hypersurface needs a nonzero form");
  const int n = f.nvars();
  std::vector<MultiPoly> images;
  for (int i = 0; i < n; ++i) images.push_back(MultiPoly::variable(n, i, i % 2 == 0 ? 1 : -1));
  return primitive_normalize(f.substitute(images)).first;
}

// ---------------------------------------------------------------------------
// Plane curves

namespace {

struct SplitLinear {
  // coefficient of T_a as a polynomial in the parameters, embedded at `param_offset`
  std::array<MultiPoly, 4> coeff;
};

SplitLinear split_linear(const MultiPoly& l, int target_nvars, int param_offset) {
  const int e = l.nvars() - 4;
  SplitLinear s;
  for (auto& c : s.coeff) c = MultiPoly(target_nvars);
  for (const auto& [ex, c] : l.terms()) {
    int which = -1, deg = 0;
    for (int i = 0; i < 4; ++i) {
      deg += ex[i];
      if (ex[i]) which = i;
    }
    if (deg != 1) throw DomainError("plane form must be linear in T0..T3");
    Exponents te(target_nvars, 0);
    for (int j = 0; j < e; ++j) te[param_offset + j] = ex[4 + j];
    s.coeff[which].add_term(te, c);
  }
  return s;
}

// P_i = (-1)^i (l_a w_bc - l_b w_ac + l_c w_ab) with {a<b<c} the complement of i, where
// w(x, y) returns the polynomial standing for the 2x2 minor on columns x < y.
template <class Minor>
std::array<MultiPoly, 4> intersection_point(const SplitLinear& l, Minor w) {
  std::array<MultiPoly, 4> p;
  for (int i = 0; i < 4; ++i) {
    int idx[3], k = 0;
    for (int j = 0; j < 4; ++j)
      if (j != i) idx[k++] = j;
    const int a = idx[0], b = idx[1], c = idx[2];
    MultiPoly v = l.coeff[a] * w(b, c) - l.coeff[b] * w(a, c) + l.coeff[c] * w(a, b);
    p[i] = (i % 2 == 0) ? v : -v;
  }
  return p;
}

void check_curve_input(const MultiPoly& q, const MultiPoly& l) {
  if (q.nvars() < 4 || l.nvars() != q.nvars()) throw DomainError("curve forms must share a ring with T0..T3 first");
  static constexpr int tvars[] = {0, 1, 2, 3};
  if (q.is_zero() || !q.is_homogeneous_in(tvars)) throw DomainError("curve form must be homogeneous in T0..T3");
  if (l.is_zero() || !l.is_homogeneous_in(tvars) || l.degree_in(tvars) != 1)
    throw DomainError("plane form must be linear in T0..T3");
  if (divides(l, q)) throw DomainError("degenerate cycle: the curve form is divisible by the plane form");
}

std::vector<Exponents> canonical_monomials(int k) {
  std::vector<Exponents> out;
  Exponents e(6, 0);
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == 5) {
      e[5] = left;
      if (!(e[P01] > 0 && e[P23] > 0)) out.push_back(e);
      return;
    }
    for (int c = left; c >= 0; --c) {
      e[var] = c;
      self(self, var + 1, left - c);
    }
  };
  rec(rec, 0, k);
  return out;
}

}  // namespace

BiForm plane_section_biform(const MultiPoly& q, const MultiPoly& l) {
  check_curve_input(q, l);
  const int e = q.nvars() - 4;
  const int nv = 8 + e;
  static constexpr int tvars[] = {0, 1, 2, 3};
  const int k = q.degree_in(tvars);
  SplitLinear sl = split_linear(l, nv, 8);
  auto minor = [&](int x, int y) {
    return MultiPoly::variable(nv, x) * MultiPoly::variable(nv, 4 + y) -
           MultiPoly::variable(nv, y) * MultiPoly::variable(nv, 4 + x);
  };
  auto pt = intersection_point(sl, minor);
  std::vector<MultiPoly> images(pt.begin(), pt.end());
  for (int j = 0; j < e; ++j) images.push_back(MultiPoly::variable(nv, 8 + j));
  return BiForm(q.substitute(images), k);
}

PluckerForm rewrite_biform_to_plucker(const BiForm& b, bool normalize) {
  const int k = b.degree();
  const int e = b.poly().nvars() - 8;
  const auto monos = canonical_monomials(k);
  // p_ij(u, v) in 8 variables
  std::array<MultiPoly, 6> pv;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      pv[plucker_index(i, j)] =
          MultiPoly::variable(8, i) * MultiPoly::variable(8, 4 + j) - MultiPoly::variable(8, j) * MultiPoly::variable(8, 4 + i);
  std::map<Exponents, std::size_t> rows, cols;
  std::vector<MultiPoly> expansions;
  for (const auto& m : monos) {
    MultiPoly x = MultiPoly::constant(8, 1);
    for (int v = 0; v < 6; ++v)
      if (m[v]) x = x * pv[v].pow(m[v]);
    for (const auto& [ex, c] : x.terms()) rows.try_emplace(ex, rows.size());
    expansions.push_back(std::move(x));
  }
  for (const auto& [ex, c] : b.poly().terms()) {
    Exponents uv(ex.begin(), ex.begin() + 8), par(ex.begin() + 8, ex.end());
    if (!rows.count(uv)) throw PreconditionError("not frame-invariant: monomial outside the Plücker image");
    cols.try_emplace(par, cols.size());
  }
  QMatrix a(rows.size(), monos.size(), Rational(0));
  for (std::size_t j = 0; j < monos.size(); ++j)
    for (const auto& [ex, c] : expansions[j].terms()) a(rows.at(ex), j) = c;
  QMatrix rhs(rows.size(), cols.size(), Rational(0));
  for (const auto& [ex, c] : b.poly().terms()) {
    Exponents uv(ex.begin(), ex.begin() + 8), par(ex.begin() + 8, ex.end());
    rhs(rows.at(uv), cols.at(par)) = c;
  }
  auto sol = solve(a, rhs);
  if (!sol) throw PreconditionError("not frame-invariant: the rewrite system is inconsistent");
  PluckerForm out(6 + e);
  for (const auto& [par, col] : cols)
    for (std::size_t j = 0; j < monos.size(); ++j) {
      const Rational& c = (*sol)(j, col);
      if (c == 0) continue;
      Exponents ex(monos[j]);
      ex.insert(ex.end(), par.begin(), par.end());
      out.add_term(ex, c);
    }
  if (normalize && !out.is_zero()) out = primitive_normalize(out).first;
  return out;
}

bool is_frame_invariant(const BiForm& b) {
  const int nv = b.poly().nvars();
  const int tot = nv + 4;
  const int A = nv, B = nv + 1, C = nv + 2, D = nv + 3;
  std::vector<MultiPoly> images;
  auto var = [&](int i) { return MultiPoly::variable(tot, i); };
  for (int i = 0; i < 4; ++i) images.push_back(var(A) * var(i) + var(C) * var(4 + i));
  for (int i = 0; i < 4; ++i) images.push_back(var(B) * var(i) + var(D) * var(4 + i));
  for (int j = 8; j < nv; ++j) images.push_back(var(j));
  const MultiPoly lhs = b.poly().substitute(images);
  std::vector<int> embed(nv);
  for (int i = 0; i < nv; ++i) embed[i] = i;
  const MultiPoly det = var(A) * var(D) - var(B) * var(C);
  return lhs == det.pow(b.degree()) * b.poly().remap(tot, embed);
}

PluckerForm cayley_plane_curve(const MultiPoly& q, const MultiPoly& l) {
  return canonical_plucker(rewrite_biform_to_plucker(plane_section_biform(q, l)));
}

PluckerForm cayley_plane_curve_direct(const MultiPoly& q, const MultiPoly& l) {
  check_curve_input(q, l);
  const int e = q.nvars() - 4;
  const int nv = 6 + e;
  SplitLinear sl = split_linear(l, nv, 6);
  auto minor = [&](int x, int y) { return MultiPoly::variable(nv, plucker_index(x, y)); };
  auto pt = intersection_point(sl, minor);
  std::vector<MultiPoly> images(pt.begin(), pt.end());
  for (int j = 0; j < e; ++j) images.push_back(MultiPoly::variable(nv, 6 + j));
  return canonical_plucker(q.substitute(images));
}

PluckerForm cayley_plane_curve_macaulay(const MultiPoly& q, const MultiPoly& l) {
  check_curve_input(q, l);
  const int e = q.nvars() - 4;
  // main T0..T3, then u0..u3, v0..v3, then parameters
  const int nv = 12 + e;
  std::vector<int> embed(4 + e);
  for (int i = 0; i < 4; ++i) embed[i] = i;
  for (int j = 0; j < e; ++j) embed[4 + j] = 12 + j;
  MultiPoly hu(nv), hv(nv);
  for (int i = 0; i < 4; ++i) {
    hu += MultiPoly::variable(nv, 4 + i) * MultiPoly::variable(nv, i);
    hv += MultiPoly::variable(nv, 8 + i) * MultiPoly::variable(nv, i);
  }
  const MultiPoly forms[] = {l.remap(nv, embed), hu, hv, q.remap(nv, embed)};
  const MultiPoly res = macaulay_resultant(forms, 4).value;
  std::vector<int> back(nv, -1);
  for (int i = 0; i < 8; ++i) back[4 + i] = i;
  for (int j = 0; j < e; ++j) back[12 + j] = 8 + j;
  static constexpr int tvars[] = {0, 1, 2, 3};
  return canonical_plucker(rewrite_biform_to_plucker(BiForm(res.remap(8 + e, back), q.degree_in(tvars))));
}

// ---------------------------------------------------------------------------
// Coordinate changes

std::vector<int> grading_vars(Grading g) {
  if (g == Grading::S0) return {P01, P02, P03};
  return {P03, P13, P23};
}

PluckerForm transform_FH(const PluckerForm& psi, const Rational& h) {
  if (h == 0) throw DomainError("transform_FH needs H != 0");
  PluckerForm out(psi.nvars());
  for (const auto& [e, c] : psi.terms()) {
    const int deg = e[P03] + e[P13] + e[P23];
    Rational s;
    mpz_pow_ui(s.get_num_mpz_t(), h.get_num_mpz_t(), deg);
    mpz_pow_ui(s.get_den_mpz_t(), h.get_den_mpz_t(), deg);
    s.canonicalize();
    out.add_term(e, c * s);
  }
  return out;
}

MultiPoly transform_FH_form(const MultiPoly& f, const Rational& h) {
  if (h == 0) throw DomainError("transform_FH_form needs H != 0");
  const int n = f.nvars();
  std::vector<MultiPoly> images;
  for (int i = 0; i < n; ++i) images.push_back(MultiPoly::variable(n, i, i == 3 ? Rational(1 / h) : Rational(1)));
  return primitive_normalize(f.substitute(images)).first;
}

MultiPoly transform_Ta_form(const MultiPoly& f, const std::array<Rational, 3>& a) {
  const int n = f.nvars();
  if (n < 4) throw DomainError("transform_Ta_form needs T0..T3");
  std::vector<MultiPoly> images;
  for (int i = 0; i < n; ++i) {
    MultiPoly im = MultiPoly::variable(n, i);
    if (i >= 1 && i <= 3) im -= MultiPoly::variable(n, 0, a[i - 1]);
    images.push_back(std::move(im));
  }
  return f.substitute(images);
}

PluckerForm transform_Ta_plucker(const PluckerForm& psi, const std::array<Rational, 3>& a) {
  const int n = psi.nvars();
  std::vector<MultiPoly> images;
  for (int v = 0; v < n; ++v) images.push_back(MultiPoly::variable(n, v));
  for (int j = 1; j <= 3; ++j) {
    MultiPoly im = MultiPoly::variable(n, plucker_index(0, j));
    for (int i = 1; i <= 3; ++i) {
      if (i == j) continue;
      im += MultiPoly::variable(n, plucker_index(i, j), a[i - 1] * plucker_sign(i, j));
    }
    images[plucker_index(0, j)] = std::move(im);
  }
  return psi.substitute(images);
}

std::vector<PluckerForm> cayley_degree_parts(const PluckerForm& psi, Grading g) {
  const auto vars = grading_vars(g);
  const int top = std::max(psi.degree_in(vars), 0);
  std::vector<PluckerForm> parts;
  for (int i = 0; i <= top; ++i) parts.push_back(homogeneous_component(psi, vars, i));
  return parts;
}

TopPartCheck top_part_check(const PluckerForm& psi, const PluckerForm& psi_prime, int delta) {
  const auto vars = grading_vars(Grading::S0);
  const PluckerForm a = homogeneous_component(psi, vars, delta);
  const PluckerForm b = homogeneous_component(psi_prime, vars, delta);
  TopPartCheck r;
  if (a.is_zero() || b.is_zero()) {
    r.equal = a.is_zero() && b.is_zero();
    r.ratio = r.equal ? 1 : 0;
    return r;
  }
  const Rational ratio = b.leading_coeff() / a.leading_coeff();
  if (a * ratio == b) {
    r.ratio = ratio;
    r.equal = ratio == 1 || ratio == -1;
  }
  return r;
}

}  // namespace ccq
