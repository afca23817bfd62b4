#include "ccq/pointcount.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

#include "ccq/cubic_conics.hpp"
#include "ccq/errors.hpp"
#include "ccq/matrix.hpp"

namespace ccq {

namespace {

using i128 = __int128;

struct IntTerms {
  int nvars = 0;
  int degree = 0;
  std::vector<std::pair<std::vector<int>, i128>> terms;
};

// Integer multiple of f (denominators cleared); coefficients must fit in 64 bits.
IntTerms to_int_terms(const MultiPoly& f) {
  IntTerms t;
  t.nvars = f.nvars();
  Integer den = 1;
  for (const auto& [ex, c] : f.terms()) den = lcm(den, c.get_den());
  for (const auto& [ex, c] : f.terms()) {
    Integer v = c.get_num() * (den / c.get_den());
    if (!v.fits_slong_p()) throw DomainError("coefficient too large for the integer enumerator");
    t.terms.push_back({ex, static_cast<i128>(v.get_si())});
    t.degree = std::max(t.degree, total_degree(ex));
  }
  return t;
}

i128 ipow(i128 x, int e) {
  i128 r = 1;
  while (e-- > 0) r *= x;
  return r;
}

i128 eval_terms(const IntTerms& t, const std::int64_t* x) {
  i128 acc = 0;
  for (const auto& [ex, c] : t.terms) {
    i128 v = c;
    for (int i = 0; i < t.nvars; ++i)
      if (ex[i]) v *= ipow(x[i], ex[i]);
    acc += v;
  }
  return acc;
}

i128 horner(const std::vector<i128>& c, i128 x) {
  i128 acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

int sgn(i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// roots of a strictly monotone function on [a, b]
void monotone_roots(const std::vector<i128>& c, std::int64_t a, std::int64_t b, std::vector<std::int64_t>& out) {
  if (a > b) return;
  const i128 va = horner(c, a), vb = horner(c, b);
  if (va == 0) out.push_back(a);
  if (vb == 0 && b != a) out.push_back(b);
  if (va == 0 || vb == 0 || sgn(va) == sgn(vb)) return;
  std::int64_t lo = a, hi = b;  // sign change strictly inside (lo, hi)
  const int s = sgn(va);
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    const i128 vm = horner(c, mid);
    if (vm == 0) {
      out.push_back(mid);
      return;
    }
    (sgn(vm) == s ? lo : hi) = mid;
  }
}

std::int64_t isqrt64(std::int64_t v) {
  if (v <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

std::int64_t gcd_all(const IntPoint& p) {
  std::int64_t g = 0;
  for (auto x : p) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

bool first_nonzero_positive(const IntPoint& p) {
  for (auto x : p)
    if (x != 0) return x > 0;
  return false;
}

// Enumeration of integer tuples of m coordinates: all but `solve` range over a box or ball,
// `solve` is obtained from the integer roots of g.
struct Scan {
  int m = 0;
  int solve = -1;
  IntTerms g;
  std::vector<std::int64_t> lo, hi;  // box bounds (ignored for ball coordinates beyond the radius)
  bool ball = false;
  std::int64_t radius2 = 0;
};

class Enumerator {
 public:
  Enumerator(const Scan& s, std::function<bool(const IntPoint&)> accept, bool keep, unsigned threads)
      : s_(s), accept_(std::move(accept)), keep_(keep), threads_(std::max(1u, threads)) {
    for (int i = 0; i < s.m; ++i)
      if (i != s.solve) order_.push_back(i);
  }

  CountResult run() {
    CountResult res;
    if (order_.empty()) {
      Local loc;
      IntPoint x(s_.m, 0);
      solve_and_emit(x, 0, loc);
      merge(res, loc);
      return finish(res);
    }
    const int first = order_[0];
    std::vector<std::int64_t> firsts;
    const std::int64_t r0 = s_.ball ? isqrt64(s_.radius2) : 0;
    const std::int64_t a = s_.ball ? std::max(s_.lo[first], -r0) : s_.lo[first];
    const std::int64_t b = s_.ball ? std::min(s_.hi[first], r0) : s_.hi[first];
    for (std::int64_t v = a; v <= b; ++v) firsts.push_back(v);
    std::vector<Local> locals(threads_);
    auto work = [&](unsigned t) {
      IntPoint x(s_.m, 0);
      for (std::size_t i = t; i < firsts.size(); i += threads_) {
        x[first] = firsts[i];
        recurse(x, 1, firsts[i] * firsts[i], locals[t]);
      }
    };
    if (threads_ == 1) work(0);
    else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads_; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    for (auto& loc : locals) merge(res, loc);
    return finish(res);
  }

 private:
  struct Local {
    std::size_t count = 0;
    std::vector<IntPoint> points;
  };

  void merge(CountResult& res, Local& loc) {
    res.count += loc.count;
    for (auto& p : loc.points) res.points.push_back(std::move(p));
  }
  CountResult& finish(CountResult& res) {
    std::sort(res.points.begin(), res.points.end());
    return res;
  }

  std::pair<std::int64_t, std::int64_t> range(int var, std::int64_t partial) const {
    if (!s_.ball) return {s_.lo[var], s_.hi[var]};
    const std::int64_t r = isqrt64(s_.radius2 - partial);
    if (s_.radius2 - partial < 0) return {1, 0};
    return {std::max(s_.lo[var], -r), std::min(s_.hi[var], r)};
  }

  void emit(const IntPoint& x, Local& loc) {
    if (!accept_(x)) return;
    ++loc.count;
    if (keep_) loc.points.push_back(x);
  }

  void solve_and_emit(IntPoint& x, std::int64_t partial, Local& loc) {
    if (s_.solve < 0) {
      emit(x, loc);
      return;
    }
    // coefficients of g in the solve variable
    std::vector<i128> c(s_.g.degree + 1, 0);
    for (const auto& [ex, k] : s_.g.terms) {
      i128 v = k;
      for (int i = 0; i < s_.m; ++i)
        if (i != s_.solve && ex[i]) v *= ipow(x[i], ex[i]);
      c[ex[s_.solve]] += v;
    }
    auto [a, b] = range(s_.solve, partial);
    for (auto r : integer_roots(c, a, b)) {
      x[s_.solve] = r;
      emit(x, loc);
    }
    x[s_.solve] = 0;
  }

  void recurse(IntPoint& x, std::size_t level, std::int64_t partial, Local& loc) {
    if (level == order_.size()) {
      solve_and_emit(x, partial, loc);
      return;
    }
    const int var = order_[level];
    if (level + 1 == order_.size() && s_.solve >= 0) {
      inner_loop(x, var, partial, loc);
      return;
    }
    auto [a, b] = range(var, partial);
    for (std::int64_t v = a; v <= b; ++v) {
      x[var] = v;
      recurse(x, level + 1, partial + v * v, loc);
    }
    x[var] = 0;
  }

  // innermost free coordinate: coefficients of g as polynomials in (inner, solve), then Horner
  void inner_loop(IntPoint& x, int inner, std::int64_t partial, Local& loc) {
    const int D = s_.g.degree;
    std::vector<std::vector<i128>> C(D + 1, std::vector<i128>(D + 1, 0));
    for (const auto& [ex, k] : s_.g.terms) {
      i128 v = k;
      for (int i = 0; i < s_.m; ++i)
        if (i != s_.solve && i != inner && ex[i]) v *= ipow(x[i], ex[i]);
      C[ex[s_.solve]][ex[inner]] += v;
    }
    auto [a, b] = range(inner, partial);
    std::vector<i128> c(D + 1);
    for (std::int64_t v = a; v <= b; ++v) {
      x[inner] = v;
      for (int k = 0; k <= D; ++k) c[k] = horner(C[k], v);
      auto [ra, rb] = range(s_.solve, partial + v * v);
      for (auto r : integer_roots(c, ra, rb)) {
        x[s_.solve] = r;
        emit(x, loc);
      }
      x[s_.solve] = 0;
    }
    x[inner] = 0;
  }

  Scan s_;
  std::function<bool(const IntPoint&)> accept_;
  bool keep_;
  unsigned threads_;
  std::vector<int> order_;
};

double box_tuples(const Scan& s) {
  double t = 1;
  for (int i = 0; i < s.m; ++i)
    if (i != s.solve) t *= static_cast<double>(s.hi[i] - s.lo[i] + 1);
  return t;
}

void check_budget(const Scan& s, const CountOptions& opt, long B) {
  if (box_tuples(s) > static_cast<double>(opt.budget))
    throw BudgetError("enumeration at B = " + std::to_string(B) + " exceeds the tuple budget", B);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<std::int64_t> integer_roots(const std::vector<i128>& coeffs, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  if (lo > hi) return out;
  std::vector<i128> c = coeffs;
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) {
    for (std::int64_t x = lo; x <= hi; ++x) out.push_back(x);
    return out;
  }
  const int d = static_cast<int>(c.size()) - 1;
  if (d == 0) return out;
  if (d == 1) {
    if (c[0] % c[1] == 0) {
      const i128 r = -c[0] / c[1];
      if (r >= lo && r <= hi) out.push_back(static_cast<std::int64_t>(r));
    }
    return out;
  }
  if (d == 3 && c[1] == 0 && c[2] == 0) {
    // X^3 = -c0 / c3
    if (c[0] % c[3] != 0) return out;
    const i128 v = -c[0] / c[3];
    const long double approx = std::cbrt(static_cast<long double>(v));
    const auto r0 = static_cast<std::int64_t>(std::llround(approx));
    for (std::int64_t r = r0 - 1; r <= r0 + 1; ++r)
      if (static_cast<i128>(r) * r * r == v && r >= lo && r <= hi) out.push_back(r);
    return out;
  }
  if (d > 3) {
    for (std::int64_t x = lo; x <= hi; ++x)
      if (horner(c, x) == 0) out.push_back(x);
    return out;
  }
  // split [lo, hi] at the critical points; windows around them are tested directly
  std::vector<long double> crit;
  if (d == 2) crit.push_back(-static_cast<long double>(c[1]) / (2.0L * static_cast<long double>(c[2])));
  else {
    const long double a = 3.0L * static_cast<long double>(c[3]), b = 2.0L * static_cast<long double>(c[2]),
                      cc = static_cast<long double>(c[1]);
    const long double disc = b * b - 4 * a * cc;
    if (disc >= 0) {
      const long double s = std::sqrt(disc);
      crit.push_back((-b - s) / (2 * a));
      crit.push_back((-b + s) / (2 * a));
      std::sort(crit.begin(), crit.end());
    }
  }
  std::int64_t cursor = lo;
  for (long double cr : crit) {
    if (!(cr > static_cast<long double>(lo) - 3) ) continue;
    if (cr > static_cast<long double>(hi) + 3) break;
    const auto w = static_cast<std::int64_t>(std::floor(cr));
    const std::int64_t wa = std::max(cursor, w - 2), wb = std::min(hi, w + 2);
    monotone_roots(c, cursor, wa - 1, out);
    for (std::int64_t x = wa; x <= wb; ++x)
      if (horner(c, x) == 0) out.push_back(x);
    cursor = std::max(cursor, wb + 1);
  }
  monotone_roots(c, cursor, hi, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CountResult enumerate_projective(const std::vector<MultiPoly>& forms, int nvars, long B, const CountOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  if (nvars < 2 || nvars > 4) throw DomainError("projective enumeration supports P^1, P^2, P^3");
  if (B < 1) throw DomainError("height bound must be at least 1");
  std::vector<MultiPoly> linear, nonlinear;
  for (const auto& f : forms) {
    if (f.nvars() != nvars || !f.is_homogeneous()) throw DomainError("forms must be homogeneous in the ambient variables");
    if (f.is_zero()) continue;
    if (f.total_degree() == 0) return {};  // nonzero constant: empty variety
    (f.total_degree() == 1 ? linear : nonlinear).push_back(f);
  }
  // eliminate pivot coordinates of the linear forms
  std::vector<std::size_t> piv;
  QMatrix red;
  if (!linear.empty()) {
    QMatrix m(linear.size(), nvars, Rational(0));
    for (std::size_t r = 0; r < linear.size(); ++r)
      for (const auto& [ex, c] : linear[r].terms())
        for (int i = 0; i < nvars; ++i)
          if (ex[i]) m(r, i) = c;
    red = rref(m, &piv);
  }
  std::vector<int> is_pivot(nvars, -1), free_vars;
  for (std::size_t r = 0; r < piv.size(); ++r) is_pivot[piv[r]] = static_cast<int>(r);
  for (int i = 0; i < nvars; ++i)
    if (is_pivot[i] < 0) free_vars.push_back(i);
  const int m = static_cast<int>(free_vars.size());
  if (m == 0) return {};
  // pivot coordinate * den = sum num[f] * free_f
  struct Dep {
    int coord;
    std::int64_t den;
    std::vector<std::int64_t> num;
  };
  std::vector<Dep> deps;
  std::vector<MultiPoly> images(nvars, MultiPoly(m));
  for (int f = 0; f < m; ++f) images[free_vars[f]] = MultiPoly::variable(m, f);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    Dep d{static_cast<int>(piv[r]), 1, std::vector<std::int64_t>(m, 0)};
    Integer den = 1;
    for (int f = 0; f < m; ++f) den = lcm(den, red(r, free_vars[f]).get_den());
    d.den = den.get_si();
    MultiPoly img(m);
    for (int f = 0; f < m; ++f) {
      const Rational& v = red(r, free_vars[f]);
      d.num[f] = Integer(-v * den).get_si();
      if (v != 0) img += MultiPoly::variable(m, f, -v);
    }
    images[piv[r]] = img;
    deps.push_back(std::move(d));
  }
  std::vector<MultiPoly> reduced;
  for (const auto& f : nonlinear) {
    MultiPoly g = f.substitute(images);
    if (!g.is_zero()) reduced.push_back(g);
  }
  Scan s;
  s.m = m;
  s.lo.assign(m, -B);
  s.hi.assign(m, B);
  if (!reduced.empty()) {
    s.g = to_int_terms(reduced.front());
    for (int f = m - 1; f >= 0; --f)
      if (reduced.front().degree_in(f) > 0) {
        s.solve = f;
        break;
      }
  }
  // sign class: the first free coordinate may be taken nonnegative when it is coordinate 0
  if (free_vars[0] == 0 && s.solve != 0) s.lo[0] = 0;
  check_budget(s, opt, B);
  std::vector<IntTerms> checks;
  for (const auto& f : nonlinear) checks.push_back(to_int_terms(f));
  auto accept = [&](const IntPoint& x) {
    IntPoint full(nvars, 0);
    for (int f = 0; f < m; ++f) full[free_vars[f]] = x[f];
    for (const auto& d : deps) {
      i128 acc = 0;
      for (int f = 0; f < m; ++f) acc += static_cast<i128>(d.num[f]) * x[f];
      if (acc % d.den != 0) return false;
      const i128 v = acc / d.den;
      if (v > B || v < -B) return false;
      full[d.coord] = static_cast<std::int64_t>(v);
    }
    if (!first_nonzero_positive(full) || gcd_all(full) != 1) return false;
    for (const auto& t : checks)
      if (eval_terms(t, full.data()) != 0) return false;
    return true;
  };
  // accept() sees free coordinates only; report full coordinates
  CountResult res = Enumerator(s, accept, opt.keep_points, opt.threads).run();
  for (auto& p : res.points) {
    IntPoint full(nvars, 0);
    for (int f = 0; f < m; ++f) full[free_vars[f]] = p[f];
    for (const auto& d : deps) {
      i128 acc = 0;
      for (int f = 0; f < m; ++f) acc += static_cast<i128>(d.num[f]) * p[f];
      full[d.coord] = static_cast<std::int64_t>(acc / d.den);
    }
    p = std::move(full);
  }
  std::sort(res.points.begin(), res.points.end());
  res.seconds = seconds_since(t0);
  return res;
}

CountResult enumerate_affine(const std::vector<MultiPoly>& polys, int nvars, long B, const CountOptions& opt,
                             AffineNorm norm) {
  const auto t0 = std::chrono::steady_clock::now();
  if (nvars < 1 || nvars > 3) throw DomainError("affine enumeration supports A^1, A^2, A^3");
  if (B < 0) throw DomainError("radius must be nonnegative");
  std::vector<MultiPoly> nz;
  for (const auto& f : polys) {
    if (f.nvars() != nvars) throw DomainError("polynomials must live in the ambient variables");
    if (!f.is_zero()) nz.push_back(f);
  }
  Scan s;
  s.m = nvars;
  s.lo.assign(nvars, -B);
  s.hi.assign(nvars, B);
  s.ball = norm == AffineNorm::euclidean;
  s.radius2 = static_cast<std::int64_t>(B) * B;
  if (!nz.empty()) {
    if (nz.front().is_constant()) return {};
    s.g = to_int_terms(nz.front());
    for (int f = nvars - 1; f >= 0; --f)
      if (nz.front().degree_in(f) > 0) {
        s.solve = f;
        break;
      }
  }
  check_budget(s, opt, B);
  std::vector<IntTerms> checks;
  for (const auto& f : nz) checks.push_back(to_int_terms(f));
  auto accept = [&](const IntPoint& x) {
    std::int64_t r2 = 0;
    for (auto v : x) r2 += v * v;
    if (s.ball && r2 > s.radius2) return false;
    for (const auto& t : checks)
      if (eval_terms(t, x.data()) != 0) return false;
    return true;
  };
  CountResult res = Enumerator(s, accept, opt.keep_points, opt.threads).run();
  res.seconds = seconds_since(t0);
  return res;
}

// ---------------------------------------------------------------------------
// Conics

ConicCount conic_points(const MultiPoly& q, const MultiPoly& l, long B, bool run_brute, long base_bound,
                        const CountOptions& opt) {
  if (q.nvars() != 4 || l.nvars() != 4 || q.total_degree() != 2 || l.total_degree() != 1)
    throw DomainError("conic_points needs a quadric and a plane in T0..T3");
  ConicCount out;
  auto brute = [&] { return enumerate_projective({l, q}, 4, B, opt); };
  auto fallback = [&](const std::string& why) {
    out.fallback_reason = why;
    out.brute = brute();
    return out;
  };
  CountOptions small = opt;
  small.keep_points = true;
  const CountResult base = enumerate_projective({l, q}, 4, base_bound, small);
  if (base.points.empty()) return fallback("no base point of height <= " + std::to_string(base_bound));
  auto height_of = [](const IntPoint& p) {
    std::int64_t m = 0;
    for (auto v : p) m = std::max(m, v < 0 ? -v : v);
    return m;
  };
  const IntPoint p0 = *std::min_element(base.points.begin(), base.points.end(), [&](const IntPoint& a, const IntPoint& b) {
    return std::make_pair(height_of(a), a) < std::make_pair(height_of(b), b);
  });
  out.base_point = p0;
  // plane basis p0, a, b
  QMatrix lm(1, 4, Rational(0));
  for (const auto& [ex, c] : l.terms())
    for (int i = 0; i < 4; ++i)
      if (ex[i]) lm(0, i) = c;
  const auto ker = kernel(lm);
  std::vector<QVector> basis{QVector(p0.begin(), p0.end())};
  for (const auto& k : ker) {
    basis.push_back(k);
    QMatrix t(basis.size(), 4);
    for (std::size_t r = 0; r < basis.size(); ++r)
      for (int j = 0; j < 4; ++j) t(r, j) = basis[r][j];
    if (rank(t) < basis.size()) basis.pop_back();
    if (basis.size() == 3) break;
  }
  // Q(u p0 + s a + t b) = u L(s, t) + M(s, t)
  std::vector<MultiPoly> images;
  for (int i = 0; i < 4; ++i) {
    MultiPoly x(3);
    for (int j = 0; j < 3; ++j)
      if (basis[j][i] != 0) x += MultiPoly::variable(3, j, basis[j][i]);
    images.push_back(x);
  }
  const MultiPoly qr = q.substitute(images);
  {
    QMatrix gram(3, 3, Rational(0));
    for (const auto& [ex, c] : qr.terms()) {
      std::vector<int> idx;
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < ex[i]; ++k) idx.push_back(i);
      if (idx[0] == idx[1]) gram(idx[0], idx[0]) += c;
      else {
        gram(idx[0], idx[1]) += c / 2;
        gram(idx[1], idx[0]) += c / 2;
      }
    }
    if (determinant(gram) == 0) return fallback("conic is singular");
  }
  MultiPoly L(2), M(2);
  for (const auto& [ex, c] : qr.terms()) {
    if (ex[0] == 1) L.add_term({ex[1], ex[2]}, c);
    else if (ex[0] == 0) M.add_term({ex[1], ex[2]}, c);
  }
  std::vector<MultiPoly> family;
  const MultiPoly s = MultiPoly::variable(2, 0), t = MultiPoly::variable(2, 1);
  for (int i = 0; i < 4; ++i)
    family.push_back(-M * Rational(p0[i]) + L * (s * basis[1][i] + t * basis[2][i]));
  // integral family
  {
    Integer den = 1;
    for (const auto& g : family)
      for (const auto& [ex, c] : g.terms()) den = lcm(den, c.get_den());
    for (auto& g : family) g *= Rational(den);
  }
  const CensusCutoff cut = census_cutoff(family, B);
  if (!cut.certified) return fallback("parameter cutoff not certified");
  CountResult acc;
  const auto t0 = std::chrono::steady_clock::now();
  const long T = cut.t_max.get_si();
  auto visit = [&](long a, long b) {
    auto v = evaluate_family(family, a, b);
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    if (g == 0) throw InvariantError("conic parameterisation vanished");
    IntPoint p;
    bool neg = false, seen = false;
    for (const auto& x : v) {
      Integer y = x / g;
      if (!seen && y != 0) {
        neg = y < 0;
        seen = true;
      }
      if (abs(y) > B) return;
      p.push_back(y.get_si());
    }
    if (neg)
      for (auto& x : p) x = -x;
    ++acc.count;
    acc.points.push_back(p);
  };
  if (T >= 1) {
    visit(0, 1);
    for (long a = 1; a <= T; ++a)
      for (long b = -T; b <= T; ++b)
        if (std::gcd(a, std::labs(b)) == 1) visit(a, b);
  }
  std::sort(acc.points.begin(), acc.points.end());
  acc.seconds = seconds_since(t0);
  if (!opt.keep_points) {
    std::vector<IntPoint> none;
    acc.points.swap(none);
  }
  out.accelerated = acc;
  out.accelerated_used = true;
  if (run_brute) {
    out.brute = brute();
    out.paths_agree = out.brute.count == acc.count && (!opt.keep_points || out.brute.points == out.accelerated->points);
  } else {
    out.brute = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Experiments

double trivial_affine_bound(int delta, int d, long B) { return delta * std::pow(2.0 * B + 1.0, d); }

ExponentFit fit_exponent(const std::vector<long>& B, const std::vector<double>& N) {
  ExponentFit fit;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < B.size(); ++i)
    if (N[i] > 0) {
      x.push_back(std::log(static_cast<double>(B[i])));
      y.push_back(std::log(N[i]));
    }
  fit.points_used = x.size();
  if (x.size() < 2) return fit;
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n, my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  fit.exponent = sxx == 0 ? 0 : sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  for (std::size_t i = 0; i < x.size(); ++i) fit.residuals.push_back(y[i] - (fit.intercept + fit.exponent * x[i]));
  return fit;
}

double rational_conics_exponent() { return 3.0 * std::sqrt(3.0) / 8.0 + 1.0; }
double integral_conics_exponent() { return std::sqrt(3.0) / 4.0 + 0.5; }

namespace {

bool on_some_line(const IntPoint& p, const std::vector<RationalLine>& lines) {
  std::vector<Rational> x(p.begin(), p.end());
  for (const auto& l : lines)
    if (l.l1.evaluate(x) == 0 && l.l2.evaluate(x) == 0) return true;
  return false;
}

const char* kProxyNote =
    "off-line points: every rational point of the surface off the found lines lies on the residual conic of the "
    "plane it spans with a line; this counts covered points, not the per-conic multiplicities of the cover";

}  // namespace

ExperimentReport points_on_conics_experiment(const MultiPoly& f, const std::vector<long>& B_list, long line_bound,
                                             const CountOptions& opt) {
  ExperimentReport rep;
  rep.kind = "rational-points-on-conics";
  rep.overlay_exponent = rational_conics_exponent();
  rep.proxy_note = kProxyNote;
  const auto cls = classify_cubic(f);
  if (!cls.non_ruled || cls.non_ruled_confidence != Confidence::certified)
    throw PreconditionError("surface is not certified non-ruled");
  const auto lines = find_lines(f, line_bound);
  if (lines.empty()) throw PreconditionError("no rational line found within the height bound");
  rep.lines_used = lines.size();
  CountOptions o = opt;
  o.keep_points = true;
  std::vector<double> N;
  for (long B : B_list) {
    auto res = enumerate_projective({f}, 4, B, o);
    ExperimentRow row{B, res.count, 0, res.seconds};
    for (const auto& p : res.points)
      if (!on_some_line(p, lines)) ++row.off_lines;
    N.push_back(static_cast<double>(row.off_lines));
    rep.rows.push_back(row);
  }
  rep.fit = fit_exponent(B_list, N);
  return rep;
}

ExperimentReport integral_conics_experiment(const MultiPoly& g, const std::vector<long>& B_list, long line_bound,
                                            const CountOptions& opt) {
  ExperimentReport rep;
  rep.kind = "integral-points-on-conics";
  rep.overlay_exponent = integral_conics_exponent();
  rep.proxy_note = kProxyNote;
  if (g.nvars() != 3 || g.total_degree() != 3) throw DomainError("expected an affine cubic in three variables");
  // homogenise with T0
  MultiPoly f(4);
  for (const auto& [ex, c] : g.terms()) f.add_term({3 - total_degree(ex), ex[0], ex[1], ex[2]}, c);
  const auto cls = classify_cubic(f);
  if (cls.cylinder) throw PreconditionError("affine cubic is cylindrical over a curve");
  const MultiPoly top = f.specialize({{0, Rational(0)}});
  bool certified = false;
  for (auto p : default_smoothness_primes())
    if (absolutely_irreducible_cubic_mod_p(top, p).verdict == IrreducibilityVerdict::certified_irreducible) {
      certified = true;
      break;
    }
  if (!certified) throw PreconditionError("degree-3 part is not certified absolutely irreducible");
  const auto lines = find_lines(f, line_bound);
  rep.lines_used = lines.size();
  CountOptions o = opt;
  o.keep_points = true;
  std::vector<double> N;
  for (long B : B_list) {
    auto res = enumerate_affine({g}, 3, B, o);
    ExperimentRow row{B, res.count, 0, res.seconds};
    for (const auto& p : res.points) {
      IntPoint hp{1, p[0], p[1], p[2]};
      if (!on_some_line(hp, lines)) ++row.off_lines;
    }
    N.push_back(static_cast<double>(row.off_lines));
    rep.rows.push_back(row);
  }
  rep.fit = fit_exponent(B_list, N);
  return rep;
}

}  // namespace ccq
