#include "ccq/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "ccq/matrix.hpp"

namespace ccq {

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

// ---------------------------------------------------------------------------
// MultiPoly basics

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
  MultiPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int index, const Rational& c) {
  if (index < 0 || index >= nvars) throw DomainError("variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(std::move(e), c);
}

MultiPoly MultiPoly::monomial(Exponents e, const Rational& c) {
  MultiPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && ccq::total_degree(terms_.begin()->first) == 0);
}

Rational MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars_) throw DomainError("exponent length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return ccq::total_degree(terms_.begin()->first);
}

int MultiPoly::degree_in(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int MultiPoly::degree_in(std::span<const int> vars) const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : vars) s += e[v];
    d = std::max(d, s);
  }
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = total_degree();
  for (const auto& [e, c] : terms_)
    if (ccq::total_degree(e) != d) return false;
  return true;
}

bool MultiPoly::is_homogeneous_in(std::span<const int> vars) const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : vars) s += e[v];
    if (d < 0) d = s;
    if (s != d) return false;
  }
  return true;
}

const Exponents& MultiPoly::leading_exponents() const {
  if (terms_.empty()) throw DomainError("leading term of zero polynomial");
  return terms_.begin()->first;
}

const Rational& MultiPoly::leading_coeff() const {
  if (terms_.empty()) throw DomainError("leading term of zero polynomial");
  return terms_.begin()->second;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.nvars_ != nvars_) throw DomainError("adding polynomials in different rings");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.nvars_ != nvars_) throw DomainError("subtracting polynomials in different rings");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) throw DomainError("multiplying polynomials in different rings");
  MultiPoly r(a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = constant(nvars_, 1);
  MultiPoly base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::partial(int var) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw DomainError("evaluation point has wrong length");
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), e[i]);
      t *= p;
    }
    s += t;
  }
  return s;
}

Integer MultiPoly::evaluate_integer(std::span<const Integer> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw DomainError("evaluation point has wrong length");
  Integer s = 0;
  Integer p;
  for (const auto& [e, c] : terms_) {
    if (c.get_den() != 1) throw DomainError("evaluate_integer needs integer coefficients");
    Integer t = c.get_num();
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      mpz_pow_ui(p.get_mpz_t(), point[i].get_mpz_t(), e[i]);
      t *= p;
    }
    s += t;
  }
  return s;
}

MultiPoly MultiPoly::substitute(std::span<const MultiPoly> images) const {
  if (static_cast<int>(images.size()) != nvars_) throw DomainError("substitute: wrong image count");
  const int target = images.empty() ? 0 : images[0].nvars();
  for (const auto& im : images)
    if (im.nvars() != target) throw DomainError("substitute: images in different rings");
  // cache powers per variable
  std::vector<std::vector<MultiPoly>> powers(nvars_);
  MultiPoly r(target);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = constant(target, c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(target, 1));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
      t = t * pw[e[i]];
    }
    r += t;
  }
  return r;
}

MultiPoly MultiPoly::specialize(const std::vector<std::pair<int, Rational>>& values) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    Rational v = c;
    for (const auto& [var, val] : values) {
      if (ne[var] == 0) continue;
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), val.get_num_mpz_t(), ne[var]);
      mpz_pow_ui(p.get_den_mpz_t(), val.get_den_mpz_t(), ne[var]);
      v *= p;
      ne[var] = 0;
    }
    r.add_term(ne, v);
  }
  return r;
}

MultiPoly MultiPoly::remap(int new_nvars, std::span<const int> map) const {
  if (static_cast<int>(map.size()) != nvars_) throw DomainError("remap: wrong map length");
  MultiPoly r(new_nvars);
  for (const auto& [e, c] : terms_) {
    Exponents ne(new_nvars, 0);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (map[i] < 0 || map[i] >= new_nvars) throw DomainError("remap: variable dropped while in use");
      ne[map[i]] += e[i];
    }
    r.add_term(ne, c);
  }
  return r;
}

bool MultiPoly::has_integer_coefficients() const {
  for (const auto& [e, c] : terms_)
    if (c.get_den() != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Division

DivisionRemainderError::DivisionRemainderError(MultiPoly remainder)
    : std::runtime_error("polynomial division left a nonzero remainder: " + to_text(remainder)),
      remainder_(std::move(remainder)) {}

namespace {

bool exponent_divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

}  // namespace

std::pair<MultiPoly, MultiPoly> divide_with_remainder(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw DomainError("division by the zero polynomial");
  if (f.nvars() != g.nvars()) throw DomainError("dividing polynomials in different rings");
  const int n = f.nvars();
  MultiPoly q(n), r(n), p = f;
  const Exponents& lg = g.leading_exponents();
  const Rational& lc = g.leading_coeff();
  while (!p.is_zero()) {
    const Exponents lp = p.leading_exponents();
    const Rational cp = p.leading_coeff();
    if (exponent_divides(lg, lp)) {
      Exponents d(n);
      for (int i = 0; i < n; ++i) d[i] = lp[i] - lg[i];
      const Rational c = cp / lc;
      q.add_term(d, c);
      for (const auto& [e, ce] : g.terms()) {
        Exponents s(n);
        for (int i = 0; i < n; ++i) s[i] = e[i] + d[i];
        p.add_term(s, -c * ce);
      }
    } else {
      r.add_term(lp, cp);
      p.add_term(lp, -cp);
    }
  }
  return {std::move(q), std::move(r)};
}

MultiPoly exact_divide(const MultiPoly& f, const MultiPoly& g) {
  auto [q, r] = divide_with_remainder(f, g);
  if (!r.is_zero()) throw DivisionRemainderError(std::move(r));
  return q;
}

bool divides(const MultiPoly& g, const MultiPoly& f) { return divide_with_remainder(f, g).second.is_zero(); }

MultiPoly homogeneous_component(const MultiPoly& f, std::span<const int> vars, int degree) {
  MultiPoly r(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    int s = 0;
    for (int v : vars) s += e[v];
    if (s == degree) r.add_term(e, c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Univariate and bivariate gcd

namespace {

using UPoly = std::vector<Rational>;  // index = degree, no trailing zeros

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int udeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly umod(UPoly a, const UPoly& b) {
  trim(a);
  while (!a.empty() && udeg(a) >= udeg(b)) {
    const Rational f = a.back() / b.back();
    const int shift = udeg(a) - udeg(b);
    for (int i = 0; i <= udeg(b); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  return a;
}

UPoly umonic(UPoly a) {
  trim(a);
  if (a.empty()) return a;
  const Rational l = a.back();
  for (auto& c : a) c /= l;
  return a;
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = umod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return umonic(std::move(a));
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

UPoly usub(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

UPoly uexact_div(const UPoly& a, const UPoly& b) {
  UPoly r = a;
  trim(r);
  if (r.empty()) return {};
  UPoly q(udeg(r) - udeg(b) + 1, Rational(0));
  while (!r.empty() && udeg(r) >= udeg(b)) {
    const Rational f = r.back() / b.back();
    const int shift = udeg(r) - udeg(b);
    q[shift] = f;
    for (int i = 0; i <= udeg(b); ++i) r[i + shift] -= f * b[i];
    trim(r);
  }
  if (!r.empty()) throw InvariantError("univariate exact division failed");
  trim(q);
  return q;
}

// polynomial in x whose coefficients are polynomials in y
using BPoly = std::vector<UPoly>;

void btrim(BPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

UPoly bcontent(const BPoly& p) {
  UPoly g;
  for (const auto& c : p) g = ugcd(g, c);
  return g;
}

BPoly bdiv_content(const BPoly& p, const UPoly& c) {
  BPoly r;
  for (const auto& x : p) r.push_back(x.empty() ? UPoly{} : uexact_div(x, c));
  return r;
}

// pseudo remainder of a by b in x
BPoly bprem(BPoly a, const BPoly& b) {
  btrim(a);
  const int db = static_cast<int>(b.size()) - 1;
  const UPoly& lb = b.back();
  while (!a.empty() && static_cast<int>(a.size()) - 1 >= db) {
    const int da = static_cast<int>(a.size()) - 1;
    const UPoly la = a.back();
    for (auto& c : a) c = umul(c, lb);
    for (int i = 0; i <= db; ++i) a[i + da - db] = usub(a[i + da - db], umul(la, b[i]));
    btrim(a);
  }
  return a;
}

BPoly to_bpoly(const MultiPoly& f, int vx, int vy) {
  BPoly p;
  for (const auto& [e, c] : f.terms()) {
    for (int i = 0; i < f.nvars(); ++i)
      if (i != vx && i != vy && e[i] != 0) throw DomainError("gcd_bivariate: unexpected variable");
    const int dx = vx >= 0 ? e[vx] : 0;
    const int dy = vy >= 0 ? e[vy] : 0;
    if (static_cast<int>(p.size()) <= dx) p.resize(dx + 1);
    if (static_cast<int>(p[dx].size()) <= dy) p[dx].resize(dy + 1, Rational(0));
    p[dx][dy] += c;
  }
  for (auto& c : p) trim(c);
  btrim(p);
  return p;
}

MultiPoly from_bpoly(const BPoly& p, int nvars, int vx, int vy) {
  MultiPoly r(nvars);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p[i].size(); ++j) {
      if (p[i][j] == 0) continue;
      Exponents e(nvars, 0);
      if (vx >= 0) e[vx] = static_cast<int>(i);
      if (vy >= 0) e[vy] = static_cast<int>(j);
      r.add_term(e, p[i][j]);
    }
  return r;
}

}  // namespace

MultiPoly gcd_bivariate(const MultiPoly& a, const MultiPoly& b, int vx, int vy) {
  const int n = a.nvars();
  if (b.nvars() != n) throw DomainError("gcd of polynomials in different rings");
  if (vx < 0) std::swap(vx, vy);
  BPoly pa = to_bpoly(a, vx, vy), pb = to_bpoly(b, vx, vy);
  if (pa.empty() && pb.empty()) return MultiPoly(n);
  UPoly ca = bcontent(pa), cb = bcontent(pb);
  UPoly gc;
  if (pa.empty()) gc = cb;
  else if (pb.empty()) gc = ca;
  else gc = ugcd(ca, cb);
  if (!pa.empty()) pa = bdiv_content(pa, ca);
  if (!pb.empty()) pb = bdiv_content(pb, cb);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  while (!pb.empty()) {
    BPoly r = bprem(pa, pb);
    pa = std::move(pb);
    if (r.empty()) {
      pb.clear();
    } else {
      pb = bdiv_content(r, bcontent(r));
    }
  }
  BPoly g;
  for (const auto& c : pa) g.push_back(umul(c, gc));
  btrim(g);
  MultiPoly res = from_bpoly(g, n, vx, vy);
  return primitive_normalize(res).first;
}

std::pair<MultiPoly, Rational> primitive_normalize(const MultiPoly& f) {
  if (f.is_zero()) throw DomainError("primitive part of the zero polynomial");
  Integer l = 1;
  for (const auto& [e, c] : f.terms()) l = lcm(l, Integer(c.get_den()));
  Integer g = 0;
  for (const auto& [e, c] : f.terms()) g = gcd(g, Integer(Rational(c * l).get_num()));
  Rational scalar(g, l);
  scalar.canonicalize();
  if (f.leading_coeff() < 0) scalar = -scalar;
  MultiPoly p = f;
  p *= 1 / scalar;
  return {std::move(p), scalar};
}

ContentSplit content_primitive(const MultiPoly& f, std::span<const int> coeff_vars) {
  if (f.is_zero()) throw DomainError("content of the zero polynomial");
  const int n = f.nvars();
  if (coeff_vars.empty()) {
    auto [p, s] = primitive_normalize(f);
    return {MultiPoly::constant(n, s), std::move(p)};
  }
  if (coeff_vars.size() > 2) throw DomainError("content over more than two coefficient variables");
  const int vx = coeff_vars[0];
  const int vy = coeff_vars.size() > 1 ? coeff_vars[1] : -1;
  std::map<Exponents, MultiPoly> groups;
  for (const auto& [e, c] : f.terms()) {
    Exponents main = e, cpart(n, 0);
    for (int v : coeff_vars) {
      cpart[v] = e[v];
      main[v] = 0;
    }
    auto [it, ins] = groups.try_emplace(main, MultiPoly(n));
    it->second.add_term(cpart, c);
  }
  MultiPoly g(n);
  for (const auto& [m, cp] : groups) {
    g = gcd_bivariate(g, cp, vx, vy);
    if (g.is_constant()) break;
  }
  MultiPoly rest = exact_divide(f, g);
  auto [prim, s] = primitive_normalize(rest);
  return {g * s, std::move(prim)};
}

// ---------------------------------------------------------------------------
// Essential variables

EssentialVariables essential_variable_count(const MultiPoly& f) {
  if (f.is_zero()) throw DomainError("essential variables of the zero polynomial");
  const int n = f.nvars();
  std::vector<MultiPoly> partials;
  std::map<Exponents, std::size_t, GrlexGreater> index;
  for (int i = 0; i < n; ++i) {
    partials.push_back(f.partial(i));
    for (const auto& [e, c] : partials.back().terms()) index.try_emplace(e, 0);
  }
  std::size_t k = 0;
  for (auto& [e, idx] : index) idx = k++;
  // columns: variables; rows: monomials of the partial derivatives
  QMatrix a(index.size(), n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (const auto& [e, c] : partials[i].terms()) a(index.at(e), i) = c;
  EssentialVariables out;
  const auto invariant_dirs = kernel(a);
  out.count = n - static_cast<int>(invariant_dirs.size());
  if (invariant_dirs.empty()) {
    for (int i = 0; i < n; ++i) {
      std::vector<Rational> row(n, Rational(0));
      row[i] = 1;
      out.basis.push_back(std::move(row));
    }
    return out;
  }
  QMatrix kt(invariant_dirs.size(), n);
  for (std::size_t r = 0; r < invariant_dirs.size(); ++r)
    for (int c = 0; c < n; ++c) kt(r, c) = invariant_dirs[r][c];
  out.basis = kernel(kt);
  return out;
}

// ---------------------------------------------------------------------------
// Resultants

namespace {

// coefficients of a binary form in the first two variables, a[i] = coeff of x0^{d-i} x1^i
std::vector<Rational> binary_coefficients(const MultiPoly& f, int& degree) {
  if (f.is_zero()) throw DomainError("resultant of a zero form");
  if (!f.is_homogeneous()) throw DomainError("resultant needs homogeneous binary forms");
  degree = f.total_degree();
  std::vector<Rational> a(degree + 1, Rational(0));
  for (const auto& [e, c] : f.terms()) {
    for (int i = 2; i < f.nvars(); ++i)
      if (e[i] != 0) throw DomainError("binary form uses more than two variables");
    a[e[1]] = c;
  }
  return a;
}

}  // namespace

Rational sylvester_resultant(const MultiPoly& f, const MultiPoly& g) {
  int m = 0, n = 0;
  const auto a = binary_coefficients(f, m);
  const auto b = binary_coefficients(g, n);
  const int size = m + n;
  if (size == 0) return 1;
  QMatrix s(size, size, Rational(0));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s(r, r + i) = a[i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s(n + r, r + i) = b[i];
  return determinant(s);
}

namespace {

std::vector<Exponents> monomials_of_degree(int nvars, int degree) {
  std::vector<Exponents> out;
  Exponents e(nvars, 0);
  // recursive fill, collected then sorted in grlex order
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == nvars - 1) {
      e[var] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
  };
  if (nvars == 0) return out;
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), GrlexGreater{});
  return out;
}

// Splits f into (main-exponent -> coefficient polynomial) for the first `main` variables.
std::map<Exponents, MultiPoly> split_main(const MultiPoly& f, int main) {
  std::map<Exponents, MultiPoly> out;
  const int n = f.nvars();
  for (const auto& [e, c] : f.terms()) {
    Exponents me(e.begin(), e.begin() + main);
    Exponents ce = e;
    for (int i = 0; i < main; ++i) ce[i] = 0;
    auto [it, ins] = out.try_emplace(me, MultiPoly(n));
    it->second.add_term(ce, c);
  }
  return out;
}

struct MacaulayMatrices {
  PolyMatrix full;
  PolyMatrix extraneous;
};

MacaulayMatrices build_macaulay(std::span<const MultiPoly> forms, int main, const std::vector<int>& degrees,
                                int nvars) {
  int big_d = 1;
  for (int d : degrees) big_d += d - 1;
  const auto monos = monomials_of_degree(main, big_d);
  std::map<Exponents, std::size_t> col;
  for (std::size_t i = 0; i < monos.size(); ++i) col[monos[i]] = i;
  std::vector<std::map<Exponents, MultiPoly>> split;
  for (const auto& f : forms) split.push_back(split_main(f, main));

  const std::size_t size = monos.size();
  MacaulayMatrices mm{PolyMatrix(size, size, MultiPoly(nvars)), PolyMatrix()};
  std::vector<std::size_t> extraneous_rows;
  for (std::size_t r = 0; r < size; ++r) {
    const Exponents& alpha = monos[r];
    int owner = -1, hits = 0;
    for (int i = 0; i < main; ++i) {
      if (alpha[i] >= degrees[i]) {
        ++hits;
        if (owner < 0) owner = i;
      }
    }
    if (owner < 0) throw InvariantError("Macaulay monomial without an owner");
    if (hits >= 2) extraneous_rows.push_back(r);
    Exponents shift = alpha;
    shift[owner] -= degrees[owner];
    for (const auto& [gamma, cpoly] : split[owner]) {
      Exponents beta(main);
      for (int i = 0; i < main; ++i) beta[i] = shift[i] + gamma[i];
      mm.full(r, col.at(beta)) += cpoly;
    }
  }
  const std::size_t k = extraneous_rows.size();
  mm.extraneous = PolyMatrix(k, k, MultiPoly(nvars));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) mm.extraneous(i, j) = mm.full(extraneous_rows[i], extraneous_rows[j]);
  return mm;
}

bool all_constant(const PolyMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_constant()) return false;
  return true;
}

MultiPoly poly_det(const PolyMatrix& m, int nvars) {
  if (all_constant(m)) {
    QMatrix q(m.rows(), m.cols());
    const Exponents zero(nvars, 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j).coeff(zero);
    return MultiPoly::constant(nvars, determinant(q));
  }
  return determinant(m, nvars);
}

}  // namespace

MacaulayResult macaulay_resultant(std::span<const MultiPoly> forms, int main, bool force_deformation) {
  if (static_cast<int>(forms.size()) != main)
    throw DomainError("macaulay_resultant needs exactly one form per main variable");
  const int nvars = forms.empty() ? 0 : forms[0].nvars();
  std::vector<int> degrees;
  const std::vector<int> main_vars = [&] {
    std::vector<int> v(main);
    std::iota(v.begin(), v.end(), 0);
    return v;
  }();
  for (const auto& f : forms) {
    if (f.nvars() != nvars) throw DomainError("forms live in different rings");
    if (f.is_zero()) throw DomainError("macaulay_resultant of a zero form");
    if (!f.is_homogeneous_in(main_vars)) throw DomainError("forms must be homogeneous in the main variables");
    const int d = f.degree_in(main_vars);
    if (d < 1) throw DomainError("macaulay_resultant needs degrees >= 1");
    degrees.push_back(d);
  }
  long long prod_deg = 1;
  for (int d : degrees) prod_deg *= d;

  for (int shift = 0; shift < main && !force_deformation; ++shift) {
    // rename x_j -> x_{(j+shift) mod main}
    std::vector<int> map(nvars);
    std::iota(map.begin(), map.end(), 0);
    for (int j = 0; j < main; ++j) map[j] = (j + shift) % main;
    std::vector<MultiPoly> renamed;
    for (const auto& f : forms) renamed.push_back(f.remap(nvars, map));
    auto mm = build_macaulay(renamed, main, degrees, nvars);
    MultiPoly den = poly_det(mm.extraneous, nvars);
    if (den.is_zero()) continue;
    MultiPoly num = poly_det(mm.full, nvars);
    MultiPoly res = exact_divide(num, den);
    // Res(f o P) = det(P)^{prod deg} Res(f); a cyclic shift of `main` items has sign (-1)^{shift*(main-1)}
    if ((static_cast<long long>(shift) * (main - 1) % 2 == 1) && (prod_deg % 2 == 1)) res = -res;
    return {std::move(res), shift, false};
  }

  // Every partition degenerate: deform f_i by eps * x_i^{d_i} with a fresh variable eps, take the
  // exact quotient in Q[..., eps] and specialise eps = 0.
  const int eps = nvars;
  std::vector<int> embed(nvars);
  std::iota(embed.begin(), embed.end(), 0);
  std::vector<MultiPoly> deformed;
  for (int i = 0; i < main; ++i) {
    MultiPoly g = forms[i].remap(nvars + 1, embed);
    Exponents e(nvars + 1, 0);
    e[i] = degrees[i];
    e[eps] = 1;
    g.add_term(e, 1);
    deformed.push_back(std::move(g));
  }
  auto mm = build_macaulay(deformed, main, degrees, nvars + 1);
  MultiPoly den = poly_det(mm.extraneous, nvars + 1);
  if (den.is_zero()) throw InvariantError("deformed Macaulay minor vanished identically");
  MultiPoly num = poly_det(mm.full, nvars + 1);
  MultiPoly q = exact_divide(num, den).specialize({{eps, Rational(0)}});
  MultiPoly out(nvars);
  for (const auto& [e, c] : q.terms()) out.add_term(Exponents(e.begin(), e.begin() + nvars), c);
  return {std::move(out), 0, true};
}

BiForm::BiForm(MultiPoly poly, int k) : poly_(std::move(poly)), k_(k) {
  if (poly_.nvars() < 8) throw DomainError("BiForm needs at least 8 variables");
  static constexpr int u_vars[] = {0, 1, 2, 3};
  static constexpr int v_vars[] = {4, 5, 6, 7};
  if (!poly_.is_zero()) {
    if (!poly_.is_homogeneous_in(u_vars) || !poly_.is_homogeneous_in(v_vars) ||
        poly_.degree_in(u_vars) != k || poly_.degree_in(v_vars) != k)
      throw DomainError("BiForm is not bihomogeneous of bidegree (k,k)");
  }
}

// ---------------------------------------------------------------------------
// Text format

std::vector<std::string> default_names(int nvars, const std::string& stem) {
  std::vector<std::string> names;
  for (int i = 0; i < nvars; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

std::string to_text(const MultiPoly& f, const std::vector<std::string>& names_in) {
  const auto names = names_in.empty() ? default_names(f.nvars()) : names_in;
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    os << a.get_str();
    bool any = false;
    for (int i = 0; i < f.nvars(); ++i) {
      if (e[i] == 0) continue;
      os << (any ? "*" : " * ") << names[i];
      if (e[i] > 1) os << "^" << e[i];
      any = true;
    }
  }
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(const std::string& s, int nvars, const std::vector<std::string>& names)
      : s_(s), nvars_(nvars), names_(names) {}

  MultiPoly parse() {
    MultiPoly out(nvars_);
    skip();
    if (pos_ == s_.size()) throw DomainError("empty polynomial text");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        if (s_[pos_] == '-') sign = -1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      parse_term(out, sign);
      skip();
    }
    return out;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw DomainError("polynomial parse error at column " + std::to_string(pos_) + ": " + msg + " in '" + s_ + "'");
  }

  void parse_term(MultiPoly& out, int sign) {
    Rational coeff = sign;
    Exponents e(nvars_, 0);
    bool have_factor = false;
    while (true) {
      skip();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
        coeff *= parse_rational(s_.substr(start, pos_ - start));
      } else if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        const std::string name = s_.substr(start, pos_ - start);
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) fail("unknown variable '" + name + "'");
        int power = 1;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip();
          std::size_t ps = pos_;
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
          if (ps == pos_) fail("missing exponent");
          power = std::stoi(s_.substr(ps, pos_ - ps));
        }
        e[it - names_.begin()] += power;
      } else {
        fail("expected coefficient or variable");
      }
      have_factor = true;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!have_factor) fail("empty term");
    out.add_term(e, coeff);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int nvars_;
  const std::vector<std::string>& names_;
};

}  // namespace

MultiPoly parse_poly(const std::string& text, int nvars, const std::vector<std::string>& names_in) {
  const auto names = names_in.empty() ? default_names(nvars) : names_in;
  if (static_cast<int>(names.size()) != nvars) throw DomainError("parse_poly: names/nvars mismatch");
  return Parser(text, nvars, names).parse();
}

MultiPoly parse_poly_auto(const std::string& text, int min_vars) {
  int max_index = -1;
  bool uses_t = false, uses_x = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if ((c == 'x' || c == 'T') && (i == 0 || !std::isalnum(static_cast<unsigned char>(text[i - 1])))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j > i + 1) {
        max_index = std::max(max_index, std::stoi(text.substr(i + 1, j - i - 1)));
        (c == 'x' ? uses_x : uses_t) = true;
      }
    }
  }
  if (uses_t && uses_x) throw DomainError("mixing x<i> and T<i> variable names");
  const int n = std::max(min_vars, max_index + 1);
  return parse_poly(text, n, default_names(n, uses_t ? "T" : "x"));
}

}  // namespace ccq
