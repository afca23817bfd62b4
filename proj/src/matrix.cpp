#include "ccq/matrix.hpp"

#include "ccq/errors.hpp"

namespace ccq {

EchelonForm bareiss_echelon(ZMatrix m) {
  EchelonForm out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // smallest nonzero magnitude in the column keeps intermediate entries short
    std::size_t best = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (m(i, c) == 0) continue;
      if (best == rows || mpz_cmpabs(m(i, c).get_mpz_t(), m(best, c).get_mpz_t()) < 0) best = i;
    }
    if (best == rows) continue;
    if (best != r) {
      m.swap_rows(best, r);
      out.sign = -out.sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = std::move(v);
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

ZMatrix clear_denominators(const QMatrix& m) {
  ZMatrix z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, Integer(m(i, j).get_den()));
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational v = m(i, j) * l;
      z(i, j) = v.get_num();
    }
  }
  return z;
}

std::size_t rank(const QMatrix& m) { return bareiss_echelon(clear_denominators(m)).pivots.size(); }

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < n; ++j) l = lcm(l, Integer(m(i, j).get_den()));
    scale *= l;
  }
  EchelonForm e = bareiss_echelon(clear_denominators(m));
  if (e.pivots.size() < n) return 0;
  // Bareiss: the last pivot equals the determinant of the scaled matrix.
  Rational d(e.reduced(n - 1, n - 1) * e.sign, scale);
  d.canonicalize();
  return d;
}

QMatrix rref(QMatrix m, std::vector<std::size_t>* pivots_out) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  if (pivots_out) *pivots_out = pivots;
  return m;
}

namespace {

// Back substitution from a fraction-free echelon form to reduced form over Q.
QMatrix reduce_echelon(const EchelonForm& e, std::size_t cols) {
  const std::size_t rk = e.pivots.size();
  QMatrix r(rk, cols);
  for (std::size_t i = 0; i < rk; ++i)
    for (std::size_t j = 0; j < cols; ++j) r(i, j) = Rational(e.reduced(i, j));
  for (std::size_t ii = rk; ii-- > 0;) {
    const std::size_t pc = e.pivots[ii];
    Rational inv = 1 / r(ii, pc);
    for (std::size_t j = pc; j < cols; ++j) r(ii, j) *= inv;
    for (std::size_t k = 0; k < ii; ++k) {
      if (r(k, pc) == 0) continue;
      Rational f = r(k, pc);
      for (std::size_t j = pc; j < cols; ++j) r(k, j) -= f * r(ii, j);
    }
  }
  return r;
}

QVector primitive_vector(QVector v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
  Integer g = 0;
  for (auto& x : v) {
    x *= l;
    g = gcd(g, Integer(x.get_num()));
  }
  if (g != 0)
    for (auto& x : v) x /= g;
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

}  // namespace

std::vector<QVector> kernel(const QMatrix& m) {
  const std::size_t cols = m.cols();
  EchelonForm e = bareiss_echelon(clear_denominators(m));
  QMatrix r = reduce_echelon(e, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -r(i, free);
    v = primitive_vector(std::move(v));
    QVector check = multiply(m, v);
    for (const auto& x : check)
      if (x != 0) throw InvariantError("kernel vector failed exact residual check");
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw DomainError("solve: row count mismatch");
  const std::size_t n = a.cols();
  QMatrix aug(a.rows(), n + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  std::vector<std::size_t> pivots;
  QMatrix r = rref(std::move(aug), &pivots);
  QMatrix x(n, b.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] >= n) return std::nullopt;  // pivot in an augmented column
    for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[i], j) = r(i, n + j);
  }
  return x;
}

std::size_t rank_mod_p(const ZMatrix& m, std::uint64_t p) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  Integer pp(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Integer v = m(i, j) % pp;
      if (v < 0) v += pp;
      a[i * cols + j] = v.get_ui();
    }
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % p);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    return r;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    std::uint64_t inv = powmod(a[r * cols + c], p - 2);
    for (std::size_t i = r + 1; i < rows; ++i) {
      std::uint64_t f = mulmod(a[i * cols + c], inv);
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        std::uint64_t s = mulmod(f, a[r * cols + j]);
        a[i * cols + j] = (a[i * cols + j] + p - s) % p;
      }
    }
    ++r;
  }
  return r;
}

MultiPoly determinant(const PolyMatrix& input, int nvars) {
  if (input.rows() != input.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return MultiPoly::constant(nvars, 1);
  PolyMatrix m = input;
  MultiPoly prev = MultiPoly::constant(nvars, 1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    // fewest terms among nonzero candidates
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      if (best == n || m(i, k).size() < m(best, k).size()) best = i;
    }
    if (best == n) return MultiPoly(nvars);
    if (best != k) {
      m.swap_rows(best, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly v = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = exact_divide(v, prev);
      }
      m(i, k) = MultiPoly(nvars);
    }
    prev = m(k, k);
  }
  MultiPoly d = m(n - 1, n - 1);
  if (sign < 0) d = -d;
  return d;
}

QVector multiply(const QMatrix& m, const QVector& v) {
  QVector out(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && v[j] != 0) out[i] += m(i, j) * v[j];
  return out;
}

}  // namespace ccq
