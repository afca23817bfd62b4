#include "ccq/hilbert_samuel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ccq/errors.hpp"
#include "ccq/exact_arith.hpp"
#include "ccq/matrix.hpp"

namespace ccq {

Integer local_hs(int d, int mu, long s) {
  if (d < 1 || mu < 1 || s < 0) throw DomainError("local_hs needs d >= 1, mu >= 1, s >= 0");
  return binomial(d + s, s) - binomial(d + s - mu, s - mu);
}

Integer q_partial_sum(int d, int mu, long m) {
  if (m < 1) throw DomainError("q_partial_sum needs m >= 1");
  Integer total = 0;
  long left = m;
  for (long s = 0; left > 0; ++s) {
    Integer h = local_hs(d, mu, s);
    const long take = h < left ? h.get_si() : left;
    total += Integer(take) * s;
    left -= take;
  }
  return total;
}

double q_lower_bound(int d, int mu, long m) {
  double fact = 1;
  for (int i = 2; i <= d; ++i) fact *= i;
  const double md = static_cast<double>(m);
  const double lead = std::pow(fact / mu, 1.0 / d) * (static_cast<double>(d) / (d + 1)) * std::pow(md, (d + 1.0) / d);
  const double lin = static_cast<double>(d * d * d + 5 * d * d + 8 * d) / (2.0 * (d + 1) * (d + 2));
  return lead - lin * md;
}

QBoundReport q_lower_bound_check(int d, int mu, long m_max) {
  if (d < 1 || d > 4 || mu < 1 || mu > 8) throw DomainError("q_lower_bound_check supports d <= 4, mu <= 8");
  if (m_max < 1 || m_max > 10000) throw BudgetError("q_lower_bound_check: m_max outside 1..10^4", m_max);
  QBoundReport r{d, mu, m_max, 0, 0, 0};
  // walk the series once, accumulating Q(m)
  double q = 0;
  long m = 0;
  bool first = true;
  for (long s = 0; m < m_max; ++s) {
    const long h = local_hs(d, mu, s).get_si();
    for (long k = 0; k < h && m < m_max; ++k) {
      ++m;
      q += static_cast<double>(s);
      const double slack = q - q_lower_bound(d, mu, m);
      if (!(slack > 0)) ++r.violations;
      if (first || slack < r.min_slack) {
        r.min_slack = slack;
        r.argmin_m = m;
        first = false;
      }
    }
  }
  return r;
}

Integer geometric_hs(int d, int delta, long D) {
  if (d < 0 || delta < 1 || D < 0) throw DomainError("geometric_hs needs d >= 0, delta >= 1, D >= 0");
  return binomial(d + 1 + D, d + 1) - binomial(d + 1 - delta + D, d + 1);
}

HsWindow geometric_hs_window(int d, int delta, long D) {
  if (D < delta) throw DomainError("the window estimate needs D >= delta");
  double fact = 1;
  for (int i = 2; i <= d; ++i) fact *= i;
  const double c = std::pow(delta / fact, 1.0 / d);
  HsWindow w;
  w.value = std::pow(geometric_hs(d, delta, D).get_d(), 1.0 / d);
  w.lower = c * static_cast<double>(D - (delta - 2));
  w.upper = c * (static_cast<double>(D) + (d + 1) / 2.0);
  // tolerate rounding in the root at exact equality
  const double eps = 1e-9 * std::max(1.0, w.value);
  w.holds = w.lower <= w.value + eps && w.value <= w.upper + eps;
  return w;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t mod_coeff(const Rational& c, std::uint64_t p) {
  GaloisField f(p, 1);
  return f.from_rational(c);
}

}  // namespace

PointCensus reduction_point_census(const MultiPoly& f, std::uint64_t p) {
  if (f.nvars() != 3 || !f.is_homogeneous() || f.is_zero()) throw DomainError("expected a nonzero ternary form");
  if (!is_prime(p)) throw DomainError("census modulus must be prime");
  if (p > 2000) throw BudgetError("point census over F_p limited to p <= 2000", static_cast<long long>(p));
  const int deg = f.total_degree();
  struct Term {
    std::array<int, 3> e;
    std::uint64_t c;
  };
  std::vector<Term> terms;
  for (const auto& [e, c] : f.terms()) {
    const auto v = mod_coeff(c, p);
    if (v) terms.push_back({{e[0], e[1], e[2]}, v});
  }
  if (terms.empty()) throw DomainError("degenerate reduction: the form vanishes modulo p");
  // binomials mod p up to deg
  std::vector<std::vector<std::uint64_t>> binom(deg + 1, std::vector<std::uint64_t>(deg + 1, 0));
  for (int a = 0; a <= deg; ++a) {
    binom[a][0] = 1;
    for (int b = 1; b <= a; ++b) binom[a][b] = (binom[a - 1][b - 1] + (b <= a - 1 ? binom[a - 1][b] : 0)) % p;
  }
  std::vector<std::uint64_t> pw(deg + 1);
  auto powmod_small = [&](std::uint64_t base, int k) {
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) r = r * base % p;
    return r;
  };
  PointCensus out;
  out.p = p;
  out.above_threshold = p >= 27ULL * deg * deg * deg * deg;
  // points [1:a:b], [0:1:b], [0:0:1]
  std::vector<std::array<std::uint64_t, 3>> points;
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b) points.push_back({1, a, b});
  for (std::uint64_t b = 0; b < p; ++b) points.push_back({0, 1, b});
  points.push_back({0, 0, 1});
  std::vector<std::uint64_t> g((deg + 1) * (deg + 1));
  for (const auto& pt : points) {
    int chart = pt[0] ? 0 : (pt[1] ? 1 : 2);
    int j = chart == 0 ? 1 : 0;
    int k = chart == 2 ? 1 : 2;
    // g(x, y) = f(pt + x e_j + y e_k)
    std::fill(g.begin(), g.end(), 0);
    for (const auto& t : terms) {
      std::uint64_t base = t.c * powmod_small(pt[chart], t.e[chart]) % p;
      if (base == 0) continue;
      const int ej = t.e[j], ek = t.e[k];
      for (int x = 0; x <= ej; ++x) {
        const std::uint64_t cx = binom[ej][x] * powmod_small(pt[j], ej - x) % p;
        if (cx == 0) continue;
        for (int y = 0; y <= ek; ++y) {
          const std::uint64_t cy = binom[ek][y] * powmod_small(pt[k], ek - y) % p;
          g[x * (deg + 1) + y] = (g[x * (deg + 1) + y] + base * cx % p * cy) % p;
        }
      }
    }
    int mult = -1;
    for (int total = 0; total <= deg && mult < 0; ++total)
      for (int x = 0; x <= total; ++x)
        if (g[x * (deg + 1) + (total - x)] != 0) {
          mult = total;
          break;
        }
    if (mult < 0) throw InvariantError("local expansion vanished identically");
    if (mult == 0) continue;
    out.multiplicity[{pt[0], pt[1], pt[2]}] = mult;
    out.n += mult;
  }
  return out;
}

std::vector<std::vector<Integer>> gram_matrix(const MultiPoly& q) {
  if (!q.is_homogeneous() || q.total_degree() != 2) throw DomainError("expected a quadratic form");
  const int n = q.nvars();
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n, 0));
  for (const auto& [e, c] : q.terms()) {
    if (c.get_den() != 1) throw DomainError("gram_matrix expects integer coefficients");
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < e[i]; ++k) idx.push_back(i);
    if (idx[0] == idx[1]) {
      m[idx[0]][idx[0]] = 2 * c.get_num();
    } else {
      m[idx[0]][idx[1]] = c.get_num();
      m[idx[1]][idx[0]] = c.get_num();
    }
  }
  return m;
}

ReductionCensus bad_reduction_census(const MultiPoly& q_in, std::uint64_t p_max) {
  const MultiPoly q = primitive_normalize(q_in).first;
  const auto g = gram_matrix(q);
  const std::size_t n = g.size();
  ZMatrix z(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = g[i][j];
  QMatrix qm(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) qm(i, j) = g[i][j];
  if (rank(qm) < 3) throw PreconditionError("quadratic form is geometrically reducible over Q (rank < 3)");
  ReductionCensus c;
  c.delta = 2;
  c.threshold = 27ULL * 16;
  c.p_max = p_max;
  // gcd of all 3x3 minors
  Integer minor_gcd = 0;
  for (std::size_t r0 = 0; r0 < n; ++r0)
    for (std::size_t r1 = r0 + 1; r1 < n; ++r1)
      for (std::size_t r2 = r1 + 1; r2 < n; ++r2)
        for (std::size_t c0 = 0; c0 < n; ++c0)
          for (std::size_t c1 = c0 + 1; c1 < n; ++c1)
            for (std::size_t c2 = c1 + 1; c2 < n; ++c2) {
              QMatrix s(3, 3);
              const std::size_t rr[] = {r0, r1, r2}, cc[] = {c0, c1, c2};
              for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) s(a, b) = g[rr[a]][cc[b]];
              minor_gcd = gcd(minor_gcd, Integer(determinant(s).get_num()));
            }
  c.certifying_minor = minor_gcd;
  const auto primes = primes_up_to(p_max).primes;
  for (auto p : primes) {
    bool reducible = false;
    std::string reason;
    if (p == 2) {
      // the Gram matrix is alternating mod 2; use linear factors over F_4 instead
      GaloisField f2(2, 1);
      if (reduce_mod(q, f2).empty()) {
        reducible = true;
        reason = "vanishes mod 2";
      } else if (!ff_factor_linear(q, 2, 2).empty()) {
        reducible = true;
        reason = "linear factor over F_4";
      }
    } else {
      const auto r = rank_mod_p(z, p);
      if (r < 3) {
        reducible = true;
        reason = "Gram matrix rank " + std::to_string(r) + " mod p";
      }
    }
    if (!reducible) continue;
    if (p != 2 && !mpz_divisible_ui_p(minor_gcd.get_mpz_t(), p))
      throw InvariantError("reducible reduction at a prime not dividing the certifying minor");
    BadPrime b{p, reason, p > c.threshold};
    c.reducible_reductions.push_back(b);
    if (b.above_threshold) {
      c.bad_primes.push_back(p);
      c.b_prime *= std::exp(std::log(static_cast<double>(p)) / static_cast<double>(p));
    }
  }
  Integer largest = 1;
  for (const auto& [p, m] : factor_integer(minor_gcd)) largest = p;
  c.complete = Integer(std::to_string(p_max)) >= largest;
  return c;
}

// ---------------------------------------------------------------------------

ExternalConstants ExternalConstants::parse(const std::string& text) {
  ExternalConstants c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("constants line " + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    key.erase(std::remove(key.begin(), key.end(), ' '), key.end());
    if (key.empty() || value.empty())
      throw ConfigError("constants line " + std::to_string(lineno) + ": empty key or value");
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size() || !std::isfinite(v)) throw std::invalid_argument("bad");
      c.values_[key] = v;
    } catch (const std::exception&) {
      throw ConfigError("constants line " + std::to_string(lineno) + ": not a finite number: " + value);
    }
  }
  return c;
}

ExternalConstants ExternalConstants::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read constants file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

double ExternalConstants::get_or_zero(const std::string& key) const {
  auto it = values_.find(key);
  return it == values_.end() ? 0.0 : it->second;
}

double ExternalConstants::require(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing external constant " + key);
  return it->second;
}

BoundKind parse_bound_kind(const std::string& name) {
  if (name == "projective-curve") return BoundKind::ProjectiveCurve;
  if (name == "projective-surface") return BoundKind::ProjectiveSurface;
  if (name == "affine-curve") return BoundKind::AffineCurve;
  if (name == "affine-surface") return BoundKind::AffineSurface;
  if (name == "conics-rational") return BoundKind::ConicsRational;
  if (name == "conics-integral") return BoundKind::ConicsIntegral;
  throw ConfigError("unknown bound kind " + name);
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::ProjectiveCurve: return "projective-curve";
    case BoundKind::ProjectiveSurface: return "projective-surface";
    case BoundKind::AffineCurve: return "affine-curve";
    case BoundKind::AffineSurface: return "affine-surface";
    case BoundKind::ConicsRational: return "conics-rational";
    case BoundKind::ConicsIntegral: return "conics-integral";
  }
  return "?";
}

namespace {

std::string key(const std::string& name, int n, int d) {
  return name + "(" + std::to_string(n) + "," + std::to_string(d) + ")";
}

}  // namespace

BoundValue bound_evaluator(BoundKind kind, const BoundParams& prm, const ExternalConstants& k) {
  if (!(prm.B >= 1)) throw DomainError("bound_evaluator needs B >= 1");
  if (prm.delta < 1) throw DomainError("bound_evaluator needs delta >= 1");
  const double B = prm.B, delta = prm.delta;
  const double logmax = std::max(std::log(B), 2.0);
  BoundValue v;
  switch (kind) {
    case BoundKind::ProjectiveCurve:
      v.exponent = 2.0 / delta;
      v.value = k.require(key("C1p", prm.n, 1)) * std::pow(delta, 4) * std::pow(B, v.exponent);
      v.formula = "C1p(n,1) delta^4 B^(2/delta)";
      break;
    case BoundKind::ProjectiveSurface:
      v.exponent = 3.0 / (2.0 * std::sqrt(delta));
      v.value = k.require(key("C1p", prm.n, 2)) * std::pow(delta, 3) * std::pow(B, v.exponent);
      v.formula = "C1p(n,2) delta^3 B^((d+1)/(d delta^(1/d))), d=2";
      break;
    case BoundKind::AffineCurve:
      v.exponent = 1.0 / delta;
      v.value = k.require(key("C4", prm.n, 1)) * std::pow(delta, 4) * std::pow(B, v.exponent);
      v.formula = "C4(n,1) delta^4 B^(1/delta)";
      break;
    case BoundKind::AffineSurface:
      v.exponent = 1.0 / std::sqrt(delta);
      v.value = k.require(key("C4", prm.n, 2)) * std::pow(delta, 3) * std::pow(B, v.exponent);
      v.formula = "C4(n,2) delta^3 B^(1/sqrt(delta))";
      break;
    case BoundKind::ConicsRational: {
      v.exponent = 3.0 * std::sqrt(3.0) / 8.0 + 1.0;
      const double c = 93312.0 * std::exp(23040.0 * std::log(2.0) * std::log(12.0) / 137.0) *
                       k.require(key("C1pp", 3, 1)) * k.require(key("C1p", 20, 1)) *
                       std::pow(k.require(key("C1p", 3, 2)), 0.75);
      v.value = c * std::pow(B, v.exponent) * logmax;
      v.formula = "93312 exp(23040 log2 log12/137) C1pp(3,1) C1p(20,1) C1p(3,2)^(3/4) B^(3sqrt3/8+1) max(log B,2)";
      break;
    }
    case BoundKind::ConicsIntegral: {
      v.exponent = std::sqrt(3.0) / 4.0 + 0.5;
      const double c = 93312.0 * k.require(key("C4", 3, 1)) * k.require(key("C1p", 5, 2)) *
                       std::pow(k.require(key("C4", 3, 2)), 0.75);
      v.value = c * std::pow(B, v.exponent) * logmax;
      v.formula = "93312 C4(3,1) C1p(5,2) C4(3,2)^(3/4) B^(sqrt3/4+1/2) max(log B,2)";
      break;
    }
  }
  return v;
}

}  // namespace ccq
