#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccq/multipoly.hpp"
#include "ccq/numeric.hpp"

namespace ccq {

/// Arithmetic constants of the base number field. Only K = Q is implemented.
struct FieldContext {
  int degree = 1;
  Rational minkowski_constant = 1;
  Rational bertrand_factor = 2;

  static FieldContext rationals() { return {}; }
};

struct PrimeTable {
  std::uint64_t bound = 0;
  std::vector<std::uint64_t> primes;
};

PrimeTable primes_up_to(std::uint64_t x);

struct PrimeSums {
  double theta = 0;  // sum log p
  double psi = 0;    // sum log p / p
  double phi = 0;    // sum log p / p^{3/2}
};
PrimeSums theta_psi_phi(double x);

struct MertensReport {
  double x_max = 0;
  double step = 0;
  std::size_t samples = 0;
  double sup_sampled = 0;  // max |psi(x) - log x| over the sample grid
  double sup_exact = 0;    // supremum over all real x in [2, x_max] (attained next to primes)
  double epsilon2 = 0;     // fitted constant, equal to sup_exact
};
MertensReport mertens_check(double x_max, double step);

/// Prime factorisation with multiplicities, ascending primes. |a| >= 1.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& a);

struct DivisorPrimeSum {
  double value = 0;      // sum over p | a of log p / p
  double bound = 0;      // log log |a| + 2
  bool within_bound = false;
};
DivisorPrimeSum prime_sum_over_divisors(const Integer& a);

/// Largest prime p with R/2 < p <= R.
Integer bertrand_prime(const Integer& r);

bool is_prime(const Integer& n);
bool is_prime(std::uint64_t n);

/// F_q with q = p^e, e <= 3. Elements are the integers 0..q-1 read as base-p digit vectors of a
/// polynomial in the generator (least significant digit = constant term).
class GaloisField {
 public:
  GaloisField(std::uint64_t p, int e);

  std::uint64_t characteristic() const { return p_; }
  int degree() const { return e_; }
  std::uint64_t order() const { return q_; }
  /// Monic defining polynomial, coefficients from the constant term up (size e+1).
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  /// Image of a rational number; throws DomainError when p divides the denominator.
  std::uint32_t from_rational(const Rational& x) const;
  std::string to_string(std::uint32_t a) const;

 private:
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const;

  std::uint64_t p_;
  int e_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint32_t> log_, exp_;  // only for e > 1
};

using FFPoly = std::map<Exponents, std::uint32_t, GrlexGreater>;

FFPoly reduce_mod(const MultiPoly& f, const GaloisField& field);

struct LinearFactor {
  std::vector<std::uint32_t> coeffs;  // first nonzero coefficient is 1
  FFPoly cofactor;                    // f == form * cofactor over F_q, checked exactly
};

/// Multiplies two polynomials over F_q.
FFPoly ff_multiply(const FFPoly& a, const FFPoly& b, const GaloisField& field, int nvars);

constexpr std::uint64_t kDefaultLinearFactorBudget = 100'000'000ULL;

/// Every linear form over F_{p^e} (up to scalars) dividing f, by exhaustive enumeration of
/// normalised forms. Throws BudgetError when p^(e * nvars) exceeds `budget`.
std::vector<LinearFactor> ff_factor_linear(const MultiPoly& f, std::uint64_t p, int e,
                                           std::uint64_t budget = kDefaultLinearFactorBudget);

/// Text of a linear form over F_q, using integer labels for field elements.
std::string linear_form_text(const std::vector<std::uint32_t>& coeffs, const GaloisField& field,
                             const std::vector<std::string>& names);

}  // namespace ccq
