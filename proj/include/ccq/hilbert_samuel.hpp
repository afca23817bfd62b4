#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccq/multipoly.hpp"
#include "ccq/numeric.hpp"

namespace ccq {

/// Local Hilbert-Samuel function of a point of multiplicity mu on a d-dimensional
/// hypersurface: C(d+s, s) - C(d+s-mu, s-mu).
Integer local_hs(int d, int mu, long s);

/// Sum of the first m entries of the nondecreasing series in which s appears local_hs(d, mu, s)
/// times.
Integer q_partial_sum(int d, int mu, long m);

/// Right-hand side of the explicit lower bound for q_partial_sum.
double q_lower_bound(int d, int mu, long m);

struct QBoundReport {
  int d = 0, mu = 0;
  long m_max = 0;
  long violations = 0;
  double min_slack = 0;  // min over m of Q(m) - bound(m)
  long argmin_m = 0;
};
QBoundReport q_lower_bound_check(int d, int mu, long m_max);

/// rg(F_D) = C(d+1+D, d+1) - C(d+1-delta+D, d+1).
Integer geometric_hs(int d, int delta, long D);

struct HsWindow {
  double lower = 0, value = 0, upper = 0;  // bounds on rg^{1/d}
  bool holds = false;
};
/// Two-sided estimate of rg^{1/d} for D >= delta.
HsWindow geometric_hs_window(int d, int delta, long D);

struct PointCensus {
  std::uint64_t p = 0;
  long n = 0;  // sum of multiplicities over X(F_p)
  std::map<std::vector<std::uint64_t>, int> multiplicity;  // normalised points of P^2(F_p)
  bool above_threshold = false;                             // p >= 27 delta^4
};
/// Points of a plane curve over F_p with their multiplicities.
PointCensus reduction_point_census(const MultiPoly& f, std::uint64_t p);

struct BadPrime {
  std::uint64_t p = 0;
  std::string reason;
  bool above_threshold = false;
};

struct ReductionCensus {
  int delta = 2;
  std::uint64_t threshold = 0;                // 27 delta^4
  std::uint64_t p_max = 0;
  std::vector<BadPrime> reducible_reductions;  // every prime <= p_max, annotated
  std::vector<std::uint64_t> bad_primes;       // those above the threshold
  double b_prime = 1;                          // prod exp(log p / p) over bad_primes
  Integer certifying_minor;                    // gcd of 3x3 minors of the Gram matrix
  bool complete = false;                       // p_max covers every prime factor of the minor
};
/// Census of primes where a quadratic form becomes geometrically reducible.
ReductionCensus bad_reduction_census(const MultiPoly& q, std::uint64_t p_max);

/// Symmetric matrix with 2*a_ii on the diagonal and a_ij off it (integral for integral q).
std::vector<std::vector<Integer>> gram_matrix(const MultiPoly& q);

/// User-supplied constants for the bound formulas. Keys: B1, kappa1, kappa2, eps1, eps2, eps3
/// (default 0) and C1p(n,d), C1pp(n,d), C4(n,d) (required by the formulas that use them).
class ExternalConstants {
 public:
  static ExternalConstants parse(const std::string& text);
  static ExternalConstants load(const std::string& path);

  void set(const std::string& key, double value) { values_[key] = value; }
  /// Optional scalar with default 0.
  double get_or_zero(const std::string& key) const;
  /// Throws ConfigError when missing.
  double require(const std::string& key) const;
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::map<std::string, double>& values() const { return values_; }
  std::string label() const { return label_; }

 private:
  std::map<std::string, double> values_;
  std::string label_ = "user-supplied, not derived from first principles";
};

enum class BoundKind { ProjectiveCurve, ProjectiveSurface, AffineCurve, AffineSurface, ConicsRational, ConicsIntegral };

BoundKind parse_bound_kind(const std::string& name);
std::string to_string(BoundKind kind);

struct BoundParams {
  int n = 3;
  int delta = 2;
  double B = 1;
};

struct BoundValue {
  double value = 0;     // full closed form with the supplied constants
  double exponent = 0;  // exponent of B in the shape
  std::string formula;
};
BoundValue bound_evaluator(BoundKind kind, const BoundParams& params, const ExternalConstants& constants);

}  // namespace ccq
