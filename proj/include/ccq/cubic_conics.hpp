#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccq/cayley.hpp"
#include "ccq/matrix.hpp"
#include "ccq/multipoly.hpp"
#include "ccq/numeric.hpp"

namespace ccq {

enum class Confidence { certified, evidence_only };
std::string to_string(Confidence c);

/// A line V(l1, l2) on a cubic surface V(f) with the identity f == a*l1 + b*l2.
struct RationalLine {
  LineP3 line;
  MultiPoly l1, l2;  // primitive integral linear forms in T0..T3
  MultiPoly a, b;    // quadratic cofactors
};

/// Rationals a/c with max(|a|, c) <= bound, in a fixed order (0 first).
std::vector<Rational> rationals_of_height(long bound);

/// Lines whose row-reduced 2x4 representative has entries of height <= bound and which lie on
/// every one of `forms`. Throws BudgetError when the number of candidates exceeds `budget`.
std::vector<LineP3> lines_in_common_zeros(const std::vector<MultiPoly>& forms, long bound,
                                          std::uint64_t budget = 20'000'000);

/// Lines on the cubic V(f) within the height bound, each with a verified containment certificate.
std::vector<RationalLine> find_lines(const MultiPoly& f, long bound, std::uint64_t budget = 20'000'000);

/// Certificate for a known line: f == a*l1 + b*l2; throws PreconditionError when the line is not on V(f).
RationalLine certify_line(const MultiPoly& f, const MultiPoly& l1, const MultiPoly& l2);

struct CubicClassification {
  int essential_vars = 0;         // in T0..T3
  int essential_vars_affine = 0;  // directions with zero T0 component only
  bool cone = false;              // essential_vars <= 3
  bool cylinder = false;          // essential_vars_affine <= 2 (the affine form is cylindrical over a curve)
  std::vector<std::uint64_t> primes;
  std::vector<bool> smooth_mod_p;  // no F_p point where f and all partials vanish
  std::optional<LineP3> singular_line;
  bool ruled_skew_evidence = false;
  bool non_ruled = false;
  Confidence non_ruled_confidence = Confidence::evidence_only;
};

const std::vector<std::uint64_t>& default_smoothness_primes();  // {5, 7, 11}

/// Essential variables, singular-point scans mod the given primes and a singular-line search.
/// Non-ruledness is certified by a prime whose reduction has no singular F_p point.
CubicClassification classify_cubic(const MultiPoly& f,
                                   const std::vector<std::uint64_t>& primes = default_smoothness_primes(),
                                   long singular_line_bound = 2);

/// True when f and its partials have no common zero in P^3(F_p). Requires p <= 101.
bool smooth_mod_p_scan(const MultiPoly& f, std::uint64_t p);

enum class IrreducibilityVerdict { certified_irreducible, reducible, inconclusive };
std::string to_string(IrreducibilityVerdict v);

struct IrreducibilityReport {
  IrreducibilityVerdict verdict = IrreducibilityVerdict::inconclusive;
  std::uint64_t p = 0;
  int extension_degree = 0;  // field of the first linear factor found
  std::string factor;        // its text, when reducible
  std::string reason;
};

/// Geometric irreducibility of the reduction of a cubic form mod p by linear-factor search over
/// F_p, F_{p^2}, F_{p^3}. An irreducible reduction certifies absolute irreducibility over Q.
IrreducibilityReport absolutely_irreducible_cubic_mod_p(const MultiPoly& f, std::uint64_t p,
                                                        std::uint64_t budget = 2'000'000'000ULL);

/// Plane t1*l1 + t2*l2 and its residual conic, both primitive; the conic is reduced modulo the plane.
struct ResidualConic {
  MultiPoly plane;
  MultiPoly conic;
};
ResidualConic residual_conic(const MultiPoly& f, const RationalLine& line, const Rational& t1, const Rational& t2);

/// Symbolic version in six variables T0..T3, t1, t2: plane = t1*l1 + t2*l2, conic = t1*b - t2*a,
/// with t1*f - l2*conic == a*plane checked exactly.
ResidualConic residual_conic_symbolic(const MultiPoly& f, const RationalLine& line);

struct PencilChecks {
  int min_b_degree = -1;
  int max_b_degree = -1;
  bool all_degree_two = false;  // every nonzero b_IJ homogeneous of degree exactly 2
  bool gcd_one = false;         // the b_IJ have no common factor
  MultiPoly family_gcd;
  int content_degree = -1;
};

struct ConicPencil {
  MultiPoly surface;
  RationalLine line;
  ResidualConic residual;  // symbolic
  PluckerForm psi;         // Cayley form of the residual conics, content removed (p_ij, then t1, t2)
  MultiPoly content;       // removed content b(t1, t2), in two variables
  /// Coefficients of the 21 degree-2 Plücker monomials (grlex order) as binary forms in t1, t2.
  /// The p01*p23 slot is identically zero because psi is reduced modulo the Grassmann relation.
  std::array<MultiPoly, 21> b;
  std::array<Exponents, 21> b_monomials;
  PencilChecks checks;
};

/// Builds the pencil of planes through the line, the symbolic Cayley form of the residual conics
/// and the b-family. The degree and gcd properties are recorded, not enforced.
ConicPencil conic_family(const MultiPoly& f, const RationalLine& line);
/// Throws PropertyViolation when a recorded pencil property fails.
void require_pencil_properties(const ConicPencil& pencil);

/// Primitive Cayley form of the residual conic at a numeric parameter, from the symbolic family.
PluckerForm specialize_pencil(const ConicPencil& pencil, const Integer& t1, const Integer& t2);
/// Compares the specialised family with a direct per-parameter computation.
bool pencil_specialization_coherent(const ConicPencil& pencil, const Integer& t1, const Integer& t2);

/// The b-vector evaluated at integer parameters.
std::vector<Integer> evaluate_family(const std::vector<MultiPoly>& family, const Integer& t1, const Integer& t2);
std::vector<MultiPoly> b_family(const ConicPencil& pencil);

struct LeadingFamily {
  std::array<MultiPoly, 6> a;  // coefficients of p01^2, p01p02, p01p03, p02^2, p02p03, p03^2
  QMatrix coefficients;        // 6 x (degree + 1)
  std::size_t rank = 0;
  bool rank_in_range = false;  // rank in {2, 3}
  std::optional<std::pair<int, int>> coprime_pair;
  Rational resultant = 0;
  bool no_common_zero = false;           // over the algebraic closure, via a nonzero resultant
  bool no_rational_common_zero = false;  // via rational roots of the family gcd
  IrreducibilityVerdict top_part_irreducible = IrreducibilityVerdict::inconclusive;
};
LeadingFamily leading_family(const ConicPencil& pencil);
void require_leading_properties(const LeadingFamily& lf);

struct FamilyImage {
  std::size_t rank = 0;
  int form_degree = 0;   // degree after removing the common factor
  int fiber_size = 0;    // generic fiber of t -> family(t)
  int image_degree = 0;  // form_degree / fiber_size
  bool double_cover = false;
};
/// Shape of the image of P^1 under a family of binary forms. PreconditionError unless rank in {2, 3}.
FamilyImage family_image(const std::vector<MultiPoly>& family);

/// Rational zeros [t1 : t2] of a binary form, primitive with first nonzero entry positive.
std::vector<std::pair<Integer, Integer>> rational_roots_binary(const MultiPoly& g);

/// Lower bound H(family(t)) >= c * H(t)^k for primitive t, from two Sylvester identities.
struct CensusCutoff {
  bool certified = false;
  Rational c = 0;
  int k = 0;
  Integer t_max = 0;
};
CensusCutoff census_cutoff(const std::vector<MultiPoly>& family, const Integer& B);

struct CensusResult {
  Integer B = 0;
  std::size_t count = 0;
  CensusCutoff cutoff;
  bool complete = false;  // false when the cutoff is not certified and the hard cap was used
  std::vector<std::pair<std::pair<Integer, Integer>, Integer>> samples;  // (t, H(psi_t)) for the first few
};
/// #{[t1:t2] in P^1(Q) : H(psi_t) <= B}.
CensusResult conic_census(const ConicPencil& pencil, const Integer& B, long hard_cap = 2000);
CensusResult family_census(const std::vector<MultiPoly>& family, const Integer& B, long hard_cap = 2000);

/// Height of the primitive vector family(t).
Integer family_height(const std::vector<MultiPoly>& family, const Integer& t1, const Integer& t2);

struct HeightPairingReport {
  std::size_t samples = 0;
  double max_residual = 0;  // max |h(psi_t) - 2 h(t)|
  double slope = 0;         // least-squares slope of the residual against h(t)
  double intercept = 0;
  double fitted_degree = 0; // slope of h(psi_t) against h(t)
  std::vector<double> h_t, h_psi;
};
HeightPairingReport height_pairing_check(const ConicPencil& pencil,
                                         const std::vector<std::pair<Integer, Integer>>& samples);

/// Primitive parameters with heights log-uniform in [1, max_height], deterministic in the seed.
std::vector<std::pair<Integer, Integer>> sample_parameters(std::size_t count, std::int64_t max_height,
                                                           std::uint64_t seed);

}  // namespace ccq
