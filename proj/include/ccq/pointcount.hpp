#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccq/multipoly.hpp"
#include "ccq/numeric.hpp"

namespace ccq {

enum class CountMode { projective, affine };
enum class AffineNorm { max, euclidean };

using IntPoint = std::vector<std::int64_t>;

struct CountOptions {
  bool keep_points = true;
  unsigned threads = 1;
  std::uint64_t budget = 2'000'000'000ULL;  // enumerated tuples
};

struct CountResult {
  std::size_t count = 0;
  std::vector<IntPoint> points;  // lexicographic order
  double seconds = 0;
  bool complete = true;
};

/// Primitive integer points with max |x_i| <= B on V(forms) in P^n (n <= 3), one per sign class
/// (first nonzero coordinate positive). Linear forms are eliminated first; the last remaining
/// coordinate is solved exactly from the first nonlinear form.
CountResult enumerate_projective(const std::vector<MultiPoly>& forms, int nvars, long B, const CountOptions& opt = {});

/// Integer points on V(polys) in A^n (n <= 3) with max |x_i| <= B, or sum x_i^2 <= B^2 for the
/// euclidean norm.
CountResult enumerate_affine(const std::vector<MultiPoly>& polys, int nvars, long B, const CountOptions& opt = {},
                             AffineNorm norm = AffineNorm::max);

/// Integer roots in [lo, hi] of c[0] + c[1] X + ... (degree <= 3 exact; larger degrees by scan).
/// All of [lo, hi] when every coefficient vanishes.
std::vector<std::int64_t> integer_roots(const std::vector<__int128>& c, std::int64_t lo, std::int64_t hi);

struct ConicCount {
  CountResult brute;
  std::optional<CountResult> accelerated;
  bool accelerated_used = false;
  bool paths_agree = true;
  std::string fallback_reason;
  std::optional<IntPoint> base_point;
};

/// Points of height <= B on the plane conic V(l, Q) in P^3. The accelerated path parameterises
/// the conic from a base point of height <= base_bound and enumerates parameters up to a
/// certified cutoff; it falls back to brute force when no base point is found or the conic is
/// singular. With `run_brute` both paths run and are compared.
ConicCount conic_points(const MultiPoly& q, const MultiPoly& l, long B, bool run_brute = true, long base_bound = 30,
                        const CountOptions& opt = {});

/// delta * (2B + 1)^d
double trivial_affine_bound(int delta, int d, long B);

struct ExponentFit {
  double exponent = 0;
  double intercept = 0;
  std::vector<double> residuals;
  std::size_t points_used = 0;  // B values with N > 0
};
/// Least squares of log N against log B over the entries with N > 0.
ExponentFit fit_exponent(const std::vector<long>& B, const std::vector<double>& N);

struct ExperimentRow {
  long B = 0;
  std::size_t total = 0;     // all points of bounded height
  std::size_t off_lines = 0; // points not on any found line
  double seconds = 0;
};

struct ExperimentReport {
  std::string kind;
  std::vector<ExperimentRow> rows;
  ExponentFit fit;
  double overlay_exponent = 0;
  std::size_t lines_used = 0;
  std::string proxy_note;
};

/// Off-line rational points of bounded height on a non-ruled cubic surface with a rational line.
/// Throws PreconditionError when the surface is not certified non-ruled or no line is found.
ExperimentReport points_on_conics_experiment(const MultiPoly& f, const std::vector<long>& B_list,
                                             long line_bound = 1, const CountOptions& opt = {});

/// Off-line integral points of max-norm <= B on an affine cubic surface g(x1, x2, x3) = 0.
/// Throws PreconditionError unless g is not cylindrical and its degree-3 part is certified
/// absolutely irreducible.
ExperimentReport integral_conics_experiment(const MultiPoly& g, const std::vector<long>& B_list,
                                            long line_bound = 1, const CountOptions& opt = {});

/// The exponents 3 sqrt(3)/8 + 1 and sqrt(3)/4 + 1/2.
double rational_conics_exponent();
double integral_conics_exponent();

}  // namespace ccq
