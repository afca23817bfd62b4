#pragma once

#include <vector>

#include "ccq/multipoly.hpp"
#include "ccq/numeric.hpp"

namespace ccq {

/// Height H (exact) and its logarithm h.
struct HeightValue {
  Rational H;
  double h = 0;

  static HeightValue of(const Rational& value);
};

/// Projective point with primitive integer coordinates, first nonzero coordinate positive.
class ProjPoint {
 public:
  /// Normalises arbitrary nonzero rational coordinates.
  static ProjPoint from_rationals(const std::vector<Rational>& coords);
  static ProjPoint from_integers(const std::vector<Integer>& coords);

  const std::vector<Integer>& coords() const { return coords_; }
  const Integer& height() const { return height_; }
  bool operator==(const ProjPoint& o) const { return coords_ == o.coords_; }
  bool operator<(const ProjPoint& o) const { return coords_ < o.coords_; }

 private:
  std::vector<Integer> coords_;
  Integer height_;
};

template <class T>
struct Normalized {
  T value;
  Rational scalar;  // input == scalar * value
};

/// Primitive integral representative with first nonzero entry positive.
Normalized<std::vector<Integer>> normalize_primitive(const std::vector<Rational>& coords);
/// Primitive integral polynomial with positive leading coefficient.
Normalized<MultiPoly> normalize_primitive(const MultiPoly& f);

HeightValue point_height(const ProjPoint& p);
/// Height of a projective point given by arbitrary rational coordinates, computed as the
/// product over all places of max_i |x_i|_v (no normalisation step).
HeightValue height_by_places(const std::vector<Rational>& coords);

/// Naive height of a hypersurface: the height of its coefficient vector.
HeightValue poly_height(const MultiPoly& f);

/// Archimedean-only height max |x_i| (no normalisation).
HeightValue affine_height(const std::vector<Rational>& coords);
HeightValue affine_height(const MultiPoly& f);

/// p-adic absolute value |x|_p as an exact rational.
Rational padic_abs(const Rational& x, const Integer& p);
/// Checks |x|_inf * prod_p |x|_p == 1 exactly.
bool product_formula_check(const Rational& x);

struct HeightComparisonAudit {
  int n = 0, d = 0, delta = 0;
  long long N = 0;               // C(n+1, d+1) - 1
  Rational harmonic;             // 1 + 1/2 + ... + 1/N
  double h_psi = 0;              // log height of the Cayley form
  double lower_offset = 0;       // lower bound for h(psi) - h_arakelov(X)
  double upper_offset = 0;       // upper bound for h(psi) - h_arakelov(X)
  double window_width = 0;
  bool h_psi_nonnegative = false;
};
/// Computable side of the comparison between the height of a Cayley form and the Arakelov
/// height of the variety (the latter is not computed).
HeightComparisonAudit height_comparison_audit(const MultiPoly& psi, int n, int d, int delta);

Rational harmonic_number(long long n);

}  // namespace ccq
