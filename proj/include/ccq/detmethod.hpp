#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ccq/cayley.hpp"
#include "ccq/hilbert_samuel.hpp"
#include "ccq/matrix.hpp"
#include "ccq/multipoly.hpp"
#include "ccq/pointcount.hpp"

namespace ccq {

enum class EvalMode { projective, affine };

/// Monomials of degree D (projective) or at most D (affine) in descending grlex order.
std::vector<Exponents> monomial_basis(int nvars, int D, EvalMode mode);

struct EvaluationMatrix {
  QMatrix m;                      // rows = points, columns = monomials
  std::vector<Exponents> columns;
  EvalMode mode = EvalMode::projective;
};
EvaluationMatrix evaluation_matrix(const std::vector<QVector>& points, int nvars, int D, EvalMode mode);

/// Exact right kernel; every basis vector is checked against the matrix.
std::vector<QVector> exact_kernel(const QMatrix& m);

/// A hypersurface in its linear span: a plane curve V(g) in P^2, a curve V(l, q) in P^3,
/// a surface V(f) in P^3, or an affine hypersurface V(g) in A^n.
struct DetVariety {
  enum class Kind { plane_curve, curve_in_plane, surface, affine_hypersurface };
  Kind kind = Kind::plane_curve;
  MultiPoly form;
  MultiPoly plane;  // curve_in_plane only

  static DetVariety plane_curve(const MultiPoly& g);
  static DetVariety curve_in_plane(const MultiPoly& q, const MultiPoly& l);
  static DetVariety surface(const MultiPoly& f);
  static DetVariety affine(const MultiPoly& g);

  int nvars() const { return form.nvars(); }
  int degree() const { return form.total_degree(); }
  int dimension() const;
};

struct AuxiliaryForm {
  int D = 0;
  MultiPoly form;
  bool vanishes_on_points = false;  // exact evaluation at every input point
  bool not_containing = false;      // exact non-divisibility
  std::size_t points = 0;
  std::size_t columns = 0;          // monomials not divisible by the leading monomial of X
  std::size_t kernel_dim = 0;
};

/// A degree-D form through every point that does not contain X, or none when every such form
/// contains X. Works in the monomials that are standard modulo the defining form, which is the
/// same search space as the full kernel modulo multiples of X.
std::optional<AuxiliaryForm> auxiliary_form(const DetVariety& X, const std::vector<QVector>& points, int D);

/// Points of S(X; B) as exact vectors: primitive points of height <= B (projective) or integral
/// points of max-norm <= B (affine).
std::vector<QVector> variety_points(const DetVariety& X, long B, const CountOptions& opt = {});

struct OmegaOptions {
  int max_degree = 400;
  std::uint64_t cell_budget = 4'000'000;  // points * monomials per evaluation matrix
  CountOptions count;
  std::optional<ExternalConstants> constants;
};

struct OmegaReport {
  long B = 0;
  std::size_t points = 0;
  int omega = 0;
  AuxiliaryForm aux;
  BoundKind bound_kind = BoundKind::ProjectiveCurve;
  double bound_exponent = 0;
  std::string bound_formula;
  std::optional<double> bound_value;  // only with user constants
  std::optional<bool> within_bound;
};

/// Least D for which auxiliary_form succeeds, scanning D = 1, 2, ... Degrees whose standard
/// evaluation matrix has full column rank mod a large prime are skipped without the exact kernel.
/// Throws BudgetError carrying the last D tried.
OmegaReport minimal_omega(const DetVariety& X, long B, const OmegaOptions& opt = {});
/// Same, on a given point set.
OmegaReport minimal_omega(const DetVariety& X, const std::vector<QVector>& points, long B,
                          const OmegaOptions& opt = {});

struct TranslationResult {
  std::array<long, 3> a{0, 0, 0};
  int delta = 0;
  std::size_t tried = 0;
  PluckerForm psi;             // Cayley form of the translated curve
  PluckerForm constant_part;   // degree 0 part in p01, p02, p03
};

/// Integer a with max |a_i| <= box such that the translate of V(l, q) has a nonzero constant
/// part; a = 0 when the curve already has one. The box defaults to the curve degree. Throws
/// PreconditionError when the top part vanishes and PropertyViolation when the box is exhausted.
TranslationResult translation_search(const MultiPoly& q, const MultiPoly& l, std::optional<int> box = {});
/// Affine input in x1, x2, x3, homogenised with T0.
TranslationResult translation_search_affine(const MultiPoly& q, const MultiPoly& l, std::optional<int> box = {});

}  // namespace ccq
