#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ccq/errors.hpp"
#include "ccq/numeric.hpp"

namespace ccq {

using Exponents = std::vector<int>;

int total_degree(const Exponents& e);

/// Graded lexicographic order, greatest first: higher total degree wins, then the
/// larger exponent of x0, then x1, ...
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse polynomial over Q in a fixed number of variables. Terms are kept in
/// descending graded-lex order and zero coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, const Rational& c);
  static MultiPoly variable(int nvars, int index, const Rational& c = 1);
  static MultiPoly monomial(Exponents e, const Rational& c = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  Rational coeff(const Exponents& e) const;
  void add_term(const Exponents& e, const Rational& c);

  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(int var) const;
  /// Total degree restricted to a subset of variables (max over terms).
  int degree_in(std::span<const int> vars) const;
  bool is_homogeneous() const;
  bool is_homogeneous_in(std::span<const int> vars) const;

  const Exponents& leading_exponents() const;
  const Rational& leading_coeff() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly pow(unsigned k) const;
  MultiPoly partial(int var) const;

  Rational evaluate(std::span<const Rational> point) const;
  Integer evaluate_integer(std::span<const Integer> point) const;  // requires integer coefficients

  /// Replace variable i by images[i]; all images share one target variable count.
  MultiPoly substitute(std::span<const MultiPoly> images) const;
  /// Specialise some variables to rational values, keeping the variable count.
  MultiPoly specialize(const std::vector<std::pair<int, Rational>>& values) const;
  /// Embed into a ring with more variables: variable i goes to slot map[i].
  MultiPoly remap(int new_nvars, std::span<const int> map) const;

  bool has_integer_coefficients() const;

 private:
  int nvars_;
  TermMap terms_;
};

/// Quotient of f by g; throws DivisionRemainderError when g does not divide f.
MultiPoly exact_divide(const MultiPoly& f, const MultiPoly& g);
/// Grlex multivariate division: f = q*g + r with no term of r divisible by LT(g).
std::pair<MultiPoly, MultiPoly> divide_with_remainder(const MultiPoly& f, const MultiPoly& g);
bool divides(const MultiPoly& g, const MultiPoly& f);

class DivisionRemainderError : public std::runtime_error {
 public:
  explicit DivisionRemainderError(MultiPoly remainder);
  const MultiPoly& remainder() const { return remainder_; }

 private:
  MultiPoly remainder_;
};

/// Sum of the terms whose total degree in `vars` is exactly `degree`.
MultiPoly homogeneous_component(const MultiPoly& f, std::span<const int> vars, int degree);

/// Content and primitive part.
///
/// With `coeff_vars` empty the content is the rational gcd of the coefficients. Otherwise the
/// listed variables form the coefficient ring Q[coeff_vars] (at most two of them) and the content
/// is the polynomial gcd of the coefficient polynomials, times its rational content. In both cases
/// the primitive part has integer coefficients with content 1 and a positive leading coefficient.
struct ContentSplit {
  MultiPoly content;    // same variable count as the input
  MultiPoly primitive;  // input == content * primitive
};
ContentSplit content_primitive(const MultiPoly& f, std::span<const int> coeff_vars = {});

/// Primitive integer representative with positive leading coefficient and the scalar
/// that was divided out (f == scalar * result).
std::pair<MultiPoly, Rational> primitive_normalize(const MultiPoly& f);

/// gcd in Q[x, y] of polynomials that only involve variables `vx`, `vy` (either may be -1 for a
/// univariate gcd). The result is primitive with positive leading coefficient; gcd(0, 0) = 0.
MultiPoly gcd_bivariate(const MultiPoly& a, const MultiPoly& b, int vx, int vy);

/// Smallest set of linear forms in which f can be written.
struct EssentialVariables {
  int count = 0;
  std::vector<std::vector<Rational>> basis;  // each row: coefficients of a linear form
};
EssentialVariables essential_variable_count(const MultiPoly& f);

/// Sylvester resultant of two binary forms in (x0, x1), normalised so that
/// Res(x0^a, x1^b) = 1.
Rational sylvester_resultant(const MultiPoly& f, const MultiPoly& g);

/// Macaulay resultant of n+1 forms in the first n+1 variables. Variables beyond n+1 are
/// treated as symbolic coefficients; the result is a polynomial in those (all of the input's
/// variable slots are kept, the first n+1 simply never occur). Normalised so that
/// Res(x0^d0, ..., xn^dn) = 1.
struct MacaulayResult {
  MultiPoly value;
  int partition_shift = 0;  // cyclic variable shift used for the monomial partition
  bool used_symbolic_deformation = false;
};
/// `force_deformation` skips the plain partitions and goes straight to the deformation path.
MacaulayResult macaulay_resultant(std::span<const MultiPoly> forms, int n_main_vars,
                                  bool force_deformation = false);

/// Bihomogeneous form in u0..u3, v0..v3 (variables 0..7), optionally with further
/// coefficient variables after them.
class BiForm {
 public:
  BiForm(MultiPoly poly, int k);
  const MultiPoly& poly() const { return poly_; }
  int degree() const { return k_; }

 private:
  MultiPoly poly_;
  int k_;
};

/// Text format: terms in graded-lex order joined by " + " / " - ", each term
/// `coeff * x0^e0*x2^e2`. Variables named by `names` (default x0, x1, ...).
std::string to_text(const MultiPoly& f, const std::vector<std::string>& names = {});
MultiPoly parse_poly(const std::string& text, int nvars, const std::vector<std::string>& names = {});
/// Parses with automatic variable count: the largest index of x<i>/T<i> names seen plus one,
/// or at least `min_vars`.
MultiPoly parse_poly_auto(const std::string& text, int min_vars = 0);
std::vector<std::string> default_names(int nvars, const std::string& stem = "x");

}  // namespace ccq
