#pragma once

#include <array>
#include <string>
#include <vector>

#include "ccq/multipoly.hpp"
#include "ccq/numeric.hpp"

namespace ccq {

/// Plücker variables p01, p02, p03, p12, p13, p23 occupy slots 0..5 of a PluckerForm; any
/// further slots are parameters (for example the pencil parameters t1, t2).
using PluckerForm = MultiPoly;

enum PluckerVar { P01 = 0, P02 = 1, P03 = 2, P12 = 3, P13 = 4, P23 = 5 };

/// Slot of p_ij for i != j (order-insensitive) and the sign of p_ij relative to it.
int plucker_index(int i, int j);
int plucker_sign(int i, int j);

std::vector<std::string> plucker_names(const std::vector<std::string>& extra = {});

using PluckerCoords = std::array<Integer, 6>;

/// Line V(u, v) in P^3 given by two hyperplanes.
struct LineP3 {
  std::array<Rational, 4> u;
  std::array<Rational, 4> v;
  PluckerCoords plucker;  // primitive, first nonzero entry positive

  static LineP3 from_forms(const std::array<Rational, 4>& u, const std::array<Rational, 4>& v);
  static LineP3 from_forms(const MultiPoly& u, const MultiPoly& v);
  /// The line through two distinct points.
  static LineP3 through_points(const std::array<Rational, 4>& a, const std::array<Rational, 4>& b);
};

/// p_ij = u_i v_j - u_j v_i, made primitive with first nonzero entry positive.
PluckerCoords plucker_of_line(const std::array<Rational, 4>& u, const std::array<Rational, 4>& v);

/// G = p01 p23 - p02 p13 + p03 p12 in `nvars` >= 6 variables.
MultiPoly grassmann_relation(int nvars = 6);

/// Linear form vanishing exactly at the Plücker coordinates of lines meeting L.
PluckerForm incidence_form(const LineP3& line, int nvars = 6);

/// Normal form modulo G (no monomial divisible by p01 p23).
PluckerForm reduce_mod_grassmann(const PluckerForm& f);
/// Normal form modulo G, then primitive with positive leading coefficient.
PluckerForm canonical_plucker(const PluckerForm& f);
bool is_grassmann_canonical(const PluckerForm& f);

Rational evaluate_plucker(const PluckerForm& f, const PluckerCoords& p);

/// Cayley form of a hypersurface V(f) in P^n: f((-1)^i w_i) where w_i is the wedge of all
/// coordinate slots but the i-th. Primitive and sign-normalised. Variables are w0..wn.
MultiPoly cayley_hypersurface(const MultiPoly& f);

/// b(u, v) = Q(l ^ u ^ v): Q evaluated at the intersection point of the planes l, u, v.
/// Q and l live in 4 + e variables (e parameters); the result lives in 8 + e variables.
BiForm plane_section_biform(const MultiPoly& q, const MultiPoly& l);

/// Plücker polynomial P with P(p(u, v)) == b(u, v), written in canonical monomials mod G.
/// Throws PreconditionError when no such P exists (b not invariant under change of frame).
PluckerForm rewrite_biform_to_plucker(const BiForm& b, bool normalize = true);

/// Checks b(a u + c v, b u + d v) == (ad - bc)^k b(u, v) with symbolic a, b, c, d.
bool is_frame_invariant(const BiForm& b);

/// Cayley form of the plane curve V(l, Q) in P^3, canonical mod G and primitive.
PluckerForm cayley_plane_curve(const MultiPoly& q, const MultiPoly& l);
/// Same form by substituting the intersection point written linearly in p_ij.
PluckerForm cayley_plane_curve_direct(const MultiPoly& q, const MultiPoly& l);
/// Same form from the symbolic Macaulay resultant Res(l, u, v, Q).
PluckerForm cayley_plane_curve_macaulay(const MultiPoly& q, const MultiPoly& l);

/// sum_i H^i psi_i where psi_i collects monomials of degree i in p03, p13, p23.
PluckerForm transform_FH(const PluckerForm& psi, const Rational& h);
/// Curve image under x3 -> H x3: defining forms f(T0, T1, T2, T3 / H), made primitive.
MultiPoly transform_FH_form(const MultiPoly& f, const Rational& h);

/// Translation T_a: f(y0, y1 - a1 y0, y2 - a2 y0, y3 - a3 y0) on forms in 4 + e variables.
MultiPoly transform_Ta_form(const MultiPoly& f, const std::array<Rational, 3>& a);
/// Induced action on Plücker variables: p0j -> p0j + sum_i a_i p_ij.
PluckerForm transform_Ta_plucker(const PluckerForm& psi, const std::array<Rational, 3>& a);

enum class Grading { S0, S3 };
std::vector<int> grading_vars(Grading g);

/// Parts psi_0..psi_delta by degree in the selected Plücker variables.
std::vector<PluckerForm> cayley_degree_parts(const PluckerForm& psi, Grading g);

struct TopPartCheck {
  bool equal = false;  // top parts agree up to the sign fixed by normalisation
  Rational ratio = 0;  // top(psi') = ratio * top(psi), 0 when not proportional
};
TopPartCheck top_part_check(const PluckerForm& psi, const PluckerForm& psi_prime, int delta);

}  // namespace ccq
