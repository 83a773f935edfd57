#pragma once

#include "equistrat/equivariants.hpp"
#include "equistrat/problem.hpp"

#include <functional>
#include <string>
#include <vector>

namespace oracle {

using equistrat::Matrix;
using equistrat::Vector;
using MapFn = std::function<Vector(const Vector&)>;

std::string spec_path(const std::string& name);
equistrat::Problem load_example(const std::string& name);

/// Subgroups by testing every subset for closure; only for |G| <= 16.
int brute_force_subgroup_count(const equistrat::GroupTable& g);

/// dim ker of C |-> C T_g - rho_W(g) C over the generators, with T_g the
/// monomial substitution matrix. Independent of averaging and characters.
int constraint_equivariant_dimension(const equistrat::Representation& v, const equistrat::Representation& w,
                                     int degree);

/// dim of the common kernel of rho(g) - I over the subgroup.
int kernel_fix_dimension(const equistrat::Representation& v, const equistrat::Subgroup& s);

/// Published generator lists written in complex coordinates, as real maps
/// on (Re z1, Im z1, Re z2, Im z2, ...).
std::vector<MapFn> d6_quadratic_generators();
std::vector<MapFn> fgroup_cubic_generators();    // V1 x V2 -> V3, nine maps
std::vector<MapFn> fgroup_reduced_generators();  // V3^2 -> V2, six maps

/// max |F(rho_V(g) x) - rho_W(g) F(x)| over random x and all elements.
double equivariance_residual(const MapFn& f, const equistrat::Representation& v, const equistrat::Representation& w,
                             int points = 10);

struct BasisFit {
  int rank_ours = 0;
  int rank_theirs = 0;
  int rank_joint = 0;
  Matrix change;  // theirs_j = sum_k change(k, j) ours_k
  double residual = 0.0;
};

/// Fits `theirs` in the span of `ours` from evaluations at random points.
BasisFit fit_basis(const std::vector<equistrat::HomogeneousMap>& ours, const std::vector<MapFn>& theirs, int in_dim,
                   int points = 60);

/// Displayed restricted forms, as functions of fixed-point coordinates y
/// and published coefficients t.
using FormFn = std::function<Vector(const Vector& y, const Vector& t)>;
using JacFn = std::function<Matrix(const Vector& y, const Vector& t)>;

Vector d6_kappa_form(const Vector& y, const Vector& t);
Matrix d6_kappa_jacobian(const Vector& y, const Vector& t);
Vector fgroup_sigma1_form(const Vector& y, const Vector& t);
Vector fgroup_sigma2_form(const Vector& y, const Vector& t);
Vector fgroup_sigma3_form(const Vector& y, const Vector& t);

/// A subgroup with explicit fixed-point coordinates in V and W.
struct FixCoords {
  equistrat::Subgroup subgroup;
  Matrix coords_V;
  Matrix coords_W;
};

FixCoords d6_kappa_coords(const equistrat::GroupTable& g);
/// which = 1: Z4(b), 2: Z4(bm), 3: Z2(b^2 m); V = two blocks, W = one block.
FixCoords fgroup_coords(const equistrat::GroupTable& g, int which);

/// Largest relative gap between our restricted family, recombined through
/// the fitted change of basis, and the displayed form; random y and t.
double form_residual(const BasisFit& fit, const equistrat::RestrictedFamily& fam, const FormFn& expected, int nt);
double jacobian_residual(const BasisFit& fit, const equistrat::RestrictedFamily& fam, const JacFn& expected, int nt);

/// Largest relative gap between the Jacobian and central differences.
double finite_difference_gap(const equistrat::HomogeneousMap& f, const Vector& x, double h = 1e-6);

}  // namespace oracle
