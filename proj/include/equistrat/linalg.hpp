#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace equistrat {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Numerical rank by singular values above `rel_tol * sigma_max`; 0 when
/// sigma_max < 1e-13.
int numerical_rank(const Matrix& m, double rel_tol = 1e-8);

/// Orthonormal basis (columns) for the column space of `m`.
Matrix column_space(const Matrix& m, double rel_tol = 1e-8);

/// Orthonormal basis of the orthogonal complement of span(`basis`) in R^n.
Matrix orthogonal_complement(const Matrix& basis, int n);

/// Largest |m_ij|.
double max_abs(const Matrix& m);

bool is_orthogonal(const Matrix& m, double tol);

/// True when every column of `sub` lies in span(`space`), `space` orthonormal.
bool subspace_contained(const Matrix& sub, const Matrix& space, double tol);

/// Generator for an independent stream derived from a base seed and stream ids.
Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {});

/// Standard Gaussian matrix from `rng`.
Matrix random_gaussian(Rng& rng, int rows, int cols);

/// Uniform point on the unit sphere S^{n-1}.
Vector random_unit_vector(Rng& rng, int n);

/// Reduced row echelon form of the rows of `m` (rank-deficient rows dropped).
/// Pivots are chosen left to right; entries below `tol` relative to the
/// largest entry are treated as zero.
Matrix reduced_row_echelon(const Matrix& m, double tol = 1e-9);

/// Tiny entries (|x| < tol) snapped to zero, and near-integers snapped
/// to the integer; keeps printed coefficients readable.
Matrix snap(const Matrix& m, double tol = 1e-12);

}  // namespace equistrat
