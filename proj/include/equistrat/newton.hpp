#pragma once

#include "equistrat/linalg.hpp"
#include "equistrat/polynomial.hpp"

#include <functional>
#include <vector>

namespace equistrat {

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 200;
  double min_step = 1.0 / 1024.0;
};

struct NewtonResult {
  Vector x;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

using VectorFn = std::function<Vector(const Vector&)>;
using MatrixFn = std::function<Matrix(const Vector&)>;

/// Damped Newton with least-norm steps (pseudo-inverse of the Jacobian),
/// so over- and under-determined systems are both accepted. Backtracks on
/// the residual norm; `project` (optional) is applied after every step.
NewtonResult damped_newton(const VectorFn& f, const MatrixFn& jac, Vector x0, const NewtonOptions& opts = {},
                           const std::function<Vector(const Vector&)>& project = nullptr);

/// Roots of a homogeneous map on the unit sphere of its domain, from
/// `starts` random starting points. Duplicates (distance < dedup) merged.
std::vector<Vector> sphere_roots(const HomogeneousMap& q, int starts, Rng& rng, const NewtonOptions& opts = {},
                                 double dedup = 1e-6);

/// True when the Jacobian of `q` at x has full row rank with smallest
/// singular value above rel_tol times the coefficient scale.
bool is_regular_point(const HomogeneousMap& q, const Vector& x, double rel_tol = 1e-3);

}  // namespace equistrat
