#include "equistrat/newton.hpp"

namespace equistrat {

NewtonResult damped_newton(const VectorFn& f, const MatrixFn& jac, Vector x0, const NewtonOptions& opts,
                           const std::function<Vector(const Vector&)>& project) {
  NewtonResult res;
  res.x = project ? project(x0) : x0;
  Vector fx = f(res.x);
  res.residual = fx.norm();
  for (res.iterations = 0; res.iterations < opts.max_iter; ++res.iterations) {
    if (res.residual < opts.tol) {
      res.converged = true;
      return res;
    }
    const Matrix j = jac(res.x);
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(j);
    cod.setThreshold(1e-12);
    const Vector dx = cod.solve(-fx);
    if (!dx.allFinite() || dx.norm() == 0.0) break;
    double alpha = 1.0;
    bool accepted = false;
    while (alpha >= opts.min_step) {
      Vector trial = res.x + alpha * dx;
      if (project) trial = project(trial);
      const Vector ft = f(trial);
      if (ft.norm() < res.residual) {
        res.x = std::move(trial);
        fx = ft;
        res.residual = fx.norm();
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
  }
  res.converged = res.residual < opts.tol;
  return res;
}

std::vector<Vector> sphere_roots(const HomogeneousMap& q, int starts, Rng& rng, const NewtonOptions& opts,
                                 double dedup) {
  const int n = q.nvars();
  const int m = q.out_dim();
  std::vector<Vector> roots;
  if (n == 0) return roots;
  auto f = [&](const Vector& x) {
    Vector out(m + 1);
    out.head(m) = q.evaluate(x);
    out(m) = 0.5 * (x.squaredNorm() - 1.0);
    return out;
  };
  auto jac = [&](const Vector& x) {
    Matrix j(m + 1, n);
    j.topRows(m) = q.jacobian(x);
    j.row(m) = x.transpose();
    return j;
  };
  auto project = [](const Vector& x) -> Vector {
    const double nx = x.norm();
    return nx > 0 ? Vector(x / nx) : x;
  };
  std::vector<Vector> initial;
  for (int s = 0; s < starts; ++s) initial.push_back(random_unit_vector(rng, n));
  for (const auto& x0 : initial) {
    const NewtonResult r = damped_newton(f, jac, x0, opts, project);
    if (!r.converged) continue;
    bool dup = false;
    for (const auto& y : roots)
      if ((y - r.x).norm() < dedup) dup = true;
    if (!dup) roots.push_back(r.x);
  }
  return roots;
}

bool is_regular_point(const HomogeneousMap& q, const Vector& x, double rel_tol) {
  const int m = q.out_dim();
  if (m == 0) return true;
  const Matrix j = q.jacobian(x);
  if (j.cols() < m) return false;
  Eigen::JacobiSVD<Matrix> svd(j);
  const double scale = std::max(1e-300, max_abs(q.coeffs));
  return svd.singularValues()(m - 1) > rel_tol * scale;
}

}  // namespace equistrat
