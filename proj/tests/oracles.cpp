#include "oracles.hpp"

#include <complex>

namespace oracle {

using namespace equistrat;
using C = std::complex<double>;

std::string spec_path(const std::string& name) { return std::string(EQUISTRAT_SPEC_DIR) + "/" + name + ".spec"; }

Problem load_example(const std::string& name) { return build_problem(load_spec(spec_path(name))); }

int brute_force_subgroup_count(const GroupTable& g) {
  const int n = g.order();
  int count = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1u)) continue;
    bool closed = true;
    for (int a = 0; a < n && closed; ++a) {
      if (!(mask >> a & 1u)) continue;
      for (int b = 0; b < n && closed; ++b)
        if ((mask >> b & 1u) && !(mask >> g.mult(a, b) & 1u)) closed = false;
    }
    count += closed ? 1 : 0;
  }
  return count;
}

int constraint_equivariant_dimension(const Representation& v, const Representation& w, int degree) {
  const int m = w.dim();
  const int n_mon = MonomialBasis(v.dim(), degree).size();
  const int unknowns = m * n_mon;
  const auto& gens = v.table().generators();
  Matrix system(static_cast<Eigen::Index>(gens.size()) * unknowns, unknowns);
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const Matrix t = substitution_matrix(v(gens[gi]), degree);
    const Matrix& rw = w(gens[gi]);
    for (int u = 0; u < unknowns; ++u) {
      Matrix c = Matrix::Zero(m, n_mon);
      c(u % m, u / m) = 1.0;
      const Matrix r = c * t - rw * c;
      for (int col = 0; col < n_mon; ++col)
        for (int row = 0; row < m; ++row)
          system(static_cast<Eigen::Index>(gi) * unknowns + col * m + row, u) = r(row, col);
    }
  }
  Eigen::JacobiSVD<Matrix> svd(system);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-8) ++rank;
  return unknowns - rank;
}

int kernel_fix_dimension(const Representation& v, const Subgroup& s) {
  const int n = v.dim();
  Matrix stack(static_cast<Eigen::Index>(s.order()) * n, n);
  for (int i = 0; i < s.order(); ++i) stack.block(i * n, 0, n, n) = v(s.elements[i]) - Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(stack);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-8) ++rank;
  return n - rank;
}

namespace {

std::vector<C> to_complex(const Vector& x) {
  std::vector<C> z(x.size() / 2);
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = C(x(2 * j), x(2 * j + 1));
  return z;
}

Vector to_real(std::initializer_list<C> w) {
  Vector out(2 * static_cast<Eigen::Index>(w.size()));
  int i = 0;
  for (const C& c : w) {
    out(i++) = c.real();
    out(i++) = c.imag();
  }
  return out;
}

C cj(C z) { return std::conj(z); }

}  // namespace

std::vector<MapFn> d6_quadratic_generators() {
  return {
      [](const Vector& x) { auto z = to_complex(x); return to_real({z[0] * z[0]}); },
      [](const Vector& x) { auto z = to_complex(x); return to_real({z[0] * z[1]}); },
      [](const Vector& x) { auto z = to_complex(x); return to_real({z[1] * z[1]}); },
  };
}

std::vector<MapFn> fgroup_cubic_generators() {
  // z1, z2 in V1; z3, z4 in V2; output in V3
  auto gen = [](auto fn) {
    return MapFn([fn](const Vector& x) {
      const auto z = to_complex(x);
      const auto [a, b] = fn(z[0], z[1], z[2], z[3]);
      return to_real({a, b});
    });
  };
  using P = std::pair<C, C>;
  return {
      gen([](C, C, C z3, C z4) { return P{z4 * z4 * z4, cj(z3) * cj(z3) * cj(z3)}; }),
      gen([](C, C, C z3, C z4) { return P{cj(z3) * cj(z4) * cj(z4), z3 * z3 * cj(z4)}; }),
      gen([](C z1, C z2, C z3, C z4) { return P{cj(z2) * z3 * cj(z4), z1 * z3 * z4}; }),
      gen([](C z1, C z2, C z3, C z4) { return P{z2 * z2 * z3, cj(z1) * cj(z1) * z4}; }),
      gen([](C z1, C z2, C z3, C z4) { return P{cj(z1) * z3 * z4, cj(z2) * cj(z3) * z4}; }),
      gen([](C z1, C z2, C z3, C z4) { return P{cj(z1) * z2 * cj(z3), cj(z1) * cj(z2) * cj(z4)}; }),
      gen([](C z1, C z2, C z3, C z4) { return P{z1 * cj(z3) * cj(z3), z2 * cj(z4) * cj(z4)}; }),
      gen([](C z1, C z2, C z3, C z4) { return P{z1 * cj(z2) * z4, z1 * z2 * cj(z3)}; }),
      gen([](C z1, C z2, C, C) { return P{z1 * z1 * z2, cj(z1) * z2 * z2}; }),
  };
}

std::vector<MapFn> fgroup_reduced_generators() {
  // (z1, z2) and (z3, z4) the two copies of V3; output in V2
  auto gen = [](auto fn) {
    return MapFn([fn](const Vector& x) {
      const auto z = to_complex(x);
      const auto [a, b] = fn(z[0], z[1], z[2], z[3]);
      return to_real({a, b});
    });
  };
  using P = std::pair<C, C>;
  return {
      gen([](C, C, C z3, C z4) { return P{z3 * z3 * cj(z4), z3 * z4 * z4}; }),
      gen([](C z1, C z2, C z3, C z4) { return P{cj(z2) * z3 * z3, z1 * z4 * z4}; }),
      gen([](C z1, C z2, C z3, C z4) { return P{z1 * z3 * cj(z4), z2 * z3 * z4}; }),
      gen([](C z1, C z2, C z3, C z4) { return P{z1 * cj(z2) * z3, z1 * z2 * z4}; }),
      gen([](C z1, C z2, C z3, C z4) { return P{z1 * z1 * cj(z4), z2 * z2 * z3}; }),
      gen([](C z1, C z2, C, C) { return P{z1 * z1 * cj(z2), z1 * z2 * z2}; }),
  };
}

double equivariance_residual(const MapFn& f, const Representation& v, const Representation& w, int points) {
  Rng rng = make_rng(7, {0xE0u});
  double worst = 0.0;
  for (int p = 0; p < points; ++p) {
    const Vector x = random_unit_vector(rng, v.dim());
    const Vector fx = f(x);
    for (int g = 0; g < v.table().order(); ++g)
      worst = std::max(worst, (f(v(g) * x) - w(g) * fx).cwiseAbs().maxCoeff());
  }
  return worst;
}

BasisFit fit_basis(const std::vector<HomogeneousMap>& ours, const std::vector<MapFn>& theirs, int in_dim,
                   int points) {
  BasisFit fit;
  if (ours.empty() || theirs.empty()) return fit;
  Rng rng = make_rng(11, {0xF1u});
  const int m = ours.front().out_dim();
  Matrix a(static_cast<Eigen::Index>(points) * m, static_cast<Eigen::Index>(ours.size()));
  Matrix b(static_cast<Eigen::Index>(points) * m, static_cast<Eigen::Index>(theirs.size()));
  for (int p = 0; p < points; ++p) {
    const Vector x = random_gaussian(rng, in_dim, 1).col(0);
    for (std::size_t k = 0; k < ours.size(); ++k) a.block(p * m, static_cast<Eigen::Index>(k), m, 1) = ours[k].evaluate(x);
    for (std::size_t j = 0; j < theirs.size(); ++j) b.block(p * m, static_cast<Eigen::Index>(j), m, 1) = theirs[j](x);
  }
  fit.rank_ours = numerical_rank(a);
  fit.rank_theirs = numerical_rank(b);
  Matrix joint(a.rows(), a.cols() + b.cols());
  joint << a, b;
  fit.rank_joint = numerical_rank(joint);
  fit.change = a.colPivHouseholderQr().solve(b);
  fit.residual = (a * fit.change - b).cwiseAbs().maxCoeff();
  return fit;
}

Vector d6_kappa_form(const Vector& y, const Vector& t) {
  Vector out(1);
  out << t(0) * y(0) * y(0) + t(1) * y(0) * y(1) + t(2) * y(1) * y(1);
  return out;
}

Matrix d6_kappa_jacobian(const Vector& y, const Vector& t) {
  Matrix j(1, 2);
  j << 2 * t(0) * y(0) + t(1) * y(1), t(1) * y(0) + 2 * t(2) * y(1);
  return j;
}

Vector fgroup_sigma1_form(const Vector& y, const Vector& t) {
  const double x1 = y(0), x3 = y(1);
  Vector out(1);
  out << (t(0) + t(1)) * x3 * x3 * x3 + (t(2) + t(4) + t(6)) * x1 * x3 * x3 + (t(3) + t(5) + t(7)) * x1 * x1 * x3 +
             t(8) * x1 * x1 * x1;
  return out;
}

Vector fgroup_sigma2_form(const Vector& y, const Vector& t) {
  const double x1 = y(0), x3 = y(1);
  Vector out(1);
  out << (-t(0) + t(1)) * x3 * x3 * x3 + (t(2) - t(4) + t(6)) * x1 * x3 * x3 + (t(3) - t(5) + t(7)) * x1 * x1 * x3 -
             t(8) * x1 * x1 * x1;
  return out;
}

// Obtained by substituting z = i y into the cubic list; the printed version
// carries the opposite sign on the second entries of the t2 and t4 terms.
Vector fgroup_sigma3_form(const Vector& y, const Vector& t) {
  const double y1 = y(0), y2 = y(1), y3 = y(2), y4 = y(3);
  Vector out(2);
  out(0) = -t(0) * y4 * y4 * y4 + t(1) * y3 * y4 * y4 - t(2) * y2 * y3 * y4 - t(3) * y2 * y2 * y3 +
           t(4) * y1 * y3 * y4 - t(5) * y1 * y2 * y3 - t(6) * y1 * y3 * y3 + t(7) * y1 * y2 * y4 -
           t(8) * y1 * y1 * y2;
  out(1) = t(0) * y3 * y3 * y3 + t(1) * y3 * y3 * y4 - t(2) * y1 * y3 * y4 - t(3) * y1 * y1 * y4 -
           t(4) * y2 * y3 * y4 + t(5) * y1 * y2 * y4 - t(6) * y2 * y4 * y4 + t(7) * y1 * y2 * y3 +
           t(8) * y1 * y2 * y2;
  return out;
}

namespace {

Matrix unit_columns(int rows, std::initializer_list<std::initializer_list<double>> cols) {
  Matrix m(rows, static_cast<Eigen::Index>(cols.size()));
  int c = 0;
  for (const auto& col : cols) {
    int r = 0;
    for (double x : col) m(r++, c) = x;
    ++c;
  }
  return m;
}

}  // namespace

FixCoords d6_kappa_coords(const GroupTable& g) {
  return {closure(g, {g.generators()[0]}), unit_columns(4, {{1, 0, 0, 0}, {0, 0, 1, 0}}), unit_columns(2, {{1, 0}})};
}

FixCoords fgroup_coords(const GroupTable& g, int which) {
  const int b = g.generators()[1], m = g.generators()[2];
  switch (which) {
    case 1:
      return {closure(g, {b}), unit_columns(8, {{1, 0, 1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 1, 0}}),
              unit_columns(4, {{1, 0, 1, 0}})};
    case 2:
      return {closure(g, {g.mult(b, m)}), unit_columns(8, {{1, 0, -1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0, -1, 0}}),
              unit_columns(4, {{1, 0, -1, 0}})};
    default: {
      Matrix cv = Matrix::Zero(8, 4);
      for (int j = 0; j < 4; ++j) cv(2 * j + 1, j) = 1.0;
      return {closure(g, {g.mult(g.mult(b, b), m)}), cv, unit_columns(4, {{0, 1, 0, 0}, {0, 0, 0, 1}})};
    }
  }
}

double form_residual(const BasisFit& fit, const RestrictedFamily& fam, const FormFn& expected, int nt) {
  Rng rng = make_rng(21);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const Vector t = random_gaussian(rng, nt, 1).col(0);
    const HomogeneousMap q = fam.combine(fit.change * t);
    for (int p = 0; p < 5; ++p) {
      const Vector y = random_gaussian(rng, q.nvars(), 1).col(0);
      const Vector want = expected(y, t);
      worst = std::max(worst, (q.evaluate(y) - want).norm() / std::max(1.0, want.norm()));
    }
  }
  return worst;
}

double jacobian_residual(const BasisFit& fit, const RestrictedFamily& fam, const JacFn& expected, int nt) {
  Rng rng = make_rng(22);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const Vector t = random_gaussian(rng, nt, 1).col(0);
    const HomogeneousMap q = fam.combine(fit.change * t);
    for (int p = 0; p < 5; ++p) {
      const Vector y = random_gaussian(rng, q.nvars(), 1).col(0);
      const Matrix want = expected(y, t);
      worst = std::max(worst, (q.jacobian(y) - want).norm() / std::max(1.0, want.norm()));
    }
  }
  return worst;
}

double finite_difference_gap(const HomogeneousMap& f, const Vector& x, double h) {
  const Matrix j = f.jacobian(x);
  double worst = 0.0;
  for (int c = 0; c < x.size(); ++c) {
    Vector e = Vector::Zero(x.size());
    e(c) = h;
    const Vector fd = (f.evaluate(x + e) - f.evaluate(x - e)) / (2 * h);
    worst = std::max(worst, (j.col(c) - fd).norm() / std::max(1.0, j.col(c).norm()));
  }
  return worst;
}

}  // namespace oracle
