#include "equistrat/equivariants.hpp"

#include "equistrat/errors.hpp"
#include "equistrat/parallel.hpp"

#include <cmath>

namespace equistrat {

SymPowerCharacter sym_power_character(const Character& x, int degree) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "negative symmetric power");
  const GroupTable& g = *x.group;
  SymPowerCharacter out;
  out.degree = degree;
  out.character.group = x.group;
  out.character.values.resize(g.num_classes());
  for (int c = 0; c < g.num_classes(); ++c) {
    const int rep = g.conjugacy_classes()[c].front();
    std::vector<double> power_sums(degree + 1, 0.0);
    int gk = 0;
    for (int k = 1; k <= degree; ++k) {
      gk = g.mult(gk, rep);
      power_sums[k] = x.at_element(gk);
    }
    std::vector<double> h(degree + 1, 0.0);
    h[0] = 1.0;
    for (int d = 1; d <= degree; ++d) {
      double s = 0.0;
      for (int k = 1; k <= d; ++k) s += power_sums[k] * h[d - k];
      h[d] = s / d;
    }
    out.character.values[c] = h[degree];
  }
  return out;
}

int equivariant_dimension(const Representation& v, const Representation& w, int degree) {
  return char_inner(sym_power_character(character(v), degree).character, character(w));
}

Matrix reynolds_operator(const Representation& v, const Representation& w, int degree) {
  const int m = w.dim();
  const auto nb = MonomialBasis::get(v.dim(), degree);
  const int n_mon = nb->size();
  const Eigen::Index side = static_cast<Eigen::Index>(m) * n_mon;
  Matrix r = Matrix::Zero(side, side);
  const int order = v.table().order();
  for (int g = 0; g < order; ++g) {
    const Matrix t = substitution_matrix(v(g), degree);
    const Matrix& rw = w(g);
    // column (a, j) collects t(a, b) * rw(j, i) at row (b, i)
    parallel_for(static_cast<std::size_t>(n_mon), [&](std::size_t au) {
      const int a = static_cast<int>(au);
      for (int b = 0; b < n_mon; ++b) {
        const double tab = t(a, b);
        if (tab == 0.0) continue;
        for (int j = 0; j < m; ++j)
          for (int i = 0; i < m; ++i) r(static_cast<Eigen::Index>(b) * m + i, static_cast<Eigen::Index>(a) * m + j) += tab * rw(j, i);
      }
    });
  }
  return r / order;
}

namespace {

void check_budget(const Representation& v, const Representation& w, int degree, const DegreeBudget& budget) {
  if (degree > budget.max_degree)
    throw Error(ErrorCode::DegreeCapExceeded,
                "degree " + std::to_string(degree) + " exceeds budget " + std::to_string(budget.max_degree));
  const long long side = monomial_count(v.dim(), degree) * w.dim();
  if (side > budget.max_operator_size)
    throw Error(ErrorCode::DegreeCapExceeded, "averaging operator of side " + std::to_string(side) +
                                                  " exceeds budget " + std::to_string(budget.max_operator_size));
}

HomogeneousMap unflatten(const Vector& flat, const MonomialBasisPtr& nb, int m) {
  Matrix c(m, nb->size());
  for (int b = 0; b < nb->size(); ++b)
    for (int i = 0; i < m; ++i) c(i, b) = flat(static_cast<Eigen::Index>(b) * m + i);
  return HomogeneousMap(nb, c);
}

Vector flatten(const HomogeneousMap& f) {
  const int m = f.out_dim();
  Vector flat(static_cast<Eigen::Index>(m) * f.basis->size());
  for (int b = 0; b < f.basis->size(); ++b)
    for (int i = 0; i < m; ++i) flat(static_cast<Eigen::Index>(b) * m + i) = f.coeffs(i, b);
  return flat;
}

}  // namespace

EquivariantBasis equivariant_basis(const Representation& v, const Representation& w, int degree,
                                   const DegreeBudget& budget) {
  check_budget(v, w, degree, budget);
  EquivariantBasis out;
  out.degree = degree;
  out.in_dim = v.dim();
  out.out_dim = w.dim();
  const int expected = equivariant_dimension(v, w, degree);
  const auto nb = MonomialBasis::get(v.dim(), degree);
  if (w.dim() == 0 || nb->size() == 0) {
    if (expected != 0) throw Error(ErrorCode::DimensionMismatch, "empty operator with nonzero trace dimension");
    return out;
  }
  const Matrix r = reynolds_operator(v, w, degree);
  Eigen::ColPivHouseholderQR<Matrix> qr(r);
  qr.setThreshold(1e-8);
  const int rank = max_abs(r) < 1e-10 ? 0 : static_cast<int>(qr.rank());
  if (rank != expected)
    throw Error(ErrorCode::DimensionMismatch, "averaging rank " + std::to_string(rank) +
                                                  " differs from trace formula " + std::to_string(expected));
  if (rank == 0) return out;
  Matrix rows(rank, r.rows());
  for (int k = 0; k < rank; ++k) rows.row(k) = r.col(qr.colsPermutation().indices()(k)).transpose();
  const Matrix canon = reduced_row_echelon(rows);
  if (canon.rows() != rank) throw Error(ErrorCode::DimensionMismatch, "row reduction lost rank");
  for (int k = 0; k < rank; ++k) out.maps.push_back(unflatten(canon.row(k).transpose(), nb, w.dim()));
  return out;
}

int lowest_degree(const Representation& v, const Representation& w, int d_max) {
  for (int d = 1; d <= d_max; ++d)
    if (equivariant_dimension(v, w, d) > 0) return d;
  throw Error(ErrorCode::NoEquivariants, "no equivariants of degree 1.." + std::to_string(d_max));
}

HomogeneousMap multiply(const HomogeneousMap& scalar, const HomogeneousMap& map) {
  if (scalar.out_dim() != 1) throw Error(ErrorCode::InvalidArgument, "multiplier must be scalar-valued");
  const int n = map.nvars();
  const int d = scalar.degree() + map.degree();
  auto nb = MonomialBasis::get(n, d);
  Matrix c = Matrix::Zero(map.out_dim(), nb->size());
  std::vector<int> e(n);
  for (int a = 0; a < scalar.basis->size(); ++a) {
    const double s = scalar.coeffs(0, a);
    if (s == 0.0) continue;
    for (int b = 0; b < map.basis->size(); ++b) {
      for (int i = 0; i < n; ++i) e[i] = scalar.basis->exponent(a)[i] + map.basis->exponent(b)[i];
      c.col(nb->index_of(e)) += s * map.coeffs.col(b);
    }
  }
  return HomogeneousMap(nb, c);
}

namespace {

// Flattened invariant-times-equivariant products landing in degree d.
Matrix product_span(const Representation& v, const Representation& w, int degree, const DegreeBudget& budget) {
  const Representation triv = Representation::trivial(v.group(), 1);
  std::vector<Vector> cols;
  for (int e = 1; e <= degree; ++e) {
    const EquivariantBasis inv = equivariant_basis(v, triv, e, budget);
    if (inv.dim() == 0) continue;
    const int rest = degree - e;
    EquivariantBasis eq;
    if (rest == 0) {
      // constant equivariants are Fix_W(G)
      const Matrix fix = fix_basis(w, whole_group(w.table()));
      for (int k = 0; k < fix.cols(); ++k) eq.maps.emplace_back(MonomialBasis::get(v.dim(), 0), Matrix(fix.col(k)));
    } else {
      eq = equivariant_basis(v, w, rest, budget);
    }
    for (const auto& p : inv.maps)
      for (const auto& f : eq.maps) cols.push_back(flatten(multiply(p, f)));
  }
  const Eigen::Index side = static_cast<Eigen::Index>(w.dim()) * MonomialBasis::get(v.dim(), degree)->size();
  Matrix span(side, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) span.col(static_cast<Eigen::Index>(k)) = cols[k];
  return span;
}

}  // namespace

GeneratorCount generator_count(const Representation& v, const Representation& w, int degree,
                               const DegreeBudget& budget) {
  GeneratorCount gc;
  gc.degree = degree;
  gc.homogeneous_trace = equivariant_dimension(v, w, degree);
  const Matrix r = reynolds_operator(v, w, degree);
  gc.homogeneous_rank = numerical_rank(r);
  gc.product_rank = numerical_rank(product_span(v, w, degree, budget));
  return gc;
}

std::vector<HomogeneousMap> minimal_generators(const Representation& v, const Representation& w, int degree,
                                               const DegreeBudget& budget) {
  const EquivariantBasis full = equivariant_basis(v, w, degree, budget);
  Matrix span = product_span(v, w, degree, budget);
  int rank = numerical_rank(span);
  std::vector<HomogeneousMap> out;
  for (const auto& f : full.maps) {
    Matrix trial(span.rows(), span.cols() + 1);
    trial << span, flatten(f);
    const int r = numerical_rank(trial);
    if (r > rank) {
      span = std::move(trial);
      rank = r;
      out.push_back(f);
    }
  }
  return out;
}

double equivariance_residual(const HomogeneousMap& f, const Representation& v, const Representation& w, Rng& rng,
                             int points) {
  double worst = 0.0;
  for (int p = 0; p < points; ++p) {
    const Vector x = random_unit_vector(rng, v.dim());
    const Vector fx = f.evaluate(x);
    for (int g = 0; g < v.table().order(); ++g)
      worst = std::max(worst, (f.evaluate(v(g) * x) - w(g) * fx).cwiseAbs().maxCoeff());
  }
  return worst;
}

HomogeneousMap RestrictedFamily::combine(const Vector& t) const {
  if (static_cast<std::size_t>(t.size()) != maps.size())
    throw Error(ErrorCode::LengthMismatch, "coefficient vector has length " + std::to_string(t.size()) + ", expected " +
                                               std::to_string(maps.size()));
  const int degree = maps.empty() ? 1 : maps.front().degree();
  HomogeneousMap out(MonomialBasis::get(static_cast<int>(fix_V.cols()), degree),
                     Matrix::Zero(fix_W.cols(), MonomialBasis::get(static_cast<int>(fix_V.cols()), degree)->size()));
  for (std::size_t i = 0; i < maps.size(); ++i) out.coeffs += t(static_cast<Eigen::Index>(i)) * maps[i].coeffs;
  return out;
}

bool RestrictedFamily::identically_zero(double tol) const {
  for (const auto& q : maps)
    if (max_abs(q.coeffs) > tol) return false;
  return true;
}

RestrictedFamily restrict_to_fix(const EquivariantBasis& basis, const Subgroup& s, const Representation& v,
                                 const Representation& w, const std::optional<Matrix>& coords_V,
                                 const std::optional<Matrix>& coords_W) {
  RestrictedFamily fam;
  const Matrix orth_V = fix_basis(v, s);
  const Matrix orth_W = fix_basis(w, s);
  fam.fix_V = coords_V ? *coords_V : orth_V;
  fam.fix_W = coords_W ? *coords_W : orth_W;
  if (fam.fix_V.cols() != orth_V.cols() || !subspace_contained(fam.fix_V, orth_V, 1e-8))
    throw Error(ErrorCode::InvalidArgument, "supplied coordinates do not span Fix_V");
  if (fam.fix_W.cols() != orth_W.cols() || !subspace_contained(fam.fix_W, orth_W, 1e-8))
    throw Error(ErrorCode::InvalidArgument, "supplied coordinates do not span Fix_W");
  // left inverse reading W-vectors in the supplied Fix_W coordinates
  const Matrix read_W = fam.fix_W.cols() == 0 ? Matrix(0, w.dim())
                                              : Matrix((fam.fix_W.transpose() * fam.fix_W).inverse() * fam.fix_W.transpose());
  const Matrix off_W = Matrix::Identity(w.dim(), w.dim()) - orth_W * orth_W.transpose();
  for (const auto& f : basis.maps) {
    const Matrix sub = substitution_matrix(fam.fix_V, f.degree());
    const Matrix full = f.coeffs * sub;
    const double escape = max_abs(off_W * full);
    if (escape > 1e-7 * std::max(1.0, max_abs(f.coeffs)))
      throw Error(ErrorCode::FixViolation, "restricted output leaves Fix_W by " + std::to_string(escape));
    fam.maps.emplace_back(MonomialBasis::get(static_cast<int>(fam.fix_V.cols()), f.degree()), read_W * full);
  }
  return fam;
}

int UniversalMap::k() const {
  int k = 0;
  for (const auto& b : bases) k += b.dim();
  return k;
}

int UniversalMap::in_dim() const { return bases.empty() ? 0 : bases.front().in_dim; }
int UniversalMap::out_dim() const { return bases.empty() ? 0 : bases.front().out_dim; }

PolyMap UniversalMap::instantiate(const Vector& t) const {
  if (t.size() != k())
    throw Error(ErrorCode::LengthMismatch,
                "coefficient vector has length " + std::to_string(t.size()) + ", expected " + std::to_string(k()));
  PolyMap f;
  f.nvars = in_dim();
  f.out_dim = out_dim();
  Eigen::Index pos = 0;
  for (const auto& b : bases) {
    if (b.maps.empty()) continue;
    HomogeneousMap part(b.maps.front().basis, Matrix::Zero(b.out_dim, b.maps.front().basis->size()));
    for (const auto& m : b.maps) part.coeffs += t(pos++) * m.coeffs;
    f.parts.push_back(std::move(part));
  }
  return f;
}

Vector UniversalMap::evaluate(const Vector& x, const Vector& t) const { return instantiate(t).evaluate(x); }

UniversalMap build_universal_map(const Representation& v, const Representation& w, const std::vector<int>& degrees,
                                 const DegreeBudget& budget) {
  UniversalMap u;
  for (int d : degrees) u.bases.push_back(equivariant_basis(v, w, d, budget));
  return u;
}

}  // namespace equistrat
