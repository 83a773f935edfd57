#include "equistrat/linalg.hpp"

#include "equistrat/errors.hpp"

#include <cmath>

namespace equistrat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::InternalMismatch: return "InternalMismatch";
    case ErrorCode::SplitFailed: return "SplitFailed";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoEquivariants: return "NoEquivariants";
    case ErrorCode::FixViolation: return "FixViolation";
    case ErrorCode::GenericRankFailed: return "GenericRankFailed";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::EndoTypeAmbiguous: return "EndoTypeAmbiguous";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SpecError: return "SpecError";
  }
  return "Unknown";
}

int numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) < 1e-13) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return rank;
}

Matrix column_space(const Matrix& m, double rel_tol) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int rank = 0;
  if (s.size() > 0 && s(0) >= 1e-13)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > rel_tol * s(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

Matrix orthogonal_complement(const Matrix& basis, int n) {
  if (basis.cols() == 0) return Matrix::Identity(n, n);
  Matrix proj = Matrix::Identity(n, n) - basis * basis.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (proj + proj.transpose()));
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
  Matrix out(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
  return out;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_orthogonal(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.transpose() * m - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

bool subspace_contained(const Matrix& sub, const Matrix& space, double tol) {
  if (sub.cols() == 0) return true;
  if (space.cols() == 0) return max_abs(sub) <= tol;
  Matrix resid = sub - space * (space.transpose() * sub);
  return max_abs(resid) <= tol;
}

Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (auto s : stream) {
    words.push_back(static_cast<std::uint32_t>(s));
    words.push_back(static_cast<std::uint32_t>(s >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

Matrix random_gaussian(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = nd(rng);
  return m;
}

Vector random_unit_vector(Rng& rng, int n) {
  if (n == 0) return Vector(0);
  Vector v;
  do {
    v = random_gaussian(rng, n, 1).col(0);
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

Matrix reduced_row_echelon(const Matrix& m, double tol) {
  Matrix a = m;
  const double scale = std::max(1.0, max_abs(a));
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index best = r;
    for (Eigen::Index i = r + 1; i < rows; ++i)
      if (std::abs(a(i, c)) > std::abs(a(best, c))) best = i;
    if (std::abs(a(best, c)) <= tol * scale) continue;
    a.row(r).swap(a.row(best));
    a.row(r) /= a(r, c);
    for (Eigen::Index i = 0; i < rows; ++i)
      if (i != r && a(i, c) != 0.0) a.row(i) -= a(i, c) * a.row(r);
    ++r;
  }
  return snap(a.topRows(r));
}

Matrix snap(const Matrix& m, double tol) {
  Matrix out = m;
  for (Eigen::Index j = 0; j < out.cols(); ++j)
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      double& x = out(i, j);
      if (std::abs(x) < tol) {
        x = 0.0;
      } else {
        const double r = std::round(x);
        if (r != 0.0 && std::abs(x - r) < tol * std::abs(r)) x = r;
      }
    }
  return out;
}

}  // namespace equistrat
