#include "equistrat/polynomial.hpp"

#include "equistrat/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace equistrat {

namespace {

void fill_exponents(int nvars, int remaining, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
  if (pos == nvars - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    fill_exponents(nvars, remaining - e, cur, pos + 1, out);
  }
}

}  // namespace

MonomialBasis::MonomialBasis(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (nvars < 0 || degree < 0) throw Error(ErrorCode::InvalidArgument, "negative monomial basis size");
  if (nvars == 0) {
    if (degree == 0) exponents_.push_back({});
  } else {
    std::vector<int> cur(nvars, 0);
    fill_exponents(nvars, degree, cur, 0, exponents_);
  }
  for (std::size_t a = 0; a < exponents_.size(); ++a) index_.emplace(encode(exponents_[a]), static_cast<int>(a));
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int nvars, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{nvars, degree}];
  if (!slot) slot = std::make_shared<const MonomialBasis>(nvars, degree);
  return slot;
}

long long MonomialBasis::encode(const std::vector<int>& e) const {
  long long key = 0;
  for (int v : e) key = key * (degree_ + 1) + v;
  return key;
}

int MonomialBasis::index_of(const std::vector<int>& e) const {
  if (static_cast<int>(e.size()) != nvars_) return -1;
  int total = 0;
  for (int v : e) {
    if (v < 0) return -1;
    total += v;
  }
  if (total != degree_) return -1;
  auto it = index_.find(encode(e));
  return it == index_.end() ? -1 : it->second;
}

Vector MonomialBasis::evaluate(const Vector& x) const {
  Vector out(size());
  for (int a = 0; a < size(); ++a) {
    double v = 1.0;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < exponents_[a][i]; ++k) v *= x(i);
    out(a) = v;
  }
  return out;
}

Matrix MonomialBasis::gradient(const Vector& x) const {
  Matrix g = Matrix::Zero(size(), nvars_);
  for (int a = 0; a < size(); ++a) {
    const auto& e = exponents_[a];
    for (int j = 0; j < nvars_; ++j) {
      if (e[j] == 0) continue;
      double v = e[j];
      for (int i = 0; i < nvars_; ++i) {
        const int p = i == j ? e[i] - 1 : e[i];
        for (int k = 0; k < p; ++k) v *= x(i);
      }
      g(a, j) = v;
    }
  }
  return g;
}

std::string MonomialBasis::monomial_string(int a, const std::vector<std::string>& names) const {
  std::string out;
  for (int i = 0; i < nvars_; ++i) {
    const int e = exponents_[a][i];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

long long monomial_count(int nvars, int degree) {
  if (nvars == 0) return degree == 0 ? 1 : 0;
  long long c = 1;
  for (int i = 1; i <= degree; ++i) c = c * (nvars - 1 + i) / i;
  return c;
}

Matrix substitution_matrix(const Matrix& a, int degree) {
  const int n = static_cast<int>(a.rows());
  const int k = static_cast<int>(a.cols());
  Matrix t = Matrix::Ones(1, 1);
  for (int e = 1; e <= degree; ++e) {
    auto bn = MonomialBasis::get(n, e);
    auto bk = MonomialBasis::get(k, e);
    auto bn_prev = MonomialBasis::get(n, e - 1);
    auto bk_prev = MonomialBasis::get(k, e - 1);
    Matrix next = Matrix::Zero(bn->size(), bk->size());
    for (int alpha = 0; alpha < bn->size(); ++alpha) {
      std::vector<int> beta = bn->exponent(alpha);
      int i = 0;
      while (beta[i] == 0) ++i;
      --beta[i];
      const int row = bn_prev->index_of(beta);
      for (int g = 0; g < bk_prev->size(); ++g) {
        const double c = t(row, g);
        if (c == 0.0) continue;
        std::vector<int> gamma = bk_prev->exponent(g);
        for (int j = 0; j < k; ++j) {
          if (a(i, j) == 0.0) continue;
          ++gamma[j];
          next(alpha, bk->index_of(gamma)) += a(i, j) * c;
          --gamma[j];
        }
      }
    }
    t = std::move(next);
  }
  return t;
}

Vector HomogeneousMap::evaluate(const Vector& x) const { return coeffs * basis->evaluate(x); }

Matrix HomogeneousMap::jacobian(const Vector& x) const { return coeffs * basis->gradient(x); }

HomogeneousMap HomogeneousMap::compose(const Matrix& out_proj, const Matrix& in_map) const {
  auto nb = MonomialBasis::get(static_cast<int>(in_map.cols()), degree());
  return HomogeneousMap(nb, out_proj * coeffs * substitution_matrix(in_map, degree()));
}

std::vector<std::string> HomogeneousMap::to_strings(const std::vector<std::string>& names, int precision) const {
  std::vector<std::string> out;
  for (int i = 0; i < out_dim(); ++i) out.push_back(polynomial_string(coeffs.row(i).transpose(), *basis, names, precision));
  return out;
}

Vector PolyMap::evaluate(const Vector& x) const {
  Vector out = Vector::Zero(out_dim);
  for (const auto& p : parts) out += p.evaluate(x);
  return out;
}

Matrix PolyMap::jacobian(const Vector& x) const {
  Matrix out = Matrix::Zero(out_dim, nvars);
  for (const auto& p : parts) out += p.jacobian(x);
  return out;
}

PolyMap PolyMap::compose(const Matrix& out_proj, const Matrix& in_map) const {
  PolyMap out;
  out.nvars = static_cast<int>(in_map.cols());
  out.out_dim = static_cast<int>(out_proj.rows());
  for (const auto& p : parts) out.parts.push_back(p.compose(out_proj, in_map));
  return out;
}

int PolyMap::min_degree() const {
  int d = -1;
  for (const auto& p : parts)
    if (max_abs(p.coeffs) > 0.0 && (d < 0 || p.degree() < d)) d = p.degree();
  return d;
}

std::vector<std::string> default_names(int n, const std::string& stem) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

std::string polynomial_string(const Vector& coeffs, const MonomialBasis& basis, const std::vector<std::string>& names,
                              int precision) {
  std::ostringstream os;
  os.precision(precision);
  bool first = true;
  const double scale = std::max(1.0, max_abs(coeffs));
  for (int a = 0; a < basis.size(); ++a) {
    double c = coeffs(a);
    if (std::abs(c) <= 1e-10 * scale) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = std::abs(c);
    const std::string mon = basis.monomial_string(a, names);
    if (std::abs(c - 1.0) > 1e-12 || mon == "1") {
      os << c;
      if (mon != "1") os << "*";
    }
    if (mon != "1") os << mon;
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace equistrat
