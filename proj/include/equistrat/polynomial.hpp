#pragma once

#include "equistrat/linalg.hpp"

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace equistrat {

/// Monomials of exact degree d in n variables, graded lexicographic:
/// x1^d first, xn^d last.
class MonomialBasis {
 public:
  MonomialBasis(int nvars, int degree);

  static std::shared_ptr<const MonomialBasis> get(int nvars, int degree);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(exponents_.size()); }
  const std::vector<int>& exponent(int a) const { return exponents_[a]; }
  /// -1 when `e` is not a degree-d exponent in n variables.
  int index_of(const std::vector<int>& e) const;

  /// Values of every monomial at x.
  Vector evaluate(const Vector& x) const;
  /// size() x nvars matrix of partial derivatives.
  Matrix gradient(const Vector& x) const;

  std::string monomial_string(int a, const std::vector<std::string>& names) const;

 private:
  long long encode(const std::vector<int>& e) const;

  int nvars_;
  int degree_;
  std::vector<std::vector<int>> exponents_;
  std::unordered_map<long long, int> index_;
};

using MonomialBasisPtr = std::shared_ptr<const MonomialBasis>;

/// Number of monomials of degree d in n variables.
long long monomial_count(int nvars, int degree);

/// T with mon_d(A y) = T mon_d(y) for A of shape n x k; T is N(n,d) x N(k,d).
Matrix substitution_matrix(const Matrix& a, int degree);

/// Homogeneous polynomial map R^n -> R^m, f(x) = coeffs * mon_d(x).
struct HomogeneousMap {
  MonomialBasisPtr basis;
  Matrix coeffs;  // m x N

  HomogeneousMap() = default;
  HomogeneousMap(MonomialBasisPtr b, Matrix c) : basis(std::move(b)), coeffs(std::move(c)) {}

  int nvars() const { return basis->nvars(); }
  int degree() const { return basis->degree(); }
  int out_dim() const { return static_cast<int>(coeffs.rows()); }

  Vector evaluate(const Vector& x) const;
  Matrix jacobian(const Vector& x) const;

  /// y |-> P f(A y) for P of shape m' x m and A of shape n x k.
  HomogeneousMap compose(const Matrix& out_proj, const Matrix& in_map) const;

  /// One line per output coordinate, e.g. "2*x1^2 - x1*x2".
  std::vector<std::string> to_strings(const std::vector<std::string>& names, int precision = 6) const;
};

/// Sum of homogeneous parts with common variable count and output size.
struct PolyMap {
  int nvars = 0;
  int out_dim = 0;
  std::vector<HomogeneousMap> parts;

  Vector evaluate(const Vector& x) const;
  Matrix jacobian(const Vector& x) const;
  PolyMap compose(const Matrix& out_proj, const Matrix& in_map) const;
  int min_degree() const;
};

/// Default variable names x1..xn.
std::vector<std::string> default_names(int n, const std::string& stem = "x");

/// Formats one signed coefficient * monomial polynomial; "0" when empty.
std::string polynomial_string(const Vector& coeffs, const MonomialBasis& basis, const std::vector<std::string>& names,
                              int precision = 6);

}  // namespace equistrat
