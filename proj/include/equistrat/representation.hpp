#pragma once

#include "equistrat/group.hpp"

#include <cstdint>
#include <vector>

namespace equistrat {

constexpr double kDefaultTol = 1e-9;
constexpr double kRoundTol = 1e-6;

/// Orthogonal representation: one matrix per group element.
class Representation {
 public:
  Representation() = default;

  /// Extends generator images along the group's element words and checks
  /// the result is a homomorphism (relation residuals at every element
  /// times every generator) of orthogonal matrices.
  static Representation from_generator_images(GroupPtr group, const std::vector<Matrix>& gen_images,
                                              double tol = kDefaultTol);
  static Representation from_element_matrices(GroupPtr group, std::vector<Matrix> mats,
                                              double tol = kDefaultTol);
  static Representation trivial(GroupPtr group, int dim = 1);
  /// The group's own defining matrices.
  static Representation defining(GroupPtr group);
  static Representation direct_sum(const Representation& a, const Representation& b);

  /// Subrepresentation on the invariant subspace spanned by the
  /// orthonormal columns of `basis`: g |-> B^T rho(g) B.
  Representation restricted(const Matrix& basis, double tol = 1e-7) const;

  const GroupPtr& group() const { return group_; }
  const GroupTable& table() const { return *group_; }
  int dim() const { return dim_; }
  const Matrix& operator()(int g) const { return mats_[g]; }
  const std::vector<Matrix>& matrices() const { return mats_; }

 private:
  GroupPtr group_;
  int dim_ = 0;
  std::vector<Matrix> mats_;
};

/// Per-conjugacy-class traces.
struct Character {
  GroupPtr group;
  std::vector<double> values;

  double at_element(int g) const { return values[group->class_of(g)]; }
};

Character character(const Representation& rep);

/// (1/|G|) sum_g x(g) y(g), rounded; throws NotIntegral if the residual
/// exceeds `tol_round`.
int char_inner(const Character& x, const Character& y, double tol_round = kRoundTol);

/// Unrounded inner product.
double char_inner_raw(const Character& x, const Character& y);

Subgroup kernel(const Representation& rep, double tol = kDefaultTol);
bool is_faithful(const Representation& rep, double tol = kDefaultTol);

/// Character average over `s`.
int fix_dimension(const Representation& rep, const Subgroup& s);
/// Orthonormal basis of Fix(s) as the image of the averaged projector;
/// InternalMismatch if its rank disagrees with fix_dimension.
Matrix fix_basis(const Representation& rep, const Subgroup& s);
/// Averaged projector (1/|s|) sum_{g in s} rho(g).
Matrix fix_projector(const Representation& rep, const Subgroup& s);

struct IsotypicComponent {
  Matrix basis;                // orthonormal columns, concatenation of copies
  std::vector<Matrix> copies;  // one orthonormal block per irreducible copy
  int irr_dim = 0;
  int multiplicity = 0;  // r
  int endo_dim = 0;      // dim End_G(U): 1 real, 2 complex, 4 quaternionic
  Character irreducible;

  int dim() const { return static_cast<int>(basis.cols()); }
};

struct SplitOptions {
  std::uint64_t seed = 42;
  int retry_budget = 8;
  double gap = 1e-6;
};

/// Isotypic decomposition by eigen-splitting averaged random symmetric
/// operators. Components sorted by (irr_dim, character values).
std::vector<IsotypicComponent> isotypic_decompose(const Representation& rep, const SplitOptions& opts = {});

/// (chi_V, chi_U) for one irreducible copy U of the component.
int delta(const Representation& v, const IsotypicComponent& u);

/// Averaged intertwiner between two representations applied to `x`:
/// (1/|G|) sum_g b(g) x a(g)^T.
Matrix average_intertwiner(const Representation& a, const Representation& b, const Matrix& x);

}  // namespace equistrat
