#pragma once

#include "equistrat/polynomial.hpp"
#include "equistrat/representation.hpp"

#include <optional>
#include <vector>

namespace equistrat {

struct SymPowerCharacter {
  int degree = 0;
  Character character;
};

/// Newton recursion chi_{S^d}(g) = (1/d) sum_{k=1..d} chi(g^k) chi_{S^{d-k}}(g).
SymPowerCharacter sym_power_character(const Character& x, int degree);

/// (chi_{S^d V}, chi_W): dimension of degree-d homogeneous equivariants V -> W.
int equivariant_dimension(const Representation& v, const Representation& w, int degree);

struct DegreeBudget {
  int max_degree = 5;
  /// Cap on (dim W) * (number of degree-d monomials), the side of the averaging operator.
  long long max_operator_size = 6000;
};

struct EquivariantBasis {
  int degree = 0;
  int in_dim = 0;
  int out_dim = 0;
  std::vector<HomogeneousMap> maps;

  int dim() const { return static_cast<int>(maps.size()); }
};

/// Averaging operator on coefficient matrices, f |-> (1/|G|) sum_g rho_W(g)^T f(rho_V(g) x),
/// acting on the flattening c(i, b) -> index b * m + i.
Matrix reynolds_operator(const Representation& v, const Representation& w, int degree);

/// Basis from the column space of the averaging operator, canonicalized by
/// reduced row echelon form. DimensionMismatch when its rank disagrees with
/// the trace formula; DegreeCapExceeded beyond the budget.
EquivariantBasis equivariant_basis(const Representation& v, const Representation& w, int degree,
                                   const DegreeBudget& budget = {});

/// Least d in [1, d_max] with equivariant_dimension > 0; NoEquivariants otherwise.
int lowest_degree(const Representation& v, const Representation& w, int d_max);

/// Homogeneous count versus new module generators in one degree: the part of
/// the degree-d space not spanned by invariants of degree e >= 1 times
/// equivariants of degree d - e.
struct GeneratorCount {
  int degree = 0;
  int homogeneous_trace = 0;  // trace formula
  int homogeneous_rank = 0;   // averaging-operator rank
  int product_rank = 0;       // rank of the invariant-times-equivariant products
  int by_trace() const { return homogeneous_trace - product_rank; }
  int by_rank() const { return homogeneous_rank - product_rank; }
};

GeneratorCount generator_count(const Representation& v, const Representation& w, int degree,
                               const DegreeBudget& budget = {});

/// Maps completing the product span to the full degree-d space.
std::vector<HomogeneousMap> minimal_generators(const Representation& v, const Representation& w, int degree,
                                               const DegreeBudget& budget = {});

/// Scalar homogeneous polynomial times homogeneous map.
HomogeneousMap multiply(const HomogeneousMap& scalar, const HomogeneousMap& map);

/// max_g |F(rho_V(g) x) - rho_W(g) F(x)| over `points` random unit x.
double equivariance_residual(const HomogeneousMap& f, const Representation& v, const Representation& w, Rng& rng,
                             int points = 20);

/// Family of restrictions Q_i: Fix_V(Sigma) -> Fix_W(Sigma) in orthonormal
/// fixed-point coordinates.
struct RestrictedFamily {
  Matrix fix_V;  // n x k
  Matrix fix_W;  // m x l
  std::vector<HomogeneousMap> maps;

  /// sum_i t_i Q_i.
  HomogeneousMap combine(const Vector& t) const;
  bool identically_zero(double tol = 1e-10) const;
};

/// Restriction of every basis map to Fix_V(s), read in Fix_W(s)
/// coordinates. Explicit coordinate bases may replace the computed
/// orthonormal ones; they must span the same subspaces. FixViolation when an
/// output leaves Fix_W(s).
RestrictedFamily restrict_to_fix(const EquivariantBasis& basis, const Subgroup& s, const Representation& v,
                                 const Representation& w, const std::optional<Matrix>& coords_V = std::nullopt,
                                 const std::optional<Matrix>& coords_W = std::nullopt);

/// F(x, t) = sum_i t_i F_i(x) over a list of homogeneous bases.
struct UniversalMap {
  std::vector<EquivariantBasis> bases;

  int k() const;
  int in_dim() const;
  int out_dim() const;
  /// Concrete map for coefficient vector t; LengthMismatch if |t| != k.
  PolyMap instantiate(const Vector& t) const;
  Vector evaluate(const Vector& x, const Vector& t) const;
};

UniversalMap build_universal_map(const Representation& v, const Representation& w, const std::vector<int>& degrees,
                                 const DegreeBudget& budget = {});

}  // namespace equistrat
