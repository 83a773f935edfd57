#pragma once

#include "equistrat/representation.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace equistrat {

struct IsotropyNode {
  SubgroupClass subgroup_class;
  std::string name;
  int dim_fix_V = 0;
  int dim_fix_W = 0;
  int index_s = 0;
  int n_sigma = 0;
  bool is_maximal = false;

  const Subgroup& subgroup() const { return subgroup_class.representative; }
};

struct IsotropyLattice {
  GroupPtr group;
  std::vector<IsotropyNode> nodes;  // sorted by decreasing subgroup order
  /// Covering pairs (upper, lower): node `upper` > node `lower` with nothing between.
  std::vector<std::pair<int, int>> order_edges;
  std::vector<std::vector<bool>> greater_matrix;

  /// Node index by display name or -1.
  int find(const std::string& name) const;
  /// Node whose class contains `s`, or -1.
  int find(const Subgroup& s) const;
  /// True when some conjugate of nodes[upper] contains nodes[lower] (strictly).
  bool greater(int upper, int lower) const { return greater_matrix[upper][lower]; }
};

/// {g : rho(g) b = b for all columns b}.
Subgroup pointwise_stabilizer(const Representation& v, const Matrix& basis, double tol = 1e-9);

/// Subgroup classes whose representative equals the pointwise stabilizer of
/// its own fixed-point subspace.
std::vector<SubgroupClass> isotropy_subgroups(const Representation& v, const std::vector<Subgroup>& subs);

/// Lattice of isotropy types of V with indices relative to W.
IsotropyLattice build_lattice(const Representation& v, const Representation& w);

/// Lattice on prescribed subgroup classes (e.g. the isotropy types of a
/// larger domain) with fixed dims measured in `v` and `w`.
IsotropyLattice build_lattice(const Representation& v, const Representation& w,
                              const std::vector<SubgroupClass>& classes);

struct StrataDimension {
  int stratum_dim = 0;  // dim E_Sigma = s + k
  int branch_dim = 0;   // predicted zero-branch dimension s
};

StrataDimension strata_dimension(const IsotropyNode& node, int k);

/// Graphviz digraph, one node per class labelled "name (s)".
std::string lattice_to_dot(const IsotropyLattice& lattice);

/// Plain-text table: name, order, class size, dim Fix_V, dim Fix_W, s, maximal.
std::string lattice_to_text(const IsotropyLattice& lattice);

}  // namespace equistrat
