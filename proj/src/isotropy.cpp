#include "equistrat/isotropy.hpp"

#include "equistrat/errors.hpp"
#include "equistrat/parallel.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace equistrat {

int IsotropyLattice::find(const std::string& name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].name == name) return static_cast<int>(i);
  return -1;
}

int IsotropyLattice::find(const Subgroup& s) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (const auto& m : nodes[i].subgroup_class.members)
      if (m == s) return static_cast<int>(i);
  return -1;
}

Subgroup pointwise_stabilizer(const Representation& v, const Matrix& basis, double tol) {
  Subgroup k;
  for (int g = 0; g < v.table().order(); ++g)
    if (basis.cols() == 0 || max_abs(v(g) * basis - basis) <= tol) k.elements.push_back(g);
  return k;
}

std::vector<SubgroupClass> isotropy_subgroups(const Representation& v, const std::vector<Subgroup>& subs) {
  const auto classes = subgroup_classes(v.table(), subs);
  std::vector<char> keep(classes.size(), 0);
  parallel_for(classes.size(), [&](std::size_t i) {
    const Subgroup& s = classes[i].representative;
    keep[i] = pointwise_stabilizer(v, fix_basis(v, s), 1e-7) == s;
  });
  std::vector<SubgroupClass> out;
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (keep[i]) out.push_back(classes[i]);
  return out;
}

IsotropyLattice build_lattice(const Representation& v, const Representation& w) {
  return build_lattice(v, w, isotropy_subgroups(v, enumerate_subgroups(v.table())));
}

IsotropyLattice build_lattice(const Representation& v, const Representation& w,
                              const std::vector<SubgroupClass>& classes) {
  if (v.group() != w.group()) throw Error(ErrorCode::InvalidArgument, "V and W act through different groups");
  const GroupTable& g = v.table();
  IsotropyLattice lat;
  lat.group = v.group();
  for (const auto& cls : classes) {
    IsotropyNode node;
    node.subgroup_class = cls;
    node.name = subgroup_name(g, cls);
    node.dim_fix_V = fix_dimension(v, cls.representative);
    node.dim_fix_W = fix_dimension(w, cls.representative);
    node.index_s = node.dim_fix_V - node.dim_fix_W;
    lat.nodes.push_back(std::move(node));
  }
  std::stable_sort(lat.nodes.begin(), lat.nodes.end(), [](const IsotropyNode& a, const IsotropyNode& b) {
    if (a.subgroup().order() != b.subgroup().order()) return a.subgroup().order() > b.subgroup().order();
    return a.subgroup() < b.subgroup();
  });

  const std::size_t n = lat.nodes.size();
  lat.greater_matrix.assign(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t l = 0; l < n; ++l) {
      if (lat.nodes[u].subgroup().order() <= lat.nodes[l].subgroup().order()) continue;
      const Subgroup& low = lat.nodes[l].subgroup();
      for (const auto& m : lat.nodes[u].subgroup_class.members)
        if (low.is_subset_of(m)) {
          lat.greater_matrix[u][l] = true;
          break;
        }
    }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t l = 0; l < n; ++l) {
      if (!lat.greater_matrix[u][l]) continue;
      bool covering = true;
      for (std::size_t m = 0; m < n && covering; ++m)
        if (lat.greater_matrix[u][m] && lat.greater_matrix[m][l]) covering = false;
      if (covering) lat.order_edges.emplace_back(static_cast<int>(u), static_cast<int>(l));
    }
  for (std::size_t i = 0; i < n; ++i) {
    auto& node = lat.nodes[i];
    if (node.subgroup().order() == g.order()) continue;
    bool only_g = true;
    for (std::size_t u = 0; u < n; ++u)
      if (lat.greater_matrix[u][i] && lat.nodes[u].subgroup().order() != g.order()) only_g = false;
    node.is_maximal = only_g;
  }
  return lat;
}

StrataDimension strata_dimension(const IsotropyNode& node, int k) {
  return {node.index_s - node.n_sigma + k, node.index_s - node.n_sigma};
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string lattice_to_dot(const IsotropyLattice& lattice) {
  std::ostringstream os;
  os << "digraph isotropy {\n";
  os << "  rankdir=TB;\n";
  os << "  node [shape=plaintext];\n";
  for (std::size_t i = 0; i < lattice.nodes.size(); ++i) {
    const auto& n = lattice.nodes[i];
    os << "  n" << i << " [label=\"" << dot_escape(n.name) << " (" << n.index_s << ")\"];\n";
  }
  for (const auto& [u, l] : lattice.order_edges) os << "  n" << u << " -> n" << l << ";\n";
  os << "}\n";
  return os.str();
}

std::string lattice_to_text(const IsotropyLattice& lattice) {
  std::size_t width = 4;
  for (const auto& n : lattice.nodes) width = std::max(width, n.name.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width) + 2) << "name" << std::right << std::setw(6) << "order"
     << std::setw(7) << "class" << std::setw(7) << "fixV" << std::setw(7) << "fixW" << std::setw(5) << "s"
     << "  maximal\n";
  for (const auto& n : lattice.nodes)
    os << std::left << std::setw(static_cast<int>(width) + 2) << n.name << std::right << std::setw(6)
       << n.subgroup().order() << std::setw(7) << n.subgroup_class.members.size() << std::setw(7) << n.dim_fix_V
       << std::setw(7) << n.dim_fix_W << std::setw(5) << n.index_s << "  " << (n.is_maximal ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace equistrat
