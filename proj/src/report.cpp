#include "equistrat/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace equistrat {

using nlohmann::ordered_json;

namespace {

ordered_json lattice_to(const IsotropyLattice& lattice) {
  ordered_json nodes = ordered_json::array();
  for (std::size_t i = 0; i < lattice.nodes.size(); ++i) {
    const auto& n = lattice.nodes[i];
    nodes.push_back({{"id", i},
                     {"name", n.name},
                     {"order", n.subgroup_class.representative.order()},
                     {"class_size", n.subgroup_class.members.size()},
                     {"dim_fix_V", n.dim_fix_V},
                     {"dim_fix_W", n.dim_fix_W},
                     {"s", n.index_s},
                     {"n_sigma", n.n_sigma},
                     {"maximal", n.is_maximal}});
  }
  ordered_json edges = ordered_json::array();
  for (const auto& [u, l] : lattice.order_edges) edges.push_back({u, l});
  return {{"nodes", nodes}, {"edges", edges}};
}

ordered_json evidence_to(const Evidence& e) {
  ordered_json j = {{"reason", e.reason}, {"degree", e.degree}, {"generators", e.generators}};
  if (e.samples > 0) {
    j["samples"] = e.samples;
    j["successes"] = e.successes;
    j["witnesses"] = e.witnesses;
    j["irregular_roots"] = e.irregular_total;
    j["global_roots"] = e.global_roots;
    j["global_irregular"] = e.global_irregular;
    ordered_json per = ordered_json::array();
    for (const auto& s : e.per_sample)
      per.push_back({{"t", s.t},
                     {"roots", s.roots},
                     {"regular", s.regular_roots},
                     {"irregular", s.irregular_roots},
                     {"jacobian_ranks", s.jacobian_ranks},
                     {"success", s.success},
                     {"witness", s.witness}});
    j["per_sample"] = per;
  }
  if (e.generic_rank >= 0) {
    j["generic_rank"] = e.generic_rank;
    j["generic_rank_target"] = e.generic_rank_target;
    j["generic_rank_draws"] = e.generic_rank_draws;
  }
  if (e.lemma_q2_root) j["nonzero_root_with_nonpositive_index"] = true;
  return j;
}

ordered_json verdict_to(const InclusionVerdict& v) {
  return {{"sigma", v.sigma},
          {"s", v.index_s},
          {"verdict", to_string(v.verdict)},
          {"mechanism", to_string(v.mechanism)},
          {"predicted_branch_dim", v.predicted_branch_dim},
          {"evidence", evidence_to(v.evidence)}};
}

ordered_json verdicts_to(const std::vector<InclusionVerdict>& vs) {
  ordered_json a = ordered_json::array();
  for (const auto& v : vs) a.push_back(verdict_to(v));
  return a;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

std::string lattice_json(const IsotropyLattice& lattice, int indent) { return lattice_to(lattice).dump(indent); }

std::string report_json(const AnalysisReport& r, int indent) {
  ordered_json j;
  j["problem"] = r.problem;
  j["seed"] = r.options.seed;
  j["options"] = {{"samples", r.options.samples},
                  {"starts", r.options.starts},
                  {"degree_max", r.options.degree_max},
                  {"success_fraction", r.options.success_fraction},
                  {"newton_tol", r.options.newton.tol},
                  {"newton_max_iter", r.options.newton.max_iter}};
  j["group_order"] = r.group_order;
  j["reductions"] = {{"dim_V", r.dim_V},
                     {"dim_W", r.dim_W},
                     {"p", r.p},
                     {"q", r.q},
                     {"dim_V_reduced", r.dim_V_reduced},
                     {"dim_W_reduced", r.dim_W_reduced}};
  j["lattice"] = lattice_to(r.lattice);
  j["reduced_lattice"] = lattice_to(r.reduced_lattice);
  ordered_json comps = ordered_json::array();
  for (const auto& c : r.components) {
    ordered_json cj = {{"index", c.index},       {"dim", c.dim},
                       {"irr_dim", c.irr_dim},   {"r", c.r},
                       {"endo_dim", c.endo_dim}, {"delta", c.delta},
                       {"character", c.character}, {"status", c.status}};
    if (c.tag) {
      cj["case"] = to_string(c.tag->kind);
      cj["multiplicity"] = c.tag->multiplicity;
    }
    cj["kernel_V_order"] = c.kernel_V_order;
    cj["kernel_W_order"] = c.kernel_W_order;
    cj["quotient_order"] = c.quotient_order;
    if (!c.note.empty()) cj["note"] = c.note;
    cj["verdicts"] = verdicts_to(c.verdicts);
    if (c.case3) {
      cj["reduction"] = {{"reduced_V_dim", c.case3->reduced_V_dim},
                         {"reduced_W_dim", c.case3->reduced_W_dim},
                         {"linear", verdicts_to(c.case3->linear)},
                         {"reduced", verdicts_to(c.case3->reduced)}};
    }
    comps.push_back(cj);
  }
  j["components"] = comps;
  ordered_json vs = ordered_json::array();
  for (const auto& g : r.verdicts) {
    ordered_json cv = ordered_json::array();
    for (Verdict v : g.component_verdicts) cv.push_back(to_string(v));
    vs.push_back({{"sigma", g.sigma},
                  {"s", g.index_s},
                  {"verdict", to_string(g.verdict)},
                  {"mechanism", to_string(g.mechanism)},
                  {"predicted_branch_dim", g.predicted_branch_dim},
                  {"component_verdicts", cv}});
  }
  j["verdicts"] = vs;
  j["main_statement"] = r.main_statement ? ordered_json(*r.main_statement) : ordered_json(nullptr);
  return j.dump(indent);
}

std::string report_markdown(const AnalysisReport& r) {
  std::ostringstream os;
  os << "# Analysis: " << (r.problem.empty() ? "unnamed" : r.problem) << "\n\n";
  os << "seed " << r.options.seed << ", samples " << r.options.samples << ", starts " << r.options.starts << "\n\n";
  os << "|G| = " << r.group_order << ", dim V = " << r.dim_V << ", dim W = " << r.dim_W << ", trivial parts p = " << r.p
     << ", q = " << r.q << "\n\n";
  os << "## Isotropy lattice\n\n| Σ | order | dim Fix_V | dim Fix_W | s | maximal |\n|---|---|---|---|---|---|\n";
  for (const auto& n : r.lattice.nodes)
    os << "| " << n.name << " | " << n.subgroup_class.representative.order() << " | " << n.dim_fix_V << " | "
       << n.dim_fix_W << " | " << n.index_s << " | " << (n.is_maximal ? "yes" : "") << " |\n";
  os << "\n## Components of W'\n\n";
  for (const auto& c : r.components) {
    os << "- component " << c.index << ": dim " << c.dim << ", r = " << c.r << ", delta = " << c.delta
       << ", endo_dim = " << c.endo_dim << ", " << (c.tag ? to_string(c.tag->kind) : c.status);
    if (!c.note.empty()) os << " (" << c.note << ")";
    os << "\n";
    for (const auto& v : c.verdicts)
      os << "  - " << v.sigma << ": " << to_string(v.verdict) << " [" << to_string(v.mechanism) << "] "
         << v.evidence.reason << "\n";
  }
  os << "\n## Verdicts\n\n| Σ | s | verdict | mechanism | branch dim |\n|---|---|---|---|---|\n";
  for (const auto& g : r.verdicts)
    os << "| " << g.sigma << " | " << g.index_s << " | " << to_string(g.verdict) << " | " << to_string(g.mechanism)
       << " | " << g.predicted_branch_dim << " |\n";
  if (r.main_statement) os << "\n" << *r.main_statement << "\n";
  return os.str();
}

std::string basis_dump(const EquivariantBasis& basis, const std::string& header) {
  std::ostringstream os;
  if (!header.empty()) os << "# " << header << "\n";
  os << "# degree " << basis.degree << ", dimension " << basis.dim() << "\n";
  if (basis.dim() == 0) {
    os << "none\n";
    return os.str();
  }
  const auto names = default_names(basis.in_dim);
  for (int k = 0; k < basis.dim(); ++k) {
    const auto& m = basis.maps[k];
    for (int i = 0; i < m.out_dim(); ++i)
      for (int c = 0; c < m.coeffs.cols(); ++c) {
        const double a = m.coeffs(i, c);
        if (std::abs(a) < 1e-12) continue;
        Vector e = Vector::Zero(m.coeffs.cols());
        e(c) = 1.0;
        os << "map " << k + 1 << " | out " << i + 1 << " | " << fmt(a) << " | "
           << polynomial_string(e, *m.basis, names) << "\n";
      }
  }
  return os.str();
}

std::string probe_json(const ProbeRun& run, const IsotropyLattice& lattice, std::uint64_t seed, int indent) {
  ordered_json j;
  j["seed"] = seed;
  j["degrees"] = run.degrees;
  j["generators"] = run.generators;
  ordered_json draws = ordered_json::array();
  for (std::size_t d = 0; d < run.draws.size(); ++d) {
    ordered_json checks = ordered_json::array();
    for (std::size_t i = 0; i < run.checks[d].size(); ++i) {
      const auto& c = run.checks[d][i];
      checks.push_back({{"sigma", c.sigma},
                        {"s", c.predicted},
                        {"estimated_dim", c.estimated ? ordered_json(*c.estimated) : ordered_json(nullptr)},
                        {"zeros", run.samples[d][i].zeros.size()},
                        {"status", to_string(c.status)}});
    }
    draws.push_back({{"t", run.draws[d]}, {"checks", checks}});
  }
  j["draws"] = draws;
  j["lattice"] = lattice_to(lattice);
  return j.dump(indent);
}

std::string probe_markdown(const ProbeRun& run, std::uint64_t seed) {
  std::ostringstream os;
  os << "# Probe\n\nseed " << seed << ", " << run.draws.size() << " draws, " << run.generators
     << " generators over degrees";
  for (int d : run.degrees) os << " " << d;
  os << "\n\n| draw | Σ | s | estimated | zeros | status |\n|---|---|---|---|---|---|\n";
  for (std::size_t d = 0; d < run.checks.size(); ++d)
    for (std::size_t i = 0; i < run.checks[d].size(); ++i) {
      const auto& c = run.checks[d][i];
      os << "| " << d << " | " << c.sigma << " | " << c.predicted << " | "
         << (c.estimated ? std::to_string(*c.estimated) : "none") << " | " << run.samples[d][i].zeros.size() << " | "
         << to_string(c.status) << " |\n";
    }
  return os.str();
}

}  // namespace equistrat
