#pragma once

#include "equistrat/equivariants.hpp"
#include "equistrat/isotropy.hpp"
#include "equistrat/newton.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace equistrat {

enum class CaseKind { DeltaGeqR, DeltaZero, DeltaIntermediate };
enum class Verdict { Included, NotIncluded, Inconclusive };
enum class Mechanism { TheoremIFT, BMSRegularity, LSReduction, Vanishing, IndexFilter, None };

std::string to_string(CaseKind k);
std::string to_string(Verdict v);
std::string to_string(Mechanism m);

struct CaseTag {
  CaseKind kind = CaseKind::DeltaZero;
  int delta = 0;         // (chi_V, chi_U)
  int r = 0;             // copies of U in the component
  int multiplicity = 0;  // delta / endo_dim
  int endo_dim = 1;
};

struct SampleRecord {
  std::vector<double> t;
  int roots = 0;
  int regular_roots = 0;
  int irregular_roots = 0;
  std::vector<int> jacobian_ranks;
  bool success = false;  // no irregular root observed
  bool witness = false;  // at least one regular nonzero root
};

struct Evidence {
  std::string reason;
  int degree = 0;        // degree of the leading form used
  int generators = 0;    // size of that basis
  int samples = 0;
  int successes = 0;
  int witnesses = 0;
  int irregular_total = 0;
  int global_roots = 0;        // roots of the unrestricted leading form
  int global_irregular = 0;
  int generic_rank = -1;
  int generic_rank_target = -1;
  int generic_rank_draws = 0;
  bool lemma_q2_root = false;
  std::vector<SampleRecord> per_sample;
};

struct InclusionVerdict {
  int node = -1;  // index into the lattice the verdict refers to
  std::string sigma;
  int index_s = 0;
  Verdict verdict = Verdict::Inconclusive;
  Mechanism mechanism = Mechanism::None;
  int predicted_branch_dim = 0;
  Evidence evidence;
};

struct AnalysisOptions {
  std::uint64_t seed = 42;
  int samples = 32;
  int starts = 64;
  int degree_max = 5;
  double success_fraction = 0.75;
  int generic_rank_draws = 16;
  NewtonOptions newton;
  SplitOptions split;
  DegreeBudget budget;
};

struct StripResult {
  Representation V;  // complement of Fix_V(G)
  Representation W;
  Matrix basis_V;    // columns spanning V' inside V
  Matrix basis_W;
  int p = 0;  // dim Fix_V(G)
  int q = 0;  // dim Fix_W(G)
};

StripResult strip_trivial(const Representation& v, const Representation& w);

struct VanishingInfo {
  Subgroup kernel_V;
  Subgroup kernel_W;
  std::string reason;
};

/// Vanishing when ker V is not inside ker W_i: every equivariant map then
/// takes values in Fix_{W_i}(ker V) = 0.
std::optional<VanishingInfo> vanishing_check(const Representation& v, const Representation& w_component);

/// EndoTypeAmbiguous when endo_dim > 1 and delta, multiplicity disagree.
CaseTag classify_case(const Representation& v, const IsotypicComponent& comp);

/// Verdicts for maximal nodes of `lattice` (built from V and W_i).
std::vector<InclusionVerdict> predict_case1(const Representation& v, const Representation& w_i,
                                            const IsotropyLattice& lattice, const AnalysisOptions& opts,
                                            std::uint64_t stream = 0);

InclusionVerdict case2_regularity_test(const Representation& v, const Representation& w_i,
                                       const IsotropyLattice& lattice, int node, const AnalysisOptions& opts,
                                       std::uint64_t stream = 0);

std::vector<InclusionVerdict> predict_case2(const Representation& v, const Representation& w_i,
                                            const IsotropyLattice& lattice, const AnalysisOptions& opts,
                                            std::uint64_t stream = 0);

struct Case3Result {
  int reduced_V_dim = 0;
  int reduced_W_dim = 0;
  std::vector<InclusionVerdict> linear;   // case 1 on (V, W')
  std::vector<InclusionVerdict> reduced;  // case 2 on (V'', W'^perp)
  std::vector<InclusionVerdict> merged;
};

/// `w_i` is the isotypic component in its own coordinates (copies occupy
/// consecutive column blocks); W' is spanned by the first multiplicity copies.
Case3Result case3_reduce(const Representation& v, const Representation& w_i, const IsotypicComponent& comp,
                         const CaseTag& tag, const IsotropyLattice& lattice, const AnalysisOptions& opts,
                         std::uint64_t stream = 0);

struct ComponentReport {
  int index = 0;
  int dim = 0;
  int irr_dim = 0;
  int r = 0;
  int endo_dim = 1;
  int delta = 0;
  std::vector<double> character;
  std::string status;  // analyzed | vanishing | ambiguous | no-equivariants
  std::optional<CaseTag> tag;
  int kernel_V_order = 1;
  int kernel_W_order = 1;
  int quotient_order = 0;
  std::string note;
  std::vector<InclusionVerdict> verdicts;
  std::optional<Case3Result> case3;
};

struct GlobalVerdict {
  int node = -1;  // into the reduced lattice
  std::string sigma;
  int index_s = 0;
  Verdict verdict = Verdict::Inconclusive;
  Mechanism mechanism = Mechanism::None;
  int predicted_branch_dim = 0;
  std::vector<Verdict> component_verdicts;
};

struct AnalysisReport {
  std::string problem;
  AnalysisOptions options;
  int group_order = 0;
  int dim_V = 0;
  int dim_W = 0;
  int p = 0;
  int q = 0;
  int dim_V_reduced = 0;
  int dim_W_reduced = 0;
  IsotropyLattice lattice;          // (V, W)
  IsotropyLattice reduced_lattice;  // (V', W')
  std::vector<ComponentReport> components;
  std::vector<GlobalVerdict> verdicts;
  std::optional<std::string> main_statement;
};

/// Conjunction across components: Vanishing counts as included, any
/// NotIncluded wins, otherwise Inconclusive unless all are Included.
Verdict aggregate(const std::vector<Verdict>& component_verdicts);

AnalysisReport analyze(const Representation& v, const Representation& w, const AnalysisOptions& opts = {},
                       const std::string& problem = "");

}  // namespace equistrat
