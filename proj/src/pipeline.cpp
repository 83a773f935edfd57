#include "equistrat/pipeline.hpp"

namespace equistrat {

AnalysisOptions analysis_options(const ProblemOptions& o) {
  AnalysisOptions a;
  a.seed = o.seed;
  a.samples = o.samples;
  a.starts = o.starts;
  a.degree_max = o.degree_max;
  a.budget.max_degree = std::max(a.budget.max_degree, o.degree_max);
  return a;
}

ProbeOptions probe_options(const ProblemOptions& o) {
  ProbeOptions p;
  p.seed = o.seed;
  p.starts = o.probe_starts;
  p.radius = o.probe_radius;
  p.zero_tol = o.tol;
  return p;
}

AnalysisReport analyze_problem(const Problem& p) {
  return analyze(p.V, p.W, analysis_options(p.spec.options), p.spec.name);
}

ProbeRun probe_problem(const Problem& p) {
  const AnalysisOptions a = analysis_options(p.spec.options);
  return run_probe(p.V, p.W, p.spec.options.probe_draws, probe_options(p.spec.options), a.degree_max, a.budget);
}

}  // namespace equistrat
