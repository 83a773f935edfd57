#pragma once

#include "equistrat/analysis.hpp"
#include "equistrat/probe.hpp"
#include "equistrat/problem.hpp"

namespace equistrat {

AnalysisOptions analysis_options(const ProblemOptions& o);
ProbeOptions probe_options(const ProblemOptions& o);

AnalysisReport analyze_problem(const Problem& p);
ProbeRun probe_problem(const Problem& p);

}  // namespace equistrat
