#pragma once

#include "equistrat/analysis.hpp"
#include "equistrat/probe.hpp"

#include <string>

namespace equistrat {

std::string lattice_json(const IsotropyLattice& lattice, int indent = 2);

/// Sections: problem, options, reductions, lattice, reduced_lattice,
/// components (with evidence), verdicts, main_statement.
std::string report_json(const AnalysisReport& report, int indent = 2);
std::string report_markdown(const AnalysisReport& report);

/// Header lines then one "map k | out i | coefficient | monomial" row per
/// nonzero term.
std::string basis_dump(const EquivariantBasis& basis, const std::string& header = "");

std::string probe_json(const ProbeRun& run, const IsotropyLattice& lattice, std::uint64_t seed, int indent = 2);
std::string probe_markdown(const ProbeRun& run, std::uint64_t seed);

}  // namespace equistrat
