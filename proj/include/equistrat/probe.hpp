#pragma once

#include "equistrat/equivariants.hpp"
#include "equistrat/isotropy.hpp"
#include "equistrat/newton.hpp"

#include <optional>
#include <string>
#include <vector>

namespace equistrat {

struct ProbeOptions {
  std::uint64_t seed = 42;
  double radius = 1.0;
  int starts = 256;
  double zero_tol = 1e-9;
  double dedup_tol = 1e-5;
  double rank_tol = 1e-6;
  int max_iter = 200;
};

struct ZeroPoint {
  Vector x;          // in V coordinates
  double residual = 0.0;
  int rank = 0;      // rank of the restricted Jacobian
  bool exact = true; // isotropy equals Σ rather than a larger group
};

struct ZeroBranchSample {
  int node = -1;
  std::string sigma;
  int dim_fix_V = 0;
  int dim_fix_W = 0;
  std::vector<ZeroPoint> zeros;
  /// From zeros with isotropy exactly Σ; none when there are none.
  std::optional<int> estimated_dim;
};

/// LengthMismatch when |t| differs from the generator count.
PolyMap instantiate_map(const UniversalMap& bases, const Vector& t);

/// Newton from random starts in the ball of Fix_V(Σ), punctured at 0.
ZeroBranchSample find_zero_branches(const PolyMap& f, const Representation& v, const Representation& w,
                                    const IsotropyLattice& lattice, int node, const ProbeOptions& opts,
                                    std::uint64_t stream = 0);

enum class MatchStatus { Match, NonGenericSuspect, Empty };
std::string to_string(MatchStatus s);

struct PredictionCheck {
  int node = -1;
  std::string sigma;
  int predicted = 0;  // s(Σ)
  std::optional<int> estimated;
  MatchStatus status = MatchStatus::Empty;
  std::vector<double> t;
};

std::vector<PredictionCheck> verify_predictions(const IsotropyLattice& lattice,
                                                const std::vector<ZeroBranchSample>& samples, const Vector& t);

/// Header "sigma,draw,x1..xn,residual,rank"; one row per stored zero.
std::string probe_csv_header(int dim_V);
std::string probe_csv_rows(const std::vector<ZeroBranchSample>& samples, int draw);

struct ProbeRun {
  std::vector<int> degrees;
  int generators = 0;
  std::vector<std::vector<double>> draws;  // t per draw
  std::vector<std::vector<ZeroBranchSample>> samples;
  std::vector<std::vector<PredictionCheck>> checks;
};

/// Universal map over degrees 1..max(3, lowest degree), `draws` seeded
/// coefficient vectors, every lattice node with nonzero Fix_V probed.
ProbeRun run_probe(const Representation& v, const Representation& w, int draws, const ProbeOptions& opts,
                   int degree_max = 5, const DegreeBudget& budget = {});

}  // namespace equistrat
