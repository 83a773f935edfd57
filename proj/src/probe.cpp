#include "equistrat/probe.hpp"

#include "equistrat/errors.hpp"
#include "equistrat/parallel.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace equistrat {

PolyMap instantiate_map(const UniversalMap& bases, const Vector& t) { return bases.instantiate(t); }

std::string to_string(MatchStatus s) {
  switch (s) {
    case MatchStatus::Match: return "Match";
    case MatchStatus::NonGenericSuspect: return "NonGenericSuspect";
    case MatchStatus::Empty: return "Empty";
  }
  return "?";
}

ZeroBranchSample find_zero_branches(const PolyMap& f, const Representation& v, const Representation& w,
                                    const IsotropyLattice& lattice, int node, const ProbeOptions& opts,
                                    std::uint64_t stream) {
  const IsotropyNode& nd = lattice.nodes.at(node);
  ZeroBranchSample out;
  out.node = node;
  out.sigma = nd.name;
  const Subgroup sub = nd.subgroup();
  const Matrix bv = fix_basis(v, sub);
  const Matrix bw = fix_basis(w, sub);
  out.dim_fix_V = static_cast<int>(bv.cols());
  out.dim_fix_W = static_cast<int>(bw.cols());
  const int k = out.dim_fix_V;
  if (k == 0) return out;

  const double inner = 0.01 * opts.radius;
  Rng rng = make_rng(opts.seed, {stream, static_cast<std::uint64_t>(node)});
  std::vector<Vector> starts;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (static_cast<int>(starts.size()) < opts.starts) {
    const Vector dir = random_unit_vector(rng, k);
    const double r = opts.radius * std::pow(unif(rng), 1.0 / k);
    if (r > inner) starts.push_back(r * dir);
  }

  const PolyMap g = f.compose(bw.transpose(), bv);
  NewtonOptions nopts;
  nopts.tol = opts.zero_tol;
  nopts.max_iter = opts.max_iter;
  auto fn = [&](const Vector& y) { return g.evaluate(y); };
  auto jac = [&](const Vector& y) { return g.jacobian(y); };

  std::vector<std::optional<ZeroPoint>> found(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    ZeroPoint z;
    Vector y = starts[i];
    if (out.dim_fix_W > 0) {
      const NewtonResult r = damped_newton(fn, jac, starts[i], nopts);
      if (!r.converged) return;
      y = r.x;
      z.residual = r.residual;
      z.rank = numerical_rank(g.jacobian(y), opts.rank_tol);
    }
    const double ny = y.norm();
    if (ny <= inner || ny > opts.radius) return;
    z.x = bv * y;
    z.exact = pointwise_stabilizer(v, z.x, 1e-6).order() == sub.order();
    found[i] = std::move(z);
  });

  std::vector<int> ranks;
  for (auto& z : found) {
    if (!z) continue;
    bool dup = false;
    for (const auto& kept : out.zeros)
      if ((kept.x - z->x).norm() < opts.dedup_tol) {
        dup = true;
        break;
      }
    if (dup) continue;
    if (z->exact) ranks.push_back(z->rank);
    out.zeros.push_back(std::move(*z));
  }
  if (!ranks.empty()) {
    std::map<int, int> freq;
    for (int r : ranks) ++freq[r];
    int modal = -1, best = 0;
    for (const auto& [r, c] : freq)
      if (c >= best) {
        best = c;
        modal = r;
      }
    out.estimated_dim = k - modal;
  }
  return out;
}

std::vector<PredictionCheck> verify_predictions(const IsotropyLattice& lattice,
                                                const std::vector<ZeroBranchSample>& samples, const Vector& t) {
  std::vector<PredictionCheck> out;
  for (const auto& s : samples) {
    PredictionCheck c;
    c.node = s.node;
    c.sigma = s.sigma;
    c.predicted = lattice.nodes.at(s.node).index_s;
    c.estimated = s.estimated_dim;
    c.t.assign(t.data(), t.data() + t.size());
    if (!s.estimated_dim) c.status = MatchStatus::Empty;
    else if (*s.estimated_dim == c.predicted) c.status = MatchStatus::Match;
    else c.status = MatchStatus::NonGenericSuspect;
    out.push_back(std::move(c));
  }
  return out;
}

std::string probe_csv_header(int dim_V) {
  std::string h = "sigma,draw";
  for (int i = 1; i <= dim_V; ++i) h += ",x" + std::to_string(i);
  return h + ",residual,rank\n";
}

std::string probe_csv_rows(const std::vector<ZeroBranchSample>& samples, int draw) {
  std::ostringstream os;
  char buf[64];
  for (const auto& s : samples)
    for (const auto& z : s.zeros) {
      os << '"' << s.sigma << "\"," << draw;
      for (int i = 0; i < z.x.size(); ++i) {
        std::snprintf(buf, sizeof buf, ",%.12g", z.x(i));
        os << buf;
      }
      std::snprintf(buf, sizeof buf, ",%.3e,%d\n", z.residual, z.rank);
      os << buf;
    }
  return os.str();
}

ProbeRun run_probe(const Representation& v, const Representation& w, int draws, const ProbeOptions& opts,
                   int degree_max, const DegreeBudget& budget) {
  ProbeRun run;
  const int lowest = lowest_degree(v, w, degree_max);
  for (int d = 1; d <= std::max(3, lowest); ++d) run.degrees.push_back(d);
  const UniversalMap um = build_universal_map(v, w, run.degrees, budget);
  run.generators = um.k();
  const IsotropyLattice lattice = build_lattice(v, w);
  for (int draw = 0; draw < draws; ++draw) {
    Rng rng = make_rng(opts.seed, {0x7E57u, static_cast<std::uint64_t>(draw)});
    const Vector t = random_gaussian(rng, um.k(), 1).col(0);
    const PolyMap f = instantiate_map(um, t);
    std::vector<ZeroBranchSample> samples;
    for (std::size_t n = 0; n < lattice.nodes.size(); ++n) {
      if (lattice.nodes[n].dim_fix_V == 0) continue;
      samples.push_back(find_zero_branches(f, v, w, lattice, static_cast<int>(n), opts, draw + 1));
    }
    run.draws.emplace_back(t.data(), t.data() + t.size());
    run.checks.push_back(verify_predictions(lattice, samples, t));
    run.samples.push_back(std::move(samples));
  }
  return run;
}

}  // namespace equistrat
