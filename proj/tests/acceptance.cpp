#include "oracles.hpp"

#include "equistrat/analysis.hpp"
#include "equistrat/errors.hpp"
#include "equistrat/pipeline.hpp"
#include "equistrat/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace equistrat;

namespace {

/// Collects sub-checks of one criterion; the criterion passes when all do.
struct Checks {
  bool ok = true;
  std::ostringstream log;

  void expect(bool cond, const std::string& what) {
    ok = ok && cond;
    log << "    [" << (cond ? "ok" : "FAIL") << "] " << what << "\n";
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string join(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

void lattice_indices(Checks& c, const char* spec, const std::vector<std::string>& names, const std::vector<int>& s,
                     const std::vector<int>& fix_w = {}) {
  const auto p = oracle::load_example(spec);
  const auto lat = build_lattice(p.V, p.W);
  std::vector<int> got_s, got_w;
  bool found = true;
  for (const auto& n : names) {
    const int i = lat.find(n);
    found = found && i >= 0;
    got_s.push_back(i >= 0 ? lat.nodes[i].index_s : -99);
    got_w.push_back(i >= 0 ? lat.nodes[i].dim_fix_W : -99);
  }
  c.expect(found && got_s == s, std::string(spec) + ": s = " + join(got_s) + ", expected " + join(s));
  if (!fix_w.empty())
    c.expect(found && got_w == fix_w, std::string(spec) + ": dim Fix_W = " + join(got_w) + ", expected " + join(fix_w));
}

bool criterion1(Checks& c) {
  lattice_indices(c, "d2", {"D2", "Z2(k)", "Z2(s)", "1"}, {0, 0, 1, 1});
  lattice_indices(c, "d6", {"D6", "Z2(k)", "Z2(ks)", "1"}, {0, 1, 1, 2});
  lattice_indices(c, "fgroup_case1", {"Z4(b)", "Z4(bm)", "Z2(b^2)", "Z2(b^2m)"}, {1, 1, 2, 2}, {1, 1, 2, 2});
  return c.ok;
}

bool criterion2(Checks& c) {
  struct Case {
    const char* spec;
    int degree;
    int expected;
  };
  for (const Case& k : {Case{"d6", 2, 3}, Case{"d6", 3, 0}, Case{"d6", 4, 5}, Case{"fgroup_case2", 3, 9},
                        Case{"fgroup_reduced", 3, 6}, Case{"d2", 1, 1}}) {
    const auto p = oracle::load_example(k.spec);
    const GeneratorCount gc = generator_count(p.V, p.W, k.degree);
    std::ostringstream os;
    os << k.spec << " d=" << k.degree << ": generators by trace " << gc.by_trace() << ", by averaging rank "
       << gc.by_rank() << " (homogeneous " << gc.homogeneous_trace << " / " << gc.homogeneous_rank << "), expected "
       << k.expected;
    c.expect(gc.by_trace() == k.expected && gc.by_rank() == k.expected &&
                 gc.homogeneous_trace == gc.homogeneous_rank,
             os.str());
  }
  return c.ok;
}

bool criterion3(Checks& c) {
  {
    const auto p = oracle::load_example("d6");
    const auto basis = equivariant_basis(p.V, p.W, 2);
    const auto fit = oracle::fit_basis(basis.maps, oracle::d6_quadratic_generators(), 4);
    const auto fc = oracle::d6_kappa_coords(p.V.table());
    const auto fam = restrict_to_fix(basis, fc.subgroup, p.V, p.W, fc.coords_V, fc.coords_W);
    const double rf = oracle::form_residual(fit, fam, oracle::d6_kappa_form, 3);
    const double rj = oracle::jacobian_residual(fit, fam, oracle::d6_kappa_jacobian, 3);
    c.expect(fit.residual < 1e-8 && rf < 1e-8, "D6 Z2(k) form t1 u^2 + t2 uv + t3 v^2, residual " + sci(rf));
    c.expect(rj < 1e-8, "D6 Z2(k) Jacobian [2t1u + t2v, t2u + 2t3v], residual " + sci(rj));
  }
  {
    const auto p = oracle::load_example("fgroup_case2");
    const auto basis = equivariant_basis(p.V, p.W, 3);
    const auto fit = oracle::fit_basis(basis.maps, oracle::fgroup_cubic_generators(), 8);
    c.expect(fit.residual < 1e-8 && fit.rank_joint == basis.dim(),
             "F-group cubic generators fit in the computed basis, residual " + sci(fit.residual));
    const std::pair<int, oracle::FormFn> forms[] = {{1, oracle::fgroup_sigma1_form}, {2, oracle::fgroup_sigma2_form}};
    for (const auto& [which, form] : forms) {
      const auto fc = oracle::fgroup_coords(p.V.table(), which);
      const auto fam = restrict_to_fix(basis, fc.subgroup, p.V, p.W, fc.coords_V, fc.coords_W);
      const double r = oracle::form_residual(fit, fam, form, 9);
      c.expect(r < 1e-8, std::string(which == 1 ? "Z4(b)" : "Z4(bm)") + " cubic form, residual " + sci(r));
    }
  }
  return c.ok;
}

void expect_verdicts(Checks& c, const char* spec, const std::map<std::string, int>& included, Mechanism mech,
                     int min_successes = 0) {
  const auto rep = analyze_problem(oracle::load_example(spec));
  std::map<std::string, int> got;
  bool mech_ok = true, samples_ok = true;
  for (const auto& v : rep.verdicts) {
    if (v.verdict != Verdict::Included) continue;
    got[v.sigma] = v.predicted_branch_dim;
    mech_ok = mech_ok && v.mechanism == mech;
  }
  std::ostringstream os;
  os << spec << ": Included {";
  bool first = true;
  for (const auto& [s, d] : got) {
    os << (first ? "" : ", ") << s << ":" << d;
    first = false;
  }
  os << "}, expected {";
  first = true;
  for (const auto& [s, d] : included) {
    os << (first ? "" : ", ") << s << ":" << d;
    first = false;
  }
  os << "}";
  for (const auto& v : rep.verdicts)
    if (v.verdict != Verdict::Included) os << "; " << v.sigma << " " << to_string(v.verdict);
  c.expect(got == included, os.str());
  c.expect(mech_ok, std::string(spec) + ": mechanism " + to_string(mech));
  if (min_successes > 0) {
    for (const auto& comp : rep.components)
      for (const auto& v : comp.verdicts) {
        samples_ok = samples_ok && v.evidence.samples == 32 && v.evidence.successes >= min_successes;
        c.log << "      " << v.sigma << ": " << v.evidence.successes << "/" << v.evidence.samples
              << " samples regular\n";
      }
    c.expect(samples_ok, std::string(spec) + ": at least " + std::to_string(min_successes) + "/32 successes");
  }
}

bool criterion4(Checks& c) {
  expect_verdicts(c, "d6", {{"Z2(k)", 1}, {"Z2(ks)", 1}}, Mechanism::BMSRegularity, 24);
  const std::map<std::string, int> f = {{"Z4(b)", 1}, {"Z4(bm)", 1}, {"Z2(b^2m)", 2}};
  expect_verdicts(c, "fgroup_case1", f, Mechanism::TheoremIFT);
  expect_verdicts(c, "fgroup_case2", f, Mechanism::BMSRegularity);
  expect_verdicts(c, "fgroup_case3", f, Mechanism::LSReduction);
  return c.ok;
}

bool criterion5(Checks& c) {
  const auto p = oracle::load_example("vanishing");
  c.expect(!is_faithful(p.V) && vanishing_check(p.V, p.W).has_value(), "ker V is not contained in ker W");
  bool zero = true;
  for (int d = 1; d <= 6; ++d)
    zero = zero && equivariant_dimension(p.V, p.W, d) == 0 && oracle::constraint_equivariant_dimension(p.V, p.W, d) == 0;
  c.expect(zero, "equivariant dimension 0 for d = 1..6 (trace formula and constraint kernel)");
  const auto rep = analyze_problem(p);
  bool vanishing = !rep.verdicts.empty();
  for (const auto& v : rep.verdicts) vanishing = vanishing && v.mechanism == Mechanism::Vanishing;
  for (const auto& comp : rep.components) vanishing = vanishing && comp.status == "vanishing";
  c.expect(vanishing, "analyze reports Vanishing");
  return c.ok;
}

void expect_probe(Checks& c, const char* spec, const std::vector<std::string>& sigmas) {
  ProblemSpec s = oracle::load_example(spec).spec;
  s.options.probe_draws = 10;
  const Problem p = build_problem(s);
  const ProbeRun run = probe_problem(p);
  for (const auto& sigma : sigmas) {
    int match = 0, suspect = 0, empty = 0;
    for (const auto& draw : run.checks)
      for (const auto& chk : draw) {
        if (chk.sigma != sigma) continue;
        if (chk.status == MatchStatus::Match) ++match;
        else if (chk.status == MatchStatus::NonGenericSuspect) ++suspect;
        else ++empty;
      }
    const int with_branch = match + suspect;
    std::ostringstream os;
    os << spec << " " << sigma << ": match " << match << "/" << with_branch << " draws with a branch, flagged "
       << suspect << ", empty " << empty << " of " << run.checks.size();
    c.expect(with_branch > 0 && 10 * match >= 9 * with_branch, os.str());
  }
}

bool criterion6(Checks& c) {
  expect_probe(c, "d2", {"Z2(s)"});
  expect_probe(c, "z2_reversible", {"Z2"});
  expect_probe(c, "d6", {"Z2(k)", "Z2(ks)"});
  return c.ok;
}

bool criterion7(Checks& c) {
  double worst_equiv = 0.0;
  for (const char* name : {"d2", "d6", "fgroup_case1", "fgroup_case2", "fgroup_case3", "fgroup_reduced",
                           "z2_reversible"}) {
    const auto p = oracle::load_example(name);
    const int d = lowest_degree(p.V, p.W, 5);
    Rng rng = make_rng(77);
    for (const auto& f : equivariant_basis(p.V, p.W, d).maps)
      worst_equiv = std::max(worst_equiv, equivariance_residual(f, p.V, p.W, rng, 5));
  }
  c.expect(worst_equiv < 1e-8, "equivariance residual " + sci(worst_equiv));

  int subgroups = 0, mismatches = 0;
  for (const char* grp : {"cyclic 1", "cyclic 2", "cyclic 3", "cyclic 4", "cyclic 5", "cyclic 6", "dihedral 2",
                          "dihedral 3", "dihedral 4", "dihedral 5", "dihedral 6", "frobenius 13 4",
                          "product(frobenius 13 4, cyclic 2)", "product(cyclic 2, cyclic 2)",
                          "product(dihedral 3, cyclic 2)"}) {
    const BuiltinGroup g = make_group(grp);
    RepDirective all;
    all.blocks = g.block_names;
    const Representation rep = build_representation(g, all);
    for (const auto& s : enumerate_subgroups(*g.group)) {
      ++subgroups;
      const int by_char = fix_dimension(rep, s);
      if (by_char != numerical_rank(fix_projector(rep, s)) || by_char != oracle::kernel_fix_dimension(rep, s))
        ++mismatches;
    }
  }
  c.expect(mismatches == 0, "fix dimension: character, projector and kernel agree on " + std::to_string(subgroups) +
                                " subgroups of 15 builtin groups");

  double worst_fd = 0.0;
  Rng rng = make_rng(78);
  for (const char* name : {"d6", "fgroup_case2", "fgroup_reduced"}) {
    const auto p = oracle::load_example(name);
    for (const auto& f : equivariant_basis(p.V, p.W, lowest_degree(p.V, p.W, 5)).maps)
      worst_fd = std::max(worst_fd, oracle::finite_difference_gap(f, random_gaussian(rng, p.V.dim(), 1).col(0)));
  }
  c.expect(worst_fd < 1e-6, "Jacobian vs central differences, relative gap " + sci(worst_fd));

  {
    const auto both = build_problem(parse_spec(
        "group = product(frobenius 13 4, cyclic 2)\nnames = a, b, m\nV = V(1)*sign + V(1)*sign + V(10)*sign\n"
        "W = V(10)*sign + V(7)*sign\n"));
    const auto rep = analyze(both.V, both.W);
    const auto a = analyze(both.V, build_representation(both.builtin, RepDirective{{"V(10)*sign"}, {}}));
    const auto b = analyze(both.V, build_representation(both.builtin, RepDirective{{"V(7)*sign"}, {}}));
    bool same = rep.components.size() == 2 && rep.verdicts.size() == a.verdicts.size();
    for (std::size_t i = 0; same && i < rep.verdicts.size(); ++i)
      same = rep.verdicts[i].sigma == a.verdicts[i].sigma && rep.verdicts[i].sigma == b.verdicts[i].sigma &&
             rep.verdicts[i].verdict == aggregate({a.verdicts[i].verdict, b.verdicts[i].verdict});
    c.expect(same, "two-component W: global verdicts equal the conjunction of separate analyses");
  }

  {
    const auto p = oracle::load_example("fgroup_case2");
    const char* old = std::getenv("EQUISTRAT_THREADS");
    const std::string saved = old ? old : "";
    setenv("EQUISTRAT_THREADS", "1", 1);
    const std::string one = report_json(analyze_problem(p));
    unsetenv("EQUISTRAT_THREADS");
    const std::string many = report_json(analyze_problem(p));
    if (old) setenv("EQUISTRAT_THREADS", saved.c_str(), 1);
    c.expect(one == many && one == report_json(analyze_problem(p)),
             "report JSON byte-identical across runs and thread caps");
  }
  return c.ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  bool verbose = false;
  app.add_option("--criterion", only, "run a single criterion (1-7)")->check(CLI::Range(1, 7));
  app.add_flag("-v,--verbose", verbose, "print sub-checks of passing criteria too");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<bool(Checks&)>>> criteria = {
      {"lattice and index reproduction", criterion1},
      {"equivariant dimensions, trace formula and averaging rank", criterion2},
      {"restricted forms match the displayed formulas", criterion3},
      {"verdict reproduction", criterion4},
      {"vanishing instance", criterion5},
      {"probe branch dimensions", criterion6},
      {"property suites", criterion7},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (only && only != n) continue;
    Checks c;
    bool pass = false;
    try {
      pass = criteria[i].second(c);
    } catch (const std::exception& e) {
      c.log << "    exception: " << e.what() << "\n";
    }
    std::cout << "criterion " << n << ": " << (pass ? "PASS" : "FAIL") << " " << criteria[i].first << "\n";
    if (!pass || verbose || only) std::cout << c.log.str();
    std::cout.flush();
    failures += pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
