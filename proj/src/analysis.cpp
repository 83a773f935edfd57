#include "equistrat/analysis.hpp"

#include "equistrat/errors.hpp"
#include "equistrat/parallel.hpp"

#include <cmath>
#include <sstream>

namespace equistrat {

std::string to_string(CaseKind k) {
  switch (k) {
    case CaseKind::DeltaGeqR: return "DeltaGeqR";
    case CaseKind::DeltaZero: return "DeltaZero";
    case CaseKind::DeltaIntermediate: return "DeltaIntermediate";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Included: return "Included";
    case Verdict::NotIncluded: return "NotIncluded";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(Mechanism m) {
  switch (m) {
    case Mechanism::TheoremIFT: return "Theorem-IFT";
    case Mechanism::BMSRegularity: return "BMS-regularity";
    case Mechanism::LSReduction: return "LS-reduction";
    case Mechanism::Vanishing: return "Vanishing";
    case Mechanism::IndexFilter: return "IndexFilter";
    case Mechanism::None: return "None";
  }
  return "?";
}

StripResult strip_trivial(const Representation& v, const Representation& w) {
  StripResult out;
  const Subgroup g = whole_group(v.table());
  const Matrix fv = fix_basis(v, g);
  const Matrix fw = fix_basis(w, g);
  out.p = static_cast<int>(fv.cols());
  out.q = static_cast<int>(fw.cols());
  out.basis_V = out.p == 0 ? Matrix(Matrix::Identity(v.dim(), v.dim())) : orthogonal_complement(fv, v.dim());
  out.basis_W = out.q == 0 ? Matrix(Matrix::Identity(w.dim(), w.dim())) : orthogonal_complement(fw, w.dim());
  out.V = v.restricted(out.basis_V);
  out.W = w.restricted(out.basis_W);
  return out;
}

std::optional<VanishingInfo> vanishing_check(const Representation& v, const Representation& w_component) {
  VanishingInfo info;
  info.kernel_V = kernel(v);
  info.kernel_W = kernel(w_component);
  if (info.kernel_V.is_subset_of(info.kernel_W)) return std::nullopt;
  std::ostringstream os;
  os << "ker V (order " << info.kernel_V.order() << ") is not contained in ker W_i (order " << info.kernel_W.order()
     << "); equivariant maps take values in Fix(ker V) = 0";
  info.reason = os.str();
  return info;
}

CaseTag classify_case(const Representation& v, const IsotypicComponent& comp) {
  CaseTag tag;
  tag.delta = delta(v, comp);
  tag.r = comp.multiplicity;
  tag.endo_dim = comp.endo_dim;
  tag.multiplicity = tag.delta / std::max(1, comp.endo_dim);
  auto kind_of = [&](int count) {
    if (count == 0) return CaseKind::DeltaZero;
    if (count >= tag.r) return CaseKind::DeltaGeqR;
    return CaseKind::DeltaIntermediate;
  };
  tag.kind = kind_of(tag.multiplicity);
  if (comp.endo_dim > 1 && kind_of(tag.delta) != tag.kind)
    throw Error(ErrorCode::EndoTypeAmbiguous,
                "endomorphism dimension " + std::to_string(comp.endo_dim) + ": delta " + std::to_string(tag.delta) +
                    " and multiplicity " + std::to_string(tag.multiplicity) + " classify differently against r = " +
                    std::to_string(tag.r));
  return tag;
}

namespace {

InclusionVerdict base_verdict(const IsotropyLattice& lattice, int node) {
  InclusionVerdict v;
  v.node = node;
  v.sigma = lattice.nodes[node].name;
  v.index_s = lattice.nodes[node].index_s;
  return v;
}

std::vector<int> maximal_nodes(const IsotropyLattice& lattice) {
  std::vector<int> out;
  for (std::size_t i = 0; i < lattice.nodes.size(); ++i)
    if (lattice.nodes[i].is_maximal) out.push_back(static_cast<int>(i));
  return out;
}

HomogeneousMap combine(const EquivariantBasis& basis, const Vector& t) {
  HomogeneousMap out(basis.maps.front().basis, Matrix::Zero(basis.out_dim, basis.maps.front().basis->size()));
  for (int k = 0; k < basis.dim(); ++k) out.coeffs += t(k) * basis.maps[k].coeffs;
  return out;
}

InclusionVerdict case2_with_basis(const Representation& v, const Representation& w_i, const IsotropyLattice& lattice,
                                  int node, const EquivariantBasis& basis, const AnalysisOptions& opts,
                                  std::uint64_t stream) {
  InclusionVerdict out = base_verdict(lattice, node);
  const IsotropyNode& nd = lattice.nodes[node];
  out.evidence.degree = basis.degree;
  out.evidence.generators = basis.dim();
  const RestrictedFamily fam = restrict_to_fix(basis, nd.subgroup(), v, w_i);
  const int k = basis.dim();

  if (nd.index_s <= 0) {
    out.verdict = Verdict::NotIncluded;
    out.mechanism = Mechanism::IndexFilter;
    out.evidence.reason = "index s = " + std::to_string(nd.index_s) + " <= 0";
    if (fam.fix_V.cols() > 0 && !fam.identically_zero()) {
      const int probes = std::min(opts.samples, 8);
      for (int s = 0; s < probes && !out.evidence.lemma_q2_root; ++s) {
        Rng rng = make_rng(opts.seed, {stream, static_cast<std::uint64_t>(node), 1000000u + static_cast<std::uint64_t>(s)});
        const Vector t = random_unit_vector(rng, k);
        if (!sphere_roots(fam.combine(t), opts.starts, rng, opts.newton).empty()) out.evidence.lemma_q2_root = true;
      }
      if (out.evidence.lemma_q2_root)
        out.evidence.reason += "; nonzero root of the restricted leading form found, so it is not regular on its zero set";
    }
    return out;
  }
  if (nd.dim_fix_W == 0) {
    out.verdict = Verdict::Included;
    out.mechanism = Mechanism::Vanishing;
    out.predicted_branch_dim = nd.index_s;
    out.evidence.reason = "restricted map vanishes: Fix_W is zero";
    return out;
  }
  if (fam.identically_zero()) {
    out.verdict = Verdict::Inconclusive;
    out.evidence.reason = "NoDependence: leading form vanishes identically on Fix_V";
    return out;
  }

  const int samples = opts.samples;
  std::vector<SampleRecord> records(static_cast<std::size_t>(samples));
  std::vector<int> global_roots(samples, 0), global_irregular(samples, 0);
  parallel_for(static_cast<std::size_t>(samples), [&](std::size_t si) {
    Rng rng = make_rng(opts.seed, {stream, static_cast<std::uint64_t>(node), static_cast<std::uint64_t>(si)});
    const Vector t = random_unit_vector(rng, k);
    SampleRecord rec;
    rec.t.assign(t.data(), t.data() + t.size());
    const HomogeneousMap q = fam.combine(t);
    const auto roots = sphere_roots(q, opts.starts, rng, opts.newton);
    rec.roots = static_cast<int>(roots.size());
    for (const auto& y : roots) {
      const Matrix j = q.jacobian(y);
      rec.jacobian_ranks.push_back(numerical_rank(j, 1e-6));
      if (is_regular_point(q, y)) ++rec.regular_roots;
      else ++rec.irregular_roots;
    }
    rec.success = rec.irregular_roots == 0;
    rec.witness = rec.regular_roots > 0;
    const HomogeneousMap full = combine(basis, t);
    const auto groots = sphere_roots(full, std::min(opts.starts, 16), rng, opts.newton);
    global_roots[si] = static_cast<int>(groots.size());
    for (const auto& y : groots)
      if (!is_regular_point(full, y)) ++global_irregular[si];
    records[si] = std::move(rec);
  });

  Evidence& ev = out.evidence;
  ev.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const auto& rec = records[s];
    ev.successes += rec.success ? 1 : 0;
    ev.witnesses += rec.witness ? 1 : 0;
    ev.irregular_total += rec.irregular_roots;
    ev.global_roots += global_roots[s];
    ev.global_irregular += global_irregular[s];
  }
  ev.per_sample = std::move(records);
  const bool majority = ev.successes >= static_cast<int>(std::ceil(opts.success_fraction * samples));
  if (majority && ev.witnesses > 0) {
    out.verdict = Verdict::Included;
    out.mechanism = Mechanism::BMSRegularity;
    out.predicted_branch_dim = nd.index_s;
    ev.reason = "restricted leading form regular on its zero set in " + std::to_string(ev.successes) + "/" +
                std::to_string(samples) + " samples, nonzero roots in " + std::to_string(ev.witnesses);
  } else {
    out.verdict = Verdict::Inconclusive;
    ev.reason = majority ? "no nonzero roots of the restricted leading form found"
                         : "irregular roots in too many samples (" + std::to_string(samples - ev.successes) + "/" +
                               std::to_string(samples) + ")";
  }
  return out;
}

}  // namespace

std::vector<InclusionVerdict> predict_case1(const Representation& v, const Representation& w_i,
                                            const IsotropyLattice& lattice, const AnalysisOptions& opts,
                                            std::uint64_t stream) {
  const EquivariantBasis lin = equivariant_basis(v, w_i, 1, opts.budget);
  const int target = w_i.dim();
  int best = 0, draws = 0;
  if (lin.dim() > 0) {
    Rng rng = make_rng(opts.seed, {stream, 0xC1u});
    for (draws = 1; draws <= opts.generic_rank_draws; ++draws) {
      const Vector t = random_gaussian(rng, lin.dim(), 1).col(0);
      best = std::max(best, numerical_rank(combine(lin, t).coeffs));
      if (best == target) break;
    }
    draws = std::min(draws, opts.generic_rank_draws);
  }
  if (best != target)
    throw Error(ErrorCode::GenericRankFailed, "generic linear equivariant reached rank " + std::to_string(best) +
                                                  ", expected " + std::to_string(target));
  std::vector<InclusionVerdict> out;
  for (int node : maximal_nodes(lattice)) {
    InclusionVerdict vd = base_verdict(lattice, node);
    vd.evidence.degree = 1;
    vd.evidence.generators = lin.dim();
    vd.evidence.generic_rank = best;
    vd.evidence.generic_rank_target = target;
    vd.evidence.generic_rank_draws = draws;
    if (vd.index_s > 0) {
      vd.verdict = Verdict::Included;
      vd.mechanism = Mechanism::TheoremIFT;
      vd.predicted_branch_dim = vd.index_s;
      vd.evidence.reason = lattice.nodes[node].dim_fix_W == 0 ? "Fix_W is zero and s > 0"
                                                             : "linear part surjective; s > 0";
    } else {
      vd.verdict = Verdict::NotIncluded;
      vd.mechanism = Mechanism::IndexFilter;
      vd.evidence.reason = "index s = " + std::to_string(vd.index_s) + " <= 0";
    }
    out.push_back(std::move(vd));
  }
  return out;
}

InclusionVerdict case2_regularity_test(const Representation& v, const Representation& w_i,
                                       const IsotropyLattice& lattice, int node, const AnalysisOptions& opts,
                                       std::uint64_t stream) {
  const int d = lowest_degree(v, w_i, opts.degree_max);
  if (d > opts.budget.max_degree)
    throw Error(ErrorCode::DegreeCapExceeded, "lowest degree " + std::to_string(d) + " exceeds degree budget");
  return case2_with_basis(v, w_i, lattice, node, equivariant_basis(v, w_i, d, opts.budget), opts, stream);
}

std::vector<InclusionVerdict> predict_case2(const Representation& v, const Representation& w_i,
                                            const IsotropyLattice& lattice, const AnalysisOptions& opts,
                                            std::uint64_t stream) {
  std::vector<InclusionVerdict> out;
  int d = 0;
  try {
    d = lowest_degree(v, w_i, opts.degree_max);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoEquivariants) throw;
    for (int node : maximal_nodes(lattice)) {
      InclusionVerdict vd = base_verdict(lattice, node);
      if (vd.index_s <= 0) {
        vd.verdict = Verdict::NotIncluded;
        vd.mechanism = Mechanism::IndexFilter;
        vd.evidence.reason = "index s = " + std::to_string(vd.index_s) + " <= 0";
      } else {
        vd.evidence.reason = "no equivariants up to degree " + std::to_string(opts.degree_max);
      }
      out.push_back(std::move(vd));
    }
    return out;
  }
  if (d > opts.budget.max_degree)
    throw Error(ErrorCode::DegreeCapExceeded, "lowest degree " + std::to_string(d) + " exceeds degree budget");
  const EquivariantBasis basis = equivariant_basis(v, w_i, d, opts.budget);
  for (int node : maximal_nodes(lattice)) out.push_back(case2_with_basis(v, w_i, lattice, node, basis, opts, stream));
  return out;
}

Case3Result case3_reduce(const Representation& v, const Representation& w_i, const IsotypicComponent& comp,
                         const CaseTag& tag, const IsotropyLattice& lattice, const AnalysisOptions& opts,
                         std::uint64_t stream) {
  if (tag.kind != CaseKind::DeltaIntermediate)
    throw Error(ErrorCode::InvalidArgument, "case 3 reduction needs 0 < delta < r, got " + to_string(tag.kind));
  Case3Result res;
  const int matched = tag.multiplicity * comp.irr_dim;
  const Matrix all = Matrix::Identity(w_i.dim(), w_i.dim());
  const Representation w_matched = w_i.restricted(all.leftCols(matched));
  const Representation w_rest = w_i.restricted(all.rightCols(w_i.dim() - matched));

  const auto v_comps = isotypic_decompose(v, opts.split);
  const Representation u = w_i.restricted(comp.copies.empty() ? Matrix(all.leftCols(comp.irr_dim))
                                                               : Matrix(all.leftCols(comp.irr_dim)));
  Matrix u_part(v.dim(), 0);
  Rng rng = make_rng(opts.seed, {stream, 0xC3u});
  for (const auto& vc : v_comps) {
    if (vc.irr_dim != comp.irr_dim) continue;
    const Representation vu = v.restricted(vc.copies.front(), 1e-6);
    const Matrix x = random_gaussian(rng, vu.dim(), u.dim());
    if (max_abs(average_intertwiner(u, vu, x)) > 1e-6) u_part = vc.basis;
  }
  if (u_part.cols() != matched)
    throw Error(ErrorCode::InternalMismatch, "U-isotypic part of V has dimension " + std::to_string(u_part.cols()) +
                                                 ", expected " + std::to_string(matched));
  const Matrix rest_basis = orthogonal_complement(u_part, v.dim());
  const Representation v_rest = v.restricted(rest_basis);
  res.reduced_V_dim = v_rest.dim();
  res.reduced_W_dim = w_rest.dim();

  std::vector<SubgroupClass> classes;
  for (const auto& n : lattice.nodes) classes.push_back(n.subgroup_class);
  const IsotropyLattice lin_lattice = build_lattice(v, w_matched, classes);
  res.linear = predict_case1(v, w_matched, lin_lattice, opts, stream * 4 + 1);
  const IsotropyLattice red_lattice = build_lattice(v_rest, w_rest, classes);
  res.reduced = predict_case2(v_rest, w_rest, red_lattice, opts, stream * 4 + 2);

  for (int node : maximal_nodes(lattice)) {
    InclusionVerdict m = base_verdict(lattice, node);
    const InclusionVerdict* red = nullptr;
    for (const auto& r : res.reduced)
      if (r.node == node) red = &r;
    if (m.index_s <= 0) {
      m.verdict = Verdict::NotIncluded;
      m.mechanism = Mechanism::IndexFilter;
      m.evidence.reason = "index s = " + std::to_string(m.index_s) + " <= 0";
    } else if (red) {
      m.verdict = red->verdict;
      m.mechanism = red->verdict == Verdict::Included ? Mechanism::LSReduction : red->mechanism;
      m.evidence = red->evidence;
      m.evidence.reason = "reduced pair: " + red->evidence.reason;
      if (m.verdict == Verdict::Included) m.predicted_branch_dim = m.index_s;
    }
    for (const auto& l : res.linear)
      if (l.node == node) {
        m.evidence.generic_rank = l.evidence.generic_rank;
        m.evidence.generic_rank_target = l.evidence.generic_rank_target;
        m.evidence.generic_rank_draws = l.evidence.generic_rank_draws;
      }
    res.merged.push_back(std::move(m));
  }
  return res;
}

Verdict aggregate(const std::vector<Verdict>& component_verdicts) {
  bool all_in = true;
  for (Verdict v : component_verdicts) {
    if (v == Verdict::NotIncluded) return Verdict::NotIncluded;
    if (v != Verdict::Included) all_in = false;
  }
  return all_in ? Verdict::Included : Verdict::Inconclusive;
}

AnalysisReport analyze(const Representation& v, const Representation& w, const AnalysisOptions& opts,
                       const std::string& problem) {
  AnalysisReport rep;
  rep.problem = problem;
  rep.options = opts;
  rep.group_order = v.table().order();
  rep.dim_V = v.dim();
  rep.dim_W = w.dim();
  rep.lattice = build_lattice(v, w);

  const StripResult st = strip_trivial(v, w);
  rep.p = st.p;
  rep.q = st.q;
  rep.dim_V_reduced = st.V.dim();
  rep.dim_W_reduced = st.W.dim();
  rep.reduced_lattice = build_lattice(st.V, st.W);
  std::vector<SubgroupClass> classes;
  for (const auto& n : rep.reduced_lattice.nodes) classes.push_back(n.subgroup_class);
  const auto maximal = maximal_nodes(rep.reduced_lattice);

  const auto comps = isotypic_decompose(st.W, opts.split);
  const Subgroup ker_v = kernel(st.V);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& comp = comps[ci];
    const std::uint64_t stream = ci + 1;
    ComponentReport cr;
    cr.index = static_cast<int>(ci);
    cr.dim = comp.dim();
    cr.irr_dim = comp.irr_dim;
    cr.r = comp.multiplicity;
    cr.endo_dim = comp.endo_dim;
    cr.character = comp.irreducible.values;
    cr.delta = delta(st.V, comp);
    const Representation w_i = st.W.restricted(comp.basis);
    const IsotropyLattice lat_i = build_lattice(st.V, w_i, classes);
    cr.kernel_V_order = ker_v.order();
    cr.kernel_W_order = kernel(w_i).order();
    cr.quotient_order = rep.group_order / ker_v.order();

    if (auto van = vanishing_check(st.V, w_i)) {
      cr.status = "vanishing";
      cr.note = van->reason;
      for (int node : maximal) {
        InclusionVerdict vd = base_verdict(lat_i, node);
        vd.verdict = Verdict::Included;
        vd.mechanism = Mechanism::Vanishing;
        vd.predicted_branch_dim = lat_i.nodes[node].dim_fix_V;
        vd.evidence.reason = "component map vanishes identically";
        cr.verdicts.push_back(std::move(vd));
      }
      rep.components.push_back(std::move(cr));
      continue;
    }
    if (ker_v.order() > 1)
      cr.note = "ker V has order " + std::to_string(ker_v.order()) + " and lies in ker W_i; acting through G/ker V of order " +
                std::to_string(cr.quotient_order);
    try {
      cr.tag = classify_case(st.V, comp);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EndoTypeAmbiguous) throw;
      cr.status = "ambiguous";
      cr.note = e.what();
      for (int node : maximal) {
        InclusionVerdict vd = base_verdict(lat_i, node);
        vd.evidence.reason = std::string("EndoTypeAmbiguous: ") + e.what();
        cr.verdicts.push_back(std::move(vd));
      }
      rep.components.push_back(std::move(cr));
      continue;
    }
    cr.status = "analyzed";
    switch (cr.tag->kind) {
      case CaseKind::DeltaGeqR:
        cr.verdicts = predict_case1(st.V, w_i, lat_i, opts, stream);
        break;
      case CaseKind::DeltaZero:
        cr.verdicts = predict_case2(st.V, w_i, lat_i, opts, stream);
        break;
      case CaseKind::DeltaIntermediate: {
        IsotypicComponent local = comp;
        cr.case3 = case3_reduce(st.V, w_i, local, *cr.tag, lat_i, opts, stream);
        cr.verdicts = cr.case3->merged;
        break;
      }
    }
    rep.components.push_back(std::move(cr));
  }

  bool all_geq = false;
  for (const auto& c : rep.components)
    if (c.tag && c.tag->kind == CaseKind::DeltaGeqR) all_geq = true;
  for (const auto& c : rep.components)
    if (c.status != "vanishing" && (!c.tag || c.tag->kind != CaseKind::DeltaGeqR)) all_geq = false;

  for (int node : maximal) {
    const IsotropyNode& nd = rep.reduced_lattice.nodes[node];
    GlobalVerdict gv;
    gv.node = node;
    gv.sigma = nd.name;
    gv.index_s = nd.index_s;
    std::vector<Mechanism> mechs;
    for (const auto& c : rep.components)
      for (const auto& vd : c.verdicts)
        if (vd.node == node) {
          gv.component_verdicts.push_back(vd.verdict);
          mechs.push_back(vd.mechanism);
        }
    if (nd.index_s <= 0) {
      gv.verdict = Verdict::NotIncluded;
      gv.mechanism = Mechanism::IndexFilter;
    } else {
      gv.verdict = aggregate(gv.component_verdicts);
      gv.mechanism = Mechanism::Vanishing;
      for (Mechanism m : {Mechanism::TheoremIFT, Mechanism::BMSRegularity, Mechanism::LSReduction})
        for (Mechanism x : mechs)
          if (x == m) gv.mechanism = m;
      if (gv.verdict == Verdict::NotIncluded) {
        gv.mechanism = Mechanism::IndexFilter;
        for (std::size_t i = 0; i < gv.component_verdicts.size(); ++i)
          if (gv.component_verdicts[i] == Verdict::NotIncluded) gv.mechanism = mechs[i];
      } else if (gv.verdict == Verdict::Inconclusive) {
        gv.mechanism = Mechanism::None;
      }
      if (gv.verdict == Verdict::Included) gv.predicted_branch_dim = nd.index_s;
    }
    rep.verdicts.push_back(std::move(gv));
  }

  if (all_geq) {
    std::ostringstream os;
    os << "every isotypic component has delta >= r, so a G-transverse map has, near 0, zero branches of dimension "
          "s(Sigma) for each maximal isotropy type with s(Sigma) > 0:";
    bool any = false;
    for (const auto& gv : rep.verdicts)
      if (gv.verdict == Verdict::Included) {
        os << (any ? ", " : " ") << gv.sigma << " (" << gv.predicted_branch_dim << ")";
        any = true;
      }
    if (!any) os << " none";
    rep.main_statement = os.str();
  }
  return rep;
}

}  // namespace equistrat
