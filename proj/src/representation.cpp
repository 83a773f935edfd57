#include "equistrat/representation.hpp"

#include "equistrat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace equistrat {

Representation Representation::from_generator_images(GroupPtr group, const std::vector<Matrix>& gen_images,
                                                     double tol) {
  const auto& gens = group->generators();
  if (gen_images.size() != gens.size())
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(gens.size()) + " generator images, got " +
                                                std::to_string(gen_images.size()));
  const auto n = gen_images.empty() ? 0 : gen_images.front().rows();
  for (std::size_t k = 0; k < gen_images.size(); ++k) {
    if (gen_images[k].rows() != n || gen_images[k].cols() != n)
      throw Error(ErrorCode::InvalidArgument, "generator image " + std::to_string(k) + " has inconsistent shape");
    if (!is_orthogonal(gen_images[k], tol))
      throw Error(ErrorCode::NotOrthogonal, "generator image " + std::to_string(k) + " is not orthogonal");
  }
  std::vector<Matrix> mats(group->order());
  for (int g = 0; g < group->order(); ++g) {
    Matrix m = Matrix::Identity(n, n);
    for (int k : group->word(g)) m = m * gen_images[k];
    mats[g] = std::move(m);
  }
  return from_element_matrices(std::move(group), std::move(mats), tol);
}

Representation Representation::from_element_matrices(GroupPtr group, std::vector<Matrix> mats, double tol) {
  if (static_cast<int>(mats.size()) != group->order())
    throw Error(ErrorCode::InvalidArgument, "one matrix per group element required");
  Representation r;
  r.dim_ = static_cast<int>(mats.front().rows());
  const auto& gens = group->generators();
  if (max_abs(mats[0] - Matrix::Identity(r.dim_, r.dim_)) > tol)
    throw Error(ErrorCode::InvalidArgument, "identity does not act trivially");
  for (int g = 0; g < group->order(); ++g) {
    if (!is_orthogonal(mats[g], tol))
      throw Error(ErrorCode::NotOrthogonal, "element " + group->word_string(g) + " is not orthogonal");
    for (int h : gens) {
      const double resid = max_abs(mats[group->mult(g, h)] - mats[g] * mats[h]);
      if (resid > tol * std::max(1.0, static_cast<double>(r.dim_)))
        throw Error(ErrorCode::InvalidArgument, "generator images violate a group relation (residual " +
                                                    std::to_string(resid) + " at " + group->word_string(g) + ")");
    }
  }
  r.group_ = std::move(group);
  r.mats_ = std::move(mats);
  return r;
}

Representation Representation::trivial(GroupPtr group, int dim) {
  Representation r;
  r.dim_ = dim;
  r.mats_.assign(group->order(), Matrix::Identity(dim, dim));
  r.group_ = std::move(group);
  return r;
}

Representation Representation::defining(GroupPtr group) {
  Representation r;
  r.dim_ = group->defining_dim();
  for (int g = 0; g < group->order(); ++g) r.mats_.push_back(group->element_matrix(g));
  r.group_ = std::move(group);
  return r;
}

Representation Representation::direct_sum(const Representation& a, const Representation& b) {
  if (a.group_ != b.group_) throw Error(ErrorCode::InvalidArgument, "direct sum over different groups");
  Representation r;
  r.group_ = a.group_;
  r.dim_ = a.dim_ + b.dim_;
  r.mats_.reserve(a.mats_.size());
  for (std::size_t g = 0; g < a.mats_.size(); ++g) {
    Matrix m = Matrix::Zero(r.dim_, r.dim_);
    m.topLeftCorner(a.dim_, a.dim_) = a.mats_[g];
    m.bottomRightCorner(b.dim_, b.dim_) = b.mats_[g];
    r.mats_.push_back(std::move(m));
  }
  return r;
}

Representation Representation::restricted(const Matrix& basis, double tol) const {
  Representation r;
  r.group_ = group_;
  r.dim_ = static_cast<int>(basis.cols());
  r.mats_.reserve(mats_.size());
  for (const auto& m : mats_) {
    Matrix img = m * basis;
    Matrix coords = basis.transpose() * img;
    if (max_abs(img - basis * coords) > tol) throw Error(ErrorCode::InvalidArgument, "subspace is not invariant");
    r.mats_.push_back(std::move(coords));
  }
  return r;
}

Character character(const Representation& rep) {
  Character c;
  c.group = rep.group();
  for (const auto& cls : rep.table().conjugacy_classes()) c.values.push_back(rep(cls.front()).trace());
  return c;
}

double char_inner_raw(const Character& x, const Character& y) {
  if (x.group != y.group) throw Error(ErrorCode::InvalidArgument, "characters of different groups");
  double s = 0.0;
  const auto& classes = x.group->conjugacy_classes();
  for (std::size_t c = 0; c < classes.size(); ++c) s += static_cast<double>(classes[c].size()) * x.values[c] * y.values[c];
  return s / x.group->order();
}

int char_inner(const Character& x, const Character& y, double tol_round) {
  const double v = char_inner_raw(x, y);
  const double r = std::round(v);
  if (std::abs(v - r) >= tol_round)
    throw Error(ErrorCode::NotIntegral, "character inner product " + std::to_string(v) + " is not an integer");
  return static_cast<int>(r);
}

Subgroup kernel(const Representation& rep, double tol) {
  Subgroup k;
  const Matrix id = Matrix::Identity(rep.dim(), rep.dim());
  for (int g = 0; g < rep.table().order(); ++g)
    if (max_abs(rep(g) - id) <= tol) k.elements.push_back(g);
  return k;
}

bool is_faithful(const Representation& rep, double tol) { return kernel(rep, tol).order() == 1; }

int fix_dimension(const Representation& rep, const Subgroup& s) {
  double sum = 0.0;
  for (int g : s.elements) sum += rep(g).trace();
  const double v = sum / s.order();
  const double r = std::round(v);
  if (std::abs(v - r) >= kRoundTol)
    throw Error(ErrorCode::NotIntegral, "fixed-point dimension " + std::to_string(v) + " is not an integer");
  return static_cast<int>(r);
}

Matrix fix_projector(const Representation& rep, const Subgroup& s) {
  Matrix p = Matrix::Zero(rep.dim(), rep.dim());
  for (int g : s.elements) p += rep(g);
  return p / s.order();
}

Matrix fix_basis(const Representation& rep, const Subgroup& s) {
  const int expected = fix_dimension(rep, s);
  if (expected == 0) return Matrix(rep.dim(), 0);
  Matrix b = column_space(fix_projector(rep, s), 1e-6);
  if (b.cols() != expected)
    throw Error(ErrorCode::InternalMismatch, "projector rank " + std::to_string(b.cols()) +
                                                 " disagrees with character dimension " + std::to_string(expected));
  if (expected == rep.dim()) return Matrix::Identity(rep.dim(), rep.dim());
  return b;
}

Matrix average_intertwiner(const Representation& a, const Representation& b, const Matrix& x) {
  Matrix acc = Matrix::Zero(b.dim(), a.dim());
  for (int g = 0; g < a.table().order(); ++g) acc += b(g) * x * a(g).transpose();
  return acc / a.table().order();
}

namespace {

Matrix averaged_symmetric(const Representation& rep, Rng& rng) {
  const int n = rep.dim();
  Matrix s = random_gaussian(rng, n, n);
  s = 0.5 * (s + s.transpose());
  Matrix acc = Matrix::Zero(n, n);
  for (const auto& m : rep.matrices()) acc += m * s * m.transpose();
  acc /= static_cast<double>(rep.matrices().size());
  return 0.5 * (acc + acc.transpose());
}

// Splits span(basis) into irreducible invariant blocks.
void split_block(const Representation& ambient, const Matrix& basis, const SplitOptions& opts, Rng& rng,
                 std::vector<Matrix>& out) {
  if (basis.cols() <= 1) {
    out.push_back(basis);
    return;
  }
  const Representation sub = ambient.restricted(basis);
  for (int attempt = 0; attempt < opts.retry_budget; ++attempt) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(averaged_symmetric(sub, rng));
    const Vector& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<int> cuts{0};
    bool ambiguous = false;
    for (Eigen::Index i = 1; i < ev.size(); ++i) {
      const double d = (ev(i) - ev(i - 1)) / scale;
      if (d > opts.gap) {
        if (d < 1e3 * opts.gap) ambiguous = true;
        cuts.push_back(static_cast<int>(i));
      }
    }
    if (ambiguous) continue;
    if (cuts.size() == 1) {
      out.push_back(basis);
      return;
    }
    cuts.push_back(static_cast<int>(ev.size()));
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      Matrix local = es.eigenvectors().middleCols(cuts[c], cuts[c + 1] - cuts[c]);
      split_block(ambient, basis * local, opts, rng, out);
    }
    return;
  }
  throw Error(ErrorCode::SplitFailed, "eigenvalue clusters stayed ambiguous after " +
                                          std::to_string(opts.retry_budget) + " attempts");
}

bool isomorphic(const Representation& a, const Representation& b, Rng& rng) {
  if (a.dim() != b.dim()) return false;
  Matrix x = random_gaussian(rng, b.dim(), a.dim());
  return max_abs(average_intertwiner(a, b, x)) > 1e-6;
}

}  // namespace

std::vector<IsotypicComponent> isotypic_decompose(const Representation& rep, const SplitOptions& opts) {
  std::vector<IsotypicComponent> comps;
  if (rep.dim() == 0) return comps;
  Rng rng(opts.seed);
  std::vector<Matrix> blocks;
  split_block(rep, Matrix::Identity(rep.dim(), rep.dim()), opts, rng, blocks);

  std::vector<Representation> reps;
  for (const auto& b : blocks) {
    Representation r = rep.restricted(b, 1e-6);
    bool placed = false;
    for (std::size_t c = 0; c < comps.size() && !placed; ++c) {
      if (isomorphic(reps[c], r, rng)) {
        comps[c].copies.push_back(b);
        placed = true;
      }
    }
    if (!placed) {
      IsotypicComponent comp;
      comp.copies.push_back(b);
      comp.irr_dim = static_cast<int>(b.cols());
      comp.irreducible = character(r);
      comp.endo_dim = char_inner(comp.irreducible, comp.irreducible);
      comps.push_back(std::move(comp));
      reps.push_back(std::move(r));
    }
  }
  for (auto& c : comps) {
    c.multiplicity = static_cast<int>(c.copies.size());
    c.basis.resize(rep.dim(), c.multiplicity * c.irr_dim);
    for (int k = 0; k < c.multiplicity; ++k) c.basis.middleCols(k * c.irr_dim, c.irr_dim) = c.copies[k];
  }
  auto key = [](const IsotypicComponent& c) {
    std::vector<long long> k{c.irr_dim};
    for (double v : c.irreducible.values) k.push_back(std::llround(v * 1e6));
    return k;
  };
  std::stable_sort(comps.begin(), comps.end(), [&](const auto& a, const auto& b) {
    auto ka = key(a), kb = key(b);
    if (ka[0] != kb[0]) return ka[0] < kb[0];
    return std::lexicographical_compare(kb.begin() + 1, kb.end(), ka.begin() + 1, ka.end());
  });
  return comps;
}

int delta(const Representation& v, const IsotypicComponent& u) { return char_inner(character(v), u.irreducible); }

}  // namespace equistrat
