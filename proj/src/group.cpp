#include "equistrat/group.hpp"

#include "equistrat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>

namespace equistrat {

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto w : b) h = (h ^ std::hash<std::uint64_t>{}(w)) * 1099511628211ull;
    return h;
  }
};

std::vector<int> from_bits(const Bits& b, int order) {
  std::vector<int> out;
  for (int e = 0; e < order; ++e)
    if (b[e / 64] >> (e % 64) & 1ull) out.push_back(e);
  return out;
}

bool bits_subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a[i] & ~b[i]) != 0) return false;
  return true;
}

Bits closure_bits(const GroupTable& g, const std::vector<int>& gens) {
  const int n = g.order();
  Bits in((n + 63) / 64, 0);
  std::vector<int> queue{0};
  in[0] |= 1ull;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int x = queue[qi];
    for (int h : gens) {
      const int y = g.mult(x, h);
      if (!(in[y / 64] >> (y % 64) & 1ull)) {
        in[y / 64] |= (1ull << (y % 64));
        queue.push_back(y);
      }
    }
  }
  return in;
}

}  // namespace

double GroupTable::signature(const Matrix& m) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) s += signature_weights_[static_cast<std::size_t>(i)] * m.data()[i];
  return s;
}

int GroupTable::find_element(const Matrix& m, double tol) const {
  if (m.rows() != defining_dim() || m.cols() != defining_dim()) return -1;
  double wsum = 0.0;
  for (double w : signature_weights_) wsum += std::abs(w);
  const double s = signature(m);
  const double slack = 4.0 * tol * wsum;
  auto lo = std::lower_bound(sorted_signatures_.begin(), sorted_signatures_.end(), std::make_pair(s - slack, -1));
  for (auto it = lo; it != sorted_signatures_.end() && it->first <= s + slack; ++it)
    if (max_abs(element_matrices_[it->second] - m) <= tol) return it->second;
  return -1;
}

int GroupTable::power(int g, int k) const {
  int x = 0;
  for (int i = 0; i < k; ++i) x = mult_[x][g];
  return x;
}

int GroupTable::element_order(int g) const {
  int k = 1;
  for (int x = g; x != 0; x = mult_[x][g]) ++k;
  return k;
}

std::string GroupTable::word_string(int g) const {
  const auto& w = words_[g];
  if (w.empty()) return "1";
  bool short_names = std::all_of(generator_names_.begin(), generator_names_.end(),
                                 [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty() && !short_names) out += "*";
    out += generator_names_[w[i]];
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

GroupPtr generate_group(const std::vector<Matrix>& gen_matrices, double tol, int max_order,
                        std::vector<std::string> names, std::string label) {
  if (gen_matrices.empty()) throw Error(ErrorCode::InvalidArgument, "no generators given");
  const auto n = gen_matrices.front().rows();
  for (std::size_t k = 0; k < gen_matrices.size(); ++k) {
    const Matrix& m = gen_matrices[k];
    if (m.rows() != n || m.cols() != n)
      throw Error(ErrorCode::InvalidArgument, "generator " + std::to_string(k) + " has inconsistent shape");
    if (!is_orthogonal(m, tol))
      throw Error(ErrorCode::NotOrthogonal, "generator " + std::to_string(k) + " deviates from orthogonality by " +
                                                std::to_string(max_abs(m.transpose() * m - Matrix::Identity(n, n))));
  }
  if (names.empty())
    for (std::size_t k = 0; k < gen_matrices.size(); ++k) names.push_back("g" + std::to_string(k + 1));
  if (names.size() != gen_matrices.size())
    throw Error(ErrorCode::InvalidArgument, "generator name count does not match generator count");

  auto group = std::make_shared<GroupTable>();
  GroupTable& gt = *group;
  gt.generator_names_ = std::move(names);
  gt.label_ = std::move(label);

  Rng rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> ud(0.5, 1.5);
  gt.signature_weights_.resize(static_cast<std::size_t>(n * n));
  for (auto& w : gt.signature_weights_) w = ud(rng);

  gt.element_matrices_.push_back(Matrix::Identity(n, n));
  gt.words_.push_back({});
  gt.sorted_signatures_.push_back({gt.signature(gt.element_matrices_[0]), 0});

  auto lookup = [&](const Matrix& m) {
    return gt.find_element(m, tol);
  };
  auto insert = [&](Matrix m, std::vector<int> word) {
    const int idx = static_cast<int>(gt.element_matrices_.size());
    const double s = gt.signature(m);
    auto pos = std::lower_bound(gt.sorted_signatures_.begin(), gt.sorted_signatures_.end(), std::make_pair(s, idx));
    gt.sorted_signatures_.insert(pos, {s, idx});
    gt.element_matrices_.push_back(std::move(m));
    gt.words_.push_back(std::move(word));
    return idx;
  };

  for (std::size_t qi = 0; qi < gt.element_matrices_.size(); ++qi) {
    for (std::size_t k = 0; k < gen_matrices.size(); ++k) {
      Matrix prod = gt.element_matrices_[qi] * gen_matrices[k];
      if (lookup(prod) >= 0) continue;
      if (static_cast<int>(gt.element_matrices_.size()) >= max_order)
        throw Error(ErrorCode::OrderExceeded, "closure exceeds max_order = " + std::to_string(max_order));
      auto w = gt.words_[qi];
      w.push_back(static_cast<int>(k));
      insert(std::move(prod), std::move(w));
    }
  }

  const int order = static_cast<int>(gt.element_matrices_.size());
  gt.mult_.assign(order, std::vector<int>(order, -1));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const int c = lookup(gt.element_matrices_[a] * gt.element_matrices_[b]);
      if (c < 0) throw Error(ErrorCode::InternalMismatch, "product escaped closure; tolerance too tight");
      gt.mult_[a][b] = c;
    }
  gt.inv_.assign(order, -1);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (gt.mult_[a][b] == 0) {
        gt.inv_[a] = b;
        break;
      }
  for (const auto& m : gen_matrices) gt.generators_.push_back(lookup(m));

  gt.class_of_.assign(order, -1);
  for (int a = 0; a < order; ++a) {
    if (gt.class_of_[a] >= 0) continue;
    const int cls = static_cast<int>(gt.classes_.size());
    std::set<int> members;
    for (int x = 0; x < order; ++x) members.insert(gt.conjugate(x, a));
    for (int m : members) gt.class_of_[m] = cls;
    gt.classes_.emplace_back(members.begin(), members.end());
  }
  return group;
}

bool Subgroup::contains(int g) const { return std::binary_search(elements.begin(), elements.end(), g); }

bool Subgroup::is_subset_of(const Subgroup& other) const {
  return std::includes(other.elements.begin(), other.elements.end(), elements.begin(), elements.end());
}

Subgroup closure(const GroupTable& g, const std::vector<int>& gens) {
  return Subgroup{from_bits(closure_bits(g, gens), g.order())};
}

Subgroup trivial_subgroup(const GroupTable&) { return Subgroup{{0}}; }

Subgroup whole_group(const GroupTable& g) {
  Subgroup s;
  s.elements.resize(g.order());
  std::iota(s.elements.begin(), s.elements.end(), 0);
  return s;
}

std::vector<Subgroup> enumerate_subgroups(const GroupTable& g) {
  const int n = g.order();
  struct Entry {
    Bits bits;
    std::vector<int> gens;
  };
  std::vector<Entry> all;
  std::unordered_map<Bits, int, BitsHash> seen;

  std::vector<int> cyclic_gens;
  for (int e = 0; e < n; ++e) {
    Bits b = closure_bits(g, {e});
    if (seen.emplace(b, static_cast<int>(all.size())).second) {
      all.push_back({b, {e}});
      cyclic_gens.push_back(e);
    }
  }
  std::vector<int> frontier(all.size());
  std::iota(frontier.begin(), frontier.end(), 0);
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int si : frontier) {
      for (std::size_t ci = 0; ci < cyclic_gens.size(); ++ci) {
        if (bits_subset(all[ci].bits, all[si].bits)) continue;
        std::vector<int> gens = all[si].gens;
        gens.push_back(cyclic_gens[ci]);
        Bits b = closure_bits(g, gens);
        if (seen.emplace(b, static_cast<int>(all.size())).second) {
          next.push_back(static_cast<int>(all.size()));
          all.push_back({std::move(b), std::move(gens)});
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  out.reserve(all.size());
  for (const auto& e : all) out.push_back(Subgroup{from_bits(e.bits, n)});
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup conjugate_subgroup(const GroupTable& g, const Subgroup& s, int x) {
  Subgroup out;
  out.elements.reserve(s.elements.size());
  for (int e : s.elements) out.elements.push_back(g.conjugate(x, e));
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

std::vector<SubgroupClass> subgroup_classes(const GroupTable& g, const std::vector<Subgroup>& subs) {
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < subs.size(); ++i) index.emplace(subs[i].elements, static_cast<int>(i));
  std::vector<bool> done(subs.size(), false);
  std::vector<SubgroupClass> out;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (done[i]) continue;
    std::set<Subgroup> members;
    for (int x = 0; x < g.order(); ++x) members.insert(conjugate_subgroup(g, subs[i], x));
    for (const auto& m : members) {
      auto it = index.find(m.elements);
      if (it != index.end()) done[it->second] = true;
    }
    SubgroupClass cls;
    cls.members.assign(members.begin(), members.end());
    cls.representative = cls.members.front();
    out.push_back(std::move(cls));
  }
  std::sort(out.begin(), out.end(),
            [](const SubgroupClass& a, const SubgroupClass& b) { return a.representative < b.representative; });
  return out;
}

Subgroup normalizer(const GroupTable& g, const Subgroup& s) {
  Subgroup out;
  for (int x = 0; x < g.order(); ++x)
    if (conjugate_subgroup(g, s, x) == s) out.elements.push_back(x);
  return out;
}

namespace {

// Ordering key for element words: shorter first, then by string.
std::pair<std::size_t, std::string> word_key(const GroupTable& g, int e) {
  return {g.word(e).size(), g.word_string(e)};
}

}  // namespace

std::string subgroup_name(const GroupTable& g, const SubgroupClass& cls) {
  const auto& rep = cls.representative;
  if (rep.order() == 1) return "1";
  if (rep.order() == g.order()) return g.label();

  const int n = rep.order();
  std::optional<std::pair<std::size_t, std::string>> best_cyclic;
  for (const auto& m : cls.members)
    for (int e : m.elements)
      if (g.element_order(e) == n) {
        auto key = word_key(g, e);
        if (!best_cyclic || key < *best_cyclic) best_cyclic = key;
      }
  if (best_cyclic) return "Z" + std::to_string(n) + "(" + best_cyclic->second + ")";

  std::optional<std::pair<std::size_t, std::string>> best;
  for (const auto& m : cls.members) {
    std::vector<int> elems = m.elements;
    std::sort(elems.begin(), elems.end(), [&](int a, int b) { return word_key(g, a) < word_key(g, b); });
    std::vector<int> gens;
    Subgroup current = trivial_subgroup(g);
    std::size_t total = 0;
    std::string text;
    for (int e : elems) {
      if (current.contains(e)) continue;
      gens.push_back(e);
      current = closure(g, gens);
      total += g.word(e).size();
      text += (text.empty() ? "" : ",") + g.word_string(e);
      if (current.order() == n) break;
    }
    std::pair<std::size_t, std::string> key{total, text};
    if (!best || key < *best) best = key;
  }
  return "<" + best->second + ">";
}

}  // namespace equistrat
