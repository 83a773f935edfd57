#pragma once

#include "equistrat/linalg.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace equistrat {

/// A finite group stored as a Cayley table, built by closing a set of
/// orthogonal generator matrices under multiplication. Element 0 is the
/// identity. Every element also carries a shortest word in the generators,
/// which is how representations are extended from generator images.
class GroupTable {
 public:
  int order() const { return static_cast<int>(mult_.size()); }
  int mult(int g, int h) const { return mult_[g][h]; }
  int inv(int g) const { return inv_[g]; }
  int power(int g, int k) const;
  int element_order(int g) const;
  int conjugate(int x, int g) const { return mult_[mult_[x][g]][inv_[x]]; }  // x g x^-1

  const std::vector<int>& generators() const { return generators_; }
  const std::vector<std::string>& generator_names() const { return generator_names_; }
  const Matrix& element_matrix(int g) const { return element_matrices_[g]; }
  int defining_dim() const { return static_cast<int>(element_matrices_.front().rows()); }

  /// Shortest word (indices into generators()) with element = w0 * w1 * ...
  const std::vector<int>& word(int g) const { return words_[g]; }
  std::string word_string(int g) const;

  const std::vector<std::vector<int>>& conjugacy_classes() const { return classes_; }
  int class_of(int g) const { return class_of_[g]; }
  int num_classes() const { return static_cast<int>(classes_.size()); }

  const std::string& label() const { return label_; }

  /// Index of the element equal to `m` within `tol`, or -1.
  int find_element(const Matrix& m, double tol = 1e-9) const;

 private:
  friend std::shared_ptr<const GroupTable> generate_group(const std::vector<Matrix>&, double, int,
                                                          std::vector<std::string>, std::string);

  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_;
  std::vector<int> generators_;
  std::vector<std::string> generator_names_;
  std::vector<Matrix> element_matrices_;
  std::vector<std::vector<int>> words_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
  std::vector<double> signature_weights_;
  std::vector<std::pair<double, int>> sorted_signatures_;
  std::string label_;

  double signature(const Matrix& m) const;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

constexpr int kDefaultMaxOrder = 2000;

/// Closure of the generating set. Throws NotOrthogonal when a generator
/// fails orthogonality by more than `tol`, OrderExceeded past `max_order`.
GroupPtr generate_group(const std::vector<Matrix>& gen_matrices, double tol = 1e-9,
                        int max_order = kDefaultMaxOrder, std::vector<std::string> names = {},
                        std::string label = "G");

/// Sorted list of element indices, closed under multiplication and inverse.
struct Subgroup {
  std::vector<int> elements;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int g) const;
  bool is_subset_of(const Subgroup& other) const;
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  friend auto operator<=>(const Subgroup& a, const Subgroup& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() <=> b.elements.size();
    return a.elements <=> b.elements;
  }
};

/// Subgroup generated by `gens`.
Subgroup closure(const GroupTable& g, const std::vector<int>& gens);

Subgroup trivial_subgroup(const GroupTable& g);
Subgroup whole_group(const GroupTable& g);

/// All subgroups, by join-closure from the cyclic subgroups; sorted by
/// (order, elements).
std::vector<Subgroup> enumerate_subgroups(const GroupTable& g);

struct SubgroupClass {
  Subgroup representative;       // lexicographically least member
  std::vector<Subgroup> members;  // sorted
};

/// Partition of `subs` into conjugacy classes; classes sorted by representative.
std::vector<SubgroupClass> subgroup_classes(const GroupTable& g, const std::vector<Subgroup>& subs);

Subgroup normalizer(const GroupTable& g, const Subgroup& s);

/// x s x^-1 as a sorted subgroup.
Subgroup conjugate_subgroup(const GroupTable& g, const Subgroup& s, int x);

/// Human-readable name: "1", the group label, "Z<n>(word)" for cyclic
/// classes, "<w1,w2,...>" otherwise. Words are the shortest available
/// across the whole conjugacy class.
std::string subgroup_name(const GroupTable& g, const SubgroupClass& cls);

}  // namespace equistrat
