#pragma once

// Abstract finite groups given by a multiplication table. Every G-poset
// records its acting group this way, whether the group came from matrices,
// permutations, or a direct product.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace eigenposet {

using Perm = std::vector<int>;

class FiniteGroup {
 public:
  /// table[a][b] = index of a*b. Element 0 must be the identity.
  explicit FiniteGroup(std::vector<std::vector<int>> table, std::string name = {});

  static std::shared_ptr<const FiniteGroup> trivial();
  /// Closure of the given permutations under composition, (a*b)(x) = a(b(x)).
  static std::shared_ptr<const FiniteGroup> generated_by(const std::vector<Perm>& generators,
                                                         std::vector<Perm>* elements, std::size_t budget);
  static std::shared_ptr<const FiniteGroup> direct_product(const FiniteGroup& a, const FiniteGroup& b);

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return 0; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  int conjugate(int x, int g) const { return mul(mul(x, g), inv(x)); }
  const std::string& name() const { return name_; }

  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int class_of(int g) const { return class_of_[g]; }
  std::vector<int> centralizer(int g) const;

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
  std::string name_;
};

/// A subgroup H <= G realised as its own FiniteGroup; embedding[h] is the
/// index in G of element h of H, with embedding[0] the identity.
struct Subgroup {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<int> embedding;
};

/// Throws NotASubgroup unless `elements` is closed under multiplication and contains the identity.
Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> elements);

}  // namespace eigenposet
