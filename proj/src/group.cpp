#include "eigenposet/group.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "eigenposet/errors.hpp"

namespace eigenposet {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::string name)
    : table_(std::move(table)), name_(std::move(name)) {
  const int n = order();
  if (n == 0) throw InvalidArgument("group table is empty");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table_[a].size()) != n) throw InvalidArgument("group table is not square");
    if (table_[0][a] != a || table_[a][0] != a) throw InvalidArgument("element 0 is not the identity");
    for (int b = 0; b < n; ++b) {
      if (table_[a][b] == 0) inverse_[a] = b;
    }
    if (inverse_[a] < 0) throw InvalidArgument("group table lacks an inverse");
  }
  class_of_.assign(n, -1);
  for (int g = 0; g < n; ++g) {
    if (class_of_[g] >= 0) continue;
    const int id = static_cast<int>(classes_.size());
    std::vector<int> cls;
    for (int x = 0; x < n; ++x) {
      const int c = conjugate(x, g);
      if (class_of_[c] < 0) {
        class_of_[c] = id;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes_.push_back(std::move(cls));
  }
}

std::shared_ptr<const FiniteGroup> FiniteGroup::trivial() {
  return std::make_shared<const FiniteGroup>(std::vector<std::vector<int>>{{0}}, "1");
}

std::shared_ptr<const FiniteGroup> FiniteGroup::generated_by(const std::vector<Perm>& generators,
                                                             std::vector<Perm>* elements_out,
                                                             std::size_t budget) {
  if (generators.empty()) {
    if (elements_out) elements_out->clear();
    return trivial();
  }
  const std::size_t degree = generators.front().size();
  Perm id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<int>(i);
  std::vector<Perm> elements{id};
  std::map<Perm, int> index{{id, 0}};
  const auto compose = [](const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
  };
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& s : generators) {
      Perm next = compose(s, elements[head]);
      if (index.count(next)) continue;
      if (elements.size() >= budget) throw BudgetExceeded("permutation group exceeds budget");
      index.emplace(next, static_cast<int>(elements.size()));
      elements.push_back(std::move(next));
    }
  }
  const int n = static_cast<int>(elements.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table[a][b] = index.at(compose(elements[a], elements[b]));
  }
  if (elements_out) *elements_out = elements;
  return std::make_shared<const FiniteGroup>(std::move(table), "perm");
}

std::shared_ptr<const FiniteGroup> FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order();
  const int nb = b.order();
  std::vector<std::vector<int>> table(na * nb, std::vector<int>(na * nb));
  for (int x = 0; x < na * nb; ++x) {
    for (int y = 0; y < na * nb; ++y) {
      table[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    }
  }
  return std::make_shared<const FiniteGroup>(std::move(table), a.name() + "x" + b.name());
}

std::vector<int> FiniteGroup::centralizer(int g) const {
  std::vector<int> out;
  for (int x = 0; x < order(); ++x) {
    if (mul(x, g) == mul(g, x)) out.push_back(x);
  }
  return out;
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() || elements.front() != g.identity()) {
    throw NotASubgroup("subset does not contain the identity");
  }
  std::vector<int> local(g.order(), -1);
  for (std::size_t i = 0; i < elements.size(); ++i) local[elements[i]] = static_cast<int>(i);
  const int n = static_cast<int>(elements.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int c = local[g.mul(elements[a], elements[b])];
      if (c < 0) throw NotASubgroup("subset is not closed under multiplication");
      table[a][b] = c;
    }
  }
  return Subgroup{std::make_shared<const FiniteGroup>(std::move(table), "sub"), std::move(elements)};
}

}  // namespace eigenposet
