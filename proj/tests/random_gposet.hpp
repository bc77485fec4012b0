#pragma once

// Random small G-posets for property tests. Elements sit on levels, the group
// is generated by random level-preserving permutations, and the order is the
// transitive closure of a union of orbits of level-increasing pairs, so
// every group element is an order automorphism.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "eigenposet/errors.hpp"
#include "eigenposet/gposet.hpp"

namespace eigenposet::testing {

struct RandomInstance {
  GPoset p;
  std::vector<int> q;          // G-stable upper ideal meeting every Q_{>=x}
  std::vector<int> q_minimal;  // G-stable ideal whose complement is minimal elements
};

inline Perm random_level_perm(std::mt19937_64& rng, const std::vector<std::vector<int>>& levels, int n) {
  Perm perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (const auto& level : levels) {
    if (level.size() < 2 || rng() % 3 == 0) continue;
    std::vector<int> image = level;
    if (rng() % 2) {
      std::shuffle(image.begin(), image.end(), rng);
    } else {
      std::rotate(image.begin(), image.begin() + 1, image.end());  // a single cycle keeps orders small
    }
    for (std::size_t i = 0; i < level.size(); ++i) perm[level[i]] = image[i];
  }
  return perm;
}

inline std::vector<int> orbit_closure(const GPoset& p, std::vector<int> seed, bool up_close) {
  std::vector<char> in(p.size(), 0);
  for (int x : seed) in[x] = 1;
  if (up_close) {
    for (int x = 0; x < p.size(); ++x) {
      if (!in[x]) continue;
      for (int y = 0; y < p.size(); ++y) {
        if (p.leq(x, y)) in[y] = 1;
      }
    }
  }
  std::vector<int> out;
  for (int x = 0; x < p.size(); ++x) {
    if (!in[x]) continue;
    for (int y : p.orbit(x)) out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline RandomInstance random_instance(std::mt19937_64& rng, int max_elements = 12) {
  while (true) {
    const int level_count = 2 + static_cast<int>(rng() % 3);
    std::vector<std::vector<int>> levels(level_count);
    std::vector<int> level_of;
    int n = 0;
    for (int l = 0; l < level_count; ++l) {
      const int width = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < width && n < max_elements; ++k) {
        levels[l].push_back(n++);
        level_of.push_back(l);
      }
    }
    if (n == 0) continue;

    std::vector<Perm> gens;
    const int gen_count = static_cast<int>(rng() % 3);
    for (int k = 0; k < gen_count; ++k) gens.push_back(random_level_perm(rng, levels, n));
    std::vector<Perm> elements;
    std::shared_ptr<const FiniteGroup> group;
    try {
      group = FiniteGroup::generated_by(gens, &elements, 200);
    } catch (const BudgetExceeded&) {
      continue;
    }
    if (gens.empty()) {
      elements.assign(1, Perm(n));
      std::iota(elements[0].begin(), elements[0].end(), 0);
    }

    std::vector<char> rel(static_cast<std::size_t>(n) * n, 0);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (level_of[y] <= level_of[x] || rng() % 100 >= 35) continue;
        for (const auto& g : elements) rel[static_cast<std::size_t>(g[x]) * n + g[y]] = 1;
      }
    }
    transitive_closure(rel, n);
    std::vector<Payload> payloads;
    for (int x = 0; x < n; ++x) payloads.push_back(Payload::point("r" + std::to_string(x)));
    GPoset p(group, std::move(payloads), std::move(rel), elements, PosetTag::Generic);

    std::vector<int> seed = p.maximal_elements();
    for (int x = 0; x < n; ++x) {
      if (rng() % 4 == 0) seed.push_back(x);
    }
    RandomInstance inst{p, orbit_closure(p, seed, true), {}};

    // Drop whole orbits of non-isolated minimal elements.
    std::vector<char> dropped(n, 0);
    for (int m : p.minimal_elements()) {
      bool isolated = true;
      for (int y = 0; y < n; ++y) isolated = isolated && !p.less(m, y);
      if (isolated || dropped[m] || rng() % 2) continue;
      for (int y : p.orbit(m)) dropped[y] = 1;
    }
    for (int x = 0; x < n; ++x) {
      if (!dropped[x]) inst.q_minimal.push_back(x);
    }
    return inst;
  }
}

}  // namespace eigenposet::testing
