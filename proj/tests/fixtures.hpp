#pragma once

// Small hand-built posets shared by the test binaries.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "eigenposet/gposet.hpp"

namespace eigenposet::testing {

inline GPoset chain(int n) {
  std::vector<Payload> e;
  std::vector<char> rel(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    e.push_back(Payload::point("c" + std::to_string(i)));
    for (int j = i; j < n; ++j) rel[static_cast<std::size_t>(i) * n + j] = 1;
  }
  return GPoset(nullptr, e, rel, {}, PosetTag::Generic);
}

inline GPoset antichain(int n) {
  std::vector<Payload> e;
  std::vector<char> rel(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    e.push_back(Payload::point("a" + std::to_string(i)));
    rel[static_cast<std::size_t>(i) * n + i] = 1;
  }
  return GPoset(nullptr, e, rel, {}, PosetTag::Generic);
}

/// Nonempty faces of the simplicial complex generated by `facets`, ordered by inclusion.
inline GPoset face_poset(const std::vector<std::vector<int>>& facets) {
  std::set<std::vector<int>> faces;
  for (const auto& f : facets) {
    const int k = static_cast<int>(f.size());
    for (int mask = 1; mask < (1 << k); ++mask) {
      std::vector<int> face;
      for (int i = 0; i < k; ++i) {
        if (mask & (1 << i)) face.push_back(f[i]);
      }
      faces.insert(face);
    }
  }
  const std::vector<std::vector<int>> list(faces.begin(), faces.end());
  const int n = static_cast<int>(list.size());
  std::vector<Payload> e;
  std::vector<char> rel(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    std::string label = "f";
    for (int v : list[i]) label += "." + std::to_string(v);
    e.push_back(Payload::point(label));
    for (int j = 0; j < n; ++j) {
      rel[static_cast<std::size_t>(i) * n + j] =
          std::includes(list[j].begin(), list[j].end(), list[i].begin(), list[i].end());
    }
  }
  return GPoset(nullptr, e, rel, {}, PosetTag::Generic);
}

inline std::vector<int> all_of(const GPoset& p) {
  std::vector<int> out(p.size());
  for (int i = 0; i < p.size(); ++i) out[i] = i;
  return out;
}

inline std::vector<int> non_minimal(const GPoset& p) {
  const auto minimal = p.minimal_elements();
  std::vector<int> out;
  for (int x = 0; x < p.size(); ++x) {
    if (!std::binary_search(minimal.begin(), minimal.end(), x)) out.push_back(x);
  }
  return out;
}

}  // namespace eigenposet::testing
