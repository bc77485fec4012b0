#include "eigenposet/gposet.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "eigenposet/errors.hpp"

namespace eigenposet {

std::string to_string(PosetTag tag) {
  switch (tag) {
    case PosetTag::S: return "S";
    case PosetTag::Stilde: return "Stilde";
    case PosetTag::Sprime: return "Sprime";
    case PosetTag::Tprime: return "Tprime";
    case PosetTag::Uprime: return "Uprime";
    case PosetTag::Suspension: return "Suspension";
    case PosetTag::Wedge: return "Wedge";
    case PosetTag::Extension: return "Extension";
    case PosetTag::Product: return "Product";
    case PosetTag::Subposet: return "Subposet";
    case PosetTag::Generic: return "Generic";
  }
  return "?";
}

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::Isomorphic: return "isomorphic";
    case IsoVerdict::NotIsomorphic: return "not-isomorphic";
    case IsoVerdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

// ---------------------------------------------------------------- Payload

Payload Payload::space(Subspace s) {
  Payload p;
  p.kind_ = Kind::Space;
  p.key_ = s.key();
  p.space_ = std::move(s);
  return p;
}

Payload Payload::point(std::string label) {
  Payload p;
  p.kind_ = Kind::Point;
  p.key_ = "<" + label + ">";
  return p;
}

Payload Payload::pair(const Payload& a, const Payload& b) {
  Payload p;
  p.kind_ = Kind::Pair;
  p.key_ = "(" + a.key() + "," + b.key() + ")";
  p.parts_ = {a, b};
  return p;
}

// ---------------------------------------------------------------- GPoset

GPoset::GPoset(std::shared_ptr<const FiniteGroup> group, std::vector<Payload> elements, std::vector<char> leq,
               std::vector<Perm> action, PosetTag tag)
    : group_(group ? std::move(group) : FiniteGroup::trivial()),
      elements_(std::move(elements)),
      leq_(std::move(leq)),
      action_(std::move(action)),
      tag_(tag) {
  const std::size_t n = elements_.size();
  if (leq_.size() != n * n) throw InvalidArgument("order relation has the wrong size");
  if (action_.empty()) {
    Perm id(n);
    std::iota(id.begin(), id.end(), 0);
    action_.assign(group_->order(), id);
  }
  if (static_cast<int>(action_.size()) != group_->order()) throw InvalidArgument("action needs one permutation per group element");
  for (const auto& perm : action_) {
    if (perm.size() != n) throw InvalidArgument("action permutation has the wrong size");
  }
}

int GPoset::find(const std::string& key) const {
  for (int i = 0; i < size(); ++i) {
    if (elements_[i].key() == key) return i;
  }
  return -1;
}

std::vector<int> GPoset::minimal_elements() const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x) {
    bool minimal = true;
    for (int y = 0; y < size() && minimal; ++y) minimal = !less(y, x);
    if (minimal) out.push_back(x);
  }
  return out;
}

std::vector<int> GPoset::maximal_elements() const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x) {
    bool maximal = true;
    for (int y = 0; y < size() && maximal; ++y) maximal = !less(x, y);
    if (maximal) out.push_back(x);
  }
  return out;
}

std::optional<int> GPoset::unique_minimum() const {
  for (int x = 0; x < size(); ++x) {
    bool below_all = true;
    for (int y = 0; y < size() && below_all; ++y) below_all = leq(x, y);
    if (below_all) return x;
  }
  return std::nullopt;
}

std::optional<int> GPoset::unique_maximum() const {
  for (int x = 0; x < size(); ++x) {
    bool above_all = true;
    for (int y = 0; y < size() && above_all; ++y) above_all = leq(y, x);
    if (above_all) return x;
  }
  return std::nullopt;
}

std::vector<int> GPoset::orbit(int x) const {
  std::vector<int> out;
  for (const auto& perm : action_) out.push_back(perm[x]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> GPoset::stabilizer(int x) const {
  std::vector<int> out;
  for (int g = 0; g < static_cast<int>(action_.size()); ++g) {
    if (action_[g][x] == x) out.push_back(g);
  }
  return out;
}

bool GPoset::operator==(const GPoset& o) const {
  return group_->order() == o.group_->order() && elements_ == o.elements_ && leq_ == o.leq_ && action_ == o.action_;
}

void transitive_closure(std::vector<char>& rel, int n) {
  for (int i = 0; i < n; ++i) rel[static_cast<std::size_t>(i) * n + i] = 1;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!rel[static_cast<std::size_t>(i) * n + k]) continue;
      for (int j = 0; j < n; ++j) {
        if (rel[static_cast<std::size_t>(k) * n + j]) rel[static_cast<std::size_t>(i) * n + j] = 1;
      }
    }
  }
}

namespace {

std::size_t at(int n, int i, int j) { return static_cast<std::size_t>(i) * n + j; }

// New poset on p's elements plus `extra` appended fixed points; `below(y)`
// decides which old elements lie above extra point k.
template <class Below>
GPoset append_points(const GPoset& p, const std::vector<std::string>& labels, Below below, PosetTag tag) {
  const int n = p.size();
  const int e = static_cast<int>(labels.size());
  const int total = n + e;
  std::vector<Payload> elements = p.elements();
  for (const auto& l : labels) elements.push_back(Payload::point(l));
  std::vector<char> rel(static_cast<std::size_t>(total) * total, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rel[at(total, i, j)] = p.leq(i, j);
  }
  for (int k = 0; k < e; ++k) {
    rel[at(total, n + k, n + k)] = 1;
    for (int y = 0; y < n; ++y) rel[at(total, n + k, y)] = below(k, y);
  }
  std::vector<Perm> action = p.action();
  for (auto& perm : action) {
    for (int k = 0; k < e; ++k) perm.push_back(n + k);
  }
  return GPoset(p.group(), std::move(elements), std::move(rel), std::move(action), tag);
}

}  // namespace

// ---------------------------------------------------------------- eigenspace posets

GPoset build_S(const ReflCoset& c, const RootOfUnity& zeta) {
  const auto group = c.group->abstract();
  std::map<std::string, Subspace> spaces;
  for (const auto& x : coset_elements(c)) {
    Subspace e = eigenspace(x, zeta);
    std::string key = e.key();
    spaces.emplace(std::move(key), std::move(e));
  }
  std::vector<Subspace> sorted;
  for (auto& [key, s] : spaces) sorted.push_back(s);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Subspace& a, const Subspace& b) { return a.dim() > b.dim(); });
  const int n = static_cast<int>(sorted.size());
  std::unordered_map<std::string, int> index;
  std::vector<Payload> elements;
  for (int i = 0; i < n; ++i) {
    index.emplace(sorted[i].key(), i);
    elements.push_back(Payload::space(sorted[i]));
  }
  std::vector<char> rel(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rel[at(n, i, j)] = contains(sorted[i], sorted[j]);
  }
  std::vector<Perm> action(group->order(), Perm(n));
  for (int g = 0; g < group->order(); ++g) {
    for (int i = 0; i < n; ++i) {
      const auto it = index.find(apply(c.group->element(g), sorted[i]).key());
      if (it == index.end()) throw InvalidArgument("eigenspace poset is not G-stable");
      action[g][i] = it->second;
    }
  }
  return GPoset(group, std::move(elements), std::move(rel), std::move(action), PosetTag::S);
}

GPoset induced_subposet(const GPoset& p, std::vector<int> keep, PosetTag tag) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<int> local(p.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<int>(i);
  const int n = static_cast<int>(keep.size());
  std::vector<Payload> elements;
  for (int x : keep) elements.push_back(p.element(x));
  std::vector<char> rel(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rel[at(n, i, j)] = p.leq(keep[i], keep[j]);
  }
  std::vector<Perm> action(p.action().size(), Perm(n));
  for (std::size_t g = 0; g < p.action().size(); ++g) {
    for (int i = 0; i < n; ++i) {
      const int image = local[p.act(static_cast<int>(g), keep[i])];
      if (image < 0) throw InvalidArgument("subposet is not G-stable");
      action[g][i] = image;
    }
  }
  return GPoset(p.group(), std::move(elements), std::move(rel), std::move(action), tag);
}

std::vector<int> embed_indices(const GPoset& sub, const GPoset& p) {
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < p.size(); ++i) index.emplace(p.element(i).key(), i);
  std::vector<int> out;
  for (int i = 0; i < sub.size(); ++i) {
    const auto it = index.find(sub.element(i).key());
    if (it == index.end()) throw NotASubposet("element " + sub.element(i).key() + " is missing");
    out.push_back(it->second);
  }
  for (int i = 0; i < sub.size(); ++i) {
    for (int j = 0; j < sub.size(); ++j) {
      if (sub.leq(i, j) != p.leq(out[i], out[j])) throw NotASubposet("order relations differ");
    }
  }
  return out;
}

GPoset build_Stilde(const GPoset& s, bool allow_empty) {
  const auto top = s.unique_maximum();
  if (!top) throw InvalidArgument("poset has no unique maximal element");
  const auto bottom = s.unique_minimum();
  std::vector<int> keep;
  for (int x = 0; x < s.size(); ++x) {
    if (x != *top && (!bottom || x != *bottom)) keep.push_back(x);
  }
  if (keep.empty() && !allow_empty) throw EmptyPoset("removing the extremal elements empties the poset");
  return induced_subposet(s, keep, PosetTag::Stilde);
}

GPoset build_Sprime(const GPoset& s, bool allow_empty) {
  const auto top = s.unique_maximum();
  if (!top) throw InvalidArgument("poset has no unique maximal element");
  std::vector<int> keep;
  for (int x = 0; x < s.size(); ++x) {
    if (x != *top) keep.push_back(x);
  }
  if (keep.empty() && !allow_empty) throw EmptyPoset("removing the maximal element empties the poset");
  return induced_subposet(s, keep, PosetTag::Sprime);
}

GPoset build_Tprime(const GPoset& sp, bool allow_empty) {
  const auto minimal = sp.minimal_elements();
  std::vector<int> keep;
  for (int x = 0; x < sp.size(); ++x) {
    if (!std::binary_search(minimal.begin(), minimal.end(), x)) keep.push_back(x);
  }
  if (keep.empty() && !allow_empty) throw EmptyPoset("T' is empty");
  return induced_subposet(sp, keep, PosetTag::Tprime);
}

GPoset build_Uprime(const GPoset& sp) {
  const auto minimal = sp.minimal_elements();
  return append_points(
      sp, {"0S"}, [&](int, int y) { return !std::binary_search(minimal.begin(), minimal.end(), y); },
      PosetTag::Uprime);
}

// ---------------------------------------------------------------- extensions

void check_upper_ideal(const GPoset& p, const std::vector<int>& q) {
  std::vector<char> in(p.size(), 0);
  for (int x : q) {
    if (x < 0 || x >= p.size()) throw ElementNotFound("ideal index out of range");
    in[x] = 1;
  }
  for (int x : q) {
    for (int y = 0; y < p.size(); ++y) {
      if (p.leq(x, y) && !in[y]) throw NotAnIdeal("subset is not upward closed");
    }
    for (const auto& perm : p.action()) {
      if (!in[perm[x]]) throw NotAnIdeal("subset is not G-stable");
    }
  }
}

GPoset extension_PQ(const GPoset& p, const std::vector<int>& q, bool strict, const std::string& label) {
  check_upper_ideal(p, q);
  std::vector<char> in(p.size(), 0);
  for (int x : q) in[x] = 1;
  if (strict) {
    for (int x = 0; x < p.size(); ++x) {
      bool found = false;
      for (int y = 0; y < p.size() && !found; ++y) found = in[y] && p.leq(x, y);
      if (!found) throw EmptyUpperSet("Q has no element above " + p.element(x).key());
    }
  }
  return append_points(p, {label}, [&](int, int y) { return in[y] != 0; }, PosetTag::Extension);
}

GPoset adjoin_bottom(const GPoset& q, const std::string& label) {
  return append_points(q, {label}, [](int, int) { return true; }, PosetTag::Extension);
}

GPoset suspension(const GPoset& r) {
  return append_points(r, {"0R", "0R'"}, [](int, int) { return true; }, PosetTag::Suspension);
}

namespace {

bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
  if (&a == &b) return true;
  if (a.order() != b.order()) return false;
  for (int x = 0; x < a.order(); ++x) {
    for (int y = 0; y < a.order(); ++y) {
      if (a.mul(x, y) != b.mul(x, y)) return false;
    }
  }
  return true;
}

}  // namespace

GPoset wedge_of_suspensions(const std::vector<GPoset>& parts) {
  auto group = parts.empty() ? FiniteGroup::trivial() : parts.front().group();
  for (const auto& part : parts) {
    if (!same_group(*part.group(), *group)) throw InvalidArgument("wedge parts must share one acting group");
  }
  std::vector<Payload> elements;
  std::vector<int> part_of;  // -1 for markers and 0W
  std::vector<int> offset;
  for (std::size_t t = 0; t < parts.size(); ++t) {
    const Payload marker = Payload::point("t" + std::to_string(t));
    elements.push_back(marker);
    part_of.push_back(-1);
    offset.push_back(static_cast<int>(elements.size()));
    for (const auto& x : parts[t].elements()) {
      elements.push_back(Payload::pair(x, marker));
      part_of.push_back(static_cast<int>(t));
    }
  }
  elements.push_back(Payload::point("0W"));
  part_of.push_back(-1);
  const int n = static_cast<int>(elements.size());
  const int bottom = n - 1;
  std::vector<char> rel(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) rel[at(n, i, i)] = 1;
  for (std::size_t t = 0; t < parts.size(); ++t) {
    const int base = offset[t];
    const int marker = base - 1;
    for (int a = 0; a < parts[t].size(); ++a) {
      rel[at(n, marker, base + a)] = 1;
      rel[at(n, bottom, base + a)] = 1;
      for (int b = 0; b < parts[t].size(); ++b) rel[at(n, base + a, base + b)] = parts[t].leq(a, b);
    }
  }
  std::vector<Perm> action(group->order(), Perm(n));
  for (int g = 0; g < group->order(); ++g) {
    std::iota(action[g].begin(), action[g].end(), 0);
    for (std::size_t t = 0; t < parts.size(); ++t) {
      for (int a = 0; a < parts[t].size(); ++a) action[g][offset[t] + a] = offset[t] + parts[t].act(g, a);
    }
  }
  return GPoset(group, std::move(elements), std::move(rel), std::move(action), PosetTag::Wedge);
}

MinimalWedge wedge_over_minimal(const GPoset& p, const std::vector<int>& q) {
  check_upper_ideal(p, q);
  std::vector<char> in(p.size(), 0);
  for (int x : q) in[x] = 1;
  MinimalWedge out;
  for (int x = 0; x < p.size(); ++x) {
    if (in[x]) continue;
    for (int y = 0; y < p.size(); ++y) {
      if (p.less(y, x)) throw InvalidArgument("P is not an extension of Q by minimal elements");
    }
    out.minimal.push_back(x);
  }
  out.pq = extension_PQ(p, q, false);
  const int bottom_pq = p.size();

  std::vector<Payload> elements;
  std::map<std::pair<int, int>, int> pos;  // (m, x) -> wedge index; x = -1 for the marker
  for (int m : out.minimal) {
    pos[{m, -1}] = static_cast<int>(elements.size());
    elements.push_back(p.element(m));
    out.j.push_back(m);
    for (int x = 0; x < p.size(); ++x) {
      if (!p.less(m, x)) continue;
      pos[{m, x}] = static_cast<int>(elements.size());
      elements.push_back(Payload::pair(p.element(x), p.element(m)));
      out.j.push_back(x);
    }
  }
  elements.push_back(Payload::point("0W"));
  out.j.push_back(bottom_pq);
  const int n = static_cast<int>(elements.size());
  const int bottom = n - 1;
  std::vector<char> rel(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) rel[at(n, i, i)] = 1;
  for (const auto& [key, a] : pos) {
    const auto [m, x] = key;
    if (x < 0) continue;
    rel[at(n, pos.at({m, -1}), a)] = 1;
    rel[at(n, bottom, a)] = 1;
    for (const auto& [key2, b] : pos) {
      if (key2.first == m && key2.second >= 0 && p.leq(x, key2.second)) rel[at(n, a, b)] = 1;
    }
  }
  std::vector<Perm> action(p.action().size(), Perm(n));
  for (std::size_t g = 0; g < p.action().size(); ++g) {
    const int gi = static_cast<int>(g);
    for (const auto& [key, a] : pos) {
      const auto [m, x] = key;
      action[g][a] = pos.at({p.act(gi, m), x < 0 ? -1 : p.act(gi, x)});
    }
    action[g][bottom] = bottom;
  }
  out.wedge = GPoset(p.group(), std::move(elements), std::move(rel), std::move(action), PosetTag::Wedge);
  return out;
}

// ---------------------------------------------------------------- other constructions

Subgroup stabilizer_subgroup(const GPoset& p, int x) {
  if (x < 0 || x >= p.size()) throw ElementNotFound("element index out of range");
  return make_subgroup(*p.group(), p.stabilizer(x));
}

GPoset restrict_action(const GPoset& p, const Subgroup& h) {
  std::vector<Perm> action;
  for (int g : h.embedding) action.push_back(p.action()[g]);
  return GPoset(h.group, p.elements(), p.relation(), std::move(action), p.tag());
}

GPoset upset(const GPoset& p, int x) {
  const Subgroup h = stabilizer_subgroup(p, x);
  std::vector<int> keep;
  for (int y = 0; y < p.size(); ++y) {
    if (p.less(x, y)) keep.push_back(y);
  }
  return induced_subposet(restrict_action(p, h), keep, PosetTag::Subposet);
}

int length(const GPoset& p) {
  const int n = p.size();
  if (n == 0) return -1;
  std::vector<int> below(n, 0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) below[x] += p.leq(y, x);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });
  std::vector<int> longest(n, 0);
  int best = 0;
  for (int x : order) {
    for (int y = 0; y < n; ++y) {
      if (p.less(y, x)) longest[x] = std::max(longest[x], longest[y] + 1);
    }
    best = std::max(best, longest[x]);
  }
  return best;
}

GPoset product(const GPoset& p, const GPoset& q) {
  auto group = FiniteGroup::direct_product(*p.group(), *q.group());
  const int np = p.size();
  const int nq = q.size();
  const int n = np * nq;
  std::vector<Payload> elements;
  for (int a = 0; a < np; ++a) {
    for (int b = 0; b < nq; ++b) elements.push_back(Payload::pair(p.element(a), q.element(b)));
  }
  std::vector<char> rel(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rel[at(n, i, j)] = p.leq(i / nq, j / nq) && q.leq(i % nq, j % nq);
  }
  const int hq = q.group()->order();
  std::vector<Perm> action(group->order(), Perm(n));
  for (int g = 0; g < group->order(); ++g) {
    for (int i = 0; i < n; ++i) action[g][i] = p.act(g / hq, i / nq) * nq + q.act(g % hq, i % nq);
  }
  return GPoset(group, std::move(elements), std::move(rel), std::move(action), PosetTag::Product);
}

GPoset fixed_subposet(const GPoset& p, int g) {
  if (g < 0 || g >= static_cast<int>(p.action().size())) throw ElementNotFound("group element out of range");
  std::vector<int> keep;
  for (int x = 0; x < p.size(); ++x) {
    if (p.act(g, x) == x) keep.push_back(x);
  }
  const Subgroup trivial{FiniteGroup::trivial(), {0}};
  return induced_subposet(restrict_action(p, trivial), keep, PosetTag::Subposet);
}

bool is_partial_order(const GPoset& p) {
  const int n = p.size();
  for (int i = 0; i < n; ++i) {
    if (!p.leq(i, i)) return false;
    for (int j = 0; j < n; ++j) {
      if (i != j && p.leq(i, j) && p.leq(j, i)) return false;
      if (!p.leq(i, j)) continue;
      for (int k = 0; k < n; ++k) {
        if (p.leq(j, k) && !p.leq(i, k)) return false;
      }
    }
  }
  return true;
}

bool is_gposet(const GPoset& p) {
  if (!is_partial_order(p)) return false;
  const auto& G = *p.group();
  const int n = p.size();
  for (int g = 0; g < G.order(); ++g) {
    std::vector<char> hit(n, 0);
    for (int x = 0; x < n; ++x) {
      const int gx = p.act(g, x);
      if (gx < 0 || gx >= n || hit[gx]) return false;
      hit[gx] = 1;
      if (g == G.identity() && gx != x) return false;
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (p.leq(x, y) != p.leq(p.act(g, x), p.act(g, y))) return false;
      }
    }
  }
  for (int a = 0; a < G.order(); ++a) {
    for (int b = 0; b < G.order(); ++b) {
      const int ab = G.mul(a, b);
      for (int x = 0; x < n; ++x) {
        if (p.act(ab, x) != p.act(a, p.act(b, x))) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- isomorphism

namespace {

struct IsoSearch {
  const GPoset& p;
  const GPoset& q;
  std::size_t budget;
  std::size_t nodes = 0;
  bool exhausted = false;
  std::vector<int> phi;   // p -> q
  std::vector<int> used;  // q -> p
  std::vector<std::vector<int>> stab_p;
  std::vector<std::vector<int>> stab_q;
  std::vector<std::vector<int>> sig_p;
  std::vector<std::vector<int>> sig_q;
  std::vector<int> reps;

  static std::vector<std::vector<int>> signatures(const GPoset& x) {
    std::vector<std::vector<int>> out(x.size());
    for (int a = 0; a < x.size(); ++a) {
      int below = 0;
      int above = 0;
      for (int b = 0; b < x.size(); ++b) {
        below += x.less(b, a);
        above += x.less(a, b);
      }
      out[a] = {below, above, static_cast<int>(x.orbit(a).size())};
    }
    return out;
  }

  bool run(std::size_t r) {
    if (r == reps.size()) return true;
    if (++nodes > budget) {
      exhausted = true;
      return false;
    }
    const int x = reps[r];
    for (int y = 0; y < q.size(); ++y) {
      if (used[y] >= 0 || sig_p[x] != sig_q[y] || stab_p[x] != stab_q[y]) continue;
      std::vector<int> assigned;
      bool ok = true;
      for (int g = 0; g < static_cast<int>(p.action().size()) && ok; ++g) {
        const int gx = p.act(g, x);
        const int gy = q.act(g, y);
        if (phi[gx] >= 0) {
          ok = phi[gx] == gy;
          continue;
        }
        if (used[gy] >= 0) {
          ok = false;
          continue;
        }
        phi[gx] = gy;
        used[gy] = gx;
        assigned.push_back(gx);
      }
      for (std::size_t i = 0; i < assigned.size() && ok; ++i) {
        const int a = assigned[i];
        for (int b = 0; b < p.size() && ok; ++b) {
          if (phi[b] < 0) continue;
          ok = p.leq(a, b) == q.leq(phi[a], phi[b]) && p.leq(b, a) == q.leq(phi[b], phi[a]);
        }
      }
      if (ok && run(r + 1)) return true;
      for (int a : assigned) {
        used[phi[a]] = -1;
        phi[a] = -1;
      }
      if (exhausted) return false;
    }
    return false;
  }
};

}  // namespace

IsoVerdict are_isomorphic_gposets(const GPoset& p, const GPoset& q, std::size_t node_budget) {
  if (!same_group(*p.group(), *q.group())) throw InvalidArgument("isomorphism test needs a common acting group");
  if (p.size() != q.size()) return IsoVerdict::NotIsomorphic;
  IsoSearch s{p, q, node_budget, 0, false, {}, {}, {}, {}, {}, {}, {}};
  s.sig_p = IsoSearch::signatures(p);
  s.sig_q = IsoSearch::signatures(q);
  auto sp = s.sig_p;
  auto sq = s.sig_q;
  std::sort(sp.begin(), sp.end());
  std::sort(sq.begin(), sq.end());
  if (sp != sq) return IsoVerdict::NotIsomorphic;
  for (int x = 0; x < p.size(); ++x) {
    s.stab_p.push_back(p.stabilizer(x));
    s.stab_q.push_back(q.stabilizer(x));
  }
  std::vector<char> covered(p.size(), 0);
  for (int x = 0; x < p.size(); ++x) {
    if (covered[x]) continue;
    s.reps.push_back(x);
    for (int y : p.orbit(x)) covered[y] = 1;
  }
  s.phi.assign(p.size(), -1);
  s.used.assign(q.size(), -1);
  if (s.run(0)) return IsoVerdict::Isomorphic;
  return s.exhausted ? IsoVerdict::Indeterminate : IsoVerdict::NotIsomorphic;
}

std::string dump(const GPoset& p) {
  std::ostringstream os;
  os << "gposet tag=" << to_string(p.tag()) << " elements=" << p.size() << " group_order=" << p.group()->order()
     << "\n";
  for (int x = 0; x < p.size(); ++x) os << "element " << x << " " << p.element(x).key() << "\n";
  for (int x = 0; x < p.size(); ++x) {
    for (int y = 0; y < p.size(); ++y) {
      if (!p.less(x, y)) continue;
      bool cover = true;
      for (int z = 0; z < p.size() && cover; ++z) cover = !(p.less(x, z) && p.less(z, y));
      if (cover) os << "cover " << x << " " << y << "\n";
    }
  }
  for (int g = 0; g < static_cast<int>(p.action().size()); ++g) {
    os << "action " << g << ":";
    for (int x = 0; x < p.size(); ++x) os << " " << p.act(g, x);
    os << "\n";
  }
  return os.str();
}

}  // namespace eigenposet
