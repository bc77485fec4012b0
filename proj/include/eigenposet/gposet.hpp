#pragma once

// Finite G-posets: a payload per element, the full order relation, and one
// permutation of the elements per group element.
//
// Payload keys identify elements structurally, so two posets built along
// different routes compare equal exactly when they have the same elements in
// the same positions with the same order and action.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eigenposet/exactla.hpp"
#include "eigenposet/group.hpp"
#include "eigenposet/refl.hpp"

namespace eigenposet {

enum class PosetTag { S, Stilde, Sprime, Tprime, Uprime, Suspension, Wedge, Extension, Product, Subposet, Generic };

std::string to_string(PosetTag tag);

class Payload {
 public:
  enum class Kind { Space, Point, Pair };

  static Payload space(Subspace s);
  static Payload point(std::string label);
  static Payload pair(const Payload& a, const Payload& b);

  Kind kind() const { return kind_; }
  const std::string& key() const { return key_; }
  /// Present for Space payloads.
  const std::optional<Subspace>& subspace() const { return space_; }
  const std::vector<Payload>& parts() const { return parts_; }

  bool operator==(const Payload& o) const { return key_ == o.key_; }

 private:
  Kind kind_ = Kind::Point;
  std::string key_;
  std::optional<Subspace> space_;
  std::vector<Payload> parts_;
};

class GPoset {
 public:
  GPoset() = default;
  /// leq is row-major n x n. An empty action means G acts trivially.
  GPoset(std::shared_ptr<const FiniteGroup> group, std::vector<Payload> elements, std::vector<char> leq,
         std::vector<Perm> action, PosetTag tag);

  int size() const { return static_cast<int>(elements_.size()); }
  bool empty() const { return elements_.empty(); }
  bool leq(int x, int y) const { return leq_[static_cast<std::size_t>(x) * elements_.size() + y] != 0; }
  bool less(int x, int y) const { return x != y && leq(x, y); }
  const Payload& element(int x) const { return elements_[x]; }
  const std::vector<Payload>& elements() const { return elements_; }
  const std::vector<char>& relation() const { return leq_; }
  const std::shared_ptr<const FiniteGroup>& group() const { return group_; }
  const std::vector<Perm>& action() const { return action_; }
  int act(int g, int x) const { return action_[g][x]; }
  PosetTag tag() const { return tag_; }

  /// -1 if no element has this key.
  int find(const std::string& key) const;
  std::vector<int> minimal_elements() const;
  std::vector<int> maximal_elements() const;
  std::optional<int> unique_minimum() const;
  std::optional<int> unique_maximum() const;
  /// Sorted, distinct g.x over the group.
  std::vector<int> orbit(int x) const;
  std::vector<int> stabilizer(int x) const;

  bool operator==(const GPoset& o) const;

 private:
  std::shared_ptr<const FiniteGroup> group_;
  std::vector<Payload> elements_;
  std::vector<char> leq_;
  std::vector<Perm> action_;
  PosetTag tag_ = PosetTag::Generic;
};

/// In-place reflexive-transitive closure of a row-major n x n relation.
void transitive_closure(std::vector<char>& rel, int n);

// Eigenspace posets. Elements of S are the distinct V(x, zeta), x in gamma*G,
// sorted by decreasing dimension then key; x <= y iff x contains y.
GPoset build_S(const ReflCoset& c, const RootOfUnity& zeta);
GPoset build_Stilde(const GPoset& s, bool allow_empty = false);
GPoset build_Sprime(const GPoset& s, bool allow_empty = false);
/// S' without its minimal elements (the maximal eigenspaces).
GPoset build_Tprime(const GPoset& sp, bool allow_empty = true);
/// S' plus 0S, placed below T' only.
GPoset build_Uprime(const GPoset& sp);

/// The induced subposet on `keep` (sorted), acted on by the same group;
/// throws InvalidArgument unless `keep` is G-stable.
GPoset induced_subposet(const GPoset& p, std::vector<int> keep, PosetTag tag);
/// Indices of a subposet's elements inside p, matched by payload key; throws NotASubposet.
std::vector<int> embed_indices(const GPoset& sub, const GPoset& p);

/// Throws NotAnIdeal unless q is an upward-closed, G-stable subset of p.
void check_upper_ideal(const GPoset& p, const std::vector<int>& q);
/// P plus a new bottom below exactly Q. With `strict`, also requires Q_{>=x} nonempty for every x.
GPoset extension_PQ(const GPoset& p, const std::vector<int>& q, bool strict = true, const std::string& label = "0Q");
/// Q with a new global bottom (Q_Q).
GPoset adjoin_bottom(const GPoset& q, const std::string& label = "0Q");
GPoset suspension(const GPoset& r);

/// Suspensions of parts sharing one group, glued at a common bottom 0W.
/// Marker t is below part t only; 0W is below every part element but not the markers.
GPoset wedge_of_suspensions(const std::vector<GPoset>& parts);

struct MinimalWedge {
  GPoset wedge;              // the wedge over M = P \ Q with parts P_{>m}
  GPoset pq;                 // P_Q
  std::vector<int> j;        // wedge element -> P_Q element
  std::vector<int> minimal;  // M, as indices into P
};
/// Throws InvalidArgument unless P is an extension of Q by minimal elements.
MinimalWedge wedge_over_minimal(const GPoset& p, const std::vector<int>& q);

/// P_{>x}, acted on by the stabilizer of x.
GPoset upset(const GPoset& p, int x);
Subgroup stabilizer_subgroup(const GPoset& p, int x);
/// Edges in a longest chain; -1 for the empty poset.
int length(const GPoset& p);
GPoset product(const GPoset& p, const GPoset& q);
/// Elements fixed by g, with the trivial group acting.
GPoset fixed_subposet(const GPoset& p, int g);

/// Restricts the acting group along a subgroup embedding.
GPoset restrict_action(const GPoset& p, const Subgroup& h);

bool is_partial_order(const GPoset& p);
bool is_gposet(const GPoset& p);

enum class IsoVerdict { Isomorphic, NotIsomorphic, Indeterminate };
std::string to_string(IsoVerdict v);
/// Equivariant isomorphism search; the two posets must be acted on by the same
/// abstract group with matching element indices.
IsoVerdict are_isomorphic_gposets(const GPoset& p, const GPoset& q, std::size_t node_budget = 1'000'000);

/// Text dump: header, one line per element, cover relations, then the action
/// of every group element.
std::string dump(const GPoset& p);

}  // namespace eigenposet
