#pragma once

// Characters of homology representations, eigenspace orbit data, and the
// verification drivers that tie posets, homology and invariant theory
// together.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eigenposet/cyclo.hpp"
#include "eigenposet/gposet.hpp"
#include "eigenposet/group.hpp"
#include "eigenposet/homology.hpp"
#include "eigenposet/refl.hpp"

namespace eigenposet {

/// A class function, stored as one value per conjugacy class in the order of
/// FiniteGroup::classes().
class ClassFunction {
 public:
  ClassFunction() = default;
  ClassFunction(std::shared_ptr<const FiniteGroup> group, std::vector<CycNum> class_values);
  static ClassFunction zero(std::shared_ptr<const FiniteGroup> group);
  /// Throws InvalidArgument unless the values are constant on classes.
  static ClassFunction from_elements(std::shared_ptr<const FiniteGroup> group, const std::vector<CycNum>& values);

  const std::shared_ptr<const FiniteGroup>& group() const { return group_; }
  const std::vector<CycNum>& class_values() const { return values_; }
  const CycNum& at(int g) const { return values_[group_->class_of(g)]; }
  const CycNum& dimension() const { return at(0); }
  bool is_zero() const;

  ClassFunction& operator+=(const ClassFunction& o);
  friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
  friend ClassFunction operator*(const CycNum& s, ClassFunction f);
  /// Equal orders and equal values class by class.
  friend bool operator==(const ClassFunction& a, const ClassFunction& b);

 private:
  std::shared_ptr<const FiniteGroup> group_;
  std::vector<CycNum> values_;
};

/// g -> reduced Euler characteristic of the order complex of P^g.
ClassFunction lefschetz_character(const GPoset& p);
/// chi~(Delta(P^g)) for every group element, by chain counting.
std::vector<long> fixed_point_euler(const GPoset& p);
/// Characters of H~_n(P; Q) for n = -1 .. top dimension, from traces of the
/// action on explicit homology bases.
std::vector<ClassFunction> homology_characters(const GPoset& p, std::size_t simplex_budget = kDefaultSimplexBudget);
/// (-1)^d lefschetz_character(p) when homology is concentrated in degree d;
/// zero when p is acyclic; throws NotConcentrated otherwise.
ClassFunction top_homology_character(const GPoset& p);

/// Ind_H^G chi(g) = (1/|H|) sum over x in G with x^-1 g x in H of chi(x^-1 g x).
ClassFunction induced_character(const Subgroup& h, const ClassFunction& chi,
                                std::shared_ptr<const FiniteGroup> g);
/// Throws NotASubgroup unless `h_elements` is a subgroup of g.
ClassFunction induced_character(const std::vector<int>& h_elements, const ClassFunction& chi,
                                std::shared_ptr<const FiniteGroup> g);

struct EigenspaceOrbitData {
  std::vector<int> maximal;               // minimal elements of S', as indices into S'
  std::vector<std::vector<int>> orbits;   // partition of `maximal`
  int representative = -1;                // E, an index into S'
  Subspace e;
  std::vector<int> normalizer;   // N(E) = {g : gE = E}
  std::vector<int> centralizer;  // C(E) = {g : g acts trivially on E}
};

/// Orbit data for the maximal eigenspaces of S' (tagged Sprime, built from g).
EigenspaceOrbitData maximal_eigenspaces(const GPoset& sp, const ReflGroup& g);

/// N(E)/C(E) as matrices on E in the RREF basis of E; element 0 is the identity.
ReflGroupPtr restricted_group(const ReflGroup& g, const EigenspaceOrbitData& data);

enum class Verdict { Pass, Fail, Skipped, Indeterminate };
std::string to_string(Verdict v);

struct Check {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string detail;
  std::vector<std::pair<std::string, std::string>> values;
};

struct VerifyReport {
  std::string task;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  /// Fail beats Indeterminate beats Pass; Skipped only when nothing else ran.
  Verdict overall() const;
  const Check* find(const std::string& name) const;
  Check& add(std::string name, Verdict v, std::string detail = {});
};

inline Verdict verdict_of(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

/// Fast (fixed-point chain counting) against slow (traces on homology bases) at every element.
Check check_lefschetz(const GPoset& p, const std::string& name = "lefschetz");

/// Mayer-Vietoris on (S', T'), the wedge decomposition of U', and the
/// induced-module decomposition of its homology.
VerifyReport verify_wedge_decomposition(const ReflCoset& c, const RootOfUnity& zeta,
                                        std::size_t simplex_budget = kDefaultSimplexBudget);

/// Sphere counts from homology, from the N(E)/C(E) formula and from |M| times
/// the fibre homology; the regular-number formula; invariant-theory
/// consistency; and the induced-character identity for the top homology.
VerifyReport verify_sphere_count(const ReflCoset& c, const RootOfUnity& zeta,
                                 std::size_t simplex_budget = kDefaultSimplexBudget);

/// U'_1 isomorphic to the suspension of S~_1, with the matching homology shift.
VerifyReport verify_uprime_suspension(ReflGroupPtr g, std::size_t simplex_budget = kDefaultSimplexBudget);

/// Product over d with m not dividing d, times product over codegrees c with m | c of (c + 1).
mpz_class regular_sphere_count(const std::vector<int>& degrees, const std::vector<int>& codegrees, int m);
/// (1/|C|) (product over degrees of G not divisible by m) (product of (c + 1) over codegrees c of N/C).
mpq_class sphere_count_formula(const std::vector<int>& degrees, int m, long centralizer_order,
                               const std::vector<int>& quotient_codegrees);

}  // namespace eigenposet
