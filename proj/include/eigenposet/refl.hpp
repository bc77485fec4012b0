#pragma once

// Finite matrix reflection groups, enumerated exhaustively, and reflection
// cosets gamma*G. Element 0 of every ReflGroup is the identity.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "eigenposet/exactla.hpp"
#include "eigenposet/group.hpp"

namespace eigenposet {

inline constexpr std::size_t kDefaultElementBudget = 1'000'000;
inline constexpr std::size_t kMolienLimit = 10'000;
inline constexpr std::size_t kCayleyLimit = 5'000;

struct GroupFamily {
  enum class Kind { None, Gmpn, Sym };
  Kind kind = Kind::None;
  int m = 0;
  int p = 0;
  int n = 0;
};

struct DegreeData {
  enum class Source { Table, Formula, Molien };
  std::vector<int> degrees;
  std::vector<int> codegrees;  // empty when unknown
  Source source = Source::Table;
  std::optional<std::vector<int>> molien;  // independent re-derivation, when |G| is small enough

  bool has_codegrees() const { return codegrees.size() == degrees.size(); }
  mpz_class degree_product() const;
};

std::string to_string(DegreeData::Source s);

class ReflGroup {
 public:
  ReflGroup(Index dim, std::vector<Mat> generators, std::vector<Mat> elements, std::string name);

  Index dim() const { return dim_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<Mat>& elements() const { return elements_; }
  const Mat& element(int i) const { return elements_[i]; }
  const std::vector<Mat>& generators() const { return generators_; }
  const std::string& name() const { return name_; }
  /// -1 when m is not an element.
  int index_of(const Mat& m) const;
  int mul(int a, int b) const;

  GroupFamily family;
  std::optional<DegreeData> declared;  // from a group file

  /// Multiplication table over the element indices; throws BudgetExceeded above kCayleyLimit.
  std::shared_ptr<const FiniteGroup> abstract() const;

 private:
  struct Cache;
  Index dim_;
  std::vector<Mat> generators_;
  std::vector<Mat> elements_;
  std::string name_;
  std::unordered_map<std::string, int> index_;
  std::shared_ptr<Cache> cache_;
};

using ReflGroupPtr = std::shared_ptr<const ReflGroup>;

/// Monomial matrices with m-th root entries whose product is an (m/p)-th root of unity.
ReflGroupPtr build_gmpn(int m, int p, int n, std::size_t budget = kDefaultElementBudget);
/// Sym(n) acting on C^{n-1} through its root lattice basis.
ReflGroupPtr build_sym(int n, std::size_t budget = kDefaultElementBudget);
ReflGroupPtr build_from_generators(Index n, std::vector<Mat> gens, std::size_t budget = kDefaultElementBudget,
                                   std::string name = {});
ReflGroupPtr load_group_file(const std::string& selector, std::size_t budget = kDefaultElementBudget);
/// "gmpn:m,p,n", "sym:n" or "file:<path or data name>".
ReflGroupPtr build_group(const std::string& selector, std::size_t budget = kDefaultElementBudget);

std::vector<int> reflection_indices(const ReflGroup& g);
std::vector<Mat> reflections(const ReflGroup& g);
/// Number of distinct fixed hyperplanes of reflections.
int hyperplane_count(const ReflGroup& g);
/// Dimension of the subspace of V fixed by every element.
Index fixed_space_dim(const ReflGroup& g);

/// Coefficients of det(I - t x), lowest degree first.
std::vector<CycNum> reverse_char_poly(const Mat& x);
/// Degrees read off (1/|G|) sum_g 1/det(I - t g); nullopt if the series does
/// not factor as prod 1/(1 - t^d) with prod d = |G|.
std::optional<std::vector<int>> molien_degrees(const std::vector<Mat>& elements, Index dim);

std::optional<DegreeData> family_degree_data(const GroupFamily& f);
/// Family formula, file declaration, or table row by name, with a Molien
/// cross-check when |G| <= kMolienLimit. Throws UnknownGroup otherwise.
DegreeData degree_data(const ReflGroup& g);

struct DegreeCandidate {
  std::string name;
  std::vector<int> degrees;
  std::vector<int> codegrees;
};
/// Families and table rows of the given dimension and order with these degrees
/// whose codegree sum equals `codegree_sum` (hyperplanes minus essential rank).
std::vector<DegreeCandidate> degree_candidates(int dim, const mpz_class& order, const std::vector<int>& degrees,
                                               int codegree_sum);

struct ReflCoset {
  ReflGroupPtr group;
  Mat gamma;
  long gamma_order = 1;
  bool is_group() const { return gamma_order == 1; }
};

inline constexpr long kGammaOrderLimit = 10'000;

bool normalizes(const Mat& gamma, const ReflGroup& g);
/// Throws InvalidArgument if gamma does not normalize G or has no order <= kGammaOrderLimit.
ReflCoset make_coset(ReflGroupPtr g, Mat gamma);
ReflCoset trivial_coset(ReflGroupPtr g);
/// gamma * g for each element g, in element order.
std::vector<Mat> coset_elements(const ReflCoset& c);

}  // namespace eigenposet
