#pragma once

// Order complexes and reduced integer homology.
//
// A chain is a strictly increasing sequence x0 < x1 < ... < xk of poset
// element indices, listed bottom to top; it is a k-simplex of the order
// complex. The empty chain is the unique (-1)-simplex, so every complex here
// is augmented. Chains of each dimension are kept in lexicographic order of
// their index sequences, which fixes every boundary matrix.

#include <gmpxx.h>

#include <Eigen/SparseCore>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eigenposet/exactla.hpp"
#include "eigenposet/gposet.hpp"

namespace eigenposet {

using Chain = std::vector<int>;
using Boundary = Eigen::SparseMatrix<int>;

inline constexpr std::size_t kDefaultSimplexBudget = 10'000'000;

class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(std::vector<std::vector<Chain>> cells, std::vector<Boundary> boundaries);

  /// Largest d with a d-simplex; -1 for the empty poset.
  int top_dim() const { return static_cast<int>(cells_.size()) - 2; }
  Index count(int d) const;
  /// d-simplices, d >= -1; empty outside the range.
  const std::vector<Chain>& chains(int d) const;
  /// Position of a chain in its dimension, or -1.
  Index index_of(const Chain& c) const;
  /// del_d : C_d -> C_{d-1}; a count(d-1) x count(d) matrix (0 x count(-1) for d = -1).
  Boundary boundary(int d) const;
  std::size_t simplex_count() const;

 private:
  std::vector<std::vector<Chain>> cells_;  // cells_[d + 1]
  std::vector<Boundary> boundaries_;       // boundaries_[d + 1] = del_d
};

/// Depth-first chain enumeration; throws BudgetExceeded once more than
/// `simplex_budget` simplices (the empty one included) have been found.
ChainComplex order_complex(const GPoset& p, std::size_t simplex_budget = kDefaultSimplexBudget);

/// True iff del_{d-1} del_d = 0 in every dimension.
bool boundary_squares_to_zero(const ChainComplex& c);

struct SmithForm {
  Index rank = 0;
  /// Nonzero invariant factors d1 | d2 | ..., all positive.
  std::vector<mpz_class> invariant_factors;
};

/// Rewrites a list of positive integers as invariant factors d1 | d2 | ...
/// of the same finite abelian group; entries equal to 1 are kept.
std::vector<mpz_class> normalize_invariant_factors(std::vector<mpz_class> factors);

/// Smith normal form over Z. Pivots are chosen greedily by (|value|, row, col).
SmithForm smith_normal_form(const Boundary& m);

struct HomologyResult {
  /// betti[n + 1] and torsion[n + 1] describe H~_n, n = -1 .. top dimension.
  std::vector<long> betti;
  std::vector<std::vector<mpz_class>> torsion;
  long reduced_euler = 0;

  long betti_at(int n) const;
  const std::vector<mpz_class>& torsion_at(int n) const;
  bool is_zero_at(int n) const { return betti_at(n) == 0 && torsion_at(n).empty(); }
  int max_degree() const { return static_cast<int>(betti.size()) - 2; }
  /// Degrees with nonzero homology.
  std::vector<int> support() const;
  bool torsion_free() const;
  /// Same groups in every degree; trailing zero degrees are ignored.
  bool isomorphic_to(const HomologyResult& o) const;
  /// Homology shifted up by k: result.at(n + k) = this.at(n).
  HomologyResult shifted(int k) const;
  std::string describe() const;
};

/// Degree-wise direct sum.
HomologyResult direct_sum(const std::vector<HomologyResult>& parts);

HomologyResult homology(const ChainComplex& c);
HomologyResult homology(const GPoset& p, std::size_t simplex_budget = kDefaultSimplexBudget);

QMatrix to_dense(const Boundary& m);

/// A basis of H~_n over Q: `cycles` holds representative cycles as columns,
/// and `projection` sends any n-cycle to its coordinates in that basis.
struct RationalHomology {
  int degree = 0;
  QMatrix cycles;
  QMatrix projection;
  Index dim() const { return cycles.cols(); }
};

RationalHomology rational_homology(const ChainComplex& c, int n);

/// Matrix of the chain map on C_n that sends each chain of `from` through
/// `element_map` (poset element -> poset element of `to`), which must carry
/// chains to chains of the same dimension.
QMatrix chain_map(const ChainComplex& from, const ChainComplex& to, const std::vector<int>& element_map, int n);

/// Map induced on H~_n(-; Q) by the inclusion of an induced subposet,
/// matched by payload key (NotASubposet otherwise).
QMatrix induced_map(const GPoset& sub, const GPoset& sup, int n);

/// Matrix of g acting on H~_n(p; Q) in the basis of rational_homology.
QMatrix action_on_homology(const GPoset& p, const ChainComplex& c, const RationalHomology& h, int g);

/// The boundary map r : H~_n(P_Q) -> H~_{n-1}(Q), r[a + b] = [del a], where a
/// is the part of a cycle on chains leaving Q_Q. P_Q is extension_PQ(p, q, false).
QMatrix connecting_map(const GPoset& p, const std::vector<int>& q, int n);

struct MVNode {
  std::string space;  // "Q", "P" or "P_Q"
  int degree = 0;
  Index dim = 0;
  Index incoming_rank = 0;  // rank of the map into this node
  Index outgoing_rank = 0;  // rank of the map out of it
  bool composite_zero = true;
  bool exact = true;
};

struct MVReport {
  std::vector<MVNode> nodes;  // descending degree, Q -> P -> P_Q within a degree
  bool exact = true;
  /// First non-exact node, empty when exact.
  std::string witness;
};

/// Builds ... -> H~_n(Q) -> H~_n(P) -> H~_n(P_Q) -> H~_{n-1}(Q) -> ... over Q
/// from explicit matrices and checks exactness at every node.
MVReport verify_mayer_vietoris(const GPoset& p, const std::vector<int>& q,
                               std::size_t simplex_budget = kDefaultSimplexBudget);

/// Delta(P_Q) = Delta(P) u Delta(Q_Q) and Delta(P) n Delta(Q_Q) = Delta(Q), as simplex sets.
bool verify_simplex_decomposition(const GPoset& p, const std::vector<int>& q);

/// "boundary d rows r cols c nnz k" followed by one "row col value" line per entry.
std::string sparse_triplets(const Boundary& m, int d);

}  // namespace eigenposet
