#pragma once

// Exact dense linear algebra over CycNum and mpq_class.
//
// Matrices act on column vectors; a Subspace stores a basis as the rows of
// its reduced row-echelon form, which is unique per subspace, so equality
// of Subspace values is equality of subspaces.

#include <Eigen/Core>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eigenposet/cyclo.hpp"
#include "eigenposet/errors.hpp"
#include "eigenposet/scalar_traits.hpp"

namespace eigenposet {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Mat = Matrix<CycNum>;
using QMatrix = Matrix<mpq_class>;
using ZMatrix = Matrix<mpz_class>;
using Index = Eigen::Index;

inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
inline mpq_class inv(const mpq_class& x) {
  if (sgn(x) == 0) throw DivisionByZero("inverse of zero rational");
  return 1 / x;
}

/// In-place reduced row-echelon form with leftmost pivots. Only the first
/// `pivot_cols` columns are searched for pivots (all if negative), which
/// lets callers reduce augmented matrices. Returns the pivot columns.
template <class Scalar>
std::vector<Index> rref_in_place(Matrix<Scalar>& m, Index pivot_cols = -1) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  if (pivot_cols < 0) pivot_cols = cols;
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < pivot_cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && is_zero(m(p, c))) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Scalar scale = inv(m(r, c));
    for (Index k = c; k < cols; ++k) {
      if (!is_zero(m(r, k))) m(r, k) *= scale;
    }
    for (Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      const Scalar f = m(i, c);
      for (Index k = c; k < cols; ++k) {
        if (!is_zero(m(r, k))) m(i, k) -= f * m(r, k);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class Scalar>
Index rank(Matrix<Scalar> m) {
  return static_cast<Index>(rref_in_place(m).size());
}

/// Rows form the RREF basis of {v : m v = 0}.
template <class Scalar>
Matrix<Scalar> kernel_basis(Matrix<Scalar> m) {
  const Index cols = m.cols();
  const auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(cols, false);
  for (Index p : pivots) is_pivot[p] = true;
  const Index nullity = cols - static_cast<Index>(pivots.size());
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(nullity, cols);
  Index row = 0;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    basis(row, f) = Scalar(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (!is_zero(m(static_cast<Index>(i), f))) basis(row, pivots[i]) = -m(static_cast<Index>(i), f);
    }
    ++row;
  }
  rref_in_place(basis);
  return basis;
}

/// Throws SingularMatrix when m is not invertible.
template <class Scalar>
Matrix<Scalar> inverse(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const Index n = m.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Matrix<Scalar>::Identity(n, n);
  const auto pivots = rref_in_place(aug, n);
  if (static_cast<Index>(pivots.size()) != n) throw SingularMatrix("matrix is singular");
  return aug.rightCols(n);
}

/// Given A with full column rank, returns L with L * A = I.
template <class Scalar>
Matrix<Scalar> left_inverse(const Matrix<Scalar>& a) {
  const Index rows = a.rows();
  const Index cols = a.cols();
  Matrix<Scalar> aug(rows, cols + rows);
  aug.leftCols(cols) = a;
  aug.rightCols(rows) = Matrix<Scalar>::Identity(rows, rows);
  const auto pivots = rref_in_place(aug, cols);
  if (static_cast<Index>(pivots.size()) != cols) throw SingularMatrix("columns are not independent");
  return aug.topRightCorner(cols, rows);
}

/// Exact product that skips zero entries of a.
template <class Scalar>
Matrix<Scalar> multiply(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("multiply: inner dimensions differ");
  Matrix<Scalar> out = Matrix<Scalar>::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (Index j = 0; j < b.cols(); ++j) {
        if (!is_zero(b(k, j))) out(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return out;
}

template <class Scalar>
bool is_zero_matrix(const Matrix<Scalar>& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (!is_zero(m(i, j))) return false;
    }
  }
  return true;
}

Mat identity(Index n);
Mat matmul(const Mat& a, const Mat& b);
Mat matinv(const Mat& m);
Index rank(const Mat& m);
/// Multiplicative order of m, or 0 when no power up to `limit` is the identity.
long matrix_order(const Mat& m, long limit);
CycNum determinant(const Mat& m);

class Subspace {
 public:
  Subspace() = default;
  /// Span of the rows of `rows`.
  static Subspace span(Mat rows);
  static Subspace full(Index ambient_dim);
  static Subspace zero(Index ambient_dim);

  Index ambient_dim() const { return ambient_dim_; }
  Index dim() const { return basis_.rows(); }
  /// RREF basis, one vector per row.
  const Mat& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  /// Exact membership of a column vector.
  bool contains_vector(const Vector<CycNum>& v) const;
  /// Coordinates of v in the RREF basis; v must lie in the subspace.
  Vector<CycNum> coordinates(const Vector<CycNum>& v) const;

  /// Canonical text; equal keys iff equal subspaces.
  std::string key() const;
  std::string describe() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_.rows() == b.basis_.rows() && a.basis_ == b.basis_;
  }

 private:
  Index ambient_dim_ = 0;
  Mat basis_;
  std::vector<Index> pivots_;
};

/// {v : m v = 0}.
Subspace kernel(const Mat& m);
/// {v : x v = zeta v}.
Subspace eigenspace(const Mat& x, const CycNum& zeta);
Subspace eigenspace(const Mat& x, const RootOfUnity& zeta);
/// True iff b is a subspace of a.
bool contains(const Subspace& a, const Subspace& b);
/// g applied to every vector of s.
Subspace apply(const Mat& g, const Subspace& s);
Subspace intersection(const Subspace& a, const Subspace& b);

/// One row per line, entries separated by ';' (semicolons inside cyc(...) are not separators).
std::string format_matrix(const Mat& m);
Mat parse_matrix(const std::vector<std::string>& lines);
std::vector<std::string> split_row(std::string_view line);
/// Canonical serialization used as a hash key for group elements.
std::string matrix_key(const Mat& m);

}  // namespace eigenposet
