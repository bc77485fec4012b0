#include "eigenposet/exactla.hpp"

#include <sstream>

namespace eigenposet {

Mat identity(Index n) { return Mat::Identity(n, n); }

Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
  Mat out = Mat::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (Index j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return out;
}

Mat matinv(const Mat& m) { return inverse(m); }

Index rank(const Mat& m) {
  Mat copy = m;
  return static_cast<Index>(rref_in_place(copy).size());
}

long matrix_order(const Mat& m, long limit) {
  if (m.rows() != m.cols()) throw DimensionMismatch("order of a non-square matrix");
  const Mat id = identity(m.rows());
  Mat power = m;
  for (long k = 1; k <= limit; ++k) {
    if (power == id) return k;
    power = matmul(power, m);
  }
  return 0;
}

CycNum determinant(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  Mat a = m;
  const Index n = a.rows();
  CycNum det(1);
  for (Index c = 0; c < n; ++c) {
    Index p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return CycNum(0);
    if (p != c) {
      a.row(p).swap(a.row(c));
      det = -det;
    }
    det *= a(c, c);
    const CycNum pinv = inv(a(c, c));
    for (Index i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const CycNum f = a(i, c) * pinv;
      for (Index k = c; k < n; ++k) {
        if (!a(c, k).is_zero()) a(i, k) -= f * a(c, k);
      }
    }
  }
  return det;
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::span(Mat rows) {
  Subspace s;
  s.ambient_dim_ = rows.cols();
  s.pivots_ = rref_in_place(rows);
  s.basis_ = rows.topRows(static_cast<Index>(s.pivots_.size()));
  return s;
}

Subspace Subspace::full(Index ambient_dim) { return span(identity(ambient_dim)); }

Subspace Subspace::zero(Index ambient_dim) { return span(Mat::Zero(0, ambient_dim)); }

bool Subspace::contains_vector(const Vector<CycNum>& v) const {
  if (v.size() != ambient_dim_) throw DimensionMismatch("vector and subspace dimensions differ");
  Vector<CycNum> r = v;
  for (Index i = 0; i < dim(); ++i) {
    const CycNum c = v(pivots_[i]);
    if (c.is_zero()) continue;
    for (Index k = 0; k < ambient_dim_; ++k) {
      if (!basis_(i, k).is_zero()) r(k) -= c * basis_(i, k);
    }
  }
  for (Index k = 0; k < ambient_dim_; ++k) {
    if (!r(k).is_zero()) return false;
  }
  return true;
}

Vector<CycNum> Subspace::coordinates(const Vector<CycNum>& v) const {
  Vector<CycNum> c(dim());
  for (Index i = 0; i < dim(); ++i) c(i) = v(pivots_[i]);
  return c;
}

std::string Subspace::key() const {
  return "V" + std::to_string(ambient_dim_) + "[" + matrix_key(basis_) + "]";
}

std::string Subspace::describe() const {
  std::ostringstream os;
  os << "dim " << dim() << " span{";
  for (Index i = 0; i < dim(); ++i) {
    os << (i ? ", " : "") << "(";
    for (Index k = 0; k < ambient_dim_; ++k) os << (k ? "; " : "") << basis_(i, k);
    os << ")";
  }
  os << "}";
  return os.str();
}

Subspace kernel(const Mat& m) { return Subspace::span(kernel_basis(m)); }

Subspace eigenspace(const Mat& x, const CycNum& zeta) {
  if (x.rows() != x.cols()) throw DimensionMismatch("eigenspace of a non-square matrix");
  Mat shifted = x;
  for (Index i = 0; i < x.rows(); ++i) shifted(i, i) -= zeta;
  return kernel(shifted);
}

Subspace eigenspace(const Mat& x, const RootOfUnity& zeta) { return eigenspace(x, embed(zeta)); }

bool contains(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subspaces live in different ambient spaces");
  if (b.dim() > a.dim()) return false;
  for (Index i = 0; i < b.dim(); ++i) {
    if (!a.contains_vector(b.basis().row(i).transpose())) return false;
  }
  return true;
}

Subspace apply(const Mat& g, const Subspace& s) {
  if (g.rows() != s.ambient_dim() || g.cols() != s.ambient_dim()) {
    throw DimensionMismatch("matrix does not act on the subspace's ambient space");
  }
  if (s.dim() == 0) return s;
  return Subspace::span(matmul(s.basis(), g.transpose()));
}

Subspace intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subspaces live in different ambient spaces");
  const Index n = a.ambient_dim();
  const Mat wa = a.dim() == 0 ? identity(n) : kernel_basis(a.basis());
  const Mat wb = b.dim() == 0 ? identity(n) : kernel_basis(b.basis());
  Mat joint(wa.rows() + wb.rows(), n);
  joint.topRows(wa.rows()) = wa;
  joint.bottomRows(wb.rows()) = wb;
  if (joint.rows() == 0) return Subspace::full(n);
  return kernel(joint);
}

// ---------------------------------------------------------------- text format

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> out;
  int depth = 0;
  std::string current;
  for (char ch : line) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ';' && depth == 0) {
      out.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in matrix row");
  out.push_back(current);
  return out;
}

std::string format_matrix(const Mat& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out += "; ";
      out += m(i, j).to_string();
    }
    out += "\n";
  }
  return out;
}

Mat parse_matrix(const std::vector<std::string>& lines) {
  std::vector<std::vector<CycNum>> rows;
  for (const auto& line : lines) {
    std::vector<CycNum> row;
    for (const auto& token : split_row(line)) row.push_back(CycNum::parse(token));
    if (!rows.empty() && row.size() != rows.front().size()) throw ParseError("ragged matrix rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return Mat(0, 0);
  Mat m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string matrix_key(const Mat& m) {
  std::string key = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      key += m(i, j).to_string();
      key += '|';
    }
  }
  return key;
}

}  // namespace eigenposet
