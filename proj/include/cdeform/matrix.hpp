#pragma once

#include "cdeform/rational.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cdeform {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Exact matrix over the rationals. Carrier for group elements and forms.
using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Result of Gauss-Jordan elimination over a field.
template <typename Scalar>
struct RowEchelon {
  Matrix<Scalar> reduced;
  std::vector<Eigen::Index> pivot_columns;
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_columns.size()); }
};

/// Reduced row echelon form over an exact field.
template <typename Scalar>
RowEchelon<Scalar> row_echelon(Matrix<Scalar> m) {
  RowEchelon<Scalar> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (m(r, col) != Scalar(0)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == Scalar(0)) continue;
      const Scalar f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    out.pivot_columns.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled to integers; all intermediate values then stay integral.
Eigen::Index rank(const QMatrix& m);

/// Rank over an arbitrary exact field via Gauss-Jordan.
template <typename Scalar>
Eigen::Index rank_gauss(const Matrix<Scalar>& m) {
  return row_echelon(m).rank();
}

/// Basis of the right kernel, one basis vector per column of the result.
template <typename Scalar>
Matrix<Scalar> kernel(const Matrix<Scalar>& m) {
  const auto ech = row_echelon(m);
  const Eigen::Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto c : ech.pivot_columns) is_pivot[static_cast<std::size_t>(c)] = true;
  Matrix<Scalar> basis(n, n - ech.rank());
  basis.setConstant(Scalar(0));
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = Scalar(1);
    for (Eigen::Index i = 0; i < ech.rank(); ++i)
      basis(ech.pivot_columns[static_cast<std::size_t>(i)], k) = -ech.reduced(i, free);
    ++k;
  }
  return basis;
}

/// Basis of the column space, taken from the pivot columns of the input.
template <typename Scalar>
Matrix<Scalar> column_space(const Matrix<Scalar>& m) {
  const auto ech = row_echelon(m);
  Matrix<Scalar> basis(m.rows(), ech.rank());
  for (Eigen::Index i = 0; i < ech.rank(); ++i)
    basis.col(i) = m.col(ech.pivot_columns[static_cast<std::size_t>(i)]);
  return basis;
}

/// Exact solution of m x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
template <typename Scalar>
std::optional<Matrix<Scalar>> solve(const Matrix<Scalar>& m, const Matrix<Scalar>& b) {
  if (m.rows() != b.rows()) throw DimensionError("solve: row mismatch");
  Matrix<Scalar> aug(m.rows(), m.cols() + b.cols());
  aug << m, b;
  const auto ech = row_echelon(aug);
  Matrix<Scalar> x(m.cols(), b.cols());
  x.setConstant(Scalar(0));
  for (Eigen::Index i = 0; i < ech.rank(); ++i) {
    const auto pc = ech.pivot_columns[static_cast<std::size_t>(i)];
    if (pc >= m.cols()) return std::nullopt;
    x.row(pc) = ech.reduced.row(i).tail(b.cols());
  }
  return x;
}

template <typename Scalar>
Matrix<Scalar> inverse(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse: matrix is not square");
  const Eigen::Index n = m.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug << m, Matrix<Scalar>::Identity(n, n);
  const auto ech = row_echelon(aug);
  if (ech.rank() < n || ech.pivot_columns[static_cast<std::size_t>(n - 1)] >= n)
    throw SingularMatrix("inverse: matrix is singular");
  return ech.reduced.rightCols(n);
}

template <typename Scalar>
Scalar determinant(Matrix<Scalar> m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant: matrix is not square");
  Scalar det(1);
  const Eigen::Index n = m.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (m(r, col) != Scalar(0)) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Scalar(0);
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (m(r, col) == Scalar(0)) continue;
      const Scalar f = m(r, col) / m(col, col);
      for (Eigen::Index c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

template <typename Scalar>
bool is_zero_matrix(const Matrix<Scalar>& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (m.data()[i] != Scalar(0)) return false;
  return true;
}

/// Exact product that avoids Eigen's blocked kernels for non-POD scalars.
template <typename Scalar>
Matrix<Scalar> mul(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.cols() != b.rows()) throw DimensionError("mul: inner dimension mismatch");
  Matrix<Scalar> out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Scalar acc(0);
      for (Eigen::Index k = 0; k < a.cols(); ++k)
        if (a(i, k) != Scalar(0) && b(k, j) != Scalar(0)) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

template <typename Scalar>
Matrix<Scalar> matrix_power(const Matrix<Scalar>& m, int k) {
  Matrix<Scalar> out = Matrix<Scalar>::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = mul(out, m);
  return out;
}

/// True iff lhs == c * rhs for some scalar c (c returned through `factor`).
template <typename Scalar>
bool is_scalar_multiple(const Matrix<Scalar>& lhs, const Matrix<Scalar>& rhs, Scalar* factor = nullptr) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) return false;
  std::optional<Scalar> c;
  for (Eigen::Index i = 0; i < rhs.size(); ++i) {
    if (rhs.data()[i] != Scalar(0)) {
      c = lhs.data()[i] / rhs.data()[i];
      break;
    }
  }
  if (!c) return is_zero_matrix(lhs);
  for (Eigen::Index i = 0; i < rhs.size(); ++i)
    if (lhs.data()[i] != *c * rhs.data()[i]) return false;
  if (factor) *factor = *c;
  return true;
}

Matrix<double> to_double(const QMatrix& m);

}  // namespace cdeform
