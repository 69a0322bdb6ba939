#pragma once

// Dense extended-precision linear algebra: Cholesky, the generalized
// symmetric-definite eigenproblem and Householder least squares.

#include <cstddef>
#include <span>
#include <vector>

#include "nopair/precision.hpp"

namespace nopair {

using Vector = std::vector<HighReal>;

/// Row-major dense matrix.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  HighReal& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const HighReal& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<HighReal> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const HighReal> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Vector column(std::size_t c) const;
  Matrix transposed() const;

  std::span<const HighReal> data() const noexcept { return data_; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<HighReal> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const HighReal> x);
Matrix operator-(const Matrix& a, const Matrix& b);

HighReal max_abs(const Matrix& m);
HighReal frobenius_norm(const Matrix& m);
HighReal dot(std::span<const HighReal> a, std::span<const HighReal> b);

/// Symmetric matrix stored as its packed lower triangle, so A == A^T holds
/// exactly by construction.
class SymMatrix {
public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim) : dim_(dim), data_(dim * (dim + 1) / 2) {}

  static SymMatrix identity(std::size_t n);
  /// Takes the arithmetic mean (M + M^T)/2 of a square dense matrix.
  static SymMatrix symmetrized(const Matrix& m);

  std::size_t dim() const noexcept { return dim_; }

  HighReal operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
  HighReal& at(std::size_t i, std::size_t j) { return data_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, const HighReal& v) { data_[index(i, j)] = v; }
  void add(std::size_t i, std::size_t j, const HighReal& v) { data_[index(i, j)] += v; }

  Matrix to_dense() const;
  HighReal max_abs() const;

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator*=(const HighReal& factor);

private:
  static std::size_t index(std::size_t i, std::size_t j) noexcept {
    return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i;
  }

  std::size_t dim_ = 0;
  std::vector<HighReal> data_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(const HighReal& factor, SymMatrix a);

/// Quadratic form x^T A y.
HighReal bilinear(const SymMatrix& a, std::span<const HighReal> x, std::span<const HighReal> y);

/// Congruence V^T A V for a dim x k matrix V.
SymMatrix congruence(const SymMatrix& a, const Matrix& v);

struct EigenDecomposition {
  Vector values;   // ascending
  Matrix vectors;  // column i belongs to values[i]
};

enum class EigenMethod {
  jacobi,         // cyclic two-sided Jacobi on the reduced standard problem
  householder_ql  // Householder tridiagonalisation followed by implicit QL
};

struct EigenOptions {
  EigenMethod method = EigenMethod::jacobi;
  std::size_t max_sweeps = 100;
  /// Off-diagonal Frobenius norm target relative to the matrix Frobenius norm.
  double relative_threshold = 1e-30;
};

/// Lower Cholesky factor L with L L^T = S. Throws NonPositiveDefinite.
Matrix cholesky(const SymMatrix& s);

/// All eigenpairs of A v = lambda S v, ascending, with S-orthonormal vectors.
EigenDecomposition geneig_sym(const SymMatrix& a, const SymMatrix& s, const EigenOptions& options = {});

/// Standard symmetric eigenproblem (S = I).
EigenDecomposition eig_sym(const SymMatrix& a, const EigenOptions& options = {});

/// Lowest eigenvalue and S-normalized eigenvector of A v = lambda S v.
struct EigenPair {
  HighReal value;
  Vector vector;
};
EigenPair lowest_eigenpair(const SymMatrix& a, const SymMatrix& s);

struct LeastSquaresResult {
  Vector coefficients;
  HighReal rms_residual;
};

/// Minimizes ||design x - rhs||_2 by Householder QR. Throws RankDeficient when a
/// diagonal element of R falls below `conditioning_floor` times its column norm.
LeastSquaresResult least_squares(const Matrix& design, std::span<const HighReal> rhs,
                                 double conditioning_floor = 1e-28);

}  // namespace nopair
