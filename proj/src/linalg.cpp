#include "sqckit/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace sqckit {

static void check_same_dim(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "vector sizes differ");
}

Vec add(std::span<const double> a, std::span<const double> b) {
  check_same_dim(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(std::span<const double> a, std::span<const double> b) {
  check_same_dim(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scaled(std::span<const double> a, double c) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

Vec combine(std::span<const double> a, std::span<const double> b, double c) {
  check_same_dim(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i] + (1.0 - c) * b[i];
  return r;
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows_ == 0 || cols_ == 0 || data_.size() != rows_ * cols_)
    fail(ErrorCode::InvalidConstant, "matrix shape does not match data length");
}

Matrix Matrix::identity(std::size_t n) {
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
  return Matrix(n, n, std::move(d));
}

Matrix Matrix::diagonal(const Vec& diag) {
  std::size_t n = diag.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = diag[i];
  return Matrix(n, n, std::move(d));
}

Vec Matrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) fail(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
  Vec r(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += data_[i * cols_ + j] * x[j];
    r[i] = s;
  }
  return r;
}

bool Matrix::is_diagonal(double tol) const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && std::abs((*this)(i, j)) > tol) return false;
  return true;
}

Vec Matrix::solve(std::span<const double> x) const {
  if (!is_square()) fail(ErrorCode::ZeroOperator, "solve requires a square matrix");
  if (x.size() != rows_) fail(ErrorCode::DimensionMismatch, "solve rhs size mismatch");
  std::size_t n = rows_;
  std::vector<double> a = data_;
  Vec b(x.begin(), x.end());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-14)
      fail(ErrorCode::ZeroOperator, "singular matrix in preimage solve");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      double m = a[r * n + col] / a[col * n + col];
      if (m == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[r * n + j] -= m * a[col * n + j];
      b[r] -= m * b[col];
    }
  }
  Vec y(n, 0.0);
  for (std::size_t ri = n; ri-- > 0;) {
    double s = b[ri];
    for (std::size_t j = ri + 1; j < n; ++j) s -= a[ri * n + j] * y[j];
    y[ri] = s / a[ri * n + ri];
  }
  return y;
}

}  // namespace sqckit
