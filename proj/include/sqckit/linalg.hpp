#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sqckit/errors.hpp"

namespace sqckit {

using Vec = std::vector<double>;

Vec add(std::span<const double> a, std::span<const double> b);
Vec sub(std::span<const double> a, std::span<const double> b);
Vec scaled(std::span<const double> a, double c);
/// c*a + (1-c)*b, the convex combination used throughout.
Vec combine(std::span<const double> a, std::span<const double> b, double c);
double dot(std::span<const double> a, std::span<const double> b);

/// Dense row-major matrix, desk-scale (n <= 64). Only what the affine
/// combinators need: shape, apply, diagonal probes.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vec& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<double>& data() const { return data_; }

  Vec apply(std::span<const double> x) const;

  bool is_square() const { return rows_ == cols_; }
  bool is_diagonal(double tol = 0.0) const;

  /// Solves A y = x for square A via Gaussian elimination with partial
  /// pivoting. Throws ZeroOperator on a (numerically) singular matrix.
  Vec solve(std::span<const double> x) const;

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

}  // namespace sqckit
