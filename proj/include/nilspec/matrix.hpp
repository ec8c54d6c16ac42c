#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "nilspec/rational.hpp"

namespace nilspec {

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows,
                          std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Rational> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }

  bool is_zero() const;
  Matrix transposed() const;

  /// Rows `first..first+count` as a new matrix.
  Matrix row_block(std::size_t first, std::size_t count) const;
  /// Stack `other` underneath; column counts must agree.
  Matrix stacked(const Matrix& other) const;

  friend bool operator==(const Matrix& a, const Matrix& b) = default;
  friend std::ostream& operator<<(std::ostream& os, const Matrix& m);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
/// Matrix times column vector.
std::vector<Rational> operator*(const Matrix& a, std::span<const Rational> v);

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  /// Pivot column of each of the first `rank` rows.
  std::vector<std::size_t> pivots;
};

/// Canonical reduced row-echelon form, computed exactly.
RrefResult rref(const Matrix& m);

/// Rows spanning the null space {x : m x = 0}, one basis vector per free
/// column of rref(m).
Matrix kernel_basis(const Matrix& m);

/// Exact inverse; throws DimensionMismatch if `m` is not square or singular.
Matrix inverse(const Matrix& m);

}  // namespace nilspec
