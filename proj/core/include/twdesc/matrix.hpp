#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "twdesc/scalar.hpp"

namespace twdesc {

// Dense row-major matrix over a single Field. Empty shapes (0 x n, n x 0)
// are legal and behave like zero maps.
class Matrix {
 public:
  Matrix() : Matrix(Field::rationals(), 0, 0) {}
  Matrix(Field field, std::size_t rows, std::size_t cols);

  static Matrix identity(Field field, std::size_t n);
  // Rows of integer literals; convenient in tests and fixtures.
  static Matrix from_ints(Field field, const std::vector<std::vector<long>>& rows);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool operator==(const Matrix& other) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(const Scalar& s);
  Matrix operator-() const;

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  Matrix block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t row, std::size_t col, const Matrix& m);
  // Adds `m` into the block at (row, col).
  void add_block(std::size_t row, std::size_t col, const Matrix& m);
  Matrix column(std::size_t c) const { return block(0, c, rows_, 1); }

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

Matrix hstack(const std::vector<Matrix>& parts, Field field, std::size_t rows);
Matrix vstack(const std::vector<Matrix>& parts, Field field, std::size_t cols);

}  // namespace twdesc
