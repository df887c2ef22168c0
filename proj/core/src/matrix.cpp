#include "twdesc/matrix.hpp"

#include <sstream>

#include "twdesc/error.hpp"

namespace twdesc {

namespace {

void check_field(const Field& a, const Field& b) {
  if (!(a == b)) throw_input("field mismatch");
}

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::from_ints(Field field, const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw_input("ragged matrix literal");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Scalar::from_int(field, rows[r][c]);
  }
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_) {
    if (!s.is_zero()) return false;
  }
  return true;
}

bool Matrix::operator==(const Matrix& other) const {
  return field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_ &&
         data_ == other.data_;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  check_field(field_, other.field_);
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw_input("shape mismatch in addition: " + shape(*this) + " vs " + shape(other));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  check_field(field_, other.field_);
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw_input("shape mismatch in subtraction: " + shape(*this) + " vs " + shape(other));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  check_field(field_, s.field());
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& x : m.data_) x = -x;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_field(a.field_, b.field_);
  if (a.cols_ != b.rows_) {
    throw_input("shape mismatch in product: " + shape(a) + " * " + shape(b));
  }
  Matrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b(k, j);
        if (!bkj.is_zero()) out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

Matrix Matrix::block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const {
  if (row + rows > rows_ || col + cols > cols_) throw_input("block out of range");
  Matrix out(field_, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = (*this)(row + r, col + c);
  }
  return out;
}

void Matrix::set_block(std::size_t row, std::size_t col, const Matrix& m) {
  check_field(field_, m.field_);
  if (row + m.rows_ > rows_ || col + m.cols_ > cols_) throw_input("block out of range");
  for (std::size_t r = 0; r < m.rows_; ++r) {
    for (std::size_t c = 0; c < m.cols_; ++c) (*this)(row + r, col + c) = m(r, c);
  }
}

void Matrix::add_block(std::size_t row, std::size_t col, const Matrix& m) {
  check_field(field_, m.field_);
  if (row + m.rows_ > rows_ || col + m.cols_ > cols_) throw_input("block out of range");
  for (std::size_t r = 0; r < m.rows_; ++r) {
    for (std::size_t c = 0; c < m.cols_; ++c) (*this)(row + r, col + c) += m(r, c);
  }
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix hstack(const std::vector<Matrix>& parts, Field field, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw_input("hstack row mismatch");
    cols += p.cols();
  }
  Matrix out(field, rows, cols);
  std::size_t at = 0;
  for (const auto& p : parts) {
    out.set_block(0, at, p);
    at += p.cols();
  }
  return out;
}

Matrix vstack(const std::vector<Matrix>& parts, Field field, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw_input("vstack column mismatch");
    rows += p.rows();
  }
  Matrix out(field, rows, cols);
  std::size_t at = 0;
  for (const auto& p : parts) {
    out.set_block(at, 0, p);
    at += p.rows();
  }
  return out;
}

}  // namespace twdesc
