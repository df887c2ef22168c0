#include "twdesc/linalg.hpp"

#include <utility>

#include "twdesc/error.hpp"

namespace twdesc {

namespace {

// Gauss-Jordan elimination restricted to the first `pivot_cols` columns;
// row operations are applied to the whole matrix.
RrefResult eliminate(Matrix m, std::size_t pivot_cols) {
  RrefResult out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < m.rows(); ++col) {
    std::size_t pick = row;
    while (pick < m.rows() && m(pick, col).is_zero()) ++pick;
    if (pick == m.rows()) continue;
    if (pick != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pick, c), m(row, c));
    }
    if (!m(row, col).is_one()) {
      const Scalar inv = m(row, col).inverse();
      for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const Scalar factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!m(row, c).is_zero()) m(r, c) -= factor * m(row, c);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = out.pivots.size();
  out.reduced = std::move(m);
  return out;
}

}  // namespace

RrefResult rref(const Matrix& m) { return eliminate(m, m.cols()); }

std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  return rref(m).rank;
}

Matrix kernel_basis(const Matrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  Matrix basis(m.field(), m.cols(), m.cols() - r.rank);
  std::size_t out_col = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, out_col) = Scalar::one(m.field());
    for (std::size_t i = 0; i < r.rank; ++i) {
      basis(r.pivots[i], out_col) = -r.reduced(i, free);
    }
    ++out_col;
  }
  return basis;
}

Matrix image_basis(const Matrix& m) {
  const RrefResult r = rref(m);
  Matrix basis(m.field(), m.rows(), r.rank);
  for (std::size_t i = 0; i < r.rank; ++i) basis.set_block(0, i, m.column(r.pivots[i]));
  return basis;
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs) {
  if (m.rows() != rhs.rows()) {
    throw_input("solve: row mismatch " + std::to_string(m.rows()) + " vs " +
                std::to_string(rhs.rows()));
  }
  if (!(m.field() == rhs.field())) throw_input("field mismatch");
  const RrefResult r = eliminate(hstack({m, rhs}, m.field(), m.rows()), m.cols());
  for (std::size_t row = r.rank; row < m.rows(); ++row) {
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
      if (!r.reduced(row, m.cols() + c).is_zero()) return std::nullopt;
    }
  }
  Matrix x(m.field(), m.cols(), rhs.cols());
  for (std::size_t i = 0; i < r.rank; ++i) {
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
      x(r.pivots[i], c) = r.reduced(i, m.cols() + c);
    }
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const RrefResult r = eliminate(hstack({m, Matrix::identity(m.field(), m.rows())}, m.field(), m.rows()), m.cols());
  if (r.rank != m.rows()) return std::nullopt;
  return r.reduced.block(0, m.cols(), m.rows(), m.cols());
}

}  // namespace twdesc
