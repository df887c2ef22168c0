#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "twdesc/matrix.hpp"

namespace twdesc {

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

// Reduced row-echelon form. Pivots are taken as the first nonzero entry in
// column order, so the result is reproducible bit for bit.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

// Columns form a basis of the null space, one per free column in
// increasing order; cols(m) - rank(m) columns in total.
Matrix kernel_basis(const Matrix& m);

// Columns form a basis of the column space (the pivot columns of m).
Matrix image_basis(const Matrix& m);

// Some x with m * x == rhs (free variables set to zero), or nullopt when the
// system is inconsistent. Throws on a row count mismatch.
std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs);

// Two-sided inverse of a square matrix, nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

}  // namespace twdesc
