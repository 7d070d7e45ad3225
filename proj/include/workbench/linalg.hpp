/// @file linalg.hpp
/// Exact integer linear algebra: fraction-free elimination, determinants,
/// linear solves with rational right-hand sides, definiteness tests.
#pragma once

#include <vector>

#include "workbench/rational.hpp"

namespace workbench {

using IntMatrix = std::vector<std::vector<Int>>;

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. Throws std::invalid_argument on a non-square input.
Int determinant_exact(IntMatrix m);

/// Solves M x = b exactly for a square integer matrix and rational b.
/// Throws std::invalid_argument on shape mismatch, std::domain_error if
/// the matrix is singular.
std::vector<Rat> solve_exact(IntMatrix m, const std::vector<Rat>& b);

/// True iff the symmetric integer matrix is negative definite, decided by
/// the alternating sign of its leading principal minors. Exact; throws on
/// non-square input. The empty matrix counts as negative definite.
bool is_negative_definite_matrix(const IntMatrix& m);

}  // namespace workbench
