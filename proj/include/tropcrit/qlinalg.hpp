#pragma once

#include <optional>
#include <vector>

#include "tropcrit/rational.hpp"

namespace tropcrit {

using QMat = std::vector<QVec>;

// In-place reduced row echelon form over the first `ncols` columns (extra
// columns ride along as an augmented part). Returns pivot column indices.
// Rows beyond the pivot count are zero in the first ncols columns but may
// carry nonzero augmented entries (inconsistent system).
std::vector<size_t> rref(QMat& m, size_t ncols);

size_t qrank(QMat m, size_t ncols);

// basis of { x : m x = 0 }, m rows of length n
QMat nullspace(const QMat& m, size_t n);

// unique solution of square full-rank system a x = b; nullopt when singular
std::optional<QVec> solve_square(QMat a, QVec b);

Rational dot(const QVec& a, const QVec& b);

// scale to coprime integers, first nonzero entry positive; zero vector unchanged
QVec primitive_integer(QVec v);

} // namespace tropcrit
