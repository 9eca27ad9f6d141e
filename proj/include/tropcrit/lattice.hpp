#pragma once

#include <vector>

#include "tropcrit/rational.hpp"

namespace tropcrit {

// row-major, exact integer entries
using IntMat = std::vector<std::vector<Int>>;

IntMat identity_mat(size_t n);
IntMat mat_mul(const IntMat& a, const IntMat& b);
Int det(const IntMat& m); // square only

struct HnfResult {
    IntMat h; // row Hermite form: staircase, positive pivots
    IntMat u; // unimodular, u*m == h
    size_t rank = 0;
};

// Row-style HNF by integer row reduction (no reduction above pivots; the
// procedure is deterministic and idempotent on its own output).
HnfResult hnf(const IntMat& m);

// Diagonal of the Smith normal form (nonnegative, divisibility chain).
std::vector<Int> snf_diagonal(IntMat m);

// K is n x r with full column rank r (else rank_deficient). Returns an
// (n-r) x n matrix whose rows are a basis of the saturated lattice
// { alpha in Z^n : alpha^T K = 0 }, in row-HNF with positive leading entries.
IntMat annihilator_basis(const IntMat& k);

} // namespace tropcrit
