#include "tropcrit/lattice.hpp"

#include <algorithm>

namespace tropcrit {

IntMat identity_mat(size_t n) {
    IntMat m(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    if (a.empty() || b.empty()) return {};
    size_t n = a.size(), k = a[0].size(), m = b[0].size();
    if (k != b.size()) throw dimension_mismatch("mat_mul shape");
    IntMat c(n, std::vector<Int>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j)
            for (size_t t = 0; t < k; ++t) c[i][j] += a[i][t] * b[t][j];
    return c;
}

Int det(const IntMat& m) {
    size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw dimension_mismatch("det of non-square matrix");
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Int d = 0;
    for (size_t j = 0; j < n; ++j) {
        IntMat minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<Int> row;
            for (size_t t = 0; t < n; ++t)
                if (t != j) row.push_back(m[i][t]);
            minor.push_back(std::move(row));
        }
        Int term = m[0][j] * det(minor);
        d += (j % 2 == 0) ? term : -term;
    }
    return d;
}

HnfResult hnf(const IntMat& m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    for (const auto& r : m)
        if (r.size() != cols) throw dimension_mismatch("ragged matrix");
    HnfResult res{m, identity_mat(rows), 0};
    auto& h = res.h;
    auto& u = res.u;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        // Euclidean elimination below `row` in this column
        while (true) {
            size_t piv = rows;
            for (size_t i = row; i < rows; ++i) {
                if (h[i][col] == 0) continue;
                if (piv == rows || abs(h[i][col]) < abs(h[piv][col])) piv = i;
            }
            if (piv == rows) break; // column clear
            std::swap(h[piv], h[row]);
            std::swap(u[piv], u[row]);
            bool reduced_all = true;
            for (size_t i = row + 1; i < rows; ++i) {
                if (h[i][col] == 0) continue;
                Int q = h[i][col] / h[row][col]; // truncated division keeps |remainder| < |pivot|
                if (q != 0) {
                    for (size_t t = 0; t < cols; ++t) h[i][t] -= q * h[row][t];
                    for (size_t t = 0; t < rows; ++t) u[i][t] -= q * u[row][t];
                }
                if (h[i][col] != 0) reduced_all = false;
            }
            if (reduced_all) break;
        }
        if (row < rows && h[row][col] != 0) {
            if (h[row][col] < 0) {
                for (auto& x : h[row]) x = -x;
                for (auto& x : u[row]) x = -x;
            }
            ++row;
        }
    }
    res.rank = row;
    return res;
}

std::vector<Int> snf_diagonal(IntMat m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    std::vector<Int> diag;
    size_t t = 0;
    while (t < rows && t < cols) {
        // find minimal nonzero entry in the remaining block
        size_t pi = rows, pj = cols;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (pi == rows || abs(m[i][j]) < abs(m[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break; // block is zero
        std::swap(m[pi], m[t]);
        for (size_t i = t; i < rows; ++i) std::swap(m[i][pj], m[i][t]);
        bool clean = true;
        for (size_t i = t + 1; i < rows; ++i) {
            Int q = m[i][t] / m[t][t];
            if (q != 0)
                for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
            if (m[i][t] != 0) clean = false;
        }
        for (size_t j = t + 1; j < cols; ++j) {
            Int q = m[t][j] / m[t][t];
            if (q != 0)
                for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
            if (m[t][j] != 0) clean = false;
        }
        if (!clean) continue; // smaller entries appeared; repeat with same t
        // divisibility: fold any non-divisible entry into the pivot's row
        bool redo = false;
        for (size_t i = t + 1; i < rows && !redo; ++i)
            for (size_t j = t + 1; j < cols && !redo; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    for (size_t s = t; s < cols; ++s) m[t][s] += m[i][s];
                    redo = true;
                }
        if (redo) continue;
        diag.push_back(abs(m[t][t]));
        ++t;
    }
    return diag;
}

IntMat annihilator_basis(const IntMat& k) {
    size_t n = k.size();
    size_t r = n ? k[0].size() : 0;
    HnfResult hk = hnf(k);
    if (hk.rank != r) throw rank_deficient("annihilator_basis: K must have full column rank");
    // U*K = H with rows >= rank zero; those rows of the unimodular U are a
    // basis of the saturated left kernel.
    IntMat ker(hk.u.begin() + static_cast<long>(hk.rank), hk.u.end());
    if (ker.empty()) return IntMat{};
    return hnf(ker).h;
}

} // namespace tropcrit
