#include "tropcrit/qlinalg.hpp"

#include <algorithm>

namespace tropcrit {

std::vector<size_t> rref(QMat& m, size_t ncols) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < m.size(); ++col) {
        size_t piv = m.size();
        for (size_t i = row; i < m.size(); ++i)
            if (m[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv == m.size()) continue;
        std::swap(m[piv], m[row]);
        Rational p = m[row][col];
        for (auto& x : m[row]) x /= p;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (size_t t = 0; t < m[i].size(); ++t) m[i][t] -= f * m[row][t];
        }
        pivots.push_back(col);
        ++row;
    }
    // rows from `row` on are zero in the first ncols columns; they are kept so
    // augmented systems can be checked for inconsistency by the caller
    return pivots;
}

size_t qrank(QMat m, size_t ncols) {
    return rref(m, ncols).size();
}

QMat nullspace(const QMat& m, size_t n) {
    QMat a = m;
    for (auto& row : a) row.resize(n, Rational(0));
    std::vector<size_t> piv = rref(a, n);
    std::vector<bool> is_piv(n, false);
    for (size_t c : piv) is_piv[c] = true;
    QMat basis;
    for (size_t f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        QVec v(n, Rational(0));
        v[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVec> solve_square(QMat a, QVec b) {
    size_t n = a.size();
    for (size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
    std::vector<size_t> piv = rref(a, n);
    if (piv.size() != n) return std::nullopt;
    QVec x(n);
    for (size_t i = 0; i < n; ++i) x[piv[i]] = a[i][n];
    return x;
}

Rational dot(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw length_mismatch("dot length");
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVec primitive_integer(QVec v) {
    Int l = 1;
    for (const auto& x : v) l = lcm(l, denominator(x));
    Int g = 0;
    for (auto& x : v) {
        x *= l;
        g = gcd(g, numerator(x));
    }
    if (g == 0) return v;
    int sign = 0;
    for (const auto& x : v)
        if (x != 0) {
            sign = x > 0 ? 1 : -1;
            break;
        }
    Rational scale(Int(sign), g);
    for (auto& x : v) x *= scale;
    return v;
}

} // namespace tropcrit
