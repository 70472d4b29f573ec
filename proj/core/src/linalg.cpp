#include "toric/linalg.hpp"

namespace toric {

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<int> echelon(RationalMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        const Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

}  // namespace

int rank(RationalMatrix m) { return static_cast<int>(echelon(m).size()); }

std::optional<RationalVec> solve_linear(RationalMatrix a, RationalVec b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    if (b.size() != rows) throw std::invalid_argument("solve_linear: size mismatch");
    RationalMatrix aug = a;
    for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    std::vector<int> pivots = echelon(aug);
    // Inconsistent iff a pivot lands in the augmented column.
    for (int p : pivots)
        if (p == static_cast<int>(cols)) return std::nullopt;
    RationalVec x(cols, Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
    return x;
}

std::vector<RationalVec> nullspace(RationalMatrix a) {
    if (a.empty()) return {};
    const std::size_t cols = a[0].size();
    std::vector<int> pivots = echelon(a);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<RationalVec> basis;
    for (std::size_t freec = 0; freec < cols; ++freec) {
        if (is_pivot[freec]) continue;
        RationalVec v(cols, Rational(0));
        v[freec] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -a[i][freec];
        basis.push_back(std::move(v));
    }
    return basis;
}

int orientation_sign(const std::vector<RationalVec>& from, const std::vector<RationalVec>& to) {
    const std::size_t k = from.size();
    if (to.size() != k || k == 0) return 0;
    const std::size_t n = from[0].size();
    // Solve F X = T columnwise, then take sign(det X).
    RationalMatrix aug(n, RationalVec(2 * k, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            aug[i][j] = from[j][i];
            aug[i][k + j] = to[j][i];
        }
    std::vector<int> pivots = echelon(aug);
    for (int p : pivots)
        if (p >= static_cast<int>(k)) return 0;  // `to` not in span of `from`
    if (pivots.size() != k) return 0;
    RationalMatrix x(k, RationalVec(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) x[i][j] = aug[i][k + j];
    // Determinant sign by elimination.
    int sign = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && x[p][c] == 0) ++p;
        if (p == k) return 0;
        if (p != c) {
            std::swap(x[p], x[c]);
            sign = -sign;
        }
        if (x[c][c] < 0) sign = -sign;
        for (std::size_t i = c + 1; i < k; ++i) {
            const Rational f = x[i][c] / x[c][c];
            for (std::size_t j = c; j < k; ++j) x[i][j] -= f * x[c][j];
        }
    }
    return sign;
}

}  // namespace toric
