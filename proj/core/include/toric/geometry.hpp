#ifndef TORIC_GEOMETRY_HPP
#define TORIC_GEOMETRY_HPP

// Small double-precision helpers for distances to cones, subspaces, and
// convex hulls. Sizes are tiny, so active-set enumeration is exact enough
// and avoids pulling in a QP solver.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace toric {

using DVec = std::vector<double>;
using DMat = std::vector<DVec>;

inline double dot_d(const DVec& a, const DVec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_d(const DVec& a) { return std::sqrt(dot_d(a, a)); }

inline DVec sub_d(const DVec& a, const DVec& b) {
    DVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline std::optional<DVec> gauss_solve(DMat a, DVec b) {
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (std::fabs(a[i][c]) > std::fabs(a[p][c])) p = i;
        if (std::fabs(a[p][c]) < 1e-12) return std::nullopt;
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c) continue;
            const double f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    DVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

/// Least-squares coefficients of x on the span of gens (possibly dependent
/// subsets are skipped by the caller via the nullopt return).
inline std::optional<DVec> lsq_coeffs(const DVec& x, const std::vector<DVec>& gens) {
    const std::size_t k = gens.size();
    DMat gram(k, DVec(k));
    DVec rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot_d(gens[i], gens[j]);
        rhs[i] = dot_d(gens[i], x);
    }
    return gauss_solve(std::move(gram), std::move(rhs));
}

/// Distance from x to the cone of nonnegative combinations of gens.
inline double dist_to_generated_cone(const DVec& x, const std::vector<DVec>& gens) {
    double best = norm_d(x);  // empty face: the apex
    const std::size_t k = gens.size();
    for (std::size_t mask = 1; mask < (1u << k); ++mask) {
        std::vector<DVec> sel;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) sel.push_back(gens[i]);
        auto lam = lsq_coeffs(x, sel);
        if (!lam) continue;
        bool ok = true;
        for (double l : *lam)
            if (l < -1e-9) ok = false;
        if (!ok) continue;
        DVec p(x.size(), 0.0);
        for (std::size_t i = 0; i < sel.size(); ++i)
            for (std::size_t j = 0; j < x.size(); ++j) p[j] += (*lam)[i] * sel[i][j];
        best = std::min(best, norm_d(sub_d(x, p)));
    }
    return best;
}

/// Distance from x to the subspace spanned by gens.
inline double dist_to_span(const DVec& x, const std::vector<DVec>& gens) {
    if (gens.empty()) return norm_d(x);
    // Gram-Schmidt projection.
    std::vector<DVec> basis;
    for (const auto& g : gens) {
        DVec v = g;
        for (const auto& b : basis) {
            const double f = dot_d(v, b);
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * b[j];
        }
        const double n = norm_d(v);
        if (n > 1e-12) {
            for (auto& vv : v) vv /= n;
            basis.push_back(std::move(v));
        }
    }
    DVec r = x;
    for (const auto& b : basis) {
        const double f = dot_d(r, b);
        for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * b[j];
    }
    return norm_d(r);
}

/// Distance from x to the polyhedron {y : eq . y = rhs_eq, in . y >= rhs_in},
/// by projecting onto every active set and keeping the best feasible result.
inline double dist_to_hpolyhedron(const DVec& x, const std::vector<DVec>& eq_normals,
                                  const DVec& eq_rhs, const std::vector<DVec>& in_normals,
                                  const DVec& in_rhs) {
    const std::size_t k = in_normals.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t mask = 0; mask < (1u << k); ++mask) {
        std::vector<DVec> act = eq_normals;
        DVec rhs = eq_rhs;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                act.push_back(in_normals[i]);
                rhs.push_back(in_rhs[i]);
            }
        DVec p = x;
        if (!act.empty()) {
            // p = x - N^T (N N^T)^{-1} (N x - rhs)
            const std::size_t m = act.size();
            DMat gram(m, DVec(m));
            DVec resid(m);
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) gram[i][j] = dot_d(act[i], act[j]);
                resid[i] = dot_d(act[i], x) - rhs[i];
            }
            auto mult = gauss_solve(std::move(gram), std::move(resid));
            if (!mult) continue;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < p.size(); ++j) p[j] -= (*mult)[i] * act[i][j];
        }
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i)
            if (dot_d(in_normals[i], p) < in_rhs[i] - 1e-9) ok = false;
        for (std::size_t i = 0; i < eq_normals.size() && ok; ++i)
            if (std::fabs(dot_d(eq_normals[i], p) - eq_rhs[i]) > 1e-7) ok = false;
        if (ok) best = std::min(best, norm_d(sub_d(x, p)));
    }
    return best;
}

/// Distance from x to the convex hull of pts.
inline double dist_to_convex_hull(const DVec& x, const std::vector<DVec>& pts) {
    const std::size_t k = pts.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t mask = 1; mask < (1u << k); ++mask) {
        std::vector<DVec> sel;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) sel.push_back(pts[i]);
        // Projection onto the affine hull of sel with barycentric nonnegativity.
        const std::size_t m = sel.size();
        // Solve min |x - sum l_i p_i|, sum l_i = 1 via KKT.
        DMat a(m + 1, DVec(m + 1, 0.0));
        DVec b(m + 1, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) a[i][j] = dot_d(sel[i], sel[j]);
            a[i][m] = 1;
            a[m][i] = 1;
            b[i] = dot_d(sel[i], x);
        }
        b[m] = 1;
        auto sol = gauss_solve(std::move(a), std::move(b));
        if (!sol) continue;
        bool ok = true;
        for (std::size_t i = 0; i < m; ++i)
            if ((*sol)[i] < -1e-9) ok = false;
        if (!ok) continue;
        DVec p(x.size(), 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < x.size(); ++j) p[j] += (*sol)[i] * sel[i][j];
        best = std::min(best, norm_d(sub_d(x, p)));
    }
    return best;
}

}  // namespace toric

#endif
