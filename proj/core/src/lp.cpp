#include "toric/lp.hpp"

#include <cstddef>

namespace toric {

namespace {

// Tableau simplex on the standard form  min c.y  s.t.  A y = b, y >= 0,
// with b >= 0 and an initial basis of artificial columns. Bland's rule
// throughout, so cycling is impossible.
struct Tableau {
    std::size_t rows, cols;          // cols excludes the rhs column
    std::vector<RationalVec> a;      // rows x (cols + 1), last entry = rhs
    RationalVec cost;                // reduced cost row, size cols + 1 (last = -objective)
    std::vector<std::size_t> basis;  // basic column per row

    void pivot(std::size_t r, std::size_t c) {
        const Rational inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (std::size_t j = 0; j <= cols; ++j) a[i][j] -= f * a[r][j];
        }
        if (cost[c] != 0) {
            const Rational f = cost[c];
            for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * a[r][j];
        }
        basis[r] = c;
    }

    // Returns false on unboundedness.
    bool iterate(const std::vector<bool>& allowed) {
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j) {
                if (allowed[j] && cost[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols) return true;
            std::size_t leave = rows;
            for (std::size_t i = 0; i < rows; ++i) {
                if (a[i][enter] <= 0) continue;
                if (leave == rows) {
                    leave = i;
                    continue;
                }
                const Rational cur = a[i][cols] / a[i][enter];
                const Rational best = a[leave][cols] / a[leave][enter];
                if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
            }
            if (leave == rows) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult lp_maximize(const std::vector<LpConstraint>& constraints, const RationalVec& objective) {
    const std::size_t n = objective.size();
    const std::size_t m = constraints.size();

    // Standard form: x_j = p_j - q_j with p, q >= 0; LE rows gain a slack,
    // GE rows are negated first; then all rows are equalities.
    std::size_t slacks = 0;
    for (const auto& c : constraints)
        if (c.rel != Relation::EQ) ++slacks;
    const std::size_t nvar = 2 * n + slacks;
    const std::size_t cols = nvar + m;  // artificials at the end

    Tableau t;
    t.rows = m;
    t.cols = cols;
    t.a.assign(m, RationalVec(cols + 1, Rational(0)));
    t.basis.resize(m);

    std::size_t slack_at = 2 * n;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = constraints[i];
        if (c.coeffs.size() != n) throw std::invalid_argument("lp_maximize: row size mismatch");
        const Rational sign = (c.rel == Relation::GE) ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) {
            t.a[i][j] = sign * c.coeffs[j];
            t.a[i][n + j] = -sign * c.coeffs[j];
        }
        if (c.rel != Relation::EQ) t.a[i][slack_at++] = 1;
        t.a[i][cols] = sign * c.rhs;
        if (t.a[i][cols] < 0)
            for (std::size_t j = 0; j <= cols; ++j) t.a[i][j] = -t.a[i][j];
        t.a[i][nvar + i] = 1;
        t.basis[i] = nvar + i;
    }

    // Phase 1: minimize the sum of artificials.
    t.cost.assign(cols + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= cols; ++j)
            if (j < nvar || j == cols) t.cost[j] -= t.a[i][j];
    std::vector<bool> allowed(cols, true);
    t.iterate(allowed);  // bounded below by 0, cannot be unbounded
    if (t.cost[cols] != 0) return {LpStatus::Infeasible, Rational(0), {}};

    // Drive remaining basic artificials out where possible.
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis[i] < nvar) continue;
        for (std::size_t j = 0; j < nvar; ++j) {
            if (t.a[i][j] != 0) {
                t.pivot(i, j);
                break;
            }
        }
    }
    for (std::size_t j = nvar; j < cols; ++j) allowed[j] = false;

    // Phase 2: minimize -objective over the original columns.
    t.cost.assign(cols + 1, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        t.cost[j] = -objective[j];
        t.cost[n + j] = objective[j];
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (t.cost[t.basis[i]] == 0) continue;
        const Rational f = t.cost[t.basis[i]];
        for (std::size_t j = 0; j <= cols; ++j) t.cost[j] -= f * t.a[i][j];
    }
    if (!t.iterate(allowed)) return {LpStatus::Unbounded, Rational(0), {}};

    RationalVec y(nvar, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] < nvar) y[t.basis[i]] = t.a[i][cols];
    RationalVec x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = y[j] - y[n + j];
    return {LpStatus::Optimal, t.cost[cols], std::move(x)};
}

bool open_system_feasible(const std::vector<std::pair<RationalVec, Rational>>& strict, int dim) {
    // Variables (x, d); constraints normal.x - d >= offset and d <= 1.
    std::vector<LpConstraint> cons;
    for (const auto& [normal, offset] : strict) {
        if (normal.size() != static_cast<std::size_t>(dim))
            throw std::invalid_argument("open_system_feasible: dimension mismatch");
        RationalVec row = normal;
        row.push_back(Rational(-1));
        cons.push_back({std::move(row), Relation::GE, offset});
    }
    RationalVec drow(dim + 1, Rational(0));
    drow[dim] = 1;
    cons.push_back({drow, Relation::LE, Rational(1)});
    LpResult res = lp_maximize(cons, drow);
    return res.status == LpStatus::Optimal && res.objective > 0;
}

bool in_convex_hull(const RationalVec& x, const std::vector<RationalVec>& pts) {
    if (pts.empty()) return false;
    const std::size_t k = pts.size();
    const std::size_t n = x.size();
    // Feasibility of sum l_i pts_i = x, sum l_i = 1, l >= 0.
    std::vector<LpConstraint> cons;
    for (std::size_t c = 0; c < n; ++c) {
        RationalVec row(k);
        for (std::size_t i = 0; i < k; ++i) row[i] = pts[i][c];
        cons.push_back({std::move(row), Relation::EQ, x[c]});
    }
    cons.push_back({RationalVec(k, Rational(1)), Relation::EQ, Rational(1)});
    for (std::size_t i = 0; i < k; ++i) {
        RationalVec row(k, Rational(0));
        row[i] = 1;
        cons.push_back({std::move(row), Relation::GE, Rational(0)});
    }
    return lp_maximize(cons, RationalVec(k, Rational(0))).status == LpStatus::Optimal;
}

bool in_cone_hull(const RationalVec& x, const std::vector<RationalVec>& gens) {
    const std::size_t n = x.size();
    if (gens.empty()) {
        for (const auto& v : x)
            if (v != 0) return false;
        return true;
    }
    const std::size_t k = gens.size();
    std::vector<LpConstraint> cons;
    for (std::size_t c = 0; c < n; ++c) {
        RationalVec row(k);
        for (std::size_t i = 0; i < k; ++i) row[i] = gens[i][c];
        cons.push_back({std::move(row), Relation::EQ, x[c]});
    }
    for (std::size_t i = 0; i < k; ++i) {
        RationalVec row(k, Rational(0));
        row[i] = 1;
        cons.push_back({std::move(row), Relation::GE, Rational(0)});
    }
    return lp_maximize(cons, RationalVec(k, Rational(0))).status == LpStatus::Optimal;
}

}  // namespace toric
