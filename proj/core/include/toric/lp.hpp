#ifndef TORIC_LP_HPP
#define TORIC_LP_HPP

#include "toric/rational.hpp"

namespace toric {

enum class Relation { LE, GE, EQ };

struct LpConstraint {
    RationalVec coeffs;
    Relation rel;
    Rational rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status;
    Rational objective;
    RationalVec x;
};

/// Maximize objective . x over free x subject to the constraints.
/// Exact two-phase primal simplex with Bland's rule.
LpResult lp_maximize(const std::vector<LpConstraint>& constraints, const RationalVec& objective);

/// Strict system { x : normal_i . x > offset_i } in R^dim; nonempty iff the
/// auxiliary program  max d  s.t.  normal_i . x - d >= offset_i, d <= 1
/// has optimum d* > 0.
bool open_system_feasible(const std::vector<std::pair<RationalVec, Rational>>& strict, int dim);

/// Membership of x in the convex hull of pts, by exact LP feasibility.
bool in_convex_hull(const RationalVec& x, const std::vector<RationalVec>& pts);

/// Membership of x in the cone generated by gens (nonnegative combinations).
bool in_cone_hull(const RationalVec& x, const std::vector<RationalVec>& gens);

}  // namespace toric

#endif
