#include <doctest.h>

#include "toric/linalg.hpp"
#include "toric/lp.hpp"
#include "toric/rational.hpp"

using namespace toric;

TEST_CASE("parse_rational handles integers, fractions, decimals") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-7/2") == Rational(-7) / 2);
    CHECK(parse_rational("3.25") == Rational(13) / 4);
    CHECK(parse_rational("-0.5") == Rational(-1) / 2);
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("dyadic_round is exact at the stated resolution") {
    CHECK(dyadic_round(0.5, 40) == Rational(1) / 2);
    CHECK(dyadic_round(0.25, 2) == Rational(1) / 4);
    Rational r = dyadic_round(1.0 / 3.0, 40);
    Rational err = r - Rational(1) / 3;
    if (err < 0) err = -err;
    CHECK(err < Rational(1, Integer(1) << 39));
}

TEST_CASE("rank and solve_linear over the rationals") {
    RationalMatrix m = {{1, 2}, {2, 4}};
    CHECK(rank(m) == 1);
    auto sol = solve_linear({{1, 0}, {0, 1}}, {Rational(3), Rational(-2)});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == 3);
    CHECK((*sol)[1] == -2);
    CHECK(!solve_linear({{1, 1}, {1, 1}}, {Rational(0), Rational(1)}).has_value());
}

TEST_CASE("nullspace basis") {
    auto ns = nullspace({{1, 1}});
    REQUIRE(ns.size() == 1);
    CHECK(ns[0][0] + ns[0][1] == 0);
}

TEST_CASE("orientation_sign detects swaps") {
    std::vector<RationalVec> e = {{1, 0}, {0, 1}};
    std::vector<RationalVec> swapped = {{0, 1}, {1, 0}};
    CHECK(orientation_sign(e, e) == 1);
    CHECK(orientation_sign(e, swapped) == -1);
}

TEST_CASE("lp_maximize on a bounded program") {
    // max x + y over the unit box
    std::vector<LpConstraint> cs = {
        {{1, 0}, Relation::LE, 1}, {{0, 1}, Relation::LE, 1},
        {{1, 0}, Relation::GE, 0}, {{0, 1}, Relation::GE, 0}};
    auto r = lp_maximize(cs, {1, 1});
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == 2);
}

TEST_CASE("lp_maximize detects infeasible and unbounded programs") {
    std::vector<LpConstraint> infeas = {{{1}, Relation::GE, 1}, {{1}, Relation::LE, 0}};
    CHECK(lp_maximize(infeas, {1}).status == LpStatus::Infeasible);
    std::vector<LpConstraint> unb = {{{1}, Relation::GE, 0}};
    CHECK(lp_maximize(unb, {1}).status == LpStatus::Unbounded);
}

TEST_CASE("open_system_feasible matches the textbook examples") {
    CHECK(!open_system_feasible({{{1}, 0}, {{-1}, 0}}, 1));
    CHECK(open_system_feasible({}, 2));
    CHECK(open_system_feasible({{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, -1}}, 2));
}

TEST_CASE("convex hull and cone hull membership") {
    std::vector<RationalVec> tri = {{0, 0}, {2, 0}, {0, 2}};
    CHECK(in_convex_hull({Rational(1) / 2, Rational(1) / 2}, tri));
    CHECK(!in_convex_hull({3, 0}, tri));
    CHECK(in_cone_hull({5, 3}, {{1, 0}, {1, 1}}));
    CHECK(!in_cone_hull({-1, 0}, {{1, 0}, {1, 1}}));
}
