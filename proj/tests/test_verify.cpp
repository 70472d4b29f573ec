#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "toric/verify.hpp"

using namespace toric;

static QuadratureConfig quick() {
    QuadratureConfig q;
    q.samples = 20000;
    return q;
}

TEST_CASE("conormal samples of a ray of the line") {
    Fan f = fixtures::p1();
    auto s = sample_conormal_detailed(f, f.cone_index({0}), 10, 3);
    REQUIRE(s.size() == 10);
    for (const auto& cs : s) {
        CHECK(cs.p.base[0] == doctest::Approx(0.0));
        CHECK(cs.p.covector[0] == doctest::Approx(-1.0));
        CHECK(cs.face == f.cone_index({0}));
    }
    CHECK(sample_conormal(f, f.cone_index({0}), 0, 3).empty());
    CHECK_THROWS_AS(sample_conormal(f, 0, 5, 3), OriginCone);
}

TEST_CASE("conormal samples of a plane cone populate all strata") {
    Fan f = fixtures::p2();
    auto s = sample_conormal_detailed(f, f.cone_index({0, 1}), 300, 5);
    std::set<int> strata;
    for (const auto& cs : s) {
        strata.insert(cs.face);
        double n = 0;
        for (double c : cs.p.covector) n += c * c;
        CHECK(n == doctest::Approx(1.0));
    }
    CHECK(strata.size() == 3);
}

TEST_CASE("front convergence needs at least three rungs") {
    Fan f = fixtures::p1();
    auto cd = cartier_data(f, fixtures::div({1, 1}));
    CHECK_THROWS_AS(front_convergence(f, cd, f.cone_index({0}), {0.2, 0.1}, 3, quick()),
                    ScheduleTooShort);
}

TEST_CASE("zero divisor fronts do not move") {
    Fan f = fixtures::p1();
    auto cd = cartier_data(f, fixtures::div({0, 0}));
    auto rep = front_convergence(f, cd, f.cone_index({0}), {0.2, 0.1, 0.05}, 3, quick());
    CHECK(rep.pass);
    for (const auto& row : rep.rows) CHECK(row.max_dist < 1e-9);
}

TEST_CASE("fronts of the degree-two shard converge at the expected rate") {
    Fan f = fixtures::p1();
    auto cd = cartier_data(f, fixtures::div({1, 1}));
    auto rep = front_convergence(f, cd, f.cone_index({0}), {0.2, 0.1, 0.05, 0.025}, 3, quick());
    CHECK(rep.monotone);
    CHECK(rep.fitted_rate >= 0.8);
    CHECK(rep.pass);
}

TEST_CASE("wall-avoiding points stay off every wall") {
    Fan f = fixtures::p1();
    auto o2 = twisted_polytope_sheaf(f, cartier_data(f, fixtures::div({1, 1})));
    auto pts = wall_avoiding_points({&o2}, 30, 11, false);
    REQUIRE(pts.size() == 30);
    for (const auto& x : pts)
        for (const auto& t : o2.terms)
            for (const auto& [n, c] : t.region.constraints) CHECK(dot(n, x) != c);
}

TEST_CASE("convolving with the unit divisor is the identity on stalks") {
    Fan f = fixtures::p2();
    auto rep = picard_action_check(f, fixtures::div({1, 1, 1}), fixtures::div({0, 0, 0}), 25, 17);
    CHECK(rep.pass);
    CHECK(rep.points == 25);
    CHECK(rep.mismatches.empty());
}

TEST_CASE("convolution realizes divisor addition on the line") {
    Fan f = fixtures::p1();
    auto rep = picard_action_check(f, fixtures::div({1, 2}), fixtures::div({2, 1}), 25, 19);
    CHECK(rep.pass);
}

TEST_CASE("torus pushforward respects divisor addition") {
    Fan f = fixtures::p1();
    auto rep = torus_action_check(f, fixtures::div({1, 1}), fixtures::div({1, 1}), 8, 23, 8);
    CHECK(rep.pass);
}
