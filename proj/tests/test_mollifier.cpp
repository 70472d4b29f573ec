#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "toric/mollifier.hpp"

using namespace toric;

static QuadratureConfig quick() {
    QuadratureConfig q;
    q.samples = 20000;
    return q;
}

TEST_CASE("bump density vanishes outside the unit ball") {
    Mollifier m = make_mollifier(2);
    CHECK(m.density({1.0, 0.0}) == 0.0);
    CHECK(m.density({0.8, 0.8}) == 0.0);
    CHECK(m.density({0.3, -0.2}) > 0.0);
    CHECK(m.density({0.0, 0.0}) == doctest::Approx(m.normalization * std::exp(-1.0)));
}

TEST_CASE("density integrates to one, trapezoid oracle in one dimension") {
    Mollifier m = make_mollifier(1);
    const int steps = 200000;
    double total = 0;
    for (int i = 0; i < steps; ++i) {
        double u = -1.0 + (2.0 * i + 1.0) / steps;
        total += m.density({u}) * 2.0 / steps;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("density integrates to one, grid oracle in two dimensions") {
    Mollifier m = make_mollifier(2);
    const int side = 800;
    double total = 0;
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) {
            double x = -1.0 + (2.0 * i + 1.0) / side;
            double y = -1.0 + (2.0 * j + 1.0) / side;
            total += m.density({x, y}) * 4.0 / (side * side);
        }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("region weights partition unity on a complete fan") {
    Fan f = fixtures::p2();
    auto w = region_weights(f, 0.1, {0.6, 0.8}, quick());
    double sum = 0;
    for (auto& [id, a] : w) sum += a;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("region weights split evenly across a shared facet") {
    Fan f = fixtures::p2();
    auto w = region_weights(f, 0.1, {1.0, 0.0}, quick());
    int s1 = f.cone_index({0, 1}), s2 = f.cone_index({0, 2});
    CHECK(w.at(s1) == doctest::Approx(0.5).epsilon(0.03));
    CHECK(w.at(s2) == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("region weights require a complete fan") {
    Fan a = fixtures::a2();
    CHECK_THROWS_AS(region_weights(a, 0.1, {1.0, 0.0}, quick()), FanNotComplete);
}

TEST_CASE("limit weights at the origin of the line are one half each") {
    Fan f = fixtures::p1();
    auto w = limit_weights(f, 0, quick());
    CHECK(w.at(f.cone_index({0})) == doctest::Approx(0.5).epsilon(0.02));
    CHECK(w.at(f.cone_index({1})) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("smoothed support is linear deep inside a cone") {
    Fan f = fixtures::p1();
    auto cd = cartier_data(f, fixtures::div({1, 1}));
    double v = smoothed_support(f, cd, 0.05, {2.0}, quick());
    CHECK(v == doctest::Approx(-2.0).epsilon(1e-2));
}

TEST_CASE("smoothed support is one-homogeneous") {
    Fan f = fixtures::p2();
    auto cd = cartier_data(f, fixtures::div({1, 2, 1}));
    QuadratureConfig q = quick();
    double a = smoothed_support(f, cd, 0.1, {0.3, 0.4}, q);
    double b = smoothed_support(f, cd, 0.1, {0.6, 0.8}, q);
    CHECK(b == doctest::Approx(2 * a).epsilon(1e-9));
}

TEST_CASE("zero divisor smooths to zero") {
    Fan f = fixtures::p2();
    auto cd = cartier_data(f, fixtures::div({0, 0, 0}));
    auto ev = grad_smoothed_support(f, cd, 0.1, {0.5, 0.5}, quick());
    CHECK(ev.f_eps == 0.0);
    for (double g : ev.dphi_eps) CHECK(g == 0.0);
}

TEST_CASE("gradient decomposition and finite-difference cross-check") {
    Fan f = fixtures::p2();
    auto cd = cartier_data(f, fixtures::div({1, 1, 1}));
    auto ev = grad_smoothed_support(f, cd, 0.1, {0.3, 0.7}, quick());
    double n = std::hypot(0.3, 0.7);
    for (int i = 0; i < 2; ++i) {
        double xh = (i == 0 ? 0.3 : 0.7) / n;
        CHECK(ev.dphi_eps[i] == doctest::Approx(ev.df_eps[i] + ev.g_eps * xh).epsilon(1e-12));
        CHECK(ev.fd_dphi_eps[i] == doctest::Approx(ev.dphi_eps[i]).epsilon(1e-2));
    }
    double sum = 0;
    for (auto& [id, a] : ev.weights) sum += a;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("gradient is scale invariant in the covector") {
    Fan f = fixtures::p1();
    auto cd = cartier_data(f, fixtures::div({1, 1}));
    QuadratureConfig q = quick();
    auto a = grad_smoothed_support(f, cd, 0.1, {0.5}, q, false);
    auto b = grad_smoothed_support(f, cd, 0.1, {2.0}, q, false);
    CHECK(a.dphi_eps[0] == doctest::Approx(b.dphi_eps[0]).epsilon(1e-9));
}

TEST_CASE("zero covector is rejected") {
    Fan f = fixtures::p1();
    auto cd = cartier_data(f, fixtures::div({1, 1}));
    CHECK_THROWS_AS(smoothed_support(f, cd, 0.1, {0.0}, quick()), ZeroCovector);
    CHECK_THROWS_AS(grad_smoothed_support(f, cd, 0.1, {0.0}, quick()), ZeroCovector);
}

TEST_CASE("gradient stabilizes to the cone functional") {
    Fan f = fixtures::p1();
    auto cd = cartier_data(f, fixtures::div({1, 1}));
    auto rep = verify_gradient_limit(f, cd, f.cone_index({0}), {0.2, 0.1, 0.05, 0.025}, quick());
    CHECK(rep.stabilized);
    CHECK(rep.rows.back().dist < 0.05);
}

TEST_CASE("limsup containment distances shrink along the schedule") {
    Fan f = fixtures::p1();
    auto cd = cartier_data(f, fixtures::div({1, 1}));
    auto rep =
        verify_limsup_containment(f, cd, f.cone_index({0}), {0.2, 0.1, 0.05, 0.025}, 20, quick());
    CHECK(rep.monotone);
    CHECK(rep.pass);
}

TEST_CASE("uniform bound holds at sampled covectors") {
    Fan f = fixtures::p1();
    auto cd = cartier_data(f, fixtures::div({1, 1}));
    auto rep = verify_uniform_bound(f, cd, 0.1, 100, quick());
    CHECK(rep.radius == doctest::Approx(2.0));
    CHECK(rep.pass);
}
