// Acceptance battery: one line per criterion, exit code = number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "toric/verify.hpp"

using namespace toric;
using Clock = std::chrono::steady_clock;

namespace {

QuadratureConfig full_mc() {
    QuadratureConfig q;
    q.samples = 100000;
    return q;
}

QuadratureConfig light_mc() {
    QuadratureConfig q;
    q.samples = 20000;
    return q;
}

struct ExampleCase {
    const char* name;
    Fan fan;
    ToricDivisor d;
};

std::vector<ExampleCase> example_cases() {
    std::vector<ExampleCase> out;
    out.push_back({"p1", fixtures::p1(), fixtures::div({1, 1})});
    out.push_back({"p2", fixtures::p2(), fixtures::div({1, 1, 1})});
    out.push_back({"p1xp1", fixtures::p1xp1(), fixtures::div({1, 1, 1, 1})});
    out.push_back({"f1", fixtures::hirzebruch1(), fixtures::div({1, 2, 1, 1})});
    return out;
}

std::vector<double> random_unit(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    std::vector<double> v(n);
    double norm = 0;
    do {
        norm = 0;
        for (double& x : v) {
            x = g(rng);
            norm += x * x;
        }
    } while (norm < 1e-12);
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    return v;
}

// 1. fan validity, exact Cartier solves, hull membership, d^2 = 0, continuity
bool exact_suite() {
    bool ok = true;
    for (auto& ex : example_cases()) {
        if (!is_complete(ex.fan)) ok = false;
        auto cd = cartier_data(ex.fan, ex.d);
        for (std::size_t c = 0; c < ex.fan.cones.size(); ++c) {
            for (int r : ex.fan.cones[c].rays)
                if (dot(ex.fan.rays[r], cd.chi[c]) != Rational(-ex.d.coeffs[r])) ok = false;
            if (ex.fan.cones[c].dim < ex.fan.dim) {
                std::vector<RationalVec> hull;
                for (int m : ex.fan.maximal_containing(static_cast<int>(c)))
                    hull.push_back(cd.chi[m]);
                if (!in_convex_hull(cd.chi[c], hull)) ok = false;
            }
        }
        auto cx = twisted_polytope_sheaf(ex.fan, cd);  // asserts d^2 = 0
        std::map<std::pair<int, int>, long long> sq;
        for (auto& [ij, x] : cx.diff)
            for (auto& [jk, y] : cx.diff)
                if (ij.second == jk.first) sq[{ij.first, jk.second}] += x * y;
        for (auto& [k, v] : sq)
            if (v != 0) ok = false;
        if (!check_continuity(ex.fan, cd, 25, 20240817).ok()) ok = false;
    }
    return ok;
}

// 2. weight partition, facet symmetry, deep-interior stabilization,
//    uniform bound, finite-difference cross-check; 1e5 MC samples
bool smoothing_suite() {
    bool ok = true;
    QuadratureConfig q = full_mc();

    Fan p2 = fixtures::p2();
    auto cd2 = cartier_data(p2, fixtures::div({1, 1, 1}));
    std::mt19937_64 rng(q.seed);
    for (int i = 0; i < 100; ++i) {
        auto w = region_weights(p2, 0.1, random_unit(rng, 2), q);
        double sum = 0;
        for (auto& [id, a] : w) sum += a;
        if (std::abs(sum - 1.0) > 1e-3) ok = false;
    }

    auto w = region_weights(p2, 0.1, {1.0, 0.0}, q);
    int s1 = p2.cone_index({0, 1}), s2 = p2.cone_index({0, 2});
    if (std::abs(w.at(s1) - 0.5) > 1e-2 || std::abs(w.at(s2) - 0.5) > 1e-2) ok = false;

    std::vector<double> schedule = {0.2, 0.1, 0.05, 0.025, 0.0125};
    Fan p1 = fixtures::p1();
    auto cd1 = cartier_data(p1, fixtures::div({1, 1}));
    for (int m : p1.maximal)
        if (!verify_gradient_limit(p1, cd1, m, schedule, q).stabilized) ok = false;
    for (int m : p2.maximal)
        if (!verify_gradient_limit(p2, cd2, m, schedule, q).stabilized) ok = false;

    for (double eps : {0.1, 0.05})
        if (!verify_uniform_bound(p1, cd1, eps, 1000, q).pass) ok = false;

    for (int i = 0; i < 50; ++i) {
        bool on_line = i % 2 == 0;
        const Fan& f = on_line ? p1 : p2;
        const CartierData& cd = on_line ? cd1 : cd2;
        auto ev = grad_smoothed_support(f, cd, 0.1, random_unit(rng, f.dim), q, true);
        double err = 0, scale = 1.0;
        for (int k = 0; k < f.dim; ++k) {
            err += (ev.dphi_eps[k] - ev.fd_dphi_eps[k]) * (ev.dphi_eps[k] - ev.fd_dphi_eps[k]);
            scale += ev.dphi_eps[k] * ev.dphi_eps[k];
        }
        if (std::sqrt(err) / std::sqrt(scale) > 1e-2) ok = false;
    }
    return ok;
}

// 3. closed form vs rk4, group law, covector scale invariance
bool flow_suite() {
    bool ok = true;
    QuadratureConfig q = light_mc();
    q.samples = 10000;  // the tolerance below scales with the MC standard error
    Fan f = fixtures::p2();
    auto cd = cartier_data(f, fixtures::div({1, 1, 1}));
    std::mt19937_64 rng(q.seed + 1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        PhasePoint p{{u(rng), u(rng)}, random_unit(rng, 2)};
        auto ev = grad_smoothed_support(f, cd, 0.1, p.covector, q, false);
        const double tol = 1e-4 + 3 * ev.mc_stderr;

        auto a = flow_closed_form(f, cd, 0.1, 1.0, p, q);
        auto b = flow_rk4(f, cd, 0.1, 1.0, p, 64, q);
        double d2 = 0;
        for (int k = 0; k < 2; ++k)
            d2 += (a.endpoint.base[k] - b.endpoint.base[k]) * (a.endpoint.base[k] - b.endpoint.base[k]);
        if (std::sqrt(d2) > tol || b.covector_drift > tol) ok = false;

        auto half = flow_closed_form(f, cd, 0.1, 0.6, p, q);
        auto rest = flow_closed_form(f, cd, 0.1, 0.4, half.endpoint, q);
        PhasePoint ps = p;
        for (double& c : ps.covector) c *= 2.5;
        auto scaled = flow_closed_form(f, cd, 0.1, 1.0, ps, q);
        for (int k = 0; k < 2; ++k) {
            if (std::abs(rest.endpoint.base[k] - a.endpoint.base[k]) > tol) ok = false;
            if (std::abs(scaled.endpoint.base[k] - a.endpoint.base[k]) > tol) ok = false;
        }
    }
    return ok;
}

// 4. stalk goldens on the line, unit law, commutativity (all exact)
bool sheaf_suite() {
    bool ok = true;
    Fan p1 = fixtures::p1();
    auto o2 = twisted_polytope_sheaf(p1, cartier_data(p1, fixtures::div({1, 1})));
    const std::map<int, int> line = {{-1, 1}};
    for (Rational x : {Rational(0), Rational(1) / 2, Rational(-1) / 2})
        if (stalk(o2, {x}).dims != line) ok = false;
    for (Rational x : {Rational(1), Rational(-1), Rational(5), Rational(-5)})
        if (!stalk(o2, {x}).dims.empty()) ok = false;

    for (auto& ex : example_cases()) {
        auto cd = cartier_data(ex.fan, ex.d);
        auto cx = twisted_polytope_sheaf(ex.fan, cd);
        auto unit = twisted_polytope_sheaf(
            ex.fan, cartier_data(ex.fan, fixtures::div(std::vector<long long>(ex.fan.rays.size(), 0))));
        auto pts = wall_avoiding_points({&cx, &unit}, 50, 20240817, false);
        for (const auto& x : pts) {
            if (convolve_stalk(unit, cx, x).dims != stalk(cx, x).dims) ok = false;
            if (convolve_stalk(cx, unit, x).dims != convolve_stalk(unit, cx, x).dims) ok = false;
        }
    }
    return ok;
}

bool picard_pair(const Fan& f, std::vector<long long> a, std::vector<long long> b, int points) {
    return picard_action_check(f, {std::move(a)}, {std::move(b)}, points, 20240817).pass;
}

// 5. convolution against the sum divisor, 50 wall-avoiding points per pair
bool picard_suite() {
    bool ok = true;
    Fan p1 = fixtures::p1();
    for (long long a = 1; a <= 3; ++a)
        for (long long b = 1; b <= 3; ++b)
            if (!picard_pair(p1, {a, 0}, {b, 0}, 50)) ok = false;
    Fan p2 = fixtures::p2();
    if (!picard_pair(p2, {1, 0, 0}, {1, 0, 0}, 50)) ok = false;
    if (!picard_pair(p2, {1, 0, 0}, {2, 0, 0}, 50)) ok = false;
    Fan pp = fixtures::p1xp1();
    if (!picard_pair(pp, {1, 0, 1, 0}, {1, 0, 1, 0}, 50)) ok = false;
    return ok;
}

// 6. same identity after the torus pushforward, radius 8; the 20 points per
//    fan are spread over that fan's divisor pairs from criterion 5
bool torus_suite() {
    bool ok = true;
    Fan p1 = fixtures::p1();
    for (long long a = 1; a <= 3; ++a)
        for (long long b = 1; b <= 3; ++b)
            if (!torus_action_check(p1, {{a, 0}}, {{b, 0}}, 2, 20240817, 8).pass) ok = false;
    Fan p2 = fixtures::p2();
    if (!torus_action_check(p2, {{1, 0, 0}}, {{1, 0, 0}}, 10, 20240817, 8).pass) ok = false;
    if (!torus_action_check(p2, {{1, 0, 0}}, {{2, 0, 0}}, 10, 20240817, 8).pass) ok = false;
    Fan pp = fixtures::p1xp1();
    if (!torus_action_check(pp, {{1, 0, 1, 0}}, {{1, 0, 1, 0}}, 20, 20240817, 8).pass) ok = false;
    return ok;
}

// 7. flowed fronts converge to the translated strata at rate >= 0.8
bool front_suite() {
    bool ok = true;
    QuadratureConfig q = light_mc();
    const std::vector<double> schedule = {0.2, 0.1, 0.05, 0.025};
    auto run = [&](const Fan& f, const ToricDivisor& d) {
        auto cd = cartier_data(f, d);
        for (int m : f.maximal) {
            auto rep = front_convergence(f, cd, m, schedule, 5, q);
            if (!rep.pass || !rep.monotone) ok = false;
            double first = rep.rows.front().max_dist;
            if (first > 1e-9) {
                double c = first / rep.rows.front().eps;
                if (rep.rows.back().max_dist > 0.05 * c + 1e-9) ok = false;
                if (rep.fitted_rate < 0.8) ok = false;
            }
        }
    };
    run(fixtures::p1(), fixtures::div({1, 1}));
    run(fixtures::p2(), fixtures::div({1, 1, 1}));
    return ok;
}

// 8. extensions of the affine pieces, then the exact suites on the extended data
bool noncomplete_suite() {
    bool ok = true;

    Fan a1 = fixtures::a1();
    Fan p1 = fixtures::p1();
    ToricDivisor e1 = extend_to_completion(a1, fixtures::div({2}), p1);
    auto cd1 = cartier_data(p1, e1);
    if (support_eval(p1, cd1, {Rational(1)}) != -2) ok = false;
    if (support_eval(p1, cd1, {Rational(-1)}) != 0) ok = false;

    Fan a2 = fixtures::a2();
    Fan p2 = fixtures::p2();
    ToricDivisor e2 = extend_to_completion(a2, fixtures::div({1, 1}), p2, {{2, 3}});
    auto cd2 = cartier_data(p2, e2);
    auto acd = cartier_data(a2, fixtures::div({1, 1}));
    for (long long x = 0; x <= 2; ++x)
        for (long long y = 0; y <= 2; ++y)
            if (support_eval(p2, cd2, {Rational(x), Rational(y)}) !=
                support_eval(a2, acd, {Rational(x), Rational(y)}))
                ok = false;

    // suite 4 on the extensions: unit law and commutativity
    for (auto& [f, d] : std::vector<std::pair<Fan, ToricDivisor>>{{p1, e1}, {p2, e2}}) {
        auto cx = twisted_polytope_sheaf(f, cartier_data(f, d));
        auto unit = twisted_polytope_sheaf(
            f, cartier_data(f, fixtures::div(std::vector<long long>(f.rays.size(), 0))));
        for (const auto& x : wall_avoiding_points({&cx, &unit}, 50, 20240817, false)) {
            if (convolve_stalk(unit, cx, x).dims != stalk(cx, x).dims) ok = false;
            if (convolve_stalk(cx, unit, x).dims != convolve_stalk(unit, cx, x).dims) ok = false;
        }
    }

    // suites 5 and 6 on the extensions
    if (!picard_action_check(p1, e1, fixtures::div({1, 1}), 50, 20240817).pass) ok = false;
    if (!picard_action_check(p2, e2, fixtures::div({1, 1, 1}), 50, 20240817).pass) ok = false;
    if (!torus_action_check(p1, e1, fixtures::div({1, 1}), 10, 20240817, 8).pass) ok = false;
    if (!torus_action_check(p2, e2, fixtures::div({1, 1, 1}), 5, 20240817, 8).pass) ok = false;
    return ok;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        bool (*run)();
    };
    const Criterion criteria[] = {
        {"1 exact suite (fans, Cartier solves, hull, d^2, continuity)", exact_suite},
        {"2 smoothing suite (weights, stabilization, bound, gradients)", smoothing_suite},
        {"3 flow suite (closed form vs rk4, group law, scaling)", flow_suite},
        {"4 sheaf suite (stalk goldens, unit law, commutativity)", sheaf_suite},
        {"5 picard action suite (convolution vs sum divisor)", picard_suite},
        {"6 torus action suite (pushforward identity, radius 8)", torus_suite},
        {"7 front convergence suite (monotone, rate >= 0.8)", front_suite},
        {"8 noncomplete suite (extensions + suites 4-6)", noncomplete_suite},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = Clock::now();
        bool pass = false;
        try {
            pass = c.run();
        } catch (const std::exception& e) {
            std::fprintf(stderr, "criterion %s threw: %s\n", c.name, e.what());
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("criterion %-62s %s (%.1fs)\n", c.name, pass ? "PASS" : "FAIL", secs);
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    return failures;
}
