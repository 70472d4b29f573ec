#include "toric/flow.hpp"

#include <cmath>

#include "toric/geometry.hpp"

namespace toric {

namespace {

void check_point(const Fan& fan, const PhasePoint& p) {
    if (static_cast<int>(p.base.size()) != fan.dim || static_cast<int>(p.covector.size()) != fan.dim)
        throw SmoothingError("phase point has the wrong dimension");
    if (norm_d(p.covector) < 1e-12) throw ZeroCovector("phase point needs a nonzero covector");
}

std::vector<double> fd_gradient(const Fan& fan, const CartierData& cd, double eps,
                                const std::vector<double>& xi, const QuadratureConfig& q) {
    const double h = 1e-4 * norm_d(xi);
    std::vector<double> g(fan.dim);
    for (int j = 0; j < fan.dim; ++j) {
        auto hi = xi, lo = xi;
        hi[j] += h;
        lo[j] -= h;
        g[j] = (smoothed_support(fan, cd, eps, hi, q) - smoothed_support(fan, cd, eps, lo, q)) / (2 * h);
    }
    return g;
}

}  // namespace

std::vector<double> torus_reduce(const std::vector<double>& x) {
    std::vector<double> r(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        r[j] = x[j] - std::floor(x[j]);
        if (r[j] >= 1.0) r[j] = 0.0;  // guard against floor rounding at 1-ulp below an integer
    }
    return r;
}

FlowResult flow_closed_form(const Fan& fan, const CartierData& cd, double eps, double t,
                            const PhasePoint& p, const QuadratureConfig& q, bool torus) {
    check_point(fan, p);
    auto ev = grad_smoothed_support(fan, cd, eps, p.covector, q, false);
    FlowResult res;
    res.method = FlowMethod::ClosedForm;
    res.eps = eps;
    res.t = t;
    res.endpoint.covector = p.covector;
    res.endpoint.base.resize(fan.dim);
    for (int j = 0; j < fan.dim; ++j) res.endpoint.base[j] = p.base[j] + t * ev.dphi_eps[j];
    if (torus) res.endpoint.base = torus_reduce(res.endpoint.base);
    return res;
}

FlowResult flow_rk4(const Fan& fan, const CartierData& cd, double eps, double t,
                    const PhasePoint& p, int steps, const QuadratureConfig& q, bool torus) {
    check_point(fan, p);
    if (steps < 16) throw SmoothingError("flow_rk4 needs at least 16 steps");
    const double h = t / steps;
    std::vector<double> x = p.base;
    std::vector<double> xi = p.covector;
    // The field is (dphi_eps(xi), 0): the covector stages coincide, so the
    // base stages all see the same finite-difference gradient.
    for (int s = 0; s < steps; ++s) {
        auto k = fd_gradient(fan, cd, eps, xi, q);
        for (int j = 0; j < fan.dim; ++j) x[j] += h * k[j];
    }
    FlowResult res;
    res.method = FlowMethod::Rk4;
    res.steps = steps;
    res.eps = eps;
    res.t = t;
    res.endpoint.base = torus ? torus_reduce(x) : x;
    res.endpoint.covector = xi;
    res.covector_drift = norm_d(sub_d(xi, p.covector));
    return res;
}

std::vector<std::vector<double>> flow_front(const Fan& fan, const CartierData& cd, double eps,
                                            double t, const std::vector<PhasePoint>& samples,
                                            const QuadratureConfig& q) {
    std::vector<std::vector<double>> fronts;
    fronts.reserve(samples.size());
    for (const auto& p : samples)
        fronts.push_back(flow_closed_form(fan, cd, eps, t, p, q).endpoint.base);
    return fronts;
}

}  // namespace toric
