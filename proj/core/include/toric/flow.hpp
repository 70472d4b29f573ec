#ifndef TORIC_FLOW_HPP
#define TORIC_FLOW_HPP

#include "toric/mollifier.hpp"

namespace toric {

/// Point of T*(R^n) or T*(T^n); torus base points are kept in [0,1)^n.
struct PhasePoint {
    std::vector<double> base;
    std::vector<double> covector;
};

enum class FlowMethod { ClosedForm, Rk4 };

struct FlowResult {
    PhasePoint endpoint;
    FlowMethod method = FlowMethod::ClosedForm;
    int steps = 0;
    double eps = 0;
    double t = 0;
    double covector_drift = 0;
};

/// Translation flow x -> x + t * dphi_eps(xi); the covector is conserved.
FlowResult flow_closed_form(const Fan& fan, const CartierData& cd, double eps, double t,
                            const PhasePoint& p, const QuadratureConfig& q, bool torus = false);

/// Classical RK4 on the Hamiltonian field (dphi_eps(xi), 0), with the
/// gradient taken only by central finite differences of smoothed_support so
/// the two methods stay independent.
FlowResult flow_rk4(const Fan& fan, const CartierData& cd, double eps, double t,
                    const PhasePoint& p, int steps, const QuadratureConfig& q, bool torus = false);

/// Base components of the flowed samples (the front projection at time t).
std::vector<std::vector<double>> flow_front(const Fan& fan, const CartierData& cd, double eps,
                                            double t, const std::vector<PhasePoint>& samples,
                                            const QuadratureConfig& q);

/// Componentwise fractional part, mapping into the fundamental domain [0,1)^n.
std::vector<double> torus_reduce(const std::vector<double>& x);

}  // namespace toric

#endif
