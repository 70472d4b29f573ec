#ifndef TORIC_MOLLIFIER_HPP
#define TORIC_MOLLIFIER_HPP

#include <cstdint>
#include <map>

#include "toric/divisor.hpp"
#include "toric/fan.hpp"

namespace toric {

struct SmoothingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroCovector : SmoothingError {
    using SmoothingError::SmoothingError;
};

/// Normalized radial bump  C_n exp(-1/(1-|u|^2))  supported on the closed
/// unit ball. The normalizer is computed once per dimension.
struct Mollifier {
    int dim;
    double normalization;
    double density(const std::vector<double>& u) const;
};

Mollifier make_mollifier(int dim);

enum class QuadMethod { MonteCarlo, ProductGrid };

struct QuadratureConfig {
    QuadMethod method = QuadMethod::MonteCarlo;
    long samples = 100000;
    std::uint64_t seed = 20240817;
    double tolerance = 1e-3;
};

struct SmoothingEval {
    double eps = 0;
    std::vector<double> xi;
    double f_eps = 0;                   // f_eps(xi_hat)
    std::vector<double> df_eps;         // sum of weights * chi_sigma
    double g_eps = 0;                   // f_eps - <df_eps | xi_hat>
    std::vector<double> dphi_eps;       // df_eps + g_eps * xi_hat
    std::vector<double> fd_dphi_eps;    // finite differences of smoothed_support
    std::map<int, double> weights;      // maximal cone id -> a_sigma
    double mc_stderr = 0;               // standard error of the f_eps estimate
};

/// Weights a_sigma = integral of the mollifier over {u in B1 : xi_hat - eps u
/// in Int(sigma)}, one per maximal cone. Sums to 1 up to quadrature error for
/// complete fans.
std::map<int, double> region_weights(const Fan& fan, double eps, const std::vector<double>& xi_hat,
                                     const QuadratureConfig& q);

/// eps -> 0 limit of the region weights at a point in the relative interior
/// of tau: integrates the mollifier over the sectors cut out by the facets of
/// each adjacent maximal cone that contain tau.
std::map<int, double> limit_weights(const Fan& fan, int tau_id, const QuadratureConfig& q);

/// Homogenized smoothing  phi_eps(xi) = |xi| (eta_eps * phi)(xi_hat).
double smoothed_support(const Fan& fan, const CartierData& cd, double eps,
                        const std::vector<double>& xi, const QuadratureConfig& q);

/// with_fd additionally fills fd_dphi_eps by central differences of
/// smoothed_support under the same seed (slower by a factor of 2n).
SmoothingEval grad_smoothed_support(const Fan& fan, const CartierData& cd, double eps,
                                    const std::vector<double>& xi, const QuadratureConfig& q,
                                    bool with_fd = true);

struct LimitRow {
    double eps;
    double dist;
};

struct GradientLimitReport {
    int cone = -1;
    std::vector<double> xi;
    std::vector<LimitRow> rows;
    double tol = 0;
    double stabilization_eps = 0;  // distance from xi_hat to the boundary strata
    bool stabilized = false;
};

GradientLimitReport verify_gradient_limit(const Fan& fan, const CartierData& cd, int cone_id,
                                          const std::vector<double>& eps_schedule,
                                          const QuadratureConfig& q);

struct LimsupReport {
    int cone = -1;
    std::vector<LimitRow> rows;  // per eps: max distance over sampled xi
    double fitted_rate = 0;      // exponent of the log-log fit (0 if degenerate)
    bool monotone = false;
    bool pass = false;
};

LimsupReport verify_limsup_containment(const Fan& fan, const CartierData& cd, int cone_id,
                                       const std::vector<double>& eps_schedule, int sample_count,
                                       const QuadratureConfig& q);

struct BoundReport {
    double eps = 0;
    double radius = 0;       // R = sum of |chi_sigma| over maximal cones
    double max_dist = 0;     // max distance of dphi_eps to Conv{chi_sigma}
    double max_slack = 0;    // max (dist - eps R)
    int samples = 0;
    bool pass = false;
};

BoundReport verify_uniform_bound(const Fan& fan, const CartierData& cd, double eps,
                                 int sample_count, const QuadratureConfig& q);

}  // namespace toric

#endif
