#ifndef TORIC_VERIFY_HPP
#define TORIC_VERIFY_HPP

#include "toric/flow.hpp"
#include "toric/sheaf.hpp"

namespace toric {

struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OriginCone : VerifyError {
    using VerifyError::VerifyError;
};
struct ScheduleTooShort : VerifyError {
    using VerifyError::VerifyError;
};

/// Conormal sample of a shard boundary stratum: base point in the stratum
/// tau-perp intersect sigma-dual, codirection in -tau of unit length.
struct ConormalSample {
    PhasePoint p;
    int face = -1;  // cone id of tau
};

std::vector<ConormalSample> sample_conormal_detailed(const Fan& fan, int cone_id, int count,
                                                     std::uint64_t seed);

std::vector<PhasePoint> sample_conormal(const Fan& fan, int cone_id, int count, std::uint64_t seed);

struct FrontRow {
    double eps = 0;
    double max_dist = 0;
};

struct FrontReport {
    int cone = -1;
    std::vector<FrontRow> rows;
    double fit_c = 0;        // 1.5 x max over the first two rungs of dist/eps
    double fitted_rate = 0;  // log-log slope; heuristic, not a proven rate
    bool monotone = false;
    bool pass = false;
};

/// Flow conormal samples of the untranslated shard at t = 1 and measure how
/// far the fronts land from the chi-translated strata.
FrontReport front_convergence(const Fan& fan, const CartierData& cd, int cone_id,
                              const std::vector<double>& eps_schedule, int samples_per_stratum,
                              const QuadratureConfig& q);

struct ActionReport {
    int points = 0;
    std::vector<std::string> mismatches;
    bool pass = false;
};

/// Stalkwise check that convolution with a twisted polytope sheaf realizes
/// the tensor product: dims of P(d1) * P(d2) against P(d1 + d2).
ActionReport picard_action_check(const Fan& fan, const ToricDivisor& d1, const ToricDivisor& d2,
                                 int points, std::uint64_t seed);

/// Same identity after pushing forward to the torus: torus_stalk of the sum
/// divisor against the lattice sum of convolution stalks.
ActionReport torus_action_check(const Fan& fan, const ToricDivisor& d1, const ToricDivisor& d2,
                                int points, std::uint64_t seed, int radius);

/// Random rational points staying off every region wall of the given
/// complexes (and off all their lattice translates when torus is set),
/// including the walls of pairwise Minkowski sums.
std::vector<RationalVec> wall_avoiding_points(const std::vector<const ShardComplex*>& complexes,
                                              int count, std::uint64_t seed, bool torus);

}  // namespace toric

#endif
