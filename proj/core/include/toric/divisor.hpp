#ifndef TORIC_DIVISOR_HPP
#define TORIC_DIVISOR_HPP

#include <map>

#include "toric/fan.hpp"

namespace toric {

struct DivisorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotCartier : DivisorError {
    using DivisorError::DivisorError;
};
struct OutsideSupport : DivisorError {
    using DivisorError::DivisorError;
};
struct NotACompletion : DivisorError {
    using DivisorError::DivisorError;
};
struct NotCartierAfterExtension : DivisorError {
    using DivisorError::DivisorError;
};
struct SupportMismatch : DivisorError {
    using DivisorError::DivisorError;
};

/// Torus-invariant divisor, one integer coefficient per fan ray.
struct ToricDivisor {
    std::vector<long long> coeffs;
};

/// Per-cone linear functionals chi_sigma with <chi_sigma | u_rho> = -a_rho
/// for every ray rho of sigma. Unique on full-dimensional cones; on smaller
/// cones the stored value is the canonical convex combination of the adjacent
/// maximal chi's weighted by the mollifier limit weights.
struct CartierData {
    std::vector<RationalVec> chi;  // indexed by cone id
    std::vector<bool> integral;    // chi in the dual lattice M
};

CartierData cartier_data(const Fan& fan, const ToricDivisor& d);

/// Piecewise-linear support function value phi(xi) = <chi_sigma | xi>.
Rational support_eval(const Fan& fan, const CartierData& cd, const RationalVec& xi);

struct ContinuityReport {
    int points_checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Exact agreement of the two-sided evaluations on shared faces of adjacent
/// maximal cones, at seeded random rational points.
ContinuityReport check_continuity(const Fan& fan, const CartierData& cd, int samples, std::uint64_t seed);

/// Extend a divisor on `fan` to a complete fan refining-and-containing it.
/// `new_coeffs` maps completion ray indices to coefficients for rays not in
/// `fan` (default 0). The extension must stay Cartier and restrict to the
/// original support function on |fan|.
ToricDivisor extend_to_completion(const Fan& fan, const ToricDivisor& d, const Fan& completion,
                                  const std::map<int, long long>& new_coeffs = {});

}  // namespace toric

#endif
