#ifndef TORIC_LINALG_HPP
#define TORIC_LINALG_HPP

#include <optional>

#include "toric/rational.hpp"

namespace toric {

/// Dense matrix over the rationals, stored by rows. Sizes here are tiny
/// (fan combinatorics), so plain Gaussian elimination is exact and fast.
using RationalMatrix = std::vector<RationalVec>;

int rank(RationalMatrix m);

/// Solve A x = b. Returns a particular solution (free variables set to 0),
/// or nullopt if the system is inconsistent.
std::optional<RationalVec> solve_linear(RationalMatrix a, RationalVec b);

/// Basis of the right null space of A (vectors x with A x = 0).
std::vector<RationalVec> nullspace(RationalMatrix a);

/// Sign of det of the change of basis expressing the columns of `to` in the
/// basis `from` (both spanning the same subspace). Returns +1/-1, or 0 if the
/// expressed matrix is singular or the spans differ.
int orientation_sign(const std::vector<RationalVec>& from, const std::vector<RationalVec>& to);

}  // namespace toric

#endif
