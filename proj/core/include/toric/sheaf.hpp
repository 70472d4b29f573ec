#ifndef TORIC_SHEAF_HPP
#define TORIC_SHEAF_HPP

#include <map>

#include "toric/divisor.hpp"
#include "toric/fan.hpp"

namespace toric {

struct SheafError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SignConstructionFailed : SheafError {
    using SheafError::SheafError;
};
struct UnboundedSupport : SheafError {
    using SheafError::SheafError;
};

/// Intersection of strict half-spaces { x : <normal|x> > offset }; an empty
/// constraint list is all of M_R.
struct OpenPolyhedron {
    std::vector<std::pair<RationalVec, Rational>> constraints;
    int dim = 0;
};

/// Nonemptiness by exact LP.
bool feasible(const OpenPolyhedron& p);

bool region_contains(const OpenPolyhedron& p, const RationalVec& x);

struct ShardTerm {
    OpenPolyhedron region;
    int degree = 0;
    int cone_id = -1;
    RationalVec chi;  // translation of the dual cone cut out by `region`
};

/// Complex of extension-by-zero constant sheaves on open convex regions.
/// The differential raises degree by one; diff[{i,j}] is the coefficient of
/// term i in d(term j).
struct ShardComplex {
    int dim = 0;
    std::vector<ShardTerm> terms;
    std::map<std::pair<int, int>, long long> diff;
};

struct StalkReport {
    RationalVec point;
    std::map<int, int> dims;  // degree -> cohomology dimension (nonzero only)
    long long euler = 0;
};

/// One term per cone: the interior of chi_sigma + sigma-dual in degree
/// -dim(sigma), with facet-incidence differentials. Aborts if the sign
/// choice fails d^2 = 0.
ShardComplex twisted_polytope_sheaf(const Fan& fan, const CartierData& cd);

StalkReport stalk(const ShardComplex& c, const RationalVec& x);

/// Stalk at x of the convolution of two complexes: pairs of regions whose
/// addition fiber over x is nonempty, in degree deg_f + deg_g + n, with the
/// tensor-product differential.
StalkReport convolve_stalk(const ShardComplex& f, const ShardComplex& g, const RationalVec& x);

struct SSComponent {
    int face = -1;  // cone id of tau
    std::vector<std::pair<RationalVec, Rational>> equalities;    // <n|x> = c
    std::vector<std::pair<RationalVec, Rational>> inequalities;  // <n|x> >= c
    std::vector<LatticeVec> codirections;                        // generators of -tau
    bool zero_section = false;
};

/// Singular support of C_{Int(chi + sigma-dual)}: one component per face tau
/// of sigma, with base chi + (tau-perp intersect sigma-dual).
std::vector<SSComponent> singular_support(const Fan& fan, int cone_id, const RationalVec& chi);

/// Stalk of the pushforward to the torus R^n/Z^n: sum of stalks over lattice
/// translates inside the chi bounding box inflated by `radius`. Throws if a
/// nonzero stalk shows up on the outermost ring of the window.
StalkReport torus_stalk(const ShardComplex& f, const RationalVec& x, int radius);

std::string serialize_complex(const ShardComplex& c);
ShardComplex parse_complex(const std::string& json_text);

}  // namespace toric

#endif
