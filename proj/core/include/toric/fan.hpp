#ifndef TORIC_FAN_HPP
#define TORIC_FAN_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "toric/linalg.hpp"
#include "toric/lp.hpp"
#include "toric/rational.hpp"

namespace toric {

struct FanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonPrimitiveRay : FanError {
    using FanError::FanError;
};
struct NotStronglyConvex : FanError {
    using FanError::FanError;
};
struct ConesNotIntersectingInFaces : FanError {
    using FanError::FanError;
};
struct DimensionMismatch : FanError {
    using FanError::FanError;
};
struct UnknownCone : FanError {
    using FanError::FanError;
};
struct FanNotComplete : FanError {
    using FanError::FanError;
};

/// A strongly convex rational polyhedral cone, stored by its fan ray indices
/// together with an exact H-representation:
///   cone = { x : span_normals . x = 0, facet_normals . x >= 0 }.
struct Cone {
    std::vector<int> rays;  // sorted fan ray indices; empty = origin cone
    int dim = 0;
    bool simplicial = false;
    std::vector<RationalVec> facet_normals;
    std::vector<RationalVec> span_normals;
    std::vector<RationalVec> orientation;  // ordered ray basis of the span
};

struct Fan {
    int dim = 0;
    std::vector<LatticeVec> rays;
    std::vector<Cone> cones;    // face-closed; cones[0] is the origin cone
    std::vector<int> maximal;   // indices into cones
    bool complete = false;
    bool simplicial = false;
    bool smooth = false;

    const Cone& cone(int id) const {
        if (id < 0 || id >= static_cast<int>(cones.size())) throw UnknownCone("unknown cone id");
        return cones[id];
    }
    int cone_index(const std::vector<int>& ray_set) const;  // -1 if absent
    std::vector<int> cones_of_dim(int k) const;
    std::vector<RationalVec> generators(int id) const;

    bool contains(int id, const RationalVec& xi) const;
    bool in_relative_interior(int id, const RationalVec& xi) const;
    bool is_face_of(int face_id, int cone_id) const;
    /// Maximal cones having the given cone as a face.
    std::vector<int> maximal_containing(int face_id) const;
};

/// Build and fully validate a fan: primitivity, strong convexity, face
/// closure, and the intersection-in-common-faces condition.
Fan build_fan(int dim, std::vector<LatticeVec> rays, const std::vector<std::vector<int>>& maximal_cones);

/// Parse the fan schema {"dim": n, "rays": [[..]], "maximal_cones": [[..]]}.
Fan parse_fan(const std::string& json_text);

/// All faces of a cone (including itself and the origin cone), as cone ids.
std::vector<int> faces(const Fan& fan, int cone_id);

/// Facets (codimension-one faces) of a cone, as cone ids.
std::vector<int> facets_of(const Fan& fan, int cone_id);

/// Smallest cone whose relative interior contains xi, or nullopt outside |fan|.
std::optional<int> locate(const Fan& fan, const RationalVec& xi);

bool is_complete(const Fan& fan);

/// Ray generators of the cone, i.e. the inequality normals of its dual cone.
std::vector<LatticeVec> dual_cone_constraints(const Fan& fan, int cone_id);

}  // namespace toric

#endif
