#include "toric/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

namespace toric {

namespace {

long long gcd_ll(long long a, long long b) { return std::gcd(std::llabs(a), std::llabs(b)); }

void canonicalize_normal(RationalVec& m) {
    // Scale so the first nonzero entry has absolute value 1, preserving sign.
    for (const auto& v : m) {
        if (v != 0) {
            const Rational s = (v > 0 ? v : -v);
            for (auto& w : m) w /= s;
            return;
        }
    }
}

// Enumerate size-k subsets of {0..n-1}.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            fn(idx);
            return;
        }
        for (int i = start; i <= n - (k - depth); ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

Cone build_cone(const std::vector<LatticeVec>& fan_rays, std::vector<int> ray_ids, int ambient) {
    std::sort(ray_ids.begin(), ray_ids.end());
    ray_ids.erase(std::unique(ray_ids.begin(), ray_ids.end()), ray_ids.end());

    Cone c;
    c.rays = ray_ids;
    std::vector<RationalVec> gens;
    for (int r : ray_ids) gens.push_back(to_rational(fan_rays[r]));

    if (gens.empty()) {
        c.dim = 0;
        c.simplicial = true;
        for (int i = 0; i < ambient; ++i) {
            RationalVec e(ambient, Rational(0));
            e[i] = 1;
            c.span_normals.push_back(std::move(e));
        }
        return c;
    }

    c.dim = rank(gens);
    c.simplicial = (c.dim == static_cast<int>(gens.size()));
    c.span_normals = nullspace(gens);

    // Strong convexity: a pointed cone admits a functional strictly positive
    // on every generator.
    std::vector<std::pair<RationalVec, Rational>> strict;
    for (const auto& g : gens) strict.emplace_back(g, Rational(0));
    if (!open_system_feasible(strict, ambient))
        throw NotStronglyConvex("cone contains a line");

    // Facet normals: for each (dim-1)-subset of generators of full facet rank,
    // the unique direction in the span orthogonal to the subset, oriented
    // nonnegatively on the cone.
    const int k = static_cast<int>(gens.size());
    std::set<RationalVec> seen;
    for_each_subset(k, c.dim - 1, [&](const std::vector<int>& sub) {
        RationalMatrix constraints;
        for (int i : sub) constraints.push_back(gens[i]);
        if (rank(constraints) != c.dim - 1) return;
        for (const auto& z : c.span_normals) constraints.push_back(z);
        if (constraints.empty()) constraints.emplace_back(ambient, Rational(0));
        std::vector<RationalVec> ns = nullspace(constraints);
        if (ns.size() != 1) return;
        RationalVec m = ns[0];
        bool pos = true, neg = true;
        for (const auto& g : gens) {
            const Rational d = dot(m, g);
            if (d > 0) neg = false;
            if (d < 0) pos = false;
        }
        if (!pos && !neg) return;
        if (neg)
            for (auto& v : m) v = -v;
        canonicalize_normal(m);
        if (seen.insert(m).second) c.facet_normals.push_back(m);
    });

    // Orientation basis: first maximal independent subset of generators.
    RationalMatrix chosen;
    for (const auto& g : gens) {
        chosen.push_back(g);
        if (rank(chosen) == static_cast<int>(c.orientation.size()) + 1)
            c.orientation.push_back(g);
        else
            chosen.pop_back();
    }
    return c;
}

bool cone_member(const Cone& c, const RationalVec& xi) {
    for (const auto& z : c.span_normals)
        if (dot(z, xi) != 0) return false;
    for (const auto& m : c.facet_normals)
        if (dot(m, xi) < 0) return false;
    return true;
}

// Smallest face of c containing the given ray subset, as a ray-id set.
std::vector<int> smallest_face_rays(const std::vector<LatticeVec>& fan_rays, const Cone& c,
                                    const std::vector<int>& subset) {
    std::vector<const RationalVec*> vanishing;
    for (const auto& m : c.facet_normals) {
        bool all_zero = true;
        for (int r : subset)
            if (dot(m, to_rational(fan_rays[r])) != 0) {
                all_zero = false;
                break;
            }
        if (all_zero) vanishing.push_back(&m);
    }
    std::vector<int> out;
    for (int r : c.rays) {
        bool on = true;
        for (const auto* m : vanishing)
            if (dot(*m, to_rational(fan_rays[r])) != 0) {
                on = false;
                break;
            }
        if (on) out.push_back(r);
    }
    return out;
}

void check_common_face(const std::vector<LatticeVec>& fan_rays, const Cone& a, const Cone& b,
                       int ambient) {
    auto rays_in = [&](const Cone& from, const Cone& other) {
        std::vector<int> out;
        for (int r : from.rays)
            if (cone_member(other, to_rational(fan_rays[r]))) out.push_back(r);
        return out;
    };
    const std::vector<int> fa = rays_in(a, b);
    const std::vector<int> fb = rays_in(b, a);
    if (fa != fb)
        throw ConesNotIntersectingInFaces("cones share non-ray boundary structure");
    if (smallest_face_rays(fan_rays, a, fa) != fa || smallest_face_rays(fan_rays, b, fa) != fa)
        throw ConesNotIntersectingInFaces("shared rays do not span a common face");

    // The intersection must not exceed the common face: maximize the sum of
    // the facet normals of each cone vanishing on the shared rays.
    for (const Cone* pc : {&a, &b}) {
        RationalVec w(ambient, Rational(0));
        for (const auto& m : pc->facet_normals) {
            bool vanish = true;
            for (int r : fa)
                if (dot(m, to_rational(fan_rays[r])) != 0) {
                    vanish = false;
                    break;
                }
            if (vanish)
                for (int i = 0; i < ambient; ++i) w[i] += m[i];
        }
        bool zero = std::all_of(w.begin(), w.end(), [](const Rational& v) { return v == 0; });
        if (zero) continue;
        std::vector<LpConstraint> cons;
        for (const Cone* qc : {&a, &b}) {
            for (const auto& z : qc->span_normals) cons.push_back({z, Relation::EQ, Rational(0)});
            for (const auto& m : qc->facet_normals) cons.push_back({m, Relation::GE, Rational(0)});
        }
        cons.push_back({w, Relation::LE, Rational(1)});
        LpResult res = lp_maximize(cons, w);
        if (res.status != LpStatus::Optimal || res.objective != 0)
            throw ConesNotIntersectingInFaces("cone intersection is not a common face");
    }
}

bool cone_is_smooth(const std::vector<LatticeVec>& fan_rays, const Cone& c, int ambient) {
    if (!c.simplicial) return false;
    if (c.dim == 0) return true;
    // Gcd of the maximal minors of the generator matrix must be 1.
    std::vector<RationalVec> gens;
    for (int r : c.rays) gens.push_back(to_rational(fan_rays[r]));
    const int k = c.dim;
    Integer g = 0;
    for_each_subset(ambient, k, [&](const std::vector<int>& cols) {
        RationalMatrix m(k, RationalVec(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m[i][j] = gens[i][cols[j]];
        // Integer determinant by exact fraction elimination.
        Rational det = 1;
        for (int col = 0; col < k; ++col) {
            int p = col;
            while (p < k && m[p][col] == 0) ++p;
            if (p == k) {
                det = 0;
                break;
            }
            if (p != col) {
                std::swap(m[p], m[col]);
                det = -det;
            }
            det *= m[col][col];
            for (int i = col + 1; i < k; ++i) {
                const Rational f = m[i][col] / m[col][col];
                for (int j = col; j < k; ++j) m[i][j] -= f * m[col][j];
            }
        }
        g = gcd(g, abs(numerator(det)));
    });
    return g == 1;
}

}  // namespace

int Fan::cone_index(const std::vector<int>& ray_set) const {
    std::vector<int> key = ray_set;
    std::sort(key.begin(), key.end());
    for (std::size_t i = 0; i < cones.size(); ++i)
        if (cones[i].rays == key) return static_cast<int>(i);
    return -1;
}

std::vector<int> Fan::cones_of_dim(int k) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < cones.size(); ++i)
        if (cones[i].dim == k) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<RationalVec> Fan::generators(int id) const {
    std::vector<RationalVec> out;
    for (int r : cone(id).rays) out.push_back(to_rational(rays[r]));
    return out;
}

bool Fan::contains(int id, const RationalVec& xi) const {
    if (static_cast<int>(xi.size()) != dim) throw DimensionMismatch("point dimension mismatch");
    return cone_member(cone(id), xi);
}

bool Fan::in_relative_interior(int id, const RationalVec& xi) const {
    const Cone& c = cone(id);
    if (static_cast<int>(xi.size()) != dim) throw DimensionMismatch("point dimension mismatch");
    for (const auto& z : c.span_normals)
        if (dot(z, xi) != 0) return false;
    for (const auto& m : c.facet_normals)
        if (dot(m, xi) <= 0) return false;
    return true;
}

bool Fan::is_face_of(int face_id, int cone_id) const {
    const Cone& f = cone(face_id);
    const Cone& c = cone(cone_id);
    if (!std::includes(c.rays.begin(), c.rays.end(), f.rays.begin(), f.rays.end())) return false;
    return smallest_face_rays(rays, c, f.rays) == f.rays;
}

std::vector<int> Fan::maximal_containing(int face_id) const {
    std::vector<int> out;
    for (int m : maximal)
        if (is_face_of(face_id, m)) out.push_back(m);
    return out;
}

Fan build_fan(int dim, std::vector<LatticeVec> rays, const std::vector<std::vector<int>>& maximal_cones) {
    if (dim < 0) throw DimensionMismatch("negative dimension");
    Fan fan;
    fan.dim = dim;
    fan.rays = std::move(rays);

    std::set<LatticeVec> distinct;
    for (const auto& r : fan.rays) {
        if (static_cast<int>(r.size()) != dim) throw DimensionMismatch("ray dimension mismatch");
        long long g = 0;
        for (long long v : r) g = gcd_ll(g, v);
        if (g != 1) throw NonPrimitiveRay("ray is zero or not primitive");
        if (!distinct.insert(r).second) throw NonPrimitiveRay("duplicate ray");
    }

    // Build maximal cones, then materialize all faces.
    std::vector<Cone> maximal_built;
    for (const auto& ids : maximal_cones) {
        for (int r : ids)
            if (r < 0 || r >= static_cast<int>(fan.rays.size()))
                throw UnknownCone("ray index out of range");
        maximal_built.push_back(build_cone(fan.rays, ids, dim));
    }

    std::map<std::vector<int>, Cone> all;
    all.emplace(std::vector<int>{}, build_cone(fan.rays, {}, dim));
    for (const auto& mc : maximal_built) {
        const int nf = static_cast<int>(mc.facet_normals.size());
        for (int mask = 0; mask < (1 << nf); ++mask) {
            std::vector<int> on;
            for (int r : mc.rays) {
                bool keep = true;
                for (int i = 0; i < nf && keep; ++i)
                    if ((mask >> i) & 1)
                        keep = dot(mc.facet_normals[i], to_rational(fan.rays[r])) == 0;
                if (keep) on.push_back(r);
            }
            if (!all.count(on)) all.emplace(on, build_cone(fan.rays, on, dim));
        }
    }

    // Origin first, then by dimension for stable downstream iteration.
    std::vector<std::pair<std::vector<int>, Cone>> ordered(all.begin(), all.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.second.dim < b.second.dim; });
    for (auto& [key, c] : ordered) fan.cones.push_back(std::move(c));
    for (const auto& mc : maximal_built) {
        const int idx = fan.cone_index(mc.rays);
        if (std::find(fan.maximal.begin(), fan.maximal.end(), idx) == fan.maximal.end())
            fan.maximal.push_back(idx);
    }

    for (std::size_t i = 0; i < fan.maximal.size(); ++i)
        for (std::size_t j = i + 1; j < fan.maximal.size(); ++j)
            check_common_face(fan.rays, fan.cones[fan.maximal[i]], fan.cones[fan.maximal[j]], dim);

    fan.simplicial = std::all_of(fan.cones.begin(), fan.cones.end(),
                                 [](const Cone& c) { return c.simplicial; });
    fan.smooth = std::all_of(fan.maximal.begin(), fan.maximal.end(), [&](int m) {
        return cone_is_smooth(fan.rays, fan.cones[m], dim);
    });
    fan.complete = is_complete(fan);
    return fan;
}

Fan parse_fan(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    const int dim = j.at("dim").get<int>();
    std::vector<LatticeVec> rays;
    for (const auto& r : j.at("rays")) rays.push_back(r.get<LatticeVec>());
    std::vector<std::vector<int>> maximal;
    for (const auto& c : j.at("maximal_cones")) maximal.push_back(c.get<std::vector<int>>());
    return build_fan(dim, std::move(rays), maximal);
}

std::vector<int> faces(const Fan& fan, int cone_id) {
    fan.cone(cone_id);
    std::vector<int> out;
    for (std::size_t i = 0; i < fan.cones.size(); ++i)
        if (fan.is_face_of(static_cast<int>(i), cone_id)) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> facets_of(const Fan& fan, int cone_id) {
    const int d = fan.cone(cone_id).dim;
    std::vector<int> out;
    for (int f : faces(fan, cone_id))
        if (fan.cone(f).dim == d - 1) out.push_back(f);
    return out;
}

std::optional<int> locate(const Fan& fan, const RationalVec& xi) {
    if (static_cast<int>(xi.size()) != fan.dim) throw DimensionMismatch("point dimension mismatch");
    for (std::size_t i = 0; i < fan.cones.size(); ++i)
        if (fan.in_relative_interior(static_cast<int>(i), xi)) return static_cast<int>(i);
    return std::nullopt;
}

bool is_complete(const Fan& fan) {
    if (fan.dim == 0) return true;
    if (fan.maximal.empty()) return false;
    const bool all_full_dim = std::all_of(fan.maximal.begin(), fan.maximal.end(), [&](int m) {
        return fan.cones[m].dim == fan.dim;
    });
    if (all_full_dim) {
        // Facet pairing: every (n-1)-cone bounds exactly two maximal cones.
        for (int c : fan.cones_of_dim(fan.dim - 1))
            if (fan.maximal_containing(c).size() != 2) return false;
        return true;
    }
    // Lower-dimensional maximal cones: fall back to point location on a grid.
    std::vector<RationalVec> grid{RationalVec(fan.dim, Rational(0))};
    for (int axis = 0; axis < fan.dim; ++axis) {
        std::vector<RationalVec> next;
        for (const auto& p : grid)
            for (int k = -3; k <= 3; ++k) {
                RationalVec q = p;
                q[axis] = Rational(k) / 3;
                next.push_back(std::move(q));
            }
        grid = std::move(next);
    }
    for (const auto& p : grid)
        if (!locate(fan, p)) return false;
    return true;
}

std::vector<LatticeVec> dual_cone_constraints(const Fan& fan, int cone_id) {
    std::vector<LatticeVec> out;
    for (int r : fan.cone(cone_id).rays) out.push_back(fan.rays[r]);
    return out;
}

}  // namespace toric
