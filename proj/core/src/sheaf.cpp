#include "toric/sheaf.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "toric/linalg.hpp"
#include "toric/lp.hpp"

namespace toric {

namespace {

int parity_sign(int m) { return ((m % 2) + 2) % 2 == 0 ? 1 : -1; }

long long rfloor(const Rational& r) {
    Integer q = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
    if (Rational(q) > r) --q;
    return q.convert_to<long long>();
}

long long rceil(const Rational& r) { return -rfloor(-r); }

/// Cohomology dimensions of a complex given by term degrees and a sparse
/// differential keyed (to, from), restricted to the index set `alive`.
std::map<int, int> cohomology_dims(const std::vector<int>& degrees,
                                   const std::map<std::pair<int, int>, long long>& diff,
                                   const std::vector<int>& alive) {
    std::map<int, std::vector<int>> by_degree;
    for (int i : alive) by_degree[degrees[i]].push_back(i);
    std::set<int> alive_set(alive.begin(), alive.end());

    std::map<int, int> ranks;  // degree m -> rank of d_m
    for (const auto& [m, cols] : by_degree) {
        auto it = by_degree.find(m + 1);
        if (it == by_degree.end()) continue;
        const auto& rows = it->second;
        RationalMatrix mat(rows.size(), RationalVec(cols.size(), Rational(0)));
        bool any = false;
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < cols.size(); ++c) {
                auto d = diff.find({rows[r], cols[c]});
                if (d != diff.end() && d->second != 0) {
                    mat[r][c] = d->second;
                    any = true;
                }
            }
        if (any) ranks[m] = rank(mat);
    }

    std::map<int, int> dims;
    for (const auto& [m, cols] : by_degree) {
        int dim = static_cast<int>(cols.size());
        if (auto it = ranks.find(m); it != ranks.end()) dim -= it->second;
        if (auto it = ranks.find(m - 1); it != ranks.end()) dim -= it->second;
        if (dim != 0) dims[m] = dim;
    }
    (void)alive_set;
    return dims;
}

StalkReport make_report(const RationalVec& x, std::map<int, int> dims) {
    StalkReport rep;
    rep.point = x;
    rep.dims = std::move(dims);
    for (const auto& [m, d] : rep.dims) rep.euler += parity_sign(m) * d;
    return rep;
}

}  // namespace

bool feasible(const OpenPolyhedron& p) { return open_system_feasible(p.constraints, p.dim); }

bool region_contains(const OpenPolyhedron& p, const RationalVec& x) {
    for (const auto& [n, c] : p.constraints)
        if (dot(x, n) <= c) return false;
    return true;
}

ShardComplex twisted_polytope_sheaf(const Fan& fan, const CartierData& cd) {
    if (!fan.complete) throw FanNotComplete("twisted_polytope_sheaf requires a complete fan");

    ShardComplex c;
    c.dim = fan.dim;
    std::vector<int> term_of_cone(fan.cones.size(), -1);
    for (std::size_t id = 0; id < fan.cones.size(); ++id) {
        const Cone& sigma = fan.cones[id];
        ShardTerm t;
        t.cone_id = static_cast<int>(id);
        t.degree = -sigma.dim;
        t.chi = cd.chi[id];
        t.region.dim = fan.dim;
        for (int r : sigma.rays) {
            RationalVec n = to_rational(fan.rays[r]);
            Rational off = dot(fan.rays[r], cd.chi[id]);
            t.region.constraints.emplace_back(std::move(n), std::move(off));
        }
        term_of_cone[id] = static_cast<int>(c.terms.size());
        c.terms.push_back(std::move(t));
    }

    // Incidence sign: express (orientation of tau, w) in the orientation of
    // sigma, where w is the sum of the generators sigma has beyond tau.
    for (std::size_t id = 0; id < fan.cones.size(); ++id) {
        const Cone& sigma = fan.cones[id];
        if (sigma.dim == 0) continue;
        for (int tid : facets_of(fan, static_cast<int>(id))) {
            const Cone& tau = fan.cone(tid);
            RationalVec w(fan.dim, Rational(0));
            for (int r : sigma.rays) {
                if (std::binary_search(tau.rays.begin(), tau.rays.end(), r)) continue;
                for (int j = 0; j < fan.dim; ++j) w[j] += Rational(fan.rays[r][j]);
            }
            std::vector<RationalVec> to = tau.orientation;
            to.push_back(std::move(w));
            const int sign = orientation_sign(sigma.orientation, to);
            if (sign == 0) throw SignConstructionFailed("degenerate facet incidence");
            c.diff[{term_of_cone[tid], term_of_cone[id]}] = sign;
        }
    }

    // Composite (to, from) entries of d.d must all vanish, exactly.
    std::map<std::pair<int, int>, long long> square;
    for (const auto& [ab, v1] : c.diff)
        for (const auto& [bc, v2] : c.diff)
            if (ab.second == bc.first) square[{ab.first, bc.second}] += v1 * v2;
    for (const auto& [key, v] : square)
        if (v != 0) throw SignConstructionFailed("d^2 != 0 in the generated complex");

    return c;
}

StalkReport stalk(const ShardComplex& c, const RationalVec& x) {
    if (static_cast<int>(x.size()) != c.dim) throw DimensionMismatch("stalk: wrong dimension");
    std::vector<int> alive;
    std::vector<int> degrees(c.terms.size());
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        degrees[i] = c.terms[i].degree;
        if (region_contains(c.terms[i].region, x)) alive.push_back(static_cast<int>(i));
    }
    return make_report(x, cohomology_dims(degrees, c.diff, alive));
}

StalkReport convolve_stalk(const ShardComplex& f, const ShardComplex& g, const RationalVec& x) {
    if (f.dim != g.dim) throw DimensionMismatch("convolve_stalk: mixed dimensions");
    const int n = f.dim;
    if (static_cast<int>(x.size()) != n) throw DimensionMismatch("convolve_stalk: wrong point dimension");

    // Basis: pairs (i, j) whose addition fiber U_i intersect (x - V_j) is
    // nonempty, tested by exact LP in the u variable.
    auto conic = [n](const ShardTerm& t) {
        if (static_cast<int>(t.chi.size()) != n) return false;
        for (const auto& [u, c] : t.region.constraints)
            if (c != dot(t.chi, u)) return false;
        return true;
    };
    std::vector<char> conic_f(f.terms.size()), conic_g(g.terms.size());
    for (std::size_t i = 0; i < f.terms.size(); ++i) conic_f[i] = conic(f.terms[i]);
    for (std::size_t j = 0; j < g.terms.size(); ++j) conic_g[j] = conic(g.terms[j]);

    std::map<std::pair<int, int>, int> index;
    std::vector<int> degrees;
    for (std::size_t i = 0; i < f.terms.size(); ++i) {
        for (std::size_t j = 0; j < g.terms.size(); ++j) {
            // The fiber over x is nonempty iff x lies in U_i + V_j, i.e. iff y
            // below lies in Int(s-dual + t-dual). Membership in either open
            // summand settles it without the LP.
            bool quick1 = false, quick2 = false;
            if (conic_f[i] && conic_g[j]) {
                RationalVec y(n);
                for (int k = 0; k < n; ++k) y[k] = x[k] - f.terms[i].chi[k] - g.terms[j].chi[k];
                quick1 = true;
                for (const auto& [u, c] : f.terms[i].region.constraints)
                    if (dot(y, u) <= 0) {
                        quick1 = false;
                        break;
                    }
                if (!quick1) {
                    quick2 = true;
                    for (const auto& [u, c] : g.terms[j].region.constraints)
                        if (dot(y, u) <= 0) {
                            quick2 = false;
                            break;
                        }
                }
            }
            if (!quick1 && !quick2) {
                std::vector<std::pair<RationalVec, Rational>> sys = f.terms[i].region.constraints;
                for (const auto& [m, cc] : g.terms[j].region.constraints) {
                    RationalVec neg(n);
                    for (int k = 0; k < n; ++k) neg[k] = -m[k];
                    sys.emplace_back(std::move(neg), cc - dot(x, m));
                }
                if (!open_system_feasible(sys, n)) continue;
            }
            index[{static_cast<int>(i), static_cast<int>(j)}] = static_cast<int>(degrees.size());
            degrees.push_back(f.terms[i].degree + g.terms[j].degree + n);
        }
    }

    std::map<std::pair<int, int>, long long> diff;
    for (const auto& [pair, idx] : index) {
        const auto [i, j] = pair;
        for (const auto& [key, v] : f.diff) {
            if (key.second != i) continue;
            if (auto it = index.find({key.first, j}); it != index.end())
                diff[{it->second, idx}] += v;
        }
        const int sgn = parity_sign(f.terms[i].degree);
        for (const auto& [key, v] : g.diff) {
            if (key.second != j) continue;
            if (auto it = index.find({i, key.first}); it != index.end())
                diff[{it->second, idx}] += sgn * v;
        }
    }

    std::vector<int> alive(degrees.size());
    for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = static_cast<int>(i);
    return make_report(x, cohomology_dims(degrees, diff, alive));
}

std::vector<SSComponent> singular_support(const Fan& fan, int cone_id, const RationalVec& chi) {
    const Cone& sigma = fan.cone(cone_id);
    std::vector<SSComponent> out;
    for (int tid : faces(fan, cone_id)) {
        const Cone& tau = fan.cone(tid);
        SSComponent comp;
        comp.face = tid;
        comp.zero_section = tau.rays.empty();
        for (int r : tau.rays) {
            comp.equalities.emplace_back(to_rational(fan.rays[r]), dot(fan.rays[r], chi));
            LatticeVec neg = fan.rays[r];
            for (auto& v : neg) v = -v;
            comp.codirections.push_back(std::move(neg));
        }
        for (int r : sigma.rays)
            comp.inequalities.emplace_back(to_rational(fan.rays[r]), dot(fan.rays[r], chi));
        out.push_back(std::move(comp));
    }
    return out;
}

StalkReport torus_stalk(const ShardComplex& f, const RationalVec& x, int radius) {
    if (radius < 1) throw SheafError("torus_stalk: radius must be at least 1");
    const int n = f.dim;
    if (f.terms.empty()) return make_report(x, {});
    RationalVec lo(n), hi(n);
    for (int j = 0; j < n; ++j) lo[j] = hi[j] = f.terms[0].chi[j];
    for (const auto& t : f.terms)
        for (int j = 0; j < n; ++j) {
            lo[j] = std::min(lo[j], t.chi[j]);
            hi[j] = std::max(hi[j], t.chi[j]);
        }
    for (int j = 0; j < n; ++j) {
        lo[j] -= radius;
        hi[j] += radius;
    }

    std::vector<long long> from(n), to(n), m(n);
    for (int j = 0; j < n; ++j) {
        from[j] = rceil(lo[j] - x[j]);
        to[j] = rfloor(hi[j] - x[j]);
        m[j] = from[j];
        if (from[j] > to[j]) return make_report(x, {});
    }

    std::map<int, int> total;
    for (;;) {
        RationalVec y = x;
        bool shell = false;
        for (int j = 0; j < n; ++j) {
            y[j] += m[j];
            if (y[j] < lo[j] + 1 || y[j] > hi[j] - 1) shell = true;
        }
        auto rep = stalk(f, y);
        if (!rep.dims.empty()) {
            if (shell) throw UnboundedSupport("nonzero stalk on the window boundary");
            for (const auto& [deg, d] : rep.dims) total[deg] += d;
        }
        int j = 0;
        while (j < n) {
            if (++m[j] <= to[j]) break;
            m[j] = from[j];
            ++j;
        }
        if (j == n) break;
    }
    return make_report(x, total);
}

std::string serialize_complex(const ShardComplex& c) {
    nlohmann::json j;
    j["dim"] = c.dim;
    j["terms"] = nlohmann::json::array();
    for (const auto& t : c.terms) {
        nlohmann::json jt;
        jt["cone"] = t.cone_id;
        jt["degree"] = t.degree;
        jt["chi"] = nlohmann::json::array();
        for (const auto& v : t.chi) jt["chi"].push_back(to_string(v));
        jt["constraints"] = nlohmann::json::array();
        for (const auto& [normal, off] : t.region.constraints) {
            nlohmann::json jc;
            jc["normal"] = nlohmann::json::array();
            for (const auto& v : normal) jc["normal"].push_back(to_string(v));
            jc["offset"] = to_string(off);
            jt["constraints"].push_back(std::move(jc));
        }
        j["terms"].push_back(std::move(jt));
    }
    j["differential"] = nlohmann::json::array();
    for (const auto& [key, v] : c.diff)
        j["differential"].push_back(nlohmann::json::array({key.first, key.second, v}));
    return j.dump(2);
}

ShardComplex parse_complex(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    ShardComplex c;
    c.dim = j.at("dim").get<int>();
    for (const auto& jt : j.at("terms")) {
        ShardTerm t;
        t.cone_id = jt.value("cone", -1);
        t.degree = jt.at("degree").get<int>();
        for (const auto& v : jt.at("chi")) t.chi.push_back(parse_rational(v.get<std::string>()));
        t.region.dim = c.dim;
        for (const auto& jc : jt.at("constraints")) {
            RationalVec n;
            for (const auto& v : jc.at("normal")) n.push_back(parse_rational(v.get<std::string>()));
            t.region.constraints.emplace_back(std::move(n), parse_rational(jc.at("offset").get<std::string>()));
        }
        c.terms.push_back(std::move(t));
    }
    for (const auto& jd : j.at("differential"))
        c.diff[{jd.at(0).get<int>(), jd.at(1).get<int>()}] = jd.at(2).get<long long>();
    return c;
}

}  // namespace toric
