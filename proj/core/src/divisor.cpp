#include "toric/divisor.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "toric/linalg.hpp"
#include "toric/mollifier.hpp"

namespace toric {

namespace {

bool all_integral(const RationalVec& v) {
    for (const auto& x : v)
        if (boost::multiprecision::denominator(x) != 1) return false;
    return true;
}

}  // namespace

CartierData cartier_data(const Fan& fan, const ToricDivisor& d) {
    if (d.coeffs.size() != fan.rays.size())
        throw DivisorError("cartier_data: one coefficient per ray required");

    CartierData cd;
    cd.chi.assign(fan.cones.size(), RationalVec(fan.dim, Rational(0)));
    cd.integral.assign(fan.cones.size(), false);

    std::set<int> maximal(fan.maximal.begin(), fan.maximal.end());

    for (int mid : fan.maximal) {
        const Cone& c = fan.cone(mid);
        RationalMatrix rows;
        RationalVec rhs;
        for (int r : c.rays) {
            rows.push_back(to_rational(fan.rays[r]));
            rhs.push_back(Rational(-d.coeffs[r]));
        }
        auto sol = solve_linear(rows, rhs);
        if (!sol) throw NotCartier("no linear functional matches the coefficients on cone " + std::to_string(mid));
        cd.chi[mid] = *sol;
    }

    QuadratureConfig q;
    for (std::size_t id = 0; id < fan.cones.size(); ++id) {
        if (maximal.count(static_cast<int>(id))) continue;
        auto adj = fan.maximal_containing(static_cast<int>(id));
        if (adj.empty()) throw DivisorError("cartier_data: cone not contained in any maximal cone");
        if (adj.size() == 1) {
            cd.chi[id] = cd.chi[adj[0]];
            continue;
        }
        auto w = limit_weights(fan, static_cast<int>(id), q);
        // Rationalize and renormalize so the combination is exactly convex;
        // the Cartier identities on the small cone then hold exactly.
        std::vector<Rational> lam;
        Rational total = 0;
        for (int mid : adj) {
            double wd = 0;
            if (auto it = w.find(mid); it != w.end()) wd = it->second;
            Rational l = dyadic_round(std::max(wd, 0.0), 30);
            if (l < 0) l = 0;
            lam.push_back(l);
            total += l;
        }
        if (total == 0) {
            lam.assign(adj.size(), Rational(1));
            total = Rational(static_cast<long long>(adj.size()));
        }
        RationalVec chi(fan.dim, Rational(0));
        for (std::size_t k = 0; k < adj.size(); ++k) {
            const Rational f = lam[k] / total;
            for (int j = 0; j < fan.dim; ++j) chi[j] += f * cd.chi[adj[k]][j];
        }
        cd.chi[id] = std::move(chi);
    }

    for (std::size_t id = 0; id < fan.cones.size(); ++id) cd.integral[id] = all_integral(cd.chi[id]);
    return cd;
}

Rational support_eval(const Fan& fan, const CartierData& cd, const RationalVec& xi) {
    if (static_cast<int>(xi.size()) != fan.dim) throw DimensionMismatch("support_eval: wrong dimension");
    auto id = locate(fan, xi);
    if (!id) throw OutsideSupport("support_eval: point outside the fan support");
    const Rational v = dot(xi, cd.chi[*id]);
    for (int mid : fan.maximal_containing(*id)) {
        if (dot(xi, cd.chi[mid]) != v)
            throw DivisorError("support_eval: containing cones disagree");
    }
    return v;
}

ContinuityReport check_continuity(const Fan& fan, const CartierData& cd, int samples, std::uint64_t seed) {
    ContinuityReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(0, 32);

    for (std::size_t a = 0; a < fan.maximal.size(); ++a) {
        for (std::size_t b = a + 1; b < fan.maximal.size(); ++b) {
            const Cone& ca = fan.cone(fan.maximal[a]);
            const Cone& cb = fan.cone(fan.maximal[b]);
            std::vector<int> shared;
            std::set_intersection(ca.rays.begin(), ca.rays.end(), cb.rays.begin(), cb.rays.end(),
                                  std::back_inserter(shared));
            if (shared.empty()) continue;
            for (int s = 0; s < samples; ++s) {
                RationalVec x(fan.dim, Rational(0));
                for (int r : shared) {
                    const Rational c = Rational(coeff(rng)) / 16;
                    for (int j = 0; j < fan.dim; ++j) x[j] += c * Rational(fan.rays[r][j]);
                }
                ++rep.points_checked;
                const Rational va = dot(x, cd.chi[fan.maximal[a]]);
                const Rational vb = dot(x, cd.chi[fan.maximal[b]]);
                if (va != vb) {
                    std::ostringstream os;
                    os << "cones " << fan.maximal[a] << "/" << fan.maximal[b] << " disagree at "
                       << to_string(x) << ": " << to_string(va) << " vs " << to_string(vb);
                    rep.violations.push_back(os.str());
                }
            }
        }
    }
    return rep;
}

ToricDivisor extend_to_completion(const Fan& fan, const ToricDivisor& d, const Fan& completion,
                                  const std::map<int, long long>& new_coeffs) {
    if (fan.dim != completion.dim) throw NotACompletion("ambient dimensions differ");
    if (!completion.complete) throw NotACompletion("target fan is not complete");

    // Every ray of the base fan must reappear verbatim.
    std::map<LatticeVec, int> comp_ray_index;
    for (std::size_t j = 0; j < completion.rays.size(); ++j)
        comp_ray_index[completion.rays[j]] = static_cast<int>(j);
    for (const auto& r : fan.rays)
        if (!comp_ray_index.count(r)) throw NotACompletion("missing ray in the completion");

    // Every cone of the base fan must be a union of completion cones: any
    // completion cone whose relative interior meets the interior of a base
    // cone has to be contained in it.
    for (int mid : fan.maximal) {
        const Cone& sigma = fan.cone(mid);
        for (std::size_t cid = 0; cid < completion.cones.size(); ++cid) {
            const Cone& c = completion.cones[cid];
            std::vector<LpConstraint> cons;
            RationalVec obj(fan.dim + 1, Rational(0));
            obj[fan.dim] = 1;
            auto add = [&](const RationalVec& n, Relation rel, bool strict) {
                LpConstraint lc;
                lc.coeffs = n;
                lc.coeffs.push_back(strict ? Rational(-1) : Rational(0));
                lc.rel = rel;
                lc.rhs = 0;
                cons.push_back(std::move(lc));
            };
            for (const auto& n : c.span_normals) add(n, Relation::EQ, false);
            for (const auto& n : c.facet_normals) add(n, Relation::GE, true);
            for (const auto& n : sigma.span_normals) add(n, Relation::EQ, false);
            for (const auto& n : sigma.facet_normals) add(n, Relation::GE, true);
            {
                LpConstraint cap;
                cap.coeffs.assign(fan.dim + 1, Rational(0));
                cap.coeffs[fan.dim] = 1;
                cap.rel = Relation::LE;
                cap.rhs = 1;
                cons.push_back(std::move(cap));
            }
            auto res = lp_maximize(cons, obj);
            const bool meets = res.status == LpStatus::Optimal && res.objective > 0;
            if (!meets) continue;
            bool inside = true;
            for (const auto& g : completion.generators(static_cast<int>(cid)))
                if (!fan.contains(mid, g)) inside = false;
            if (!inside) throw NotACompletion("completion cone crosses a base cone boundary");
        }
    }

    CartierData base = cartier_data(fan, d);

    ToricDivisor ext;
    ext.coeffs.assign(completion.rays.size(), 0);
    for (std::size_t j = 0; j < completion.rays.size(); ++j) {
        auto it = std::find(fan.rays.begin(), fan.rays.end(), completion.rays[j]);
        if (it != fan.rays.end()) {
            ext.coeffs[j] = d.coeffs[it - fan.rays.begin()];
            continue;
        }
        long long a = 0;
        if (auto nit = new_coeffs.find(static_cast<int>(j)); nit != new_coeffs.end()) a = nit->second;
        // A new ray inside the base support has its coefficient forced by the
        // requirement that the extended support function restricts correctly.
        if (locate(fan, to_rational(completion.rays[j]))) {
            const Rational forced = -support_eval(fan, base, to_rational(completion.rays[j]));
            if (Rational(a) != forced && new_coeffs.count(static_cast<int>(j)))
                throw SupportMismatch("coefficient on ray " + std::to_string(j) +
                                      " conflicts with the base support function");
            if (boost::multiprecision::denominator(forced) != 1)
                throw NotCartierAfterExtension("forced coefficient is not integral");
            a = forced.convert_to<long long>();
        }
        ext.coeffs[j] = a;
    }

    CartierData extended;
    try {
        extended = cartier_data(completion, ext);
    } catch (const NotCartier& e) {
        throw NotCartierAfterExtension(e.what());
    }

    // Restriction check on the base rays.
    for (std::size_t r = 0; r < fan.rays.size(); ++r) {
        const RationalVec u = to_rational(fan.rays[r]);
        if (support_eval(completion, extended, u) != support_eval(fan, base, u))
            throw SupportMismatch("extended support function differs on a base ray");
    }
    return ext;
}

}  // namespace toric
