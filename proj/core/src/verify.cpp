#include "toric/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "toric/geometry.hpp"
#include "toric/linalg.hpp"

namespace toric {

namespace {

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

long long rfloor(const Rational& r) {
    Integer q = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
    if (Rational(q) > r) --q;
    return q.convert_to<long long>();
}

long long rceil(const Rational& r) { return -rfloor(-r); }

/// Dual basis {m_i} of a full-dimensional simplicial cone: <m_i | u_j> = delta_ij.
std::vector<RationalVec> dual_basis(const Fan& fan, const Cone& sigma) {
    RationalMatrix rows;
    for (int r : sigma.rays) rows.push_back(to_rational(fan.rays[r]));
    std::vector<RationalVec> duals;
    for (std::size_t i = 0; i < sigma.rays.size(); ++i) {
        RationalVec rhs(sigma.rays.size(), Rational(0));
        rhs[i] = 1;
        auto sol = solve_linear(rows, rhs);
        if (!sol) throw VerifyError("degenerate cone generators");
        duals.push_back(*sol);
    }
    return duals;
}

std::string dims_to_string(const std::map<int, int>& dims) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [deg, d] : dims) {
        if (!first) os << ", ";
        os << deg << ": " << d;
        first = false;
    }
    os << "}";
    return os.str();
}

using WallList = std::vector<std::pair<RationalVec, Rational>>;

void collect_walls(const ShardComplex& c, WallList& walls) {
    for (const auto& t : c.terms)
        for (const auto& w : t.region.constraints) walls.push_back(w);
}

void collect_sum_walls(const ShardComplex& a, const ShardComplex& b, WallList& walls) {
    // Facet offsets of Minkowski sums of regions: matching normals, summed
    // offsets. These are where convolution fibers appear or vanish.
    std::map<RationalVec, std::set<Rational>> offs_a, offs_b;
    for (const auto& t : a.terms)
        for (const auto& [u, c] : t.region.constraints) offs_a[u].insert(c);
    for (const auto& t : b.terms)
        for (const auto& [u, c] : t.region.constraints) offs_b[u].insert(c);
    for (const auto& [u, as] : offs_a) {
        auto it = offs_b.find(u);
        if (it == offs_b.end()) continue;
        for (const auto& ca : as)
            for (const auto& cb : it->second) walls.emplace_back(u, ca + cb);
    }
}

bool off_walls(const RationalVec& x, const WallList& walls, bool torus) {
    for (const auto& [u, c] : walls) {
        const Rational v = dot(x, u) - c;
        if (torus ? is_integer(v) : v == 0) return false;
    }
    return true;
}

}  // namespace

std::vector<ConormalSample> sample_conormal_detailed(const Fan& fan, int cone_id, int count,
                                                     std::uint64_t seed) {
    const Cone& sigma = fan.cone(cone_id);
    if (sigma.rays.empty()) throw OriginCone("the origin cone has no conormal strata");
    if (sigma.dim != fan.dim || !sigma.simplicial)
        throw VerifyError("conormal sampling needs a full-dimensional simplicial cone");
    const int k = static_cast<int>(sigma.rays.size());
    const auto duals = dual_basis(fan, sigma);

    std::vector<std::vector<int>> strata;  // nonempty subsets of generator positions
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) s.push_back(i);
        strata.push_back(std::move(s));
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ubase(0.0, 2.0), ucov(0.1, 1.0);
    std::vector<ConormalSample> out;
    for (int s = 0; s < count; ++s) {
        const auto& stratum = strata[s % strata.size()];
        ConormalSample cs;
        cs.p.base.assign(fan.dim, 0.0);
        cs.p.covector.assign(fan.dim, 0.0);
        std::set<int> in_stratum(stratum.begin(), stratum.end());
        for (int i = 0; i < k; ++i) {
            if (in_stratum.count(i)) {
                const double d = ucov(rng);
                for (int j = 0; j < fan.dim; ++j)
                    cs.p.covector[j] -= d * static_cast<double>(fan.rays[sigma.rays[i]][j]);
            } else {
                const double c = ubase(rng);
                const auto m = to_double(duals[i]);
                for (int j = 0; j < fan.dim; ++j) cs.p.base[j] += c * m[j];
            }
        }
        const double nv = norm_d(cs.p.covector);
        for (auto& v : cs.p.covector) v /= nv;
        std::vector<int> face_rays;
        for (int i : stratum) face_rays.push_back(sigma.rays[i]);
        std::sort(face_rays.begin(), face_rays.end());
        cs.face = fan.cone_index(face_rays);
        out.push_back(std::move(cs));
    }
    return out;
}

std::vector<PhasePoint> sample_conormal(const Fan& fan, int cone_id, int count, std::uint64_t seed) {
    std::vector<PhasePoint> pts;
    for (auto& cs : sample_conormal_detailed(fan, cone_id, count, seed)) pts.push_back(std::move(cs.p));
    return pts;
}

FrontReport front_convergence(const Fan& fan, const CartierData& cd, int cone_id,
                              const std::vector<double>& eps_schedule, int samples_per_stratum,
                              const QuadratureConfig& q) {
    if (eps_schedule.size() < 3) throw ScheduleTooShort("need at least three rungs");
    if (!fan.complete) throw FanNotComplete("front convergence requires a complete fan");
    FrontReport rep;
    rep.cone = cone_id;
    const Cone& sigma = fan.cone(cone_id);
    const int k = static_cast<int>(sigma.rays.size());
    const int strata = (1 << k) - 1;
    auto samples = sample_conormal_detailed(fan, cone_id, samples_per_stratum * strata, q.seed);
    const auto duals = dual_basis(fan, sigma);
    const auto chi = to_double(cd.chi[cone_id]);

    // Per sample: generators of the target stratum chi + (tau-perp cap s-dual),
    // spanned by the duals complementary to tau's generators.
    std::vector<std::vector<std::vector<double>>> target_gens(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const Cone& tau = fan.cone(samples[s].face);
        for (int i = 0; i < k; ++i)
            if (!std::binary_search(tau.rays.begin(), tau.rays.end(), sigma.rays[i]))
                target_gens[s].push_back(to_double(duals[i]));
    }

    double stderr_max = 0;
    for (double eps : eps_schedule) {
        double worst = 0;
        for (std::size_t s = 0; s < samples.size(); ++s) {
            // The covector is stored as a codirection in -tau; the flow sees
            // the corresponding positive stratum direction.
            std::vector<double> xi(fan.dim);
            for (int j = 0; j < fan.dim; ++j) xi[j] = -samples[s].p.covector[j];
            auto ev = grad_smoothed_support(fan, cd, eps, xi, q, false);
            stderr_max = std::max(stderr_max, ev.mc_stderr);
            std::vector<double> front(fan.dim);
            for (int j = 0; j < fan.dim; ++j) front[j] = samples[s].p.base[j] + ev.dphi_eps[j] - chi[j];
            worst = std::max(worst, dist_to_generated_cone(front, target_gens[s]));
        }
        rep.rows.push_back({eps, worst});
    }

    const double slack = 3 * stderr_max + 1e-9;
    rep.monotone = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].max_dist > rep.rows[i - 1].max_dist + slack) rep.monotone = false;

    rep.fit_c = 1.5 * std::max(rep.rows[0].max_dist / rep.rows[0].eps,
                               rep.rows[1].max_dist / rep.rows[1].eps);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& row : rep.rows) {
        if (row.max_dist < 1e-12) continue;
        const double lx = std::log(row.eps), ly = std::log(row.max_dist);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++cnt;
    }
    if (cnt >= 2 && std::fabs(cnt * sxx - sx * sx) > 1e-12)
        rep.fitted_rate = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);

    bool all_tiny = true;
    for (const auto& row : rep.rows)
        if (row.max_dist > 1e-9) all_tiny = false;
    if (all_tiny) {
        rep.pass = true;
        return rep;
    }
    bool bounded = true;
    for (const auto& row : rep.rows)
        if (row.max_dist > rep.fit_c * row.eps + slack) bounded = false;
    rep.pass = rep.monotone && bounded && rep.fitted_rate >= 0.8;
    return rep;
}

std::vector<RationalVec> wall_avoiding_points(const std::vector<const ShardComplex*>& complexes,
                                              int count, std::uint64_t seed, bool torus) {
    if (complexes.empty() || count <= 0) return {};
    const int n = complexes.front()->dim;
    WallList walls;
    for (const auto* c : complexes) collect_walls(*c, walls);
    for (std::size_t a = 0; a < complexes.size(); ++a)
        for (std::size_t b = a; b < complexes.size(); ++b)
            collect_sum_walls(*complexes[a], *complexes[b], walls);

    // Prime-denominator samples miss almost every wall; the exact rejection
    // test handles the rest.
    const long long P = 100003;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> num(torus ? 0 : -7 * P, torus ? P - 1 : 7 * P);
    std::vector<RationalVec> pts;
    int guard = 0;
    while (static_cast<int>(pts.size()) < count) {
        if (++guard > 1000 * count) throw VerifyError("wall-avoiding sampling did not converge");
        RationalVec x(n);
        for (int j = 0; j < n; ++j) x[j] = Rational(num(rng)) / P;
        if (off_walls(x, walls, torus)) pts.push_back(std::move(x));
    }
    return pts;
}

ActionReport picard_action_check(const Fan& fan, const ToricDivisor& d1, const ToricDivisor& d2,
                                 int points, std::uint64_t seed) {
    ToricDivisor sum;
    for (std::size_t r = 0; r < d1.coeffs.size(); ++r) sum.coeffs.push_back(d1.coeffs[r] + d2.coeffs[r]);
    const auto f1 = twisted_polytope_sheaf(fan, cartier_data(fan, d1));
    const auto f2 = twisted_polytope_sheaf(fan, cartier_data(fan, d2));
    const auto f12 = twisted_polytope_sheaf(fan, cartier_data(fan, sum));

    ActionReport rep;
    for (const auto& x : wall_avoiding_points({&f1, &f2, &f12}, points, seed, false)) {
        ++rep.points;
        const auto lhs = convolve_stalk(f1, f2, x);
        const auto rhs = stalk(f12, x);
        if (lhs.dims != rhs.dims) {
            std::ostringstream os;
            os << "x=" << to_string(x) << " convolution " << dims_to_string(lhs.dims)
               << " vs sum divisor " << dims_to_string(rhs.dims);
            rep.mismatches.push_back(os.str());
        }
    }
    rep.pass = rep.points > 0 && rep.mismatches.empty();
    return rep;
}

ActionReport torus_action_check(const Fan& fan, const ToricDivisor& d1, const ToricDivisor& d2,
                                int points, std::uint64_t seed, int radius) {
    ToricDivisor sum;
    for (std::size_t r = 0; r < d1.coeffs.size(); ++r) sum.coeffs.push_back(d1.coeffs[r] + d2.coeffs[r]);
    const auto f1 = twisted_polytope_sheaf(fan, cartier_data(fan, d1));
    const auto f2 = twisted_polytope_sheaf(fan, cartier_data(fan, d2));
    const auto f12 = twisted_polytope_sheaf(fan, cartier_data(fan, sum));
    const int n = fan.dim;

    // Window for the lattice sum: componentwise chi-sum box, inflated.
    RationalVec lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
        Rational lo1 = f1.terms[0].chi[j], hi1 = lo1, lo2 = f2.terms[0].chi[j], hi2 = lo2;
        for (const auto& t : f1.terms) {
            lo1 = std::min(lo1, t.chi[j]);
            hi1 = std::max(hi1, t.chi[j]);
        }
        for (const auto& t : f2.terms) {
            lo2 = std::min(lo2, t.chi[j]);
            hi2 = std::max(hi2, t.chi[j]);
        }
        lo[j] = lo1 + lo2 - radius;
        hi[j] = hi1 + hi2 + radius;
    }

    ActionReport rep;
    for (const auto& x : wall_avoiding_points({&f1, &f2, &f12}, points, seed, true)) {
        ++rep.points;
        const auto lhs = torus_stalk(f12, x, radius);
        std::map<int, int> rhs;
        std::vector<long long> from(n), to(n), m(n);
        for (int j = 0; j < n; ++j) {
            from[j] = rceil(lo[j] - x[j]);
            to[j] = rfloor(hi[j] - x[j]);
            m[j] = from[j];
        }
        bool empty_range = false;
        for (int j = 0; j < n; ++j)
            if (from[j] > to[j]) empty_range = true;
        while (!empty_range) {
            RationalVec y = x;
            for (int j = 0; j < n; ++j) y[j] += m[j];
            for (const auto& [deg, d] : convolve_stalk(f1, f2, y).dims) rhs[deg] += d;
            int j = 0;
            while (j < n) {
                if (++m[j] <= to[j]) break;
                m[j] = from[j];
                ++j;
            }
            if (j == n) break;
        }
        if (lhs.dims != rhs) {
            std::ostringstream os;
            os << "x=" << to_string(x) << " torus stalk " << dims_to_string(lhs.dims)
               << " vs lattice sum " << dims_to_string(rhs);
            rep.mismatches.push_back(os.str());
        }
    }
    rep.pass = rep.points > 0 && rep.mismatches.empty();
    return rep;
}

}  // namespace toric
