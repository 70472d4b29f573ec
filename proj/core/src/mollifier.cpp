#include "toric/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "toric/geometry.hpp"

namespace toric {

namespace {

double bump_raw(double r2) { return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0; }

double sphere_area(int n) {
    // Surface area of the unit (n-1)-sphere.
    return 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0);
}

double bump_mass(int dim) {
    // Radial Simpson quadrature of r^{n-1} exp(-1/(1-r^2)) over [0,1]; the
    // integrand and all derivatives vanish at r=1, so this converges fast.
    const int m = 1 << 12;
    const double h = 1.0 / m;
    double s = 0;
    for (int i = 0; i <= m; ++i) {
        const double r = i * h;
        const double v = std::pow(r, dim - 1) * bump_raw(r * r);
        const double w = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
        s += w * v;
    }
    return sphere_area(dim) * s * h / 3.0;
}

/// Draw u with density proportional to the bump: uniform-in-ball proposals,
/// accepted with probability bump(u)/bump(0).
struct BumpSampler {
    int dim;
    std::mt19937_64 rng;
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif{0.0, 1.0};

    BumpSampler(int dim_, std::uint64_t seed) : dim(dim_), rng(seed) {}

    void draw(std::vector<double>& u) {
        for (;;) {
            double n2 = 0;
            for (int j = 0; j < dim; ++j) {
                u[j] = gauss(rng);
                n2 += u[j] * u[j];
            }
            if (n2 == 0) continue;
            const double r = std::pow(unif(rng), 1.0 / dim) / std::sqrt(n2);
            double r2 = 0;
            for (int j = 0; j < dim; ++j) {
                u[j] *= r;
                r2 += u[j] * u[j];
            }
            if (unif(rng) < std::exp(1.0) * bump_raw(r2)) return;
        }
    }
};

struct MaximalCache {
    int id = 0;
    std::vector<std::vector<double>> facets;
    std::vector<std::vector<double>> spans;
    std::vector<double> chi;
};

std::vector<MaximalCache> build_cache(const Fan& fan, const CartierData* cd) {
    std::vector<MaximalCache> cache;
    for (int mid : fan.maximal) {
        MaximalCache e;
        e.id = mid;
        const Cone& c = fan.cone(mid);
        for (const auto& n : c.facet_normals) e.facets.push_back(to_double(n));
        for (const auto& n : c.span_normals) e.spans.push_back(to_double(n));
        if (cd) e.chi = to_double(cd->chi[mid]);
        cache.push_back(std::move(e));
    }
    return cache;
}

/// Index into the cache of the maximal cone containing x. Falls back to an
/// exact rational test when every float margin is ambiguous near a wall.
int classify(const Fan& fan, const std::vector<MaximalCache>& cache, const std::vector<double>& x) {
    constexpr double kMargin = 1e-9;
    for (std::size_t k = 0; k < cache.size(); ++k) {
        bool inside = true;
        for (const auto& n : cache[k].spans)
            if (std::fabs(dot_d(n, x)) > kMargin) {
                inside = false;
                break;
            }
        for (const auto& n : cache[k].facets) {
            if (!inside) break;
            if (dot_d(n, x) < kMargin) inside = false;
        }
        if (inside) return static_cast<int>(k);
    }
    const RationalVec xr = dyadic_round(x, 40);
    for (std::size_t k = 0; k < cache.size(); ++k)
        if (fan.contains(cache[k].id, xr)) return static_cast<int>(k);
    return -1;
}

std::vector<double> unit(const std::vector<double>& xi) {
    const double n = norm_d(xi);
    if (n < 1e-12) throw ZeroCovector("covector must be nonzero");
    std::vector<double> r(xi.size());
    for (std::size_t j = 0; j < xi.size(); ++j) r[j] = xi[j] / n;
    return r;
}

/// Odd per-axis grid resolution targeting q.samples total points.
int grid_side(int dim, long samples) {
    int m = static_cast<int>(std::floor(std::pow(static_cast<double>(std::max(samples, 81L)), 1.0 / dim)));
    m = std::max(m, 9);
    if (m % 2 == 0) ++m;
    return m;
}

/// Visit grid/MC quadrature nodes u in the unit ball with normalized bump
/// weights summing to 1 (up to MC noise); fn(u, weight).
template <typename F>
void for_each_node(int dim, const QuadratureConfig& q, F&& fn) {
    if (q.method == QuadMethod::MonteCarlo) {
        BumpSampler s(dim, q.seed);
        std::vector<double> u(dim);
        const double w = 1.0 / static_cast<double>(q.samples);
        for (long i = 0; i < q.samples; ++i) {
            s.draw(u);
            fn(u, w);
        }
        return;
    }
    const int m = grid_side(dim, q.samples);
    const double h = 2.0 / m;
    std::vector<std::vector<double>> nodes;
    std::vector<double> weights;
    std::vector<int> idx(dim, 0);
    double total = 0;
    for (;;) {
        std::vector<double> u(dim);
        double r2 = 0;
        for (int j = 0; j < dim; ++j) {
            u[j] = -1.0 + (idx[j] + 0.5) * h;
            r2 += u[j] * u[j];
        }
        const double w = bump_raw(r2);
        if (w > 0) {
            nodes.push_back(std::move(u));
            weights.push_back(w);
            total += w;
        }
        int j = 0;
        while (j < dim && ++idx[j] == m) idx[j++] = 0;
        if (j == dim) break;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) fn(nodes[i], weights[i] / total);
}

struct EvalAccumulator {
    std::vector<double> weights;  // per cache index
    double f = 0;
    double second_moment = 0;  // for the MC standard error
    double total = 0;
};

EvalAccumulator accumulate(const Fan& fan, const std::vector<MaximalCache>& cache, double eps,
                           const std::vector<double>& xi_hat, const QuadratureConfig& q) {
    const int n = fan.dim;
    EvalAccumulator acc;
    acc.weights.assign(cache.size(), 0.0);
    std::vector<double> x(n);
    for_each_node(n, q, [&](const std::vector<double>& u, double w) {
        for (int j = 0; j < n; ++j) x[j] = xi_hat[j] - eps * u[j];
        const int k = classify(fan, cache, x);
        double v = 0;
        if (k >= 0) {
            acc.weights[k] += w;
            v = dot_d(cache[k].chi, x);
        }
        acc.f += w * v;
        acc.second_moment += w * v * v;
        acc.total += w;
    });
    return acc;
}

}  // namespace

double Mollifier::density(const std::vector<double>& u) const {
    if (static_cast<int>(u.size()) != dim) throw SmoothingError("density: wrong dimension");
    return normalization * bump_raw(dot_d(u, u));
}

Mollifier make_mollifier(int dim) {
    if (dim < 1) throw SmoothingError("make_mollifier: dimension must be positive");
    return Mollifier{dim, 1.0 / bump_mass(dim)};
}

std::map<int, double> region_weights(const Fan& fan, double eps, const std::vector<double>& xi_hat,
                                     const QuadratureConfig& q) {
    if (!fan.complete) throw FanNotComplete("region_weights requires a complete fan");
    if (eps <= 0) throw SmoothingError("region_weights: eps must be positive");
    auto cache = build_cache(fan, nullptr);
    for (auto& e : cache) e.chi.assign(fan.dim, 0.0);
    auto acc = accumulate(fan, cache, eps, xi_hat, q);
    std::map<int, double> out;
    for (std::size_t k = 0; k < cache.size(); ++k) out[cache[k].id] = acc.weights[k];
    return out;
}

std::map<int, double> limit_weights(const Fan& fan, int tau_id, const QuadratureConfig& q) {
    const Cone& tau = fan.cone(tau_id);
    std::map<int, double> out;
    struct Sector {
        int id;
        std::vector<std::vector<double>> walls;
        double mass = 0;
    };
    std::vector<Sector> sectors;
    for (int mid : fan.maximal_containing(tau_id)) {
        const Cone& sigma = fan.cone(mid);
        out[mid] = 0.0;
        if (sigma.dim < fan.dim) continue;  // measure-zero sector
        Sector s;
        s.id = mid;
        for (const auto& m : sigma.facet_normals) {
            bool vanishes = true;
            for (int r : tau.rays)
                if (dot(fan.rays[r], m) != 0) {
                    vanishes = false;
                    break;
                }
            if (vanishes) s.walls.push_back(to_double(m));
        }
        sectors.push_back(std::move(s));
    }
    for_each_node(fan.dim, q, [&](const std::vector<double>& u, double w) {
        for (auto& s : sectors) {
            bool in = true;
            for (const auto& m : s.walls)
                if (dot_d(m, u) >= 0) {
                    in = false;
                    break;
                }
            if (in) s.mass += w;
        }
    });
    for (const auto& s : sectors) out[s.id] = s.mass;
    return out;
}

namespace {

SmoothingEval eval_smoothing(const Fan& fan, const CartierData& cd, double eps,
                             const std::vector<double>& xi, const QuadratureConfig& q, bool with_fd) {
    if (!fan.complete) throw FanNotComplete("smoothing requires a complete fan");
    if (eps <= 0) throw SmoothingError("eps must be positive");
    const int n = fan.dim;
    if (static_cast<int>(xi.size()) != n) throw SmoothingError("covector has the wrong dimension");
    const auto xi_hat = unit(xi);
    auto cache = build_cache(fan, &cd);
    auto acc = accumulate(fan, cache, eps, xi_hat, q);

    SmoothingEval ev;
    ev.eps = eps;
    ev.xi = xi;
    ev.f_eps = acc.f;
    for (std::size_t k = 0; k < cache.size(); ++k) ev.weights[cache[k].id] = acc.weights[k];
    ev.df_eps.assign(n, 0.0);
    for (std::size_t k = 0; k < cache.size(); ++k)
        for (int j = 0; j < n; ++j) ev.df_eps[j] += acc.weights[k] * cache[k].chi[j];
    ev.g_eps = ev.f_eps - dot_d(ev.df_eps, xi_hat);
    ev.dphi_eps.resize(n);
    for (int j = 0; j < n; ++j) ev.dphi_eps[j] = ev.df_eps[j] + ev.g_eps * xi_hat[j];
    const double var = std::max(acc.second_moment - acc.f * acc.f, 0.0);
    ev.mc_stderr = q.method == QuadMethod::MonteCarlo ? std::sqrt(var / static_cast<double>(q.samples)) : 0.0;

    if (with_fd) {
        const double h = 1e-4 * norm_d(xi);
        ev.fd_dphi_eps.resize(n);
        for (int j = 0; j < n; ++j) {
            auto lo = xi, hi = xi;
            hi[j] += h;
            lo[j] -= h;
            ev.fd_dphi_eps[j] =
                (smoothed_support(fan, cd, eps, hi, q) - smoothed_support(fan, cd, eps, lo, q)) / (2 * h);
        }
    }
    return ev;
}

}  // namespace

double smoothed_support(const Fan& fan, const CartierData& cd, double eps,
                        const std::vector<double>& xi, const QuadratureConfig& q) {
    auto ev = eval_smoothing(fan, cd, eps, xi, q, false);
    return norm_d(xi) * ev.f_eps;
}

SmoothingEval grad_smoothed_support(const Fan& fan, const CartierData& cd, double eps,
                                    const std::vector<double>& xi, const QuadratureConfig& q,
                                    bool with_fd) {
    return eval_smoothing(fan, cd, eps, xi, q, with_fd);
}

namespace {

std::vector<double> relint_point(const Fan& fan, int cone_id) {
    const Cone& c = fan.cone(cone_id);
    if (c.rays.empty()) throw SmoothingError("the origin cone has no nonzero interior point");
    std::vector<double> xi(fan.dim, 0.0);
    for (int r : c.rays)
        for (int j = 0; j < fan.dim; ++j) xi[j] += static_cast<double>(fan.rays[r][j]);
    return xi;
}

double dist_to_boundary(const Fan& fan, int cone_id, const std::vector<double>& xi_hat) {
    const Cone& c = fan.cone(cone_id);
    double d = std::numeric_limits<double>::infinity();
    for (const auto& m : c.facet_normals) {
        const auto md = to_double(m);
        d = std::min(d, dot_d(md, xi_hat) / norm_d(md));
    }
    return c.facet_normals.empty() ? 0.0 : std::max(d, 0.0);
}

}  // namespace

GradientLimitReport verify_gradient_limit(const Fan& fan, const CartierData& cd, int cone_id,
                                          const std::vector<double>& eps_schedule,
                                          const QuadratureConfig& q) {
    GradientLimitReport rep;
    rep.cone = cone_id;
    rep.xi = relint_point(fan, cone_id);
    rep.tol = q.tolerance;
    const auto xi_hat = unit(rep.xi);
    const auto chi = to_double(cd.chi[cone_id]);
    if (fan.cone(cone_id).dim == fan.dim) rep.stabilization_eps = dist_to_boundary(fan, cone_id, xi_hat);
    std::vector<double> row_tol;
    for (double eps : eps_schedule) {
        auto ev = eval_smoothing(fan, cd, eps, rep.xi, q, false);
        rep.rows.push_back({eps, norm_d(sub_d(ev.dphi_eps, chi))});
        row_tol.push_back(std::max(rep.tol, 3 * ev.mc_stderr * std::sqrt(static_cast<double>(fan.dim))) + 1e-9);
    }
    bool ok = !rep.rows.empty();
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        if (rep.rows[i].eps < rep.stabilization_eps && rep.rows[i].dist > row_tol[i]) ok = false;
    if (ok && !rep.rows.empty() && rep.stabilization_eps <= eps_schedule.back())
        ok = rep.rows.back().dist <= std::max(row_tol.back(), 2 * eps_schedule.back());
    rep.stabilized = ok;
    return rep;
}

LimsupReport verify_limsup_containment(const Fan& fan, const CartierData& cd, int cone_id,
                                       const std::vector<double>& eps_schedule, int sample_count,
                                       const QuadratureConfig& q) {
    LimsupReport rep;
    rep.cone = cone_id;
    const Cone& sigma = fan.cone(cone_id);
    if (sigma.rays.empty()) throw SmoothingError("limsup check needs a nonzero cone");
    const int n = fan.dim;
    const auto chi_sigma = to_double(cd.chi[cone_id]);

    // Pieces (chi_sigma + tau-perp) x (-tau'), one per nonzero face tau.
    struct Piece {
        std::vector<std::vector<double>> tau_span;  // orthonormal basis of span(tau)
        std::vector<std::vector<double>> tau_gens;
    };
    std::vector<Piece> pieces;
    for (int fid : faces(fan, cone_id)) {
        const Cone& tau = fan.cone(fid);
        if (tau.rays.empty()) continue;
        Piece p;
        for (int r : tau.rays) {
            std::vector<double> g(n);
            for (int j = 0; j < n; ++j) g[j] = static_cast<double>(fan.rays[r][j]);
            p.tau_gens.push_back(g);
            for (const auto& b : p.tau_span) {
                const double f = dot_d(g, b);
                for (int j = 0; j < n; ++j) g[j] -= f * b[j];
            }
            const double gn = norm_d(g);
            if (gn > 1e-12) {
                for (auto& v : g) v /= gn;
                p.tau_span.push_back(std::move(g));
            }
        }
        pieces.push_back(std::move(p));
    }

    std::mt19937_64 rng(q.seed ^ 0x9e3779b97f4a7c15ull);
    std::exponential_distribution<double> expo(1.0);
    std::vector<std::vector<double>> samples;
    for (int s = 0; s < sample_count; ++s) {
        std::vector<double> xi(n, 0.0);
        for (int r : sigma.rays) {
            const double c = expo(rng);
            for (int j = 0; j < n; ++j) xi[j] += c * static_cast<double>(fan.rays[r][j]);
        }
        if (norm_d(xi) < 1e-9) {
            --s;
            continue;
        }
        samples.push_back(unit(xi));
    }

    for (double eps : eps_schedule) {
        double worst = 0;
        for (const auto& xi_hat : samples) {
            auto ev = eval_smoothing(fan, cd, eps, xi_hat, q, false);
            double best = std::numeric_limits<double>::infinity();
            for (const auto& p : pieces) {
                // dist to chi + tau-perp: the component of dphi - chi inside span(tau)
                auto v = sub_d(ev.dphi_eps, chi_sigma);
                double base2 = 0;
                for (const auto& b : p.tau_span) {
                    const double f = dot_d(v, b);
                    base2 += f * f;
                }
                const double cod = dist_to_generated_cone(xi_hat, p.tau_gens);
                best = std::min(best, std::sqrt(base2 + cod * cod));
            }
            worst = std::max(worst, best);
        }
        rep.rows.push_back({eps, worst});
    }

    rep.monotone = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].dist > rep.rows[i - 1].dist + q.tolerance) rep.monotone = false;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& row : rep.rows) {
        if (row.dist < 1e-12) continue;
        const double lx = std::log(row.eps), ly = std::log(row.dist);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++cnt;
    }
    if (cnt >= 2 && std::fabs(cnt * sxx - sx * sx) > 1e-12)
        rep.fitted_rate = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    rep.pass = rep.monotone && !rep.rows.empty() &&
               rep.rows.back().dist <= rep.rows.front().dist + q.tolerance;
    return rep;
}

BoundReport verify_uniform_bound(const Fan& fan, const CartierData& cd, double eps,
                                 int sample_count, const QuadratureConfig& q) {
    if (!fan.complete) throw FanNotComplete("uniform bound requires a complete fan");
    BoundReport rep;
    rep.eps = eps;
    rep.samples = sample_count;
    std::vector<std::vector<double>> hull;
    for (int mid : fan.maximal) {
        auto chi = to_double(cd.chi[mid]);
        rep.radius += norm_d(chi);
        hull.push_back(std::move(chi));
    }
    std::mt19937_64 rng(q.seed ^ 0xda3e39cb94b95bdbull);
    std::normal_distribution<double> gauss;
    double worst_slack = -std::numeric_limits<double>::infinity();
    double stderr_max = 0;
    for (int s = 0; s < sample_count; ++s) {
        std::vector<double> xi(fan.dim);
        for (auto& v : xi) v = gauss(rng);
        if (norm_d(xi) < 1e-9) {
            --s;
            continue;
        }
        auto ev = eval_smoothing(fan, cd, eps, xi, q, false);
        const double d = dist_to_convex_hull(ev.dphi_eps, hull);
        rep.max_dist = std::max(rep.max_dist, d);
        worst_slack = std::max(worst_slack, d - eps * rep.radius);
        stderr_max = std::max(stderr_max, ev.mc_stderr);
    }
    rep.max_slack = worst_slack;
    rep.pass = rep.max_slack <= std::max(q.tolerance, 3 * stderr_max);
    return rep;
}

}  // namespace toric
