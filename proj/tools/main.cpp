// toric-ccc: command-line driver for the toric constructible-sheaf toolkit.
//
// Subcommands: fan, divisor, smooth, flow, sheaf, verify, suite.
// Exit codes: 0 success/pass, 1 validation or verification failure, 2 usage.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "toric/divisor.hpp"
#include "toric/fan.hpp"
#include "toric/flow.hpp"
#include "toric/mollifier.hpp"
#include "toric/sheaf.hpp"
#include "toric/verify.hpp"

using nlohmann::json;
using namespace toric;

namespace {

constexpr const char* kConvention =
    "N_R and M_R are identified with R^n via the standard basis and the Euclidean inner product";

struct RunConfig {
    std::uint64_t seed = 20240817;
    long samples = 100000;
    double tol = 1e-3;
    std::vector<double> schedule{0.2, 0.1, 0.05, 0.025, 0.0125};
    int threads = 1;
};

QuadratureConfig quad(const RunConfig& rc) {
    QuadratureConfig q;
    q.samples = rc.samples;
    q.seed = rc.seed;
    q.tolerance = rc.tol;
    return q;
}

json config_json(const RunConfig& rc) {
    return json{{"seed", rc.seed},
                {"samples", rc.samples},
                {"tol", rc.tol},
                {"schedule", rc.schedule},
                {"threads", rc.threads},
                {"convention", kConvention}};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text << "\n";
}

Fan load_fan(const std::string& path) { return parse_fan(slurp(path)); }

ToricDivisor load_divisor(const std::string& path, const Fan& fan) {
    json j = json::parse(slurp(path));
    ToricDivisor d;
    for (const auto& c : j.at("coeffs")) d.coeffs.push_back(c.get<long long>());
    if (d.coeffs.size() != fan.rays.size())
        throw DivisorError("divisor has " + std::to_string(d.coeffs.size()) + " coefficients for " +
                           std::to_string(fan.rays.size()) + " rays");
    return d;
}

std::vector<double> parse_double_vec(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
    return v;
}

json rational_vec_json(const RationalVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

json dims_json(const std::map<int, int>& dims) {
    json o = json::object();
    for (const auto& [deg, d] : dims) o[std::to_string(deg)] = d;
    return o;
}

json stalk_json(const StalkReport& rep) {
    return json{{"point", rational_vec_json(rep.point)}, {"dims", dims_json(rep.dims)}, {"euler", rep.euler}};
}

// ---- suite presets -------------------------------------------------------

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

void check_exact_battery(const Fan& fan, const ToricDivisor& d, const CartierData& cd,
                         std::vector<Check>& checks) {
    bool cart = true;
    for (std::size_t id = 0; id < fan.cones.size(); ++id)
        for (int r : fan.cones[id].rays)
            if (dot(fan.rays[r], cd.chi[id]) != Rational(-d.coeffs[r])) cart = false;
    checks.push_back({"cartier_identities_exact", cart, ""});

    bool hull = true;
    for (std::size_t id = 0; id < fan.cones.size(); ++id) {
        auto adj = fan.maximal_containing(static_cast<int>(id));
        if (adj.size() < 2) continue;
        std::vector<RationalVec> pts;
        for (int mid : adj) pts.push_back(cd.chi[mid]);
        if (!in_convex_hull(cd.chi[id], pts)) hull = false;
    }
    checks.push_back({"chi_hull_membership", hull, ""});

    auto cont = check_continuity(fan, cd, 20, 20240817);
    checks.push_back({"support_function_continuity", cont.ok(),
                      std::to_string(cont.points_checked) + " points"});
}

json run_preset(const std::string& preset, const RunConfig& rc) {
    std::vector<Check> checks;
    QuadratureConfig q = quad(rc);
    std::vector<double> sched{0.2, 0.1, 0.05, 0.025};

    auto picard = [&](const Fan& fan, const ToricDivisor& a, const ToricDivisor& b, int pts) {
        auto rep = picard_action_check(fan, a, b, pts, rc.seed);
        std::string det = rep.mismatches.empty() ? "" : rep.mismatches.front();
        checks.push_back({"picard_action", rep.pass, det});
    };
    auto torus = [&](const Fan& fan, const ToricDivisor& a, const ToricDivisor& b, int pts) {
        auto rep = torus_action_check(fan, a, b, pts, rc.seed, 8);
        std::string det = rep.mismatches.empty() ? "" : rep.mismatches.front();
        checks.push_back({"torus_action", rep.pass, det});
    };
    auto fronts = [&](const Fan& fan, const CartierData& cd, int per_stratum) {
        for (int mid : fan.maximal) {
            auto rep = front_convergence(fan, cd, mid, sched, per_stratum, q);
            checks.push_back({"front_convergence_cone_" + std::to_string(mid), rep.pass,
                              "rate " + std::to_string(rep.fitted_rate)});
        }
    };

    if (preset == "p1-o2") {
        Fan fan = build_fan(1, {{1}, {-1}}, {{0}, {1}});
        ToricDivisor d{{1, 1}};
        auto cd = cartier_data(fan, d);
        check_exact_battery(fan, d, cd, checks);
        auto c = twisted_polytope_sheaf(fan, cd);
        auto inside = stalk(c, {Rational(0)});
        auto outside = stalk(c, {Rational(5)});
        checks.push_back({"stalk_goldens", inside.dims == std::map<int, int>{{-1, 1}} && outside.dims.empty(), ""});
        picard(fan, d, d, 30);
        torus(fan, d, d, 10);
        fronts(fan, cd, 20);
    } else if (preset == "p2-ample") {
        Fan fan = build_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}});
        ToricDivisor d1{{1, 1, 1}}, d2{{2, 2, 2}};
        auto cd = cartier_data(fan, d1);
        check_exact_battery(fan, d1, cd, checks);
        picard(fan, d1, d1, 20);
        picard(fan, d1, d2, 20);
        torus(fan, d1, d1, 5);
        fronts(fan, cd, 10);
    } else if (preset == "hirzebruch") {
        Fan fan = build_fan(2, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
        ToricDivisor d{{1, 2, 1, 1}};
        auto cd = cartier_data(fan, d);
        check_exact_battery(fan, d, cd, checks);
        picard(fan, d, d, 10);
        torus(fan, d, d, 3);
    } else if (preset == "noncomplete-a2") {
        Fan base = build_fan(2, {{1, 0}, {0, 1}}, {{0, 1}});
        Fan comp = build_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}});
        ToricDivisor d{{1, 2}};
        ToricDivisor ext = extend_to_completion(base, d, comp, {{2, 3}});
        checks.push_back({"extension_validates", true, ""});
        auto cd = cartier_data(comp, ext);
        check_exact_battery(comp, ext, cd, checks);
        auto c = twisted_polytope_sheaf(comp, cd);
        ToricDivisor zero{{0, 0, 0}};
        auto cz = twisted_polytope_sheaf(comp, cartier_data(comp, zero));
        bool unit = true;
        for (const auto& x : wall_avoiding_points({&c, &cz}, 20, rc.seed, false))
            if (convolve_stalk(cz, c, x).dims != stalk(c, x).dims) unit = false;
        checks.push_back({"unit_law_on_extension", unit, ""});
        picard(comp, ext, ToricDivisor{{1, 1, 1}}, 20);
        torus(comp, ext, ToricDivisor{{1, 1, 1}}, 5);
    } else {
        throw CLI::ValidationError("unknown preset " + preset);
    }

    bool all = true;
    json jchecks = json::array();
    for (const auto& c : checks) {
        all = all && c.pass;
        jchecks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    return json{{"experiment", "suite"}, {"preset", preset}, {"config", config_json(rc)},
                {"checks", jchecks}, {"pass", all}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toric constructible-sheaf toolkit"};
    app.require_subcommand(1);

    RunConfig rc;
    if (const char* env = std::getenv("TORIC_CCC_THREADS")) rc.threads = std::max(1, std::atoi(env));
    app.add_option("--seed", rc.seed, "global RNG seed");
    app.add_option("--samples", rc.samples, "Monte Carlo sample count");
    app.add_option("--tol", rc.tol, "numeric tolerance");

    std::string fan_path, divisor_path, d2_path, comp_path, complex_path, out_path, csv_path;
    std::string xi_str, x_str, method = "closed", preset, new_coeffs_str, mode;
    double eps = 0.1, t_final = 1.0;
    int cone_id = -1, steps = 64, points = 50, radius = 8, per_stratum = 10;
    bool torus_flag = false;
    std::vector<double> schedule;

    auto* fan_cmd = app.add_subcommand("fan", "fan parsing and validation");
    auto* fan_validate = fan_cmd->add_subcommand("validate", "validate a fan document");
    fan_validate->add_option("fan", fan_path)->required();

    auto* div_cmd = app.add_subcommand("divisor", "Cartier data and completions");
    auto* div_cartier = div_cmd->add_subcommand("cartier", "print the chi table");
    div_cartier->add_option("fan", fan_path)->required();
    div_cartier->add_option("divisor", divisor_path)->required();
    auto* div_extend = div_cmd->add_subcommand("extend", "extend to a completion");
    div_extend->add_option("fan", fan_path)->required();
    div_extend->add_option("divisor", divisor_path)->required();
    div_extend->add_option("completion", comp_path)->required();
    div_extend->add_option("--new-coeffs", new_coeffs_str, "ray=coeff pairs, comma separated");

    auto* smooth = app.add_subcommand("smooth", "mollified support function");
    auto* sm_eval = smooth->add_subcommand("eval", "evaluate phi_eps");
    auto* sm_grad = smooth->add_subcommand("grad", "evaluate dphi_eps");
    for (auto* c : {sm_eval, sm_grad}) {
        c->add_option("--fan", fan_path)->required();
        c->add_option("--divisor", divisor_path)->required();
        c->add_option("--eps", eps)->required();
        c->add_option("--xi", xi_str)->required();
    }
    auto* sm_verify = smooth->add_subcommand("verify", "limit / limsup / bound reports");
    sm_verify->add_option("mode", mode, "limit|limsup|bound")->required();
    sm_verify->add_option("--fan", fan_path)->required();
    sm_verify->add_option("--divisor", divisor_path)->required();
    sm_verify->add_option("--cone", cone_id);
    sm_verify->add_option("--eps", eps);
    sm_verify->add_option("--points", points);
    sm_verify->add_option("--schedule", schedule)->delimiter(',');
    sm_verify->add_option("--csv", csv_path);
    sm_verify->add_option("--out", out_path);

    auto* flow_cmd = app.add_subcommand("flow", "Hamiltonian flow");
    auto* flow_run = flow_cmd->add_subcommand("run", "flow one phase point");
    flow_run->add_option("--fan", fan_path)->required();
    flow_run->add_option("--divisor", divisor_path)->required();
    flow_run->add_option("--eps", eps)->required();
    flow_run->add_option("--t", t_final)->required();
    flow_run->add_option("--x", x_str)->required();
    flow_run->add_option("--xi", xi_str)->required();
    flow_run->add_option("--method", method, "closed|rk4");
    flow_run->add_option("--steps", steps);
    flow_run->add_flag("--torus", torus_flag);
    flow_run->add_option("--out", out_path);

    auto* sheaf_cmd = app.add_subcommand("sheaf", "twisted polytope sheaves");
    auto* sh_build = sheaf_cmd->add_subcommand("build", "generate a shard complex");
    sh_build->add_option("--fan", fan_path)->required();
    sh_build->add_option("--divisor", divisor_path)->required();
    sh_build->add_option("--out", out_path);
    auto* sh_stalk = sheaf_cmd->add_subcommand("stalk", "stalk of a stored complex");
    sh_stalk->add_option("--complex", complex_path)->required();
    sh_stalk->add_option("--x", x_str)->required();
    auto* sh_conv = sheaf_cmd->add_subcommand("convolve", "convolution stalk");
    sh_conv->add_option("--fan", fan_path)->required();
    sh_conv->add_option("--d1", divisor_path)->required();
    sh_conv->add_option("--d2", d2_path)->required();
    sh_conv->add_option("--x", x_str)->required();
    auto* sh_ss = sheaf_cmd->add_subcommand("ss", "singular support of a shard");
    sh_ss->add_option("--fan", fan_path)->required();
    sh_ss->add_option("--divisor", divisor_path)->required();
    sh_ss->add_option("--cone", cone_id)->required();

    auto* verify_cmd = app.add_subcommand("verify", "limit experiments");
    auto* vf_front = verify_cmd->add_subcommand("front", "front convergence");
    vf_front->add_option("--fan", fan_path)->required();
    vf_front->add_option("--d1", divisor_path)->required();
    vf_front->add_option("--cone", cone_id);
    vf_front->add_option("--schedule", schedule)->delimiter(',');
    vf_front->add_option("--points", per_stratum);
    vf_front->add_option("--out", out_path);
    auto* vf_picard = verify_cmd->add_subcommand("picard", "convolution vs sum divisor");
    auto* vf_torus = verify_cmd->add_subcommand("torus", "torus pushforward identity");
    for (auto* c : {vf_picard, vf_torus}) {
        c->add_option("--fan", fan_path)->required();
        c->add_option("--d1", divisor_path)->required();
        c->add_option("--d2", d2_path)->required();
        c->add_option("--points", points);
        c->add_option("--out", out_path);
    }
    vf_torus->add_option("--radius", radius);

    auto* suite = app.add_subcommand("suite", "acceptance batteries");
    auto* suite_run = suite->add_subcommand("run", "run a preset battery");
    suite_run->add_option("--preset", preset, "p1-o2|p2-ample|hirzebruch|noncomplete-a2")->required();
    suite_run->add_option("--out", out_path);

    // Let the global flags (--seed, --samples, --tol) appear after any
    // subcommand as well as before it.
    for (auto* c : {fan_cmd, fan_validate, div_cmd, div_cartier, div_extend, smooth, sm_eval, sm_grad,
                    sm_verify, flow_cmd, flow_run, sheaf_cmd, sh_build, sh_stalk, sh_conv, sh_ss,
                    verify_cmd, vf_front, vf_picard, vf_torus, suite, suite_run})
        c->fallthrough(true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        QuadratureConfig q = quad(rc);
        if (schedule.empty()) schedule = rc.schedule;

        if (fan_validate->parsed()) {
            try {
                Fan fan = load_fan(fan_path);
                emit(out_path, json{{"valid", true},
                                    {"dim", fan.dim},
                                    {"rays", fan.rays.size()},
                                    {"cones", fan.cones.size()},
                                    {"complete", fan.complete},
                                    {"simplicial", fan.simplicial},
                                    {"smooth", fan.smooth}}
                                   .dump(2));
                return 0;
            } catch (const FanError& e) {
                emit(out_path, json{{"valid", false}, {"error", e.what()}}.dump(2));
                return 1;
            }
        }

        if (div_cartier->parsed()) {
            Fan fan = load_fan(fan_path);
            auto d = load_divisor(divisor_path, fan);
            auto cd = cartier_data(fan, d);
            json rows = json::array();
            for (std::size_t id = 0; id < fan.cones.size(); ++id)
                rows.push_back({{"cone", id},
                                {"rays", fan.cones[id].rays},
                                {"chi", rational_vec_json(cd.chi[id])},
                                {"integral", static_cast<bool>(cd.integral[id])}});
            emit(out_path, json{{"config", config_json(rc)}, {"cartier_data", rows}}.dump(2));
            return 0;
        }

        if (div_extend->parsed()) {
            Fan fan = load_fan(fan_path);
            auto d = load_divisor(divisor_path, fan);
            Fan comp = load_fan(comp_path);
            std::map<int, long long> extra;
            if (!new_coeffs_str.empty()) {
                std::stringstream ss(new_coeffs_str);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    const auto pos = tok.find('=');
                    if (pos == std::string::npos) throw DivisorError("--new-coeffs wants ray=coeff");
                    extra[std::stoi(tok.substr(0, pos))] = std::stoll(tok.substr(pos + 1));
                }
            }
            auto ext = extend_to_completion(fan, d, comp, extra);
            emit(out_path, json{{"config", config_json(rc)}, {"coeffs", ext.coeffs}}.dump(2));
            return 0;
        }

        if (sm_eval->parsed() || sm_grad->parsed()) {
            Fan fan = load_fan(fan_path);
            auto cd = cartier_data(fan, load_divisor(divisor_path, fan));
            auto xi = parse_double_vec(xi_str);
            if (sm_eval->parsed()) {
                const double v = smoothed_support(fan, cd, eps, xi, q);
                emit(out_path, json{{"config", config_json(rc)}, {"eps", eps}, {"xi", xi},
                                    {"phi_eps", v}, {"provenance", "monte_carlo"}}
                                   .dump(2));
                return 0;
            }
            auto ev = grad_smoothed_support(fan, cd, eps, xi, q);
            json w = json::object();
            for (const auto& [id, a] : ev.weights) w[std::to_string(id)] = a;
            emit(out_path, json{{"config", config_json(rc)}, {"eps", eps}, {"xi", xi},
                                {"f_eps", ev.f_eps}, {"df_eps", ev.df_eps}, {"g_eps", ev.g_eps},
                                {"dphi_eps", ev.dphi_eps}, {"fd_dphi_eps", ev.fd_dphi_eps},
                                {"weights", w}, {"mc_stderr", ev.mc_stderr},
                                {"provenance", "monte_carlo"}}
                               .dump(2));
            return 0;
        }

        if (sm_verify->parsed()) {
            Fan fan = load_fan(fan_path);
            auto cd = cartier_data(fan, load_divisor(divisor_path, fan));
            json rep;
            std::ostringstream csv;
            csv << "eps,quantity,bound,pass\n";
            bool pass = false;
            if (mode == "limit") {
                if (cone_id < 0) cone_id = fan.maximal.front();
                auto r = verify_gradient_limit(fan, cd, cone_id, schedule, q);
                json rows = json::array();
                for (const auto& row : r.rows) {
                    rows.push_back({{"eps", row.eps}, {"dist", row.dist}});
                    csv << row.eps << "," << row.dist << "," << r.tol << "," << (row.dist <= r.tol) << "\n";
                }
                pass = r.stabilized;
                rep = json{{"experiment", "gradient_limit"}, {"cone", r.cone}, {"xi", r.xi},
                           {"stabilization_eps", r.stabilization_eps}, {"rows", rows}, {"pass", pass}};
            } else if (mode == "limsup") {
                if (cone_id < 0) cone_id = fan.maximal.front();
                auto r = verify_limsup_containment(fan, cd, cone_id, schedule, points, q);
                json rows = json::array();
                for (const auto& row : r.rows) {
                    rows.push_back({{"eps", row.eps}, {"max_dist", row.dist}});
                    csv << row.eps << "," << row.dist << "," << row.eps << "," << (row.dist <= row.eps) << "\n";
                }
                pass = r.pass;
                rep = json{{"experiment", "limsup_containment"}, {"cone", r.cone},
                           {"fitted_rate", r.fitted_rate}, {"rate_provenance", "fitted"},
                           {"monotone", r.monotone}, {"rows", rows}, {"pass", pass}};
            } else if (mode == "bound") {
                auto r = verify_uniform_bound(fan, cd, eps, points, q);
                csv << r.eps << "," << r.max_dist << "," << r.eps * r.radius << "," << r.pass << "\n";
                pass = r.pass;
                rep = json{{"experiment", "uniform_bound"}, {"eps", r.eps}, {"radius", r.radius},
                           {"max_dist", r.max_dist}, {"max_slack", r.max_slack},
                           {"samples", r.samples}, {"pass", pass}};
            } else {
                throw CLI::ValidationError("mode must be limit, limsup, or bound");
            }
            rep["config"] = config_json(rc);
            emit(out_path, rep.dump(2));
            if (!csv_path.empty()) emit(csv_path, csv.str());
            return pass ? 0 : 1;
        }

        if (flow_run->parsed()) {
            Fan fan = load_fan(fan_path);
            auto cd = cartier_data(fan, load_divisor(divisor_path, fan));
            PhasePoint p{parse_double_vec(x_str), parse_double_vec(xi_str)};
            std::ostringstream csv;
            csv << "s";
            for (int j = 0; j < fan.dim; ++j) csv << ",x" << j;
            for (int j = 0; j < fan.dim; ++j) csv << ",xi" << j;
            csv << "\n";
            const int rows = 8;
            for (int k = 0; k <= rows; ++k) {
                const double s = t_final * k / rows;
                FlowResult r = method == "rk4"
                                   ? flow_rk4(fan, cd, eps, s == 0 ? 1e-12 : s, p, steps, q, torus_flag)
                                   : flow_closed_form(fan, cd, eps, s, p, q, torus_flag);
                csv << s;
                for (double v : r.endpoint.base) csv << "," << v;
                for (double v : r.endpoint.covector) csv << "," << v;
                csv << "\n";
            }
            emit(out_path, csv.str());
            return 0;
        }

        if (sh_build->parsed()) {
            Fan fan = load_fan(fan_path);
            auto cd = cartier_data(fan, load_divisor(divisor_path, fan));
            emit(out_path, serialize_complex(twisted_polytope_sheaf(fan, cd)));
            return 0;
        }

        if (sh_stalk->parsed()) {
            auto c = parse_complex(slurp(complex_path));
            emit(out_path, stalk_json(stalk(c, parse_rational_vec(x_str))).dump(2));
            return 0;
        }

        if (sh_conv->parsed()) {
            Fan fan = load_fan(fan_path);
            auto c1 = twisted_polytope_sheaf(fan, cartier_data(fan, load_divisor(divisor_path, fan)));
            auto c2 = twisted_polytope_sheaf(fan, cartier_data(fan, load_divisor(d2_path, fan)));
            emit(out_path, stalk_json(convolve_stalk(c1, c2, parse_rational_vec(x_str))).dump(2));
            return 0;
        }

        if (sh_ss->parsed()) {
            Fan fan = load_fan(fan_path);
            auto cd = cartier_data(fan, load_divisor(divisor_path, fan));
            auto comps = singular_support(fan, cone_id, cd.chi[cone_id]);
            json out = json::array();
            for (const auto& c : comps) {
                json jc{{"face", c.face}, {"zero_section", c.zero_section}};
                jc["equalities"] = json::array();
                for (const auto& [n, off] : c.equalities)
                    jc["equalities"].push_back({{"normal", rational_vec_json(n)}, {"offset", to_string(off)}});
                jc["inequalities"] = json::array();
                for (const auto& [n, off] : c.inequalities)
                    jc["inequalities"].push_back({{"normal", rational_vec_json(n)}, {"offset", to_string(off)}});
                jc["codirections"] = c.codirections;
                out.push_back(std::move(jc));
            }
            emit(out_path, json{{"cone", cone_id}, {"components", out}}.dump(2));
            return 0;
        }

        if (vf_front->parsed()) {
            Fan fan = load_fan(fan_path);
            auto cd = cartier_data(fan, load_divisor(divisor_path, fan));
            std::vector<int> cones = cone_id >= 0 ? std::vector<int>{cone_id} : fan.maximal;
            json jreps = json::array();
            bool pass = true;
            for (int mid : cones) {
                auto r = front_convergence(fan, cd, mid, schedule, per_stratum, q);
                json rows = json::array();
                for (const auto& row : r.rows) rows.push_back({{"eps", row.eps}, {"max_dist", row.max_dist}});
                jreps.push_back({{"cone", r.cone}, {"rows", rows}, {"fit_c", r.fit_c},
                                 {"fitted_rate", r.fitted_rate}, {"rate_provenance", "fitted, heuristic"},
                                 {"monotone", r.monotone}, {"pass", r.pass}});
                pass = pass && r.pass;
            }
            emit(out_path, json{{"experiment", "front_convergence"}, {"config", config_json(rc)},
                                {"schedule", schedule}, {"rows", jreps}, {"pass", pass}}
                               .dump(2));
            return pass ? 0 : 1;
        }

        if (vf_picard->parsed() || vf_torus->parsed()) {
            Fan fan = load_fan(fan_path);
            auto d1 = load_divisor(divisor_path, fan);
            auto d2 = load_divisor(d2_path, fan);
            ActionReport r = vf_picard->parsed() ? picard_action_check(fan, d1, d2, points, rc.seed)
                                                 : torus_action_check(fan, d1, d2, points, rc.seed, radius);
            emit(out_path, json{{"experiment", vf_picard->parsed() ? "picard_action" : "torus_action"},
                                {"config", config_json(rc)}, {"points", r.points},
                                {"mismatches", r.mismatches}, {"pass", r.pass}}
                               .dump(2));
            return r.pass ? 0 : 1;
        }

        if (suite_run->parsed()) {
            json rep = run_preset(preset, rc);
            emit(out_path, rep.dump(2));
            return rep["pass"].get<bool>() ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
