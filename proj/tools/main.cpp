#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "checks.hpp"
#include "table.hpp"
#include "xisys/canonical.hpp"
#include "xisys/errors.hpp"
#include "xisys/kernel.hpp"
#include "xisys/operator.hpp"
#include "xisys/specfun.hpp"

#ifndef XISYS_GIT_DESCRIBE
#define XISYS_GIT_DESCRIBE "unknown"
#endif

using namespace xisys;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr double kDeskScale = 4.0;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    double omega = 1.5;
    std::string a_grid = "1:2:11";
    std::string grid = "0.1:3:30";
    std::string z = "0,3.5";
    std::string function = "h";
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 20240611;
    bool allow_large_a = false;
    bool plot = false;
    bool timings = false;
    double a_max = 2.0;
    double t_max = 30.0;
    int steps = 20;
    std::string scheme = "galerkin";
    std::vector<std::string> only;
    bool dense = false;
};

struct Grid {
    double lo = 0.0, hi = 0.0;
    int n = 0;

    std::vector<double> points() const {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
        return v;
    }
};

Grid parse_grid(const std::string& spec) {
    Grid g;
    char c1 = 0, c2 = 0;
    std::istringstream is(spec);
    if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.n) || c1 != ':' || c2 != ':' || !is.eof() ||
        g.n < 1 || !(g.hi >= g.lo))
        throw ConfigError("grid must look like lo:hi:n with lo <= hi, n >= 1, got '" + spec + "'");
    return g;
}

Complex parse_z(const std::string& spec) {
    double re = 0.0, im = 0.0;
    char comma = 0;
    std::istringstream is(spec);
    if (!(is >> re >> comma >> im) || comma != ',' || !is.eof())
        throw ConfigError("--z must look like re,im, got '" + spec + "'");
    return {re, im};
}

void require_desk_scale(double a_max, const Options& o) {
    if (a_max > kDeskScale && !o.allow_large_a)
        throw ConfigError("a_max above 4 needs --allow-large-a");
}

std::string tolerance_tag(const std::vector<std::pair<std::string, double>>& tols) {
    std::string s;
    for (const auto& [k, v] : tols) s += (s.empty() ? "" : ";") + k + ":" + cli::format_double(v);
    return s.empty() ? "none" : s;
}

cli::Table make_table(const std::string& cmd, const Options& o, const std::string& grid,
                      const std::vector<std::pair<std::string, double>>& tols) {
    cli::Table t;
    t.meta = {{"command", cmd},
              {"omega", cli::format_double(o.omega)},
              {"grid", grid},
              {"tolerances", tolerance_tag(tols)},
              {"build", XISYS_GIT_DESCRIBE}};
    return t;
}

void write_gnuplot(const std::filesystem::path& data, const cli::Table& t) {
    std::filesystem::path script = data;
    script.replace_extension(".gp");
    std::ofstream gp(script);
    if (!gp) throw std::runtime_error("cannot write " + script.string());
    gp << "set datafile separator ','\nset key autotitle columnhead\nset grid\n";
    gp << "plot ";
    for (std::size_t c = 1; c < t.columns.size(); ++c)
        gp << (c > 1 ? ", \\\n     " : "") << '\'' << data.filename().string()
           << "' every ::1 using 1:" << c + 1 << " with lines";
    gp << '\n';
}

void emit(const cli::Table& t, const Options& o) {
    std::ostringstream body;
    if (o.format == "json")
        cli::write_json(body, t);
    else
        cli::write_csv(body, t);
    if (o.out.empty()) {
        std::cout << body.str();
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("IOError: cannot write " + o.out);
    f << body.str();
    if (!f) throw std::runtime_error("IOError: write failed for " + o.out);
    if (o.plot && o.format == "csv") write_gnuplot(o.out, t);
}

// ---------------------------------------------------------------- commands

int cmd_theta(const Options& o) {
    const Grid g = parse_grid(o.grid);
    const Complex shift = parse_z(o.z);
    auto t = make_table("theta", o, o.grid, {});
    t.meta.emplace_back("z_offset", o.z);
    t.columns = {"u", "re", "im", "abs"};
    for (double u : g.points()) {
        const Complex v = specfun::theta_omega(Complex(u, 0.0) + Complex(0.0, shift.imag()), o.omega);
        t.add_row({u, v.real(), v.imag(), std::abs(v)});
    }
    emit(t, o);
    return 0;
}

int cmd_kernel(const Options& o) {
    const Grid g = parse_grid(o.grid);
    kernel::KernelContext ctx(o.omega);
    auto t = make_table("kernel", o, o.grid, {{"quad_tol", ctx.quad_tol()}});
    t.meta.emplace_back("function", o.function);
    t.columns = {"x", "value"};
    for (double x : g.points()) {
        double v = 0.0;
        if (o.function == "g") v = ctx.g(x);
        else if (o.function == "h") v = ctx.h(x);
        else if (o.function == "g1") v = ctx.g1(x);
        else v = ctx.h1(x);
        t.add_row({x, v});
    }
    emit(t, o);
    return 0;
}

int cmd_det(const Options& o) {
    const Grid g = parse_grid(o.a_grid);
    require_desk_scale(g.hi, o);
    kernel::KernelContext ctx(o.omega);
    auto t = make_table("det", o, o.a_grid, {{"condition_limit", 1e12}});
    t.meta.emplace_back("scheme", o.scheme);
    t.columns = {"a", "det_plus", "det_minus", "m", "mu", "spec_radius"};
    for (double a : g.points()) {
        const auto D = o.scheme == "nystrom" ? op::discretize(ctx, op::build_grid(a))
                                              : op::discretize_galerkin(ctx, a);
        const auto d = op::det_pair(D);
        double mu = 0.0;
        if (a > 1.0) {
            const auto p = op::solve_phi(ctx, D, 1);
            const auto m = op::solve_phi(ctx, D, -1);
            mu = a * (p.at_a() + m.at_a());
        }
        t.add_row({a, d.plus, d.minus, d.plus / d.minus, mu, D.spectral_radius()});
    }
    emit(t, o);
    return 0;
}

int cmd_mcurve(const Options& o) {
    const Grid g = parse_grid(o.a_grid);
    require_desk_scale(g.hi, o);
    kernel::KernelContext ctx(o.omega);
    canon::MCurveOptions opts = o.dense ? canon::dense_curve_options() : canon::MCurveOptions{};
    opts.exp_integral = true;
    const auto c = canon::m_curve(ctx, g.points(), opts);
    auto t = make_table("mcurve", o, o.a_grid, {{"refine_tol", opts.refine_tol}});
    t.meta.emplace_back("source_gap", cli::format_double(c.source_gap()));
    t.columns = {"a", "mu", "m", "m_det", "m_int"};
    for (std::size_t i = 0; i < c.a_samples.size(); ++i)
        t.add_row({c.a_samples[i], c.mu_values[i], c.m_values[i], std::exp(c.log_m_det[i]),
                   std::exp(c.log_m_int[i])});
    emit(t, o);
    return 0;
}

int cmd_evolve(const Options& o) {
    require_desk_scale(o.a_max, o);
    if (!(o.a_max > 1.0)) throw ConfigError("--a-max must exceed 1");
    if (o.steps < 1) throw ConfigError("--steps must be positive");
    const Complex z = parse_z(o.z);
    kernel::KernelContext ctx(o.omega);
    const auto c = canon::m_curve(ctx, {o.a_max}, canon::dense_curve_options());
    const canon::EvolveOptions eo;
    std::vector<double> path;
    for (int k = 1; k <= o.steps; ++k) path.push_back(1.0 + (o.a_max - 1.0) * k / o.steps);
    auto t = make_table("evolve", o, "1:" + cli::format_double(o.a_max) + ":" +
                                         std::to_string(o.steps + 1),
                        {{"rel_tol", eo.rel_tol}, {"abs_tol", eo.abs_tol},
                         {"halving_tol", eo.halving_tol}});
    t.meta.emplace_back("z", o.z);
    t.columns = {"a", "ReA", "ImA", "ReB", "ImB"};
    const auto start = canon::ab_initial(z, o.omega);
    t.add_row({1.0, start.A.real(), start.A.imag(), start.B.real(), start.B.imag()});
    for (const auto& s : canon::evolve_path(start, path, c, eo))
        t.add_row({s.a, s.A.real(), s.A.imag(), s.B.real(), s.B.imag()});
    emit(t, o);
    return 0;
}

int cmd_potentials(const Options& o) {
    require_desk_scale(o.a_max, o);
    if (!(o.a_max > 1.0)) throw ConfigError("--a-max must exceed 1");
    kernel::KernelContext ctx(o.omega);
    const auto opts = canon::dense_curve_options();
    const auto c = canon::m_curve(ctx, {o.a_max}, opts);
    auto t = make_table("potentials", o, "1:" + cli::format_double(o.a_max),
                        {{"refine_tol", opts.refine_tol}});
    t.columns = {"a", "m", "V+", "V-"};
    for (const auto& p : canon::potentials(c)) t.add_row({p.a, p.m, p.v_plus, p.v_minus});
    emit(t, o);
    return 0;
}

int cmd_zeros(const Options& o) {
    if (!(o.t_max > 0.0)) throw ConfigError("--tmax must be positive");
    const canon::ZeroOptions zo;
    const auto rep = canon::zeros_of_a(o.omega, o.t_max, zo);
    auto t = make_table("zeros", o, "0:" + cli::format_double(o.t_max),
                        {{"scan_step", zo.scan_step}, {"contour_height", zo.contour_height}});
    t.meta.emplace_back("contour_count", std::to_string(rep.contour_count));
    t.meta.emplace_back("winding", cli::format_double(rep.contour_winding));
    t.meta.emplace_back("interlaced", rep.interlaced ? "true" : "false");
    t.columns = {"index", "z_k"};
    for (std::size_t k = 0; k < rep.zeros_a.size(); ++k) t.add_row({double(k + 1), rep.zeros_a[k]});
    emit(t, o);
    std::cerr << "real zeros: " << rep.zeros_a.size() << ", contour count: " << rep.contour_count
              << (int(rep.zeros_a.size()) == rep.contour_count ? " (match)" : " (MISMATCH)") << '\n';
    return int(rep.zeros_a.size()) == rep.contour_count ? 0 : kExitFail;
}

bool wants(const Options& o, const std::string& group) {
    if (o.only.empty()) return true;
    for (const auto& g : o.only)
        if (g == group) return true;
    return false;
}

int cmd_verify(const Options& o) {
    using namespace xisys::checks;
    require_desk_scale(o.a_max, o);
    const double w = o.omega;
    std::vector<CheckResult> rs;
    if (wants(o, "specfun")) {
        rs.push_back(theta_unit_modulus({w}, 200, 1e-9));
        rs.push_back(theta_normalization({w}, 1e-10));
        rs.push_back(theta_reflection(w, 50, o.seed, 1e-8));
        rs.push_back(theta_inner(w, 1.0));
        rs.push_back(xi_symmetry(200, o.seed, 1e-10));
        rs.push_back(xi_two_path(50, o.seed, 1e-9));
        rs.push_back(ab_symmetry(w, o.seed, 1e-10));
    }
    if (wants(o, "kernel")) {
        rs.push_back(mellin_h({w}, 1e-5));
        rs.push_back(mellin_h1({w}, 1e-5));
        rs.push_back(h1_two_path(w, 100, 1e-7));
        rs.push_back(c_multiplicative(w, 1e-12));
        rs.push_back(kernel_support(w, 1000, o.seed));
        if (w > 1.0) rs.push_back(g_endpoint_rate(w));
        rs.push_back(h1_trend(w));
    }
    if (wants(o, "operator")) {
        rs.push_back(zero_operator(w));
        rs.push_back(contraction({w}, {1.5, 2.0}));
        rs.push_back(frobenius(w, {1.5, 2.0}, 1e-6));
        rs.push_back(det_identity(w, {1.5}, 1e-3));
        rs.push_back(solution_symmetry(w, 1.5, 1e-10));
        rs.push_back(extension_support(w, 1.5));
        rs.push_back(watson(w, 1e-4));
    }
    if (wants(o, "canonical")) {
        rs.push_back(ode_parity(w, o.a_max, 1e-6));
        rs.push_back(ode_realness(w, o.a_max, 1e-8));
        rs.push_back(two_path(w, {o.a_max}, 1e-3));
        rs.push_back(limit_law(w, 1e-3));
        rs.push_back(schrodinger(w, 1e-3));
        rs.push_back(zeros(w, o.t_max));
    }

    bool ok = true;
    for (const auto& r : rs) ok = ok && (r.pass || !r.gate);

    std::ostringstream body;
    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["omega"] = w;
        j["seed"] = o.seed;
        j["build"] = XISYS_GIT_DESCRIBE;
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& r : rs) j["checks"].push_back(to_json(r, o.timings));
        j["pass"] = ok;
        body << j.dump(2) << '\n';
    } else {
        body << "# command=verify omega=" << cli::format_double(w) << " seed=" << o.seed
             << " build=" << XISYS_GIT_DESCRIBE << '\n';
        body << "name,anchor,pass,gate,tol,values,error" << (o.timings ? ",runtime" : "") << '\n';
        for (const auto& r : rs) {
            std::string vals;
            for (const auto& [k, v] : r.values)
                vals += (vals.empty() ? "" : ";") + k + "=" + cli::format_double(v);
            std::string err = r.error;
            for (char& c : err)
                if (c == ',' || c == '"') c = ' ';
            body << '"' << r.name << "\"," << r.anchor << ',' << (r.pass ? "pass" : "FAIL") << ','
                 << (r.gate ? "gate" : "record") << ',' << cli::format_double(r.tol) << ",\""
                 << vals << "\",\"" << err << '"';
            if (o.timings) body << ',' << cli::format_double(r.runtime);
            body << '\n';
        }
    }
    if (o.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw std::runtime_error("IOError: cannot write " + o.out);
        f << body.str();
    }
    return ok ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fredholm determinants, m(a) and the canonical system built on the xi-function"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--omega", o.omega, "shift parameter omega")->check(CLI::PositiveNumber);
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", o.out, "output path (default stdout)");
        sub->add_option("--seed", o.seed, "seed for randomized sample points");
        sub->add_flag("--allow-large-a", o.allow_large_a, "permit a above 4");
        sub->add_flag("--plot", o.plot, "write a gnuplot script next to --out");
    };

    auto* theta = app.add_subcommand("theta", "theta_omega along a horizontal line");
    common(theta);
    theta->add_option("--grid", o.grid, "real parts lo:hi:n");
    theta->add_option("--z", o.z, "re,im; the imaginary part sets the line height");

    auto* kern = app.add_subcommand("kernel", "tables of g, h, g1, h1");
    common(kern);
    kern->add_option("--grid", o.grid, "x values lo:hi:n");
    kern->add_option("--function", o.function)->check(CLI::IsMember({"g", "h", "g1", "h1"}));

    auto* det = app.add_subcommand("det", "determinants, m, mu and spectral radius");
    common(det);
    det->add_option("--a-grid", o.a_grid, "a values a0:a1:n");
    det->add_option("--scheme", o.scheme)->check(CLI::IsMember({"galerkin", "nystrom"}));

    auto* mc = app.add_subcommand("mcurve", "m-curve from both sources");
    common(mc);
    mc->add_option("--a-grid", o.a_grid, "a values a0:a1:n");
    mc->add_flag("--dense", o.dense, "adaptively refined sampling");

    auto* ev = app.add_subcommand("evolve", "canonical system evolution from a = 1");
    common(ev);
    ev->add_option("--z", o.z, "re,im");
    ev->add_option("--a-max", o.a_max, "final a");
    ev->add_option("--steps", o.steps, "output points");

    auto* pot = app.add_subcommand("potentials", "Schrodinger potentials V+ and V-");
    common(pot);
    pot->add_option("--a-max", o.a_max, "final a");

    auto* zer = app.add_subcommand("zeros", "real zeros of A with a contour count");
    common(zer);
    zer->add_option("--tmax", o.t_max, "search window [0, tmax]");

    auto* ver = app.add_subcommand("verify", "run the verification suite");
    common(ver);
    ver->add_option("--a-max", o.a_max, "largest a for canonical checks")->default_val(1.5);
    ver->add_option("--tmax", o.t_max, "zero search window");
    ver->add_option("--only", o.only, "groups: specfun kernel operator canonical")
        ->check(CLI::IsMember({"specfun", "kernel", "operator", "canonical"}));
    ver->add_flag("--timings", o.timings, "include per-check runtime (breaks byte equality)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*theta) return cmd_theta(o);
        if (*kern) return cmd_kernel(o);
        if (*det) return cmd_det(o);
        if (*mc) return cmd_mcurve(o);
        if (*ev) return cmd_evolve(o);
        if (*pot) return cmd_potentials(o);
        if (*zer) return cmd_zeros(o);
        if (*ver) return cmd_verify(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const xisys::Error& e) {
        std::cerr << e.kind() << ": " << e.what() << '\n';
        return kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitConfig;
}
