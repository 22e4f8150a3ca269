#include "xisys/canonical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

// Boost 1.74 pchip.hpp calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/cubic_hermite.hpp>
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "xisys/errors.hpp"

namespace xisys::canon {

namespace {

constexpr Complex kI{0.0, 1.0};

int grading_power(double omega) { return std::clamp(int(std::ceil(10.0 / omega)), 2, 30); }

bool is_root(double a) {
    const double r = std::round(a * a);
    return r >= 1.0 && std::abs(std::sqrt(r) - a) <= 1e-12 * a;
}

// Gauss rule on [lo, hi], graded toward whichever ends are flagged.
quad::Rule segment_rule(double lo, double hi, int nodes, bool grade_lo, bool grade_hi) {
    constexpr int power = 3;
    if (grade_lo && grade_hi) {
        const double mid = 0.5 * (lo + hi);
        quad::Rule left = quad::graded_left(lo, mid, nodes, power);
        const quad::Rule right = quad::graded_left(0.0, hi - mid, nodes, power);
        for (std::size_t i = 0; i < right.nodes.size(); ++i) {
            left.nodes.push_back(hi - right.nodes[i]);
            left.weights.push_back(right.weights[i]);
        }
        return left;
    }
    if (grade_lo) return quad::graded_left(lo, hi, nodes, power);
    if (grade_hi) {
        quad::Rule r = quad::graded_left(0.0, hi - lo, nodes, power);
        for (double& x : r.nodes) x = hi - x;
        return r;
    }
    return quad::mapped(quad::gauss_legendre(nodes), lo, hi);
}

struct MuSample {
    double mu = 0.0;
    double log_m = 0.0;
    double noise = 0.0;
};

// Rounding level of log det(I +- M): eigenvalue errors of order N eps relative to the
// distance of the spectrum from -1 and 1.
double log_det_noise(const op::DiscreteOperator& D) {
    if (D.size() == 0) return 0.0;
    const double gap = std::min(1.0 - D.eigenvalues.maxCoeff(), 1.0 + D.eigenvalues.minCoeff());
    return 10.0 * double(D.size()) * std::numeric_limits<double>::epsilon() / gap;
}

MuSample sample_operator(const kernel::KernelContext& ctx, double a, const op::GalerkinOptions& g) {
    const op::DiscreteOperator D = op::discretize_galerkin(ctx, a, g);
    const op::LogDetPair ld = op::log_det_pair(D);
    const op::PhiSolution plus = op::solve_phi(ctx, D, 1);
    const op::PhiSolution minus = op::solve_phi(ctx, D, -1);
    return {a * (plus.at_a() + minus.at_a()), ld.plus - ld.minus, log_det_noise(D)};
}

struct Node {
    double a = 1.0;
    double mu = 0.0;
    double log_m = 0.0;
    double noise = 0.0;
};

Node make_node(const kernel::KernelContext& ctx, double a, const op::GalerkinOptions& g) {
    if (a <= 1.0) return {a, 0.0, 0.0, 0.0};
    const MuSample s = sample_operator(ctx, a, g);
    return {a, s.mu, s.log_m, s.noise};
}

// Cubic Hermite in t = log a through (t0, y0, d0), (t1, y1, d1), evaluated at the midpoint.
double hermite_mid(const Node& p, const Node& q) {
    const double h = std::log(q.a) - std::log(p.a);
    return 0.5 * (p.log_m + q.log_m) + 0.125 * h * (p.mu - q.mu);
}

// Bisects intervals in log a until the Hermite midpoint prediction of log m is within
// refine_tol of the computed value, or within the rounding level of the samples.
std::vector<Node> refine(const kernel::KernelContext& ctx, std::vector<Node> nodes,
                         const MCurveOptions& opts) {
    std::vector<Node> out;
    std::vector<std::pair<Node, Node>> work;
    for (std::size_t i = nodes.size(); i-- > 1;) {
        if (nodes[i - 1].a >= 1.0) work.emplace_back(nodes[i - 1], nodes[i]);
    }
    out.push_back(nodes.front());
    for (std::size_t i = 1; i < nodes.size() && nodes[i].a <= 1.0; ++i) out.push_back(nodes[i]);
    while (!work.empty()) {
        auto [p, q] = work.back();
        work.pop_back();
        const double mid = std::sqrt(p.a * q.a);
        const Node n = make_node(ctx, mid, opts.galerkin);
        const double err = std::abs(hermite_mid(p, q) - n.log_m);
        const double floor = std::max({p.noise, q.noise, n.noise});
        if (err > std::max(opts.refine_tol, floor) && q.a - p.a > 2.0 * opts.min_spacing) {
            work.emplace_back(n, q);
            work.emplace_back(p, n);
        } else {
            out.push_back(n);
            out.push_back(q);
        }
    }
    return out;
}

}  // namespace

double MCurve::source_gap() const {
    if (log_m_int.size() != log_m_det.size() || log_m_int.empty())
        return std::numeric_limits<double>::quiet_NaN();
    double gap = 0.0;
    for (std::size_t i = 0; i < log_m_det.size(); ++i)
        gap = std::max(gap, std::abs(std::expm1(log_m_det[i] - log_m_int[i])));
    return gap;
}

void MCurve::finalize() {
    std::vector<double> t, y, dy;
    for (std::size_t i = 0; i < a_samples.size(); ++i) {
        if (a_samples[i] < 1.0) continue;
        t.push_back(std::log(a_samples[i]));
        y.push_back(std::log(m_values[i]));
        dy.push_back(mu_values[i]);
    }
    if (t.size() < 2) {
        log_m_fn_.reset();
        mu_fn_.reset();
        return;
    }
    if (interpolation == MInterpolation::pchip) {
        if (t.size() < 4) throw DomainError("MCurve: pchip needs at least 4 samples with a >= 1");
        auto p = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
            std::move(t), std::move(y));
        log_m_fn_ = std::make_shared<const std::function<double(double)>>(
            [p](double s) { return (*p)(s); });
        mu_fn_ = std::make_shared<const std::function<double(double)>>(
            [p](double s) { return p->prime(s); });
    } else {
        auto p = std::make_shared<boost::math::interpolators::cubic_hermite<std::vector<double>>>(
            std::move(t), std::move(y), std::move(dy));
        log_m_fn_ = std::make_shared<const std::function<double(double)>>(
            [p](double s) { return (*p)(s); });
        mu_fn_ = std::make_shared<const std::function<double(double)>>(
            [p](double s) { return p->prime(s); });
    }
}

double MCurve::log_m(double a) const {
    if (!(a > 0.0)) throw DomainError("MCurve: a must be positive");
    if (a <= 1.0) return 0.0;
    if (a > a_max() * (1.0 + 1e-14) || !log_m_fn_) throw RangeError("MCurve: a beyond the sampled range");
    return (*log_m_fn_)(std::min(std::log(a), std::log(a_max())));
}

double MCurve::m(double a) const { return std::exp(log_m(a)); }

double MCurve::mu(double a) const {
    if (!(a > 0.0)) throw DomainError("MCurve: a must be positive");
    if (a <= 1.0) return 0.0;
    if (a > a_max() * (1.0 + 1e-14) || !mu_fn_) throw RangeError("MCurve: a beyond the sampled range");
    return (*mu_fn_)(std::min(std::log(a), std::log(a_max())));
}

MCurve m_curve(const kernel::KernelContext& ctx, std::vector<double> a_grid,
               const MCurveOptions& opts) {
    if (!(ctx.omega() > 1.0)) throw RegimeError("m_curve requires omega > 1");
    if (a_grid.empty()) throw DomainError("m_curve: empty grid");
    for (std::size_t i = 0; i < a_grid.size(); ++i) {
        if (!(a_grid[i] > 0.0)) throw DomainError("m_curve: grid points must be positive");
        if (i > 0 && !(a_grid[i] > a_grid[i - 1])) throw DomainError("m_curve: grid must increase");
    }
    const double top = a_grid.back();
    std::vector<double> singular{1.0};
    for (int n = 2; double(n) < top * top; ++n) singular.push_back(std::sqrt(double(n)));
    a_grid.insert(a_grid.end(), singular.begin(), singular.end());
    if (opts.max_spacing > 0.0 && top > 1.0) {
        const int pieces = int(std::ceil((top - 1.0) / opts.max_spacing));
        for (int k = 1; k < pieces; ++k) a_grid.push_back(1.0 + (top - 1.0) * k / pieces);
    }
    std::sort(a_grid.begin(), a_grid.end());
    a_grid.erase(std::unique(a_grid.begin(), a_grid.end(),
                             [](double x, double y) { return std::abs(x - y) <= 1e-12 * y; }),
                 a_grid.end());
    while (a_grid.back() > top * (1.0 + 1e-12)) a_grid.pop_back();

    std::vector<Node> nodes;
    for (double a : a_grid) nodes.push_back(make_node(ctx, a, opts.galerkin));
    if (opts.refine_tol > 0.0) nodes = refine(ctx, std::move(nodes), opts);

    MCurve c;
    c.omega = ctx.omega();
    c.source = opts.source;
    c.interpolation = opts.interpolation;
    for (const Node& n : nodes) {
        c.a_samples.push_back(n.a);
        c.mu_values.push_back(n.mu);
        c.log_m_det.push_back(n.log_m);
        c.noise_floor = std::max(c.noise_floor, n.noise);
    }
    a_grid = c.a_samples;

    if (opts.exp_integral) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a_grid.size(); ++i) {
            if (i > 0 && a_grid[i] > 1.0) {
                const double lo = std::max(1.0, a_grid[i - 1]);
                const double hi = a_grid[i];
                const quad::Rule r =
                    segment_rule(lo, hi, opts.exp_nodes, lo == 1.0 || is_root(lo), is_root(hi));
                for (std::size_t k = 0; k < r.nodes.size(); ++k)
                    acc += r.weights[k] * op::mu_of_a(ctx, r.nodes[k], opts.galerkin) / r.nodes[k];
            }
            c.log_m_int.push_back(a_grid[i] <= 1.0 ? 0.0 : acc);
        }
    } else if (opts.source == MSource::exp_integral) {
        throw DomainError("m_curve: exp_integral source requested but not computed");
    }

    const std::vector<double>& chosen =
        opts.source == MSource::exp_integral ? c.log_m_int : c.log_m_det;
    for (double l : chosen) c.m_values.push_back(std::exp(l));
    c.finalize();
    return c;
}

MCurveOptions dense_curve_options(double spacing, double refine_tol) {
    MCurveOptions o;
    o.exp_integral = false;
    o.max_spacing = spacing;
    o.refine_tol = refine_tol;
    return o;
}

CanonicalState ab_initial(Complex z, double omega, const specfun::XiEvaluator& ev) {
    const specfun::ABPair p = specfun::ab_omega(z, omega, ev);
    return {z, 1.0, p.a, p.b};
}

CanonicalState closed_form_ab(Complex z, double omega, double a, const specfun::XiEvaluator& ev) {
    if (!(a > 0.0 && a <= 1.0)) throw DomainError("closed_form_ab: a must lie in (0, 1]");
    const Complex s = specfun::s_of_z(z);
    const Complex xp = specfun::xi(s + omega, ev);
    const Complex xm = specfun::xi(s - omega, ev);
    const Complex up = std::exp(kI * z * std::log(a));
    const Complex down = std::exp(-kI * z * std::log(a));
    return {z, a, 0.5 * (xp * up + xm * down), 0.5 * kI * (xp * up - xm * down)};
}

namespace {

using OdeState = std::array<double, 4>;

OdeState run_ode(const OdeState& start, Complex z, const MCurve& curve, std::vector<double> knots,
                 double abs_tol, double rel_tol) {
    namespace odeint = boost::numeric::odeint;
    auto rhs = [&](const OdeState& x, OdeState& dxdt, double t) {
        const double lm = t <= 0.0 ? 0.0 : curve.log_m(std::exp(t));
        const double m2 = std::exp(2.0 * lm);
        const Complex A(x[0], x[1]);
        const Complex B(x[2], x[3]);
        const Complex dA = z * m2 * B;
        const Complex dB = -z * A / m2;
        dxdt = {dA.real(), dA.imag(), dB.real(), dB.imag()};
    };
    OdeState x = start;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double t0 = knots[k];
        const double t1 = knots[k + 1];
        if (t0 == t1) continue;
        auto stepper = odeint::make_controlled(abs_tol, rel_tol, odeint::runge_kutta_dopri5<OdeState>());
        const double dt = 0.01 * (t1 - t0);
        odeint::integrate_adaptive(stepper, rhs, x, t0, t1, dt);
        for (double v : x)
            if (!std::isfinite(v)) throw StepError("evolve: non-finite state");
    }
    return x;
}

std::vector<double> knots_between(double t0, double t1, const MCurve& curve) {
    std::vector<double> knots{t0};
    const double lo = std::min(t0, t1), hi = std::max(t0, t1);
    std::vector<double> inner;
    for (double a : curve.a_samples) {
        const double t = std::log(a);
        if (t > lo && t < hi) inner.push_back(t);
    }
    if (0.0 > lo && 0.0 < hi) inner.push_back(0.0);
    std::sort(inner.begin(), inner.end());
    if (t1 < t0) std::reverse(inner.begin(), inner.end());
    knots.insert(knots.end(), inner.begin(), inner.end());
    knots.push_back(t1);
    return knots;
}

}  // namespace

CanonicalState evolve(const CanonicalState& state, double a_target, const MCurve& curve,
                      const EvolveOptions& opts) {
    if (!(state.a > 0.0 && a_target > 0.0)) throw DomainError("evolve: a must be positive");
    const double hi = std::max(state.a, a_target);
    if (hi > 1.0 && hi > curve.a_max() * (1.0 + 1e-14))
        throw RangeError("evolve: target beyond the m-curve");
    const double t0 = std::log(state.a), t1 = std::log(a_target);
    const std::vector<double> knots = knots_between(t0, t1, curve);
    const OdeState start{state.A.real(), state.A.imag(), state.B.real(), state.B.imag()};
    OdeState x;
    try {
        x = run_ode(start, state.z, curve, knots, opts.abs_tol, opts.rel_tol);
        if (opts.check_halving) {
            const OdeState fine =
                run_ode(start, state.z, curve, knots, opts.abs_tol / 16.0, opts.rel_tol / 16.0);
            double scale = 0.0, diff = 0.0;
            for (int k = 0; k < 4; ++k) {
                scale = std::max(scale, std::abs(fine[k]));
                diff = std::max(diff, std::abs(fine[k] - x[k]));
            }
            const double allowed = opts.halving_tol * std::max(1.0, std::abs(a_target - state.a));
            if (diff > allowed * std::max(scale, std::numeric_limits<double>::min()))
                throw StepError("evolve: step-halving comparison exceeds tolerance");
            x = fine;
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw StepError(std::string("evolve: ") + e.what());
    }
    return {state.z, a_target, Complex(x[0], x[1]), Complex(x[2], x[3])};
}

std::vector<CanonicalState> evolve_path(const CanonicalState& state,
                                        const std::vector<double>& a_out, const MCurve& curve,
                                        const EvolveOptions& opts) {
    std::vector<CanonicalState> out;
    CanonicalState cur = state;
    for (double a : a_out) {
        cur = evolve(cur, a, curve, opts);
        out.push_back(cur);
    }
    return out;
}

namespace {

// M(T) = int_1^T h(u) u^{-1/2 + iz} du, tabulated at integers.
class MellinPrefix {
public:
    MellinPrefix(const kernel::KernelContext& ctx, Complex z)
        : ctx_(ctx), expo_(Complex(-0.5, 0.0) + kI * z), power_(grading_power(ctx.omega())) {
        cum_.push_back(0.0);  // M(1)
    }

    Complex operator()(double T) {
        if (T <= 1.0) return 0.0;
        const double fl = std::floor(T);
        extend(long(fl));
        const Complex base = cum_[std::size_t(fl) - 1];
        if (T == fl) return base;
        return base + cell(fl, T);
    }

private:
    Complex cell(double lo, double hi) const {
        const quad::Rule r = quad::graded_left(lo, hi, 20, power_);
        Complex acc = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
            acc += r.weights[i] * ctx_.h(r.nodes[i]) * std::exp(expo_ * std::log(r.nodes[i]));
        return acc;
    }

    void extend(long k) {
        if (k > ctx_.n_max()) throw RangeError("direct_ab: cutoff exceeds n_max");
        while (long(cum_.size()) < k) {
            const double lo = double(cum_.size());
            cum_.push_back(cum_.back() + cell(lo, lo + 1.0));
        }
    }

    const kernel::KernelContext& ctx_;
    Complex expo_;
    int power_;
    std::vector<Complex> cum_;  // cum_[k - 1] = M(k)
};

double growth_constant(const kernel::KernelContext& ctx, double lo, double hi) {
    constexpr int samples = 200;
    double best = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double u = lo + (hi - lo) * (i + 0.5) / (samples + 1);
        best = std::max(best, std::abs(ctx.h(u)) / std::pow(u, ctx.omega()));
    }
    return best;
}

}  // namespace

DirectResult direct_ab(const kernel::KernelContext& ctx, double a, Complex z,
                       const DirectOptions& opts) {
    const double omega = ctx.omega();
    const double margin = z.imag() - omega - 0.5;
    if (!(margin > 0.0)) throw ConvergenceError("direct_ab: Im z must exceed omega + 1/2");
    if (!(a > 0.0)) throw DomainError("direct_ab: a must be positive");

    const Complex xp = specfun::xi(specfun::s_of_z(z) + omega, opts.xi);
    const Complex up = std::exp(kI * z * std::log(a));
    DirectResult res;
    if (a <= 1.0) {
        const Complex theta = specfun::theta_omega(z, omega, opts.xi);
        const Complex down = std::exp(-kI * z * std::log(a));
        res.a_tilde = 0.5 * (up + theta * down);
        res.b_tilde = 0.5 * kI * (up - theta * down);
        res.state = {z, a, xp * res.a_tilde, xp * res.b_tilde};
        return res;
    }
    if (!(omega > 1.0)) throw RegimeError("direct_ab requires omega > 1 for a > 1");

    const op::DiscreteOperator D = op::discretize_galerkin(ctx, a, opts.galerkin);
    const op::LogDetPair ld = op::log_det_pair(D);
    const op::PhiSolution plus = op::solve_phi(ctx, D, 1);
    const op::PhiSolution minus = op::solve_phi(ctx, D, -1);
    res.m = std::exp(ld.plus - ld.minus);

    const double l1 = std::max(plus.l1_norm(), minus.l1_norm());
    double X = std::max(opts.first_cutoff, 2.0 * a * a);
    while (true) {
        if (a * X > ctx.n_max())
            throw ConvergenceError("direct_ab: tail bound above tolerance for every cutoff below n_max");
        const double c = growth_constant(ctx, X / a, a * X);
        res.tail_bound = c * std::pow(a, omega) * (1.0 + l1) *
                         std::pow(X, omega + 0.5 - z.imag()) / margin;
        if (res.tail_bound <= opts.tail_tol) break;
        X *= 2.0;
    }
    res.cutoff = X;

    MellinPrefix M(ctx, z);
    const Complex shift = -0.5 - kI * z;
    auto tail = [&](const op::PhiSolution& phi) {
        Complex acc = std::exp(shift * std::log(a)) * (M(a * X) - M(a * a));
        Complex inner = 0.0;
        const auto& y = phi.quadrature_nodes();
        const auto& w = phi.quadrature_weights();
        const auto& v = phi.quadrature_values();
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (v[i] == 0.0) continue;
            inner += w[i] * v[i] * std::exp(shift * std::log(y[i])) * (M(X * y[i]) - M(a * y[i]));
        }
        return acc - double(phi.eps) * inner;
    };
    const Complex ip = tail(plus);
    const Complex im = tail(minus);
    const double root_a = std::sqrt(a);
    res.a_tilde = 0.5 * up + 0.5 * root_a * ip;
    res.b_tilde = kI * (0.5 * up - 0.5 * root_a * im);
    res.state = {z, a, res.m * xp * res.a_tilde, xp * res.b_tilde / res.m};
    return res;
}

std::vector<PotentialSample> potentials(const MCurve& curve) {
    std::vector<PotentialSample> out;
    const auto& a = curve.a_samples;
    const auto& mu = curve.mu_values;
    for (std::size_t i = 1; i + 1 < a.size(); ++i) {
        PotentialSample p;
        p.a = a[i];
        p.m = curve.m_values[i];
        p.mu = mu[i];
        if (a[i] > 1.0) {
            const double hm = std::log(a[i]) - std::log(a[i - 1]);
            const double hp = std::log(a[i + 1]) - std::log(a[i]);
            const double dmu = (hm * hm * mu[i + 1] - hp * hp * mu[i - 1] + (hp * hp - hm * hm) * mu[i]) /
                               (hp * hm * (hp + hm));
            p.v_plus = p.mu * p.mu - dmu;
            p.v_minus = p.mu * p.mu + dmu;
        }
        out.push_back(p);
    }
    return out;
}

SchrodingerResidual schrodinger_residual(const MCurve& curve, std::size_t i, Complex z,
                                         double rel_step, const EvolveOptions& opts) {
    if (i == 0 || i + 1 >= curve.a_samples.size())
        throw DomainError("schrodinger_residual: need an interior sample");
    const double a = curve.a_samples[i];
    if (a * std::exp(rel_step) > curve.a_max()) throw RangeError("schrodinger_residual: step leaves the curve");

    PotentialSample v;
    for (const PotentialSample& p : potentials(curve))
        if (p.a == a) v = p;

    const double lo = a * std::exp(-rel_step), hi = a * std::exp(rel_step);
    const CanonicalState start = ab_initial(z, curve.omega);
    const std::vector<CanonicalState> path = evolve_path(start, {lo, a, hi}, curve, opts);
    const Complex psi_lo = path[0].A / curve.m(lo);
    const Complex psi = path[1].A / curve.m(a);
    const Complex psi_hi = path[2].A / curve.m(hi);
    const Complex d2 = (psi_hi - 2.0 * psi + psi_lo) / (rel_step * rel_step);

    SchrodingerResidual r;
    r.a = a;
    r.z = z;
    r.residual = -d2 + v.v_plus * psi - z * z * psi;
    const double scale = std::max({std::abs(z * z * psi), std::abs(v.v_plus * psi), std::abs(d2)});
    r.relative = scale > 0.0 ? std::abs(r.residual) / scale : std::abs(r.residual);
    return r;
}

double contour_winding(const std::function<Complex(Complex)>& f, double x0, double x1, double h,
                       const ZeroOptions& opts) {
    const std::array<Complex, 5> corners{Complex(x0, -h), Complex(x1, -h), Complex(x1, h),
                                         Complex(x0, h), Complex(x0, -h)};
    double total = 0.0;
    for (std::size_t e = 0; e + 1 < corners.size(); ++e) {
        const Complex p0 = corners[e], p1 = corners[e + 1];
        const double len = std::abs(p1 - p0);
        const Complex dir = (p1 - p0) / len;
        double s = 0.0;
        double step = std::min(opts.scan_step, len);
        Complex fs = f(p0);
        if (fs == 0.0) throw ContourError("contour passes through a zero");
        while (s < len) {
            const double next = std::min(len, s + step);
            const Complex fn = f(p0 + next * dir);
            const double mag = std::max(std::abs(fs), std::abs(fn));
            if (std::abs(fn) < opts.contour_floor * mag || fn == 0.0)
                throw ContourError("contour passes within tolerance of a zero");
            const double dphi = std::arg(fn / fs);
            if (std::abs(dphi) > opts.max_phase_step) {
                step *= 0.5;
                if (step < 1e-10 * std::max(1.0, len)) throw ContourError("contour phase step underflow");
                continue;
            }
            total += dphi;
            s = next;
            fs = fn;
            step = std::min(opts.scan_step, 2.0 * step);
        }
    }
    return total / (2.0 * std::acos(-1.0));
}

namespace {

std::vector<double> sign_change_roots(const std::function<double(double)>& f, double x0, double x1,
                                      double step) {
    std::vector<double> roots;
    double a = x0, fa = f(a);
    while (a < x1) {
        const double b = std::min(x1, a + step);
        const double fb = f(b);
        if (fb == 0.0) {
            roots.push_back(b);
        } else if (fa != 0.0 && std::signbit(fa) != std::signbit(fb)) {
            boost::uintmax_t iters = 200;
            const auto r = boost::math::tools::toms748_solve(
                f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(50), iters);
            roots.push_back(0.5 * (r.first + r.second));
        }
        a = b;
        fa = fb;
    }
    return roots;
}

}  // namespace

ZeroReport zeros_of_a(double omega, double t_max, const ZeroOptions& opts) {
    if (!(omega >= 0.5)) throw DomainError("zeros_of_a: omega must be at least 1/2");
    if (!(t_max > 0.0)) throw DomainError("zeros_of_a: t_max must be positive");
    ZeroReport rep;
    auto fa = [&](double x) { return specfun::ab_omega(Complex(x, 0.0), omega, opts.xi).a.real(); };
    auto fb = [&](double x) { return specfun::ab_omega(Complex(x, 0.0), omega, opts.xi).b.real(); };
    rep.zeros_a = sign_change_roots(fa, 0.0, t_max, opts.scan_step);
    rep.zeros_b.push_back(0.0);
    const double start = 1e-3 * opts.scan_step;
    for (double r : sign_change_roots(fb, start, t_max, opts.scan_step)) rep.zeros_b.push_back(r);

    rep.contour_winding = contour_winding(
        [&](Complex z) { return specfun::ab_omega(z, omega, opts.xi).a; }, 0.0, t_max,
        opts.contour_height, opts);
    rep.contour_count = int(std::lround(rep.contour_winding));

    // B(0) = 0 < a_1 < b_1 < a_2 < ...
    std::vector<std::pair<double, int>> merged;
    for (double x : rep.zeros_a) merged.emplace_back(x, 0);
    for (double x : rep.zeros_b) merged.emplace_back(x, 1);
    std::sort(merged.begin(), merged.end());
    rep.interlaced = !merged.empty() && merged.front().second == 1;
    for (std::size_t i = 1; i < merged.size(); ++i)
        rep.interlaced = rep.interlaced && merged[i].second != merged[i - 1].second;
    return rep;
}

}  // namespace xisys::canon
