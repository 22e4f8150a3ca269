#include "xisys/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xisys/errors.hpp"

namespace xisys::kernel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kTableDegree = 24;

int grading_power(double exponent_plus_one) {
    return std::clamp(int(std::ceil(10.0 / exponent_plus_one)), 2, 30);
}

// int_lo^1 f(t, 1 - t) dt for f ~ (1-t)^{q-1} at t = 1; lo in (0, 1).
template <class F>
double integrate_to_one(double lo, double q, int min_panels, F&& f) {
    const double mid = std::max(lo, 0.5);
    double acc = 0.0;
    const quad::Rule right = quad::graded_left(0.0, 1.0 - mid, 40, grading_power(q));
    for (std::size_t i = 0; i < right.nodes.size(); ++i) {
        const double u = right.nodes[i];
        acc += right.weights[i] * f(1.0 - u, u);
    }
    if (lo < 0.5) {
        const int k = std::max(min_panels, int(std::ceil(std::log2(0.5 / lo))));
        const double ratio = std::pow(0.5 / lo, 1.0 / k);
        const quad::Rule& ref = quad::gauss_legendre(20);
        double a = lo;
        for (int j = 0; j < k; ++j) {
            const double b = (j == k - 1) ? 0.5 : a * ratio;
            const quad::Rule r = quad::mapped(ref, a, b);
            for (std::size_t i = 0; i < r.nodes.size(); ++i)
                acc += r.weights[i] * f(r.nodes[i], 1.0 - r.nodes[i]);
            a = b;
        }
    }
    return acc;
}

std::vector<double> sieve_c(double omega, int n_max) {
    std::vector<double> c(std::size_t(n_max) + 1, 1.0);
    c[0] = 0.0;
    for (int n = 1; n <= n_max; ++n) c[n] = std::pow(double(n), omega);
    std::vector<bool> composite(std::size_t(n_max) + 1, false);
    for (int p = 2; p <= n_max; ++p) {
        if (composite[p]) continue;
        const double factor = 1.0 - std::pow(double(p), -2.0 * omega);
        for (int m = p; m <= n_max; m += p) {
            if (m > p) composite[m] = true;
            c[m] *= factor;
        }
    }
    return c;
}

int table_levels(int n_max) { return int(std::ceil(std::log2(double(n_max) + 1.0))) + 1; }

}  // namespace

double beta_tail(const BetaIntegralSpec& spec) {
    if (!(spec.z > 0.0 && spec.z < 1.0)) throw DomainError("beta_tail: z must lie in (0, 1)");
    if (!(spec.q > 0.0)) throw DomainError("beta_tail: q must be positive");
    const double pm1 = spec.p - 1.0;
    const double qm1 = spec.q - 1.0;
    return integrate_to_one(spec.z, spec.q, std::max(1, spec.panels), [&](double t, double u) {
        return std::pow(t, pm1) * std::pow(u, qm1);
    });
}

KernelContext::KernelContext(double omega, int n_max, double quad_tol)
    : omega_(omega), n_max_(n_max), quad_tol_(quad_tol) {
    if (!(omega > 0.0)) throw DomainError("KernelContext: omega must be positive");
    if (n_max < 1) throw RangeError("KernelContext: n_max must be positive");
    if (!(quad_tol > 0.0)) throw DomainError("KernelContext: quad_tol must be positive");
    g_scale_ = 2.0 * std::pow(kPi, omega) / std::tgamma(omega);
    c_table_ = sieve_c(omega, n_max);
    const int levels = table_levels(n_max);
    g_smooth_ = quad::DyadicChebyshev(
        [this](double x) { return g_reference(x) / std::pow(1.0 - x, omega_ - 1.0); }, levels,
        kTableDegree);
    g1_smooth_ = quad::DyadicChebyshev(
        [this](double x) { return g1_reference(x) / std::pow(1.0 - x, omega_); }, levels,
        kTableDegree);
}

double KernelContext::jordan_c(long n) const {
    if (n < 1) throw DomainError("jordan_c: n must be positive");
    if (n > n_max_) throw RangeError("jordan_c: n exceeds n_max");
    return c_table_[std::size_t(n)];
}

double KernelContext::g_reference(double x) const {
    if (!(x > 0.0)) throw DomainError("g: x must be positive");
    if (x > 1.0) return 0.0;
    if (x == 1.0) {
        if (omega_ > 1.0) return 0.0;
        throw DomainError("g: undefined at x = 1 for omega <= 1");
    }
    const double w = omega_;
    const double one_minus_x2 = (1.0 - x) * (1.0 + x);
    const double b = beta_tail({x * x, 1.5 - w, w, 1});
    return g_scale_ * (std::pow(x, 2.0 - w) * std::pow(one_minus_x2, w - 1.0) -
                       w * std::pow(x, w - 1.0) * b);
}

double KernelContext::g(double x) const {
    if (!(x > 0.0)) throw DomainError("g: x must be positive");
    if (x >= 1.0 || !g_smooth_.covers(x)) return g_reference(x);
    return g_smooth_(x) * std::pow(1.0 - x, omega_ - 1.0);
}

double KernelContext::g1_reference(double x) const {
    if (!(x > 0.0)) throw DomainError("g1: x must be positive");
    if (x >= 1.0) return 0.0;
    const double w = omega_;
    if (std::abs(w - 0.5) < 1e-12) {
        const double r = std::sqrt((1.0 - x) * (1.0 + x));
        return 2.0 / std::sqrt(x) * (2.0 * r + std::log(x) - std::log1p(r));
    }
    const double x2 = x * x;
    const double b1 = beta_tail({x2, 0.5 * (3.0 - 2.0 * w), w, 1});
    const double b2 = beta_tail({x2, 0.25 * (5.0 - 2.0 * w), w, 1});
    const double scale = 4.0 * w / (2.0 * w - 1.0) * std::pow(kPi, w) / std::tgamma(w);
    return scale * (std::pow(x, w - 1.0) * b1 - (2.0 * w + 1.0) / (4.0 * w) * b2 / std::sqrt(x));
}

double KernelContext::g1(double x) const {
    if (!(x > 0.0)) throw DomainError("g1: x must be positive");
    if (x >= 1.0) return 0.0;
    if (!g1_smooth_.covers(x)) return g1_reference(x);
    return g1_smooth_(x) * std::pow(1.0 - x, omega_);
}

double KernelContext::g1_quadrature(double x) const {
    if (!(x > 0.0)) throw DomainError("g1: x must be positive");
    if (x >= 1.0) return 0.0;
    const double inv_sqrt_x = 1.0 / std::sqrt(x);
    return integrate_to_one(x, omega_, 1, [&](double y, double) {
        return inv_sqrt_x / std::sqrt(y) * g(y);
    });
}

double KernelContext::h(double x) const {
    if (!(x > 0.0)) throw DomainError("h: x must be positive");
    if (x < 1.0) return 0.0;
    const double fl = std::floor(x);
    if (fl > n_max_) throw RangeError("h: floor(x) exceeds n_max");
    const long top = long(fl);
    if (fl == x && omega_ <= 1.0) throw DomainError("h: singular at integers for omega <= 1");
    double acc = 0.0;
    for (long n = 1; n <= top; ++n) {
        const double t = double(n) / x;
        if (t < 1.0) acc += c_table_[std::size_t(n)] * g(t);
    }
    return acc / x;
}

double KernelContext::h1(double x) const {
    if (!(x > 0.0)) throw DomainError("h1: x must be positive");
    if (x < 1.0) return 0.0;
    const double fl = std::floor(x);
    if (fl > n_max_) throw RangeError("h1: floor(x) exceeds n_max");
    const long top = long(fl);
    double acc = 0.0;
    for (long n = 1; n <= top; ++n) {
        const double t = double(n) / x;
        if (t < 1.0) acc += c_table_[std::size_t(n)] * g1(t);
    }
    return acc / x;
}

double KernelContext::h1_integral(double x) const {
    if (!(x > 0.0)) throw DomainError("h1: x must be positive");
    if (x <= 1.0) return 0.0;
    if (std::floor(x) > n_max_) throw RangeError("h1: floor(x) exceeds n_max");
    const double integral = integrate_unit_cells(
        1.0, x, [this](double y) { return h(y) / std::sqrt(y); }, 24, grading_power(omega_));
    return integral / std::sqrt(x);
}

double KernelContext::sampled_sup_h(double lo, double hi, int samples) const {
    double best = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double x = lo + (hi - lo) * (i + 0.5) / (samples + 1);
        best = std::max(best, std::abs(h(x)));
    }
    return best;
}

namespace {

double sampled_sup(const KernelContext& ctx, MellinKernel kind, double lo, double hi) {
    if (kind == MellinKernel::h) return ctx.sampled_sup_h(lo, hi);
    double best = 0.0;
    constexpr int samples = 400;
    for (int i = 0; i <= samples; ++i) {
        const double x = lo + (hi - lo) * (i + 0.5) / (samples + 1);
        best = std::max(best, std::abs(ctx.h1(x)));
    }
    return best;
}

}  // namespace

double mellin_tail_bound(const KernelContext& ctx, Complex z, double cutoff, MellinKernel kind,
                         double* fitted_constant) {
    const double margin = z.imag() - ctx.omega() - 0.5;
    if (!(margin > 0.0))
        throw ConvergenceError("mellin: Im z must exceed omega + 1/2");
    const double eps = std::min(0.01, 0.5 * margin);
    const double growth = ctx.omega() + eps;
    const double sup = sampled_sup(ctx, kind, 0.5 * cutoff, cutoff);
    const double c = sup / std::pow(cutoff, growth);
    if (fitted_constant) *fitted_constant = c;
    return c * std::pow(cutoff, growth + 0.5 - z.imag()) / (margin - eps);
}

MellinResult mellin_check_h(Complex z, double cutoff, const KernelContext& ctx, MellinKernel kind,
                            double tail_tol) {
    if (!(cutoff > 1.0)) throw DomainError("mellin: cutoff must exceed 1");
    if (std::floor(cutoff) > ctx.n_max()) throw RangeError("mellin: cutoff exceeds n_max");
    MellinResult res;
    res.cutoff = cutoff;
    res.tail_bound = mellin_tail_bound(ctx, z, cutoff, kind, &res.fitted_constant);
    if (res.tail_bound > tail_tol)
        throw ConvergenceError("mellin: tail bound exceeds tolerance at the chosen cutoff");
    const Complex expo = Complex(-0.5, 0.0) + Complex(0.0, 1.0) * z;
    const int power = grading_power(ctx.omega());
    if (kind == MellinKernel::h) {
        res.value = integrate_unit_cells(
            1.0, cutoff, [&](double x) { return ctx.h(x) * std::exp(expo * std::log(x)); }, 20,
            power);
    } else {
        res.value = integrate_unit_cells(
            1.0, cutoff, [&](double x) { return ctx.h1(x) * std::exp(expo * std::log(x)); }, 20,
            power);
    }
    return res;
}

MellinResult mellin_transform(Complex z, const KernelContext& ctx, MellinKernel kind,
                              double tail_tol) {
    double cutoff = 32.0;
    while (true) {
        if (mellin_tail_bound(ctx, z, cutoff, kind) <= tail_tol)
            return mellin_check_h(z, cutoff, ctx, kind, tail_tol);
        if (2.0 * cutoff > ctx.n_max())
            throw ConvergenceError("mellin: no admissible cutoff below n_max");
        cutoff *= 2.0;
    }
}

}  // namespace xisys::kernel
