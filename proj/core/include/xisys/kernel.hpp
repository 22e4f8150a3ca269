#pragma once

#include <functional>
#include <span>
#include <vector>

#include "xisys/quadrature.hpp"
#include "xisys/specfun.hpp"

namespace xisys::kernel {

// beta(z; p, q) = int_z^1 t^{p-1} (1-t)^{q-1} dt for z in (0, 1), q > 0, any real p.
struct BetaIntegralSpec {
    double z = 0.5;
    double p = 1.0;
    double q = 1.0;
    int panels = 1;  // minimum number of geometric panels on [z, 1/2]
};

double beta_tail(const BetaIntegralSpec& spec);

// Arithmetic kernels for a fixed omega > 0. Immutable after construction.
//
//   c(n)  = n^omega prod_{p | n} (1 - p^{-2 omega})
//   g(x)  = 2 pi^omega / Gamma(omega) (x^{2-omega} (1-x^2)^{omega-1}
//             - omega x^{omega-1} beta(x^2; 3/2 - omega, omega)),   0 < x < 1
//   g1(x) = int_x^1 sqrt(y/x) g(y) dy / y
//   h(x)  = (1/x) sum_{n <= x} c(n) g(n/x),   h1 likewise with g1.
//
// g and g1 vanish for x > 1; h and h1 vanish for x < 1.
class KernelContext {
public:
    explicit KernelContext(double omega, int n_max = 4096, double quad_tol = 1e-10);

    double omega() const { return omega_; }
    int n_max() const { return n_max_; }
    double quad_tol() const { return quad_tol_; }

    // c_table()[n] = c(n) for 1 <= n <= n_max; index 0 is unused.
    std::span<const double> c_table() const { return c_table_; }

    double jordan_c(long n) const;

    double g(double x) const;
    double g1(double x) const;
    double h(double x) const;
    double h1(double x) const;

    // h1 through int_1^x sqrt(y/x) h(y) dy / y.
    double h1_integral(double x) const;

    // Table-free paths: g from quadrature of the beta tail, g1 from its
    // closed form in beta tails, and g1 by direct quadrature of its definition.
    double g_reference(double x) const;
    double g1_reference(double x) const;
    double g1_quadrature(double x) const;

    // Largest |h| over a uniform sample of [lo, hi].
    double sampled_sup_h(double lo, double hi, int samples = 400) const;

private:
    double omega_;
    int n_max_;
    double quad_tol_;
    double g_scale_;  // 2 pi^omega / Gamma(omega)
    std::vector<double> c_table_;
    quad::DyadicChebyshev g_smooth_;   // g(x) / (1-x)^{omega-1}
    quad::DyadicChebyshev g1_smooth_;  // g1(x) / (1-x)^omega
};

enum class MellinKernel { h, h1 };

struct MellinResult {
    Complex value;
    double cutoff = 0.0;          // X
    double tail_bound = 0.0;      // fitted bound on |int_X^inf|
    double fitted_constant = 0.0; // C in C x^{omega + eps} growth model
};

// Growth-model tail bound C X^{omega+eps+1/2-Im z} / (Im z - omega - eps - 1/2)
// with C fitted from samples of |kernel| on [X/2, X].
double mellin_tail_bound(const KernelContext& ctx, Complex z, double cutoff,
                         MellinKernel kind, double* fitted_constant = nullptr);

// int_1^X k(x) x^{-1/2 + iz} dx. Compare with Theta(z) (kind h) or (i/z) Theta(z) (kind h1).
// Throws ConvergenceError when Im z <= omega + 1/2 or the tail bound exceeds tail_tol.
MellinResult mellin_check_h(Complex z, double cutoff, const KernelContext& ctx,
                            MellinKernel kind = MellinKernel::h, double tail_tol = 1e-6);

// Doubles X from 32 until the tail bound drops below tail_tol.
MellinResult mellin_transform(Complex z, const KernelContext& ctx,
                              MellinKernel kind = MellinKernel::h, double tail_tol = 1e-6);

// int_lo^hi f(x) dx where f may carry (x - n)^{alpha} singularities just right of integers.
// Splits at integers and grades nodes toward each left end.
template <class F>
auto integrate_unit_cells(double lo, double hi, F&& f, int nodes = 20, int power = 4) {
    using R = decltype(f(lo));
    R acc{};
    double a = lo;
    while (a < hi) {
        const double b = std::min(hi, std::floor(a) + 1.0);
        const quad::Rule r = quad::singular_left(std::floor(a), a, b, nodes, power);
        for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * f(r.nodes[i]);
        a = b;
    }
    return acc;
}

}  // namespace xisys::kernel
