#pragma once

#include <complex>
#include <utility>

namespace xisys {

using Complex = std::complex<double>;

namespace specfun {

// Parameters of the two xi evaluation paths. Defaults cover |Im s| <= 60.
struct XiEvaluator {
    int euler_maclaurin_terms = 40;  // direct sum length N
    int bernoulli_order = 20;        // corrections up to B_{bernoulli_order}
    int theta_series_cutoff = 8;     // terms of the theta kernel series
};

// Principal branch of log Gamma. Throws PoleError at 0, -1, -2, ...
Complex log_gamma(Complex s);

// Riemann zeta. Throws PoleError at s = 1.
Complex zeta(Complex s, const XiEvaluator& ev = {});

// (s - 1) zeta(s), entire.
Complex zeta_times_pole(Complex s, const XiEvaluator& ev = {});

// Riemann xi(s) = s(s-1)/2 pi^{-s/2} Gamma(s/2) zeta(s).
Complex xi(Complex s, const XiEvaluator& ev = {});

// xi(s) from the Mellin integral of the theta kernel
//   phi(x) = 2 sum_n (2 pi^2 n^4 x^4 - 3 pi n^2 x^2) exp(-pi n^2 x^2),
// on rays rotated away from the real axis. Independent of zeta/log_gamma.
Complex xi_theta_series(Complex s, const XiEvaluator& ev = {});

// The theta kernel itself (complex argument with Re x^2 > 0).
Complex theta_kernel(Complex x, int cutoff);

// Theta_omega(z) = xi(1/2 - omega - iz) / xi(1/2 + omega - iz).
// Throws PoleError when the denominator is below 1e-14 (1 + |s|).
Complex theta_omega(Complex z, double omega, const XiEvaluator& ev = {});

struct ABPair {
    Complex a;
    Complex b;
};

// A(z) = (xi(s+omega) + xi(s-omega)) / 2, B(z) = i (xi(s+omega) - xi(s-omega)) / 2,
// with s = 1/2 - iz.
ABPair ab_omega(Complex z, double omega, const XiEvaluator& ev = {});
inline Complex a_omega(Complex z, double omega) { return ab_omega(z, omega).a; }
inline Complex b_omega(Complex z, double omega) { return ab_omega(z, omega).b; }

// s = 1/2 - i z
inline Complex s_of_z(Complex z) { return Complex(0.5, 0.0) - Complex(0.0, 1.0) * z; }

}  // namespace specfun
}  // namespace xisys
