#include "xisys/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "xisys/errors.hpp"
#include "xisys/quadrature.hpp"

namespace xisys::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

// Lanczos g = 7, n = 9.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// B_2, B_4, ..., B_20
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,    -1.0 / 30.0,  1.0 / 42.0,        -1.0 / 30.0,   5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0};

Complex checked(Complex v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw RangeError(std::string(what) + ": non-finite result");
    return v;
}

bool is_nonpositive_integer(Complex s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

Complex log_gamma_lanczos(Complex s) {
    const Complex z = s - 1.0;
    Complex x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + double(i));
    const Complex t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Euler-Maclaurin for (s-1) zeta(s); no division by s-1.
Complex zeta_em_scaled(Complex s, const XiEvaluator& ev) {
    const int n_terms = ev.euler_maclaurin_terms;
    const int k_max = std::min<int>(ev.bernoulli_order / 2, int(kBernoulli.size()));
    Complex sum = 0.0;
    for (int n = 1; n < n_terms; ++n) sum += std::exp(-s * std::log(double(n)));
    const double N = n_terms;
    const double logN = std::log(N);
    const Complex n_pow = std::exp(-s * logN);  // N^{-s}
    Complex tail = 0.5 * n_pow;
    // B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
    Complex rising = s;
    double fact = 2.0;
    Complex npow = n_pow / N;
    for (int k = 1; k <= k_max; ++k) {
        tail += kBernoulli[k - 1] / fact * rising * npow;
        rising *= (s + double(2 * k - 1)) * (s + double(2 * k));
        fact *= double(2 * k + 1) * double(2 * k + 2);
        npow /= N * N;
    }
    return (s - 1.0) * (sum + tail) + n_pow * N;
}

}  // namespace

Complex log_gamma(Complex s) {
    if (is_nonpositive_integer(s)) throw PoleError("log_gamma: pole at nonpositive integer");
    if (s.real() >= 0.5) return checked(log_gamma_lanczos(s), "log_gamma");
    const int shift = int(std::ceil(0.5 - s.real()));
    Complex acc = 0.0;
    for (int k = 0; k < shift; ++k) acc += std::log(s + double(k));
    return checked(log_gamma_lanczos(s + double(shift)) - acc, "log_gamma");
}

Complex zeta_times_pole(Complex s, const XiEvaluator& ev) {
    if (s.real() >= 0.0) return checked(zeta_em_scaled(s, ev), "zeta");
    return checked((s - 1.0) * zeta(s, ev), "zeta");
}

Complex zeta(Complex s, const XiEvaluator& ev) {
    if (s == Complex(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
    if (s.real() >= 0.0) return checked(zeta_em_scaled(s, ev) / (s - 1.0), "zeta");
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
    if (is_nonpositive_integer(s) && std::fmod(-s.real(), 2.0) == 0.0) return 0.0;
    const Complex r = 1.0 - s;
    const Complex lg = log_gamma(r);
    const Complex factor = std::exp(s * std::log(2.0) + (s - 1.0) * std::log(kPi) + lg);
    return checked(factor * std::sin(0.5 * kPi * s) * zeta_em_scaled(r, ev) / (r - 1.0), "zeta");
}

Complex xi(Complex s, const XiEvaluator& ev) {
    if (s.real() < 0.5) s = 1.0 - s;
    // s(s-1) zeta(s) / 2 * exp(-s/2 log pi + log Gamma(s/2))
    const Complex e = std::exp(-0.5 * s * std::log(kPi) + log_gamma(0.5 * s));
    return checked(0.5 * s * zeta_em_scaled(s, ev) * e, "xi");
}

Complex theta_kernel(Complex x, int cutoff) {
    const Complex x2 = x * x;
    Complex acc = 0.0;
    for (int n = 1; n <= cutoff; ++n) {
        const double n2 = double(n) * n;
        const Complex u = kPi * n2 * x2;
        acc += (2.0 * u * u - 3.0 * u) * std::exp(-u);
    }
    return 2.0 * acc;
}

Complex xi_theta_series(Complex s, const XiEvaluator& ev) {
    // xi(s) = int_1^inf phi(y) (y^{s-1} + y^{-s}) dy with the first term on the ray
    // y = r e^{i theta} and the second on y = r e^{-i theta}; the arcs cancel.
    const double t = s.imag();
    const double theta = (t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0)) * 3.0 * kPi / 16.0;
    const Complex up = std::polar(1.0, theta);
    const Complex down = std::conj(up);
    constexpr double r_max = 7.0;
    constexpr int panels = 24;
    const auto& rule = quad::gauss_legendre(20);
    Complex acc = 0.0;
    const double width = (r_max - 1.0) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = 1.0 + p * width;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double r = lo + 0.5 * width * (rule.nodes[k] + 1.0);
            const double w = 0.5 * width * rule.weights[k];
            const Complex y1 = r * up;
            const Complex y2 = r * down;
            const Complex f1 = theta_kernel(y1, ev.theta_series_cutoff) *
                               std::exp((s - 1.0) * std::log(y1)) * up;
            const Complex f2 = theta_kernel(y2, ev.theta_series_cutoff) *
                               std::exp(-s * std::log(y2)) * down;
            acc += w * (f1 + f2);
        }
    }
    return checked(acc, "xi_theta_series");
}

Complex theta_omega(Complex z, double omega, const XiEvaluator& ev) {
    const Complex s = s_of_z(z);
    const Complex den = xi(s + omega, ev);
    if (std::abs(den) < 1e-14 * (1.0 + std::abs(s + omega)))
        throw PoleError("theta_omega: denominator xi(1/2 + omega - iz) vanishes");
    return checked(xi(s - omega, ev) / den, "theta_omega");
}

ABPair ab_omega(Complex z, double omega, const XiEvaluator& ev) {
    const Complex s = s_of_z(z);
    const Complex plus = xi(s + omega, ev);
    const Complex minus = xi(s - omega, ev);
    return {0.5 * (plus + minus), 0.5 * kI * (plus - minus)};
}

}  // namespace xisys::specfun
