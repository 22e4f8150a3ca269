#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "xisys/kernel.hpp"
#include "xisys/operator.hpp"
#include "xisys/specfun.hpp"

namespace xisys::canon {

enum class MSource { determinant_ratio, exp_integral };
enum class MInterpolation { hermite, pchip };

struct MCurveOptions {
    op::GalerkinOptions galerkin;
    bool exp_integral = true;       // also compute m = exp(int_1^a mu(b) db / b)
    int exp_nodes = 6;              // Gauss nodes per segment of the mu integral
    MSource source = MSource::determinant_ratio;  // which source fills m_values
    MInterpolation interpolation = MInterpolation::hermite;
    double max_spacing = 0.0;       // > 0: fill the grid so consecutive samples are this close
    double refine_tol = 0.0;        // > 0: bisect until cubic Hermite predicts log m to this
                                    // or to the rounding level of the samples
    double min_spacing = 1e-6;      // smallest interval refinement may create
};

// Options for curves that feed the ODE: spacing 0.05, adaptive refinement to 1e-6.
MCurveOptions dense_curve_options(double spacing = 0.05, double refine_tol = 1e-6);

// Samples of mu(a) and m(a) on a grid that always contains 1 and every sqrt(n) inside it.
// m = 1 and mu = 0 for a <= 1.
class MCurve {
public:
    double omega = 0.0;
    MSource source = MSource::determinant_ratio;
    MInterpolation interpolation = MInterpolation::hermite;
    std::vector<double> a_samples;
    std::vector<double> mu_values;
    std::vector<double> m_values;
    std::vector<double> log_m_det;  // log det(I+H) - log det(I-H)
    std::vector<double> log_m_int;  // int_1^a mu(b) db / b; empty when not computed
    double noise_floor = 0.0;       // largest estimated rounding error of log_m_det

    // Largest |m_det / m_int - 1| over the samples, or NaN when only one source exists.
    double source_gap() const;

    double a_min() const { return a_samples.front(); }
    double a_max() const { return a_samples.back(); }

    // Interpolated in t = log a. Exact 1 / 0 for a <= 1. RangeError beyond a_max.
    double log_m(double a) const;
    double m(double a) const;
    double mu(double a) const;

    // Rebuilds the interpolant; call after editing the sample vectors by hand.
    void finalize();

private:
    std::shared_ptr<const std::function<double(double)>> log_m_fn_;
    std::shared_ptr<const std::function<double(double)>> mu_fn_;
};

// Throws RegimeError for omega <= 1, DomainError for a nonpositive or unsorted grid.
MCurve m_curve(const kernel::KernelContext& ctx, std::vector<double> a_grid,
               const MCurveOptions& opts = {});

struct CanonicalState {
    Complex z;
    double a = 1.0;
    Complex A;
    Complex B;
};

// (A^omega(z), B^omega(z)) at a = 1.
CanonicalState ab_initial(Complex z, double omega, const specfun::XiEvaluator& ev = {});

// For 0 < a <= 1: A = (xi(1/2+w-iz) a^{iz} + xi(1/2-w-iz) a^{-iz}) / 2 and
// B = i (xi(1/2+w-iz) a^{iz} - xi(1/2-w-iz) a^{-iz}) / 2.
CanonicalState closed_form_ab(Complex z, double omega, double a,
                              const specfun::XiEvaluator& ev = {});

struct EvolveOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    bool check_halving = true;    // rerun at tolerance / 16 and compare
    double halving_tol = 1e-8;    // allowed relative difference per unit a
};

// Solves a dA/da = z m^2 B, a dB/da = -z A / m^2 from state.a to a_target, with
// mandatory step boundaries at every sample of the m-curve. Throws StepError when the
// step-halving comparison fails or the stepper gives up, RangeError outside the curve.
CanonicalState evolve(const CanonicalState& state, double a_target, const MCurve& curve,
                      const EvolveOptions& opts = {});

// Evolution through increasing or decreasing a_out, one state per requested point.
std::vector<CanonicalState> evolve_path(const CanonicalState& state,
                                        const std::vector<double>& a_out, const MCurve& curve,
                                        const EvolveOptions& opts = {});

struct DirectOptions {
    op::GalerkinOptions galerkin;
    double tail_tol = 1e-6;
    double first_cutoff = 32.0;
    specfun::XiEvaluator xi;
};

struct DirectResult {
    CanonicalState state;
    Complex a_tilde;
    Complex b_tilde;
    double m = 1.0;
    double cutoff = 0.0;
    double tail_bound = 0.0;
};

// A = m xi(1/2+w-iz) A~, B = xi(1/2+w-iz) B~ / m with
//   A~ = a^{iz}/2 + (sqrt(a)/2) int_a^inf phi_+(x) x^{-1/2+iz} dx,
//   -i B~ = a^{iz}/2 - (sqrt(a)/2) int_a^inf phi_-(x) x^{-1/2+iz} dx.
// Uses the closed form for a <= 1. Throws ConvergenceError when Im z <= omega + 1/2 or the
// tail bound cannot be brought under tail_tol below n_max.
DirectResult direct_ab(const kernel::KernelContext& ctx, double a, Complex z,
                       const DirectOptions& opts = {});

struct PotentialSample {
    double a = 0.0;
    double m = 1.0;
    double mu = 0.0;
    double v_plus = 0.0;   // mu^2 - a mu'
    double v_minus = 0.0;  // mu^2 + a mu'
};

// V on interior samples; a mu'(a) by centered differences of mu in log a.
std::vector<PotentialSample> potentials(const MCurve& curve);

struct SchrodingerResidual {
    double a = 0.0;
    Complex z;
    Complex residual;   // (-(a d/da)^2 + V+) psi - z^2 psi, psi = A / m
    double relative = 0.0;
};

// Residual at sample index i of the curve (an interior sample of a potentials() run).
// D^2 psi uses centered differences with step rel_step in log a.
SchrodingerResidual schrodinger_residual(const MCurve& curve, std::size_t i, Complex z,
                                         double rel_step = 2e-3, const EvolveOptions& opts = {});

struct ZeroOptions {
    double scan_step = 0.05;
    double contour_height = 1.0;
    double max_phase_step = 0.5;   // radians
    double contour_floor = 1e-10;  // |f| relative to its edge maximum
    specfun::XiEvaluator xi;
};

struct ZeroReport {
    std::vector<double> zeros_a;  // zeros of A^omega in (0, t_max)
    std::vector<double> zeros_b;  // zeros of B^omega in [0, t_max)
    int contour_count = 0;        // zeros of A^omega in [0, t_max] x [-h, h]
    double contour_winding = 0.0; // raw winding before rounding
    bool interlaced = false;
};

// Throws DomainError for omega < 1/2 and ContourError when the rectangle passes near a zero.
ZeroReport zeros_of_a(double omega, double t_max, const ZeroOptions& opts = {});

// Zeros of A^omega inside [x0, x1] x [-h, h] by the argument principle.
double contour_winding(const std::function<Complex(Complex)>& f, double x0, double x1, double h,
                       const ZeroOptions& opts = {});

}  // namespace xisys::canon
